"""Command line interface.

    qcommutor rep     --cartan A2 --hw 1,1 --out v.json
    qcommutor rbar    --cartan A1 --hw1 1 --hw2 1 --routes y,xi,q --out rbar.json
    qcommutor verify  --cartan A1 --max-hw 2 --suites all
    qcommutor crystal --cartan A2 --hw 1,0 --tensor 0,1 --dot out.dot

Exit codes: 0 when every check passes, 1 on a verification failure, 2 on
bad input.  Options may also come from an INI file (``--config``) with one
section per command plus ``[common]``; command line flags win.
"""

from __future__ import annotations

import argparse
import configparser
import logging
import sys
from typing import Sequence

from .cartan import CartanError, build_datum, parse_weight
from .crystal import crystal_commutor, crystal_of, node_label, tensor_crystals
from .repn import RepresentationError, build_irreducible, tensor
from .rmatrix import ROUTES, unitarized_r
from .serialize import crystal_to_dot, crystal_to_json, dumps, matrix_to_json, module_to_json
from .suites import SUITES, dominant_weights, make_plan, run_plan

log = logging.getLogger("qcommutor")

EXIT_OK, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
ROUTE_ALIASES = {"y": "y", "xi": "xi_prime", "xi_prime": "xi_prime", "q": "q", "q_route": "q"}


class UsageError(Exception):
    pass


def _datum(args):
    if not args.cartan:
        raise UsageError("--cartan is required")
    try:
        return build_datum(args.cartan)
    except CartanError as exc:
        raise UsageError(str(exc)) from exc


def _weight(datum, text: str, what: str = "weight"):
    try:
        w = parse_weight(datum, text)
    except (CartanError, ValueError) as exc:
        raise UsageError(f"bad {what} {text!r}: {exc}") from exc
    if not datum.is_dominant(w):
        raise UsageError(f"{what} {text!r} is not dominant")
    return w


def _weights_list(datum, text: str, arity: int, what: str) -> list[tuple]:
    """``"1,0x0,1;1,1x1,0"`` -> list of weight tuples of length ``arity``."""
    out = []
    for chunk in filter(None, (c.strip() for c in text.split(";"))):
        parts = chunk.split("x")
        if len(parts) != arity:
            raise UsageError(f"bad {what} {chunk!r}: expected {arity} weights joined by 'x'")
        out.append(tuple(_weight(datum, p, what) for p in parts))
    return out


def _write(text: str, path: str | None) -> None:
    if path in (None, "-"):
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(text)
    log.info("wrote %s", path)


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_rep(args) -> int:
    datum = _datum(args)
    lam = _weight(datum, args.hw, "--hw")
    mod = build_irreducible(datum, lam)
    _write(dumps(module_to_json(mod)), args.out)
    return EXIT_OK


def cmd_rbar(args) -> int:
    datum = _datum(args)
    lam, mu = _weight(datum, args.hw1, "--hw1"), _weight(datum, args.hw2, "--hw2")
    routes = []
    for r in filter(None, (x.strip() for x in args.routes.split(","))):
        if r not in ROUTE_ALIASES:
            raise UsageError(f"unknown route {r!r}; choose from {', '.join(sorted(ROUTE_ALIASES))}")
        routes.append(ROUTE_ALIASES[r])
    if not routes:
        raise UsageError("no routes given")
    v, w = build_irreducible(datum, lam), build_irreducible(datum, mu)
    mats = {r: unitarized_r(v, w, r) for r in routes}
    first = mats[routes[0]]
    diff = None
    for r in routes[1:]:
        d = first.first_difference(mats[r])
        if d is not None:
            diff = {"routes": [routes[0], r], "row": d[0], "col": d[1]}
            break
    vw = tensor(v, w)
    out = {"cartan": datum.name, "hw1": list(lam), "hw2": list(mu), "basis": vw.labels,
           "routes": {r: matrix_to_json(m) for r, m in mats.items()},
           "equal": diff is None}
    if diff is not None:
        out["first_difference"] = diff
        log.error("routes %s and %s differ at (%d, %d)", *diff["routes"], diff["row"], diff["col"])
    _write(dumps(out), args.out)
    return EXIT_OK if diff is None else EXIT_FAIL


def cmd_verify(args) -> int:
    suites = [s.strip() for s in args.suites.split(",") if s.strip()]
    if "all" in suites:
        suites = list(SUITES)
    bad = [s for s in suites if s not in SUITES]
    if bad or not suites:
        raise UsageError(f"unknown suite(s) {', '.join(bad) or '(none)'}; choose from {', '.join(SUITES)}, all")
    datum = _datum(args)
    if args.hw:
        weights = [_weight(datum, t, "--hw") for t in args.hw.split(";") if t.strip()]
    else:
        if args.max_hw < 1:
            raise UsageError("--max-hw must be at least 1")
        weights = dominant_weights(datum, args.max_hw)
    pairs = _weights_list(datum, args.pairs, 2, "pair") if args.pairs else None
    triples = _weights_list(datum, args.triples, 3, "triple") if args.triples else None
    if pairs is not None and not args.hw:
        weights = sorted({x for p in pairs for x in p}, key=lambda w: (sum(w), w))
    if triples is None:
        small = min(weights, key=datum.weyl_dimension)
        triples = [(small, small, small)]
        if len(weights) > 1:
            triples.append((weights[0], weights[1], weights[0]))
    plan = make_plan(datum, weights, suites, pairs=pairs, triples=triples, seed=args.seed)
    log.info("%d cases over %d weights", len(plan.cases), len(weights))
    report = run_plan(plan, workers=args.workers)
    if not report.checks:
        raise UsageError("the selected suites produced no checks")
    _write(report.to_json() + "\n", args.out)
    for chk in report.failures():
        log.error("FAIL %s [%s] %s", chk.identity, chk.instance, chk.witness or "")
    log.info(report.summary())
    return EXIT_OK if report.ok else EXIT_FAIL


def cmd_crystal(args) -> int:
    datum = _datum(args)
    lam = _weight(datum, args.hw, "--hw")
    c = crystal_of(datum, lam)
    sigma = None
    if args.tensor:
        mu = _weight(datum, args.tensor, "--tensor")
        b = crystal_of(datum, mu)
        if args.commutor:
            sigma = crystal_commutor(c, b)
        c = tensor_crystals(c, b)
    elif args.commutor:
        raise UsageError("--commutor needs --tensor")
    if args.dot:
        _write(crystal_to_dot(c, commutor=sigma), args.dot)
    summary = crystal_to_json(c)
    if sigma is not None:
        summary["commutor"] = {node_label(k): node_label(v) for k, v in sigma.items()}
    _write(dumps(summary), args.out)
    return EXIT_OK


# --------------------------------------------------------------------------
# argument handling
# --------------------------------------------------------------------------


def build_parser() -> argparse.ArgumentParser:
    p = argparse.ArgumentParser(prog="qcommutor", description="Exact U_q(g) commutor computations.")
    p.add_argument("--config", help="INI file with [common] and per-command sections")
    p.add_argument("-v", "--verbose", action="store_true")
    sub = p.add_subparsers(dest="command", required=True)

    def common(sp):
        sp.add_argument("--cartan", help="Cartan type such as A1, A2, B2, G2")
        sp.add_argument("--out", help="output path (default: stdout)")
        sp.add_argument("--seed", type=int, default=0, help="seed for randomized spot checks")

    sp = sub.add_parser("rep", help="export an irreducible module")
    common(sp)
    sp.add_argument("--hw", required=False, help="highest weight, e.g. 1,0")
    sp.set_defaults(func=cmd_rep, required=("hw",))

    sp = sub.add_parser("rbar", help="unitarized R-matrix on V(hw1) x V(hw2)")
    common(sp)
    sp.add_argument("--hw1")
    sp.add_argument("--hw2")
    sp.add_argument("--routes", default=",".join(ROUTES), help="comma list from y, xi, q")
    sp.set_defaults(func=cmd_rbar, required=("hw1", "hw2"))

    sp = sub.add_parser("verify", help="run verification suites")
    common(sp)
    sp.add_argument("--suites", default="all", help=f"comma list from {', '.join(SUITES)}, all")
    sp.add_argument("--max-hw", type=int, default=1, help="use dominant weights with coordinate sum up to this")
    sp.add_argument("--hw", help="explicit weights separated by ';'")
    sp.add_argument("--pairs", help="pairs like '1,0x0,1;1,1x1,0'")
    sp.add_argument("--triples", help="triples like '1,0x0,1x1,0'")
    sp.add_argument("--workers", type=int, default=1)
    sp.set_defaults(func=cmd_verify, required=())

    sp = sub.add_parser("crystal", help="crystal graph of B(hw) or B(hw) x B(tensor)")
    common(sp)
    sp.add_argument("--hw")
    sp.add_argument("--tensor", help="second highest weight")
    sp.add_argument("--commutor", action="store_true", help="annotate nodes with the crystal commutor")
    sp.add_argument("--dot", help="DOT output path")
    sp.set_defaults(func=cmd_crystal, required=("hw",))
    return p


def _apply_config(args, argv: Sequence[str]) -> None:
    """Fill options not given on the command line from the config file."""
    cfg = configparser.ConfigParser()
    try:
        if not cfg.read(args.config, encoding="utf-8"):
            raise UsageError(f"cannot read config file {args.config!r}")
    except configparser.Error as exc:
        raise UsageError(f"malformed config file: {exc}") from exc
    given = {a.split("=")[0].lstrip("-").replace("-", "_") for a in argv if a.startswith("--")}
    merged: dict = {}
    for section in ("common", args.command):
        if cfg.has_section(section):
            merged.update(cfg.items(section))
    for key, value in merged.items():
        key = key.replace("-", "_")
        if key in given or not hasattr(args, key):
            continue
        current = getattr(args, key)
        if isinstance(current, bool):
            value = cfg.BOOLEAN_STATES.get(value.lower())
            if value is None:
                raise UsageError(f"config key {key!r} needs a boolean")
        elif isinstance(current, int):
            try:
                value = int(value)
            except ValueError as exc:
                raise UsageError(f"config key {key!r} needs an integer") from exc
        setattr(args, key, value)


def main(argv: Sequence[str] | None = None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    parser = build_parser()
    try:
        args = parser.parse_args(argv)
    except SystemExit as exc:
        return EXIT_USAGE if exc.code else EXIT_OK
    logging.basicConfig(level=logging.INFO if args.verbose else logging.WARNING,
                        format="%(levelname)s %(message)s", stream=sys.stderr)
    try:
        if args.config:
            _apply_config(args, argv)
        missing = [k for k in args.required if not getattr(args, k)]
        if missing:
            raise UsageError("missing " + ", ".join("--" + k.replace("_", "-") for k in missing))
        if getattr(args, "workers", 1) < 1:
            raise UsageError("--workers must be positive")
        return args.func(args)
    except UsageError as exc:
        print(f"qcommutor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE
    except (RepresentationError, CartanError, OSError) as exc:
        print(f"qcommutor: error: {exc}", file=sys.stderr)
        return EXIT_USAGE


if __name__ == "__main__":
    sys.exit(main())
