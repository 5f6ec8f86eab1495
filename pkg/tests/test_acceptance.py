"""Acceptance criteria 1-9, one PASS/FAIL line each.

Every comparison is exact (tolerance zero): matrices over Q(i)(q^(1/D)) are
compared entry by entry in canonical form, crystal maps node by node.

Run with pytest (lines appear in the terminal summary) or directly:
``python tests/test_acceptance.py``.
"""

from __future__ import annotations

import json
import sys
import tempfile
import time
from pathlib import Path

import pytest

from qcommutor import cli
from qcommutor.braid import (braid_relation_defects, check_t_i_on_heads, conjugation_defects, jjthings_defects,
                             lowest_by_divided_powers, lowest_by_kashiwara, lowest_weight_vector, t_word_matrix,
                             w0_conjugation_defects)
from qcommutor.cartan import build_datum
from qcommutor.crystal import (crystal_of, compare_main2, from_lattice, residue_signs, schutzenberger_defects,
                               verify_crystal_coboundary)
from qcommutor.repn import build_irreducible, crystal_lattice, kashiwara, relation_defects
from qcommutor.rmatrix import (cactus_holds, braid_relation_holds, commutor_matrix, conj_j_holds,
                               conj_xi_double_holds, r_op_r_holds, route_disagreement, symmetry_holds,
                               unitarized_r, xi_operator, y_operator)
from qcommutor.scalars import ONE, limit_at_infinity, regular_at_infinity
from qcommutor.serialize import crystal_to_dot, module_from_json, module_to_json, parse_dot

GOLDEN = Path(__file__).parent / "golden" / "rbar_A1_w_w.json"

PAIRS_1 = [("A1", (1,), (1,)), ("A1", (1,), (2,)), ("A1", (2,), (2,)),
           ("A2", (1, 0), (1, 0)), ("A2", (1, 0), (0, 1)), ("A2", (1, 1), (1, 0)),
           ("B2", (1, 0), (1, 0))]
TRIPLES_2 = [("A1", (1,), (1,), (1,)), ("A2", (1, 0), (0, 1), (1, 0))]
PAIRS_5 = [("A1", (1,), (1,)), ("A1", (1,), (2,)), ("A2", (1, 0), (1, 0)), ("A2", (1, 0), (0, 1))]
RANK2_MODULES = [("A2", (1, 0)), ("A2", (0, 1)), ("A2", (1, 1)), ("A2", (2, 0)), ("A2", (2, 1)),
                 ("B2", (1, 0)), ("B2", (0, 1)), ("B2", (1, 1))]


def _irr(name, lam):
    return build_irreducible(build_datum(name), tuple(lam))


def _fmt(w):
    return "(" + ",".join(map(str, w)) + ")"


# --------------------------------------------------------------------------
# criteria: each returns (passed, detail)
# --------------------------------------------------------------------------


def criterion_1():
    bad = []
    for name, lam, mu in PAIRS_1:
        diff = route_disagreement(_irr(name, lam), _irr(name, mu))
        if diff is not None:
            bad.append(f"{name} {_fmt(lam)}x{_fmt(mu)}: {diff[0]} vs {diff[1]} at {diff[2][:2]}")
    return not bad, f"routes y, xi_prime, q entrywise equal on {len(PAIRS_1)} pairs" if not bad else "; ".join(bad)


def criterion_2():
    bad = []
    for name, *ws in TRIPLES_2:
        u, v, w = (_irr(name, x) for x in ws)
        mods = {x: m for x, m in zip(ws, (u, v, w))}
        for a in mods:
            for b in mods:
                if not symmetry_holds(mods[a], mods[b], "dr"):
                    bad.append(f"symmetry {name} {_fmt(a)}x{_fmt(b)}")
        if not cactus_holds(u, v, w, "dr"):
            bad.append(f"cactus {name} " + "x".join(map(_fmt, ws)))
    return not bad, "symmetry and cactus exact on A1 V_w^3 and A2 (w1,w2,w1)" if not bad else "; ".join(bad)


def criterion_3():
    bad = []
    v = _irr("A1", (1,))
    if not braid_relation_holds(v):
        bad.append("braid relation for sigma^br on A1 V_w^3")
    for name, lam, mu in PAIRS_1:
        if not r_op_r_holds(_irr(name, lam), _irr(name, mu)):
            bad.append(f"R^op R on {name} {_fmt(lam)}x{_fmt(mu)}")
    br = commutor_matrix(v, v, "br")
    if (br @ br).is_identity():
        bad.append("sigma^br squares to Id on A1 V_w x V_w")
    return not bad, "braid relation, R^op R = (Q^-1 x Q^-1) Delta(Q) on all pairs, sigma^br^2 != Id" \
        if not bad else "; ".join(bad)


def criterion_4():
    bad = []
    irreducibles = {(n, lam) for n, lam, mu in PAIRS_1 for lam in (lam, mu)} | set(RANK2_MODULES)
    for name, lam in sorted(irreducibles):
        m = _irr(name, lam)
        if y_operator(m) != xi_operator(m, "xi_double"):
            bad.append(f"Y != xi'' on {name} {_fmt(lam)}")
    for name, lam in RANK2_MODULES:
        m = _irr(name, lam)
        for i in range(m.datum.rank):
            if conjugation_defects(m, i):
                bad.append(f"C_T{i + 1} table on {name} {_fmt(lam)}")
        if w0_conjugation_defects(m):
            bad.append(f"C_Tw0 on {name} {_fmt(lam)}")
        if not conj_j_holds(m):
            bad.append(f"C_J on {name} {_fmt(lam)}")
        if not conj_xi_double_holds(m):
            bad.append(f"C_xi'' on {name} {_fmt(lam)}")
    return not bad, f"Y = xi'' on {len(irreducibles)} modules; C_Ti, C_Tw0, C_J, C_xi'' on A2/B2" \
        if not bad else "; ".join(bad)


def criterion_5():
    bad = []
    for name, lam, mu in PAIRS_5:
        rep = compare_main2(_irr(name, lam), _irr(name, mu))
        for c in rep.checks:
            if c.identity in ("main2_lattice", "main2_residue") and not c.passed:
                bad.append(f"{c.identity} {c.instance}: {c.witness}")
    v = _irr("A1", (1,))
    sign = residue_signs(v, v)[("b", "f1b")]
    entry = unitarized_r(v, v).to_dense()[2][1]  # coefficient of v1 (x) v0 in Rbar(v0 (x) v1)
    if sign != -1 or not regular_at_infinity(entry) or limit_at_infinity(entry) != -1:
        bad.append(f"A1 node b0 x b1 residue {sign}, entry limit {limit_at_infinity(entry)}")
    return not bad, "regular at q=oo, signed permutation = (-1)^<l+m-n,rho_v> sigma_AB; A1 b0xb1 residue -1" \
        if not bad else "; ".join(bad)


def criterion_6():
    bad = []
    for name, lam in RANK2_MODULES:
        m = _irr(name, lam)
        if braid_relation_defects(m):
            bad.append(f"braid relations on {name} {_fmt(lam)}")
        for i in range(m.datum.rank):
            if check_t_i_on_heads(m, i):
                bad.append(f"T_{i + 1} on string heads of {name} {_fmt(lam)}")
    datum = build_datum("A2")
    m = build_irreducible(datum, datum.rho)
    words = datum.reduced_words(datum.longest_word)
    mats = [t_word_matrix(m, w) for w in words]
    if any(x != mats[0] for x in mats):
        bad.append("T_w0 depends on the reduced word on A2 V_rho")
    low = lowest_weight_vector(m, words[0])
    for w in words:
        if jjthings_defects(m, w):
            bad.append(f"partial products along {w} on A2 V_rho")
        if not (lowest_weight_vector(m, w) == lowest_by_divided_powers(m, w) == lowest_by_kashiwara(m, w) == low):
            bad.append(f"v_low routes differ for word {w}")
    return not bad, f"braid relations on {len(RANK2_MODULES)} modules, string heads, partial products, " \
                    f"{len(words)} reduced words on A2 V_rho" if not bad else "; ".join(bad)


def _weights_up_to(name, level):
    datum = build_datum(name)
    if datum.rank == 1:
        return [(n,) for n in range(0, 7) if datum.rho_vee_pairing((n,)) <= level]
    return [(a, b) for a in range(level + 1) for b in range(level + 1) if datum.rho_vee_pairing((a, b)) <= level]


def criterion_7():
    bad = []
    count = 0
    for name in ("A1", "A2"):
        datum = build_datum(name)
        for lam in _weights_up_to(name, 3):
            count += 1
            m = build_irreducible(datum, lam)
            if m.dim != datum.weyl_dimension(lam):
                bad.append(f"dim {name} {_fmt(lam)}")
            if relation_defects(m):
                bad.append(f"relations {name} {_fmt(lam)}")
            lat = crystal_lattice(m)
            for i in range(datum.rank):
                for d in "EF":
                    op = lat.operator_in_basis(kashiwara(m, i, d))
                    if not all(regular_at_infinity(c) for _, _, c in op.entries()):
                        bad.append(f"{d}~_{i + 1} leaves the lattice of {name} {_fmt(lam)}")
            c = from_lattice(lat)
            if c.axiom_defects() or len(c.nodes) != m.dim:
                bad.append(f"crystal axioms {name} {_fmt(lam)}")
    return not bad, f"relations, Weyl dimensions, lattices and crystals on {count} modules (<l,rho_v> <= 3)" \
        if not bad else "; ".join(bad)


def criterion_8():
    bad = []
    for name, *ws in TRIPLES_2:
        rep = verify_crystal_coboundary(build_datum(name), *ws)
        bad += [f"{c.identity} {c.instance}" for c in rep.failures()]
        for lam in set(ws):
            if schutzenberger_defects(crystal_of(build_datum(name), lam)):
                bad.append(f"xi_B on {name} {_fmt(lam)}")
    for name, lam, mu in PAIRS_5:
        rep = compare_main2(_irr(name, lam), _irr(name, mu))
        xs = [c for c in rep.checks if c.identity in ("xi_lattice", "xi_prime_residue")]
        if len(xs) != 6:
            bad.append(f"missing xi checks for {name} {_fmt(lam)}x{_fmt(mu)}")
        bad += [f"{c.identity} {c.instance}: {c.witness}" for c in xs if not c.passed]
    return not bad, "crystal symmetry and cactus exhaustive; xi(L) = L and xi' residue on V, W, V x W" \
        if not bad else "; ".join(bad)


def criterion_9():
    bad = []
    with tempfile.TemporaryDirectory() as tmp:
        tmp = Path(tmp)
        out = tmp / "rbar.json"
        if cli.main(["rbar", "--cartan", "A1", "--hw1", "1", "--hw2", "1", "--routes", "y,xi,q",
                     "--out", str(out)]) != 0:
            bad.append("rbar exit code")
        elif json.loads(out.read_text()) != json.loads(GOLDEN.read_text()):
            bad.append("rbar output differs from the golden file")
        elif "(2*q^(1)) / (q^(2) + 1)" not in out.read_text():
            bad.append("golden entry missing")
        if cli.main(["verify", "--cartan", "A1", "--max-hw", "2", "--suites", "all", "--out", str(tmp / "r.json")]) != 0:
            bad.append("verify exit 0")
        if cli.main(["rep", "--cartan", "A2", "--hw=-1,0"]) != 2 or cli.main(["verify", "--suites", "bogus"]) != 2:
            bad.append("usage exit 2")
        real = cli.unitarized_r
        cli.unitarized_r = lambda v, w, r: real(v, w, r).scale(-ONE) if r == "q" else real(v, w, r)
        try:
            if cli.main(["rbar", "--cartan", "A1", "--hw1", "1", "--hw2", "1", "--out", str(tmp / "x.json")]) != 1:
                bad.append("disagreement exit 1")
        finally:
            cli.unitarized_r = real
    m = _irr("A2", (1, 1))
    text = json.dumps(module_to_json(m))
    back = module_from_json(json.loads(text))
    if json.dumps(module_to_json(back)) != text or any(a != b for a, b in zip(back.E + back.F, m.E + m.F)):
        bad.append("module JSON round trip")
    c = crystal_of(build_datum("A2"), (1, 1))
    parsed = parse_dot(crystal_to_dot(c))
    if len(parsed["nodes"]) != len(c.nodes) or len(parsed["edges"]) != len(list(c.edges())):
        bad.append("DOT round trip")
    return not bad, "exit codes 0/1/2, JSON and DOT round trips, golden A1 Rbar" if not bad else "; ".join(bad)


CRITERIA = [
    (1, "route equality", criterion_1),
    (2, "coboundary axioms for sigma^dr", criterion_2),
    (3, "braiding sanity", criterion_3),
    (4, "Y = xi'' and conjugation tables", criterion_4),
    (5, "sigma^dr residue vs crystal commutor", criterion_5),
    (6, "quantum Weyl group", criterion_6),
    (7, "representation integrity", criterion_7),
    (8, "crystal layer", criterion_8),
    (9, "CLI contract", criterion_9),
]


def _line(num, title, passed, detail, seconds):
    return f"[{'PASS' if passed else 'FAIL'}] criterion {num} {title} (exact, tolerance 0; {seconds:.1f}s): {detail}"


def _run(num, title, fn):
    t0 = time.perf_counter()
    try:
        passed, detail = fn()
    except Exception as exc:  # a crash is a failure of the criterion, reported like one
        passed, detail = False, f"{type(exc).__name__}: {exc}"
    return passed, _line(num, title, passed, detail, time.perf_counter() - t0)


@pytest.mark.parametrize("num,title,fn", CRITERIA, ids=[f"criterion_{n}" for n, _, _ in CRITERIA])
def test_criterion(num, title, fn):
    from conftest import ACCEPTANCE_LINES
    passed, line = _run(num, title, fn)
    print(line)
    ACCEPTANCE_LINES.append(line)
    assert passed, line


if __name__ == "__main__":
    results = [_run(n, t, f) for n, t, f in CRITERIA]
    for _, line in results:
        print(line)
    sys.exit(0 if all(p for p, _ in results) else 1)
