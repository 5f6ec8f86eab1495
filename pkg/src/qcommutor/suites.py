"""Named verification suites over a Cartan datum and lists of highest weights."""

from __future__ import annotations

import random
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from itertools import product
from typing import Sequence

from .braid import braid_relation_defects, check_t_i_on_heads, check_weight_permutation, \
    conjugation_defects, jjthings_defects, lowest_by_divided_powers, lowest_by_kashiwara, \
    lowest_returns_to_top, lowest_weight_vector, w0_conjugation_defects
from .cartan import CartanDatum, Weight, build_datum
from .crystal import crystal_of, compare_main2, schutzenberger_defects, verify_crystal_coboundary
from .repn import InconsistencyError, build_irreducible, relation_defects
from .report import VerificationReport, merge
from .rmatrix import cartan_exponent_via_b_inverse, verify_module, verify_pair, verify_triple

SUITES = ("relations", "braid", "rroutes", "coboundary", "crystal", "main2")
MAX_PAIR_DIM = 64
MAX_TRIPLE_DIM = 32
MAX_WORDS = 8


def _inst(datum: CartanDatum, *weights) -> str:
    return f"{datum.name} " + " x ".join("(" + ",".join(map(str, w)) + ")" for w in weights)


def dominant_weights(datum: CartanDatum, max_level: int) -> list[Weight]:
    """Nonzero dominant weights with coordinate sum at most ``max_level``."""
    out = [w for w in product(range(max_level + 1), repeat=datum.rank) if 0 < sum(w) <= max_level]
    return sorted(out, key=lambda w: (sum(w), tuple(-x for x in w)))


def suite_relations(datum: CartanDatum, lam: Weight) -> VerificationReport:
    rep = VerificationReport()
    inst = _inst(datum, lam)
    try:
        mod = build_irreducible(datum, lam)
    except InconsistencyError as exc:
        rep.add("weyl_dimension", inst, False, exc)
        return rep
    rep.add("weyl_dimension", inst, mod.dim == datum.weyl_dimension(lam))
    bad = relation_defects(mod)
    rep.add("relations", inst, not bad, bad[:3] or None)
    return rep


def suite_braid(datum: CartanDatum, lam: Weight) -> VerificationReport:
    rep = VerificationReport()
    inst = _inst(datum, lam)
    mod = build_irreducible(datum, lam)
    n = datum.rank
    heads = [check_t_i_on_heads(mod, i) for i in range(n)]
    rep.add("t_i_heads", inst, not any(heads))
    rep.add("t_i_weights", inst, all(check_weight_permutation(mod, i) for i in range(n)))
    conj = [x for i in range(n) for x in conjugation_defects(mod, i)]
    rep.add("conj_t_i", inst, not conj, conj or None)
    conj = w0_conjugation_defects(mod)
    rep.add("conj_t_w0", inst, not conj, conj or None)
    bad = braid_relation_defects(mod)
    rep.add("braid_relations", inst, not bad, bad or None)
    words = datum.reduced_words(datum.longest_word)[:MAX_WORDS]
    jj = [(w, d) for w in words for d in jjthings_defects(mod, w)]
    rep.add("jj_highest", inst, not [x for x in jj if x[1][0] == "highest"])
    rep.add("jj_closed_form", inst, not [x for x in jj if x[1][0] == "closed form"])
    low = lowest_weight_vector(mod)
    same = all(lowest_weight_vector(mod, w) == low == lowest_by_divided_powers(mod, w)
               == lowest_by_kashiwara(mod, w) for w in words)
    rep.add("lowest_routes", inst, same and mod.weights[next(iter(low))] == datum.w0(lam))
    rep.add("lowest_return", inst, lowest_returns_to_top(mod))
    return rep


def suite_crystal_module(datum: CartanDatum, lam: Weight) -> VerificationReport:
    rep = VerificationReport()
    inst = _inst(datum, lam)
    c = crystal_of(datum, lam)
    bad = c.axiom_defects()
    rep.add("crystal_axioms", inst, not bad, bad[:1] or None)
    bad = schutzenberger_defects(c)
    rep.add("schutzenberger", inst, not bad, bad[:1] or None)
    return rep


def spot_check_b_inverse(datum: CartanDatum, seed: int, samples: int = 25) -> VerificationReport:
    """The cartan factor identity on random weight pairs."""
    rng = random.Random(seed)
    rep = VerificationReport()
    for _ in range(samples):
        mu = tuple(rng.randint(-4, 4) for _ in range(datum.rank))
        nu = tuple(rng.randint(-4, 4) for _ in range(datum.rank))
        if cartan_exponent_via_b_inverse(datum, mu, nu) != datum.bilinear_form(mu, nu):
            rep.add("cartan_b_inverse", f"{datum.name} random (seed {seed})", False, (mu, nu))
            return rep
    rep.add("cartan_b_inverse", f"{datum.name} random (seed {seed})", True)
    return rep


def _main2(datum: CartanDatum, lam: Weight, mu: Weight) -> VerificationReport:
    return compare_main2(build_irreducible(datum, lam), build_irreducible(datum, mu))


def _coboundary(datum: CartanDatum, lam, mu, nu) -> VerificationReport:
    return verify_triple(datum, lam, mu, nu)


_RUNNERS = {
    "relations": suite_relations,
    "braid": suite_braid,
    "rroutes_module": verify_module,
    "rroutes_pair": verify_pair,
    "coboundary": _coboundary,
    "crystal_module": suite_crystal_module,
    "crystal_triple": verify_crystal_coboundary,
    "main2": _main2,
    "b_inverse": spot_check_b_inverse,
}


@dataclass
class Plan:
    """Concrete cases for one run; each case is ``(runner, datum spec, args)``."""

    datum: CartanDatum
    weights: list
    pairs: list
    triples: list
    suites: tuple
    seed: int = 0
    cases: list = field(default_factory=list)

    def build(self) -> "Plan":
        dim = {w: self.datum.weyl_dimension(w) for w in
               set(self.weights) | {x for p in self.pairs for x in p} | {x for t in self.triples for x in t}}
        cases = []
        for s in self.suites:
            if s == "relations":
                cases += [("relations", (w,)) for w in self.weights]
            elif s == "braid":
                cases += [("braid", (w,)) for w in self.weights]
            elif s == "rroutes":
                cases += [("b_inverse", (self.seed,))]
                cases += [("rroutes_module", (w,)) for w in self.weights]
                cases += [("rroutes_pair", p) for p in self.pairs if dim[p[0]] * dim[p[1]] <= MAX_PAIR_DIM]
            elif s == "coboundary":
                cases += [("coboundary", t) for t in self.triples
                          if dim[t[0]] * dim[t[1]] * dim[t[2]] <= MAX_TRIPLE_DIM]
            elif s == "crystal":
                cases += [("crystal_module", (w,)) for w in self.weights]
                cases += [("crystal_triple", t) for t in self.triples]
            elif s == "main2":
                cases += [("main2", p) for p in self.pairs if dim[p[0]] * dim[p[1]] <= MAX_PAIR_DIM]
        self.cases = cases
        return self


def _run_case(job) -> VerificationReport:
    spec, name, args = job
    datum = build_datum(spec) if isinstance(spec, str) else spec
    return _RUNNERS[name](datum, *args)


def run_plan(plan: Plan, workers: int = 1) -> VerificationReport:
    """Run every case; the merged report keeps the case order regardless of ``workers``."""
    jobs = [(plan.datum, name, args) for name, args in plan.cases]
    if workers > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(max_workers=workers) as pool:
            reports = list(pool.map(_run_case, jobs))
    else:
        reports = [_run_case(j) for j in jobs]
    return merge(reports)


def make_plan(datum: CartanDatum, weights: Sequence[Weight], suites: Sequence[str],
              pairs: Sequence[tuple] | None = None, triples: Sequence[tuple] | None = None,
              seed: int = 0) -> Plan:
    weights = [tuple(w) for w in weights]
    if pairs is None:
        pairs = [(a, b) for a in weights for b in weights]
    if triples is None:
        triples = [(a, b, c) for a in weights for b in weights for c in weights]
    for s in suites:
        if s not in SUITES:
            raise ValueError(f"unknown suite {s!r}")
    return Plan(datum, weights, [tuple(map(tuple, p)) for p in pairs],
                [tuple(map(tuple, t)) for t in triples], tuple(suites), seed).build()


__all__ = ["SUITES", "Plan", "make_plan", "run_plan", "dominant_weights", "suite_relations",
           "suite_braid", "suite_crystal_module", "spot_check_b_inverse"]
