import pytest

from qcommutor.report import REGISTRY, VerificationReport, merge
from qcommutor.suites import SUITES, dominant_weights, make_plan, run_plan, spot_check_b_inverse


def test_registry_rows_are_unique_and_used():
    rep = VerificationReport()
    rep.add("rbar_routes", "x", True)
    with pytest.raises(KeyError):
        rep.add("no_such_identity", "x", True)
    assert len(REGISTRY) == len(set(REGISTRY))
    assert rep.checks[0].anchor == REGISTRY["rbar_routes"]


def test_report_json_round_trip():
    a = VerificationReport()
    a.add("cactus", "A1 (1) x (1) x (1)", True)
    b = VerificationReport()
    b.add("symmetry", "A1 (1) x (1)", False, (0, 1))
    rep = merge([a, b])
    back = VerificationReport.from_json(rep.to_json())
    assert back.to_json() == rep.to_json()
    assert not back.ok and [c.identity for c in back.failures()] == ["symmetry"]
    assert rep.summary() == "1/2 checks passed"


def test_dominant_weights(A2):
    assert dominant_weights(A2, 1) == [(1, 0), (0, 1)]
    assert len(dominant_weights(A2, 2)) == 5


def test_plan_skips_large_cases(A2):
    plan = make_plan(A2, [(1, 0), (2, 2)], ["rroutes", "coboundary"], triples=[((2, 2), (2, 2), (2, 2))])
    names = [name for name, _ in plan.cases]
    assert "coboundary" not in names
    assert ("rroutes_pair", ((2, 2), (2, 2))) not in plan.cases
    with pytest.raises(ValueError):
        make_plan(A2, [(1, 0)], ["bogus"])


def test_all_suites_pass_on_b2(B2):
    plan = make_plan(B2, [(1, 0), (0, 1)], SUITES, triples=[((0, 1), (0, 1), (1, 0))])
    rep = run_plan(plan)
    assert rep.checks and rep.ok, rep.failures()


def test_spot_check_seeded(G2):
    a, b = spot_check_b_inverse(G2, 11), spot_check_b_inverse(G2, 11)
    assert a.ok and a.to_json() == b.to_json()
