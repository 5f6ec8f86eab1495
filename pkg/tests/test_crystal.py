import pytest

from qcommutor.cartan import build_datum
from qcommutor.crystal import (AbstractCrystal, CrystalError, component_of, components, compare_main2,
                               crystal_cactus_sides, crystal_commutor, crystal_commutor_inverse_form,
                               crystal_of, from_lattice, residue_signs, schutzenberger, schutzenberger_defects,
                               tensor_crystals, verify_crystal_coboundary)
from qcommutor.repn import build_irreducible, crystal_lattice, tensor_lattice


@pytest.fixture(scope="module")
def b1(A1):
    return crystal_of(A1, (1,))


def test_a1_chain(b1):
    assert b1.nodes == ["b", "f1b"]
    assert b1.f[0] == {"b": "f1b"}
    assert b1.e[0] == {"f1b": "b"}
    assert b1.phi(0, "b") == 1 and b1.epsilon(0, "b") == 0
    assert not b1.axiom_defects()


def test_trivial_crystal(A1):
    c = crystal_of(A1, (0,))
    assert len(c.nodes) == 1 and not c.f[0] and not c.e[0]


def test_tensor_rule_a1(b1):
    t = tensor_crystals(b1, b1)
    assert set(t.nodes) == {("b", "b"), ("b", "f1b"), ("f1b", "b"), ("f1b", "f1b")}
    assert t.f[0][("b", "b")] == ("f1b", "b")
    assert ("b", "f1b") not in t.e[0]
    assert ("b", "f1b") not in t.f[0]
    comps = components(t)
    assert sorted((c.source, len(c.nodes)) for c in comps) == [(("b", "b"), 3), (("b", "f1b"), 1)]
    assert {c.highest_weight for c in comps} == {(2,), (0,)}


def test_tensor_of_lattices_matches_tensor_of_crystals(A1, A2):
    for datum, lam, mu in ((A1, (1,), (2,)), (A2, (1, 0), (0, 1)), (A2, (1, 1), (1, 0))):
        la = crystal_lattice(build_irreducible(datum, lam))
        lb = crystal_lattice(build_irreducible(datum, mu))
        from_lat = from_lattice(tensor_lattice(la, lb))
        combinatorial = tensor_crystals(from_lattice(la), from_lattice(lb))
        assert from_lat.same_structure(combinatorial)
        assert not from_lat.axiom_defects()


def test_a2_components(A2):
    t = tensor_crystals(crystal_of(A2, (1, 0)), crystal_of(A2, (0, 1)))
    assert sorted(len(c.nodes) for c in components(t)) == [1, 8]


def test_schutzenberger_a1_a2(b1, A2):
    assert schutzenberger(b1) == {"b": "f1b", "f1b": "b"}
    c = crystal_of(A2, (1, 0))
    xi = schutzenberger(c)
    src, mid, sink = "b", c.f[0]["b"], c.f[1][c.f[0]["b"]]
    assert xi[src] == sink and xi[sink] == src and xi[mid] == mid
    for b in c.nodes:
        assert c.wt[xi[b]] == A2.w0(c.wt[b])


@pytest.mark.parametrize("name,lam", [("A2", (1, 1)), ("A2", (2, 1)), ("B2", (1, 1)), ("G2", (1, 0))])
def test_schutzenberger_properties(name, lam):
    c = crystal_of(build_datum(name), lam)
    assert not c.axiom_defects()
    assert not schutzenberger_defects(c)
    xi = schutzenberger(c)
    assert all(xi[xi[b]] == b for b in c.nodes)


def test_commutor_a1(b1):
    sigma = crystal_commutor(b1, b1)
    assert sigma[("b", "b")] == ("b", "b")
    assert sigma[("b", "f1b")] == ("b", "f1b")
    assert sigma == crystal_commutor_inverse_form(b1, b1)


def test_commutor_symmetry_a2(A2):
    a, b = crystal_of(A2, (1, 0)), crystal_of(A2, (0, 1))
    ab = crystal_commutor(a, b)
    ba = crystal_commutor(b, a)
    assert all(ba[ab[x]] == x for x in ab)
    assert ab == crystal_commutor_inverse_form(a, b)


def test_commutor_with_trivial_factor(A2):
    a, z = crystal_of(A2, (1, 1)), crystal_of(A2, (0, 0))
    (zb,) = z.nodes
    sigma = crystal_commutor(a, z)
    assert all(sigma[(x, zb)] == (zb, x) for x in a.nodes)


def test_cactus_sides(b1, A2):
    lhs, rhs = crystal_cactus_sides(b1, b1, b1)
    assert lhs == rhs and len(lhs) == 8
    a, b = crystal_of(A2, (1, 0)), crystal_of(A2, (0, 1))
    lhs, rhs = crystal_cactus_sides(a, b, a)
    assert lhs == rhs


@pytest.mark.parametrize("name,triple", [("A1", ((1,), (1,), (1,))), ("A2", ((1, 0), (0, 1), (1, 0))),
                                         ("A1", ((1,), (2,), (0,)))])
def test_crystal_coboundary(name, triple):
    rep = verify_crystal_coboundary(build_datum(name), *triple)
    assert rep.checks and rep.ok, rep.failures()


def test_residue_signs_a1(A1, v_omega):
    signs = residue_signs(v_omega, v_omega)
    assert signs[("b", "f1b")] == -1
    assert signs[("b", "b")] == 1
    assert signs[("f1b", "b")] == 1 and signs[("f1b", "f1b")] == 1


@pytest.mark.parametrize("name,lam,mu", [("A1", (1,), (1,)), ("A1", (1,), (2,)), ("A2", (1, 0), (1, 0)),
                                         ("A2", (1, 0), (0, 1)), ("B2", (1, 0), (0, 1))])
def test_main2(name, lam, mu):
    datum = build_datum(name)
    rep = compare_main2(build_irreducible(datum, lam), build_irreducible(datum, mu))
    assert rep.ok, rep.failures()
    assert {"main2_lattice", "main2_residue", "xi_lattice", "xi_prime_residue"} <= {c.identity for c in rep.checks}


def test_signs_constant_on_components(A2):
    v = build_irreducible(A2, (1, 0))
    signs = residue_signs(v, v)
    t = tensor_crystals(crystal_of(A2, (1, 0)), crystal_of(A2, (1, 0)))
    comp = component_of(t)
    by_comp: dict = {}
    for node, s in signs.items():
        by_comp.setdefault(id(comp[node]), set()).add(s)
    assert len(signs) == 9
    assert all(len(s) == 1 for s in by_comp.values())


def test_axiom_defects_detects_broken_crystal(A1):
    c = AbstractCrystal(A1, ["b", "f1b"], {"b": (1,), "f1b": (-1,)}, [{}], [{"b": "f1b"}])
    assert c.axiom_defects()


def test_tensor_needs_same_datum(b1, A2):
    with pytest.raises(CrystalError):
        tensor_crystals(b1, crystal_of(A2, (1, 0)))
