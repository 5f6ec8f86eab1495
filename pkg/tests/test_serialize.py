import json

import pytest

from qcommutor.cartan import build_datum
from qcommutor.crystal import crystal_commutor, crystal_of, node_label, tensor_crystals
from qcommutor.repn import build_irreducible, relation_defects, tensor
from qcommutor.rmatrix import unitarized_r
from qcommutor.serialize import (FormatError, crystal_to_dot, crystal_to_json, dumps, matrix_from_json,
                                 matrix_to_json, module_from_json, module_to_json, parse_dot)


@pytest.mark.parametrize("name,lam", [("A1", (2,)), ("A2", (1, 1)), ("B2", (0, 1))])
def test_module_round_trip(name, lam):
    v = build_irreducible(build_datum(name), lam)
    text = dumps(module_to_json(v))
    back = module_from_json(json.loads(text))
    assert back.weights == v.weights and back.labels == v.labels
    assert all(a == b for a, b in zip(back.E, v.E))
    assert all(a == b for a, b in zip(back.F, v.F))
    assert back.datum == v.datum
    assert not relation_defects(back)
    assert dumps(module_to_json(back)) == text


def test_operator_round_trip(v_omega):
    m = unitarized_r(v_omega, v_omega)
    obj = json.loads(dumps(matrix_to_json(m)))
    assert matrix_from_json(obj) == m
    assert ["1", "1", "(2*q^(1)) / (q^(2) + 1)"] == [str(x) for x in obj["entries"][1]]


def test_tensor_module_round_trip(A2):
    vw = tensor(build_irreducible(A2, (1, 0)), build_irreducible(A2, (0, 1)))
    back = module_from_json(json.loads(dumps(module_to_json(vw))))
    assert all(a == b for a, b in zip(back.E, vw.E))


def test_malformed_matrix():
    with pytest.raises(FormatError):
        matrix_from_json({"rows": 2, "cols": 2, "entries": [[3, 0, "1"]]})
    with pytest.raises(FormatError):
        matrix_from_json({"rows": 2})


def test_dot_round_trip(A2):
    a, b = crystal_of(A2, (1, 0)), crystal_of(A2, (0, 1))
    t = tensor_crystals(a, b)
    sigma = crystal_commutor(a, b)
    text = crystal_to_dot(t, commutor=sigma)
    parsed = parse_dot(text)
    assert set(parsed["nodes"]) == {node_label(x) for x in t.nodes}
    assert sorted(parsed["edges"]) == sorted((node_label(s), node_label(d), i + 1) for i, s, d in t.edges())
    for x in t.nodes:
        attrs = parsed["nodes"][node_label(x)]
        assert attrs["label"] == "wt=(" + ",".join(map(str, t.wt[x])) + ")"
        assert attrs["sigma"] == node_label(sigma[x])
    assert text.count("subgraph") == 2
    assert crystal_to_dot(t, commutor=sigma) == text


def test_crystal_json():
    c = tensor_crystals(crystal_of(build_datum("A1"), (1,)), crystal_of(build_datum("A1"), (1,)))
    obj = crystal_to_json(c)
    assert obj["nodes"] == 4
    assert sorted(comp["id"] for comp in obj["components"]) == ["0#0", "2#0"]
