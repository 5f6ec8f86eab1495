import pytest
from conftest import scalars
from hypothesis import given, strategies as st

from qcommutor.linalg import LinalgError, Matrix, nullspace, rank
from qcommutor.scalars import ONE, ZERO, QScalar, q_power

q = q_power(1)


def _m(rows):
    return Matrix.from_dense([[QScalar(x) if not isinstance(x, QScalar) else x for x in r] for r in rows])


def test_basic_products():
    a = _m([[1, q], [0, 1]])
    b = _m([[1, -q], [0, 1]])
    assert (a @ b).is_identity()
    assert a.inverse() == b
    assert a.transpose().to_dense()[1][0] == q
    assert (a - a).is_zero()
    assert a.first_difference(b)[:2] == (0, 1)
    assert a.first_difference(a) is None


def test_kron_matches_definition():
    a = _m([[1, 2], [3, 4]])
    b = _m([[0, q], [1, 0]])
    k = a.kron(b).to_dense()
    for i in range(2):
        for j in range(2):
            for r in range(2):
                for s in range(2):
                    assert k[2 * i + r][2 * j + s] == a.to_dense()[i][j] * b.to_dense()[r][s]


def test_singular_inverse_rejected():
    with pytest.raises(LinalgError):
        _m([[1, q], [q.inverse(), 1]]).inverse()


def test_nullspace_and_rank():
    m = _m([[1, q, q ** 2], [q, q ** 2, q ** 3]])
    assert rank(m) == 1
    ns = nullspace(m)
    assert len(ns) == 2
    for v in ns:
        assert not m.apply(v)


@given(st.lists(scalars(), min_size=4, max_size=4))
def test_inverse_round_trip(vals):
    m = Matrix.from_dense([vals[:2], vals[2:]])
    det = vals[0] * vals[3] - vals[1] * vals[2]
    if det == ZERO:
        with pytest.raises(LinalgError):
            m.inverse()
        return
    assert (m @ m.inverse()).is_identity()
    x = Matrix.from_dense([[ONE], [q]])
    assert m @ m.solve(x) == x
