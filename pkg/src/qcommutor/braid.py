"""Quantum Weyl group operators ``T_i`` and ``T_w`` on explicit modules.

On a weight vector ``v`` with ``n = <wt v, alpha_i^vee>``::

    T_i v = sum_{a - b + c = -n} (-1)^b q_i^{b - a c} E_i^(a) F_i^(b) E_i^(c) v

This normalization gives ``T_i v = (-1)^n q_i^n F_i^(n) v`` on vectors killed
by ``E_i`` and ``T_i E_i T_i^{-1} = -F_i K_i``.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

from .cartan import Weight
from .linalg import Matrix, Vector, vscale
from .repn import InconsistencyError, LinOp, ModuleRep, divided_power, highest_weight_vector
from .scalars import ONE, q_power


class BraidError(ValueError):
    pass


@dataclass(eq=False)
class BraidOp(LinOp):
    """A quantum Weyl group element acting on one module, with its word."""

    word: tuple = ()


def _string_bound(mod: ModuleRep, i: int) -> int:
    return max((abs(mu[i]) for mu in mod.weights), default=0)


def t_i_matrix(mod: ModuleRep, i: int) -> Matrix:
    key = ("T", i)
    hit = mod._cache.get(key)
    if hit is not None:
        return hit
    d = mod.datum.d[i]
    L = _string_bound(mod, i)
    cols: list[Vector] = [None] * mod.dim
    for mu, idx in mod.weight_spaces().items():
        n = mu[i]
        for k in idx:
            total: Vector = {}
            v0 = {k: ONE}
            for c in range(L + 1):
                vc = divided_power(mod, "E", i, c).apply(v0)
                if not vc:
                    break
                for a in range(L + 1):
                    b = a + c + n
                    if b < 0:
                        continue
                    vb = divided_power(mod, "F", i, b).apply(vc) if b <= 2 * L else {}
                    if not vb:
                        continue
                    va = divided_power(mod, "E", i, a).apply(vb)
                    if not va:
                        continue
                    coeff = q_power(d * (b - a * c), -1 if b % 2 else 1)
                    for r, x in va.items():
                        s = total.get(r)
                        s = coeff * x if s is None else s + coeff * x
                        if s:
                            total[r] = s
                        else:
                            del total[r]
            cols[k] = total
    m = Matrix.from_columns(mod.dim, cols)
    mod._cache[key] = m
    return m


def t_i(mod: ModuleRep, i: int) -> BraidOp:
    return BraidOp(mod, mod, t_i_matrix(mod, i), word=(i,))


def t_word_matrix(mod: ModuleRep, word: Sequence[int], check_reduced: bool = True) -> Matrix:
    """``T_{i_1} T_{i_2} ... T_{i_k}`` for the word ``(i_1, ..., i_k)``."""
    word = tuple(word)
    if check_reduced and not mod.datum.is_reduced(word):
        raise BraidError(f"word {[i + 1 for i in word]} is not reduced")
    key = ("Tw", word)
    hit = mod._cache.get(key)
    if hit is not None:
        return hit
    m = mod.identity()
    for i in word:
        m = m @ t_i_matrix(mod, i)
    mod._cache[key] = m
    return m


def t_word(mod: ModuleRep, word: Sequence[int]) -> BraidOp:
    return BraidOp(mod, mod, t_word_matrix(mod, word), word=tuple(word))


def t_w0_matrix(mod: ModuleRep, word: Sequence[int] | None = None) -> Matrix:
    return t_word_matrix(mod, mod.datum.longest_word if word is None else word)


def t_w0_inverse(mod: ModuleRep) -> Matrix:
    key = ("Tw0inv",)
    hit = mod._cache.get(key)
    if hit is None:
        hit = t_w0_matrix(mod).inverse()
        mod._cache[key] = hit
    return hit


def conjugate(x: Matrix, u: Matrix, x_inv: Matrix | None = None) -> Matrix:
    """``X u X^{-1}``."""
    if x.nrows != x.ncols or x.shape != u.shape:
        raise BraidError("conjugation needs square matrices of equal size")
    if x_inv is None:
        x_inv = x.inverse()
    return x @ u @ x_inv


# --------------------------------------------------------------------------
# lowest weight vectors
# --------------------------------------------------------------------------


def w0_prefactor(mod: ModuleRep, lam: Weight):
    """``(-1)^{<2 lam, rho^vee>} q^{(2 lam, rho)}``."""
    datum = mod.datum
    two_lam = tuple(2 * x for x in lam)
    sign = datum.rho_vee_pairing(two_lam)
    assert sign.denominator == 1
    return q_power(datum.bilinear_form(two_lam, datum.rho), -1 if sign % 2 else 1)


def string_exponents(datum, word: Sequence[int], lam: Weight) -> list[int]:
    """``n_j = <s_{i_1} ... s_{i_{j-1}} alpha_{i_j}^vee, lam>`` along ``word``.

    Equivalently ``n_j = <s_{i_{j-1}} ... s_{i_1} lam, alpha_{i_j}^vee>``.
    """
    out = []
    mu = tuple(lam)
    for i in word:
        out.append(mu[i])
        mu = datum.reflect(i, mu)
    return out


def lowest_weight_vector(mod: ModuleRep, word: Sequence[int] | None = None) -> Vector:
    """``v_lambda^low`` defined by ``T_{w0} v_lambda = (-1)^{<2lam,rho^vee>} q^{(2lam,rho)} v^low``."""
    if not mod.is_irreducible:
        raise BraidError("lowest weight vector is defined for irreducible modules")
    word = mod.datum.longest_word if word is None else tuple(word)
    # T_{w0} v applies the rightmost letter first; use the reversed word so that
    # the letters act in the order i_1, i_2, ... on v_lambda
    tw = t_word_matrix(mod, tuple(reversed(word)))
    img = tw.apply(highest_weight_vector(mod))
    return vscale(w0_prefactor(mod, mod.highest_weight).inverse(), img)


def lowest_by_divided_powers(mod: ModuleRep, word: Sequence[int] | None = None) -> Vector:
    """``F_{i_m}^(n_m) ... F_{i_1}^(n_1) v_lambda``."""
    datum = mod.datum
    word = datum.longest_word if word is None else tuple(word)
    v = highest_weight_vector(mod)
    for i, n in zip(word, string_exponents(datum, word, mod.highest_weight)):
        v = divided_power(mod, "F", i, n).apply(v)
    return v


def lowest_by_kashiwara(mod: ModuleRep, word: Sequence[int] | None = None) -> Vector:
    """``F~_{i_m}^{n_m} ... F~_{i_1}^{n_1} v_lambda``."""
    from .repn import kashiwara

    datum = mod.datum
    word = datum.longest_word if word is None else tuple(word)
    v = highest_weight_vector(mod)
    for i, n in zip(word, string_exponents(datum, word, mod.highest_weight)):
        fk = kashiwara(mod, i, "F")
        for _ in range(n):
            v = fk.apply(v)
    return v


def partial_images(mod: ModuleRep, word: Sequence[int]) -> list[Vector]:
    """``T_{i_k} ... T_{i_1} v_lambda`` for ``k = 0..len(word)``."""
    v = highest_weight_vector(mod)
    out = [v]
    for i in word:
        v = t_i_matrix(mod, i).apply(v)
        out.append(v)
    return out


def check_t_i_on_heads(mod: ModuleRep, i: int) -> list:
    """Failures of ``T_i v = (-1)^n q_i^n F_i^(n) v`` over a basis of ``ker E_i``."""
    from .linalg import nullspace

    d = mod.datum.d[i]
    bad = []
    ti = t_i_matrix(mod, i)
    for mu, cols in mod.weight_spaces().items():
        n = mu[i]
        for u in nullspace(mod.E[i], cols):
            if n < 0:
                bad.append((mu, "highest vector of negative weight"))
                continue
            lhs = ti.apply(u)
            rhs = vscale(q_power(d * n, -1 if n % 2 else 1), divided_power(mod, "F", i, n).apply(u))
            if lhs != rhs:
                bad.append((mu, u))
    return bad


def expected_conjugation(mod: ModuleRep, i: int) -> dict:
    """Right-hand sides of the conjugation table for ``C_{T_i}``.

    For ``j != i`` and ``m = -a_ij``::

        C_{T_i}(E_j) = sum_r (-1)^r q_i^{-r} E_i^(m-r) E_j E_i^(r)
        C_{T_i}(F_j) = sum_r (-1)^r q_i^{r} F_i^(r) F_j F_i^(m-r)
    """
    datum = mod.datum
    n = datum.rank
    Ki, Kinv = mod.K(i), mod.K(i, -1)
    out = {("E", i): -(mod.F[i] @ Ki), ("F", i): -(Kinv @ mod.E[i])}
    for j in range(n):
        if j == i:
            continue
        m = -datum.cartan[i][j]
        e_sum = Matrix(mod.dim, mod.dim)
        f_sum = Matrix(mod.dim, mod.dim)
        d = datum.d[i]
        for r in range(m + 1):
            sign = -1 if r % 2 else 1
            e_term = divided_power(mod, "E", i, m - r) @ mod.E[j] @ divided_power(mod, "E", i, r)
            f_term = divided_power(mod, "F", i, r) @ mod.F[j] @ divided_power(mod, "F", i, m - r)
            e_sum = e_sum + e_term.scale(q_power(-d * r, sign))
            f_sum = f_sum + f_term.scale(q_power(d * r, sign))
        out[("E", j)] = e_sum
        out[("F", j)] = f_sum
    for j in range(n):
        # K_{s_i(H_j)}: pairing with the reflected coroot
        exps = []
        for k in range(mod.dim):
            mu = mod.weights[k]
            exps.append(q_power(mod.datum.d[j] * mod.datum.reflect(i, mu)[j]))
        out[("K", j)] = Matrix.diagonal(exps)
    return out


def conjugation_defects(mod: ModuleRep, i: int) -> list:
    """Generators ``X`` where ``T_i X T_i^{-1}`` differs from the table."""
    t = t_i_matrix(mod, i)
    t_inv = t.inverse()
    bad = []
    for (gen, j), rhs in expected_conjugation(mod, i).items():
        x = {"E": mod.E, "F": mod.F}.get(gen)
        lhs_src = x[j] if x is not None else mod.K(j)
        if conjugate(t, lhs_src, t_inv) != rhs:
            bad.append(f"C_T{i + 1}({gen}{j + 1})")
    return bad


def w0_conjugation_defects(mod: ModuleRep) -> list:
    """Failures of ``C_{T_w0}(E_i) = -F_th(i) K_th(i)``, ``C(F_i) = -K_th(i)^-1 E_th(i)``, ``C(K_i) = K_th(i)^-1``."""
    datum = mod.datum
    t = t_w0_matrix(mod)
    t_inv = t_w0_inverse(mod)
    bad = []
    for i in range(datum.rank):
        th = datum.theta(i)
        if conjugate(t, mod.E[i], t_inv) != -(mod.F[th] @ mod.K(th)):
            bad.append(f"C_Tw0(E{i + 1})")
        if conjugate(t, mod.F[i], t_inv) != -(mod.K(th, -1) @ mod.E[th]):
            bad.append(f"C_Tw0(F{i + 1})")
        if conjugate(t, mod.K(i), t_inv) != mod.K(th, -1):
            bad.append(f"C_Tw0(K{i + 1})")
    return bad


def braid_relation_defects(mod: ModuleRep) -> list:
    """Pairs ``(i, j)`` where ``T_i T_j T_i ... != T_j T_i T_j ...`` (``m_ij`` factors)."""
    datum = mod.datum
    bad = []
    for i in range(datum.rank):
        for j in range(i + 1, datum.rank):
            prod = datum.cartan[i][j] * datum.cartan[j][i]
            m = {0: 2, 1: 3, 2: 4, 3: 6}[prod]
            w1 = tuple(i if k % 2 == 0 else j for k in range(m))
            w2 = tuple(j if k % 2 == 0 else i for k in range(m))
            if t_word_matrix(mod, w1) != t_word_matrix(mod, w2):
                bad.append((i, j))
    return bad


def check_weight_permutation(mod: ModuleRep, i: int) -> bool:
    t = t_i_matrix(mod, i)
    for r, c, _ in t.entries():
        if mod.weights[r] != mod.datum.reflect(i, mod.weights[c]):
            return False
    return True


def jjthings_defects(mod: ModuleRep, word: Sequence[int]) -> list:
    """Check ``E_{i_{k+1}} T_{i_k} ... T_{i_1} v = 0`` and the closed form of ``T_{i_k} ... T_{i_1} v``."""
    datum = mod.datum
    word = tuple(word)
    if not datum.is_reduced(word):
        raise BraidError(f"word {[i + 1 for i in word]} is not reduced")
    ns = string_exponents(datum, word, mod.highest_weight)
    images = partial_images(mod, word)
    bad = []
    f_side = highest_weight_vector(mod)
    total_n = total_e = 0
    for k, (i, n) in enumerate(zip(word, ns), start=1):
        f_side = divided_power(mod, "F", i, n).apply(f_side)
        total_n += n
        total_e += datum.d[i] * n
        if images[k] != vscale(q_power(total_e, -1 if total_n % 2 else 1), f_side):
            bad.append(("closed form", k))
        if k < len(word) and mod.E[word[k]].apply(images[k]):
            bad.append(("highest", k))
    return bad


def lowest_returns_to_top(mod: ModuleRep) -> bool:
    """``T_{w0} v^low == v_lambda``."""
    return t_w0_matrix(mod).apply(lowest_weight_vector(mod)) == highest_weight_vector(mod)


__all__ = [
    "BraidOp",
    "BraidError",
    "t_i",
    "t_i_matrix",
    "t_word",
    "t_word_matrix",
    "t_w0_matrix",
    "t_w0_inverse",
    "conjugate",
    "lowest_weight_vector",
    "lowest_by_divided_powers",
    "lowest_by_kashiwara",
    "string_exponents",
    "partial_images",
    "w0_prefactor",
    "check_t_i_on_heads",
    "conjugation_defects",
    "w0_conjugation_defects",
    "braid_relation_defects",
    "check_weight_permutation",
    "jjthings_defects",
    "lowest_returns_to_top",
]
