"""R-matrices, the unitarized R-matrix and the two commutors.

Everything is an exact matrix on a concrete module.  The h-adic exponentials
reduce to diagonal q-powers on weight vectors:

    J                      q^{(mu, mu)/2 + (mu, rho)}   on weight mu
    Q^{p}                  q^{p (lambda, lambda + 2 rho)}   on a V_lambda component
    exp(h sum B^-1 H (x) H)  q^{(mu, nu)}   on a mu (x) nu weight vector

``R`` is the cartan factor times ``(T_w0^-1 (x) T_w0^-1) Delta(T_w0)`` and the
unitarized ``Rbar`` is computed three ways (routes ``y``, ``xi_prime`` and
``q``), which must agree entry by entry.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Sequence

from .braid import t_w0_inverse, t_w0_matrix, lowest_weight_vector
from .cartan import CartanDatum, Weight
from .linalg import Matrix
from .repn import InconsistencyError, LinOp, ModuleRep, build_irreducible, flip, \
    isotypic_decomposition, tensor
from .report import VerificationReport
from .scalars import I, ONE, QScalar, q_power

ROUTES = ("y", "xi_prime", "q")
KINDS = ("br", "dr", "hk")
XI_VARIANTS = ("xi", "xi_prime", "xi_double")


class RMatrixError(ValueError):
    pass


def _cached(mod: ModuleRep, key, build: Callable[[], Matrix]) -> Matrix:
    hit = mod._cache.get(key)
    if hit is None:
        hit = build()
        mod._cache[key] = hit
    return hit


# --------------------------------------------------------------------------
# diagonal and central operators
# --------------------------------------------------------------------------


def weight_diagonal(mod: ModuleRep, exponent: Callable[[Weight], Fraction]) -> Matrix:
    """Diagonal operator ``q^{exponent(wt)}`` on each basis vector."""
    memo: dict = {}
    entries = []
    for mu in mod.weights:
        s = memo.get(mu)
        if s is None:
            s = memo[mu] = q_power(exponent(mu))
        entries.append(s)
    return Matrix.diagonal(entries)


def j_exponent(datum: CartanDatum, mu: Weight) -> Fraction:
    return datum.bilinear_form(mu, mu) / 2 + datum.bilinear_form(mu, datum.rho)


def j_operator(mod: ModuleRep, power: int = 1) -> Matrix:
    """``J`` multiplies a weight-``mu`` vector by ``q^{(mu,mu)/2 + (mu,rho)}``."""
    datum = mod.datum
    return _cached(mod, ("J", power),
                   lambda: weight_diagonal(mod, lambda mu: power * j_exponent(datum, mu)))


def casimir_exponent(datum: CartanDatum, lam: Weight) -> Fraction:
    """``(lambda, lambda + 2 rho)``, the exponent of ``Q`` on ``V_lambda``."""
    two_rho = tuple(2 * x for x in datum.rho)
    return datum.bilinear_form(lam, datum.add(lam, two_rho))


def q_half(mod: ModuleRep, power=Fraction(1, 2)) -> Matrix:
    """``Q^{power}``: the scalar ``q^{power (lambda, lambda + 2 rho)}`` on each ``V_lambda``."""
    power = Fraction(power)
    datum = mod.datum

    def build():
        if mod.is_irreducible:
            s = q_power(power * casimir_exponent(datum, mod.highest_weight))
            return Matrix.diagonal([s] * mod.dim)
        dec = isotypic_decomposition(mod)
        return dec.scalar_blocks(lambda lam: q_power(power * casimir_exponent(datum, lam)))

    return _cached(mod, ("Q", power), build)


def cartan_exponent_via_b_inverse(datum: CartanDatum, mu: Weight, nu: Weight) -> Fraction:
    """``sum_ij (B^{-1})_ij <mu, H_i> <nu, H_j>``."""
    binv = datum.b_inverse
    n = datum.rank
    return sum((binv[i][j] * mu[i] * nu[j] for i in range(n) for j in range(n)), Fraction(0))


def cartan_factor(v: ModuleRep, w: ModuleRep) -> Matrix:
    """``q^{(mu, nu)}`` on ``V (x) W`` at a ``mu (x) nu`` basis vector."""
    datum = v.datum
    entries = []
    memo: dict = {}
    for a in v.weights:
        for b in w.weights:
            s = memo.get((a, b))
            if s is None:
                s = memo[(a, b)] = q_power(datum.bilinear_form(a, b))
            entries.append(s)
    return Matrix.diagonal(entries)


# --------------------------------------------------------------------------
# Schutzenberger involution on representations
# --------------------------------------------------------------------------


def _xi_on_irreducible(irr: ModuleRep) -> Matrix:
    """The map exchanging ``E_i, F_i`` with ``F_th(i), E_th(i)`` and sending ``v_lambda`` to ``v_low``.

    Each basis vector ``F_i b`` is sent to ``E_th(i) xi(b)``; the relations are
    then checked on the whole module.
    """
    datum = irr.datum
    cols = [lowest_weight_vector(irr)]
    for g in range(1, irr.dim):
        i, parent = irr.parents[g]
        cols.append(irr.E[datum.theta(i)].apply(cols[parent]))
    xi = Matrix.from_columns(irr.dim, cols)
    for i in range(datum.rank):
        th = datum.theta(i)
        if xi @ irr.E[i] != irr.F[th] @ xi or xi @ irr.F[i] != irr.E[th] @ xi:
            raise InconsistencyError(f"{irr.name}: xi does not intertwine generator {i + 1}")
    return xi


def _variant_on_irreducible(irr: ModuleRep, variant: str) -> Matrix:
    datum = irr.datum
    xi = _cached(irr, ("xi", "xi"), lambda: _xi_on_irreducible(irr))
    lam = irr.highest_weight
    if variant == "xi":
        return xi
    if variant == "xi_prime":
        k = datum.rho_vee_pairing(tuple(2 * x for x in lam))
        return xi.scale(I ** int(k) if k >= 0 else (I ** int(-k)).inverse())
    if variant == "xi_double":
        low = datum.w0(lam)
        signs = []
        for mu in irr.weights:
            e = datum.rho_vee_pairing(datum.sub(mu, low))
            signs.append(-ONE if e % 2 else ONE)
        return xi @ Matrix.diagonal(signs)
    raise RMatrixError(f"unknown xi variant {variant!r}")


def xi_operator(mod: ModuleRep, variant: str = "xi") -> Matrix:
    """``xi``, ``xi'`` or ``xi''`` on any module, componentwise through the isotypic decomposition."""
    if variant not in XI_VARIANTS:
        raise RMatrixError(f"unknown xi variant {variant!r}")

    def build():
        if mod.is_irreducible:
            return _variant_on_irreducible(mod, variant)
        dec = isotypic_decomposition(mod)
        return dec.blockwise(lambda comp: xi_operator(comp.irreducible, variant))

    return _cached(mod, ("xi", variant), build)


def xi_family(datum: CartanDatum, lam: Weight, variant: str = "xi") -> LinOp:
    irr = build_irreducible(datum, tuple(lam))
    return LinOp(irr, irr, xi_operator(irr, variant))


def y_operator(mod: ModuleRep) -> Matrix:
    """``Y = Q^{-1/2} J T_w0``."""
    return _cached(mod, ("Y",),
                   lambda: q_half(mod, Fraction(-1, 2)) @ j_operator(mod) @ t_w0_matrix(mod))


# --------------------------------------------------------------------------
# R-matrices
# --------------------------------------------------------------------------


def standard_r(v: ModuleRep, w: ModuleRep) -> Matrix:
    """``R = q^{(mu,nu)} (T_w0^-1 (x) T_w0^-1) Delta(T_w0)`` on ``V (x) W``."""
    vw = tensor(v, w)
    return _cached(vw, ("R",), lambda: cartan_factor(v, w)
                   @ t_w0_inverse(v).kron(t_w0_inverse(w)) @ t_w0_matrix(vw))


def unitarized_r(v: ModuleRep, w: ModuleRep, route: str = "q") -> Matrix:
    """``Rbar`` on ``V (x) W`` by one of the routes ``y``, ``xi_prime``, ``q``."""
    vw = tensor(v, w)

    def build():
        if route == "y":
            return y_operator(v).inverse().kron(y_operator(w).inverse()) @ y_operator(vw)
        if route == "xi_prime":
            return (xi_operator(v, "xi_prime").inverse().kron(xi_operator(w, "xi_prime").inverse())
                    @ xi_operator(vw, "xi_prime"))
        if route == "q":
            return (q_half(v).kron(q_half(w)) @ standard_r(v, w)
                    @ q_half(vw, Fraction(-1, 2)))
        raise RMatrixError(f"unknown route {route!r}; expected one of {', '.join(ROUTES)}")

    return _cached(vw, ("Rbar", route), build)


def route_disagreement(v: ModuleRep, w: ModuleRep, routes: Sequence[str] = ROUTES):
    """``None`` if all routes agree, else ``(route_a, route_b, (row, col, a, b))``."""
    mats = {r: unitarized_r(v, w, r) for r in routes}
    first = routes[0]
    for r in routes[1:]:
        diff = mats[first].first_difference(mats[r])
        if diff is not None:
            return first, r, diff
    return None


@dataclass(eq=False)
class CommutorOp(LinOp):
    """A natural isomorphism ``V (x) W -> W (x) V``."""

    kind: str = "dr"


def commutor_matrix(v: ModuleRep, w: ModuleRep, kind: str = "dr") -> Matrix:
    vw = tensor(v, w)

    def build():
        fl = flip(v, w)
        if kind == "br":
            return fl @ standard_r(v, w)
        if kind == "dr":
            return fl @ unitarized_r(v, w, "q")
        if kind == "hk":
            inner = xi_operator(v).inverse().kron(xi_operator(w).inverse())
            return fl @ inner @ xi_operator(vw)
        raise RMatrixError(f"unknown commutor {kind!r}; expected one of {', '.join(KINDS)}")

    return _cached(vw, ("sigma", kind), build)


def commutor(v: ModuleRep, w: ModuleRep, kind: str = "dr") -> CommutorOp:
    return CommutorOp(tensor(v, w), tensor(w, v), commutor_matrix(v, w, kind), kind=kind)


# --------------------------------------------------------------------------
# identity checks
# --------------------------------------------------------------------------


def is_natural(sigma: Matrix, v: ModuleRep, w: ModuleRep) -> bool:
    src, dst = tensor(v, w), tensor(w, v)
    for i in range(v.datum.rank):
        for x, y in ((src.E[i], dst.E[i]), (src.F[i], dst.F[i]), (src.K(i), dst.K(i))):
            if sigma @ x != y @ sigma:
                return False
    return True


def r_op_r_holds(v: ModuleRep, w: ModuleRep) -> bool:
    vw = tensor(v, w)
    lhs = flip(w, v) @ standard_r(w, v) @ flip(v, w) @ standard_r(v, w)
    rhs = q_half(v, -1).kron(q_half(w, -1)) @ q_half(vw, 1)
    return lhs == rhs


def delta_j_holds(v: ModuleRep, w: ModuleRep) -> bool:
    return j_operator(tensor(v, w)) == j_operator(v).kron(j_operator(w)) @ cartan_factor(v, w)


def symmetry_holds(v: ModuleRep, w: ModuleRep, kind: str = "dr") -> bool:
    return (commutor_matrix(w, v, kind) @ commutor_matrix(v, w, kind)).is_identity()


def cactus_sides(u: ModuleRep, v: ModuleRep, w: ModuleRep, kind: str = "dr") -> tuple[Matrix, Matrix]:
    """Both composites ``U (x) V (x) W -> W (x) V (x) U`` of the cactus axiom."""
    wv, vu = tensor(w, v), tensor(v, u)
    lhs = commutor_matrix(u, wv, kind) @ u.identity().kron(commutor_matrix(v, w, kind))
    rhs = commutor_matrix(vu, w, kind) @ commutor_matrix(u, v, kind).kron(w.identity())
    return lhs, rhs


def cactus_holds(u: ModuleRep, v: ModuleRep, w: ModuleRep, kind: str = "dr") -> bool:
    lhs, rhs = cactus_sides(u, v, w, kind)
    return lhs == rhs


def braid_relation_holds(v: ModuleRep) -> bool:
    """Braid relation for ``Flip R`` on ``V (x) V (x) V``."""
    s = commutor_matrix(v, v, "br")
    one = v.identity()
    a, b = s.kron(one), one.kron(s)
    return a @ b @ a == b @ a @ b


def hk_dr_sign(v: ModuleRep, w: ModuleRep) -> Matrix:
    """Blockwise ``(-1)^{<nu - lambda - mu, rho^vee>}`` on ``V_lambda (x) V_mu``."""
    datum = v.datum
    lam, mu = v.highest_weight, w.highest_weight
    if lam is None or mu is None:
        raise RMatrixError("hk_dr_sign needs irreducible factors")
    base = datum.add(lam, mu)

    def sign(nu):
        e = datum.rho_vee_pairing(datum.sub(nu, base))
        return -ONE if e % 2 else ONE

    return isotypic_decomposition(tensor(v, w)).scalar_blocks(sign)


def conj_j_holds(mod: ModuleRep) -> bool:
    j, jinv = j_operator(mod), j_operator(mod, -1)
    return all(j @ mod.E[i] @ jinv == mod.K(i) @ mod.E[i]
               and j @ mod.F[i] @ jinv == mod.F[i] @ mod.K(i, -1)
               for i in range(mod.datum.rank))


def conj_xi_double_holds(mod: ModuleRep) -> bool:
    x = xi_operator(mod, "xi_double")
    xinv = x.inverse()
    datum = mod.datum
    for i in range(datum.rank):
        th = datum.theta(i)
        if x @ mod.E[i] @ xinv != -mod.F[th] or x @ mod.F[i] @ xinv != -mod.E[th]:
            return False
        if x @ mod.K(i) @ xinv != mod.K(th, -1):
            return False
    return True


def q_central_holds(mod: ModuleRep) -> bool:
    qh = q_half(mod)
    return all(qh @ x == x @ qh for i in range(mod.datum.rank)
               for x in (mod.E[i], mod.F[i], mod.K(i)))


def xi_prime_square_holds(irr: ModuleRep) -> bool:
    k = irr.datum.rho_vee_pairing(tuple(2 * x for x in irr.highest_weight))
    x = xi_operator(irr, "xi_prime")
    expected = irr.identity() if k % 2 == 0 else -irr.identity()
    return x @ x == expected


def _name(datum: CartanDatum, *weights) -> str:
    return f"{datum.name} " + " x ".join("(" + ",".join(map(str, w)) + ")" for w in weights)


def verify_module(datum: CartanDatum, lam: Weight) -> VerificationReport:
    """Single-module identities for ``V_lambda``."""
    rep = VerificationReport()
    inst = _name(datum, lam)
    try:
        irr = build_irreducible(datum, tuple(lam))
    except InconsistencyError as exc:
        rep.add("xi_relations", inst, False, exc)
        return rep
    try:
        xi = xi_operator(irr)
        rep.add("xi_relations", inst, True)
        rep.add("xi_involution", inst, (xi @ xi).is_identity())
    except InconsistencyError as exc:
        rep.add("xi_relations", inst, False, exc)
        return rep
    rep.add("xi_prime_square", inst, xi_prime_square_holds(irr))
    rep.add("conj_j", inst, conj_j_holds(irr))
    rep.add("conj_xi_double", inst, conj_xi_double_holds(irr))
    y, x2 = y_operator(irr), xi_operator(irr, "xi_double")
    rep.add("y_equals_xi_double", inst, y == x2, y.first_difference(x2))
    return rep


def verify_pair(datum: CartanDatum, lam: Weight, mu: Weight) -> VerificationReport:
    """Two-module identities on ``V_lambda (x) V_mu``."""
    rep = VerificationReport()
    inst = _name(datum, lam, mu)
    v, w = build_irreducible(datum, tuple(lam)), build_irreducible(datum, tuple(mu))
    vw = tensor(v, w)
    for a in v.weights:
        for b in w.weights:
            if cartan_exponent_via_b_inverse(datum, a, b) != datum.bilinear_form(a, b):
                rep.add("cartan_b_inverse", inst, False, (a, b))
                break
        else:
            continue
        break
    else:
        rep.add("cartan_b_inverse", inst, True)
    rep.add("delta_j", inst, delta_j_holds(v, w))
    rep.add("q_central", inst, q_central_holds(vw))
    rep.add("r_op_r", inst, r_op_r_holds(v, w))
    bad = route_disagreement(v, w)
    rep.add("rbar_routes", inst, bad is None, bad)
    for kind in KINDS:
        rep.add("naturality", f"{inst} sigma^{kind}", is_natural(commutor_matrix(v, w, kind), v, w))
    rep.add("symmetry", f"{inst} sigma^dr", symmetry_holds(v, w, "dr"))
    rep.add("symmetry", f"{inst} sigma^hk", symmetry_holds(v, w, "hk"))
    hk = commutor_matrix(v, w, "hk") @ hk_dr_sign(v, w)
    rep.add("hk_vs_dr", inst, hk == commutor_matrix(v, w, "dr"))
    return rep


def verify_triple(datum: CartanDatum, lam: Weight, mu: Weight, nu: Weight,
                  kinds: Sequence[str] = ("dr", "hk")) -> VerificationReport:
    rep = VerificationReport()
    inst = _name(datum, lam, mu, nu)
    u, v, w = (build_irreducible(datum, tuple(x)) for x in (lam, mu, nu))
    for kind in kinds:
        lhs, rhs = cactus_sides(u, v, w, kind)
        rep.add("cactus", f"{inst} sigma^{kind}", lhs == rhs, lhs.first_difference(rhs))
    if tuple(lam) == tuple(mu) == tuple(nu):
        rep.add("braid_br", inst, braid_relation_holds(u))
    return rep


def verify_identities(datum: CartanDatum, weights: Sequence[Weight],
                      pairs: Sequence[tuple] | None = None,
                      triples: Sequence[tuple] = ()) -> VerificationReport:
    """Module checks for every weight, pair checks for ``pairs`` (default: all ordered pairs)."""
    weights = [tuple(w) for w in weights]
    rep = VerificationReport()
    for lam in weights:
        rep.extend(verify_module(datum, lam))
    if pairs is None:
        pairs = [(a, b) for a in weights for b in weights]
    for a, b in pairs:
        rep.extend(verify_pair(datum, a, b))
    for t in triples:
        rep.extend(verify_triple(datum, *t))
    return rep


__all__ = [
    "ROUTES",
    "KINDS",
    "XI_VARIANTS",
    "RMatrixError",
    "CommutorOp",
    "weight_diagonal",
    "j_exponent",
    "j_operator",
    "casimir_exponent",
    "q_half",
    "cartan_factor",
    "cartan_exponent_via_b_inverse",
    "xi_operator",
    "xi_family",
    "y_operator",
    "standard_r",
    "unitarized_r",
    "route_disagreement",
    "commutor",
    "commutor_matrix",
    "is_natural",
    "r_op_r_holds",
    "delta_j_holds",
    "symmetry_holds",
    "cactus_sides",
    "cactus_holds",
    "braid_relation_holds",
    "hk_dr_sign",
    "conj_j_holds",
    "conj_xi_double_holds",
    "q_central_holds",
    "xi_prime_square_holds",
    "verify_module",
    "verify_pair",
    "verify_triple",
    "verify_identities",
]
