"""Finite-dimensional representations as explicit matrices.

Conventions for the Hopf structure::

    Delta(E_i) = E_i (x) K_i + 1 (x) E_i
    Delta(F_i) = F_i (x) 1 + K_i^{-1} (x) F_i
    K_i v = q_i^{<wt v, alpha_i^vee>} v,   q_i = q^{d_i}

Irreducible modules are generated weight space by weight space from the
highest weight vector.  A candidate ``F_i b`` is represented by its images
under all ``E_j`` (computed from ``[E_j, F_i] = delta_ij [K_i; 0]``); below the
top weight this map is injective on ``V_lambda``, so linear dependence among
the images is exactly linear dependence in ``V_lambda``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache
from typing import Sequence

from .cartan import CartanDatum, Weight
from .linalg import Echelon, Matrix, Vector, _axpy, nullspace, vscale
from .scalars import ONE, QScalar, ScalarError, limit_at_infinity, q_power, \
    quantum_divided_factor, quantum_integer, valuation


class RepresentationError(ValueError):
    """Invalid input to a representation constructor."""


class InconsistencyError(RuntimeError):
    """An exact computation contradicted a structural guarantee."""


class LatticeViolation(ArithmeticError):
    """A vector expected in a crystal lattice has a coordinate not regular at q = oo."""

    def __init__(self, message: str, index=None, value=None):
        super().__init__(message)
        self.index = index
        self.value = value


# --------------------------------------------------------------------------
# modules and operators
# --------------------------------------------------------------------------


@dataclass(eq=False)
class ModuleRep:
    """A representation with explicit generator matrices.

    ``factors`` is empty for an irreducible module and ``(V, W)`` for
    ``V (x) W``, whose basis index ``a * dim W + b`` is the pair ``(a, b)``.
    """

    datum: CartanDatum
    weights: list
    labels: list
    E: list
    F: list
    name: str = ""
    highest_weight: Weight | None = None
    factors: tuple = ()
    # construction record for irreducibles: basis index -> (i, parent index)
    parents: dict = field(default_factory=dict)
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def dim(self) -> int:
        return len(self.weights)

    @property
    def is_irreducible(self) -> bool:
        return self.highest_weight is not None and not self.factors

    def weight_spaces(self) -> dict:
        ws = self._cache.get("ws")
        if ws is None:
            ws = {}
            for k, mu in enumerate(self.weights):
                ws.setdefault(mu, []).append(k)
            self._cache["ws"] = ws
        return ws

    def weight_space(self, mu: Weight) -> list[int]:
        return self.weight_spaces().get(tuple(mu), [])

    def k_exponent(self, i: int, k: int) -> int:
        return self.datum.d[i] * self.weights[k][i]

    def K(self, i: int, power: int = 1) -> Matrix:
        key = ("K", i, power)
        m = self._cache.get(key)
        if m is None:
            m = Matrix.diagonal(q_power(power * self.k_exponent(i, k)) for k in range(self.dim))
            self._cache[key] = m
        return m

    def identity(self) -> Matrix:
        return Matrix.identity(self.dim)

    def __repr__(self):
        return f"ModuleRep({self.name or '?'}, dim={self.dim})"


@dataclass(eq=False)
class LinOp:
    """An exact linear map ``source -> target``."""

    source: ModuleRep
    target: ModuleRep
    matrix: Matrix

    def __post_init__(self):
        if self.matrix.shape != (self.target.dim, self.source.dim):
            raise ValueError("matrix shape does not match the modules")

    def __matmul__(self, other: "LinOp") -> "LinOp":
        if other.target is not self.source:
            raise ValueError("composition of operators with mismatched modules")
        return LinOp(other.source, self.target, self.matrix @ other.matrix)

    def inverse(self) -> "LinOp":
        return LinOp(self.target, self.source, self.matrix.inverse())

    def __call__(self, vec: Vector) -> Vector:
        return self.matrix.apply(vec)

    def __eq__(self, other):
        return isinstance(other, LinOp) and self.matrix == other.matrix

    __hash__ = None


# --------------------------------------------------------------------------
# irreducible modules
# --------------------------------------------------------------------------


def _window(datum: CartanDatum, lam: Weight):
    low = datum.w0(lam)

    def inside(mu):
        return all(c >= 0 for c in datum.root_coords(datum.sub(mu, low)))

    return inside


@lru_cache(maxsize=None)
def build_irreducible(datum: CartanDatum, lam: Weight) -> ModuleRep:
    """``V_lambda`` for a dominant integral ``lambda``."""
    lam = tuple(int(x) for x in lam)
    if len(lam) != datum.rank:
        raise RepresentationError(f"weight {lam} has the wrong rank")
    if not datum.is_dominant(lam):
        raise RepresentationError(f"weight {lam} is not dominant")
    n = datum.rank
    inside = _window(datum, lam)
    alphas = [datum.simple_root(i) for i in range(n)]

    weights: list = [lam]
    labels: list = ["v"]
    parents: dict = {}
    basis_of: dict = {lam: [0]}
    e_cols: list[list[Vector]] = [[{} for _ in range(n)]]  # e_cols[g][j] = E_j column g
    f_cols: list[dict] = [dict() for _ in range(n)]  # f_cols[i][g] = F_i column g

    level = [lam]
    while level:
        nxt = []
        seen = set()
        for mu in level:
            for i in range(n):
                nu = datum.sub(mu, alphas[i])
                if nu not in seen and inside(nu):
                    seen.add(nu)
                    nxt.append(nu)
        nxt.sort(key=lambda nu: tuple(-c for c in datum.root_coords(datum.sub(nu, lam))),
                 reverse=True)
        new_level = []
        for nu in nxt:
            ech = Echelon()
            accepted: list[int] = []
            for i in range(n):
                above = datum.add(nu, alphas[i])
                for b in basis_of.get(above, []):
                    image: Vector = {}
                    for j in range(n):
                        # E_j F_i b = F_i E_j b + delta_ij [<wt b, alpha_i^vee>]_{q_i} b
                        for src, c in e_cols[b][j].items():
                            _axpy(image, c, f_cols[i].get(src, {}))
                    hw = quantum_integer(weights[b][i], datum.d[i])
                    if hw:
                        _axpy(image, hw, {b: ONE})
                    coords = ech.add(image)
                    if coords is None:
                        g = len(weights)
                        weights.append(nu)
                        labels.append(f"F{i + 1}{labels[b]}")
                        parents[g] = (i, b)
                        cols: list[Vector] = [{} for _ in range(n)]
                        for idx, c in image.items():
                            j = _which_root(datum, weights[idx], nu, n)
                            cols[j][idx] = c
                        e_cols.append(cols)
                        accepted.append(g)
                        f_cols[i][b] = {g: ONE}
                    else:
                        f_cols[i][b] = {accepted[k]: c for k, c in coords.items() if c}
            if accepted:
                basis_of[nu] = accepted
                new_level.append(nu)
        level = new_level

    dim = len(weights)
    E = [Matrix.from_columns(dim, [e_cols[g][j] for g in range(dim)]) for j in range(n)]
    F = [Matrix.from_columns(dim, [f_cols[i].get(g, {}) for g in range(dim)]) for i in range(n)]
    name = "V(" + ",".join(map(str, lam)) + ")"
    mod = ModuleRep(datum, weights, labels, E, F, name=name, highest_weight=lam, parents=parents)
    expected = datum.weyl_dimension(lam)
    if dim != expected:
        raise InconsistencyError(f"{name}: dimension {dim} differs from Weyl formula {expected}")
    return mod


def _which_root(datum, mu, nu, n) -> int:
    diff = datum.sub(mu, nu)
    for j in range(n):
        if diff == datum.simple_root(j):
            return j
    raise InconsistencyError("E-image outside the adjacent weight spaces")


def highest_weight_vector(mod: ModuleRep) -> Vector:
    return {0: ONE}


# --------------------------------------------------------------------------
# tensor products and divided powers
# --------------------------------------------------------------------------


def tensor(v: ModuleRep, w: ModuleRep) -> ModuleRep:
    """``V (x) W`` with the coproduct in the module docstring.

    The result is memoized on ``v`` so that operators cached on the tensor
    module are shared between callers.
    """
    if v.datum != w.datum:
        raise RepresentationError("tensor product of modules over different data")
    memo = v._cache.setdefault("tensor", {})
    hit = memo.get(w)
    if hit is not None:
        return hit
    n = v.datum.rank
    Iv, Iw = v.identity(), w.identity()
    E = [v.E[i].kron(w.K(i)) + Iv.kron(w.E[i]) for i in range(n)]
    F = [v.F[i].kron(Iw) + v.K(i, -1).kron(w.F[i]) for i in range(n)]
    weights = [v.datum.add(a, b) for a in v.weights for b in w.weights]
    labels = [f"{a}⊗{b}" for a in v.labels for b in w.labels]
    mod = ModuleRep(v.datum, weights, labels, E, F, name=f"{v.name}⊗{w.name}", factors=(v, w))
    memo[w] = mod
    return mod


def flip(v: ModuleRep, w: ModuleRep) -> Matrix:
    """Permutation matrix ``V (x) W -> W (x) V``, ``a (x) b -> b (x) a``."""
    dv, dw = v.dim, w.dim
    rows = {b * dv + a: {a * dw + b: ONE} for a in range(dv) for b in range(dw)}
    return Matrix(dv * dw, dv * dw, rows)


def divided_power(mod: ModuleRep, gen: str, i: int, n: int) -> Matrix:
    """``X_i^n / [n]_{q_i}!`` for ``X`` in ``{"E", "F"}``."""
    if n < 0:
        raise ValueError("negative divided power")
    key = ("div", gen, i, n)
    m = mod._cache.get(key)
    if m is not None:
        return m
    if n == 0:
        m = mod.identity()
    else:
        x = (mod.E if gen == "E" else mod.F)[i]
        prev = divided_power(mod, gen, i, n - 1)
        m = (x @ prev).scale(quantum_integer(n, mod.datum.d[i]).inverse())
    mod._cache[key] = m
    return m


# --------------------------------------------------------------------------
# highest weight vectors and isotypic decomposition
# --------------------------------------------------------------------------


def _height_key(datum, mu):
    return (-sum(datum.root_coords(mu)), tuple(-x for x in mu))


def highest_weight_vectors(mod: ModuleRep) -> list[tuple[Weight, Vector]]:
    """Per weight space, a basis of the joint kernel of the ``E_i``.

    Vectors are in reduced echelon form with leading coordinate 1.
    """
    hit = mod._cache.get("hwv")
    if hit is not None:
        return hit
    datum = mod.datum
    total = mod.E[0]
    for e in mod.E[1:]:
        total = total + e
    out = []
    for mu in sorted(mod.weight_spaces(), key=lambda m: _height_key(datum, m)):
        if not datum.is_dominant(mu):
            continue
        cols = mod.weight_space(mu)
        kernel = nullspace(total, cols)
        ech = Echelon()
        for vec in kernel:
            ech.add(vec)
        for _, red, _ in sorted(ech.pivots, key=lambda p: p[0]):
            out.append((mu, red))
    mod._cache["hwv"] = out
    return out


@dataclass(eq=False)
class Component:
    """An embedded copy of ``V_lambda``: ``vectors[k]`` is the image of basis vector ``k``."""

    weight: Weight
    irreducible: ModuleRep
    vectors: list
    offset: int


@dataclass(eq=False)
class Decomposition:
    module: ModuleRep
    components: list
    P: Matrix  # columns: all component vectors, in component order
    P_inv: Matrix

    def blockwise(self, per_component) -> Matrix:
        """``P diag(X_c) P^{-1}`` where ``per_component(component)`` gives ``X_c``."""
        blocks = {}
        for comp in self.components:
            x = per_component(comp)
            for i, j, v in x.entries():
                blocks.setdefault(comp.offset + i, {})[comp.offset + j] = v
        d = self.module.dim
        return self.P @ Matrix(d, d, blocks) @ self.P_inv

    def scalar_blocks(self, scalar_of_weight) -> Matrix:
        """Operator acting on each component ``V_lambda`` by ``scalar_of_weight(lambda)``."""
        d = self.module.dim
        diag = [None] * d
        for comp in self.components:
            s = scalar_of_weight(comp.weight)
            for k in range(comp.irreducible.dim):
                diag[comp.offset + k] = s
        return self.P @ Matrix.diagonal(diag) @ self.P_inv


def isotypic_decomposition(mod: ModuleRep) -> Decomposition:
    """Split ``mod`` into copies of irreducibles, one per highest weight vector."""
    hit = mod._cache.get("iso")
    if hit is not None:
        return hit
    comps = []
    columns = []
    for mu, u in highest_weight_vectors(mod):
        irr = build_irreducible(mod.datum, mu)
        vecs = [u]
        for g in range(1, irr.dim):
            i, parent = irr.parents[g]
            vecs.append(mod.F[i].apply(vecs[parent]))
        comps.append(Component(mu, irr, vecs, len(columns)))
        columns.extend(vecs)
    if len(columns) != mod.dim:
        raise InconsistencyError(f"{mod.name}: components span {len(columns)} of {mod.dim} dimensions")
    P = Matrix.from_columns(mod.dim, columns)
    try:
        P_inv = P.inverse()
    except ArithmeticError as exc:
        raise InconsistencyError(f"{mod.name}: components are not independent") from exc
    dec = Decomposition(mod, comps, P, P_inv)
    mod._cache["iso"] = dec
    return dec


# --------------------------------------------------------------------------
# Kashiwara operators
# --------------------------------------------------------------------------


@dataclass(eq=False)
class StringData:
    vectors: list  # F_i^{(k)} u
    tags: list  # (string id, k, length)
    S: Matrix
    S_inv: Matrix


def i_strings(mod: ModuleRep, i: int) -> StringData:
    """Basis ``F_i^{(k)} u`` with ``u`` running over bases of ``ker E_i`` per weight."""
    key = ("strings", i)
    hit = mod._cache.get(key)
    if hit is not None:
        return hit
    d = mod.datum.d[i]
    vectors, tags = [], []
    sid = 0
    for mu, cols in sorted(mod.weight_spaces().items(), key=lambda kv: _height_key(mod.datum, kv[0])):
        n = mu[i]
        if n < 0:
            continue
        for u in nullspace(mod.E[i], cols):
            v = u
            for k in range(n + 1):
                if k:
                    v = vscale(quantum_integer(k, d).inverse(), mod.F[i].apply(v))
                vectors.append(v)
                tags.append((sid, k, n))
            sid += 1
    if len(vectors) != mod.dim:
        raise InconsistencyError(f"{mod.name}: {i}-strings span {len(vectors)} of {mod.dim}")
    S = Matrix.from_columns(mod.dim, vectors)
    data = StringData(vectors, tags, S, S.inverse())
    mod._cache[key] = data
    return data


def kashiwara(mod: ModuleRep, i: int, direction: str) -> Matrix:
    """Matrix of ``F~_i`` (``direction="F"``) or ``E~_i`` (``"E"``) in the module basis."""
    key = ("kash", i, direction)
    hit = mod._cache.get(key)
    if hit is not None:
        return hit
    st = i_strings(mod, i)
    index = {(s, k): pos for pos, (s, k, _) in enumerate(st.tags)}
    shifted = []
    for s, k, n in st.tags:
        tgt = k + 1 if direction == "F" else k - 1
        pos = index.get((s, tgt))
        shifted.append(st.vectors[pos] if pos is not None else {})
    m = Matrix.from_columns(mod.dim, shifted) @ st.S_inv
    mod._cache[key] = m
    return m


# --------------------------------------------------------------------------
# crystal lattices
# --------------------------------------------------------------------------


@dataclass(eq=False)
class CrystalLattice:
    """An ``A_oo``-lattice with a basis whose residues form a crystal basis.

    ``labels[k]`` names the crystal node of ``vectors[k]``; labels of tensor
    lattices are pairs of factor labels.
    """

    module: ModuleRep
    vectors: list
    labels: list
    factors: tuple = ()
    _cache: dict = field(default_factory=dict, repr=False)

    @property
    def matrix(self) -> Matrix:
        m = self._cache.get("L")
        if m is None:
            m = Matrix.from_columns(self.module.dim, self.vectors)
            self._cache["L"] = m
        return m

    @property
    def inverse(self) -> Matrix:
        m = self._cache.get("Linv")
        if m is None:
            m = self.matrix.inverse()
            self._cache["Linv"] = m
        return m

    def coordinates(self, vec: Vector) -> Vector:
        return self.inverse.apply(vec)

    def contains(self, vec: Vector) -> bool:
        return all(valuation(c) >= 0 for c in self.coordinates(vec).values())

    def operator_in_basis(self, op: Matrix, target: "CrystalLattice | None" = None) -> Matrix:
        """Matrix of ``op`` from this lattice basis to ``target``'s (default: self)."""
        target = self if target is None else target
        return target.inverse @ op @ self.matrix

    def index(self, label) -> int:
        idx = self._cache.get("index")
        if idx is None:
            idx = {lab: k for k, lab in enumerate(self.labels)}
            self._cache["index"] = idx
        return idx[label]


def reduce_mod_lattice(lat: CrystalLattice, vec: Vector) -> list:
    """Coordinates of ``vec`` in ``L / q^{-1} L`` (limits at q = oo)."""
    coords = lat.coordinates(vec)
    out = []
    for k in range(len(lat.vectors)):
        c = coords.get(k)
        if c is None:
            out.append(0)
            continue
        if valuation(c) < 0:
            raise LatticeViolation(f"coordinate {k} ({lat.labels[k]}) = {c} is not regular at q = oo", k, c)
        out.append(limit_at_infinity(c))
    return out


def _hermite_dvr(gens: list[Vector], rows: list[int]) -> list[Vector]:
    """Basis of the ``A_oo``-span of ``gens`` by valuation-pivoted column reduction."""
    rem = [dict(g) for g in gens if g]
    basis = []
    for r in rows:
        cand = [g for g in rem if r in g]
        if not cand:
            continue
        p = min(cand, key=lambda g: valuation(g[r]))
        rem = [g for g in rem if g is not p]
        inv = p[r].inverse()
        for g in rem:
            c = g.get(r)
            if c is not None:
                _axpy(g, -(c * inv), p)
        rem = [g for g in rem if g]
        basis.append(p)
    if rem:
        raise InconsistencyError("lattice reduction left unreduced generators")
    return basis


def _lattice_coords(basis: list[Vector], rows: list[int], vec: Vector) -> list:
    # basis is in echelon form along rows (pivot of basis[k] is the k-th used row)
    vec = dict(vec)
    coords = []
    for b in basis:
        piv = next(r for r in rows if r in b)
        c = vec.get(piv)
        if c is None:
            coords.append(None)
            continue
        f = c / b[piv]
        _axpy(vec, -f, b)
        coords.append(f)
    if vec:
        raise InconsistencyError("vector outside the span of the lattice")
    return coords


def crystal_lattice(mod: ModuleRep, generators: Sequence[tuple] | None = None) -> CrystalLattice:
    """Lattice generated by ``F~_i`` acting on ``generators`` (``[(label, vector)]``).

    For an irreducible module the default generator is the highest weight
    vector, labelled ``"b"``; node labels record the ``F~`` path, e.g.
    ``"f2f1b"`` for ``F~_2 F~_1 v_lambda``.
    """
    if generators is None:
        if not mod.is_irreducible:
            raise RepresentationError("generators are required for a reducible module")
        generators = [("b", highest_weight_vector(mod))]
    n = mod.datum.rank
    fk = [kashiwara(mod, i, "F") for i in range(n)]
    found: list[tuple[str, Vector]] = []
    seen: set = set()
    queue = list(generators)
    while queue:
        lab, v = queue.pop(0)
        key = frozenset(v.items())
        if not v or key in seen:
            continue
        seen.add(key)
        found.append((lab, v))
        for i in range(n):
            w = fk[i].apply(v)
            if w:
                queue.append((f"f{i + 1}{lab}", w))
    # group by weight; every closure vector is a weight vector
    by_weight: dict = {}
    for lab, v in found:
        mu = mod.weights[next(iter(v))]
        by_weight.setdefault(mu, []).append((lab, v))
    chosen: dict = {}
    for mu, items in by_weight.items():
        rows = mod.weight_space(mu)
        basis = _hermite_dvr([v for _, v in items], rows)
        if len(basis) != len(rows):
            raise InconsistencyError(f"lattice rank {len(basis)} at weight {mu}, expected {len(rows)}")
        residues = []
        picks = []
        for lab, v in items:
            coords = _lattice_coords(basis, rows, v)
            res = []
            for c in coords:
                if c is None:
                    res.append(0)
                elif valuation(c) < 0:
                    raise InconsistencyError("closure vector outside its own lattice")
                else:
                    res.append(limit_at_infinity(c))
            res = tuple(res)
            if any(res) and res not in residues:
                residues.append(res)
                picks.append((lab, v))
        if len(picks) != len(rows) or _rank_rational(residues) != len(rows):
            raise InconsistencyError(f"residues at weight {mu} do not form a basis")
        chosen[mu] = picks
    vectors, labels = [], []
    for mu in sorted(chosen, key=lambda m: _height_key(mod.datum, m)):
        for lab, v in chosen[mu]:
            labels.append(lab)
            vectors.append(v)
    if len(vectors) != mod.dim:
        raise InconsistencyError(f"lattice basis has {len(vectors)} vectors, module dim {mod.dim}")
    return CrystalLattice(mod, vectors, labels)


def _rank_rational(vectors: list[tuple]) -> int:
    ech = Echelon()
    for v in vectors:
        ech.add({k: QScalar(c) for k, c in enumerate(v) if c})
    return ech.rank


def tensor_lattice(a: CrystalLattice, b: CrystalLattice, mod: ModuleRep | None = None) -> CrystalLattice:
    """``L (x) M`` inside ``V (x) W`` with product basis vectors labelled by pairs."""
    mod = tensor(a.module, b.module) if mod is None else mod
    dw = b.module.dim
    vectors, labels = [], []
    for la, va in zip(a.labels, a.vectors):
        for lb, vb in zip(b.labels, b.vectors):
            vec = {}
            for i, x in va.items():
                for j, y in vb.items():
                    vec[i * dw + j] = x * y
            vectors.append(vec)
            labels.append((la, lb))
    return CrystalLattice(mod, vectors, labels, factors=(a, b))


# --------------------------------------------------------------------------
# relation checks
# --------------------------------------------------------------------------


def relation_defects(mod: ModuleRep) -> list[str]:
    """Names of defining relations that fail on ``mod`` (empty when all hold)."""
    datum = mod.datum
    n = datum.rank
    bad = []
    for i in range(n):
        Ki, Kinv = mod.K(i), mod.K(i, -1)
        qi = q_power(datum.d[i])
        for j in range(n):
            lhs = Ki @ mod.E[j] @ Kinv
            if lhs != mod.E[j].scale(qi ** datum.cartan[i][j]):
                bad.append(f"K{i + 1} E{j + 1} K{i + 1}^-1")
            lhs = Ki @ mod.F[j] @ Kinv
            if lhs != mod.F[j].scale(qi ** (-datum.cartan[i][j])):
                bad.append(f"K{i + 1} F{j + 1} K{i + 1}^-1")
            comm = mod.E[i] @ mod.F[j] - mod.F[j] @ mod.E[i]
            if i == j:
                expect = (Ki - Kinv).scale((qi - qi.inverse()).inverse())
            else:
                expect = Matrix(mod.dim, mod.dim)
            if comm != expect:
                bad.append(f"[E{i + 1}, F{j + 1}]")
            if i != j:
                m = 1 - datum.cartan[i][j]
                for gen in ("E", "F"):
                    x = mod.E if gen == "E" else mod.F
                    total = Matrix(mod.dim, mod.dim)
                    for r in range(m + 1):
                        term = divided_power(mod, gen, i, m - r) @ x[j] @ divided_power(mod, gen, i, r)
                        total = total + (term if r % 2 == 0 else -term)
                    if not total.is_zero():
                        bad.append(f"Serre {gen}{i + 1}{gen}{j + 1}")
    return bad
