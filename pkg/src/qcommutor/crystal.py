"""Abstract crystals and their comparison with the q-commutor at q = oo.

Crystals here are finite: nodes are hashable labels (strings for crystals of
irreducibles, pairs for tensor products), ``e[i]`` and ``f[i]`` are partial
maps stored as dicts.  A missing key means the operator gives 0.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass, field
from typing import Hashable, Sequence

from .cartan import CartanDatum, Weight
from .linalg import Matrix
from .repn import CrystalLattice, LatticeViolation, ModuleRep, build_irreducible, crystal_lattice, \
    kashiwara, reduce_mod_lattice, tensor, tensor_lattice
from .report import VerificationReport
from .scalars import gauss, limit_at_infinity, valuation

Node = Hashable


class CrystalError(ValueError):
    pass


@dataclass(eq=False)
class AbstractCrystal:
    datum: CartanDatum
    nodes: list
    wt: dict
    e: list
    f: list
    factors: tuple = ()
    name: str = ""
    _cache: dict = field(default_factory=dict, repr=False)

    def __post_init__(self):
        if len(set(self.nodes)) != len(self.nodes):
            raise CrystalError("duplicate crystal nodes")

    def __len__(self) -> int:
        return len(self.nodes)

    def __contains__(self, b) -> bool:
        return b in self.wt

    def epsilon(self, i: int, b: Node) -> int:
        k = 0
        while b in self.e[i]:
            b = self.e[i][b]
            k += 1
        return k

    def phi(self, i: int, b: Node) -> int:
        k = 0
        while b in self.f[i]:
            b = self.f[i][b]
            k += 1
        return k

    def flatten(self, b: Node) -> tuple:
        """Leaves of a node of an iterated tensor product, left to right."""
        if not self.factors:
            return (b,)
        left, right = self.factors
        return left.flatten(b[0]) + right.flatten(b[1])

    def edges(self):
        for i, fi in enumerate(self.f):
            for b, c in fi.items():
                yield i, b, c

    def axiom_defects(self) -> list:
        """Violations of the seminormal crystal axioms."""
        datum = self.datum
        bad = []
        for i in range(datum.rank):
            alpha = datum.simple_root(i)
            for b, c in self.f[i].items():
                if self.e[i].get(c) != b:
                    bad.append(("e_i f_i", i, b))
                if self.wt[c] != datum.sub(self.wt[b], alpha):
                    bad.append(("wt f_i", i, b))
            for b, c in self.e[i].items():
                if self.f[i].get(c) != b:
                    bad.append(("f_i e_i", i, b))
            for b in self.nodes:
                if self.phi(i, b) - self.epsilon(i, b) != self.wt[b][i]:
                    bad.append(("phi - eps", i, b))
        return bad

    def same_structure(self, other: "AbstractCrystal") -> bool:
        """Identity on labels is a crystal isomorphism."""
        return (set(self.nodes) == set(other.nodes) and self.wt == other.wt
                and self.e == other.e and self.f == other.f)


def node_label(b: Node) -> str:
    if isinstance(b, tuple):
        return "⊗".join(node_label(x) for x in b)
    return str(b)


# --------------------------------------------------------------------------
# construction
# --------------------------------------------------------------------------


def _residue_basis_image(lat: CrystalLattice, vec) -> Node | None:
    res = reduce_mod_lattice(lat, vec)
    hits = [(k, c) for k, c in enumerate(res) if c != 0]
    if not hits:
        return None
    if len(hits) != 1 or hits[0][1] != 1:
        raise LatticeViolation(f"residue {[(lat.labels[k], c) for k, c in hits]} is not a basis element",
                               hits[0][0], hits[0][1])
    return lat.labels[hits[0][0]]


def from_lattice(lat: CrystalLattice) -> AbstractCrystal:
    """The crystal ``B`` of the residues of ``F~_i``, ``E~_i`` on a lattice basis."""
    mod = lat.module
    n = mod.datum.rank
    e = [dict() for _ in range(n)]
    f = [dict() for _ in range(n)]
    wt = {}
    for lab, vec in zip(lat.labels, lat.vectors):
        wt[lab] = mod.weights[next(iter(vec))]
        for i in range(n):
            for op, target in ((kashiwara(mod, i, "F"), f[i]), (kashiwara(mod, i, "E"), e[i])):
                img = op.apply(vec)
                if not img:
                    continue
                node = _residue_basis_image(lat, img)
                if node is not None:
                    target[lab] = node
    factors = ()
    if lat.factors:
        factors = tuple(from_lattice(x) for x in lat.factors)
    return AbstractCrystal(mod.datum, list(lat.labels), wt, e, f, factors=factors, name=mod.name)


def crystal_of(datum: CartanDatum, lam: Weight) -> AbstractCrystal:
    """``B_lambda`` read off the lattice of ``V_lambda``."""
    return from_lattice(crystal_lattice(build_irreducible(datum, tuple(lam))))


def tensor_crystals(a: AbstractCrystal, b: AbstractCrystal) -> AbstractCrystal:
    """``A (x) B`` with ``f_i`` acting on the left factor iff ``phi_i(a) > eps_i(b)``."""
    if a.datum != b.datum:
        raise CrystalError("tensor product of crystals over different data")
    datum = a.datum
    n = datum.rank
    nodes = [(x, y) for x in a.nodes for y in b.nodes]
    wt = {(x, y): datum.add(a.wt[x], b.wt[y]) for x, y in nodes}
    e = [dict() for _ in range(n)]
    f = [dict() for _ in range(n)]
    for i in range(n):
        phi_a = {x: a.phi(i, x) for x in a.nodes}
        eps_b = {y: b.epsilon(i, y) for y in b.nodes}
        for x, y in nodes:
            if phi_a[x] >= eps_b[y]:
                if x in a.e[i]:
                    e[i][(x, y)] = (a.e[i][x], y)
            elif y in b.e[i]:
                e[i][(x, y)] = (x, b.e[i][y])
            if phi_a[x] > eps_b[y]:
                if x in a.f[i]:
                    f[i][(x, y)] = (a.f[i][x], y)
            elif y in b.f[i]:
                f[i][(x, y)] = (x, b.f[i][y])
    return AbstractCrystal(datum, nodes, wt, e, f, factors=(a, b), name=f"{a.name}⊗{b.name}")


# --------------------------------------------------------------------------
# components and Schutzenberger involution
# --------------------------------------------------------------------------


@dataclass(eq=False)
class CrystalComponent:
    source: Node
    sink: Node
    nodes: list
    highest_weight: Weight


def components(c: AbstractCrystal) -> list[CrystalComponent]:
    hit = c._cache.get("components")
    if hit is not None:
        return hit
    adj: dict = {b: [] for b in c.nodes}
    for _, b, t in c.edges():
        adj[b].append(t)
        adj[t].append(b)
    order = {b: k for k, b in enumerate(c.nodes)}
    seen: set = set()
    out = []
    for start in c.nodes:
        if start in seen:
            continue
        comp = []
        queue = deque([start])
        seen.add(start)
        while queue:
            b = queue.popleft()
            comp.append(b)
            for t in adj[b]:
                if t not in seen:
                    seen.add(t)
                    queue.append(t)
        comp.sort(key=order.__getitem__)
        sources = [b for b in comp if not any(b in ei for ei in c.e)]
        sinks = [b for b in comp if not any(b in fi for fi in c.f)]
        if len(sources) != 1 or len(sinks) != 1:
            raise CrystalError(f"component of {node_label(start)} has {len(sources)} sources, {len(sinks)} sinks")
        out.append(CrystalComponent(sources[0], sinks[0], comp, c.wt[sources[0]]))
    c._cache["components"] = out
    return out


def component_of(c: AbstractCrystal) -> dict:
    hit = c._cache.get("component_of")
    if hit is None:
        hit = {b: comp for comp in components(c) for b in comp.nodes}
        c._cache["component_of"] = hit
    return hit


def schutzenberger(c: AbstractCrystal) -> dict:
    """``xi_B``: source to sink, then ``xi(f_i b) = e_th(i) xi(b)`` along every edge."""
    hit = c._cache.get("xi")
    if hit is not None:
        return hit
    datum = c.datum
    n = datum.rank
    xi: dict = {}
    for comp in components(c):
        xi[comp.source] = comp.sink
        queue = deque([comp.source])
        while queue:
            b = queue.popleft()
            for i in range(n):
                t = c.f[i].get(b)
                if t is None:
                    continue
                img = c.e[datum.theta(i)].get(xi[b])
                if img is None:
                    raise CrystalError(f"xi undefined at {node_label(t)}")
                old = xi.get(t)
                if old is None:
                    xi[t] = img
                    queue.append(t)
                elif old != img:
                    raise CrystalError(f"xi is inconsistent at {node_label(t)}")
    if len(xi) != len(c.nodes):
        raise CrystalError("xi is not defined on every node")
    c._cache["xi"] = xi
    return xi


def schutzenberger_defects(c: AbstractCrystal) -> list:
    datum = c.datum
    xi = schutzenberger(c)
    bad = []
    for b in c.nodes:
        if xi[xi[b]] != b:
            bad.append(("involution", b))
        if c.wt[xi[b]] != datum.w0(c.wt[b]):
            bad.append(("weight", b))
    for i in range(datum.rank):
        th = datum.theta(i)
        for b in c.nodes:
            lhs = c.e[i].get(b)
            rhs = c.f[th].get(xi[b])
            if (None if lhs is None else xi[lhs]) != rhs:
                bad.append(("xi e = f xi", i, b))
            lhs = c.f[i].get(b)
            rhs = c.e[th].get(xi[b])
            if (None if lhs is None else xi[lhs]) != rhs:
                bad.append(("xi f = e xi", i, b))
    return bad


# --------------------------------------------------------------------------
# crystal commutor
# --------------------------------------------------------------------------


def crystal_commutor(a: AbstractCrystal, b: AbstractCrystal, ab: AbstractCrystal | None = None,
                     ba: AbstractCrystal | None = None) -> dict:
    """``sigma_{A,B}(x (x) y) = xi_{B (x) A}(xi_B(y) (x) xi_A(x))``."""
    ab = tensor_crystals(a, b) if ab is None else ab
    ba = tensor_crystals(b, a) if ba is None else ba
    xa, xb, xba = schutzenberger(a), schutzenberger(b), schutzenberger(ba)
    return {(x, y): xba[(xb[y], xa[x])] for x, y in ab.nodes}


def crystal_commutor_inverse_form(a: AbstractCrystal, b: AbstractCrystal,
                                  ab: AbstractCrystal | None = None) -> dict:
    """``Flip (xi_A (x) xi_B)(xi_{A (x) B}(x (x) y))``."""
    ab = tensor_crystals(a, b) if ab is None else ab
    xa, xb, xab = schutzenberger(a), schutzenberger(b), schutzenberger(ab)
    out = {}
    for node in ab.nodes:
        x, y = xab[node]
        out[node] = (xb[y], xa[x])
    return out


def _compose(outer: dict, inner: dict) -> dict:
    return {k: outer[v] for k, v in inner.items()}


def _on_left(m: dict, nodes) -> dict:
    """``m (x) Id`` on nodes ``((x, y), z)``."""
    return {(xy, z): (m[xy], z) for xy, z in nodes}


def _on_right(m: dict, nodes) -> dict:
    """``Id (x) m`` on nodes ``(x, (y, z))``."""
    return {(x, yz): (x, m[yz]) for x, yz in nodes}


def crystal_cactus_sides(a: AbstractCrystal, b: AbstractCrystal, c: AbstractCrystal) -> tuple[dict, dict]:
    """Both composites ``A (x) B (x) C -> C (x) B (x) A``, keyed and valued by flattened nodes."""
    cb, ba = tensor_crystals(c, b), tensor_crystals(b, a)
    a_bc = tensor_crystals(a, tensor_crystals(b, c))
    ab_c = tensor_crystals(tensor_crystals(a, b), c)
    a_cb = tensor_crystals(a, cb)
    cb_a = tensor_crystals(cb, a)
    lhs = _compose(crystal_commutor(a, cb, a_cb, cb_a), _on_right(crystal_commutor(b, c), a_bc.nodes))
    ba_c = tensor_crystals(ba, c)
    c_ba = tensor_crystals(c, ba)
    rhs = _compose(crystal_commutor(ba, c, ba_c, c_ba), _on_left(crystal_commutor(a, b), ab_c.nodes))
    lhs_flat = {a_bc.flatten(k): cb_a.flatten(v) for k, v in lhs.items()}
    rhs_flat = {ab_c.flatten(k): c_ba.flatten(v) for k, v in rhs.items()}
    return lhs_flat, rhs_flat


def _inst(datum: CartanDatum, *weights) -> str:
    return f"{datum.name} " + " x ".join("(" + ",".join(map(str, w)) + ")" for w in weights)


def verify_crystal_coboundary(datum: CartanDatum, lam: Weight, mu: Weight, nu: Weight) -> VerificationReport:
    """Axioms, Schutzenberger properties, symmetry and cactus on ``B_lam (x) B_mu (x) B_nu``."""
    rep = VerificationReport()
    inst = _inst(datum, lam, mu, nu)
    a, b, c = (crystal_of(datum, x) for x in (lam, mu, nu))
    for x in (a, b, c, tensor_crystals(a, b), tensor_crystals(tensor_crystals(a, b), c)):
        bad = x.axiom_defects()
        rep.add("crystal_axioms", f"{inst} {x.name}", not bad, bad[:1] or None)
        try:
            bad = schutzenberger_defects(x)
            rep.add("schutzenberger", f"{inst} {x.name}", not bad, bad[:1] or None)
        except CrystalError as exc:
            rep.add("schutzenberger", f"{inst} {x.name}", False, exc)
    for x, y in ((a, b), (b, c), (a, c)):
        s = crystal_commutor(x, y)
        back = crystal_commutor(y, x)
        rep.add("crystal_commutor_inverse", f"{inst} {x.name},{y.name}",
                s == crystal_commutor_inverse_form(x, y))
        rep.add("crystal_symmetry", f"{inst} {x.name},{y.name}",
                all(back[s[k]] == k for k in s))
    lhs, rhs = crystal_cactus_sides(a, b, c)
    diff = next((k for k in lhs if lhs[k] != rhs.get(k)), None)
    rep.add("crystal_cactus", inst, diff is None,
            None if diff is None else f"{node_label(diff)}: {node_label(lhs[diff])} vs {node_label(rhs[diff])}")
    return rep


# --------------------------------------------------------------------------
# comparison with the q-commutor
# --------------------------------------------------------------------------


@dataclass
class ResidueMap:
    """Entries at q = oo of an operator written in lattice bases."""

    regular: bool
    columns: dict  # source label -> {target label: limit}
    witness: tuple | None = None

    def monomial_image(self, src) -> tuple | None:
        """``(target, coefficient)`` if the column has exactly one nonzero entry."""
        col = self.columns.get(src, {})
        if len(col) != 1:
            return None
        return next(iter(col.items()))


def residue_map(op: Matrix, src: CrystalLattice, dst: CrystalLattice | None = None) -> ResidueMap:
    dst = src if dst is None else dst
    m = src.operator_in_basis(op, dst)
    cols: dict = {lab: {} for lab in src.labels}
    for r, c, v in m.entries():
        if valuation(v) < 0:
            return ResidueMap(False, {}, (dst.labels[r], src.labels[c], str(v)))
        lim = limit_at_infinity(v)
        if lim != 0:
            cols[src.labels[c]][dst.labels[r]] = lim
    return ResidueMap(True, cols)


def _preserves_lattice(op: Matrix, src: CrystalLattice, dst: CrystalLattice) -> tuple[bool, ResidueMap]:
    fwd = residue_map(op, src, dst)
    back = residue_map(op.inverse(), dst, src)
    return fwd.regular and back.regular, fwd


def _sign(datum: CartanDatum, weight: Weight) -> int:
    return -1 if datum.rho_vee_pairing(weight) % 2 else 1


def _i_power(k):
    return (gauss(1), gauss(0, 1), gauss(-1), gauss(0, -1))[int(k) % 4]


def check_xi_on_lattice(mod: ModuleRep, lat: CrystalLattice, cry: AbstractCrystal,
                        inst: str) -> VerificationReport:
    """``xi(L) = L`` with residue ``xi_B`` and ``xi'`` with residue ``i^<lambda, 2 rho^vee> xi_B``."""
    from .rmatrix import xi_operator

    rep = VerificationReport()
    datum = mod.datum
    xi_b = schutzenberger(cry)
    comp = component_of(cry)
    ok, res = _preserves_lattice(xi_operator(mod), lat, lat)
    good = ok and all(res.monomial_image(b) == (xi_b[b], 1) for b in cry.nodes)
    rep.add("xi_lattice", inst, good, None if ok else res.witness)
    ok, res = _preserves_lattice(xi_operator(mod, "xi_prime"), lat, lat)
    bad = None
    if ok:
        for b in cry.nodes:
            lam = comp[b].highest_weight
            want = _i_power(datum.rho_vee_pairing(tuple(2 * x for x in lam)))
            got = res.monomial_image(b)
            if got is None or got[0] != xi_b[b] or got[1] != want:
                bad = (node_label(b), got)
                break
    else:
        bad = res.witness
    rep.add("xi_prime_residue", inst, ok and bad is None, bad)
    return rep


def compare_main2(v: ModuleRep, w: ModuleRep, lv: CrystalLattice | None = None,
                  lw: CrystalLattice | None = None) -> VerificationReport:
    """Residue of ``sigma^dr`` in lattice bases against the signed crystal commutor."""
    from .rmatrix import commutor_matrix

    datum = v.datum
    inst = f"{datum.name} {v.name} x {w.name}"
    rep = VerificationReport()
    lv = crystal_lattice(v) if lv is None else lv
    lw = crystal_lattice(w) if lw is None else lw
    lvw, lwv = tensor_lattice(lv, lw), tensor_lattice(lw, lv)
    a, b = from_lattice(lv), from_lattice(lw)
    ab, ba = tensor_crystals(a, b), tensor_crystals(b, a)
    ab_lat = from_lattice(lvw)
    rep.add("crystal_tensor", inst, ab_lat.same_structure(ab))

    for mod, lat, cry, tag in ((v, lv, a, v.name), (w, lw, b, w.name), (tensor(v, w), lvw, ab, f"{v.name}⊗{w.name}")):
        rep.extend(check_xi_on_lattice(mod, lat, cry, f"{datum.name} {tag}"))

    sigma = commutor_matrix(v, w, "dr")
    ok, res = _preserves_lattice(sigma, lvw, lwv)
    rep.add("main2_lattice", inst, ok, None if ok else res.witness)
    if not ok:
        rep.add("main2_residue", inst, False, "sigma^dr does not preserve the lattices")
        return rep
    crys = crystal_commutor(a, b, ab, ba)
    comp_a, comp_b, comp_ab = component_of(a), component_of(b), component_of(ab)
    bad = None
    targets = set()
    for node in ab.nodes:
        x, y = node
        lam, mu, nu = comp_a[x].highest_weight, comp_b[y].highest_weight, comp_ab[node].highest_weight
        sign = _sign(datum, datum.sub(datum.add(lam, mu), nu))
        got = res.monomial_image(node)
        targets.add(None if got is None else got[0])
        if got is None or got[0] != crys[node] or got[1] != sign:
            bad = (node_label(node), None if got is None else (node_label(got[0]), str(got[1])),
                   node_label(crys[node]), sign)
            break
    if bad is None and len(targets) != len(ab.nodes):
        bad = "residue is not a permutation"
    rep.add("main2_residue", inst, bad is None, bad)
    return rep


def residue_signs(v: ModuleRep, w: ModuleRep) -> dict:
    """Node of ``A (x) B`` -> coefficient of the residue of ``sigma^dr`` (``None`` if not monomial)."""
    from .rmatrix import commutor_matrix

    lv, lw = crystal_lattice(v), crystal_lattice(w)
    res = residue_map(commutor_matrix(v, w, "dr"), tensor_lattice(lv, lw), tensor_lattice(lw, lv))
    if not res.regular:
        raise LatticeViolation(f"sigma^dr entry {res.witness} is not regular at q = oo")
    out = {}
    for lab in res.columns:
        got = res.monomial_image(lab)
        out[lab] = None if got is None else got[1]
    return out


__all__ = [
    "AbstractCrystal",
    "CrystalComponent",
    "CrystalError",
    "ResidueMap",
    "node_label",
    "from_lattice",
    "crystal_of",
    "tensor_crystals",
    "components",
    "component_of",
    "schutzenberger",
    "schutzenberger_defects",
    "crystal_commutor",
    "crystal_commutor_inverse_form",
    "crystal_cactus_sides",
    "verify_crystal_coboundary",
    "residue_map",
    "check_xi_on_lattice",
    "compare_main2",
    "residue_signs",
]
