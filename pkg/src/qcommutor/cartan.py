"""Cartan data, weights and Weyl group combinatorics for finite types.

Weights are integer (or rational) tuples in the fundamental-weight basis, so
coordinate ``j`` of ``mu`` is the pairing with the simple coroot
``alpha_j^vee``.  Root-basis coordinates are recovered by solving against the
Cartan matrix.  Simple reflections act by ``s_i(mu) = mu - mu_i * alpha_i``.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction
from functools import cached_property
from typing import Sequence

Weight = tuple  # fundamental-weight coordinates


class CartanError(ValueError):
    pass


def _mat_inverse(a: list[list[Fraction]]) -> list[list[Fraction]]:
    n = len(a)
    m = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)]
         for i, row in enumerate(a)]
    for c in range(n):
        p = next((r for r in range(c, n) if m[r][c] != 0), None)
        if p is None:
            raise CartanError("Cartan matrix is singular")
        m[c], m[p] = m[p], m[c]
        inv = 1 / m[c][c]
        m[c] = [x * inv for x in m[c]]
        for r in range(n):
            if r != c and m[r][c] != 0:
                f = m[r][c]
                m[r] = [x - f * y for x, y in zip(m[r], m[c])]
    return [row[n:] for row in m]


def _symmetrizer(a: list[list[int]]) -> tuple[int, ...]:
    n = len(a)
    d: list[Fraction | None] = [None] * n
    for start in range(n):
        if d[start] is not None:
            continue
        d[start] = Fraction(1)
        stack = [start]
        while stack:
            i = stack.pop()
            for j in range(n):
                if i != j and a[i][j] != 0:
                    if a[j][i] == 0:
                        raise CartanError("not symmetrizable")
                    dj = d[i] * a[i][j] / a[j][i]
                    if d[j] is None:
                        d[j] = dj
                        stack.append(j)
                    elif d[j] != dj:
                        raise CartanError("not symmetrizable")
    # scale each connected piece so the smallest entry is 1 and all are integers
    lcm = 1
    for x in d:
        lcm = lcm * x.denominator // _gcd(lcm, x.denominator)
    vals = [x * lcm for x in d]
    g = 0
    for v in vals:
        g = _gcd(g, int(v))
    return tuple(int(v) // g for v in vals)


def _gcd(a: int, b: int) -> int:
    while b:
        a, b = b, a % b
    return abs(a)


@dataclass(frozen=True)
class CartanDatum:
    """A finite-type Cartan matrix ``A = (a_ij)`` with symmetrizers ``d``.

    ``a_ij = <alpha_i^vee, alpha_j>`` and ``d_i a_ij = d_j a_ji``; ``d_i`` is
    half the squared length of ``alpha_i`` with short roots of length 2.
    """

    cartan: tuple
    d: tuple
    name: str = ""

    def __post_init__(self):
        a = [list(r) for r in self.cartan]
        n = len(a)
        if any(len(r) != n for r in a):
            raise CartanError("Cartan matrix must be square")
        for i in range(n):
            if a[i][i] != 2:
                raise CartanError("diagonal entries must be 2")
            for j in range(n):
                if i != j and (a[i][j] > 0 or (a[i][j] == 0) != (a[j][i] == 0)):
                    raise CartanError("off-diagonal entries must be nonpositive and symmetric in support")
                if self.d[i] * a[i][j] != self.d[j] * a[j][i]:
                    raise CartanError("d does not symmetrize A")
        _mat_inverse(a)
        if len(self.positive_roots) > 200:
            raise CartanError("not of finite type")

    # basic data ---------------------------------------------------------

    @property
    def rank(self) -> int:
        return len(self.cartan)

    @cached_property
    def cartan_inverse(self) -> tuple:
        return tuple(tuple(r) for r in _mat_inverse([list(r) for r in self.cartan]))

    @cached_property
    def b_matrix(self) -> tuple:
        """``B = (d_j^{-1} a_ij)``, the Gram matrix of the simple coroots."""
        n = self.rank
        return tuple(tuple(Fraction(self.cartan[i][j], self.d[j]) for j in range(n))
                     for i in range(n))

    @cached_property
    def b_inverse(self) -> tuple:
        return tuple(tuple(r) for r in _mat_inverse([list(r) for r in self.b_matrix]))

    def simple_root(self, i: int) -> Weight:
        """``alpha_i`` in fundamental coordinates (column ``i`` of ``A``)."""
        return tuple(self.cartan[j][i] for j in range(self.rank))

    def fundamental(self, i: int) -> Weight:
        return tuple(int(j == i) for j in range(self.rank))

    @property
    def rho(self) -> Weight:
        return (1,) * self.rank

    @property
    def zero(self) -> Weight:
        return (0,) * self.rank

    # coordinates and pairings ------------------------------------------

    def root_coords(self, mu: Weight) -> tuple:
        """Coordinates of ``mu`` in the simple-root basis (``A^{-1} mu``)."""
        ainv = self.cartan_inverse
        n = self.rank
        return tuple(sum(ainv[i][j] * mu[j] for j in range(n)) for i in range(n))

    def from_root_coords(self, c: Sequence) -> Weight:
        n = self.rank
        return tuple(sum(self.cartan[j][i] * c[i] for i in range(n)) for j in range(n))

    def in_root_lattice(self, mu: Weight) -> bool:
        return all(Fraction(x).denominator == 1 for x in self.root_coords(mu))

    def rho_vee_pairing(self, mu: Weight) -> Fraction:
        """``<mu, rho^vee>``: the sum of root coordinates of ``mu``."""
        return Fraction(sum(self.root_coords(mu)))

    def bilinear_form(self, mu: Weight, nu: Weight) -> Fraction:
        """``(mu, nu)`` normalized by ``(alpha_i, alpha_i) = 2 d_i``."""
        c = self.root_coords(mu)
        return Fraction(sum(c[i] * self.d[i] * nu[i] for i in range(self.rank)))

    def is_dominant(self, mu: Weight) -> bool:
        return all(x >= 0 for x in mu)

    def add(self, mu: Weight, nu: Weight) -> Weight:
        return tuple(a + b for a, b in zip(mu, nu))

    def sub(self, mu: Weight, nu: Weight) -> Weight:
        return tuple(a - b for a, b in zip(mu, nu))

    # Weyl group ----------------------------------------------------------

    def reflect(self, i: int, mu: Weight) -> Weight:
        m = mu[i]
        if not m:
            return tuple(mu)
        return tuple(x - m * self.cartan[j][i] for j, x in enumerate(mu))

    def act_word(self, word: Sequence[int], mu: Weight) -> Weight:
        """``s_{w_1} s_{w_2} ... s_{w_k} (mu)``, applied right to left."""
        for i in reversed(word):
            mu = self.reflect(i, mu)
        return tuple(mu)

    def is_positive_root(self, beta: Weight) -> bool:
        return all(x >= 0 for x in self.root_coords(beta))

    @cached_property
    def positive_roots(self) -> tuple:
        """Positive roots in fundamental coordinates, found by orbit enumeration."""
        simple = [self.simple_root(i) for i in range(self.rank)]
        seen = set(simple)
        frontier = list(simple)
        while frontier:
            new = []
            for beta in frontier:
                for i in range(self.rank):
                    gamma = self.reflect(i, beta)
                    if gamma not in seen and self.is_positive_root(gamma):
                        seen.add(gamma)
                        new.append(gamma)
            frontier = new
            if len(seen) > 200:
                break
        return tuple(sorted(seen, key=lambda b: (sum(self.root_coords(b)), self.root_coords(b))))

    def length(self, word: Sequence[int]) -> int:
        """Length of the Weyl element represented by ``word`` (inversion count)."""
        return sum(1 for beta in self.positive_roots
                   if not self.is_positive_root(self.act_word(list(reversed(word)), beta)))

    def is_reduced(self, word: Sequence[int]) -> bool:
        return self.length(word) == len(word)

    @cached_property
    def longest_word(self) -> tuple:
        """Reduced word for ``w_0``, descending from ``rho`` with smallest-index ties."""
        mu = self.rho
        target = tuple(-x for x in mu)
        word = []
        while mu != target:
            i = next(j for j, x in enumerate(mu) if x > 0)
            mu = self.reflect(i, mu)
            word.append(i)
        return tuple(word)

    def w0(self, mu: Weight) -> Weight:
        return self.act_word(self.longest_word, mu)

    def theta(self, i: int) -> int:
        """Index with ``w_0(alpha_i) = -alpha_theta(i)``."""
        img = tuple(-x for x in self.w0(self.simple_root(i)))
        for j in range(self.rank):
            if self.simple_root(j) == img:
                return j
        raise CartanError("w0 does not map simple roots to negative simple roots")

    def weyl_dimension(self, lam: Weight) -> int:
        """``prod_{alpha>0} (lam+rho, alpha) / (rho, alpha)``."""
        lr = self.add(lam, self.rho)
        num = Fraction(1)
        for beta in self.positive_roots:
            num *= self.bilinear_form(lr, beta) / self.bilinear_form(self.rho, beta)
        assert num.denominator == 1
        return int(num)

    def weyl_elements(self) -> list[tuple]:
        """One reduced word for every Weyl group element (breadth first)."""
        # elements identified by their image of rho, which is regular
        seen = {self.rho: ()}
        frontier = [(self.rho, ())]
        while frontier:
            new = []
            for mu, word in frontier:
                for i in range(self.rank):
                    if mu[i] > 0:
                        nu = self.reflect(i, mu)
                        if nu not in seen:
                            seen[nu] = (i,) + word
                            new.append((nu, (i,) + word))
            frontier = new
        return list(seen.values())

    def reduced_words(self, word: Sequence[int]) -> list[tuple]:
        """All reduced words of the element represented by the reduced ``word``."""
        target = self.act_word(word, self.rho)
        n = len(word)
        out = []

        def extend(prefix, mu):
            # prefix is read left to right; mu = prefix^{-1}(target)
            if len(prefix) == n:
                if mu == self.rho:
                    out.append(tuple(prefix))
                return
            for i in range(self.rank):
                # left multiply by s_i shortens iff <target-side weight, alpha_i^vee> < 0
                if mu[i] < 0:
                    extend(prefix + [i], self.reflect(i, mu))

        extend([], target)
        return out

    def __str__(self):
        return self.name or f"Cartan{self.cartan}"


# --------------------------------------------------------------------------
# named types
# --------------------------------------------------------------------------


def _type_matrix(letter: str, n: int) -> list[list[int]]:
    a = [[2 if i == j else 0 for j in range(n)] for i in range(n)]

    def link(i, j, aij=-1, aji=-1):
        a[i][j] = aij
        a[j][i] = aji

    if letter == "A":
        if n < 1:
            raise CartanError("A_n needs n >= 1")
        for i in range(n - 1):
            link(i, i + 1)
    elif letter == "B":
        if n < 2:
            raise CartanError("B_n needs n >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -1, -2)
    elif letter == "C":
        if n < 2:
            raise CartanError("C_n needs n >= 2")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 2, n - 1, -2, -1)
    elif letter == "D":
        if n < 4:
            raise CartanError("D_n needs n >= 4")
        for i in range(n - 2):
            link(i, i + 1)
        link(n - 3, n - 1)
    elif letter == "G":
        if n != 2:
            raise CartanError("G_2 only")
        link(0, 1, -1, -3)
    elif letter == "F":
        if n != 4:
            raise CartanError("F_4 only")
        link(0, 1)
        link(1, 2, -2, -1)
        link(2, 3)
    elif letter == "E":
        if n not in (6, 7, 8):
            raise CartanError("E_6, E_7, E_8 only")
        # Bourbaki labelling: 1-3-4-5-6-(7-8), 2 attached to 4
        link(0, 2)
        link(1, 3)
        link(2, 3)
        for i in range(3, n - 1):
            link(i, i + 1)
    else:
        raise CartanError(f"unknown Cartan type {letter!r}")
    return a


def build_datum(spec=None, cartan=None, d=None) -> CartanDatum:
    """Build a datum from ``"A2"``-style text or from an explicit matrix.

    >>> build_datum("B2").d
    (2, 1)
    """
    if spec is not None:
        m = re.fullmatch(r"\s*([A-Ga-g])\s*_?\s*(\d+)\s*", str(spec))
        if not m:
            raise CartanError(f"cannot parse Cartan type {spec!r}")
        letter, n = m.group(1).upper(), int(m.group(2))
        a = _type_matrix(letter, n)
        return CartanDatum(tuple(map(tuple, a)), _symmetrizer(a), f"{letter}{n}")
    if cartan is None:
        raise CartanError("either a type name or a Cartan matrix is required")
    a = [list(map(int, r)) for r in cartan]
    d = _symmetrizer(a) if d is None else tuple(int(x) for x in d)
    return CartanDatum(tuple(map(tuple, a)), d, "custom")


def parse_weight(datum: CartanDatum, text: str) -> Weight:
    """``"1,0"`` style fundamental coordinates."""
    parts = [p for p in re.split(r"[,\s]+", str(text).strip()) if p]
    if len(parts) != datum.rank:
        raise CartanError(f"weight {text!r} needs {datum.rank} coordinates")
    return tuple(int(p) for p in parts)
