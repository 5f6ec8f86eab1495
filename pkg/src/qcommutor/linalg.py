"""Sparse exact matrices over :class:`~qcommutor.scalars.QScalar`.

Every operator in the package is weight-graded, so matrices are stored as
``{row: {col: value}}`` with no explicit zeros.  Elimination routines pick
pivots among the nonzero entries of a row, which keeps fill-in inside the
weight blocks.
"""

from __future__ import annotations

from typing import Iterable

from .scalars import ONE, ZERO, QScalar, ScalarError

Vector = dict  # {index: QScalar}, sparse, no zeros


class LinalgError(ArithmeticError):
    """Singular or inconsistent linear systems."""


class Matrix:
    __slots__ = ("nrows", "ncols", "rows")

    def __init__(self, nrows: int, ncols: int, rows: dict | None = None):
        self.nrows = nrows
        self.ncols = ncols
        self.rows = {} if rows is None else {r: row for r, row in rows.items() if row}

    # constructors -----------------------------------------------------

    @classmethod
    def identity(cls, n: int) -> "Matrix":
        return cls(n, n, {i: {i: ONE} for i in range(n)})

    @classmethod
    def zeros(cls, nrows: int, ncols: int) -> "Matrix":
        return cls(nrows, ncols)

    @classmethod
    def diagonal(cls, values: Iterable[QScalar]) -> "Matrix":
        values = list(values)
        return cls(len(values), len(values), {i: {i: v} for i, v in enumerate(values) if v})

    @classmethod
    def from_columns(cls, nrows: int, columns: list[Vector]) -> "Matrix":
        rows: dict = {}
        for j, col in enumerate(columns):
            for i, v in col.items():
                if v:
                    rows.setdefault(i, {})[j] = v
        return cls(nrows, len(columns), rows)

    @classmethod
    def from_dense(cls, data) -> "Matrix":
        data = [list(r) for r in data]
        nrows = len(data)
        ncols = len(data[0]) if data else 0
        rows = {}
        for i, r in enumerate(data):
            row = {j: QScalar(v) for j, v in enumerate(r) if v}
            if row:
                rows[i] = row
        return cls(nrows, ncols, rows)

    # access -----------------------------------------------------------

    @property
    def shape(self) -> tuple[int, int]:
        return (self.nrows, self.ncols)

    def __getitem__(self, key) -> QScalar:
        i, j = key
        return self.rows.get(i, {}).get(j, ZERO)

    def entries(self):
        for i in sorted(self.rows):
            row = self.rows[i]
            for j in sorted(row):
                yield i, j, row[j]

    def column(self, j: int) -> Vector:
        return {i: row[j] for i, row in self.rows.items() if j in row}

    def columns(self) -> list[Vector]:
        cols: list[Vector] = [{} for _ in range(self.ncols)]
        for i, row in self.rows.items():
            for j, v in row.items():
                cols[j][i] = v
        return cols

    def transpose(self) -> "Matrix":
        rows: dict = {}
        for i, row in self.rows.items():
            for j, v in row.items():
                rows.setdefault(j, {})[i] = v
        return Matrix(self.ncols, self.nrows, rows)

    def to_dense(self) -> list[list[QScalar]]:
        return [[self[i, j] for j in range(self.ncols)] for i in range(self.nrows)]

    def submatrix(self, rows: list[int], cols: list[int]) -> "Matrix":
        cpos = {c: k for k, c in enumerate(cols)}
        out = {}
        for a, r in enumerate(rows):
            row = self.rows.get(r)
            if not row:
                continue
            new = {cpos[c]: v for c, v in row.items() if c in cpos}
            if new:
                out[a] = new
        return Matrix(len(rows), len(cols), out)

    # arithmetic -------------------------------------------------------

    def __matmul__(self, other):
        if isinstance(other, dict):
            return self.apply(other)
        if self.ncols != other.nrows:
            raise ValueError(f"shape mismatch {self.shape} @ {other.shape}")
        orows = other.rows
        out = {}
        for i, row in self.rows.items():
            acc: dict = {}
            for k, a in row.items():
                brow = orows.get(k)
                if not brow:
                    continue
                for j, b in brow.items():
                    s = acc.get(j)
                    acc[j] = a * b if s is None else s + a * b
            acc = {j: v for j, v in acc.items() if v}
            if acc:
                out[i] = acc
        return Matrix(self.nrows, other.ncols, out)

    def apply(self, vec: Vector) -> Vector:
        out = {}
        for i, row in self.rows.items():
            s = None
            for k, a in row.items():
                b = vec.get(k)
                if b is not None:
                    s = a * b if s is None else s + a * b
            if s:
                out[i] = s
        return out

    def __add__(self, other: "Matrix") -> "Matrix":
        if self.shape != other.shape:
            raise ValueError("shape mismatch in addition")
        out = {i: dict(r) for i, r in self.rows.items()}
        for i, row in other.rows.items():
            tgt = out.setdefault(i, {})
            for j, v in row.items():
                s = tgt.get(j)
                s = v if s is None else s + v
                if s:
                    tgt[j] = s
                else:
                    tgt.pop(j, None)
        return Matrix(self.nrows, self.ncols, out)

    def __neg__(self) -> "Matrix":
        return Matrix(self.nrows, self.ncols,
                      {i: {j: -v for j, v in r.items()} for i, r in self.rows.items()})

    def __sub__(self, other: "Matrix") -> "Matrix":
        return self + (-other)

    def scale(self, c) -> "Matrix":
        c = QScalar(c)
        if not c:
            return Matrix(self.nrows, self.ncols)
        return Matrix(self.nrows, self.ncols,
                      {i: {j: c * v for j, v in r.items()} for i, r in self.rows.items()})

    def __rmul__(self, c) -> "Matrix":
        return self.scale(c)

    def kron(self, other: "Matrix") -> "Matrix":
        """Kronecker product; index ``(a, b)`` maps to ``a * other.dim + b``."""
        n2, m2 = other.nrows, other.ncols
        out: dict = {}
        for i1, r1 in self.rows.items():
            for i2, r2 in other.rows.items():
                row = {}
                for j1, a in r1.items():
                    for j2, b in r2.items():
                        row[j1 * m2 + j2] = a * b
                out[i1 * n2 + i2] = row
        return Matrix(self.nrows * n2, self.ncols * m2, out)

    def __eq__(self, other):
        if not isinstance(other, Matrix) or self.shape != other.shape:
            return False
        return self.rows == other.rows

    def __hash__(self):
        return hash((self.shape, tuple(self.entries())))

    def is_zero(self) -> bool:
        return not self.rows

    def is_identity(self) -> bool:
        return self.nrows == self.ncols and self == Matrix.identity(self.nrows)

    def first_difference(self, other: "Matrix"):
        """First ``(row, col, self_value, other_value)`` where the matrices differ."""
        for i in range(max(self.nrows, other.nrows)):
            a, b = self.rows.get(i, {}), other.rows.get(i, {})
            for j in sorted(set(a) | set(b)):
                if a.get(j, ZERO) != b.get(j, ZERO):
                    return (i, j, a.get(j, ZERO), b.get(j, ZERO))
        return None

    def map_entries(self, fn) -> "Matrix":
        return Matrix(self.nrows, self.ncols,
                      {i: {j: fn(v) for j, v in r.items() if fn(v)} for i, r in self.rows.items()})

    # elimination ------------------------------------------------------

    def inverse(self) -> "Matrix":
        if self.nrows != self.ncols:
            raise LinalgError("inverse of a non-square matrix")
        n = self.nrows
        work = {i: dict(self.rows.get(i, {})) for i in range(n)}
        aug = {i: {i: ONE} for i in range(n)}
        pivot_row_of_col = {}
        remaining = set(range(n))
        for col in _column_order(self):
            cand = [r for r in remaining if col in work[r]]
            if not cand:
                raise LinalgError("singular matrix")
            p = min(cand, key=lambda r: (len(work[r]), r))
            remaining.discard(p)
            inv = work[p][col].inverse()
            work[p] = {j: v * inv for j, v in work[p].items()}
            aug[p] = {j: v * inv for j, v in aug[p].items()}
            for r in range(n):
                if r != p and col in work[r]:
                    f = work[r][col]
                    _axpy(work[r], -f, work[p])
                    _axpy(aug[r], -f, aug[p])
            pivot_row_of_col[col] = p
        return Matrix(n, n, {col: aug[p] for col, p in pivot_row_of_col.items()})

    def solve(self, rhs: "Matrix") -> "Matrix":
        """Solve ``self @ X = rhs`` for invertible ``self``."""
        return self.inverse() @ rhs


def _column_order(m: Matrix) -> list[int]:
    counts = {j: 0 for j in range(m.ncols)}
    for row in m.rows.values():
        for j in row:
            counts[j] += 1
    return sorted(counts, key=lambda j: (counts[j], j))


def _axpy(target: dict, c: QScalar, src: dict) -> None:
    """``target += c * src`` in place on sparse dicts."""
    for j, v in src.items():
        s = target.get(j)
        s = c * v if s is None else s + c * v
        if s:
            target[j] = s
        else:
            target.pop(j, None)


# --------------------------------------------------------------------------
# vector helpers
# --------------------------------------------------------------------------


def vadd(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    _axpy(out, ONE, b)
    return out


def vscale(c, a: Vector) -> Vector:
    c = QScalar(c)
    if not c:
        return {}
    return {k: c * v for k, v in a.items()}


def vsub(a: Vector, b: Vector) -> Vector:
    out = dict(a)
    _axpy(out, -ONE, b)
    return out


def row_reduce(vectors: list[Vector]):
    """Incremental echelon form.

    Returns ``(basis_positions, coords)``: indices of the vectors that are
    independent of their predecessors, and for every input vector its
    coordinates in terms of the chosen independent ones.
    """
    reducer = Echelon()
    positions, coords = [], []
    for k, v in enumerate(vectors):
        c = reducer.add(v)
        if c is None:
            positions.append(k)
            coords.append({len(positions) - 1: ONE})
        else:
            coords.append(c)
    return positions, coords


class Echelon:
    """Incremental basis of a span, able to express new vectors in it.

    Each stored row keeps the reduced vector together with its expression in
    the original accepted vectors, so :meth:`add` returns coordinates with
    respect to the accepted vectors (``None`` when the vector is new).
    """

    def __init__(self):
        self.pivots: list[tuple[int, Vector, Vector]] = []  # (pivot index, reduced, combo)
        self.count = 0

    def reduce(self, v: Vector):
        v = dict(v)
        combo: Vector = {}
        for piv, red, comb in self.pivots:
            c = v.get(piv)
            if c is not None:
                _axpy(v, -c, red)
                _axpy(combo, c, comb)
        return v, combo

    def coordinates(self, v: Vector):
        """Coordinates of ``v`` in the accepted vectors, or ``None`` if outside the span."""
        rest, combo = self.reduce(v)
        return None if rest else combo

    def add(self, v: Vector):
        rest, combo = self.reduce(v)
        if not rest:
            return combo
        piv = min(rest)
        inv = rest[piv].inverse()
        rest = {k: x * inv for k, x in rest.items()}
        comb = {k: -x * inv for k, x in combo.items()}
        comb[self.count] = inv
        # keep rows fully reduced on the new pivot
        new_pivots = []
        for p, red, cmb in self.pivots:
            c = red.get(piv)
            if c is not None:
                red = dict(red)
                cmb = dict(cmb)
                _axpy(red, -c, rest)
                _axpy(cmb, -c, comb)
            new_pivots.append((p, red, cmb))
        new_pivots.append((piv, rest, comb))
        self.pivots = new_pivots
        self.count += 1
        return None

    @property
    def rank(self) -> int:
        return self.count


def nullspace(m: Matrix, cols: list[int] | None = None) -> list[Vector]:
    """Basis of ``{x supported on cols : m @ x = 0}`` (default: all columns)."""
    cols = list(range(m.ncols)) if cols is None else list(cols)
    # reduced row echelon form restricted to the given columns
    colset = set(cols)
    rows = [
        {j: v for j, v in row.items() if j in colset}
        for row in m.rows.values()
    ]
    rows = [r for r in rows if r]
    pivots: dict[int, dict] = {}
    for r in rows:
        r = dict(r)
        for pc, prow in pivots.items():
            c = r.get(pc)
            if c is not None:
                _axpy(r, -c, prow)
        if not r:
            continue
        pc = min(r, key=lambda j: cols.index(j))
        inv = r[pc].inverse()
        r = {j: v * inv for j, v in r.items()}
        for k, prow in pivots.items():
            c = prow.get(pc)
            if c is not None:
                _axpy(prow, -c, r)
        pivots[pc] = r
    free = [j for j in cols if j not in pivots]
    basis = []
    for fcol in free:
        vec = {fcol: ONE}
        for pc, prow in pivots.items():
            c = prow.get(fcol)
            if c is not None:
                vec[pc] = -c
        basis.append(vec)
    return basis


def rank(m: Matrix) -> int:
    ech = Echelon()
    for row in m.rows.values():
        ech.add(row)
    return ech.rank


__all__ = [
    "Matrix",
    "Vector",
    "LinalgError",
    "Echelon",
    "nullspace",
    "rank",
    "row_reduce",
    "vadd",
    "vsub",
    "vscale",
    "ScalarError",
]
