"""Exact scalars: rational functions in q with rational exponents over Q(i).

A scalar is stored in the variable ``t = q^(1/D)`` as a quotient ``num / den`` of
Laurent polynomials with Gaussian-rational coefficients.  Coefficients are
``gmpy2.mpq`` when real and :class:`GaussRat` otherwise, so the common
real-coefficient computations never pay for complex arithmetic.

Canonical form (so that ``==`` is syntactic):

* ``den`` is an ordinary polynomial in ``t`` with nonzero constant term and
  leading coefficient 1;
* ``gcd(num, den) = 1``;
* ``D`` is the smallest denominator compatible with every exponent.

The valuation at ``q = oo`` is ``deg(den) - deg(num)`` measured in units of
``1/D``; elements with nonnegative valuation form the local ring used for
crystal lattices.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction
from typing import Union

from gmpy2 import mpq

__all__ = [
    "GaussRat",
    "QLaurent",
    "QScalar",
    "ScalarError",
    "gauss",
    "q_power",
    "I",
    "ONE",
    "ZERO",
    "quantum_integer",
    "quantum_divided_factor",
    "valuation",
    "regular_at_infinity",
    "limit_at_infinity",
    "parse_scalar",
    "render",
]


class ScalarError(ArithmeticError):
    """Raised for division by zero and for limits of non-regular elements."""


# --------------------------------------------------------------------------
# Gaussian rationals
# --------------------------------------------------------------------------


class GaussRat:
    """A Gaussian rational ``re + im*i`` with ``im != 0``.

    Real values are represented by plain ``mpq``; use :func:`gauss` to build
    values, which demotes to ``mpq`` whenever the imaginary part vanishes.
    """

    __slots__ = ("re", "im")

    def __init__(self, re_, im):
        self.re = mpq(re_)
        self.im = mpq(im)

    def __add__(self, other):
        if isinstance(other, GaussRat):
            return gauss(self.re + other.re, self.im + other.im)
        return GaussRat(self.re + other, self.im)

    __radd__ = __add__

    def __sub__(self, other):
        if isinstance(other, GaussRat):
            return gauss(self.re - other.re, self.im - other.im)
        return GaussRat(self.re - other, self.im)

    def __rsub__(self, other):
        return GaussRat(other - self.re, -self.im)

    def __mul__(self, other):
        if isinstance(other, GaussRat):
            return gauss(self.re * other.re - self.im * other.im,
                         self.re * other.im + self.im * other.re)
        if not other:
            return mpq(0)
        return GaussRat(self.re * other, self.im * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, GaussRat):
            n = other.re * other.re + other.im * other.im
            return gauss((self.re * other.re + self.im * other.im) / n,
                         (self.im * other.re - self.re * other.im) / n)
        return GaussRat(self.re / other, self.im / other)

    def __rtruediv__(self, other):
        n = self.re * self.re + self.im * self.im
        return gauss(other * self.re / n, -other * self.im / n)

    def __neg__(self):
        return GaussRat(-self.re, -self.im)

    def __pos__(self):
        return self

    def __bool__(self):
        return True

    def __eq__(self, other):
        if isinstance(other, GaussRat):
            return self.re == other.re and self.im == other.im
        return False

    def __hash__(self):
        return hash((self.re, self.im))

    def __repr__(self):
        return f"GaussRat({self.re}, {self.im})"


def gauss(re_, im=0):
    """Build a Gaussian rational, returning a plain ``mpq`` when it is real."""
    if im:
        return GaussRat(re_, im)
    return mpq(re_)


def _re(c):
    return c.re if isinstance(c, GaussRat) else c


def _im(c):
    return c.im if isinstance(c, GaussRat) else mpq(0)


# --------------------------------------------------------------------------
# polynomial kernels on {exponent: coefficient} dicts
# --------------------------------------------------------------------------


def _padd(a, b):
    out = dict(a)
    for k, v in b.items():
        s = out.get(k)
        if s is None:
            out[k] = v
        else:
            s = s + v
            if s:
                out[k] = s
            else:
                del out[k]
    return out


def _pneg(a):
    return {k: -v for k, v in a.items()}


def _pmul(a, b):
    if len(a) == 1:
        (ka, va), = a.items()
        return {ka + k: va * v for k, v in b.items()}
    if len(b) == 1:
        (kb, vb), = b.items()
        return {kb + k: vb * v for k, v in a.items()}
    out = {}
    for ka, va in a.items():
        for kb, vb in b.items():
            k = ka + kb
            s = out.get(k)
            out[k] = va * vb if s is None else s + va * vb
    return {k: v for k, v in out.items() if v}


def _pscale(a, c, shift=0):
    return {k + shift: v * c for k, v in a.items()}


def _to_dense(a):
    # assumes min exponent 0
    lst = [mpq(0)] * (max(a) + 1)
    for k, v in a.items():
        lst[k] = v
    return lst


def _dense_rem(a, b):
    a = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    while len(a) - 1 >= db and a:
        c = a[-1] * inv
        if c:
            off = len(a) - 1 - db
            for j in range(db + 1):
                a[off + j] = a[off + j] - c * b[j]
        a.pop()
        while a and not a[-1]:
            a.pop()
    return a


def _dense_quo(a, b):
    a = list(a)
    db = len(b) - 1
    inv = 1 / b[-1]
    out = [mpq(0)] * max(len(a) - db, 0)
    while len(a) - 1 >= db and a:
        c = a[-1] * inv
        off = len(a) - 1 - db
        out[off] = c
        if c:
            for j in range(db + 1):
                a[off + j] = a[off + j] - c * b[j]
        a.pop()
    return out


def _dense_gcd(a, b):
    while b:
        a, b = b, _dense_rem(a, b)
    inv = 1 / a[-1]
    return [c * inv for c in a]


def _from_dense(lst, shift=0):
    return {k + shift: v for k, v in enumerate(lst) if v}


# --------------------------------------------------------------------------
# QLaurent and QScalar
# --------------------------------------------------------------------------


class QLaurent:
    """A Laurent polynomial in ``q`` with rational exponents.

    ``terms`` maps an integer ``k`` to the coefficient of ``q^(k/D)``.
    """

    __slots__ = ("terms", "D")

    def __init__(self, terms: dict, D: int = 1):
        self.terms = {k: v for k, v in terms.items() if v}
        self.D = D

    def exponents(self) -> list[Fraction]:
        return sorted((Fraction(k, self.D) for k in self.terms), reverse=True)

    def coefficient(self, exponent) -> object:
        e = Fraction(exponent) * self.D
        if e.denominator != 1:
            return mpq(0)
        return self.terms.get(int(e), mpq(0))

    def __eq__(self, other):
        return isinstance(other, QLaurent) and self.to_scalar() == other.to_scalar()

    def __hash__(self):
        return hash(self.to_scalar())

    def to_scalar(self) -> "QScalar":
        return QScalar._make(dict(self.terms), {0: mpq(1)}, self.D)

    def __str__(self):
        return _render_laurent(self.terms, self.D)

    __repr__ = __str__


Number = Union[int, Fraction, "QScalar"]


class QScalar:
    """An element of Q(i)(q^(1/D)) in canonical form.  Immutable."""

    __slots__ = ("num", "den", "D", "_hash")

    def __init__(self, value=0):
        if isinstance(value, QScalar):
            self.num, self.den, self.D = value.num, value.den, value.D
        else:
            c = _coeff(value)
            self.num = {0: c} if c else {}
            self.den = {0: mpq(1)}
            self.D = 1
        self._hash = None

    # construction -----------------------------------------------------

    @classmethod
    def _raw(cls, num, den, D):
        obj = object.__new__(cls)
        obj.num = num
        obj.den = den
        obj.D = D
        obj._hash = None
        return obj

    @classmethod
    def _make(cls, num, den, D):
        """Normalize ``num/den`` (Laurent polynomials in ``t = q^(1/D)``)."""
        num = {k: v for k, v in num.items() if v}
        if not num:
            return cls._raw({}, {0: mpq(1)}, 1)
        den = {k: v for k, v in den.items() if v}
        if not den:
            raise ScalarError("division by zero")
        a = min(num)
        b = min(den)
        shift = a - b
        if len(den) == 1:
            inv = 1 / den[b]
            num = {k - b: v * inv for k, v in num.items()}
            den = {0: mpq(1)}
        else:
            nd = _to_dense({k - a: v for k, v in num.items()})
            dd = _to_dense({k - b: v for k, v in den.items()})
            if len(nd) > 1:
                g = _dense_gcd(dd, nd)
                if len(g) > 1:
                    nd = _dense_quo(nd, g)
                    dd = _dense_quo(dd, g)
            inv = 1 / dd[-1]
            num = {k + shift: v * inv for k, v in enumerate(nd) if v}
            den = {k: v * inv for k, v in enumerate(dd) if v}
        g = D
        for k in num:
            if g == 1:
                break
            g = math.gcd(g, k)
        for k in den:
            if g == 1:
                break
            g = math.gcd(g, k)
        if g > 1:
            num = {k // g: v for k, v in num.items()}
            den = {k // g: v for k, v in den.items()}
            D //= g
        return cls._raw(num, den, D)

    def _lift(self, D):
        """Return (num, den) with exponents rescaled to denominator ``D``."""
        if D == self.D:
            return self.num, self.den
        m = D // self.D
        return ({k * m: v for k, v in self.num.items()},
                {k * m: v for k, v in self.den.items()})

    # predicates -------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.num

    def __bool__(self):
        return bool(self.num)

    def is_one(self) -> bool:
        return self.num == {0: 1} and len(self.den) == 1

    def is_laurent(self) -> bool:
        return len(self.den) == 1

    def is_real(self) -> bool:
        return not any(isinstance(v, GaussRat) for v in self.num.values()) and \
            not any(isinstance(v, GaussRat) for v in self.den.values())

    # arithmetic -------------------------------------------------------

    def __add__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if not other.num:
            return self
        if not self.num:
            return other
        D = _lcm(self.D, other.D)
        n1, d1 = self._lift(D)
        n2, d2 = other._lift(D)
        if len(d1) == 1 and len(d2) == 1:
            s = _padd(n1, n2)
            if not s:
                return ZERO
            if D == 1:
                return QScalar._raw(s, {0: mpq(1)}, 1)
            return QScalar._make(s, {0: mpq(1)}, D)
        if d1 == d2:
            return QScalar._make(_padd(n1, n2), d1, D)
        return QScalar._make(_padd(_pmul(n1, d2), _pmul(n2, d1)), _pmul(d1, d2), D)

    __radd__ = __add__

    def __neg__(self):
        return QScalar._raw(_pneg(self.num), self.den, self.D)

    def __sub__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        if not self.num or not other.num:
            return ZERO
        D = _lcm(self.D, other.D)
        n1, d1 = self._lift(D)
        n2, d2 = other._lift(D)
        if len(d1) == 1 and len(d2) == 1:
            p = _pmul(n1, n2)
            if D == 1:
                return QScalar._raw(p, {0: mpq(1)}, 1)
            return QScalar._make(p, {0: mpq(1)}, D)
        return QScalar._make(_pmul(n1, n2), _pmul(d1, d2), D)

    __rmul__ = __mul__

    def inverse(self) -> "QScalar":
        if not self.num:
            raise ScalarError("division by zero")
        return QScalar._make(self.den, self.num, self.D)

    def __truediv__(self, other):
        other = _as_scalar(other)
        if other is NotImplemented:
            return other
        return self * other.inverse()

    def __rtruediv__(self, other):
        return _as_scalar(other) * self.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        out, base = ONE, self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    # comparison -------------------------------------------------------

    def __eq__(self, other):
        if not isinstance(other, QScalar):
            other = _as_scalar(other)
            if other is NotImplemented:
                return False
        return self.D == other.D and self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.D, frozenset(self.num.items()), frozenset(self.den.items())))
        return self._hash

    # views ------------------------------------------------------------

    @property
    def numerator(self) -> QLaurent:
        return QLaurent(self.num, self.D)

    @property
    def denominator(self) -> QLaurent:
        return QLaurent(self.den, self.D)

    def conjugate(self) -> "QScalar":
        """Complex conjugation of the coefficients (q is real)."""
        conj = lambda p: {k: (GaussRat(v.re, -v.im) if isinstance(v, GaussRat) else v)
                          for k, v in p.items()}
        return QScalar._raw(conj(self.num), conj(self.den), self.D)

    def __str__(self):
        return render(self)

    def __repr__(self):
        return f"QScalar({render(self)!r})"


def _lcm(a, b):
    return a if a == b else a * b // math.gcd(a, b)


def _coeff(value):
    if isinstance(value, GaussRat):
        return value
    if isinstance(value, complex):
        return gauss(Fraction(value.real), Fraction(value.imag))
    return mpq(value)


def _as_scalar(x):
    if isinstance(x, QScalar):
        return x
    if isinstance(x, (int, Fraction, GaussRat)) or type(x) is type(mpq(0)):
        return QScalar(x)
    return NotImplemented


ZERO = QScalar(0)
ONE = QScalar(1)
I = QScalar(GaussRat(0, 1))


def q_power(exponent, coeff=1) -> QScalar:
    """``coeff * q^exponent`` for a rational exponent."""
    e = Fraction(exponent)
    c = _coeff(coeff)
    if not c:
        return ZERO
    return QScalar._raw({e.numerator: c}, {0: mpq(1)}, e.denominator)


def from_laurent(terms: dict, coeff_scale=1) -> QScalar:
    """Build from ``{rational exponent: coefficient}``."""
    D = 1
    for e in terms:
        D = _lcm(D, Fraction(e).denominator)
    num = {}
    for e, c in terms.items():
        k = int(Fraction(e) * D)
        num[k] = num.get(k, mpq(0)) + _coeff(c) * coeff_scale
    return QScalar._make(num, {0: mpq(1)}, D)


# --------------------------------------------------------------------------
# quantum numbers
# --------------------------------------------------------------------------

_qint_cache: dict = {}


def quantum_integer(n: int, d: int = 1) -> QScalar:
    """``[n]_{q^d} = (q^{dn} - q^{-dn}) / (q^d - q^{-d})``."""
    key = (n, d)
    hit = _qint_cache.get(key)
    if hit is not None:
        return hit
    if n < 0:
        out = -quantum_integer(-n, d)
    else:
        out = QScalar._make({d * (n - 1 - 2 * k): mpq(1) for k in range(n)}, {0: mpq(1)}, 1)
    _qint_cache[key] = out
    return out


def quantum_divided_factor(n: int, d: int = 1) -> QScalar:
    """``[n]! = [n][n-1]...[2]`` in the variable ``q^d``; ``[0]! = 1``."""
    if n < 0:
        raise ValueError("quantum factorial of a negative integer")
    key = ("!", n, d)
    hit = _qint_cache.get(key)
    if hit is not None:
        return hit
    out = ONE
    for k in range(2, n + 1):
        out = out * quantum_integer(k, d)
    _qint_cache[key] = out
    return out


# --------------------------------------------------------------------------
# valuation at q = oo
# --------------------------------------------------------------------------


def valuation(x: QScalar):
    """Order of vanishing in ``q^{-1}`` at ``q = oo``; ``math.inf`` for zero."""
    if not x.num:
        return math.inf
    return Fraction(max(x.den) - max(x.num), x.D)


def regular_at_infinity(x: QScalar) -> bool:
    return valuation(x) >= 0


def limit_at_infinity(x: QScalar):
    """Value at ``q = oo`` of an element of the local ring; an ``mpq`` or GaussRat."""
    v = valuation(x)
    if v < 0:
        raise ScalarError(f"{render(x)} is not regular at q = oo")
    if v > 0:
        return mpq(0)
    return x.num[max(x.num)] / x.den[max(x.den)]


# --------------------------------------------------------------------------
# text grammar
# --------------------------------------------------------------------------


def _render_rat(r) -> str:
    r = mpq(r)
    return str(r.numerator) if r.denominator == 1 else f"{r.numerator}/{r.denominator}"


def _render_coeff_inner(c) -> str:
    re_, im = _re(c), _im(c)
    if not im:
        return _render_rat(re_)
    if im == 1:
        imt = "i"
    elif im == -1:
        imt = "-i"
    else:
        imt = f"{_render_rat(im)}*i"
    if not re_:
        return imt
    return f"{_render_rat(re_)} + {imt}"


def _render_term(k: int, D: int, c) -> str:
    e = Fraction(k, D)
    positive_int = not isinstance(c, GaussRat) and c > 0 and mpq(c).denominator == 1
    if e == 0:
        return _render_rat(c) if positive_int else f"({_render_coeff_inner(c)})"
    et = str(e.numerator) if e.denominator == 1 else f"{e.numerator}/{e.denominator}"
    mono = f"q^({et})"
    if c == 1 and not isinstance(c, GaussRat):
        return mono
    if positive_int:
        return f"{_render_rat(c)}*{mono}"
    return f"({_render_coeff_inner(c)})*{mono}"


def _render_laurent(terms: dict, D: int) -> str:
    if not terms:
        return "0"
    return " + ".join(_render_term(k, D, terms[k]) for k in sorted(terms, reverse=True))


def render(x: QScalar) -> str:
    """Canonical text: descending exponents, ``num / den`` for non-Laurent values."""
    if x.is_laurent() and x.den == {0: 1}:
        return _render_laurent(x.num, x.D)
    return f"({_render_laurent(x.num, x.D)}) / ({_render_laurent(x.den, x.D)})"


_TOKEN = re.compile(r"\s*(?:(\d+)|(q)|(i)|(\^)|(\()|(\))|(\+)|(-)|(\*)|(/))")


class _Parser:
    def __init__(self, text: str):
        self.toks = []
        pos = 0
        text = text.strip()
        while pos < len(text):
            m = _TOKEN.match(text, pos)
            if not m or m.end() == pos:
                raise ValueError(f"bad scalar text at {pos}: {text!r}")
            kind = m.lastindex
            self.toks.append((kind, m.group(kind)))
            pos = m.end()
            while pos < len(text) and text[pos].isspace():
                pos += 1
        self.i = 0

    def peek(self):
        return self.toks[self.i] if self.i < len(self.toks) else (None, None)

    def take(self, kind=None):
        tok = self.peek()
        if tok[0] is None or (kind is not None and tok[0] != kind):
            raise ValueError(f"unexpected token {tok[1]!r}")
        self.i += 1
        return tok

    def expr(self):
        out = self.term()
        while self.peek()[0] in (7, 8):
            op = self.take()[0]
            rhs = self.term()
            out = out + rhs if op == 7 else out - rhs
        return out

    def term(self):
        out = self.factor()
        while self.peek()[0] in (9, 10):
            op = self.take()[0]
            rhs = self.factor()
            out = out * rhs if op == 9 else out / rhs
        return out

    def factor(self):
        if self.peek()[0] == 8:
            self.take()
            return -self.factor()
        kind, text = self.take()
        if kind == 1:
            return QScalar(int(text))
        if kind == 3:
            return I
        if kind == 5:
            inner = self.expr()
            self.take(6)
            return inner
        if kind == 2:
            if self.peek()[0] != 4:
                return q_power(1)
            self.take(4)
            return q_power(self.exponent())
        raise ValueError(f"unexpected token {text!r}")

    def exponent(self) -> Fraction:
        if self.peek()[0] == 1:
            return Fraction(int(self.take()[1]))
        self.take(5)
        sign = 1
        if self.peek()[0] == 8:
            self.take()
            sign = -1
        n = int(self.take(1)[1])
        d = 1
        if self.peek()[0] == 10:
            self.take()
            d = int(self.take(1)[1])
            if d == 0:
                raise ValueError("zero denominator in an exponent")
        self.take(6)
        return Fraction(sign * n, d)


def parse_scalar(text: str) -> QScalar:
    """Inverse of :func:`render` (accepts any well-formed expression in q and i)."""
    p = _Parser(text)
    out = p.expr()
    if p.i != len(p.toks):
        raise ValueError(f"trailing input in {text!r}")
    return out
