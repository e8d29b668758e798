"""Exact rational arithmetic, univariate polynomials and piecewise tables.

All quantities in this package are exact: rationals are arbitrary
precision (gmpy2.mpq when available, fractions.Fraction otherwise),
polynomials have rational coefficients indexed by degree, and piecewise
polynomial tables cover the nonnegative integers by closed intervals
with integral endpoints.
"""

from __future__ import annotations

import math
from typing import Iterable, List, Sequence, Tuple, Union

try:
    from gmpy2 import mpq as QQ
except ImportError:  # pragma: no cover
    from fractions import Fraction as QQ

Rational = Union[int, type(QQ(0))]

INF = "inf"


def rational(x) -> Rational:
    """Coerce ints, 'a/b' strings and rationals to the exact rational type."""
    if isinstance(x, str):
        x = x.strip()
        if "/" in x:
            a, b = x.split("/")
            return QQ(int(a), int(b))
        return QQ(int(x))
    if isinstance(x, float):
        raise TypeError("floats are not accepted; pass 'a/b' strings or ints")
    return QQ(x)


def format_rational(x) -> str:
    """Render a rational as a decimal string, or 'a/b' if not integral."""
    x = QQ(x)
    if x.denominator == 1:
        return str(x.numerator)
    return "%d/%d" % (x.numerator, x.denominator)


def is_integral(x) -> bool:
    return QQ(x).denominator == 1


def binomial_of(e, k: int):
    """binomial(e, k) = e(e-1)...(e-k+1)/k! for e in any commutative ring.

    Works for integers (positive or negative), rationals and UniPoly.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    num = 1
    for i in range(k):
        num = num * (e - i)
    if isinstance(num, int):
        return QQ(num, math.factorial(k))
    return num * QQ(1, math.factorial(k))


class UniPoly:
    """Univariate polynomial over the rationals, in the ray parameter t.

    Coefficients are stored in ascending degree order with no trailing
    zeros; the zero polynomial has an empty coefficient list.
    """

    __slots__ = ("coeffs",)

    def __init__(self, coeffs: Iterable = ()):
        cs = [QQ(c) for c in coeffs]
        while cs and cs[-1] == 0:
            cs.pop()
        self.coeffs = cs

    @staticmethod
    def constant(c) -> "UniPoly":
        return UniPoly([QQ(c)])

    @staticmethod
    def t() -> "UniPoly":
        return UniPoly([0, 1])

    def degree(self) -> int:
        """Degree, with the convention deg 0 = -1."""
        return len(self.coeffs) - 1

    def is_zero(self) -> bool:
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __eq__(self, other):
        if isinstance(other, UniPoly):
            return self.coeffs == other.coeffs
        if isinstance(other, (int,)) or type(other) is type(QQ(0)):
            return self.coeffs == UniPoly([other]).coeffs
        return NotImplemented

    def __hash__(self):
        return hash(tuple(self.coeffs))

    def _coerce(self, other):
        if isinstance(other, UniPoly):
            return other
        return UniPoly([other])

    def __add__(self, other):
        o = self._coerce(other)
        n = max(len(self.coeffs), len(o.coeffs))
        out = [0] * n
        for i, c in enumerate(self.coeffs):
            out[i] = c
        for i, c in enumerate(o.coeffs):
            out[i] = out[i] + c
        return UniPoly(out)

    __radd__ = __add__

    def __neg__(self):
        return UniPoly([-c for c in self.coeffs])

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.coeffs or not o.coeffs:
            return UniPoly()
        out = [QQ(0)] * (len(self.coeffs) + len(o.coeffs) - 1)
        for i, a in enumerate(self.coeffs):
            if a == 0:
                continue
            for j, b in enumerate(o.coeffs):
                out[i + j] = out[i + j] + a * b
        return UniPoly(out)

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = QQ(scalar)
        return UniPoly([c / s for c in self.coeffs])

    def __call__(self, t):
        """Evaluate at t (Horner)."""
        acc = QQ(0)
        for c in reversed(self.coeffs):
            acc = acc * t + c
        return acc

    def leading(self):
        return self.coeffs[-1] if self.coeffs else QQ(0)

    def coefficient(self, k: int):
        return self.coeffs[k] if k < len(self.coeffs) else QQ(0)

    def to_strings(self) -> List[str]:
        return [format_rational(c) for c in self.coeffs]

    @staticmethod
    def from_strings(ss: Sequence[str]) -> "UniPoly":
        return UniPoly([rational(s) for s in ss])

    def __repr__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for k, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if k == 0:
                parts.append(format_rational(c))
            elif k == 1:
                parts.append("%s*t" % format_rational(c))
            else:
                parts.append("%s*t^%d" % (format_rational(c), k))
        return " + ".join(parts).replace("+ -", "- ")


class AffineExponent:
    """Exponent of a binomial factor, affine in the ray parameter: c0 + c1*t."""

    __slots__ = ("const", "slope")

    def __init__(self, const: int, slope: int = 0):
        self.const = int(const)
        self.slope = int(slope)

    def __eq__(self, other):
        return (
            isinstance(other, AffineExponent)
            and self.const == other.const
            and self.slope == other.slope
        )

    def __hash__(self):
        return hash((self.const, self.slope))

    def __add__(self, other):
        if isinstance(other, AffineExponent):
            return AffineExponent(self.const + other.const, self.slope + other.slope)
        return AffineExponent(self.const + int(other), self.slope)

    def __sub__(self, other):
        if isinstance(other, AffineExponent):
            return AffineExponent(self.const - other.const, self.slope - other.slope)
        return AffineExponent(self.const - int(other), self.slope)

    def is_numeric(self) -> bool:
        return self.slope == 0

    def __call__(self, t: int) -> int:
        return self.const + self.slope * t

    def as_poly(self) -> UniPoly:
        return UniPoly([self.const, self.slope])

    def __repr__(self):
        if self.slope == 0:
            return str(self.const)
        return "%d%+d*t" % (self.const, self.slope)


def binomial_series(exponent: AffineExponent, order: int) -> List[UniPoly]:
    """Truncated expansion of (1+u)^E: coefficient of u^k, k = 0..order.

    Each coefficient binomial(E, k) is returned as a UniPoly in t; at any
    integer t it equals the integer binomial of E(t) choose k (extended to
    negative arguments by the falling factorial).
    """
    if order < 0:
        raise ValueError("order must be nonnegative")
    e = exponent.as_poly()
    out = [UniPoly.constant(1)]
    acc = UniPoly.constant(1)
    for k in range(1, order + 1):
        acc = acc * (e - (k - 1)) / k
        out.append(acc)
    return out


Interval = Tuple[int, Union[int, str]]


class PiecewisePolynomial:
    """Covering of the nonnegative integers by polynomial pieces.

    pieces: list of (UniPoly, lo, hi) with lo_1 = 0, hi_last = INF, and
    consecutive intervals either adjacent or sharing one integer endpoint
    where the two polynomials agree.
    """

    def __init__(self, pieces: Sequence[Tuple[UniPoly, int, Union[int, str]]]):
        self.pieces = [(p, int(lo), hi if hi == INF else int(hi)) for p, lo, hi in pieces]
        self._validate()

    def _validate(self):
        if not self.pieces:
            raise ValueError("empty covering")
        if self.pieces[0][1] != 0:
            raise ValueError("covering must start at 0")
        if self.pieces[-1][2] != INF:
            raise ValueError("last interval must be infinite")
        for (p1, lo1, hi1), (p2, lo2, _) in zip(self.pieces, self.pieces[1:]):
            if hi1 == INF:
                raise ValueError("infinite interval before the last piece")
            if lo2 not in (hi1, hi1 + 1):
                raise ValueError("gap or excessive overlap between pieces")
            if lo2 == hi1 and p1(lo2) != p2(lo2):
                raise ValueError("pieces disagree on shared endpoint t=%d" % lo2)

    def __eq__(self, other):
        return isinstance(other, PiecewisePolynomial) and self.pieces == other.pieces

    def __call__(self, t: int):
        return self.eval(t)

    def eval(self, t: int):
        if t < 0:
            raise ValueError("t must be nonnegative")
        for p, lo, hi in self.pieces:
            if lo <= t and (hi == INF or t <= hi):
                return p(t)
        raise RuntimeError("covering invariant violated: no piece for t=%d" % t)

    def streamline(self) -> "PiecewisePolynomial":
        """Merge a piece into its successor when they agree on the piece's interval.

        Polynomial equality is decided by exact evaluation at every integer
        of the earlier (finite) interval, since distinct polynomials may
        coincide on a short interval.
        """
        out: List[Tuple[UniPoly, int, Union[int, str]]] = []
        for poly, lo, hi in self.pieces:
            while out:
                p0, lo0, hi0 = out[-1]
                assert hi0 != INF
                if all(p0(t) == poly(t) for t in range(lo0, hi0 + 1)):
                    out.pop()
                    lo = lo0
                else:
                    break
            out.append((poly, lo, hi))
        return PiecewisePolynomial(out)

    def last_piece(self) -> UniPoly:
        return self.pieces[-1][0]

    def max_finite_endpoint(self) -> int:
        return 0 if len(self.pieces) == 1 else int(self.pieces[-1][1])

    def to_json(self) -> list:
        return [
            {"coeffs": p.to_strings(), "interval": [lo, hi]}
            for p, lo, hi in self.pieces
        ]

    @staticmethod
    def from_json(data: Sequence[dict]) -> "PiecewisePolynomial":
        return PiecewisePolynomial(
            [
                (UniPoly.from_strings(d["coeffs"]), d["interval"][0], d["interval"][1])
                for d in data
            ]
        )

    def __repr__(self):
        return "[" + ", ".join(
            "[%s, [%s, %s]]" % (p, lo, hi) for p, lo, hi in self.pieces
        ) + "]"
