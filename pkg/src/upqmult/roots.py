"""Parabolic root lists Delta+(A,B) inside A_r and their wall geometry.

Vectors live in the sum-zero subspace of R^n (n = p+q), written in the
e-basis.  A deformed vector carries, besides its rational base point, a
formal infinitesimal in the fixed generic direction
(delta, delta^2, ..., delta^(n-1), -sum); signs of subset-sum functionals
on deformed vectors are decided lexicographically by the first nonzero
order, so evaluation points can be pushed off every admissible hyperplane
without picking a numeric epsilon.
"""

from __future__ import annotations

from itertools import combinations
from typing import Dict, List, Sequence, Tuple

from .exact import QQ, rational

Root = Tuple[int, int]  # (i, j), i < j, the vector e_i - e_j


class InvalidParameterError(ValueError):
    """Raised when an input violates a documented precondition."""


class LexNum:
    """Exact number with infinitesimal tail: c0 + c1*delta + c2*delta^2 + ...

    Comparisons are lexicographic on the coefficient sequence, which is the
    sign rule for linear functionals evaluated on deformed vectors.
    """

    __slots__ = ("parts",)

    def __init__(self, parts: Sequence):
        ps = [QQ(x) for x in parts]
        while ps and ps[-1] == 0:
            ps.pop()
        self.parts = tuple(ps)

    @staticmethod
    def of(x) -> "LexNum":
        return x if isinstance(x, LexNum) else LexNum([x])

    @property
    def base(self):
        return self.parts[0] if self.parts else QQ(0)

    def sign(self) -> int:
        for c in self.parts:
            if c != 0:
                return 1 if c > 0 else -1
        return 0

    def is_zero(self) -> bool:
        return not self.parts

    def __add__(self, other):
        o = LexNum.of(other)
        n = max(len(self.parts), len(o.parts))
        return LexNum(
            [
                (self.parts[i] if i < len(self.parts) else 0)
                + (o.parts[i] if i < len(o.parts) else 0)
                for i in range(n)
            ]
        )

    __radd__ = __add__

    def __neg__(self):
        return LexNum([-c for c in self.parts])

    def __sub__(self, other):
        return self + (-LexNum.of(other))

    def __rsub__(self, other):
        return LexNum.of(other) - self

    def __mul__(self, scalar):
        s = QQ(scalar)
        return LexNum([c * s for c in self.parts])

    __rmul__ = __mul__

    def __truediv__(self, scalar):
        s = QQ(scalar)
        return LexNum([c / s for c in self.parts])

    def __eq__(self, other):
        return self.parts == LexNum.of(other).parts

    def __hash__(self):
        return hash(self.parts)

    def __lt__(self, other):
        return (self - other).sign() < 0

    def __gt__(self, other):
        return (self - other).sign() > 0

    def __le__(self, other):
        return (self - other).sign() <= 0

    def __ge__(self, other):
        return (self - other).sign() >= 0

    def __repr__(self):
        if not self.parts:
            return "0"
        return "+".join("%s*d^%d" % (c, k) if k else str(c) for k, c in enumerate(self.parts))


Vector = Dict[int, LexNum]  # sparse ambient vector, index -> coordinate


class ABPattern:
    """Complementary index sets A (size p) and B (size q) of [1..p+q]."""

    __slots__ = ("A", "B", "n")

    def __init__(self, A: Sequence[int], n: int):
        self.A = tuple(sorted(A))
        self.B = tuple(i for i in range(1, n + 1) if i not in set(A))
        self.n = n
        if not self.A or not self.B or set(self.A) & set(self.B):
            raise InvalidParameterError("A must be a proper nonempty subset of [1..n]")

    @property
    def p(self) -> int:
        return len(self.A)

    @property
    def q(self) -> int:
        return len(self.B)

    def word(self) -> str:
        return "".join("a" if i in set(self.A) else "b" for i in range(1, self.n + 1))

    def __repr__(self):
        return "ABPattern(A=%s, n=%d)" % (list(self.A), self.n)

    def __eq__(self, other):
        return isinstance(other, ABPattern) and self.A == other.A and self.n == other.n

    def __hash__(self):
        return hash((self.A, self.n))


def chamber_pattern(alpha: Sequence, gamma: Sequence, p: int, q: int):
    """Read off the chamber pattern of a regular parameter.

    Returns (pattern, pi) where pi[k-1] is the original coordinate holding
    the k-th largest entry; relabeling a vector by pi puts it into the
    standard decreasing chamber where the noncompact positive roots become
    Delta+(A,B).
    """
    if len(alpha) != p or len(gamma) != q:
        raise InvalidParameterError("block sizes do not match (p, q)")
    full = [rational(x) for x in list(alpha) + list(gamma)]
    if len(set(full)) != p + q:
        raise InvalidParameterError("parameter is not regular (repeated coordinate)")
    order = sorted(range(1, p + q + 1), key=lambda i: full[i - 1], reverse=True)
    A = tuple(sorted(k for k, orig in enumerate(order, start=1) if orig <= p))
    return ABPattern(A, p + q), order


def relabel(vec: Sequence, pi: Sequence[int]) -> list:
    """Apply the chamber relabeling: result[k] = vec[pi[k]-1]."""
    return [vec[i - 1] for i in pi]


def delta_n_plus(pattern: ABPattern, I: Sequence[int] | None = None) -> List[Root]:
    """All roots e_i - e_j (i < j in I) joining A to B."""
    idx = tuple(sorted(I)) if I is not None else tuple(range(1, pattern.n + 1))
    Aset, Bset = set(pattern.A), set(pattern.B)
    out = []
    for i, j in combinations(idx, 2):
        if (i in Aset) != (j in Aset) and (i in Aset or i in Bset) and (j in Aset or j in Bset):
            out.append((i, j))
    return out


def rho_n(roots: Sequence[Root], n: int) -> list:
    """Half the sum of the root list, as a length-n coordinate vector."""
    v = [QQ(0)] * n
    for i, j in roots:
        v[i - 1] += QQ(1, 2)
        v[j - 1] -= QQ(1, 2)
    return v


def canonical_wall(L: Sequence[int], I: Sequence[int]) -> Tuple[int, ...]:
    """Canonical key for the hyperplane H_L = H_{I \\ L}: the smaller side."""
    Ls = tuple(sorted(L))
    Lc = tuple(sorted(set(I) - set(Ls)))
    return min((len(Ls), Ls), (len(Lc), Lc))[1]


def noncompact_walls(pattern: ABPattern, I: Sequence[int] | None = None) -> List[Tuple[int, ...]]:
    """Admissible hyperplanes of Delta+(A,B) restricted to I, as canonical subsets.

    Every singleton is a wall; a subset L with 2 <= |L| <= |I|-2 is a wall
    exactly when both A and B meet L and its complement.  H_L and H_{L'}
    coincide, so one canonical representative per hyperplane is returned.
    """
    idx = tuple(sorted(I)) if I is not None else tuple(range(1, pattern.n + 1))
    Aset = set(pattern.A) & set(idx)
    Bset = set(pattern.B) & set(idx)

    def side_ok(S):
        # the roots inside H_L span it exactly when each side of the split
        # is connected: a singleton, or meeting both A and B
        return len(S) == 1 or (Aset & S and Bset & S)

    seen = set()
    out = []
    for size in range(1, len(idx)):
        for L in combinations(idx, size):
            Ls = set(L)
            Lc = set(idx) - Ls
            if side_ok(Ls) and side_ok(Lc):
                key = canonical_wall(L, idx)
                if key not in seen:
                    seen.add(key)
                    out.append(key)
    out.sort(key=lambda L: (len(L), L))
    return out


def wall_side(L: Sequence[int], vec: Vector) -> int:
    """Sign of sum_{i in L} v_i; never 0 on a deformed regular vector."""
    total = LexNum([0])
    for i in L:
        if i in vec:
            total = total + vec[i]
    return total.sign()


def wall_value(L: Sequence[int], vec: Vector) -> LexNum:
    total = LexNum([0])
    for i in L:
        if i in vec:
            total = total + vec[i]
    return total


def in_positive_cone(vec: Vector, I: Sequence[int]) -> bool:
    """Membership in the cone spanned by all positive roots of A(I).

    True iff every partial sum v_{i_1} + ... + v_{i_k} (indices of I in
    increasing order) is >= 0.  For deformed vectors the comparisons are
    strict automatically.
    """
    idx = sorted(I)
    total = LexNum([0])
    for i in idx[:-1]:
        total = total + vec.get(i, LexNum([0]))
        if total.sign() < 0:
            return False
    total = total + vec.get(idx[-1], LexNum([0]))
    if not total.is_zero():
        raise InvalidParameterError("vector has nonzero coordinate sum on %s" % (idx,))
    return True


def as_vector(coords: Sequence, I: Sequence[int] | None = None) -> Vector:
    """Wrap plain coordinates (list over sorted I) into a sparse LexNum vector."""
    idx = sorted(I) if I is not None else range(1, len(coords) + 1)
    return {i: LexNum.of(c) for i, c in zip(idx, coords)}


def deform_vector(coords: Sequence, n: int | None = None) -> Vector:
    """Push a point off every admissible hyperplane.

    Adds the formal direction (delta, delta^2, ..., delta^(n-1), -sum),
    which has nonzero subset sums on every proper nonempty subset of
    [1..n] and hence is generic for all walls H_L.
    """
    n = n if n is not None else len(coords)
    if len(coords) != n:
        raise InvalidParameterError("expected %d coordinates" % n)
    out: Vector = {}
    for k, c in enumerate(coords, start=1):
        parts = [QQ(rational(c) if not isinstance(c, LexNum) else 0)] + [0] * n
        if k < n:
            parts[k] = QQ(1)
        else:
            for j in range(1, n):
                parts[j] = QQ(-1)
        out[k] = LexNum(parts)
    return out


def reduced(coords: Sequence) -> list:
    """Drop the last coordinate of a sum-zero vector."""
    total = sum((QQ(rational(c)) for c in coords), QQ(0))
    if total != 0:
        raise InvalidParameterError("vector is not in the sum-zero space")
    return [rational(c) for c in coords[:-1]]


def ambient(red: Sequence) -> list:
    """Inverse of `reduced`: append minus the sum."""
    vals = [rational(c) for c in red]
    return vals + [-sum(vals, QQ(0))]
