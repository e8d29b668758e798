"""K-type multiplicities of discrete series of U(p,q).

The multiplicity of the K = U(p) x U(q) parameter mu in the discrete
series with Harish-Chandra parameter lam is an alternating sum, over the
compact Weyl group S_p x S_q, of vector partition counts for the
noncompact positive root system attached to lam's chamber.  One generic
infinitesimal deformation of mu is fixed up front and carried through
every Weyl term, so all counts are taken at a single regularized point.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import permutations
from typing import List, Optional, Sequence, Tuple

from .exact import INF, QQ, PiecewisePolynomial, UniPoly, is_integral, rational
from .partition import PartitionContext
from .roots import (
    ABPattern,
    InvalidParameterError,
    LexNum,
    chamber_pattern,
    deform_vector,
    noncompact_walls,
    relabel,
)

Blocks = Tuple[tuple, tuple]


def _parse_blocks(blocks, p: int, q: int, name: str) -> Blocks:
    try:
        a, b = blocks
    except (TypeError, ValueError):
        raise InvalidParameterError("%s must be a pair of blocks" % name)
    if len(a) != p or len(b) != q:
        raise InvalidParameterError("%s block sizes must be (%d, %d)" % (name, p, q))
    return tuple(rational(x) for x in a), tuple(rational(x) for x in b)


def _check_parity(xs, integral: bool, name: str):
    for x in xs:
        if is_integral(x) != integral:
            want = "integers" if integral else "half-odd-integers"
            raise InvalidParameterError("%s entries must be %s; got %s" % (name, want, x))


@dataclass(frozen=True)
class HCParamG:
    """Harish-Chandra parameter of a discrete series of U(p,q)."""

    a: tuple
    b: tuple
    p: int
    q: int

    @staticmethod
    def parse(blocks, p: int, q: int) -> "HCParamG":
        a, b = _parse_blocks(blocks, p, q, "lambda")
        lam = HCParamG(a, b, p, q)
        lam.validate()
        return lam

    @property
    def full(self):
        return list(self.a) + list(self.b)

    def validate(self):
        n = self.p + self.q
        _check_parity(self.full, n % 2 == 1, "lambda")
        if len(set(self.full)) != n:
            raise InvalidParameterError("lambda must be regular (no repeated entries)")


@dataclass(frozen=True)
class HCParamK:
    """Harish-Chandra parameter of a K = U(p) x U(q) representation."""

    a: tuple
    b: tuple
    p: int
    q: int

    @staticmethod
    def parse(blocks, p: int, q: int) -> "HCParamK":
        a, b = _parse_blocks(blocks, p, q, "mu")
        mu = HCParamK(a, b, p, q)
        mu.validate()
        return mu

    @property
    def full(self):
        return list(self.a) + list(self.b)

    def validate(self):
        _check_parity(self.a, self.p % 2 == 1, "mu (first block)")
        _check_parity(self.b, self.q % 2 == 1, "mu (second block)")
        if len(set(self.a)) != self.p or len(set(self.b)) != self.q:
            raise InvalidParameterError("mu blocks must have distinct entries")


class ChamberData:
    """Pattern, relabeling and partition context attached to one lambda."""

    _cache: dict = {}

    def __new__(cls, lam: HCParamG):
        key = (lam.a, lam.b, lam.p, lam.q)
        hit = cls._cache.get(key)
        if hit is not None:
            return hit
        self = super().__new__(cls)
        self.lam = lam
        self.pattern, self.pi = chamber_pattern(lam.a, lam.b, lam.p, lam.q)
        self.ctx = PartitionContext(self.pattern)
        self.lam_rel = relabel(lam.full, self.pi)
        cls._cache[key] = self
        return self

    @property
    def n(self):
        return self.pattern.n

    def rho_orig(self) -> list:
        """rho_n mapped back to the original coordinate order."""
        out = [None] * self.n
        for k, orig in enumerate(self.pi):
            out[orig - 1] = self.ctx.rho[k]
        return out


def lowest_k_type(lam_blocks, p: int, q: int) -> list:
    """Blocks of the lowest K-type parameter, lambda + rho_n, sorted."""
    lam = HCParamG.parse(lam_blocks, p, q)
    cd = ChamberData(lam)
    full = [x + r for x, r in zip(lam.full, cd.rho_orig())]
    a = sorted(full[:p], reverse=True)
    b = sorted(full[p:], reverse=True)
    return [a, b]


def vogan_lowest_k_type(lam_blocks, p: int, q: int) -> list:
    """Highest weight of the lowest K-type: lambda + rho_n - rho_c."""
    low = lowest_k_type(lam_blocks, p, q)
    rho_c = lambda m: [QQ(m - 1 - 2 * i, 2) for i in range(m)]
    return [
        [x - r for x, r in zip(low[0], rho_c(p))],
        [x - r for x, r in zip(low[1], rho_c(q))],
    ]


def _weyl_group(p: int, q: int):
    """(sign, index permutation of [0..p+q-1]) for all of S_p x S_q."""
    out = []
    for wa in permutations(range(p)):
        sa = _perm_sign(wa)
        for wb in permutations(range(q)):
            out.append((sa * _perm_sign(wb), wa + tuple(p + j for j in wb)))
    return out


def _perm_sign(w) -> int:
    sign = 1
    for i in range(len(w)):
        for j in range(i + 1, len(w)):
            if w[i] > w[j]:
                sign = -sign
    return sign


def valid_permutations(mu_blocks, lam_blocks, p: int, q: int) -> list:
    """Weyl elements w for which w*mu - lambda lies in the closed positive cone."""
    lam = HCParamG.parse(lam_blocks, p, q)
    mu = HCParamK.parse(mu_blocks, p, q)
    if sum(lam.full, QQ(0)) != sum(mu.full, QQ(0)):
        return []  # the cone lies in the sum-zero space
    cd = ChamberData(lam)
    out = []
    for sign, w in _weyl_group(p, q):
        if _cone_ok([mu.full[i] for i in w], cd):
            out.append(w)
    return out


def _cone_ok(wmu_full, cd: ChamberData) -> bool:
    diff = [m - l for m, l in zip(relabel(wmu_full, cd.pi), cd.lam_rel)]
    run = QQ(0)
    for x in diff[:-1]:
        run += x
        if run < 0:
            return False
    return True


@dataclass
class MultiplicityResult:
    multiplicity: int
    signed_sum: int
    contributions: List[dict] = field(default_factory=list)


def discretemult(mu_blocks, lam_blocks, p: int, q: int,
                 with_contributions: bool = False) -> MultiplicityResult:
    """Multiplicity of the K-parameter mu in the discrete series of lambda."""
    lam = HCParamG.parse(lam_blocks, p, q)
    mu = HCParamK.parse(mu_blocks, p, q)
    if sum(lam.full, QQ(0)) != sum(mu.full, QQ(0)):
        return MultiplicityResult(0, 0, [])
    cd = ChamberData(lam)
    n = cd.n
    mu_def = deform_vector(mu.full, n)  # one regularization for every Weyl term
    total = QQ(0)
    contributions = []
    for sign, w in _weyl_group(p, q):
        wmu_full = [mu.full[i] for i in w]
        if not _cone_ok(wmu_full, cd):
            continue
        point = {
            k + 1: mu_def[w[orig - 1] + 1] - cd.lam_rel[k]
            for k, orig in enumerate(cd.pi)
        }
        h = [
            relabel(wmu_full, cd.pi)[i] - cd.lam_rel[i] - cd.ctx.rho[i]
            for i in range(n - 1)
        ]
        if not all(is_integral(x) for x in h):
            raise InvalidParameterError("w*mu - lambda - rho_n is not integral")
        exps = [(int(h[i] + cd.ctx.offsets[i]), 0) for i in range(n - 1)]
        cnt = cd.ctx.signed_count(exps, point)
        if not is_integral(cnt) or cnt < 0:
            raise AssertionError("partition term is not a nonnegative integer")
        if cnt != 0 and with_contributions:
            contributions.append({"w": list(w), "sign": sign, "count": int(cnt)})
        total += sign * cnt
    total = int(total)
    return MultiplicityResult(abs(total), total, contributions)


def wall_crossing_times(lam: HCParamG, mu0_full, v_full, cd: ChamberData) -> list:
    """Positive times where some Weyl translate of the ray meets a wall."""
    walls = noncompact_walls(cd.pattern)
    times = set()
    for _, w in _weyl_group(lam.p, lam.q):
        base = [m - l for m, l in zip(relabel([mu0_full[i] for i in w], cd.pi), cd.lam_rel)]
        slope = relabel([v_full[i] for i in w], cd.pi)
        for L in walls:
            num = sum((base[i - 1] for i in L), QQ(0))
            den = sum((slope[i - 1] for i in L), QQ(0))
            if den != 0:
                t = -num / den
                if t > 0:
                    times.add(t)
    return sorted(times)


def _ceil(x) -> int:
    x = QQ(x)
    return -((-x.numerator) // x.denominator)


def _floor(x) -> int:
    x = QQ(x)
    return x.numerator // x.denominator


def multiplicity_direction(lam_blocks, v_blocks, p: int, q: int) -> PiecewisePolynomial:
    """Multiplicities along mu(t) = lowest K-type + t*v, as a piecewise
    polynomial table covering the nonnegative integers."""
    lam = HCParamG.parse(lam_blocks, p, q)
    va, vb = _parse_blocks(v_blocks, p, q, "direction")
    v_full = list(va) + list(vb)
    if not all(is_integral(x) for x in v_full):
        raise InvalidParameterError("direction entries must be integers")
    if sum(v_full, QQ(0)) != 0:
        raise InvalidParameterError("direction must have coordinate sum zero")
    cd = ChamberData(lam)
    n = cd.n
    low = lowest_k_type(lam_blocks, p, q)
    mu0_full = [rational(x) for x in low[0] + low[1]]

    times = wall_crossing_times(lam, mu0_full, v_full, cd)
    cuts = [QQ(0)] + times
    degree_cap = p * q - (n - 1)
    pieces = []
    prev_poly = None
    for i, t_lo in enumerate(cuts):
        t_hi = cuts[i + 1] if i + 1 < len(cuts) else None
        lo = _ceil(t_lo)
        # intervals are kept disjoint: an integral cut belongs to the later piece
        hi = INF if t_hi is None else _ceil(t_hi) - 1
        if hi != INF and lo > hi:
            prev_poly = None  # segment holds no integer; cannot cross-check
            continue
        t_bar = (t_lo + t_hi) / 2 if t_hi is not None else t_lo + 1
        poly = _piece_polynomial(cd, mu0_full, v_full, t_bar)
        if poly.degree() > degree_cap:
            raise AssertionError("piece degree exceeds %d" % degree_cap)
        if prev_poly is not None and t_lo == lo and prev_poly(lo) != poly(lo):
            # both topes' closures contain an integral cut, so they must agree
            raise AssertionError("adjacent pieces disagree at t = %d" % lo)
        prev_poly = poly
        if pieces and pieces[-1][0] == poly:
            pieces[-1] = (poly, pieces[-1][1], hi)
        else:
            pieces.append((poly, lo, hi))
    pieces = _orient(pieces)
    return PiecewisePolynomial(pieces)


def _piece_polynomial(cd: ChamberData, mu0_full, v_full, t_bar) -> UniPoly:
    n = cd.n
    sample = [m + t_bar * x for m, x in zip(mu0_full, v_full)]
    sample_def = deform_vector(sample, n)
    total = UniPoly()
    p, q = cd.pattern.p, cd.pattern.q
    for sign, w in _weyl_group(p, q):
        point = {
            k + 1: sample_def[w[orig - 1] + 1] - cd.lam_rel[k]
            for k, orig in enumerate(cd.pi)
        }
        base = [m - l for m, l in zip(relabel([mu0_full[i] for i in w], cd.pi), cd.lam_rel)]
        slope = relabel([v_full[i] for i in w], cd.pi)
        h0 = [base[i] - cd.ctx.rho[i] for i in range(n - 1)]
        if not all(is_integral(x) for x in h0):
            raise InvalidParameterError("w*mu - lambda - rho_n is not integral")
        exps = [
            (int(h0[i] + cd.ctx.offsets[i]), int(slope[i])) for i in range(n - 1)
        ]
        term = cd.ctx.signed_poly(exps, point)
        total = total + term * sign
    return total


def _orient(pieces):
    """Flip the global sign if the signed sums come out nonpositive."""
    saw_positive = saw_negative = False
    for poly, lo, hi in pieces:
        samples = [lo, lo + 1, lo + 2] if hi == INF else [lo, hi, (lo + hi) // 2]
        for s in samples:
            val = poly(s)
            if val > 0:
                saw_positive = True
            elif val < 0:
                saw_negative = True
    if saw_positive and saw_negative:
        raise AssertionError("signed multiplicity changes sign between pieces")
    if saw_negative:
        return [(poly * -1, lo, hi) for poly, lo, hi in pieces]
    return pieces


def is_asymptotic_direction(lam_blocks, v_blocks, p: int, q: int) -> bool:
    """True when multiplicities along the ray are eventually nonzero."""
    table = multiplicity_direction(lam_blocks, v_blocks, p, q)
    return not table.last_piece().is_zero()
