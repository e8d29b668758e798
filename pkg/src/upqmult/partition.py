"""Vector partition functions for Delta+(A,B) via iterated residues.

The count N(h) of ways to write h as a nonnegative integer combination of
the roots is read off a rational function in tree coordinates: for an
ordered basis (a spanning tree of [1..n], innermost root first) the edge
vectors give coordinates in which every root and every e_i - e_n is a
signed path, i.e. a vector in {-1,0,1}^(n-1).  Taking one residue per
coordinate, innermost first, and summing over the ordered bases whose cone
contains a deformation of h + rho yields the exact count; keeping the
exponents affine in a ray parameter t yields instead the polynomial giving
the counts along the ray inside one tope.
"""

from __future__ import annotations

import math
from typing import Dict, List, Optional, Sequence, Tuple

from .exact import QQ, UniPoly, binomial_of, is_integral, rational
from .mpns import MPNSContext
from .roots import (
    ABPattern,
    InvalidParameterError,
    Root,
    ambient,
    deform_vector,
    delta_n_plus,
    rho_n,
)

Form = Tuple[int, ...]


def _tree_paths(basis: Sequence[Root], n: int) -> List[Form]:
    """Edge-coordinate form of e_x - e_n for x = 1..n (index x-1).

    Edge k of the basis represents e_a - e_b; a path traversing it from a
    to b contributes +1 in slot k, the reverse -1.
    """
    r = n - 1
    adj: Dict[int, List[Tuple[int, int, int]]] = {v: [] for v in range(1, n + 1)}
    for k, (a, b) in enumerate(basis):
        adj[a].append((b, k, 1))
        adj[b].append((a, k, -1))
    vec: List[Optional[Form]] = [None] * (n + 1)
    vec[n] = (0,) * r
    stack = [n]
    while stack:
        at = stack.pop()
        for other, k, sgn in adj[at]:
            if vec[other] is None:
                # path(other -> n) = (e_other - e_at) + path(at -> n)
                row = list(vec[at])
                row[k] -= sgn  # stored sign is for at -> other; the path runs other -> at
                vec[other] = tuple(row)
                stack.append(other)
    if any(v is None for v in vec[1:]):
        raise InvalidParameterError("basis is not a spanning tree")
    return vec[1:]  # type: ignore[return-value]


def _canonical_pole(form: Form) -> Tuple[Form, int]:
    """Scale a pole form so its first nonzero entry is +1; return (form, sign)."""
    for c in form:
        if c:
            if c > 0:
                return form, 1
            return tuple(-x for x in form), -1
    raise InvalidParameterError("zero pole form")


def _zero_at(form: Form, k: int) -> Form:
    return form[:k] + (0,) + form[k + 1:]


def _is_zero(c) -> bool:
    return c.is_zero() if isinstance(c, UniPoly) else c == 0


def _pow(c, d: int):
    out = c * 0 + 1 if isinstance(c, UniPoly) else QQ(1)
    for _ in range(d):
        out = out * c
    return out


def iterated_residue(basis, roots, exponents, n, power: Optional[tuple] = None):
    """One iterated residue of the partition generating fraction.

    basis: ordered basis, innermost root first (the first coordinate is
        eliminated first).
    roots: the full root list of Delta+(A,B), defining the denominator.
    exponents: per i = 1..n-1 a pair (c0, c1); the numerator carries
        (1 + u_i)^(c0 + c1*t).  All c1 = 0 gives an exact rational result,
        otherwise a UniPoly in t.
    power: optional (linear form in edge coordinates with UniPoly entries,
        integer exponent); replaces the binomial numerator for volume
        computations.
    """
    r = n - 1
    vec = _tree_paths(basis, n)
    symbolic = power is not None or any(c1 for _, c1 in exponents)

    sign = 1
    binoms: Dict[Form, Tuple[int, int]] = {}
    if power is None:
        for i in range(r):
            c0, c1 = exponents[i]
            if (c0, c1) == (0, 0):
                continue
            form = vec[i]
            prev = binoms.get(form, (0, 0))
            binoms[form] = (prev[0] + c0, prev[1] + c1)
    poles: Dict[Form, int] = {}
    for (a, b) in roots:
        raw = tuple(x - y for x, y in zip(vec[a - 1], vec[b - 1]))
        form, s = _canonical_pole(raw)
        sign *= s
        poles[form] = poles.get(form, 0) + 1

    one = UniPoly.constant(1) if symbolic else QQ(1)
    init_key = (tuple(sorted(binoms.items())), tuple(sorted(poles.items())), power)
    terms = {init_key: one * sign}

    for k in range(r):
        new_terms: dict = {}
        for (t_binoms, t_poles, t_power), coeff in terms.items():
            pure = 0
            passive_poles = []
            active = []  # (kind, payload)
            for form, m in t_poles:
                c = form[k]
                if c == 0:
                    passive_poles.append((form, m))
                elif all(x == 0 for q, x in enumerate(form) if q != k):
                    if c != 1:
                        raise AssertionError("canonical pure pole with sign -1")
                    pure += m
                else:
                    active.append(("pole", (form, m, c)))
            if pure == 0:
                continue
            passive_binoms = []
            for form, exp in t_binoms:
                if form[k] == 0:
                    passive_binoms.append((form, exp))
                else:
                    active.append(("binom", (form, exp, form[k])))
            pw_passive = t_power
            if t_power is not None and not t_power[0][k].is_zero():
                active.append(("power", t_power))
                pw_passive = None

            for mult, res_binoms, res_poles, res_power in _expansions(active, pure - 1, k, symbolic):
                nb = dict(passive_binoms)
                for form, exp in res_binoms:
                    prev = nb.get(form, (0, 0))
                    tot = (prev[0] + exp[0], prev[1] + exp[1])
                    if tot == (0, 0):
                        nb.pop(form, None)
                    else:
                        nb[form] = tot
                np_ = dict(passive_poles)
                extra_sign = 1
                for form, m in res_poles:
                    cf, s = _canonical_pole(form)
                    if s < 0:
                        extra_sign *= (-1) ** m
                    np_[cf] = np_.get(cf, 0) + m
                key = (
                    tuple(sorted(nb.items())),
                    tuple(sorted(np_.items())),
                    res_power if res_power is not None else pw_passive,
                )
                add = coeff * mult * extra_sign
                prev = new_terms.get(key)
                new_terms[key] = add if prev is None else prev + add
        terms = {key: c for key, c in new_terms.items() if not _is_zero(c)}

    total = one * 0
    for (t_binoms, t_poles, t_power), coeff in terms.items():
        if t_binoms or t_poles or t_power is not None:
            raise AssertionError("unconsumed factors after final residue")
        total = total + coeff
    return total


def _expansions(active, target, k, symbolic):
    """All ways to draw total degree `target` in x_k from the active factors.

    Yields (coefficient, residual binoms, residual poles, residual power);
    residuals are the factors with the x_k coordinate struck out.
    """
    out = []

    def rec(idx, remaining, mult, rb, rp, rpow):
        if idx == len(active):
            if remaining == 0:
                out.append((mult, tuple(rb), tuple(rp), rpow))
            return
        kind, payload = active[idx]
        if kind == "binom":
            form, (c0, c1), c = payload
            residual = _zero_at(form, k)
            res_live = any(residual)
            for d in range(remaining + 1):
                w = binomial_of(c0 if c1 == 0 else UniPoly([c0, c1]), d)
                if _is_zero(w):
                    continue
                if c < 0 and d % 2:
                    w = -w
                nrb = rb + [(residual, (c0 - d, c1))] if res_live and (c0 - d, c1) != (0, 0) else rb
                rec(idx + 1, remaining - d, mult * w, nrb, rp, rpow)
        elif kind == "pole":
            form, m, c = payload
            residual = _zero_at(form, k)
            for d in range(remaining + 1):
                w = math.comb(m + d - 1, d) * ((-c) ** d)
                rec(idx + 1, remaining - d, mult * w, rb, rp + [(residual, m + d)], rpow)
        else:  # one (l(x))^P factor with UniPoly coefficients
            form, P = payload
            c = form[k]
            residual = tuple(x if q != k else UniPoly() for q, x in enumerate(form))
            res_live = any(not x.is_zero() for x in residual)
            for d in range(min(remaining, P) + 1):
                if P - d > 0 and not res_live:
                    continue
                w = _pow(c, d) * math.comb(P, d)
                nrpow = (residual, P - d) if P - d > 0 else None
                rec(idx + 1, remaining - d, mult * w, rb, rp, nrpow)

    rec(0, target, UniPoly.constant(1) if symbolic else QQ(1), [], [], None)
    return out


class PartitionContext:
    """Everything attached to one pattern Delta+(A,B) on [1..p+q]."""

    def __init__(self, pattern: ABPattern):
        self.pattern = pattern
        self.n = pattern.n
        self.roots = delta_n_plus(pattern)
        self.rho = rho_n(self.roots, self.n)
        self.mpns = MPNSContext(pattern)
        # numerator exponent offsets: one less than the number of roots
        # leaving vertex i to the right
        self.offsets = [
            sum(1 for (a, b) in self.roots if a == i) - 1 for i in range(1, self.n)
        ]

    def signed_count(self, exps, point) -> "QQ":
        """Sum of residues over the bases containing the deformed point.

        exps are the integer numerator exponents (offsets included); the
        result is a plain rational, integral whenever the inputs are a
        genuine partition query or a Blattner term.
        """
        bases = self.mpns.ordered_bases(point)
        total = QQ(0)
        for basis in bases:
            total += iterated_residue(basis, self.roots, exps, self.n)
        return total

    def signed_poly(self, exps, point) -> UniPoly:
        """Same as signed_count with exponents affine in t; UniPoly result."""
        bases = self.mpns.ordered_bases(point)
        total = UniPoly()
        for basis in bases:
            res = iterated_residue(basis, self.roots, exps, self.n)
            total = total + (res if isinstance(res, UniPoly) else UniPoly([res]))
        return total

    def count(self, h_reduced: Sequence) -> int:
        """Exact number of ways to write h as a nonnegative root combination."""
        h = [rational(x) for x in h_reduced]
        if len(h) != self.n - 1 or not all(is_integral(x) for x in h):
            raise InvalidParameterError("h must be %d integers" % (self.n - 1))
        h_amb = ambient(h)
        run = QQ(0)
        for x in h_amb[:-1]:
            run += x
            if run < 0:
                return 0
        point = [a + b for a, b in zip(h_amb, self.rho)]
        exps = [(int(h[i] + self.offsets[i]), 0) for i in range(self.n - 1)]
        total = self.signed_count(exps, deform_vector(point, self.n))
        if not is_integral(total) or total < 0:
            raise AssertionError("residue count is not a nonnegative integer: %s" % total)
        return int(total)

    def _ray_point(self, h0, v, sample_t):
        h0a, va = ambient(h0), ambient(v)
        st = rational(sample_t)
        point = [a + st * c + b for a, c, b in zip(h0a, va, self.rho)]
        return deform_vector(point, self.n)

    def tope_polynomial(self, h0_reduced, v_reduced, sample_t) -> UniPoly:
        """Polynomial P with P(t) = count(h0 + t*v) for integer t such that
        h0 + t*v stays in the tope of the sample point h0 + sample_t*v
        (shifted by rho and deformed)."""
        h0 = [rational(x) for x in h0_reduced]
        v = [rational(x) for x in v_reduced]
        exps = [(int(h0[i] + self.offsets[i]), int(v[i])) for i in range(self.n - 1)]
        return self.signed_poly(exps, self._ray_point(h0, v, sample_t))

    def volume_polynomial(self, h0_reduced, v_reduced, sample_t) -> UniPoly:
        """Volume of the partition polytope along the ray, a polynomial in t.

        This is the top homogeneous part of the counting function on the
        tope; it goes through an independent numerator (a power of the
        pairing with h instead of binomial factors), so comparing its
        leading coefficient with tope_polynomial's is a real cross-check.
        """
        h0 = [rational(x) for x in h0_reduced]
        v = [rational(x) for x in v_reduced]
        bases = self.mpns.ordered_bases(self._ray_point(h0, v, sample_t))
        P = len(self.roots) - (self.n - 1)
        if not bases:
            return UniPoly()
        total = UniPoly()
        for basis in bases:
            vec = _tree_paths(basis, self.n)
            hforms = [UniPoly([h0[i], v[i]]) for i in range(self.n - 1)]
            form = tuple(
                _upoly_sum(hforms[i] * vec[i][kk] for i in range(self.n - 1) if vec[i][kk])
                for kk in range(self.n - 1)
            )
            res = iterated_residue(
                basis, self.roots, [(0, 0)] * (self.n - 1), self.n,
                power=(form, P) if P else None,
            )
            total = total + (res if isinstance(res, UniPoly) else UniPoly([res]))
        return total / QQ(math.factorial(P)) if P else total

    def count_bruteforce(self, h_reduced: Sequence) -> int:
        """Independent exhaustive count over explicit solutions.

        Solves the (n-1) x N root system exactly: a unimodular column basis
        fixes the dependent variables and the remaining free variables are
        enumerated under positivity and a total weight budget, the last one
        by interval intersection.
        """
        h = [rational(x) for x in h_reduced]
        if not all(is_integral(x) for x in h):
            raise InvalidParameterError("h must be integral")
        h = [int(x) for x in h]
        basis_idx, inv, free_idx, wcols = self._bruteforce_basis()
        u = _matvec(inv, h)
        if not all(is_integral(x) for x in u):
            raise AssertionError("unimodular basis gave non-integral solution")
        u = [int(x) for x in u]
        # budget: sum over roots used of (j - i) equals sum of partial sums of h
        budget = 0
        run = 0
        for x in h:
            run += x
            budget += run
        if budget < 0:
            return 0
        weights = [self.roots[j][1] - self.roots[j][0] for j in free_idx]

        def rec(pos, u_now, budget_now):
            w = wcols[pos]
            wt = weights[pos]
            if pos == len(free_idx) - 1:
                lo, hi = 0, budget_now // wt
                for a, b in zip(u_now, w):
                    if b > 0:
                        hi = min(hi, a // b)
                    elif b < 0:
                        lo = max(lo, -((-a) // b))
                    elif a < 0:
                        return 0
                return max(0, hi - lo + 1)
            total = 0
            for y in range(budget_now // wt + 1):
                total += rec(pos + 1, [a - y * b for a, b in zip(u_now, w)],
                             budget_now - y * wt)
            return total

        if not free_idx:
            return 1 if all(x >= 0 for x in u) else 0
        return rec(0, u, budget)

    def _bruteforce_basis(self):
        if not hasattr(self, "_bf_cache"):
            cols = [_reduced_root(rt, self.n) for rt in self.roots]
            idx = _independent_columns(cols, self.n - 1)
            B = [[QQ(cols[j][i]) for j in idx] for i in range(self.n - 1)]
            inv, det = _invert(B)
            if abs(det) != 1:
                raise AssertionError("root column basis is not unimodular")
            free_idx = [j for j in range(len(self.roots)) if j not in set(idx)]
            wcols = []
            for j in free_idx:
                col = _matvec(inv, cols[j])
                wcols.append([int(x) for x in col])
            self._bf_cache = (set(idx), inv, free_idx, wcols)
        return self._bf_cache


def _reduced_root(root: Root, n: int) -> list:
    v = [0] * (n - 1)
    i, j = root
    v[i - 1] += 1
    if j < n:
        v[j - 1] -= 1
    return v


def _upoly_sum(items):
    total = UniPoly()
    for x in items:
        total = total + x
    return total


def _independent_columns(cols, r):
    picked = []
    rows = []  # row-echelon accumulator
    for j, col in enumerate(cols):
        vec = [QQ(x) for x in col]
        for piv, rvec in rows:
            if vec[piv] != 0:
                f = vec[piv] / rvec[piv]
                vec = [a - f * b for a, b in zip(vec, rvec)]
        piv = next((i for i, x in enumerate(vec) if x != 0), None)
        if piv is not None:
            rows.append((piv, vec))
            picked.append(j)
            if len(picked) == r:
                break
    if len(picked) < r:
        raise InvalidParameterError("root list does not span the reduced space")
    return picked


def _invert(B):
    """Gauss-Jordan inverse with exact rationals; returns (inverse, det)."""
    r = len(B)
    M = [row[:] + [QQ(1) if i == k else QQ(0) for k in range(r)] for i, row in enumerate(B)]
    det = QQ(1)
    for c in range(r):
        piv = next(i for i in range(c, r) if M[i][c] != 0)
        if piv != c:
            M[c], M[piv] = M[piv], M[c]
            det = -det
        det *= M[c][c]
        f = M[c][c]
        M[c] = [x / f for x in M[c]]
        for i in range(r):
            if i != c and M[i][c] != 0:
                g = M[i][c]
                M[i] = [x - g * y for x, y in zip(M[i], M[c])]
    return [row[r:] for row in M], det


def _matvec(M, v):
    return [sum((a * b for a, b in zip(row, v)), QQ(0)) for row in M]
