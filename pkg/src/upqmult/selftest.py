"""Randomized self-test suites.

Each suite cross-checks the residue pipeline against an independent
brute-force oracle or a structural invariant, on randomized inputs drawn
from a seeded generator.  On a mismatch the report carries a minimal
reproducer (the exact pattern / parameters), so failures can be replayed
with the library API directly.
"""

from __future__ import annotations

import random
from itertools import combinations

from .blattner import (
    ChamberData,
    HCParamG,
    HCParamK,
    _weyl_group,
    discretemult,
    lowest_k_type,
    multiplicity_direction,
)
from .exact import INF, QQ, is_integral
from .partition import PartitionContext
from .roots import ABPattern, relabel


def blattner_bruteforce(mu_blocks, lam_blocks, p: int, q: int) -> int:
    """Blattner sum with every partition count done by explicit enumeration."""
    lam = HCParamG.parse(lam_blocks, p, q)
    mu = HCParamK.parse(mu_blocks, p, q)
    if sum(lam.full, QQ(0)) != sum(mu.full, QQ(0)):
        return 0
    cd = ChamberData(lam)
    n = cd.n
    total = 0
    for sign, w in _weyl_group(p, q):
        wmu = relabel([mu.full[i] for i in w], cd.pi)
        h = [wmu[i] - cd.lam_rel[i] - cd.ctx.rho[i] for i in range(n - 1)]
        assert all(is_integral(x) for x in h)
        total += sign * cd.ctx.count_bruteforce([int(x) for x in h])
    return abs(total)


def all_patterns(n: int):
    """One ABPattern per distinct root system Delta+(A,B) on [1..n].

    (A,B) and (B,A) give the same root list, so only one of each pair is
    kept.
    """
    seen = set()
    out = []
    for p in range(1, n):
        for A in combinations(range(1, n + 1), p):
            B = tuple(sorted(set(range(1, n + 1)) - set(A)))
            if (B, A) in seen:
                continue
            seen.add((A, B))
            out.append(ABPattern(A, n))
    return out


def random_lambda(rng: random.Random, p: int, q: int, bound: int):
    n = p + q
    vals = rng.sample(range(-2 * bound - n, 2 * bound + n + 1), n)
    if n % 2 == 0:
        vals = [QQ(2 * v + 1, 2) for v in vals]
    return [vals[:p], vals[p:]]


def random_mu_near_lowest(rng: random.Random, lam_blocks, p: int, q: int,
                          bound: int):
    """lowest K-type plus a random integer drift with coordinate sum zero."""
    low = lowest_k_type(lam_blocks, p, q)
    n = p + q
    for _ in range(50):
        pert = [rng.randint(-bound, bound) for _ in range(n - 1)]
        pert.append(-sum(pert))
        flat = [x + d for x, d in zip(low[0] + low[1], pert)]
        a, b = flat[:p], flat[p:]
        if len(set(a)) == p and len(set(b)) == q:
            return [a, b]
    return None


def _suite_partition(rng, max_pq, bound, samples_per_pattern=60):
    failures = []
    checked = 0
    for n in range(2, max_pq + 1):
        for pattern in all_patterns(n):
            ctx = PartitionContext(pattern)
            for _ in range(samples_per_pattern):
                h = [rng.randint(-bound, bound) for _ in range(n - 1)]
                got, want = ctx.count(h), ctx.count_bruteforce(h)
                checked += 1
                if got != want:
                    failures.append(
                        "partition mismatch: pattern=%s h=%s residue=%d oracle=%d"
                        % (pattern.word(), h, got, want))
                    return failures, checked
    return failures, checked


def _suite_blattner(rng, max_pq, bound, samples=25):
    failures = []
    checked = 0
    for p in range(1, max_pq):
        for q in range(1, max_pq - p + 1):
            if p + q < 2:
                continue
            for _ in range(samples):
                lam = random_lambda(rng, p, q, bound)
                mu = random_mu_near_lowest(rng, lam, p, q, bound)
                if mu is None:
                    continue
                got = discretemult(mu, lam, p, q).multiplicity
                want = blattner_bruteforce(mu, lam, p, q)
                checked += 1
                if got != want:
                    failures.append(
                        "blattner mismatch: lam=%s mu=%s p=%d q=%d "
                        "residue=%d oracle=%d" % (lam, mu, p, q, got, want))
                    return failures, checked
    return failures, checked


def _suite_lowest(rng, max_pq, bound, samples=12):
    failures = []
    checked = 0
    for p in range(1, max_pq):
        for q in range(1, max_pq - p + 1):
            for _ in range(samples):
                lam = random_lambda(rng, p, q, bound)
                low = lowest_k_type(lam, p, q)
                m = discretemult(low, lam, p, q).multiplicity
                checked += 1
                if m != 1:
                    failures.append(
                        "lowest K-type multiplicity %d != 1 for lam=%s p=%d q=%d"
                        % (m, lam, p, q))
                    return failures, checked
    return failures, checked


def _suite_direction(rng, max_pq, bound, samples=6):
    """Degree bound plus ray consistency of the piecewise table."""
    failures = []
    checked = 0
    for p in range(1, max_pq):
        for q in range(1, max_pq - p + 1):
            if p + q < 3:
                continue
            n = p + q
            cap = p * q - (n - 1)
            for _ in range(samples):
                lam = random_lambda(rng, p, q, bound)
                # keep the ray inside the closed dominant K-chamber: blocks
                # weakly decreasing, so mu0 + t*v stays dominant for t >= 0
                v = [rng.randint(-2, 2) for _ in range(n - 1)]
                v.append(-sum(v))
                vb = [sorted(v[:p], reverse=True), sorted(v[p:], reverse=True)]
                table = multiplicity_direction(lam, vb, p, q)
                low = lowest_k_type(lam, p, q)
                repro = "lam=%s v=%s p=%d q=%d" % (lam, vb, p, q)
                bad_deg = [pc for pc, _, _ in table.pieces if pc.degree() > cap]
                if bad_deg:
                    failures.append("direction degree > %d for %s" % (cap, repro))
                    return failures, checked
                for t in range(0, table.max_finite_endpoint() + 4):
                    mu = [[x + t * y for x, y in zip(low[0], vb[0])],
                          [x + t * y for x, y in zip(low[1], vb[1])]]
                    if any(len(set(blk)) != len(blk) for blk in mu):
                        continue
                    got, want = table.eval(t), discretemult(mu, lam, p, q).multiplicity
                    checked += 1
                    if got != want:
                        failures.append(
                            "direction table(%d)=%s but discretemult=%d for %s"
                            % (t, got, want, repro))
                        return failures, checked
    return failures, checked


def run_selftest(max_pq: int = 4, bound: int = 4, seed: int = 1) -> dict:
    rng = random.Random(seed)
    lines = []
    passed = True
    suites = [
        ("partition oracle", _suite_partition),
        ("blattner oracle", _suite_blattner),
        ("lowest K-type = 1", _suite_lowest),
        ("direction invariants", _suite_direction),
    ]
    for name, suite in suites:
        failures, checked = suite(rng, max_pq, bound)
        if failures:
            passed = False
            lines.append("FAIL %s (%d checks)" % (name, checked))
            lines.extend("  " + f for f in failures)
        else:
            lines.append("ok   %s (%d checks)" % (name, checked))
    lines.append("selftest %s" % ("PASSED" if passed else "FAILED"))
    return {"passed": passed, "lines": lines}
