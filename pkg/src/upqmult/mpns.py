"""Ordered bases attached to maximal proper nested sets of Delta+(A,B).

For a regular (deformed) target vector v, `ordered_bases` lists the ordered
bases ->M of the nested sets M whose basis cone contains v.  Each basis is a
spanning tree of the vertex set, listed innermost first; the highest root of
the ambient system is always last.  The list may contain repeats when
distinct nested sets share an ordered basis; downstream residue sums rely on
that multiplicity.
"""

from __future__ import annotations

from itertools import product
from typing import Dict, List, Sequence, Tuple

from .roots import (
    ABPattern,
    InvalidParameterError,
    LexNum,
    Root,
    Vector,
    delta_n_plus,
    in_positive_cone,
    noncompact_walls,
    wall_side,
    wall_value,
)

_HT = lambda r: (r[1] - r[0], -r[0])  # height order: span first, then leftmost


def highest_root(pattern: ABPattern, I: Sequence[int]) -> Root:
    """Height-maximal root of the subsystem on I; requires it irreducible."""
    roots = delta_n_plus(pattern, I)
    if not roots:
        raise InvalidParameterError("empty root subsystem on %s" % (list(I),))
    if _reducible(pattern, I):
        raise InvalidParameterError("subsystem on %s is reducible" % (list(I),))
    return max(roots, key=_HT)


def _reducible(pattern: ABPattern, I: Sequence[int]) -> bool:
    """A Delta(A,B) system is reducible iff its incidence graph is disconnected."""
    roots = delta_n_plus(pattern, I)
    verts = sorted(set([i for r in roots for i in r]))
    if not verts:
        return True
    adj: Dict[int, list] = {v: [] for v in verts}
    for i, j in roots:
        adj[i].append(j)
        adj[j].append(i)
    seen = {verts[0]}
    stack = [verts[0]]
    while stack:
        for w in adj[stack.pop()]:
            if w not in seen:
                seen.add(w)
                stack.append(w)
    return len(seen) < len(set(I))


class MPNSContext:
    """Memoizing enumerator for one ambient pattern.

    Results are cached on (I, tope signature): the list of ordered bases
    containing v depends on v only through the signs of all wall
    functionals on the subsystem, so repeated queries in a tope are free.
    """

    def __init__(self, pattern: ABPattern):
        self.pattern = pattern
        self._walls: Dict[Tuple[int, ...], list] = {}
        self._bases: Dict[tuple, list] = {}

    def walls(self, I: Tuple[int, ...]) -> list:
        if I not in self._walls:
            self._walls[I] = noncompact_walls(self.pattern, I)
        return self._walls[I]

    def ordered_bases(self, v: Vector, I: Sequence[int] | None = None) -> List[Tuple[Root, ...]]:
        idx = tuple(sorted(I)) if I is not None else tuple(range(1, self.pattern.n + 1))
        return self._rec(v, idx)

    def _rec(self, v: Vector, I: Tuple[int, ...]) -> List[Tuple[Root, ...]]:
        if len(I) == 1:
            if not v.get(I[0], LexNum([0])).is_zero():
                raise InvalidParameterError("nonzero coordinate on isolated vertex")
            return [()]
        if not in_positive_cone(v, I):
            return []
        walls = self.walls(I)
        key = (I, tuple(wall_side(L, v) for L in walls))
        hit = self._bases.get(key)
        if hit is not None:
            return hit
        A_I = tuple(i for i in I if i in set(self.pattern.A))
        B_I = tuple(i for i in I if i in set(self.pattern.B))
        if not A_I or not B_I:
            raise InvalidParameterError("subsystem on %s has no roots" % (list(I),))
        if min(len(A_I), len(B_I)) == 1:
            out = self._star_case(v, I, A_I, B_I)
        else:
            out = self._wall_recursion(v, I, walls)
        out.sort()
        self._bases[key] = out
        return out

    def _star_case(self, v, I, A_I, B_I):
        """|A| = 1 or |B| = 1: the roots themselves are the only basis."""
        center = A_I[0] if len(A_I) == 1 else B_I[0]
        for j in I:
            if j == center:
                continue
            coeff = v[j] if j < center else -v[j]
            if coeff.sign() < 0:
                return []
        roots = sorted(delta_n_plus(self.pattern, I), key=_HT)
        return [tuple(roots)]

    def _wall_recursion(self, v, I, walls):
        theta = max(delta_n_plus(self.pattern, I), key=_HT)
        theta_vec = {theta[0]: LexNum([1]), theta[1]: LexNum([-1])}
        out = []
        for L in walls:
            s_theta = wall_side(L, theta_vec)
            if s_theta == 0:
                continue
            if wall_side(L, v) != s_theta:
                continue
            t = wall_value(L, v) * s_theta  # = <L,v> / <L,theta>, <L,theta> = +-1
            proj = dict(v)
            proj[theta[0]] = proj.get(theta[0], LexNum([0])) - t
            proj[theta[1]] = proj.get(theta[1], LexNum([0])) + t
            parts = self._split(proj, I, L)
            if parts is None:
                continue
            for combo in product(*parts):
                basis = tuple(r for blk in combo for r in blk) + (theta,)
                out.append(basis)
        return out

    def _split(self, proj, I, L):
        """Bases of the two wall components, or None if either fails its cone."""
        sides = [tuple(sorted(L)), tuple(sorted(set(I) - set(L)))]
        sides.sort(key=lambda s: s[0])
        factors = []
        for S in sides:
            if len(S) == 1:
                if not proj.get(S[0], LexNum([0])).is_zero():
                    return None
                factors.append([()])
                continue
            sub = {i: proj.get(i, LexNum([0])) for i in S}
            try:
                bases = self._rec(sub, S)
            except InvalidParameterError:
                return None
            if not bases:
                return None
            factors.append(bases)
        return factors


def ordered_bases(pattern: ABPattern, v: Vector, I: Sequence[int] | None = None):
    """One-shot enumeration without a shared cache."""
    return MPNSContext(pattern).ordered_bases(v, I)
