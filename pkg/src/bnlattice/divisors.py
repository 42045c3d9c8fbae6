"""Divisors, chip-firing reduction and ranks of integer and rational divisors.

Integer divisors are tuples of ``int``; rational ones are tuples of
:class:`~fractions.Fraction`.  Ranks of rational divisors are computed from
the degree-plus formula ``r(D) = min_{nu in N_G} deg+(D - nu) - 1``, where the
infinite minimum is cut down to a finite, certified search box.
"""
from __future__ import annotations

from collections import deque
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import product
from math import ceil, floor
from typing import TYPE_CHECKING, Sequence

import numpy as np

from .errors import GenusTooSmall, NonIntegerDegree
from .graph import Multigraph, as_point, canonical_divisor, degree, genus, laplacian, modified_canonical
from .lattice import common_denominator, compositions, scaled_integers

if TYPE_CHECKING:
    from .orientations import NonSpecialSet


@dataclass(frozen=True)
class DivisorClass:
    base_vertex: int
    reduced: tuple

    @property
    def degree(self) -> int:
        return sum(self.reduced)


def deg_plus(x: Sequence) -> Fraction:
    return sum((Fraction(a) for a in x if a > 0), Fraction(0))


def _fire(G: Multigraph, D: list, f: list, S: set, times: int) -> None:
    # D <- D - times * Q 1_S
    for v in S:
        f[v] += times
        for u in range(G.n):
            k = G.mult[v][u]
            if k and u not in S:
                D[v] -= times * k
                D[u] += times * k


def _bfs_distances(G: Multigraph, q: int) -> list[int]:
    dist = [-1] * G.n
    dist[q] = 0
    queue = deque([q])
    while queue:
        v = queue.popleft()
        for u in G.neighbors(v):
            if dist[u] < 0:
                dist[u] = dist[v] + 1
                queue.append(u)
    return dist


def _unburnt(G: Multigraph, D: Sequence[int], q: int) -> set[int]:
    """Run Dhar's burning process from ``q``; return the set that does not burn."""
    unburnt = set(range(G.n)) - {q}
    burning = [0] * G.n
    frontier = [q]
    while frontier:
        v = frontier.pop()
        for u in G.neighbors(v):
            if u in unburnt:
                burning[u] += G.mult[v][u]
                if burning[u] > D[u]:
                    unburnt.discard(u)
                    frontier.append(u)
    return unburnt


def dhar_reduce(G: Multigraph, D: Sequence[int], q: int = 0):
    """Return the ``q``-reduced class of ``D`` and the firing vector ``f``.

    ``f`` satisfies ``Q f = D - reduced`` where ``Q`` is the Laplacian.
    """
    D = [int(a) for a in D]
    f = [0] * G.n
    dist = _bfs_distances(G, q)
    depth = max(dist)
    # push chips outward layer by layer until everything off q is non-negative
    for i in range(depth - 1, -1, -1):
        inner = {v for v in range(G.n) if dist[v] <= i}
        need = 0
        for v in range(G.n):
            if dist[v] == i + 1 and D[v] < 0:
                gain = sum(G.mult[v][u] for u in inner)
                need = max(need, -(D[v] // gain))
        if need:
            _fire(G, D, f, inner, need)
    while True:
        S = _unburnt(G, D, q)
        if not S:
            break
        times = None
        for v in S:
            out = sum(G.mult[v][u] for u in range(G.n) if u not in S)
            if out:
                k = D[v] // out
                times = k if times is None else min(times, k)
        _fire(G, D, f, S, times)
    return DivisorClass(q, tuple(D)), tuple(f)


def is_effective_class(G: Multigraph, D: Sequence[int], q: int = 0) -> bool:
    """True iff ``D`` is linearly equivalent to an effective divisor."""
    if sum(D) < 0:
        return False
    return dhar_reduce(G, D, q)[0].reduced[q] >= 0


def is_equivalent(G: Multigraph, D1: Sequence[int], D2: Sequence[int], q: int = 0) -> bool:
    if sum(D1) != sum(D2):
        return False
    return dhar_reduce(G, D1, q)[0] == dhar_reduce(G, D2, q)[0]


@lru_cache(maxsize=128)
def superstables(G: Multigraph, q: int = 0) -> tuple[tuple[int, ...], ...]:
    """Superstable configurations on ``V - q``, lexicographic, as full-length vectors with 0 at ``q``."""
    others = [v for v in range(G.n) if v != q]
    out = []
    for c in product(*(range(G.val(v)) for v in others)):
        D = [0] * G.n
        for v, a in zip(others, c):
            D[v] = a
        if not _unburnt(G, D, q):
            out.append(tuple(D))
    return tuple(out)


def enumerate_classes(G: Multigraph, d: int, q: int = 0) -> list[DivisorClass]:
    """One ``q``-reduced representative for every class of degree ``d``."""
    classes = []
    for c in superstables(G, q):
        D = list(c)
        D[q] = d - sum(c)
        classes.append(DivisorClass(q, tuple(D)))
    return classes


def rank_definitional(G: Multigraph, D: Sequence[int], q: int = 0) -> int:
    """Baker-Norine rank by exhausting effective divisors; exponential, test oracle only."""
    D = tuple(int(a) for a in D)
    if not is_effective_class(G, D, q):
        return -1
    r = 0
    while True:
        for E in compositions(r + 1, G.n):
            if not is_effective_class(G, tuple(a - e for a, e in zip(D, E)), q):
                return r
        r += 1


def min_deg_plus(D: Sequence, N: "NonSpecialSet") -> Fraction:
    """``min over nu in N_G of deg+(D - nu)`` by a certified box search.

    Any ``nu`` with ``deg+(D - nu) <= R`` satisfies ``nu >= D - R``
    coordinatewise, so searching ``{nu >= ceil(D - R), deg nu = g - 1}`` for
    growing ``R`` is exhaustive once the best value found is ``<= R``.
    """
    D = as_point(D)
    n = len(D)
    g1 = N.genus - 1
    best = min(deg_plus([a - b for a, b in zip(D, nu)]) for nu in N.reps)
    den = common_denominator(D)
    scaled = scaled_integers(D, den)
    R = max(Fraction(0), degree(D) - g1)
    while True:
        radius = min(R, best)
        lo = np.array([ceil(a - radius) for a in D], dtype=np.int64)
        cand = N.members(lo + compositions(g1 - int(lo.sum()), n))
        if len(cand):
            cost = np.maximum(scaled - den * cand, 0).sum(axis=1)
            best = min(best, Fraction(int(cost.min()), den))
        if best <= radius:
            return best
        R += 1


def rank_r(G: Multigraph, D: Sequence, N: "NonSpecialSet") -> Fraction:
    """Rank of an R-divisor (exact rational)."""
    return min_deg_plus(D, N) - 1


def rank_bn(G: Multigraph, D: Sequence[int], N: "NonSpecialSet") -> int:
    r = rank_r(G, D, N)
    if r.denominator != 1:
        raise NonIntegerDegree(f"rank_bn needs an integer divisor, got {D}")
    return int(r)


def modified_rank(G: Multigraph, D: Sequence, N: "NonSpecialSet") -> Fraction:
    return rank_r(G, [Fraction(a) - 1 for a in D], N)


def sigma_contains(G: Multigraph, D: Sequence, N: "NonSpecialSet") -> bool:
    """Whether some ``nu + (1,...,1)`` with ``nu in N_G`` is dominated by ``D``."""
    D = as_point(D)
    hi = np.array([floor(a - 1) for a in D], dtype=np.int64)
    slack = int(hi.sum()) - (N.genus - 1)
    if slack < 0:
        return False
    return bool(len(N.members(hi - compositions(slack, len(D)))))


def _require_genus(G: Multigraph) -> int:
    g = genus(G)
    if g < 1:
        raise GenusTooSmall(f"genus {g} < 1")
    return g


def rr_defect(G: Multigraph, D: Sequence, N: "NonSpecialSet") -> Fraction:
    """``r(D) - r(K - D) - (deg D - (g - 1))``; zero by Riemann-Roch."""
    g = _require_genus(G)
    D = as_point(D)
    K = canonical_divisor(G)
    dual = [k - a for k, a in zip(K, D)]
    return rank_r(G, D, N) - rank_r(G, dual, N) - (degree(D) - (g - 1))


def rr_defect_v1(G: Multigraph, D: Sequence, N: "NonSpecialSet") -> Fraction:
    """Same identity for the modified rank, with ``sum val(v)(v)`` and ``g_R = m + 1``."""
    _require_genus(G)
    D = as_point(D)
    Kt = modified_canonical(G)
    dual = [k - a for k, a in zip(Kt, D)]
    return modified_rank(G, D, N) - modified_rank(G, dual, N) - (degree(D) - G.m)


def nearest_integer(x) -> int:
    """Round half toward +infinity."""
    return floor(Fraction(x) + Fraction(1, 2))


def round_divisor(G: Multigraph, D: Sequence, v0: int = 0) -> tuple[int, ...]:
    D = as_point(D)
    d = degree(D)
    if d.denominator != 1:
        raise NonIntegerDegree(f"degree {d} is not an integer")
    out = [nearest_integer(a) for a in D]
    out[v0] = int(d) - (sum(out) - out[v0])
    return tuple(out)


def gonality(G: Multigraph, N: "NonSpecialSet") -> int:
    """Least degree of a divisor of rank at least one."""
    g = _require_genus(G)
    for d in range(1, g + 2):
        if any(rank_bn(G, c.reduced, N) >= 1 for c in enumerate_classes(G, d, N.base_vertex)):
            return d
    raise AssertionError("no rank-one class up to degree g+1")  # impossible by Riemann-Roch


def apply_laplacian(G: Multigraph, f: Sequence[int]) -> tuple[int, ...]:
    Q = laplacian(G)
    return tuple(sum(Q[i][j] * f[j] for j in range(G.n)) for i in range(G.n))
