"""Acyclic orientations with a unique sink and the non-special set they generate."""
from __future__ import annotations

from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from .divisors import is_effective_class, is_equivalent
from .errors import ConsistencyError, GenusTooSmall
from .graph import Multigraph, Point, canonical_divisor, genus, laplacian_lattice_basis, project


@dataclass(frozen=True)
class Orientation:
    """Each adjacent pair carries one direction; ``arcs`` holds ``(tail, head)``."""

    n: int
    arcs: tuple[tuple[int, int], ...]
    indeg: tuple[int, ...]


def _orientation_from_order(G: Multigraph, order: list[int]) -> Orientation:
    pos = {v: i for i, v in enumerate(order)}
    arcs = []
    indeg = [0] * G.n
    for u, v, k in G.edges:
        tail, head = (u, v) if pos[u] > pos[v] else (v, u)
        arcs.append((tail, head))
        indeg[head] += k
    return Orientation(G.n, tuple(arcs), tuple(indeg))


def acyclic_orientations_with_sink(G: Multigraph, q: int = 0) -> list[Orientation]:
    """All acyclic orientations whose only sink is ``q``.

    Such an orientation is induced by an order starting at ``q`` in which
    every later vertex has an earlier neighbour; edges point to the earlier
    endpoint.  Orders are generated lexicographically and deduplicated.
    """
    seen: dict[tuple, Orientation] = {}
    order = [q]
    placed = [False] * G.n
    placed[q] = True

    def extend():
        if len(order) == G.n:
            o = _orientation_from_order(G, order)
            seen.setdefault(o.arcs, o)
            return
        for v in range(G.n):
            if not placed[v] and any(placed[u] for u in G.neighbors(v)):
                placed[v] = True
                order.append(v)
                extend()
                order.pop()
                placed[v] = False

    extend()
    return list(seen.values())


def orientation_divisor(O: Orientation) -> tuple[int, ...]:
    return tuple(d - 1 for d in O.indeg)


@dataclass(frozen=True)
class NonSpecialSet:
    """Orbit representatives of the degree ``g-1`` divisors of rank ``-1``."""

    graph: Multigraph
    base_vertex: int
    reps: tuple[tuple[int, ...], ...]
    lattice_basis: tuple[tuple[int, ...], ...]
    _mask: np.ndarray = field(repr=False, compare=False)

    @property
    def genus(self) -> int:
        return genus(self.graph)

    def members(self, points: np.ndarray) -> np.ndarray:
        """Rows of ``points`` (all of degree ``g-1``) that lie in the non-special set."""
        points = np.asarray(points, dtype=np.int64)
        if not len(points):
            return points
        return points[self._mask[self.graph.cosets.codes(points)]]

    def contains(self, D) -> bool:
        if sum(D) != self.genus - 1:
            return False
        return bool(len(self.members(np.array([D]))))


@lru_cache(maxsize=64)
def nonspecial_set(G: Multigraph, q: int = 0) -> NonSpecialSet:
    g = genus(G)
    if g < 1:
        raise GenusTooSmall(f"genus {g} < 1")
    reps = tuple(sorted({orientation_divisor(O) for O in acyclic_orientations_with_sink(G, q)}))
    for nu in reps:
        if is_effective_class(G, nu, q):
            raise ConsistencyError(f"orientation divisor {nu} is effective")
    idx = G.cosets
    codes = idx.codes(np.array(reps))
    if len(set(codes.tolist())) != len(reps):
        raise ConsistencyError("orientation divisors are not pairwise inequivalent")
    mask = np.zeros(idx.order, dtype=bool)
    mask[codes] = True
    mask.setflags(write=False)
    return NonSpecialSet(G, q, reps, tuple(laplacian_lattice_basis(G)), mask)


def reps_pairwise_inequivalent(N: NonSpecialSet) -> bool:
    """Slow check through reduced forms; independent of the coset codes."""
    reps = N.reps
    return not any(
        is_equivalent(N.graph, reps[i], reps[j], N.base_vertex)
        for i in range(len(reps))
        for j in range(i + 1, len(reps))
    )


def crit_points(G: Multigraph, q: int = 0) -> tuple[list[Point], list[Point]]:
    """Local maxima of the simplex distance functions, as orbit representatives."""
    N = nonspecial_set(G, q)
    upper = [project(nu, 0) for nu in N.reps]
    k0 = project(canonical_divisor(G), 0)
    lower = [tuple(a - b for a, b in zip(p, k0)) for p in upper]
    return upper, lower
