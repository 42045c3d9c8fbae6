"""Finite loopless multigraphs and their Laplacian lattices.

Vertices are ``0..n-1``.  Divisors and points are plain tuples indexed by
vertex; rational coordinates are :class:`fractions.Fraction`.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property
from itertools import combinations
from math import ceil
from typing import Iterable, Sequence

from .errors import BadScale, BadVertexIndex, DisconnectedGraph, LoopEdge
from .lattice import CosetIndex, bareiss_determinant, smith_normal_form

Divisor = tuple  # tuple[int, ...]
Point = tuple  # tuple[Fraction | int, ...]


@dataclass(frozen=True)
class Multigraph:
    n: int
    mult: tuple  # symmetric n x n tuple of tuples, zero diagonal
    name: str = field(default="", compare=False)

    @property
    def m(self) -> int:
        return sum(self.mult[u][v] for u, v in combinations(range(self.n), 2))

    @property
    def edges(self) -> list[tuple[int, int, int]]:
        return [(u, v, self.mult[u][v]) for u, v in combinations(range(self.n), 2) if self.mult[u][v]]

    def val(self, v: int) -> int:
        return sum(self.mult[v])

    def neighbors(self, v: int) -> list[int]:
        return [u for u in range(self.n) if self.mult[v][u]]

    @cached_property
    def valencies(self) -> tuple[int, ...]:
        return tuple(sum(row) for row in self.mult)

    @cached_property
    def cosets(self) -> CosetIndex:
        return CosetIndex(laplacian_lattice_basis(self))

    def __repr__(self):
        label = f" {self.name}" if self.name else ""
        return f"<Multigraph{label} n={self.n} m={self.m}>"


def new_multigraph(n: int, edges: Iterable[Sequence[int]], name: str = "") -> Multigraph:
    """Build a validated multigraph from ``(u, v)`` or ``(u, v, multiplicity)`` entries."""
    if n < 2:
        raise BadVertexIndex(f"need at least 2 vertices, got {n}")
    mult = [[0] * n for _ in range(n)]
    for e in edges:
        u, v = int(e[0]), int(e[1])
        k = int(e[2]) if len(e) > 2 else 1
        if not (0 <= u < n and 0 <= v < n):
            raise BadVertexIndex(f"edge ({u}, {v}) out of range for n={n}")
        if u == v:
            raise LoopEdge(f"loop at vertex {u}")
        if k < 1:
            raise BadVertexIndex(f"edge ({u}, {v}) has multiplicity {k} < 1")
        mult[u][v] += k
        mult[v][u] += k
    seen = {0}
    stack = [0]
    while stack:
        u = stack.pop()
        for v in range(n):
            if mult[u][v] and v not in seen:
                seen.add(v)
                stack.append(v)
    if len(seen) != n:
        missing = sorted(set(range(n)) - seen)
        raise DisconnectedGraph(f"vertices {missing} unreachable from 0")
    return Multigraph(n, tuple(tuple(row) for row in mult), name)


def genus(G: Multigraph) -> int:
    return G.m - G.n + 1


def laplacian(G: Multigraph) -> list[list[int]]:
    return [[G.val(u) if u == v else -G.mult[u][v] for v in range(G.n)] for u in range(G.n)]


def laplacian_lattice_basis(G: Multigraph) -> list[tuple[int, ...]]:
    """First ``n-1`` Laplacian rows; they generate ``L_G``."""
    return [tuple(row) for row in laplacian(G)[:-1]]


def spanning_tree_count(G: Multigraph, q: int = 0) -> int:
    """Matrix-tree theorem: any principal ``(n-1)``-minor of the Laplacian."""
    Q = laplacian(G)
    keep = [v for v in range(G.n) if v != q]
    return bareiss_determinant([[Q[i][j] for j in keep] for i in keep])


def lattice_index(G: Multigraph) -> int:
    """``[A_{n-1} : L_G]`` as the product of the nonzero Smith invariants."""
    diag, _, _ = smith_normal_form(laplacian(G))
    out = 1
    for d in diag:
        if d:
            out *= d
    return out


def canonical_divisor(G: Multigraph) -> Divisor:
    return tuple(v - 2 for v in G.valencies)


def modified_canonical(G: Multigraph) -> Divisor:
    return tuple(G.valencies)


def stretch_factor(G: Multigraph) -> int:
    n = G.n
    return max(ceil(Fraction(n * n + n - 1, G.m)), 1)


def is_dense(G: Multigraph) -> bool:
    return G.m > G.n * G.n + G.n - 1


def scale_graph(G: Multigraph, beta: int) -> Multigraph:
    if int(beta) != beta or beta < 1:
        raise BadScale(f"scale must be an integer >= 1, got {beta}")
    name = f"{beta}*{G.name}" if G.name and beta != 1 else G.name
    return Multigraph(G.n, tuple(tuple(beta * k for k in row) for row in G.mult), name)


def degree(p: Sequence) -> Fraction:
    return sum((Fraction(x) for x in p), Fraction(0))


def as_point(p: Iterable) -> Point:
    return tuple(Fraction(x) for x in p)


def project(p: Sequence, k) -> Point:
    """Shift ``p`` along ``(1,...,1)`` onto the hyperplane of degree ``k``."""
    shift = (Fraction(k) - degree(p)) / len(p)
    return tuple(Fraction(x) + shift for x in p)


# -- named families ---------------------------------------------------------

def complete_graph(n: int) -> Multigraph:
    return new_multigraph(n, combinations(range(n), 2), name=f"K{n}")


def banana(n: int, m: int) -> Multigraph:
    """Two vertices joined by ``m`` parallel edges (``n`` must be 2)."""
    if n != 2:
        raise BadVertexIndex("banana graphs have exactly two vertices")
    return new_multigraph(2, [(0, 1, m)], name=f"banana{m}")


def cycle_graph(n: int) -> Multigraph:
    return new_multigraph(n, [(i, (i + 1) % n) for i in range(n)], name=f"C{n}")


def complete_bipartite(a: int, b: int) -> Multigraph:
    edges = [(i, a + j) for i in range(a) for j in range(b)]
    return new_multigraph(a + b, edges, name=f"K{a},{b}")


def wheel_graph(spokes: int) -> Multigraph:
    rim = [(1 + i, 1 + (i + 1) % spokes) for i in range(spokes)]
    return new_multigraph(spokes + 1, rim + [(0, 1 + i) for i in range(spokes)], name=f"W{spokes}")


def prism_graph() -> Multigraph:
    edges = [(0, 1), (1, 2), (2, 0), (3, 4), (4, 5), (5, 3), (0, 3), (1, 4), (2, 5)]
    return new_multigraph(6, edges, name="prism")


# -- text format --------------------------------------------------------------

class GraphParseError(ValueError):
    def __init__(self, line: int, message: str):
        super().__init__(f"line {line}: {message}")
        self.line = line


def parse_graph(text: str, name: str = "") -> Multigraph:
    """Parse ``graph <n>`` followed by ``e <u> <v> [mult]`` lines."""
    n = None
    edges = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        try:
            if n is None:
                if parts[0] != "graph" or len(parts) != 2:
                    raise GraphParseError(lineno, "expected 'graph <n>'")
                n = int(parts[1])
            elif parts[0] == "e" and len(parts) in (3, 4):
                edges.append(tuple(int(x) for x in parts[1:]))
            else:
                raise GraphParseError(lineno, f"unrecognised line {raw!r}")
        except ValueError as exc:
            if isinstance(exc, GraphParseError):
                raise
            raise GraphParseError(lineno, str(exc)) from None
    if n is None:
        raise GraphParseError(0, "missing 'graph <n>' header")
    return new_multigraph(n, edges, name=name)


def format_graph(G: Multigraph) -> str:
    lines = [f"graph {G.n}"]
    lines += [f"e {u} {v} {k}" for u, v, k in G.edges]
    return "\n".join(lines) + "\n"
