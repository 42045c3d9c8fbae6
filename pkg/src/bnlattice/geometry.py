"""Polyhedral gauges on the hyperplanes ``H_d`` and distances to lattice-periodic targets.

A gauge is the Minkowski functional of a convex body ``C`` in ``H_0``:
``d_C(p, q) = min {mu >= 0 : q - p in mu C}``.  Supported bodies are the
standard simplex ``S = {y in H_0 : y_i >= -1}``, its negative, the sums
``alpha S + alpha_bar (-S)`` and the l1 unit ball of ``H_0``.

All values are exact rationals.  Searches over periodic targets use a float
prefilter only to discard candidates that are far from optimal; the
reported minimum is always recomputed exactly.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, floor
from typing import Sequence

import numpy as np

from .divisors import enumerate_classes, rank_bn
from .errors import BadGauge, ConsistencyError, DegreeMismatch, GenusTooSmall
from .graph import (
    Multigraph,
    Point,
    as_point,
    canonical_divisor,
    degree,
    genus,
    laplacian,
    laplacian_lattice_basis,
    project,
)
from .lattice import box_points, common_denominator, scaled_integers
from .orientations import NonSpecialSet, crit_points

SIMPLEX = "simplex"
COSIMPLEX = "cosimplex"
MINKOWSKI = "minkowski"
ELL1 = "ell1"


@dataclass(frozen=True)
class Gauge:
    kind: str
    alpha: Fraction = Fraction(0)
    alpha_bar: Fraction = Fraction(0)

    def __post_init__(self):
        if self.kind not in (SIMPLEX, COSIMPLEX, MINKOWSKI, ELL1):
            raise BadGauge(f"unknown gauge kind {self.kind!r}")
        if self.kind == MINKOWSKI:
            if self.alpha < 0 or self.alpha_bar < 0 or (self.alpha == 0 and self.alpha_bar == 0):
                raise BadGauge(f"need alpha, alpha_bar >= 0 not both zero, got {self.alpha}, {self.alpha_bar}")

    @classmethod
    def simplex(cls) -> "Gauge":
        return cls(SIMPLEX)

    @classmethod
    def cosimplex(cls) -> "Gauge":
        return cls(COSIMPLEX)

    @classmethod
    def ell1(cls) -> "Gauge":
        return cls(ELL1)

    @classmethod
    def minkowski(cls, alpha, alpha_bar) -> "Gauge":
        return cls(MINKOWSKI, Fraction(alpha), Fraction(alpha_bar))

    def coordinate_bounds(self, n: int) -> tuple[Fraction, Fraction]:
        """``(lo, hi)`` with ``-lo <= y_i <= hi`` for every ``y`` in the unit body."""
        if self.kind == SIMPLEX:
            return Fraction(1), Fraction(n - 1)
        if self.kind == COSIMPLEX:
            return Fraction(n - 1), Fraction(1)
        if self.kind == ELL1:
            return Fraction(1, 2), Fraction(1, 2)
        a, b = self.alpha, self.alpha_bar
        return b * (n - 1) + a, a * (n - 1) + b

    def __str__(self):
        if self.kind == MINKOWSKI:
            return f"P:{self.alpha}:{self.alpha_bar}"
        return self.kind


def _difference(p: Sequence, q: Sequence) -> Point:
    if len(p) != len(q):
        raise DegreeMismatch(f"length {len(p)} != {len(q)}")
    p, q = as_point(p), as_point(q)
    if degree(p) != degree(q):
        raise DegreeMismatch(f"degrees {degree(p)} and {degree(q)} differ")
    return tuple(b - a for a, b in zip(p, q))


def simplicial_distance(p: Sequence, q: Sequence, which: str = SIMPLEX) -> Fraction:
    x = _difference(p, q)
    if which == SIMPLEX:
        return abs(min(x))
    if which == COSIMPLEX:
        return abs(max(x))
    raise BadGauge(f"not a simplex: {which!r}")


def _first_root(terms) -> Fraction:
    """Least ``t >= 0`` with ``sum_i max(A_i(t), B_i(t)) <= 0``.

    Each ``A_i``, ``B_i`` is an affine pair ``(c0, c1)`` meaning ``c0 + c1 t``;
    the sum must be nonincreasing and eventually non-positive.
    """
    def f(t):
        return sum(max(a0 + a1 * t, b0 + b1 * t) for (a0, a1), (b0, b1) in terms)

    if f(Fraction(0)) <= 0:
        return Fraction(0)
    cuts = {Fraction(0)}
    for (a0, a1), (b0, b1) in terms:
        if a1 != b1:
            t = Fraction(b0 - a0) / (a1 - b1)
            if t > 0:
                cuts.add(t)
    cuts = sorted(cuts)
    prev, fprev = cuts[0], f(cuts[0])
    for t in cuts[1:]:
        ft = f(t)
        if ft <= 0:
            return prev + fprev * (t - prev) / (fprev - ft)
        prev, fprev = t, ft
    slope = f(prev + 1) - fprev
    if slope >= 0:
        raise ConsistencyError("piecewise-linear function never reaches zero")
    return prev - fprev / slope


def gauge_distance(gauge: Gauge, p: Sequence, q: Sequence) -> Fraction:
    x = _difference(p, q)
    if gauge.kind in (SIMPLEX, COSIMPLEX):
        return simplicial_distance(p, q, gauge.kind)
    if gauge.kind == ELL1:
        return sum((abs(a) for a in x), Fraction(0))
    a, b = gauge.alpha, gauge.alpha_bar
    if b == 0:
        return abs(min(x)) / a
    if a == 0:
        return abs(max(x)) / b
    if a == b:
        return sum((c for c in x if c > 0), Fraction(0)) / (len(x) * a)
    # x in mu P  iff  sum_i max(-mu a, x_i - mu b) <= 0
    return _first_root([((Fraction(0), -a), (c, -b)) for c in x])


def gauge_distance_bisect(gauge: Gauge, p: Sequence, q: Sequence) -> Fraction:
    """Reference implementation for Minkowski gauges: bisection plus denominator recovery."""
    x = _difference(p, q)
    a, b = gauge.alpha, gauge.alpha_bar
    n = len(x)
    L = common_denominator(x) * common_denominator([a, b])
    dmax = L * n * max(a.numerator, b.numerator) * max(a.denominator, b.denominator)

    def feasible(mu):
        return sum(max(-mu * a, c - mu * b) for c in x) <= 0

    lo, hi = Fraction(0), Fraction(1)
    if feasible(lo):
        return lo
    while not feasible(hi):
        lo, hi = hi, 2 * hi
    width = Fraction(1, 2 * dmax * dmax)
    while hi - lo >= width:
        mid = (lo + hi) / 2
        if feasible(mid):
            hi = mid
        else:
            lo = mid
    return ((lo + hi) / 2).limit_denominator(dmax)


def vertices_P(n: int, alpha, alpha_bar) -> list[Point]:
    """The ``n(n-1)`` vertices ``alpha b_i - alpha_bar b_j`` of ``alpha S + alpha_bar (-S)``."""
    a, b = Fraction(alpha), Fraction(alpha_bar)
    if a <= 0 or b <= 0:
        raise BadGauge("vertices_P needs alpha, alpha_bar > 0")
    out = []
    for i in range(n):
        for j in range(n):
            if i != j:
                w = [-a + b] * n
                w[i] = a * (n - 1) + b
                w[j] = -a - b * (n - 1)
                out.append(tuple(w))
    return out


def vertex_label(n: int, index: int) -> tuple[int, int]:
    """``(i, j)`` for the ``index``-th entry of :func:`vertices_P`."""
    i, r = divmod(index, n - 1)
    return i, r + (r >= i)


# -- vectorised distances -----------------------------------------------------

def _float_distances(gauge: Gauge, X: np.ndarray) -> np.ndarray:
    """Approximate gauge values of the rows of ``X`` (floats)."""
    if gauge.kind == SIMPLEX:
        return np.maximum(-X.min(axis=1), 0.0)
    if gauge.kind == COSIMPLEX:
        return np.maximum(X.max(axis=1), 0.0)
    if gauge.kind == ELL1:
        return np.abs(X).sum(axis=1)
    a, b = float(gauge.alpha), float(gauge.alpha_bar)
    if b == 0:
        return np.maximum(-X.min(axis=1), 0.0) / a
    if a == 0:
        return np.maximum(X.max(axis=1), 0.0) / b
    lo = np.zeros(len(X))
    hi = np.maximum(np.maximum(-X.min(axis=1) / a, X.max(axis=1) / b), 0.0) + 1e-12
    for _ in range(60):
        mid = (lo + hi) / 2
        f = np.maximum(-mid[:, None] * a, X - mid[:, None] * b).sum(axis=1)
        ok = f <= 0
        hi = np.where(ok, mid, hi)
        lo = np.where(ok, lo, mid)
    return hi


def _exact_integer_distances(gauge: Gauge, X: np.ndarray, den: int) -> list[Fraction] | None:
    """Exact values when ``X = den * x`` is integral and the gauge is piecewise closed form."""
    if gauge.kind == SIMPLEX:
        v = np.maximum(-X.min(axis=1), 0)
    elif gauge.kind == COSIMPLEX:
        v = np.maximum(X.max(axis=1), 0)
    elif gauge.kind == ELL1:
        v = np.abs(X).sum(axis=1)
    else:
        return None
    return [Fraction(int(c), den) for c in v]


# -- periodic targets ---------------------------------------------------------

@dataclass(frozen=True)
class DiscreteTarget:
    """``offset + {z in Z^n : deg z = int_degree, z mod L_G in cosets}``."""

    graph: Multigraph
    offset: Point
    int_degree: int
    mask: np.ndarray
    points: np.ndarray  # one integer point per coset

    @property
    def degree(self) -> Fraction:
        return degree(self.offset) + self.int_degree

    @property
    def reps(self) -> list[Point]:
        return [tuple(o + int(c) for o, c in zip(self.offset, z)) for z in self.points]

    def contains(self, p: Sequence) -> bool:
        z = [Fraction(a) - o for a, o in zip(p, self.offset)]
        if any(c.denominator != 1 for c in z) or sum(z) != self.int_degree:
            return False
        return bool(self.mask[self.graph.cosets.code([int(c) for c in z])])


def target_from_points(G: Multigraph, points: Sequence[Sequence]) -> DiscreteTarget:
    """Periodic target generated by ``points + L_G``; the points must differ by integer vectors."""
    pts = [as_point(p) for p in points]
    first = pts[0]
    offset = tuple(c - floor(c) for c in first)
    ints = []
    for p in pts:
        z = [c - o for c, o in zip(p, offset)]
        if any(c.denominator != 1 for c in z):
            raise DegreeMismatch("target points are not congruent modulo Z^n")
        ints.append([int(c) for c in z])
    degs = {sum(z) for z in ints}
    if len(degs) != 1:
        raise DegreeMismatch("target points have different degrees")
    ints = np.array(ints, dtype=np.int64)
    codes = G.cosets.codes(ints)
    _, first_of_each = np.unique(codes, return_index=True)
    ints = ints[np.sort(first_of_each)]
    mask = np.zeros(G.cosets.order, dtype=bool)
    mask[codes] = True
    mask.setflags(write=False)
    ints.setflags(write=False)
    return DiscreteTarget(G, offset, degs.pop(), mask, ints)


def nonspecial_target(N: NonSpecialSet) -> DiscreteTarget:
    return target_from_points(N.graph, N.reps)


def crit_targets(G: Multigraph, q: int = 0) -> tuple[DiscreteTarget, DiscreteTarget]:
    upper, lower = crit_points(G, q)
    return target_from_points(G, upper), target_from_points(G, lower)


def lattice_target(G: Multigraph) -> DiscreteTarget:
    return target_from_points(G, [(0,) * G.n])


def _local_descent(gauge, T, P, z):
    """Greedy improvement of an integer target point by Laplacian moves (heuristic upper bound)."""
    moves = np.array(laplacian(T.graph), dtype=np.int64)
    moves = np.concatenate([moves, -moves])
    off = np.array([float(o) for o in T.offset])
    p = np.array([float(c) for c in P])
    cur = z
    best = _float_distances(gauge, (off + cur - p)[None, :])[0]
    while True:
        cand = cur + moves
        vals = _float_distances(gauge, off + cand - p)
        k = int(vals.argmin())
        if vals[k] >= best - 1e-12:
            return cur
        cur, best = cand[k], vals[k]


def h_value(gauge: Gauge, T: DiscreteTarget, p: Sequence) -> Fraction:
    """``min over t in T of d(p, t)``, exact."""
    return h_value_with_point(gauge, T, p)[0]


def h_value_with_point(gauge: Gauge, T: DiscreteTarget, p: Sequence):
    P = as_point(p)
    n = len(P)
    if len(P) != T.graph.n or degree(P) != T.degree:
        raise DegreeMismatch(f"point of degree {degree(P)} against target of degree {T.degree}")
    # upper bound: nearest coset representative, improved greedily
    shift_f = np.array([float(o - c) for o, c in zip(T.offset, P)])
    z = T.points[int(_float_distances(gauge, T.points + shift_f).argmin())]
    z = _local_descent(gauge, T, P, z)
    ub_point = tuple(o + int(c) for o, c in zip(T.offset, z))
    ub = gauge_distance(gauge, P, ub_point)
    if ub == 0:
        return ub, ub_point
    lo_c, hi_c = gauge.coordinate_bounds(n)
    # t - p has coordinates in [-ub*lo_c, ub*hi_c]
    base = [c - o for c, o in zip(P, T.offset)]
    lo = [ceil(b - ub * lo_c) for b in base]
    hi = [floor(b + ub * hi_c) for b in base]
    best, best_point = ub, ub_point
    den = common_denominator(list(P) + list(T.offset))
    shift = scaled_integers([o - c for o, c in zip(T.offset, P)], den)
    for Z in _chunked_box(lo, hi, T.int_degree):
        Z = Z[T.mask[T.graph.cosets.codes(Z)]]
        if not len(Z):
            continue
        X = den * Z + shift
        exact = _exact_integer_distances(gauge, X, den)
        if exact is not None:
            k = min(range(len(exact)), key=exact.__getitem__)
            cand = [(exact[k], k)]
        else:
            approx = _float_distances(gauge, X / den)
            tol = 1e-9 * (1 + float(best))
            keep = np.nonzero(approx <= min(approx.min(), float(best)) + tol)[0]
            cand = []
            for k in keep:
                t = tuple(o + int(c) for o, c in zip(T.offset, Z[k]))
                cand.append((gauge_distance(gauge, P, t), int(k)))
        for d, k in cand:
            if d < best:
                best = d
                best_point = tuple(o + int(c) for o, c in zip(T.offset, Z[k]))
    return best, best_point


def _chunked_box(lo, hi, total, limit=2_000_000):
    """Yield the fixed-sum box in slabs along the first coordinate to bound memory."""
    lo, hi = list(lo), list(hi)
    if len(lo) == 1 or _box_size(lo, hi) <= limit:
        yield box_points(lo, hi, total)
        return
    for v in range(lo[0], hi[0] + 1):
        for Z in _chunked_box(lo[1:], hi[1:], total - v, limit):
            if len(Z):
                yield np.column_stack([np.full(len(Z), v, dtype=np.int64), Z])


def _box_size(lo, hi) -> int:
    size = 1
    for a, b in zip(lo[:-1], hi[:-1]):
        size *= max(b - a + 1, 0)
    return size


# -- covering radii -----------------------------------------------------------

@dataclass(frozen=True)
class Bound:
    """A value tagged ``"Exact"`` or ``"LowerBound"`` with the evidence behind it."""

    value: Fraction
    kind: str
    point: Point | None = None
    h_at_point: Fraction | None = None
    norm_bound: Fraction | None = None


def _require_genus(G: Multigraph) -> int:
    g = genus(G)
    if g < 1:
        raise GenusTooSmall(f"genus {g} < 1")
    return g


def integral_covering_radius(G: Multigraph, gauge: Gauge, N: NonSpecialSet,
                             target: DiscreteTarget | None = None) -> Fraction:
    """Largest ``h`` value over integer points of the target's hyperplane (one per class)."""
    _require_genus(G)
    T = target if target is not None else nonspecial_target(N)
    d = T.degree
    if d.denominator != 1:
        raise DegreeMismatch(f"target degree {d} is not an integer")
    value = max(h_value(gauge, T, c.reduced) for c in enumerate_classes(G, int(d), N.base_vertex))
    if gauge.kind == ELL1 and target is None:
        top = max(rank_bn(G, c.reduced, N) for c in enumerate_classes(G, int(d), N.base_vertex))
        if value != 2 * (top + 1):
            raise ConsistencyError(f"l1 covering radius {value} != 2 * ({top} + 1)")
    return value


def norm_conversion_bound(G: Multigraph, gauge: Gauge) -> Fraction:
    """Lower bound on the covering radius from the simplex radius ``m/n``."""
    n = G.n
    base = Fraction(G.m, n)
    if gauge.kind in (SIMPLEX, COSIMPLEX):
        return base
    if gauge.kind == ELL1:
        return 2 * base
    a, b = gauge.alpha, gauge.alpha_bar
    return max(base / (b * (n - 1) + a), base / (a * (n - 1) + b))


def covering_lower_certificate(G: Multigraph, gauge: Gauge, N: NonSpecialSet) -> Bound:
    g = _require_genus(G)
    point = project(canonical_divisor(G), g - 1)
    h = h_value(gauge, nonspecial_target(N), point)
    nb = norm_conversion_bound(G, gauge)
    value = max(h, nb)
    # the simplex covering radius is known exactly
    kind = "Exact" if gauge.kind in (SIMPLEX, COSIMPLEX) and value == Fraction(G.m, G.n) else "LowerBound"
    return Bound(value, kind, point, h, nb)


def grid_points(G: Multigraph, resolution: int) -> list[Point]:
    """Rational grid on the fundamental cell of ``L_G`` inside ``H_{g-1}``."""
    if resolution < 1:
        raise ValueError("grid resolution must be >= 1")
    basis = laplacian_lattice_basis(G)
    base = (Fraction(genus(G) - 1, G.n),) * G.n
    out = []
    for coeffs in product(range(resolution), repeat=len(basis)):
        p = list(base)
        for a, b in zip(coeffs, basis):
            if a:
                for i in range(G.n):
                    p[i] += Fraction(a, resolution) * b[i]
        out.append(tuple(p))
    return out


def covering_radius_sampled(G: Multigraph, gauge: Gauge, N: NonSpecialSet, grid_resolution: int) -> Bound:
    _require_genus(G)
    T = nonspecial_target(N)
    best, where = None, None
    for p in grid_points(G, grid_resolution):
        h = h_value(gauge, T, p)
        if best is None or h > best:
            best, where = h, p
    return Bound(best, "LowerBound", where, best)


# -- rank through polytope containment ---------------------------------------

def _containment_parameter(x: Sequence[Fraction], d: int, g: int) -> Fraction:
    """Least ``k >= 0`` with ``x`` in the dilated polytope whose parameters are affine in ``k``."""
    n = len(x)
    if d <= g - 1:
        s = g - 1 - d
        a = (Fraction(0), Fraction(1, n))
        b = (Fraction(s, n), Fraction(1, n))
    else:
        t = d - g + 1
        a = (Fraction(t, n), Fraction(1, n))
        b = (Fraction(0), Fraction(1, n))
    # x in P_{a(k), b(k)}  iff  sum_i max(-a(k), x_i - b(k)) <= 0
    return _first_root([((-a[0], -a[1]), (c - b[0], -b[1])) for c in x])


def rank_geometric(G: Multigraph, D: Sequence, N: NonSpecialSet) -> Fraction:
    """Rank from the least dilation of the polytope family around ``N_G`` reaching ``pi_{g-1}(D)``."""
    g = N.genus
    D = as_point(D)
    d = degree(D)
    n = len(D)
    p = project(D, g - 1)

    def k_of(nu):
        return _containment_parameter([a - b for a, b in zip(p, nu)], d, g)

    best = min(k_of(nu) for nu in N.reps)
    # a competitor with parameter <= best has p - nu inside the dilated
    # polytope, whose coordinates lie in [-below, above]
    if d <= g - 1:
        s = g - 1 - d
        above, below = best + Fraction(s, n), best + Fraction(s * (n - 1), n)
    else:
        t = d - g + 1
        above, below = best + Fraction(t * (n - 1), n), best + Fraction(t, n)
    lo = [ceil(c - above) for c in p]
    hi = [floor(c + below) for c in p]
    den = common_denominator(p)
    P = scaled_integers(p, den)
    for Z in _chunked_box(lo, hi, g - 1):
        cand = N.members(Z)
        if not len(cand):
            continue
        # float prefilter, exact confirmation
        approx = _float_k(cand, P, den, d, g)
        keep = np.nonzero(approx <= approx.min() + 1e-9)[0]
        for k in keep:
            best = min(best, k_of(tuple(int(c) for c in cand[k])))
    if d <= g - 1:
        return best - 1
    return d - g + best


def _float_k(nu, P, den, d, g):
    """Containment parameters of ``p - nu`` for each row ``nu`` (floats)."""
    n = nu.shape[1]
    x = P / den - nu
    if d <= g - 1:
        s = (g - 1 - d) / n
        return np.maximum(x - s, 0).sum(axis=1)
    t = (d - g + 1) / n
    return np.maximum(np.maximum(x + t, 0).sum(axis=1) - n * t, 0)
