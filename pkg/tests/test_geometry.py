import random
from fractions import Fraction
from math import ceil, floor

import pytest
from conftest import CUSTOM_G5, SMALL, rationals
from hypothesis import given
from hypothesis import strategies as st
from oracles import gauge_bisect_float, integer_vectors, is_nonspecial_by_firing, rank_brute

from bnlattice.divisors import enumerate_classes, rank_bn, rank_r
from bnlattice.errors import BadGauge, DegreeMismatch
from bnlattice.geometry import (
    Gauge,
    covering_lower_certificate,
    covering_radius_sampled,
    crit_targets,
    gauge_distance,
    gauge_distance_bisect,
    grid_points,
    h_value,
    h_value_with_point,
    integral_covering_radius,
    lattice_target,
    nonspecial_target,
    norm_conversion_bound,
    rank_geometric,
    simplicial_distance,
    target_from_points,
    vertex_label,
    vertices_P,
)
from bnlattice.graph import banana, canonical_divisor, complete_graph, genus, project, scale_graph
from bnlattice.orientations import nonspecial_set

F = Fraction
K3, K4, K5 = complete_graph(3), complete_graph(4), complete_graph(5)
SIMPLEX, COSIMPLEX, ELL1 = Gauge.simplex(), Gauge.cosimplex(), Gauge.ell1()
P_CONFIGS = [(F(1), F(1)), (F(1), F(2)), (F(2, 3), F(5))]


def degree_zero(rng, n, max_den=12, spread=3):
    x = [F(rng.randint(-spread * max_den, spread * max_den), rng.randint(1, max_den)) for _ in range(n - 1)]
    return tuple(x + [-sum(x)])


def origin(n):
    return (F(0),) * n


# -- examples -------------------------------------------------------------------

def test_simplicial_distance_examples():
    assert simplicial_distance((0, 0, 0), (2, -1, -1)) == 1
    assert simplicial_distance((0, 0, 0), (4, -5, 1)) == 5
    assert simplicial_distance((0, 0, 0), (0, 0, 0)) == 0
    assert simplicial_distance((0, 0, 0), (4, -5, 1), "cosimplex") == 4


def test_distance_rejects_degree_mismatch():
    with pytest.raises(DegreeMismatch):
        simplicial_distance((0, 0, 0), (1, 0, 0))
    with pytest.raises(DegreeMismatch):
        gauge_distance(ELL1, (0, 0), (0, 0, 0))


def test_bad_gauges():
    with pytest.raises(BadGauge):
        Gauge.minkowski(0, 0)
    with pytest.raises(BadGauge):
        Gauge.minkowski(-1, 2)
    with pytest.raises(BadGauge):
        vertices_P(3, 0, 1)


def test_minkowski_vertex_has_unit_gauge():
    assert gauge_distance(Gauge.minkowski(1, 2), origin(3), (4, -5, 1)) == 1


def test_degenerate_minkowski_gauges():
    x = (F(3, 2), F(-2), F(1, 2))
    assert gauge_distance(Gauge.minkowski(2, 0), origin(3), x) == F(1)
    assert gauge_distance(Gauge.minkowski(0, 3), origin(3), x) == F(1, 2)


def test_vertices_example_and_count():
    W = vertices_P(3, 1, 2)
    assert vertex_label(3, 0) == (0, 1) and W[0] == (4, -5, 1)
    for n in (3, 4, 5):
        assert len(vertices_P(n, 1, 2)) == n * (n - 1)


def test_vertex_labels_are_off_diagonal_pairs():
    for n in (3, 4, 5):
        labels = [vertex_label(n, k) for k in range(n * (n - 1))]
        assert labels == [(i, j) for i in range(n) for j in range(n) if i != j]


def test_h_value_examples():
    upper, lower = crit_targets(K3)
    assert h_value(SIMPLEX, upper, origin(3)) == 1
    N3 = nonspecial_set(K3)
    assert h_value(ELL1, nonspecial_target(N3), (0, 0, 0)) == 2
    for t in N3.reps:
        for gauge in (SIMPLEX, COSIMPLEX, ELL1, Gauge.minkowski(1, 2)):
            assert h_value(gauge, nonspecial_target(N3), t) == 0


def test_h_value_rejects_wrong_degree():
    with pytest.raises(DegreeMismatch):
        h_value(SIMPLEX, nonspecial_target(nonspecial_set(K3)), (1, 0, 0))


def test_integral_covering_radius_examples():
    assert integral_covering_radius(K3, ELL1, nonspecial_set(K3)) == 2
    N5 = nonspecial_set(K5)
    value = integral_covering_radius(K5, ELL1, N5)
    assert value >= F(2 * K5.m, K5.n) - F(K5.n, 2)
    # max degree-5 rank on K5 is 2, so the value is 2 * (2 + 1)
    assert value == 6


@pytest.mark.parametrize("n", [3, 4, 5])
def test_covering_certificate_complete_graphs(n):
    G = complete_graph(n)
    b = covering_lower_certificate(G, SIMPLEX, nonspecial_set(G))
    assert b.value == F(n - 1, 2) == F(G.m, G.n)
    assert b.kind == "Exact"
    assert b.point == project(canonical_divisor(G), genus(G) - 1)
    assert b.h_at_point == b.value


def test_covering_certificate_k3_point_is_origin():
    b = covering_lower_certificate(K3, SIMPLEX, nonspecial_set(K3))
    assert b.point == origin(3) and b.value == 1


def test_minkowski_certificate_is_lower_bound():
    b = covering_lower_certificate(K4, Gauge.minkowski(1, 2), nonspecial_set(K4))
    assert b.kind == "LowerBound"
    assert b.value == max(b.h_at_point, b.norm_bound)
    assert b.norm_bound == norm_conversion_bound(K4, Gauge.minkowski(1, 2))


def test_sampled_covering_radius_k3():
    b = covering_radius_sampled(K3, SIMPLEX, nonspecial_set(K3), 6)
    assert b.value == 1 and b.kind == "LowerBound"


def test_rank_geometric_examples():
    assert rank_geometric(K3, (0, 0, 0), nonspecial_set(K3)) == 0
    assert rank_geometric(K4, (1, 1, 1, 1), nonspecial_set(K4)) == 2
    assert rank_geometric(K3, (F(1, 2), F(-1, 2), 0), nonspecial_set(K3)) == F(-1, 2)


def test_grid_points_count_and_degree():
    pts = grid_points(K4, 3)
    assert len(pts) == 27
    assert all(sum(p) == genus(K4) - 1 for p in pts)
    with pytest.raises(ValueError):
        grid_points(K4, 0)


def test_target_rejects_incongruent_points():
    with pytest.raises(DegreeMismatch):
        target_from_points(K3, [(0, 0, 0), (F(1, 2), F(-1, 2), 0)])
    with pytest.raises(DegreeMismatch):
        target_from_points(K3, [(0, 0, 0), (1, 0, 0)])


def test_gauge_str():
    assert str(Gauge.minkowski(1, F(3, 2))) == "P:1:3/2"
    assert str(ELL1) == "ell1"


# -- gauge properties -------------------------------------------------------------

GAUGES = [SIMPLEX, COSIMPLEX, ELL1] + [Gauge.minkowski(a, b) for a, b in P_CONFIGS] + [Gauge.minkowski(3, 0)]


def _vec(n, lo=-3, hi=3):
    return st.lists(rationals(max_den=6, lo=lo, hi=hi), min_size=n, max_size=n)


@given(st.sampled_from(GAUGES), st.integers(3, 5).flatmap(lambda n: st.tuples(_vec(n), _vec(n), _vec(n))),
       rationals(max_den=5, lo=0, hi=3))
def test_gauge_axioms(gauge, vecs, t):
    a, b, c = vecs
    # put all three points on the same hyperplane
    p = tuple(a)
    q = tuple(x - F(sum(b) - sum(a), len(b)) for x in b)
    r = tuple(x - F(sum(c) - sum(a), len(c)) for x in c)
    d = gauge_distance
    assert d(gauge, p, p) == 0
    assert d(gauge, p, r) <= d(gauge, p, q) + d(gauge, q, r)
    moved = tuple(x + t * (y - x) for x, y in zip(p, q))
    assert d(gauge, p, moved) == t * d(gauge, p, q)
    assert d(gauge, p, q) >= 0


@given(st.integers(3, 5).flatmap(lambda n: st.tuples(_vec(n), _vec(n))))
def test_simplex_duality(vecs):
    a, b = vecs
    q = tuple(x - F(sum(b) - sum(a), len(b)) for x in b)
    assert simplicial_distance(a, q) == simplicial_distance(q, a, "cosimplex")


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("alpha, alpha_bar", P_CONFIGS + [(F(3, 7), F(1, 4))])
def test_minkowski_gauge_matches_bisection(n, alpha, alpha_bar):
    gauge = Gauge.minkowski(alpha, alpha_bar)
    rng = random.Random(f"bisect{n}{alpha}{alpha_bar}")
    for _ in range(200):
        x = degree_zero(rng, n)
        exact = gauge_distance(gauge, origin(n), x)
        assert exact == gauge_distance_bisect(gauge, origin(n), x)
        assert abs(float(exact) - gauge_bisect_float(float(alpha), float(alpha_bar), x)) < 1e-9


@pytest.mark.parametrize("n", [3, 4, 5])
def test_p11_is_ell1_homothety(n):
    rng = random.Random(f"p11-{n}")
    for _ in range(100):
        x = degree_zero(rng, n)
        assert gauge_distance(ELL1, origin(n), x) == 2 * n * gauge_distance(Gauge.minkowski(1, 1), origin(n), x)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("alpha, alpha_bar", P_CONFIGS)
def test_norm_conversion_inequality(n, alpha, alpha_bar):
    gauge = Gauge.minkowski(alpha, alpha_bar)
    rng = random.Random(f"nci{n}{alpha}{alpha_bar}")
    for _ in range(200):
        x = degree_zero(rng, n)
        d = gauge_distance(gauge, origin(n), x)
        assert d >= simplicial_distance(origin(n), x) / (alpha_bar * (n - 1) + alpha)
        assert d >= simplicial_distance(origin(n), x, "cosimplex") / (alpha * (n - 1) + alpha_bar)


@pytest.mark.parametrize("n", [3, 4, 5])
@pytest.mark.parametrize("alpha, alpha_bar", P_CONFIGS)
def test_vertex_certificates(n, alpha, alpha_bar):
    W = vertices_P(n, alpha, alpha_bar)
    gauge = Gauge.minkowski(alpha, alpha_bar)
    for k, w in enumerate(W):
        i, j = vertex_label(n, k)
        top = w[i] - w[j]
        assert top == n * (alpha + alpha_bar)
        assert all(v[i] - v[j] < top for m, v in enumerate(W) if m != k)
        assert gauge_distance(gauge, origin(n), w) == 1
        assert simplicial_distance(origin(n), w) == alpha_bar * (n - 1) + alpha
        assert simplicial_distance(origin(n), w, "cosimplex") == alpha * (n - 1) + alpha_bar
    # the diagonal points (alpha - alpha_bar) b_i lie inside the body
    for i in range(n):
        diag = tuple((alpha - alpha_bar) * ((n - 1) if k == i else -1) for k in range(n))
        assert gauge_distance(gauge, origin(n), diag) <= 1


@pytest.mark.parametrize("n", [3, 4])
def test_coordinate_bounds_hold_on_vertices(n):
    for a, b in P_CONFIGS:
        lo, hi = Gauge.minkowski(a, b).coordinate_bounds(n)
        for w in vertices_P(n, a, b):
            assert -lo <= min(w) and max(w) <= hi


# -- h values against a brute-force search ----------------------------------------

def brute_h(G, gauge, p, radius):
    """Minimum distance to non-special divisors in a box, membership by chip-firing only."""
    g = genus(G)
    lo = [ceil(c - radius) for c in p]
    hi = [floor(c + radius) for c in p]
    best = None
    for nu in integer_vectors(lo, g - 1):
        if any(a > b for a, b in zip(nu, hi)) or not is_nonspecial_by_firing(G, nu):
            continue
        d = gauge_distance(gauge, p, nu)
        if best is None or d < best:
            best = d
    return best


@pytest.mark.parametrize("G", [K3, K4, banana(2, 3)], ids=["K3", "K4", "banana3"])
@pytest.mark.parametrize("gauge", [SIMPLEX, COSIMPLEX, ELL1, Gauge.minkowski(1, 2)], ids=str)
def test_h_value_matches_brute_force(G, gauge):
    N = nonspecial_set(G)
    T = nonspecial_target(N)
    rng = random.Random(f"h{G.n}{G.m}{gauge}")
    g = genus(G)
    for _ in range(6):
        p = degree_zero(rng, G.n, max_den=4, spread=2)
        p = tuple(c + F(g - 1, G.n) for c in p)
        h, where = h_value_with_point(gauge, T, p)
        assert N.contains(where) and gauge_distance(gauge, p, where) == h
        assert h == brute_h(G, gauge, p, radius=6)


@pytest.mark.parametrize("beta", [2, 3])
@pytest.mark.parametrize("G", [K3, K4], ids=["K3", "K4"])
def test_h_value_scaling(G, beta):
    H = scale_graph(G, beta)
    T, TH = lattice_target(G), lattice_target(H)
    rng = random.Random(f"scale{G.n}{beta}")
    for _ in range(20):
        p = degree_zero(rng, G.n, max_den=6, spread=2)
        bp = tuple(beta * c for c in p)
        assert h_value(SIMPLEX, TH, bp) == beta * h_value(SIMPLEX, T, p)


# -- covering radii ------------------------------------------------------------

def _shifted_classes(G, T):
    """One point per class of the target's hyperplane, shifted by the target offset."""
    return [tuple(c + o for c, o in zip(cls.reduced, T.offset)) for cls in enumerate_classes(G, T.int_degree, 0)]


@pytest.mark.parametrize("G, gauges", [
    (K3, [SIMPLEX, COSIMPLEX, ELL1]),
    (CUSTOM_G5, [SIMPLEX, COSIMPLEX, ELL1]),
])
def test_equal_integral_covering_radii_all_targets(G, gauges):
    N = nonspecial_set(G)
    upper, lower = crit_targets(G)
    for gauge in gauges:
        values = {
            integral_covering_radius(G, gauge, N, nonspecial_target(N)),
            max(h_value(gauge, upper, p) for p in _shifted_classes(G, upper)),
            max(h_value(gauge, lower, p) for p in _shifted_classes(G, lower)),
        }
        assert len(values) == 1


def test_equal_integral_covering_radii_k4_crit_targets():
    upper, lower = crit_targets(K4)
    for gauge in (SIMPLEX, COSIMPLEX):
        a = max(h_value(gauge, upper, p) for p in _shifted_classes(K4, upper))
        b = max(h_value(gauge, lower, p) for p in _shifted_classes(K4, lower))
        assert a == b


@pytest.mark.parametrize("G", [K3, K4, banana(2, 3), banana(2, 4)], ids=["K3", "K4", "banana3", "banana4"])
def test_sampled_radius_bounds(G):
    N = nonspecial_set(G)
    top = F(G.m, G.n)
    prev = covering_radius_sampled(G, SIMPLEX, N, 2).value
    now = covering_radius_sampled(G, SIMPLEX, N, 4).value
    assert prev <= now <= top
    assert covering_lower_certificate(G, SIMPLEX, N).value == top


def test_sampled_dominates_grid_points():
    N = nonspecial_set(K4)
    T = nonspecial_target(N)
    b = covering_radius_sampled(K4, ELL1, N, 3)
    assert all(h_value(ELL1, T, p) <= b.value for p in grid_points(K4, 3))


# -- rank through containment -------------------------------------------------

@pytest.mark.parametrize("name", sorted(SMALL))
def test_rank_geometric_on_classes(name):
    G = SMALL[name]
    N = nonspecial_set(G)
    for d in range(-1, 2 * genus(G) + 1):
        for c in enumerate_classes(G, d, 0):
            assert rank_geometric(G, c.reduced, N) == rank_bn(G, c.reduced, N)


@pytest.mark.parametrize("G", [K3, K4], ids=["K3", "K4"])
def test_rank_geometric_random_rationals(G):
    N = nonspecial_set(G)
    rng = random.Random(f"geo{G.n}")
    for _ in range(100):
        D = tuple(F(rng.randint(-36, 48), rng.randint(1, 12)) for _ in range(G.n))
        assert rank_geometric(G, D, N) == rank_r(G, D, N)
    # the brute-force oracle is slow away from degree g - 1, so keep these near it
    for _ in range(10):
        D = tuple(F(rng.randint(-24, 24), rng.randint(1, 12)) for _ in range(G.n))
        assert rank_geometric(G, D, N) == rank_brute(G, D)
