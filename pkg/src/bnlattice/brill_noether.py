"""Brill-Noether numerology, exhaustive existence scans and bound checks."""
from __future__ import annotations

import json
from dataclasses import dataclass
from fractions import Fraction
from itertools import product
from math import ceil, comb, isqrt

from .divisors import DivisorClass, enumerate_classes, rank_bn, rank_r, round_divisor
from .errors import ConsistencyError, DegreeOutOfRange, DegreeTooHigh, GenusTooSmall, LambdaOutOfRange, RhoNegative
from .geometry import Gauge, covering_lower_certificate, h_value, integral_covering_radius, nonspecial_target
from .graph import Multigraph, canonical_divisor, complete_graph, genus, is_dense, project, stretch_factor
from .orientations import NonSpecialSet, nonspecial_set
from .surd import QuadSurd

EXISTENCE_HOLDS = "ExistenceHolds"
EXISTENCE_FAILS = "ExistenceFails"
NOT_APPLICABLE = "NotApplicable"


def rho(g, r, d):
    return g - (r + 1) * (g - d + r)


def rho_tilde(g, stretch, r, d):
    return g - stretch * (r + 1) * (g - d + r)


def bn_bound(g: int, d: int) -> int:
    """Largest integer ``r >= 0`` with ``rho(g, r, d) >= 0``, or ``-1``."""
    best = -1
    # rho is concave in r, so the feasible r form an interval
    for r in range(0, max(d, 0) + g + 2):
        if rho(g, r, d) >= 0:
            best = r
        elif best >= 0:
            break
    return best


@dataclass(frozen=True)
class BNReport:
    graph: str
    d: int
    max_rank: int
    witness: DivisorClass
    bn_bound: int
    verdict: str

    def to_dict(self) -> dict:
        return {
            "graph": self.graph,
            "d": self.d,
            "maxRank": self.max_rank,
            "witness": list(self.witness.reduced),
            "bnBound": self.bn_bound,
            "verdict": self.verdict,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict())


def _require_genus(G: Multigraph) -> int:
    g = genus(G)
    if g < 1:
        raise GenusTooSmall(f"genus {g} < 1")
    return g


def bn_scan(G: Multigraph, d: int, N: NonSpecialSet) -> BNReport:
    g = _require_genus(G)
    if not 0 <= d <= 2 * g - 2:
        raise DegreeOutOfRange(f"degree {d} outside 0..{2 * g - 2}")
    best, witness = None, None
    for c in enumerate_classes(G, d, N.base_vertex):
        r = rank_bn(G, c.reduced, N)
        if best is None or r > best or (r == best and c.reduced < witness.reduced):
            best, witness = r, c
    bound = bn_bound(g, d)
    if bound < 0:
        verdict = NOT_APPLICABLE
    else:
        verdict = EXISTENCE_HOLDS if best >= bound else EXISTENCE_FAILS
    return BNReport(G.name, d, best, witness, bound, verdict)


def verify_existence(G: Multigraph, N: NonSpecialSet) -> list[BNReport]:
    """Scan every degree ``0..2g-2`` and cross-check degree ``g-1`` against the l1 covering radius."""
    g = _require_genus(G)
    reports = [bn_scan(G, d, N) for d in range(2 * g - 1)]
    top = reports[g - 1].max_rank
    cov = integral_covering_radius(G, Gauge.ell1(), N)
    s = isqrt(g)
    if (top >= s - 1) != (cov >= 2 * s):
        raise ConsistencyError(f"degree {g - 1}: max rank {top} vs l1 covering radius {cov}")
    return reports


# -- bounds ---------------------------------------------------------------------

def gonality_bound_approx(G: Multigraph) -> int:
    g = _require_genus(G)
    t = 2 * G.n * stretch_factor(G)
    return ceil(Fraction(g * (t - 1), t) + 2 * G.n - 1)


def r_gonality_bound(G: Multigraph, k: int) -> int:
    """Degree bound for a real divisor of rank at least ``k``."""
    g = _require_genus(G)
    if k < 1:
        raise ValueError("k must be >= 1")
    s = 1 if is_dense(G) else stretch_factor(G)
    return ceil(Fraction(g * (s * (k + 1) - 1), s * (k + 1)) + k)


def lambda_from_rd(g, r, d) -> Fraction:
    g, r, d = Fraction(g), Fraction(r), Fraction(d)
    if r < 0 or rho(g, r, d) < 0:
        raise RhoNegative(f"rho({g}, {r}, {d}) = {rho(g, r, d)} < 0 or r < 0")
    if d > g - 1:
        raise DegreeTooHigh(f"degree {d} > g - 1 = {g - 1}")
    return (g - d + r) / (r + 1)


def rd_from_lambda(g, lam) -> tuple[QuadSurd, QuadSurd]:
    """The pair ``(r0, d0)`` with ``rho(g, r0, d0) = 0`` and ``(g - d0 + r0)/(r0 + 1) = lam``."""
    g, lam = Fraction(g), Fraction(lam)
    if not 1 / g <= lam <= g:
        raise LambdaOutOfRange(f"lambda {lam} outside [1/{g}, {g}]")
    r0 = QuadSurd.sqrt(g / lam) - 1
    d0 = (r0 + 1) * (1 - lam) + (g - 1)
    return r0, d0


def dense_eq_hypothesis(G: Multigraph) -> bool:
    lhs = Fraction(2 * G.m, G.n) - Fraction(G.n, 2)
    return lhs * lhs >= 4 * genus(G)


def kn_rank_bound(n: int) -> tuple[QuadSurd, QuadSurd]:
    """Rank lower bounds for ``K_n`` at degree ``g-1``: all ``n``, and odd ``n``."""
    if n < 3:
        raise ValueError("need n >= 3")
    g = comb(n - 1, 2)
    return QuadSurd.sqrt(Fraction(g, 8)) - 1, QuadSurd.sqrt(Fraction(g, 2)) - 1


@dataclass(frozen=True)
class KnCheck:
    n: int
    genus: int
    bound: QuadSurd
    required: int
    rank: int
    witness: tuple
    method: str

    @property
    def ok(self) -> bool:
        return self.rank >= self.required


def check_kn_rank_bound(n: int, exhaustive_limit: int = 6) -> KnCheck:
    """Find a degree ``g-1`` class on ``K_n`` meeting the rank bound.

    Up to ``exhaustive_limit`` vertices every class is scanned.  Beyond it
    only the class of ``pi_{g-1}(K_G)`` is examined, through its l1 distance
    to the non-special set and independently through the rank.
    """
    G = complete_graph(n)
    N = nonspecial_set(G)
    g = genus(G)
    general, odd = kn_rank_bound(n)
    bound = odd if n % 2 else general
    required = max(0, ceil(bound))
    if n <= exhaustive_limit:
        rep = bn_scan(G, g - 1, N)
        return KnCheck(n, g, bound, required, rep.max_rank, rep.witness.reduced, "exhaustive")
    point = project(canonical_divisor(G), g - 1)
    if any(c.denominator != 1 for c in point):
        raise ConsistencyError("canonical projection is not integral")
    D = tuple(int(c) for c in point)
    h = h_value(Gauge.ell1(), nonspecial_target(N), D)
    r = rank_bn(G, D, N)
    if h != 2 * (r + 1):
        raise ConsistencyError(f"l1 distance {h} disagrees with rank {r}")
    return KnCheck(n, g, bound, required, r, D, "canonical-point")


# -- real divisors and rounding ---------------------------------------------------

@dataclass(frozen=True)
class RoundingRecord:
    r0: int
    d0: int
    witness: tuple | None
    rounded: tuple | None
    rounded_rank: int | None

    @property
    def within_bound(self) -> bool | None:
        if self.witness is None:
            return None
        return abs(self.rounded_rank - self.r0) <= 2 * len(self.witness) - 2


def half_integer_perturbations(n: int):
    """Vectors in ``{-1/2, 0, 1/2}^n`` of sum zero, the zero vector first."""
    half = Fraction(1, 2)
    out = [tuple(Fraction(0) for _ in range(n))]
    for signs in product((-1, 0, 1), repeat=n):
        if sum(signs) == 0 and any(signs):
            out.append(tuple(half * s for s in signs))
    return out


def find_real_witness(G: Multigraph, N: NonSpecialSet, r0, d0: int, exact_degree: bool = False):
    """Search half-integer shifts of reduced divisors of degree ``<= d0`` for rank exactly ``r0``."""
    shifts = half_integer_perturbations(G.n)
    degrees = [d0] if exact_degree else range(0, d0 + 1)
    for d in degrees:
        for c in enumerate_classes(G, d, N.base_vertex):
            for s in shifts:
                D = tuple(a + b for a, b in zip(c.reduced, s))
                if rank_r(G, D, N) == r0:
                    return D
    return None


def approximate_existence_check(G: Multigraph, N: NonSpecialSet) -> list[RoundingRecord]:
    """For integer pairs with non-negative stretched BN number, round a real witness and compare ranks."""
    g = _require_genus(G)
    s = stretch_factor(G)
    out = []
    for d0 in range(2 * g - 1):
        for r0 in range(0, d0 + 1):
            if rho_tilde(g, s, r0, d0) < 0:
                continue
            D = find_real_witness(G, N, r0, d0)
            if D is None:
                out.append(RoundingRecord(r0, d0, None, None, None))
                continue
            R = round_divisor(G, D, 0)
            out.append(RoundingRecord(r0, d0, D, R, rank_bn(G, R, N)))
    return out


def r_gonality_witness(G: Multigraph, N: NonSpecialSet, k: int):
    """A half-integer-grid divisor of degree at most the bound with rank at least ``k``, if any."""
    bound = r_gonality_bound(G, k)
    shifts = half_integer_perturbations(G.n)
    for d in range(0, bound + 1):
        for c in enumerate_classes(G, d, N.base_vertex):
            for s in shifts:
                D = tuple(a + b for a, b in zip(c.reduced, s))
                if rank_r(G, D, N) >= k:
                    return D
    return None


# -- covering-radius conjecture probe ------------------------------------------------

@dataclass(frozen=True)
class CoveringProbe:
    lam: Fraction
    certificate: Fraction
    threshold: QuadSurd

    @property
    def meets(self) -> bool:
        return self.certificate >= self.threshold


def covering_conjecture_probe(G: Multigraph, N: NonSpecialSet, lams) -> list[CoveringProbe]:
    """Compare the certified lower bound for ``P_{1, lam}`` with ``sqrt(g/lam)/n``."""
    g = _require_genus(G)
    out = []
    for lam in lams:
        lam = Fraction(lam)
        if not Fraction(1, g) <= lam <= g:
            raise LambdaOutOfRange(f"lambda {lam} outside [1/{g}, {g}]")
        cert = covering_lower_certificate(G, Gauge.minkowski(1, lam), N).value
        out.append(CoveringProbe(lam, cert, QuadSurd.sqrt(g / lam) * Fraction(1, G.n)))
    return out
