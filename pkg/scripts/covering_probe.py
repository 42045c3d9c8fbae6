"""Probe covering radii of the non-special set for the P_{1,lambda} gauges.

For each lambda the certified lower bound is compared with sqrt(g/lambda)/n
in exact arithmetic; a sampled estimate over a rational grid is printed
alongside for reference.
"""
from __future__ import annotations

import argparse
from dataclasses import dataclass, field
from fractions import Fraction

from bnlattice.brill_noether import covering_conjecture_probe
from bnlattice.geometry import Gauge, covering_radius_sampled
from bnlattice.graph import complete_graph, genus, scale_graph
from bnlattice.orientations import nonspecial_set


@dataclass
class ProbeConfig:
    n: int = 5
    scale: int = 3
    lambdas: list[Fraction] = field(default_factory=lambda: [Fraction(1), Fraction(2), Fraction(4)])
    grid: int = 0  # 0 skips the sampled estimate


def run(cfg: ProbeConfig) -> None:
    G = scale_graph(complete_graph(cfg.n), cfg.scale)
    N = nonspecial_set(G)
    g = genus(G)
    lams = [lam for lam in cfg.lambdas if Fraction(1, g) <= lam <= g]
    print(f"{cfg.scale}*K{cfg.n}: n={G.n} m={G.m} g={g}")
    for probe in covering_conjecture_probe(G, N, lams):
        line = f"lambda={probe.lam}  certificate={probe.certificate}  sqrt(g/lambda)/n={probe.threshold}" \
               f" (~{float(probe.threshold):.4f})  meets={probe.meets}"
        if cfg.grid:
            s = covering_radius_sampled(G, Gauge.minkowski(1, probe.lam), N, cfg.grid)
            line += f"  sampled={s.value}"
        print(line)


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n", type=int, default=ProbeConfig.n)
    p.add_argument("--scale", type=int, default=ProbeConfig.scale)
    p.add_argument("--lambdas", type=Fraction, nargs="+")
    p.add_argument("--grid", type=int, default=0)
    a = p.parse_args()
    cfg = ProbeConfig(a.n, a.scale, grid=a.grid)
    if a.lambdas:
        cfg.lambdas = a.lambdas
    else:
        g = genus(scale_graph(complete_graph(a.n), a.scale))
        cfg.lambdas = [Fraction(1, g), Fraction(1), Fraction(2), Fraction(g)]
    run(cfg)


if __name__ == "__main__":
    main()
