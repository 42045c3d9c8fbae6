"""Check the degree g-1 rank bounds for complete graphs K_3 .. K_n."""
from __future__ import annotations

import argparse
import time
from dataclasses import dataclass

from bnlattice.brill_noether import check_kn_rank_bound


@dataclass
class KnConfig:
    max_n: int = 7
    exhaustive_limit: int = 6


def run(cfg: KnConfig) -> bool:
    ok = True
    for n in range(3, cfg.max_n + 1):
        t = time.perf_counter()
        c = check_kn_rank_bound(n, cfg.exhaustive_limit)
        dt = time.perf_counter() - t
        print(f"K{n}: g={c.genus} bound={c.bound} need>={c.required} rank={c.rank} "
              f"[{c.method}] {'ok' if c.ok else 'FAIL'} {dt:.1f}s")
        ok &= c.ok
    return ok


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--max-n", type=int, default=KnConfig.max_n)
    p.add_argument("--exhaustive-limit", type=int, default=KnConfig.exhaustive_limit)
    a = p.parse_args()
    raise SystemExit(0 if run(KnConfig(a.max_n, a.exhaustive_limit)) else 1)


if __name__ == "__main__":
    main()
