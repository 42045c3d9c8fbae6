"""Run the existence scan on every graph file in a directory and tabulate the verdicts."""
from __future__ import annotations

import argparse
import json
import time
from dataclasses import dataclass
from pathlib import Path

from bnlattice.brill_noether import EXISTENCE_FAILS, verify_existence
from bnlattice.graph import genus, parse_graph, spanning_tree_count
from bnlattice.orientations import nonspecial_set


@dataclass
class ScanConfig:
    graph_dir: Path = Path(__file__).resolve().parent.parent / "graphs"
    max_genus: int = 6
    max_classes: int = 20_000
    json_out: Path | None = None


def run(cfg: ScanConfig) -> list[dict]:
    rows = []
    for path in sorted(cfg.graph_dir.glob("*.txt")):
        G = parse_graph(path.read_text(), name=path.stem)
        g = genus(G)
        if g < 1 or g > cfg.max_genus or spanning_tree_count(G) > cfg.max_classes:
            print(f"{path.stem:10s} g={g:<3d} skipped")
            continue
        t = time.perf_counter()
        reports = verify_existence(G, nonspecial_set(G))
        dt = time.perf_counter() - t
        fails = [r.d for r in reports if r.verdict == EXISTENCE_FAILS]
        ranks = " ".join(str(r.max_rank) for r in reports)
        print(f"{path.stem:10s} g={g:<3d} max ranks by degree: {ranks}  fails={fails}  {dt:.1f}s")
        rows.append({"graph": path.stem, "genus": g, "reports": [r.to_dict() for r in reports]})
    if cfg.json_out:
        cfg.json_out.write_text(json.dumps(rows, indent=1))
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--graph-dir", type=Path, default=ScanConfig.graph_dir)
    p.add_argument("--max-genus", type=int, default=ScanConfig.max_genus)
    p.add_argument("--max-classes", type=int, default=ScanConfig.max_classes)
    p.add_argument("--json-out", type=Path)
    a = p.parse_args()
    run(ScanConfig(a.graph_dir, a.max_genus, a.max_classes, a.json_out))


if __name__ == "__main__":
    main()
