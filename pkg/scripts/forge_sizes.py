"""Run the counterexample search over many seeds and tabulate sizes, iterations and LC verdicts.

    python scripts/forge_sizes.py --seeds 50 --out results/forge_sizes.json
"""

from __future__ import annotations

import argparse
import json
import time
from collections import Counter
from dataclasses import asdict, dataclass
from pathlib import Path

from lulc.forge import search
from lulc.pipeline import decide_lc, graph_pair


@dataclass
class ForgeSweepConfig:
    seeds: int = 50
    first_seed: int = 0
    max_iters: int = 100_000
    with_lc: bool = True
    out: str | None = None


def run(cfg: ForgeSweepConfig) -> dict:
    rows = []
    for seed in range(cfg.first_seed, cfg.first_seed + cfg.seeds):
        t0 = time.perf_counter()
        found = search(6, seed, cfg.max_iters)
        row = {"seed": seed, "seconds": round(time.perf_counter() - t0, 4)}
        if found is None:
            row["n"] = None
        else:
            row.update(n=found.instance.n, iteration=found.iteration)
            if cfg.with_lc:
                pair = graph_pair(found.instance)
                row["lc_verdict"] = decide_lc(pair.g_s, pair.g_qs).verdict
                row["edge_difference"] = len(pair.difference)
        rows.append(row)
    return {
        "config": asdict(cfg),
        "sizes": dict(sorted(Counter(r["n"] for r in rows if r["n"]).items())),
        "lc_verdicts": dict(Counter(r.get("lc_verdict") for r in rows if r["n"])),
        "mean_iterations": sum(r.get("iteration", 0) for r in rows) / len(rows),
        "runs": rows,
    }


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=ForgeSweepConfig.seeds)
    p.add_argument("--first-seed", type=int, default=ForgeSweepConfig.first_seed)
    p.add_argument("--max-iters", type=int, default=ForgeSweepConfig.max_iters)
    p.add_argument("--no-lc", action="store_true")
    p.add_argument("--out")
    a = p.parse_args()
    cfg = ForgeSweepConfig(a.seeds, a.first_seed, a.max_iters, not a.no_lc, a.out)
    res = run(cfg)
    print(f"sizes: {res['sizes']}")
    print(f"lc verdicts: {res['lc_verdicts']}")
    print(f"mean iterations: {res['mean_iterations']:.1f}")
    if cfg.out:
        Path(cfg.out).parent.mkdir(parents=True, exist_ok=True)
        Path(cfg.out).write_text(json.dumps(res, indent=2) + "\n")


if __name__ == "__main__":
    main()
