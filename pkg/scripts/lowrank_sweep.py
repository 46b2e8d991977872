"""Build instances with a real solution for each rank d and count how many admit fourth-root phases.

For d <= 5 the count should always equal the number of instances built.
"""

from __future__ import annotations

import argparse
import random
from dataclasses import dataclass

from lulc.forge import random_lowrank_candidate
from lulc.qfpsolver import build_mod4_system, solve_mod4


@dataclass
class SweepConfig:
    per_d: int = 500
    seed: int = 0
    s_range: int = 8


def run(cfg: SweepConfig) -> list[tuple[int, int, int, float]]:
    rng = random.Random(cfg.seed)
    rows = []
    for d in range(2, 6):
        built = solved = total_n = 0
        attempts = 0
        while built < cfg.per_d and attempts < 50 * cfg.per_d:
            attempts += 1
            cand = random_lowrank_candidate(d, rng, cfg.s_range, cancel=rng.random() < 0.5)
            if cand is None:
                continue
            built += 1
            total_n += cand.instance.n
            solved += solve_mod4(build_mod4_system(cand.instance)).solvable
        rows.append((d, built, solved, total_n / max(built, 1)))
    return rows


def main() -> None:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--per-d", type=int, default=SweepConfig.per_d)
    p.add_argument("--seed", type=int, default=SweepConfig.seed)
    a = p.parse_args()
    print(f"{'d':>2} {'built':>6} {'solved':>7} {'mean n':>7}")
    for d, built, solved, mean_n in run(SweepConfig(a.per_d, a.seed)):
        print(f"{d:>2} {built:>6} {solved:>7} {mean_n:>7.1f}")


if __name__ == "__main__":
    main()
