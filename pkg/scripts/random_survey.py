"""Compute R for seeded random divisorial polytopes and tabulate the sources."""

import argparse
import random
import sys
import time
from collections import Counter
from dataclasses import dataclass
from pathlib import Path

sys.path.insert(0, str(Path(__file__).resolve().parents[1] / "tests"))

from fanorx.engine import RxInput, compute_R  # noqa: E402
from generators import random_dp  # noqa: E402


@dataclass
class SurveyConfig:
    seed: int = 0
    count: int = 100
    dims: tuple[int, ...] = (1, 2)


def run(cfg: SurveyConfig):
    rng = random.Random(cfg.seed)
    sources = Counter()
    below_base = 0
    rows = []
    for i in range(cfg.count):
        d = cfg.dims[i % len(cfg.dims)]
        rep = compute_R(RxInput.from_divisorial(random_dp(rng, d)))
        src = rep.R_source if not rep.R_source.startswith("DEGENERATION") else "DEGENERATION"
        sources[src] += 1
        below_base += rep.R < rep.base_ratio
        rows.append((d, rep.R, rep.R_source))
    return sources, below_base, rows


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--seed", type=int, default=SurveyConfig.seed)
    ap.add_argument("--count", type=int, default=SurveyConfig.count)
    ap.add_argument("-v", "--verbose", action="store_true")
    args = ap.parse_args()
    cfg = SurveyConfig(seed=args.seed, count=args.count)
    t0 = time.perf_counter()
    sources, below, rows = run(cfg)
    if args.verbose:
        for d, R, src in rows:
            print(f"d={d}  R={R}  {float(R):.6f}  {src}")
    print(f"{cfg.count} instances in {time.perf_counter() - t0:.1f}s")
    for k, v in sorted(sources.items()):
        print(f"  {k:<13} {v}")
    print(f"  R strictly below base ratio in {below} instances")


if __name__ == "__main__":
    main()
