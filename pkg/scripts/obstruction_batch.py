"""Run the nerve obstruction check over a batch of random seeded categories.

    python3 scripts/obstruction_batch.py --seeds 100 --out runs/obstruction.csv
"""
import argparse
import csv
import sys
import time
from dataclasses import dataclass
from pathlib import Path

from kanfuk import nerve as NV


@dataclass
class BatchConfig:
    seeds: int = 100
    first_seed: int = 0
    max_hom_dim: int = 12
    out: Path | None = None


def run(cfg: BatchConfig) -> list[dict]:
    rows = []
    for seed in range(cfg.first_seed, cfg.first_seed + cfg.seeds):
        t = time.perf_counter()
        C = NV.obstruction_fixture(seed, NV.ObstructionFixtureConfig(
            correlator=seed % 2, max_hom_dim=cfg.max_hom_dim))
        rep = NV.obstruction_report(C)
        rows.append(dict(seed=seed, correlator=rep.correlator,
                         simplex_exists=rep.simplex_exists, solutions=rep.solutions,
                         consistent=rep.consistent,
                         max_hom_dim=max(len(h) for h in C.homs.values()),
                         seconds=round(time.perf_counter() - t, 4)))
    return rows


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=100)
    p.add_argument("--first-seed", type=int, default=0)
    p.add_argument("--max-hom-dim", type=int, default=12)
    p.add_argument("--out", type=Path)
    a = p.parse_args(argv)
    cfg = BatchConfig(a.seeds, a.first_seed, a.max_hom_dim, a.out)
    rows = run(cfg)
    bad = [r["seed"] for r in rows if not r["consistent"]]
    print(f"seeds {len(rows)} consistent {len(rows) - len(bad)} "
          f"seconds {sum(r['seconds'] for r in rows):.2f}")
    if bad:
        print("inconsistent seeds", *bad)
    if cfg.out:
        cfg.out.parent.mkdir(parents=True, exist_ok=True)
        with open(cfg.out, "w", newline="") as fh:
            w = csv.DictWriter(fh, fieldnames=list(rows[0]))
            w.writeheader()
            w.writerows(rows)
    return 1 if bad else 0


if __name__ == "__main__":
    sys.exit(main())
