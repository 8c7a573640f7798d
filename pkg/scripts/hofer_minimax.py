"""Descend perturbed copies of the one-turn sphere family and report where they stall.

Curve shortening is a heuristic; the stall values are evidence about the
minimax level, not a bound.

    python3 scripts/hofer_minimax.py --seeds 10 --steps 5000
"""
import argparse
import sys
from dataclasses import dataclass

import numpy as np

from kanfuk import hofer as H


@dataclass
class MinimaxConfig:
    seeds: int = 10
    steps: int = 5000
    n_lat: int = 10
    n_lon: int = 24
    samples: int = 65
    amplitude: float = 0.15
    pad: bool = False


def run(cfg: MinimaxConfig) -> list[tuple[int, float, float]]:
    f = H.optimal_family(cfg.n_lat, cfg.n_lon, cfg.samples)
    out = []
    for seed in range(cfg.seeds):
        g = H.perturbed_family(f, seed, amplitude=cfg.amplitude)
        if cfg.pad:
            g = H.padded_family(g)
        start = H.family_max(g)[0]
        res = H.descend_family(g, steps=cfg.steps)
        out.append((seed, start, res.stall_value))
    return out


def main(argv=None) -> int:
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--seeds", type=int, default=10)
    p.add_argument("--steps", type=int, default=5000)
    p.add_argument("--amplitude", type=float, default=0.15)
    p.add_argument("--pad", action="store_true", help="add a detour of length 1 first")
    a = p.parse_args(argv)
    cfg = MinimaxConfig(seeds=a.seeds, steps=a.steps, amplitude=a.amplitude, pad=a.pad)
    print(f"optimal family max {H.family_max(H.optimal_family())[0]:.9f} (2pi = {2 * np.pi:.9f})")
    for seed, start, stall in run(cfg):
        print(f"seed {seed} start {start:.6f} stall {stall:.6f} stall-2pi {stall - 2 * np.pi:+.4f}")
    return 0


if __name__ == "__main__":
    sys.exit(main())
