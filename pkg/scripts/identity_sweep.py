"""Sweep dimensions and report how far the geodesic integrals sit from KL / QRE.

    python scripts/identity_sweep.py --pairs 50 --seed 0
"""

import argparse
import time
from dataclasses import dataclass

import numpy as np

from geodiv import quantum, simplex
from geodiv.config import QuadratureConfig
from geodiv.states import random_density, random_probability


@dataclass(frozen=True)
class SweepConfig:
    pairs: int = 50
    seed: int = 0
    simplex_dims: tuple[int, ...] = (2, 3, 5, 10, 50)
    density_dims: tuple[int, ...] = (2, 3, 4, 8, 16)
    points: int = 48


def sweep(cfg: SweepConfig):
    qcfg = QuadratureConfig(base_points=cfg.points)
    rows = []
    for n in cfg.simplex_dims:
        rng = np.random.default_rng([cfg.seed, n])
        start, worst = time.perf_counter(), 0.0
        for _ in range(cfg.pairs):
            p, q = random_probability(n, rng), random_probability(n, rng)
            worst = max(worst,
                        abs(simplex.canonical_divergence_simplex(p, q, qcfg) - simplex.kl(p, q)),
                        abs(simplex.dual_divergence_simplex(p, q, qcfg) - simplex.kl(q, p)))
        rows.append(("simplex", n, worst, (time.perf_counter() - start) / cfg.pairs))
    for d in cfg.density_dims:
        rng = np.random.default_rng([cfg.seed, 1000 + d])
        start, worst = time.perf_counter(), 0.0
        for _ in range(cfg.pairs):
            r1, r2 = random_density(d, rng), random_density(d, rng)
            worst = max(worst,
                        abs(quantum.canonical_divergence_quantum(r1, r2, qcfg) - quantum.quantum_relative_entropy(r1, r2)),
                        abs(quantum.dual_divergence_quantum(r1, r2, qcfg) - quantum.quantum_relative_entropy(r2, r1)))
        rows.append(("density", d, worst, (time.perf_counter() - start) / cfg.pairs))
    return rows


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--pairs", type=int, default=SweepConfig.pairs)
    ap.add_argument("--seed", type=int, default=SweepConfig.seed)
    ap.add_argument("--points", type=int, default=SweepConfig.points)
    args = ap.parse_args()
    cfg = SweepConfig(pairs=args.pairs, seed=args.seed, points=args.points)
    print(f"{'space':<8} {'dim':>4} {'worst error':>12} {'ms/pair':>8}")
    for space, dim, worst, secs in sweep(cfg):
        print(f"{space:<8} {dim:>4} {worst:>12.2e} {1e3 * secs:>8.2f}")


if __name__ == "__main__":
    main()
