"""Deviation of the four-point mixed stencil from the Fisher chart metric.

Compares the measured deviation for KL on the 3-simplex against the leading
truncation term h^2/3 * (1/p_i^3 + 1/p_3^3), maximized over i, and scans a
fine grid for the smallest deviation attainable anywhere at a given h.

    python scripts/eguchi_truncation.py --h 1e-3
"""

import argparse
from dataclasses import dataclass

import numpy as np

from geodiv import simplex
from geodiv.quadrature import eguchi_metric_check


@dataclass(frozen=True)
class TruncationConfig:
    h: float = 1e-3
    grid: int = 60


def kl_chart(a, b):
    return simplex.kl(simplex.chart_to_simplex(a), simplex.chart_to_simplex(b))


def deviation(p, h):
    return eguchi_metric_check(kl_chart, p[:2], simplex.fisher_chart_metric(p), h, simplex.in_chart_domain)


def predicted(p, h):
    return h**2 / 3 * max(1 / p[i] ** 3 + 1 / p[2] ** 3 for i in range(2))


def main():
    ap = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    ap.add_argument("--h", type=float, default=TruncationConfig.h)
    ap.add_argument("--grid", type=int, default=TruncationConfig.grid)
    args = ap.parse_args()
    cfg = TruncationConfig(args.h, args.grid)

    print(f"{'point':<24} {'measured':>10} {'predicted':>10} {'ratio h/(h/2)':>14}")
    for p in ([1 / 3, 1 / 3, 1 / 3], [0.5, 0.25, 0.25], [0.2, 0.3, 0.5]):
        p = np.asarray(p)
        d1, d2 = deviation(p, cfg.h), deviation(p, cfg.h / 2)
        print(f"{np.array2string(p, precision=3):<24} {d1:>10.3e} {predicted(p, cfg.h):>10.3e} {d1 / d2:>14.4f}")

    best, where = np.inf, None
    ticks = np.linspace(0.05, 0.9, cfg.grid)
    for a in ticks:
        for b in ticks:
            if a + b < 0.95:
                p = np.array([a, b, 1 - a - b])
                d = deviation(p, cfg.h)
                if d < best:
                    best, where = d, p
    print(f"smallest deviation on the grid: {best:.3e} at {np.array2string(where, precision=3)}")


if __name__ == "__main__":
    main()
