"""Accuracy of the power-iteration operator norm against a full SVD.

Also shows the slow case: when the top two singular values nearly coincide,
10 000 iterations leave an error of the order of the gap.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from braket.operators import largest_singular_value
from braket.sampling import complex_normal


@dataclass(frozen=True)
class AccuracyConfig:
    trials: int = 200
    max_dim: int = 8
    seed: int = 0


def main(cfg: AccuracyConfig) -> float:
    rng = np.random.default_rng(cfg.seed)
    worst = 0.0
    for _ in range(cfg.trials):
        r, c = rng.integers(1, cfg.max_dim + 1, size=2)
        m = complex_normal(rng, (r, c))
        s = np.linalg.svd(m, compute_uv=False)[0]
        worst = max(worst, abs(largest_singular_value(m) - s) / s)
    print(f"random complex matrices up to {cfg.max_dim}x{cfg.max_dim}: max relative error {worst:.2e}")
    for gap in (1e-1, 1e-3, 1e-5, 1e-7):
        est = largest_singular_value(np.diag([1.0, 1.0 - gap]))
        print(f"diag(1, 1-{gap:.0e}): error {1.0 - est:.2e}")
    return worst


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--trials", type=int, default=AccuracyConfig.trials)
    p.add_argument("--max-dim", type=int, default=AccuracyConfig.max_dim)
    p.add_argument("--seed", type=int, default=AccuracyConfig.seed)
    a = p.parse_args()
    main(AccuracyConfig(a.trials, a.max_dim, a.seed))
