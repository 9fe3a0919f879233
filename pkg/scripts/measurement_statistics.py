"""Outcome frequencies of Alice's measurement over many seeded shots.

Every branch has probability 1/4 for any input state; this prints the observed
frequencies and their largest deviation from 1/4 for a few inputs.
"""

import argparse
from dataclasses import dataclass

import numpy as np

from braket.quantum import Qubit
from braket.verify import outcome_frequencies


@dataclass(frozen=True)
class StatsConfig:
    shots: int = 10_000
    n_states: int = 4
    seed: int = 1


def main(cfg: StatsConfig) -> float:
    rng = np.random.default_rng(cfg.seed)
    states = [Qubit.from_amplitudes(1, 0), Qubit.from_amplitudes(0.6, 0.8j)]
    states += [Qubit.random(rng) for _ in range(max(cfg.n_states - 2, 0))]
    worst = 0.0
    for k, xi in enumerate(states):
        freqs = outcome_frequencies(xi, seed=cfg.seed + k, n_trials=cfg.shots)
        dev = float(np.abs(freqs - 0.25).max())
        worst = max(worst, dev)
        print(f"xi=({xi.alpha:.3f}, {xi.beta:.3f})  freqs={np.round(freqs, 4).tolist()}  max dev {dev:.4f}")
    # binomial standard error for p = 1/4
    print(f"largest deviation {worst:.4f} (one standard error {np.sqrt(0.1875 / cfg.shots):.4f})")
    return worst


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__.splitlines()[0])
    p.add_argument("--shots", type=int, default=StatsConfig.shots)
    p.add_argument("--n-states", type=int, default=StatsConfig.n_states)
    p.add_argument("--seed", type=int, default=StatsConfig.seed)
    a = p.parse_args()
    main(StatsConfig(a.shots, a.n_states, a.seed))
