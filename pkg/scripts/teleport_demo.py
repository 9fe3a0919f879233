"""Teleport a batch of random qubits and tabulate outcomes and fidelities."""

import argparse
from dataclasses import dataclass

import numpy as np

from braket.quantum import Qubit, teleport


@dataclass(frozen=True)
class DemoConfig:
    n_states: int = 8
    seed: int = 0


def main(cfg: DemoConfig) -> float:
    rng = np.random.default_rng(cfg.seed)
    worst = 1.0
    print(f"{'alpha':>22} {'beta':>22}  out bits  fidelity")
    for k in range(cfg.n_states):
        xi = Qubit.random(rng)
        tr = teleport(xi, seed=cfg.seed * cfg.n_states + k)
        worst = min(worst, tr.fidelity)
        bits = "".join(map(str, tr.bits))
        print(f"{xi.alpha:>22.4f} {xi.beta:>22.4f}  {tr.outcome:>3}   {bits}  {tr.fidelity:.15f}")
    print(f"worst fidelity {worst:.15f}")
    return worst


if __name__ == "__main__":
    p = argparse.ArgumentParser(description=__doc__)
    p.add_argument("--n-states", type=int, default=DemoConfig.n_states)
    p.add_argument("--seed", type=int, default=DemoConfig.seed)
    a = p.parse_args()
    main(DemoConfig(a.n_states, a.seed))
