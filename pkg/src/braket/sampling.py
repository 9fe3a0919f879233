"""Seeded random kets, operators and unitaries for property checks."""

from __future__ import annotations

import numpy as np

from .operators import Operator
from .spaces import Ket, SpaceLabel


def complex_normal(rng: np.random.Generator, shape) -> np.ndarray:
    return rng.standard_normal(shape) + 1j * rng.standard_normal(shape)


def random_ket(rng: np.random.Generator, dim: int, conjugated: bool = False, unit: bool = False) -> Ket:
    z = complex_normal(rng, dim)
    if unit:
        z /= np.linalg.norm(z)
    return Ket(SpaceLabel(dim, conjugated), z)


def random_operator(rng: np.random.Generator, n_in: int, n_out: int | None = None, **labels) -> Operator:
    n_out = n_in if n_out is None else n_out
    return Operator.from_matrix(complex_normal(rng, (n_out, n_in)), **labels)


def random_unitary(rng: np.random.Generator, n: int) -> np.ndarray:
    """Haar-distributed unitary: QR of a complex Gaussian with the phases of R removed."""
    q, r = np.linalg.qr(complex_normal(rng, (n, n)))
    d = np.diag(r)
    return q * (d / np.abs(d))
