"""Teleportation of one qubit through the 8x8 unitary T, and the no-cloning witness.

Slot layout: (message qubit, Alice's half of phi+, Bob's half), flattened with
the Kronecker index rule.  After Alice's gates the state is read as
C^4 (x) C^2 so that block i (0-based) is Bob's qubit for outcome i + 1.

Measurement draws one uniform number from ``numpy.random.Generator(PCG64(seed))``
and selects the outcome by inverse CDF over the four block probabilities.
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .operators import Operator, adjoint, apply, compose, identity
from .spaces import BraketError, Ket, SpaceLabel, basis, inner_phys, ket, norm
from .tensor import TensorElement, apply_tensor, kron, kron_op

__all__ = [
    "QUBIT",
    "SIGMA_X",
    "SIGMA_Z",
    "SIGMA_XZ",
    "HADAMARD",
    "CNOT",
    "PHI_PLUS",
    "Qubit",
    "gates",
    "correction_gates",
    "teleport_matrix",
    "teleport_factorized",
    "teleport_apply",
    "teleport_expansion",
    "teleport_trace",
    "Measurement",
    "measure_alice",
    "bob_correct",
    "TeleportTrace",
    "teleport",
    "NoCloningWitness",
    "no_cloning_witness",
    "NORM_TOL",
]

QUBIT = SpaceLabel(2)
NORM_TOL = 1e-9
_S = 1 / np.sqrt(2)

SIGMA_X = Operator.from_matrix([[0, 1], [1, 0]])
SIGMA_Z = Operator.from_matrix([[1, 0], [0, -1]])
SIGMA_XZ = Operator.from_matrix([[0, -1], [1, 0]])
HADAMARD = Operator.from_matrix(_S * np.array([[1, 1], [1, -1]]))
CNOT = Operator.from_matrix([[1, 0, 0, 0], [0, 1, 0, 0], [0, 0, 0, 1], [0, 0, 1, 0]])
PHI_PLUS = ket(_S * np.array([1, 0, 0, 1]))

# teleportation matrix entries, before the 1/sqrt(2) factor
_T_PATTERN = np.array(
    [
        [1, 0, 0, 0, 0, 0, 1, 0],
        [0, 1, 0, 0, 0, 0, 0, 1],
        [0, 0, 1, 0, 1, 0, 0, 0],
        [0, 0, 0, 1, 0, 1, 0, 0],
        [1, 0, 0, 0, 0, 0, -1, 0],
        [0, 1, 0, 0, 0, 0, 0, -1],
        [0, 0, 1, 0, -1, 0, 0, 0],
        [0, 0, 0, 1, 0, -1, 0, 0],
    ]
)


def gates() -> dict[str, Operator]:
    return {
        "sigma_x": SIGMA_X,
        "sigma_z": SIGMA_Z,
        "sigma_x_sigma_z": SIGMA_XZ,
        "hadamard": HADAMARD,
        "cnot": CNOT,
        "identity": identity(QUBIT),
    }


def correction_gates() -> tuple[Operator, Operator, Operator, Operator]:
    """(T_1, T_2, T_3, T_4) = (Id, sigma_x, sigma_z, sigma_x sigma_z)."""
    return identity(QUBIT), SIGMA_X, SIGMA_Z, SIGMA_XZ


def teleport_matrix() -> Operator:
    return Operator.from_matrix(_S * _T_PATTERN)


def teleport_factorized() -> Operator:
    """(H (x) Id_4)(U_CN (x) Id_2)."""
    return compose(kron_op(HADAMARD, identity(4)), kron_op(CNOT, identity(2)))


@dataclass(frozen=True, eq=False)
class Qubit:
    """A unit vector of C^2; inputs within 1e-9 of unit length are renormalized."""

    ket: Ket

    def __post_init__(self):
        if self.ket.space != QUBIT:
            raise BraketError(f"a qubit lives in C^2, got {self.ket.space}")
        length = norm(self.ket)
        if abs(length - 1.0) > NORM_TOL:
            raise BraketError(f"qubit must have unit norm, got {length!r}")
        object.__setattr__(self, "ket", Ket(QUBIT, self.ket.coords / length))

    @classmethod
    def from_amplitudes(cls, alpha: complex, beta: complex, normalize: bool = True) -> Qubit:
        coords = np.array([alpha, beta], dtype=np.complex128)
        length = np.linalg.norm(coords)
        if length == 0.0:
            raise BraketError("the zero vector is not a state")
        return cls(Ket(QUBIT, coords / length if normalize else coords))

    @classmethod
    def random(cls, rng: np.random.Generator) -> Qubit:
        z = rng.standard_normal(2) + 1j * rng.standard_normal(2)
        return cls.from_amplitudes(*z)

    @property
    def alpha(self) -> complex:
        return complex(self.ket.coords[0])

    @property
    def beta(self) -> complex:
        return complex(self.ket.coords[1])


def _as_ket(xi) -> Ket:
    return xi.ket if isinstance(xi, Qubit) else xi


def teleport_apply(xi: Qubit | Ket) -> TensorElement:
    """T (xi (x) phi+), split as Alice's two qubits (x) Bob's qubit."""
    psi0 = kron(_as_ket(xi), PHI_PLUS)
    return apply_tensor(teleport_matrix(), psi0, factors=(4, 2))


def teleport_expansion(xi: Qubit | Ket, unitaries=None) -> TensorElement:
    """1/2 sum_i e_i^(4) (x) U_i xi, by default with U_i = T_i."""
    x = _as_ket(xi)
    unitaries = correction_gates() if unitaries is None else unitaries
    total = np.zeros(8, dtype=np.complex128)
    for i, U in enumerate(unitaries):
        total += kron(basis(4, i), apply(U, x)).coords
    return TensorElement((4, 2), 0.5 * total)


def teleport_trace(xi: Qubit | Ket) -> tuple[TensorElement, TensorElement, TensorElement]:
    """psi0 = xi (x) phi+, psi1 = (U_CN (x) Id_2) psi0, psi2 = (H (x) Id_4) psi1."""
    psi0 = kron(_as_ket(xi), PHI_PLUS)
    psi1 = apply_tensor(kron_op(CNOT, identity(2)), psi0, factors=(4, 2))
    psi2 = apply_tensor(kron_op(HADAMARD, identity(4)), psi1)
    return psi0, psi1, psi2


@dataclass(frozen=True)
class Measurement:
    outcome: int
    bits: tuple[int, int]
    bob_raw: Ket
    probabilities: tuple[float, float, float, float]


def outcome_bits(outcome: int) -> tuple[int, int]:
    if outcome not in (1, 2, 3, 4):
        raise BraketError(f"outcome must be in 1..4, got {outcome!r}")
    return (outcome - 1) >> 1, (outcome - 1) & 1


def measure_alice(psi2: TensorElement, seed: int, force: int | None = None) -> Measurement:
    """Measure Alice's two qubits in the computational basis.

    ``force`` selects a branch directly (it must have nonzero probability);
    otherwise the outcome is sampled from the seed.
    """
    if psi2.coords.shape[0] != 8:
        raise BraketError(f"expected a three-qubit state, got dimension {psi2.coords.shape[0]}")
    blocks = psi2.coords.reshape(4, 2)
    weights = np.sum(np.abs(blocks) ** 2, axis=1)
    total = weights.sum()
    if total == 0.0:
        raise BraketError("cannot measure the zero vector")
    probs = weights / total
    if force is None:
        u = np.random.Generator(np.random.PCG64(seed)).random()
        idx = int(np.searchsorted(np.cumsum(probs), u, side="right"))
        idx = min(idx, 3)
        # guard against a zero-probability branch picked through rounding
        while probs[idx] == 0.0:
            idx -= 1
        outcome = idx + 1
    else:
        outcome_bits(force)
        if probs[force - 1] == 0.0:
            raise BraketError(f"outcome {force} has probability zero")
        outcome = force
    block = blocks[outcome - 1]
    bob_raw = Ket(QUBIT, block / np.linalg.norm(block))
    return Measurement(outcome, outcome_bits(outcome), bob_raw, tuple(float(p) for p in probs))


def bob_correct(outcome: int, bob_raw: Ket) -> Qubit:
    """Undo T_outcome; each T_i is real orthogonal, so its inverse is its transpose."""
    outcome_bits(outcome)
    T_i = correction_gates()[outcome - 1]
    return Qubit(apply(adjoint(T_i), bob_raw))


def fidelity(a: Ket, b: Ket) -> float:
    return abs(inner_phys(a, b))


@dataclass(frozen=True, eq=False)
class TeleportTrace:
    xi: Qubit
    psi0: TensorElement
    psi1: TensorElement
    psi2: TensorElement
    outcome: int
    bits: tuple[int, int]
    probabilities: tuple[float, float, float, float]
    bob_raw: Ket
    bob_corrected: Qubit
    fidelity: float
    seed: int | None = field(default=None)

    def to_dict(self) -> dict:
        return {
            "xi": self.xi.ket.to_dict(),
            "psi0": self.psi0.to_dict(),
            "psi1": self.psi1.to_dict(),
            "psi2": self.psi2.to_dict(),
            "outcome": self.outcome,
            "bits": "".join(str(b) for b in self.bits),
            "probabilities": list(self.probabilities),
            "bob_raw": self.bob_raw.to_dict(),
            "bob_corrected": self.bob_corrected.ket.to_dict(),
            "fidelity": self.fidelity,
            "seed": self.seed,
        }


def teleport(xi: Qubit, seed: int, force: int | None = None) -> TeleportTrace:
    psi0, psi1, psi2 = teleport_trace(xi)
    m = measure_alice(psi2, seed, force=force)
    corrected = bob_correct(m.outcome, m.bob_raw)
    return TeleportTrace(
        xi=xi,
        psi0=psi0,
        psi1=psi1,
        psi2=psi2,
        outcome=m.outcome,
        bits=m.bits,
        probabilities=m.probabilities,
        bob_raw=m.bob_raw,
        bob_corrected=corrected,
        fidelity=fidelity(xi.ket, corrected.ket),
        seed=seed,
    )


@dataclass(frozen=True)
class NoCloningWitness:
    overlap: float
    lhs: float
    rhs: float
    cloneable: bool


def no_cloning_witness(x: Ket, y: Ket, e: Ket, tol: float = 1e-12) -> NoCloningWitness:
    """Compare |<x(x)x | y(x)y>| = |<x|y>|^2 with |<x(x)e | y(x)e>| = |<x|y>|.

    A unitary copier would make them equal, which forces |<x|y>| into {0, 1}.
    """
    x, y, e = (_as_ket(v) for v in (x, y, e))
    for name, v in (("x", x), ("y", y), ("e", e)):
        if abs(norm(v) - 1.0) > NORM_TOL:
            raise BraketError(f"{name} must be a unit vector, got norm {norm(v)!r}")
    overlap = abs(inner_phys(x, y))
    lhs = abs(inner_phys(kron(x, x).as_ket(), kron(y, y).as_ket()))
    rhs = abs(inner_phys(kron(x, e).as_ket(), kron(y, e).as_ket()))
    return NoCloningWitness(overlap, lhs, rhs, abs(lhs - rhs) < tol)
