"""Finite-dimensional complex Hilbert spaces and their conjugates.

A ket stores the coordinates of a point of the underlying *set*; the
conjugate space shares that set and only changes the scalar action and the
inner product.  Everything linear in this package is computed on *linear
coordinates*: the coordinates of a ket with respect to the standard basis and
the scalar action of its own space.  For a plain space these are the stored
coordinates; for a conjugated space they are their complex conjugates.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number

import numpy as np

__all__ = [
    "BraketError",
    "SpaceMismatchError",
    "ConventionError",
    "SpaceLabel",
    "Ket",
    "Bra",
    "ket",
    "basis",
    "inner_math",
    "inner_phys",
    "conjugate_scalar_mul",
    "conjugation_map",
    "riesz_bra",
    "riesz_inverse",
    "norm",
]


class BraketError(ValueError):
    """Base class for errors raised by this package."""


class SpaceMismatchError(BraketError):
    pass


class ConventionError(BraketError):
    """An operation was applied in the wrong (plain vs conjugate) space."""


def _frozen_array(values, length=None) -> np.ndarray:
    arr = np.atleast_1d(np.array(values, dtype=np.complex128)).reshape(-1)
    if length is not None and arr.shape[0] != length:
        raise SpaceMismatchError(f"expected {length} coordinates, got {arr.shape[0]}")
    arr.setflags(write=False)
    return arr


@dataclass(frozen=True)
class SpaceLabel:
    """C^dim, or its conjugate space when ``conjugated`` is set."""

    dim: int
    conjugated: bool = False

    def __post_init__(self):
        if int(self.dim) != self.dim or self.dim < 1:
            raise BraketError(f"dimension must be a positive integer, got {self.dim!r}")
        object.__setattr__(self, "dim", int(self.dim))
        object.__setattr__(self, "conjugated", bool(self.conjugated))

    def conj(self) -> SpaceLabel:
        return SpaceLabel(self.dim, not self.conjugated)

    def to_dict(self) -> dict:
        return {"dim": self.dim, "conj": self.conjugated}

    @classmethod
    def from_dict(cls, data: dict) -> SpaceLabel:
        return cls(int(data["dim"]), bool(data.get("conj", False)))

    def __str__(self):
        return f"C^{self.dim}" + ("~" if self.conjugated else "")


def _pairs(arr) -> list:
    return [[float(z.real), float(z.imag)] for z in np.asarray(arr).reshape(-1)]


def _unpairs(pairs) -> np.ndarray:
    return np.array([complex(re, im) for re, im in pairs], dtype=np.complex128)


@dataclass(frozen=True, eq=False)
class Ket:
    space: SpaceLabel
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _frozen_array(self.coords, self.space.dim))

    @property
    def dim(self) -> int:
        return self.space.dim

    @property
    def lin(self) -> np.ndarray:
        """Coordinates with respect to this space's own scalar action."""
        return self.coords.conj() if self.space.conjugated else self.coords

    @classmethod
    def from_lin(cls, space: SpaceLabel, lin) -> Ket:
        lin = np.asarray(lin, dtype=np.complex128)
        return cls(space, lin.conj() if space.conjugated else lin)

    def viewed_in(self, space: SpaceLabel) -> Ket:
        """The same set element, read as a member of ``space`` (H <-> H~)."""
        if space.dim != self.dim:
            raise SpaceMismatchError(f"cannot view a ket of {self.space} in {space}")
        return Ket(space, self.coords)

    # ordinary (set-level) vector operations; the *-action lives in
    # conjugate_scalar_mul
    def __add__(self, other: Ket) -> Ket:
        _same_space(self, other)
        return Ket(self.space, self.coords + other.coords)

    def __sub__(self, other: Ket) -> Ket:
        _same_space(self, other)
        return Ket(self.space, self.coords - other.coords)

    def __neg__(self) -> Ket:
        return Ket(self.space, -self.coords)

    def __mul__(self, scalar) -> Ket:
        if not isinstance(scalar, Number):
            return NotImplemented
        return Ket(self.space, complex(scalar) * self.coords)

    __rmul__ = __mul__

    def allclose(self, other: Ket, atol: float = 1e-12) -> bool:
        return self.space == other.space and bool(np.allclose(self.coords, other.coords, rtol=0, atol=atol))

    def to_dict(self) -> dict:
        return {"space": self.space.to_dict(), "coords": _pairs(self.coords)}

    @classmethod
    def from_dict(cls, data: dict) -> Ket:
        return cls(SpaceLabel.from_dict(data["space"]), _unpairs(data["coords"]))

    def __repr__(self):
        return f"Ket({self.space}, {np.array2string(self.coords, precision=6)})"


@dataclass(frozen=True, eq=False)
class Bra:
    """A linear functional on ``space``.

    ``coords`` are in linear coordinates, so ``bra(x) == sum(conj(coords) * x.lin)``.
    """

    space: SpaceLabel
    coords: np.ndarray

    def __post_init__(self):
        object.__setattr__(self, "coords", _frozen_array(self.coords, self.space.dim))

    def __call__(self, x: Ket) -> complex:
        if x.space != self.space:
            raise SpaceMismatchError(f"bra on {self.space} applied to ket in {x.space}")
        return complex(np.vdot(self.coords, x.lin))

    def allclose(self, other: Bra, atol: float = 1e-12) -> bool:
        return self.space == other.space and bool(np.allclose(self.coords, other.coords, rtol=0, atol=atol))

    def norm(self) -> float:
        # a functional's operator norm is the length of its Riesz vector
        return float(np.linalg.norm(self.coords))


def ket(coords, conjugated: bool = False) -> Ket:
    coords = np.atleast_1d(np.asarray(coords, dtype=np.complex128))
    return Ket(SpaceLabel(coords.shape[0], conjugated), coords)


def basis(dim: int, i: int, conjugated: bool = False) -> Ket:
    """Standard basis vector e_i (0-based) of C^dim."""
    coords = np.zeros(dim, dtype=np.complex128)
    coords[i] = 1.0
    return Ket(SpaceLabel(dim, conjugated), coords)


def _same_space(x: Ket, y: Ket):
    if x.space != y.space:
        raise SpaceMismatchError(f"{x.space} != {y.space}")


def inner_math(x: Ket, y: Ket) -> complex:
    """Inner product linear in ``x`` and conjugate-linear in ``y``.

    On a plain space this is ``sum(x_i * conj(y_i))``; on a conjugated space it
    is the conjugate of that, as the inner product of H~ requires.
    """
    _same_space(x, y)
    return complex(np.dot(x.lin, y.lin.conj()))


def inner_phys(x: Ket, y: Ket) -> complex:
    """<x|y>: conjugate-linear in ``x``, linear in ``y``."""
    _same_space(x, y)
    return complex(np.vdot(x.lin, y.lin))


def conjugate_scalar_mul(lam: complex, x: Ket) -> Ket:
    """The scalar action lam * x = conj(lam) x of a conjugated space."""
    if not x.space.conjugated:
        raise ConventionError("the *-action is only defined on a conjugated space")
    return Ket(x.space, np.conj(lam) * x.coords)


def conjugation_map(x: Ket) -> Ket:
    """C_H in the standard basis: conjugate coordinates and flip the label."""
    return Ket(x.space.conj(), x.coords.conj())


def riesz_bra(x: Ket) -> Bra:
    return Bra(x.space, x.lin)


def riesz_inverse(b: Bra) -> Ket:
    return Ket.from_lin(b.space, b.coords)


def norm(x: Ket) -> float:
    return float(np.linalg.norm(x.coords))
