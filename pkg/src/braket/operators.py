"""Dense operators between labeled spaces.

An ``Operator`` holds its matrix in linear coordinates (see ``braket.spaces``):
rows index the codomain, columns the domain, and column j is the image of the
domain basis vector e_j.  With that single rule adjoint, composition and trace
are the ordinary matrix operations whatever the conjugation flags are.
"""

from __future__ import annotations

from dataclasses import dataclass
from numbers import Number
from typing import Iterable, Sequence

import numpy as np

from .spaces import (
    Bra,
    BraketError,
    Ket,
    SpaceLabel,
    SpaceMismatchError,
    _pairs,
    _unpairs,
    riesz_bra,
)

__all__ = [
    "Operator",
    "identity",
    "apply",
    "adjoint",
    "dyad",
    "compose",
    "trace",
    "bra_compose",
    "ket_as_map",
    "map_as_ket",
    "finite_rank_assemble",
    "largest_singular_value",
    "op_norm",
    "SCALARS",
]

# the one-dimensional space C, domain of ket_as_map
SCALARS = SpaceLabel(1)


@dataclass(frozen=True, eq=False)
class Operator:
    domain: SpaceLabel
    codomain: SpaceLabel
    matrix: np.ndarray

    def __post_init__(self):
        m = np.array(self.matrix, dtype=np.complex128)
        if m.ndim != 2 or m.shape != (self.codomain.dim, self.domain.dim):
            raise SpaceMismatchError(
                f"matrix shape {m.shape} does not match {self.codomain.dim}x{self.domain.dim}"
            )
        m.setflags(write=False)
        object.__setattr__(self, "matrix", m)

    @classmethod
    def from_matrix(cls, matrix, domain_conj: bool = False, codomain_conj: bool = False) -> Operator:
        m = np.asarray(matrix, dtype=np.complex128)
        return cls(SpaceLabel(m.shape[1], domain_conj), SpaceLabel(m.shape[0], codomain_conj), m)

    @property
    def shape(self) -> tuple[int, int]:
        return self.matrix.shape

    def __matmul__(self, other):
        if isinstance(other, Operator):
            return compose(self, other)
        if isinstance(other, Ket):
            return apply(self, other)
        return NotImplemented

    def __add__(self, other: Operator) -> Operator:
        _same_spaces(self, other)
        return Operator(self.domain, self.codomain, self.matrix + other.matrix)

    def __sub__(self, other: Operator) -> Operator:
        _same_spaces(self, other)
        return Operator(self.domain, self.codomain, self.matrix - other.matrix)

    def __mul__(self, scalar) -> Operator:
        if not isinstance(scalar, Number):
            return NotImplemented
        return Operator(self.domain, self.codomain, complex(scalar) * self.matrix)

    __rmul__ = __mul__

    @property
    def H(self) -> Operator:
        return adjoint(self)

    def allclose(self, other: Operator, atol: float = 1e-12) -> bool:
        return (
            self.domain == other.domain
            and self.codomain == other.codomain
            and bool(np.allclose(self.matrix, other.matrix, rtol=0, atol=atol))
        )

    def to_dict(self) -> dict:
        return {
            "domain": self.domain.to_dict(),
            "codomain": self.codomain.to_dict(),
            "rows": [_pairs(row) for row in self.matrix],
        }

    @classmethod
    def from_dict(cls, data: dict) -> Operator:
        domain = SpaceLabel.from_dict(data["domain"])
        codomain = SpaceLabel.from_dict(data["codomain"])
        rows = np.array([_unpairs(r) for r in data["rows"]], dtype=np.complex128)
        return cls(domain, codomain, rows.reshape(codomain.dim, domain.dim))

    def __repr__(self):
        return f"Operator({self.domain} -> {self.codomain},\n{np.array2string(self.matrix, precision=6)})"


def _same_spaces(a: Operator, b: Operator):
    if a.domain != b.domain or a.codomain != b.codomain:
        raise SpaceMismatchError(
            f"{a.domain}->{a.codomain} vs {b.domain}->{b.codomain}"
        )


def identity(space: SpaceLabel | int) -> Operator:
    if not isinstance(space, SpaceLabel):
        space = SpaceLabel(space)
    return Operator(space, space, np.eye(space.dim))


def apply(A: Operator, x: Ket) -> Ket:
    if x.space != A.domain:
        raise SpaceMismatchError(f"operator on {A.domain} applied to ket in {x.space}")
    return Ket.from_lin(A.codomain, A.matrix @ x.lin)


def adjoint(A: Operator) -> Operator:
    return Operator(A.codomain, A.domain, A.matrix.conj().T)


def dyad(x: Ket, z: Ket) -> Operator:
    """The rank-one map y -> <x|y> z from x's space into z's space.

    For a plain x the matrix is z x^dagger.  When x lives in a conjugated
    space, <x|y> is the conjugated-space bracket and the matrix is z x^T.
    """
    return Operator(x.space, z.space, np.outer(z.lin, x.lin.conj()))


def compose(S: Operator, T: Operator) -> Operator:
    """S after T."""
    if T.codomain != S.domain:
        raise SpaceMismatchError(f"cannot compose {S.domain}->{S.codomain} after {T.domain}->{T.codomain}")
    return Operator(T.domain, S.codomain, S.matrix @ T.matrix)


def trace(A: Operator) -> complex:
    if A.domain != A.codomain:
        raise SpaceMismatchError(f"trace needs an endomorphism, got {A.domain}->{A.codomain}")
    return complex(np.trace(A.matrix))


def bra_compose(z: Ket, A: Operator) -> Bra:
    """<z| A, which is the bra of A^* z."""
    if z.space != A.codomain:
        raise SpaceMismatchError(f"bra on {z.space} composed with operator into {A.codomain}")
    return riesz_bra(apply(adjoint(A), z))


def ket_as_map(x: Ket) -> Operator:
    """The map lambda -> lambda x from C into x's space (the adjoint of <x|)."""
    return Operator(SCALARS, x.space, x.lin.reshape(-1, 1))


def map_as_ket(T: Operator) -> Ket:
    if T.domain.dim != 1:
        raise SpaceMismatchError(f"expected an operator on C, got domain {T.domain}")
    return apply(T, Ket(T.domain, [1.0]))


def finite_rank_assemble(pairs: Iterable[tuple[Ket, Ket]]) -> Operator:
    """Sum of dyads x_i (x) z_i."""
    pairs = list(pairs)
    if not pairs:
        raise BraketError("need at least one (x, z) pair")
    domain, codomain = pairs[0][0].space, pairs[0][1].space
    total = np.zeros((codomain.dim, domain.dim), dtype=np.complex128)
    for x, z in pairs:
        if x.space != domain or z.space != codomain:
            raise SpaceMismatchError("all pairs must share domain and codomain labels")
        total += dyad(x, z).matrix
    return Operator(domain, codomain, total)


def largest_singular_value(
    matrix: np.ndarray,
    tol: float = 1e-12,
    max_iter: int = 10_000,
    starts: Sequence[np.ndarray] | None = None,
) -> float:
    """Largest singular value by power iteration on M^dagger M.

    Starts from (1, ..., 1)/sqrt(n) and, because that vector can be orthogonal
    to the top singular vector of a structured matrix, also from one fixed
    pseudo-random vector; the larger estimate wins.
    """
    m = np.asarray(matrix, dtype=np.complex128)
    if m.size == 0:
        return 0.0
    n = m.shape[1]
    if starts is None:
        g = np.random.default_rng(0x5EED)
        starts = [np.ones(n), g.standard_normal(n) + 1j * g.standard_normal(n)]
    gram = m.conj().T @ m
    best = 0.0
    for v0 in starts:
        v = np.asarray(v0, dtype=np.complex128)
        v = v / np.linalg.norm(v)
        est = 0.0
        for _ in range(max_iter):
            w = gram @ v
            est = float(np.vdot(v, w).real)
            # stop on the eigen-residual, not on the change of the estimate:
            # the latter stalls early when the top two values are close
            if np.linalg.norm(w - est * v) <= tol * max(est, 1.0):
                break
            w_norm = np.linalg.norm(w)
            if w_norm == 0.0:
                break
            v = w / w_norm
        best = max(best, est)
    return float(np.sqrt(max(best, 0.0)))


def op_norm(A: Operator) -> float:
    return largest_singular_value(A.matrix)
