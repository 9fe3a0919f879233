"""Hilbert-Schmidt inner product, norm and dyad-basis coefficients, plus the
finite-dimensional 2-summing inequality."""

from __future__ import annotations

from dataclasses import dataclass
from typing import Sequence

import numpy as np

from .operators import Operator, _same_spaces, adjoint, apply, compose, dyad, largest_singular_value, trace
from .spaces import Ket, SpaceLabel, SpaceMismatchError, basis, inner_math

__all__ = [
    "hs_inner",
    "hs_norm",
    "hs_coefficients",
    "hs_reconstruct",
    "weak_l2_norm",
    "strong_l2_norm",
    "TwoSummingCheck",
    "two_summing_check",
]


def hs_inner(S: Operator, T: Operator) -> complex:
    """<S, T> = tr(S T^*); linear in S, conjugate-linear in T."""
    _same_spaces(S, T)
    return trace(compose(S, adjoint(T)))


def hs_norm(T: Operator) -> float:
    """sigma_2(T), the Frobenius norm of the matrix."""
    return float(np.sqrt(np.sum(np.abs(T.matrix) ** 2)))


def hs_coefficients(R: Operator) -> np.ndarray:
    """lambda[i, j] = <R e_i, f_j> over the standard bases of domain and codomain."""
    out = np.empty((R.domain.dim, R.codomain.dim), dtype=np.complex128)
    for i in range(R.domain.dim):
        Re_i = apply(R, basis(R.domain.dim, i, R.domain.conjugated))
        for j in range(R.codomain.dim):
            out[i, j] = inner_math(Re_i, basis(R.codomain.dim, j, R.codomain.conjugated))
    return out


def hs_reconstruct(coeffs: np.ndarray, domain: SpaceLabel, codomain: SpaceLabel) -> Operator:
    """sum_ij lambda[i, j] e_i (x) f_j."""
    coeffs = np.asarray(coeffs)
    if coeffs.shape != (domain.dim, codomain.dim):
        raise SpaceMismatchError(f"coefficient shape {coeffs.shape} vs ({domain.dim}, {codomain.dim})")
    total = np.zeros((codomain.dim, domain.dim), dtype=np.complex128)
    for i in range(domain.dim):
        e_i = basis(domain.dim, i, domain.conjugated)
        for j in range(codomain.dim):
            total += coeffs[i, j] * dyad(e_i, basis(codomain.dim, j, codomain.conjugated)).matrix
    return Operator(domain, codomain, total)


def _common_space(family: Sequence[Ket]) -> SpaceLabel:
    space = family[0].space
    for x in family[1:]:
        if x.space != space:
            raise SpaceMismatchError("family members live in different spaces")
    return space


def weak_l2_norm(family: Sequence[Ket]) -> float:
    """sup over unit a of (sum_i |<x_i, a>|^2)^(1/2).

    In finite dimension that supremum is the largest singular value of the
    matrix whose rows are the conjugated coordinate vectors.
    """
    family = list(family)
    if not family:
        return 0.0
    _common_space(family)
    rows = np.array([x.lin.conj() for x in family])
    return largest_singular_value(rows)


def strong_l2_norm(family: Sequence[Ket]) -> float:
    return float(np.sqrt(sum(np.sum(np.abs(x.coords) ** 2) for x in family)))


@dataclass(frozen=True)
class TwoSummingCheck:
    lhs: float
    rhs: float
    ok: bool


def two_summing_check(T: Operator, family: Sequence[Ket], tol: float = 1e-9) -> TwoSummingCheck:
    """Compare (sum ||T x_i||^2)^(1/2) with sigma_2(T) * weak_l2_norm(family)."""
    family = list(family)
    if family and _common_space(family) != T.domain:
        raise SpaceMismatchError(f"family lives in {family[0].space}, operator acts on {T.domain}")
    lhs = strong_l2_norm([apply(T, x) for x in family])
    rhs = hs_norm(T) * weak_l2_norm(family)
    return TwoSummingCheck(lhs, rhs, lhs <= rhs + tol)
