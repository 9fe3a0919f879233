"""Kronecker realization of C^m (x) C^n and the isomorphisms around it.

Index rule used everywhere below: the coordinate of x (x) y at position
i*n + j is x_i * y_j, i.e. x (x) y = (x_1 y^T | x_2 y^T | ...)^T = vec(y x^T)
with column-stacking vec.
"""

from __future__ import annotations

from dataclasses import dataclass
from typing import Literal, Sequence

import numpy as np

from .operators import Operator, apply
from .spaces import (
    BraketError,
    ConventionError,
    Ket,
    SpaceLabel,
    SpaceMismatchError,
    _frozen_array,
    _pairs,
    _unpairs,
    basis,
    inner_math,
)

__all__ = [
    "TensorElement",
    "NestedTensor",
    "kron",
    "kron_matrices",
    "kron_op",
    "apply_tensor",
    "vec",
    "unvec",
    "commutation_matrix",
    "tensor_to_hs",
    "hs_to_tensor",
    "direct_sum_iso",
    "direct_sum_inverse",
    "kron3",
    "nest",
    "assoc_iso",
    "assoc_iso_inverse",
    "operator_u_apply",
    "assoc_via_operator_u",
]


@dataclass(frozen=True, eq=False)
class TensorElement:
    factors: tuple[SpaceLabel, SpaceLabel]
    coords: np.ndarray

    def __post_init__(self):
        factors = tuple(f if isinstance(f, SpaceLabel) else SpaceLabel(f) for f in self.factors)
        if len(factors) != 2:
            raise BraketError("a tensor element has exactly two factors")
        object.__setattr__(self, "factors", factors)
        object.__setattr__(self, "coords", _frozen_array(self.coords, factors[0].dim * factors[1].dim))

    @property
    def dims(self) -> tuple[int, int]:
        return self.factors[0].dim, self.factors[1].dim

    def norm(self) -> float:
        """sigma(t), the norm induced by <x1 (x) z1, x2 (x) z2> = <x1,x2><z1,z2>."""
        return float(np.linalg.norm(self.coords))

    def as_ket(self) -> Ket:
        return Ket(SpaceLabel(self.coords.shape[0]), self.coords)

    @classmethod
    def from_ket(cls, x: Ket, factors) -> TensorElement:
        return cls(tuple(factors), x.coords)

    def regroup(self, factors) -> TensorElement:
        """Same coordinates read with another two-way split of the total dimension."""
        return TensorElement(tuple(factors), self.coords)

    def blocks(self) -> np.ndarray:
        """Coordinates as an (m, n) array; row i is the block of e_i."""
        return self.coords.reshape(self.dims)

    def allclose(self, other: TensorElement, atol: float = 1e-12) -> bool:
        return self.dims == other.dims and bool(np.allclose(self.coords, other.coords, rtol=0, atol=atol))

    def to_dict(self) -> dict:
        return {"factors": list(self.dims), "coords": _pairs(self.coords)}

    @classmethod
    def from_dict(cls, data: dict) -> TensorElement:
        return cls(tuple(SpaceLabel(int(d)) for d in data["factors"]), _unpairs(data["coords"]))

    def __add__(self, other: TensorElement) -> TensorElement:
        if self.factors != other.factors:
            raise SpaceMismatchError(f"{self.dims} vs {other.dims}")
        return TensorElement(self.factors, self.coords + other.coords)

    def __mul__(self, scalar) -> TensorElement:
        return TensorElement(self.factors, complex(scalar) * self.coords)

    __rmul__ = __mul__


def kron(x: Ket, y: Ket) -> TensorElement:
    return TensorElement((x.space, y.space), np.outer(x.coords, y.coords).reshape(-1))


def kron_matrices(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Block matrix whose (i, j) block is a[i, j] * b."""
    a = np.asarray(a, dtype=np.complex128)
    b = np.asarray(b, dtype=np.complex128)
    (p, q), (r, s) = a.shape, b.shape
    return (a[:, None, :, None] * b[None, :, None, :]).reshape(p * r, q * s)


def _product_label(a: SpaceLabel, b: SpaceLabel) -> SpaceLabel:
    if a.conjugated != b.conjugated:
        raise ConventionError("cannot tensor a plain space with a conjugated one")
    return SpaceLabel(a.dim * b.dim, a.conjugated)


def kron_op(A: Operator, B: Operator) -> Operator:
    return Operator(
        _product_label(A.domain, B.domain),
        _product_label(A.codomain, B.codomain),
        kron_matrices(A.matrix, B.matrix),
    )


def apply_tensor(A: Operator, t: TensorElement, factors=None) -> TensorElement:
    """A applied to the flat coordinates of t, split again as ``factors``."""
    out = apply(A, t.as_ket())
    if factors is None:
        if A.codomain.dim != A.domain.dim:
            raise BraketError("pass the output factors for a non-square operator")
        factors = t.factors
    return TensorElement.from_ket(out, factors)


def vec(A) -> TensorElement:
    """Column-stacking vec of a matrix (or an operator's matrix).

    An n x m matrix becomes an element of C^m (x) C^n, so vec(y x^T) == kron(x, y).
    """
    m = np.asarray(A.matrix if isinstance(A, Operator) else A, dtype=np.complex128)
    if m.ndim != 2:
        raise SpaceMismatchError("vec needs a 2-D array")
    rows, cols = m.shape
    return TensorElement((SpaceLabel(cols), SpaceLabel(rows)), m.T.reshape(-1))


def unvec(t: TensorElement) -> np.ndarray:
    m, n = t.dims
    return t.coords.reshape(m, n).T.copy()


def commutation_matrix(m: int, n: int) -> Operator:
    """K_{m,n} = sum_ij (e_i e_j^T) (x) (e_j e_i^T); maps y (x) x to x (x) y."""
    if m < 1 or n < 1:
        raise BraketError("commutation matrix needs m, n >= 1")
    total = np.zeros((m * n, m * n))
    for i in range(m):
        for j in range(n):
            e_ij = np.zeros((m, n))
            e_ij[i, j] = 1.0
            total += kron_matrices(e_ij, e_ij.T).real
    return Operator.from_matrix(total)


def tensor_to_hs(t: TensorElement) -> Operator:
    """U_(x): C^m (x) C^n -> S_2(conj C^m, C^n), x (x) y -> the dyad with matrix y x^T."""
    m, n = t.dims
    return Operator(SpaceLabel(m, conjugated=True), SpaceLabel(n), unvec(t))


def hs_to_tensor(T: Operator) -> TensorElement:
    if not T.domain.conjugated:
        raise ConventionError("expected an operator on a conjugated space; apply conjugation explicitly")
    if T.codomain.conjugated:
        raise ConventionError("expected a plain codomain")
    return vec(T.matrix)


def direct_sum_iso(t: TensorElement) -> list[Ket]:
    """psi: C^m (x) C^n -> (C^m)^n; x (x) z -> (<z, f_j> x)_j."""
    space = t.factors[0]
    return [Ket(space, col) for col in t.blocks().T]


def direct_sum_inverse(w: Sequence[Ket]) -> TensorElement:
    """psi^-1(w) = sum_j w_j (x) f_j."""
    w = list(w)
    if not w:
        raise BraketError("empty direct sum")
    n = len(w)
    space = w[0].space
    total = np.zeros(space.dim * n, dtype=np.complex128)
    for j, w_j in enumerate(w):
        if w_j.space != space:
            raise SpaceMismatchError("direct-sum components must share a space")
        total += kron(w_j, basis(n, j)).coords
    return TensorElement((space, SpaceLabel(n)), total)


Grouping = Literal["right", "left"]


@dataclass(frozen=True, eq=False)
class NestedTensor:
    """An element of C^m (x) C^n (x) C^p stored flat.

    ``grouping`` records the bracketing: "right" is H (x) (K (x) L) with flat
    index ordered (i, (j, k)), "left" is (H (x) K) (x) L with ((i, j), k).
    """

    dims: tuple[int, int, int]
    grouping: Grouping
    coords: np.ndarray

    def __post_init__(self):
        dims = tuple(int(d) for d in self.dims)
        if len(dims) != 3 or min(dims) < 1:
            raise BraketError(f"bad factor dims {self.dims}")
        if self.grouping not in ("right", "left"):
            raise BraketError(f"unknown grouping {self.grouping!r}")
        object.__setattr__(self, "dims", dims)
        object.__setattr__(self, "coords", _frozen_array(self.coords, dims[0] * dims[1] * dims[2]))

    def as_pair(self) -> TensorElement:
        m, n, p = self.dims
        factors = (m, n * p) if self.grouping == "right" else (m * n, p)
        return TensorElement(factors, self.coords)

    def coefficients(self) -> np.ndarray:
        """c[i, j, k], the coefficient of e_i (x) f_j (x) g_k."""
        return self.coords.reshape(self.dims)

    def norm(self) -> float:
        return float(np.linalg.norm(self.coords))


def kron3(x: Ket, z: Ket, u: Ket, grouping: Grouping = "right") -> NestedTensor:
    if grouping == "right":
        flat = kron(x, kron(z, u).as_ket()).coords
    else:
        flat = kron(kron(x, z).as_ket(), u).coords
    return NestedTensor((x.dim, z.dim, u.dim), grouping, flat)


def nest(t: TensorElement, inner: tuple[int, int], grouping: Grouping = "right") -> NestedTensor:
    """Declare that one factor of t is itself a product of dims ``inner``."""
    m, n = t.dims
    a, b = inner
    if grouping == "right":
        if n != a * b:
            raise SpaceMismatchError(f"second factor has dim {n}, not {a}*{b}")
        return NestedTensor((m, a, b), "right", t.coords)
    if m != a * b:
        raise SpaceMismatchError(f"first factor has dim {m}, not {a}*{b}")
    return NestedTensor((a, b, n), "left", t.coords)


def assoc_iso(r: NestedTensor) -> NestedTensor:
    """H (x) (K (x) L) -> (H (x) K) (x) L.

    Under the flat index rule both bracketings enumerate coefficients in the
    same order, so only the grouping changes; ``assoc_via_operator_u``
    computes the same map from the operator formula.
    """
    if r.grouping != "right":
        raise SpaceMismatchError("expected an element of H (x) (K (x) L)")
    return NestedTensor(r.dims, "left", r.coords)


def assoc_iso_inverse(r: NestedTensor) -> NestedTensor:
    if r.grouping != "left":
        raise SpaceMismatchError("expected an element of (H (x) K) (x) L")
    return NestedTensor(r.dims, "right", r.coords)


def _r_images(r: NestedTensor) -> list[Operator]:
    """R e_i for R = U_(x)(r) in S_2(conj H, S_2(conj K, L)); each is an operator conj K -> L."""
    m, n, p = r.dims
    c = r.coefficients()
    return [tensor_to_hs(TensorElement((n, p), c[i].reshape(-1))) for i in range(m)]


def _columns(q, dim: int) -> list[np.ndarray]:
    q = np.eye(dim) if q is None else np.asarray(q, dtype=np.complex128)
    if q.shape != (dim, dim):
        raise SpaceMismatchError(f"basis matrix must be {dim}x{dim}")
    return [q[:, a] for a in range(dim)]


def operator_u_apply(r: NestedTensor, T: Operator, h_basis=None, k_basis=None) -> Ket:
    """U_R(T) = sum_ab <h_b, T g_a>_K (R g_a) h_b.

    ``h_basis`` and ``k_basis`` are unitary matrices whose columns are the
    orthonormal bases g_a of H and h_b of K; the standard bases by default.
    The result must not depend on that choice.
    """
    if r.grouping != "right":
        raise SpaceMismatchError("expected an element of H (x) (K (x) L)")
    m, n, p = r.dims
    h_conj = SpaceLabel(m, conjugated=True)
    k_conj = SpaceLabel(n, conjugated=True)
    if T.domain != h_conj or T.codomain != SpaceLabel(n):
        raise SpaceMismatchError(f"T must map {h_conj} into C^{n}")
    images = _r_images(r)
    out = np.zeros(p, dtype=np.complex128)
    for g in _columns(h_basis, m):
        g_conj = Ket(h_conj, g)
        # R is linear on conj H: R g = sum_i <g, e_i>_{conj H} R e_i
        Rg = sum((np.conj(g[i]) * images[i].matrix for i in range(m)), np.zeros((p, n), dtype=np.complex128))
        Tg = apply(T, g_conj)
        for h in _columns(k_basis, n):
            weight = inner_math(Ket(SpaceLabel(n), h), Tg)
            out += weight * apply(Operator(k_conj, SpaceLabel(p), Rg), Ket(k_conj, h)).coords
    return Ket(SpaceLabel(p), out)


def assoc_via_operator_u(r: NestedTensor, h_basis=None, k_basis=None) -> NestedTensor:
    """Regrouping computed as U_R on the basis e_i (x) f_j of S_2(conj H, K)."""
    m, n, p = r.dims
    columns = []
    for i in range(m):
        for j in range(n):
            E_ij = tensor_to_hs(kron(basis(m, i), basis(n, j)))
            columns.append(operator_u_apply(r, E_ij, h_basis, k_basis).coords)
    U_R = Operator(SpaceLabel(m * n, conjugated=True), SpaceLabel(p), np.array(columns).T)
    return nest(hs_to_tensor(U_R), (m, n), grouping="left")
