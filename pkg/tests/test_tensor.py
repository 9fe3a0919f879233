import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from braket import (
    ConventionError,
    Operator,
    SpaceLabel,
    SpaceMismatchError,
    apply,
    basis,
    compose,
    dyad,
    identity,
    inner_phys,
    ket,
    norm,
)
from braket.hilbert_schmidt import hs_norm
from braket.sampling import complex_normal, random_ket, random_operator, random_unitary
from braket.tensor import (
    NestedTensor,
    TensorElement,
    apply_tensor,
    assoc_iso,
    assoc_iso_inverse,
    assoc_via_operator_u,
    commutation_matrix,
    direct_sum_inverse,
    direct_sum_iso,
    hs_to_tensor,
    kron,
    kron3,
    kron_matrices,
    kron_op,
    nest,
    tensor_to_hs,
    unvec,
    vec,
)

from conftest import ket_pairs, scalars

S = 1 / np.sqrt(2)


def kron_by_loops(x, y):
    out = np.zeros(len(x) * len(y), dtype=complex)
    for i in range(len(x)):
        for j in range(len(y)):
            out[i * len(y) + j] = x[i] * y[j]
    return out


def test_kron_examples():
    np.testing.assert_array_equal(kron(basis(2, 0), basis(2, 1)).coords, [0, 1, 0, 0])
    phi = (kron(basis(2, 0), basis(2, 0)) + kron(basis(2, 1), basis(2, 1))) * S
    np.testing.assert_allclose(phi.coords, S * np.array([1, 0, 0, 1]), atol=1e-15)


def test_kron_index_rule(rng):
    for _ in range(50):
        x, y = random_ket(rng, int(rng.integers(1, 6))), random_ket(rng, int(rng.integers(1, 6)))
        t = kron(x, y)
        np.testing.assert_allclose(t.coords, kron_by_loops(x.coords, y.coords), rtol=0, atol=1e-15)
        assert t.dims == (x.dim, y.dim)
        assert abs(t.norm() - norm(x) * norm(y)) < 1e-12


@given(ket_pairs(), scalars)
def test_kron_bilinear(pair, lam):
    x, x2 = pair
    y = ket([1 - 1j, 0.5, 2j])
    lhs = kron(lam * x + x2, y).coords
    np.testing.assert_allclose(lhs, lam * kron(x, y).coords + kron(x2, y).coords, atol=1e-9)
    np.testing.assert_allclose(kron(y, lam * x + x2).coords, lam * kron(y, x).coords + kron(y, x2).coords, atol=1e-9)


def test_kron_inner_product_multiplicative(rng):
    for _ in range(50):
        x1, x2 = random_ket(rng, 3), random_ket(rng, 3)
        z1, z2 = random_ket(rng, 4), random_ket(rng, 4)
        lhs = inner_phys(kron(x1, z1).as_ket(), kron(x2, z2).as_ket())
        assert abs(lhs - inner_phys(x1, x2) * inner_phys(z1, z2)) < 1e-12


def test_kron_op_examples(rng):
    np.testing.assert_array_equal(kron_op(identity(2), identity(2)).matrix, np.eye(4))
    for _ in range(20):
        A, B = random_operator(rng, 2), random_operator(rng, 2)
        K = kron_op(A, B)
        np.testing.assert_allclose(K.matrix, np.kron(A.matrix, B.matrix), atol=1e-15)
        x, y = random_ket(rng, 2), random_ket(rng, 2)
        lhs = apply(K, kron(x, y).as_ket()).coords
        assert np.allclose(lhs, kron(apply(A, x), apply(B, y)).coords, atol=1e-12)


def test_kron_matrices_block_structure(rng):
    a, b = complex_normal(rng, (2, 3)), complex_normal(rng, (4, 2))
    k = kron_matrices(a, b)
    for i in range(2):
        for j in range(3):
            np.testing.assert_array_equal(k[4 * i:4 * i + 4, 2 * j:2 * j + 2], a[i, j] * b)


def test_kron_op_rejects_mixed_labels():
    with pytest.raises(ConventionError):
        kron_op(identity(SpaceLabel(2, True)), identity(2))


def test_vec_stacking_order_over_basis_dyads():
    for i in range(2):
        for j in range(2):
            x, y = basis(2, i), basis(2, j)
            yxT = np.outer(y.coords, x.coords)
            np.testing.assert_array_equal(vec(yxT).coords, kron(x, y).coords)
    np.testing.assert_array_equal(vec(np.array([[1, 2], [3, 4]])).coords, [1, 3, 2, 4])


def test_vec_unvec(rng):
    for _ in range(20):
        a = complex_normal(rng, (3, 4))
        np.testing.assert_array_equal(unvec(vec(a)), a)
        x, y = random_ket(rng, 4), random_ket(rng, 3)
        np.testing.assert_allclose(vec(np.outer(y.coords, x.coords)).coords, kron(x, y).coords, atol=1e-12)
    A = random_operator(rng, 2, 3)
    np.testing.assert_array_equal(unvec(vec(A)), A.matrix)


def test_commutation_examples():
    for n in range(1, 5):
        np.testing.assert_array_equal(commutation_matrix(1, n).matrix, np.eye(n))
    K = commutation_matrix(2, 2)
    images = [apply(K, basis(4, k)).coords for k in range(4)]
    np.testing.assert_array_equal(np.array(images).T, np.eye(4)[:, [0, 2, 1, 3]])


@pytest.mark.parametrize("m", [2, 3])
@pytest.mark.parametrize("n", [2, 3, 4])
def test_commutation_inverse_pair(m, n):
    P = compose(commutation_matrix(m, n), commutation_matrix(n, m)).matrix
    np.testing.assert_array_equal(P, np.eye(m * n))


@pytest.mark.parametrize("m,n", [(1, 3), (2, 3), (3, 2), (4, 5)])
def test_commutation_is_permutation_and_swaps(m, n, rng):
    K = commutation_matrix(m, n).matrix
    assert set(np.unique(K)) <= {0, 1}
    np.testing.assert_array_equal(K.sum(axis=0), 1)
    np.testing.assert_array_equal(K.sum(axis=1), 1)
    xs = [random_ket(rng, m) for _ in range(3)]
    ys = [random_ket(rng, n) for _ in range(3)]
    lhs = sum(kron(x, y).coords for x, y in zip(xs, ys))
    rhs = K @ sum(kron(y, x).coords for x, y in zip(xs, ys))
    np.testing.assert_allclose(lhs, rhs, atol=1e-12)


def test_tensor_to_hs_on_elementary_tensors(rng):
    x, y = random_ket(rng, 3), random_ket(rng, 2)
    T = tensor_to_hs(kron(x, y))
    assert T.domain == SpaceLabel(3, True) and T.codomain == SpaceLabel(2)
    np.testing.assert_allclose(T.matrix, np.outer(y.coords, x.coords), atol=1e-15)
    assert T.allclose(dyad(x.viewed_in(SpaceLabel(3, True)), y))


def test_tensor_to_hs_isometry_and_round_trip(rng):
    for _ in range(100):
        m, n = (int(d) for d in rng.integers(1, 6, size=2))
        t = TensorElement((m, n), complex_normal(rng, m * n))
        T = tensor_to_hs(t)
        assert abs(t.norm() - hs_norm(T)) < 1e-12
        assert hs_to_tensor(T).allclose(t, atol=0)
        assert hs_to_tensor(T).dims == (m, n)


def test_tensor_to_hs_intertwines(rng):
    A, B = random_operator(rng, 3), random_operator(rng, 2)
    x, y = random_ket(rng, 3), random_ket(rng, 2)
    t = apply_tensor(kron_op(A, B), kron(x, y))
    Ax, By = apply(A, x), apply(B, y)
    assert tensor_to_hs(t).allclose(dyad(Ax.viewed_in(SpaceLabel(3, True)), By))
    # general t: matrix transforms as B M A^T
    t = TensorElement((3, 2), complex_normal(rng, 6))
    lhs = tensor_to_hs(apply_tensor(kron_op(A, B), t)).matrix
    np.testing.assert_allclose(lhs, B.matrix @ unvec(t) @ A.matrix.T, atol=1e-12)


def test_hs_to_tensor_rejects_plain_domain(rng):
    with pytest.raises(ConventionError):
        hs_to_tensor(random_operator(rng, 2, 3))
    with pytest.raises(ConventionError):
        hs_to_tensor(random_operator(rng, 2, 3, domain_conj=True, codomain_conj=True))


def test_direct_sum_examples(rng):
    x = random_ket(rng, 3)
    w = direct_sum_iso(kron(x, basis(2, 1)))
    assert len(w) == 2
    np.testing.assert_array_equal(w[0].coords, 0)
    assert w[1].allclose(x, atol=0)
    z = random_ket(rng, 4)
    for j, w_j in enumerate(direct_sum_iso(kron(x, z))):
        assert w_j.allclose(z.coords[j] * x)


def test_direct_sum_isometry(rng):
    for _ in range(50):
        m, n = (int(d) for d in rng.integers(1, 6, size=2))
        t = TensorElement((m, n), complex_normal(rng, m * n))
        w = direct_sum_iso(t)
        assert len(w) == n and all(w_j.dim == m for w_j in w)
        assert abs(sum(norm(w_j) ** 2 for w_j in w) - t.norm() ** 2) < 1e-12
        assert direct_sum_inverse(w).allclose(t, atol=1e-15)


def test_assoc_examples():
    x, z, u = basis(2, 0), basis(2, 1), basis(2, 0)
    right = kron3(x, z, u, "right")
    left = kron3(x, z, u, "left")
    np.testing.assert_array_equal(right.coords, left.coords)
    np.testing.assert_array_equal(assoc_iso(right).coords, left.coords)
    assert assoc_iso(right).grouping == "left"


def test_assoc_on_random_elementary_tensors(rng):
    for _ in range(20):
        x, z, u = random_ket(rng, 2), random_ket(rng, 3), random_ket(rng, 4)
        out = assoc_iso(kron3(x, z, u, "right"))
        np.testing.assert_allclose(out.coords, kron_by_loops(kron_by_loops(x.coords, z.coords), u.coords), atol=1e-12)
        assert out.as_pair().dims == (6, 4)


def test_assoc_norm_and_inverse(rng):
    for _ in range(20):
        r = NestedTensor((2, 3, 4), "right", complex_normal(rng, 24))
        out = assoc_iso(r)
        assert abs(out.norm() - r.norm()) < 1e-12
        assert assoc_iso_inverse(out).grouping == "right"
        np.testing.assert_array_equal(assoc_iso_inverse(out).coords, r.coords)
    with pytest.raises(SpaceMismatchError):
        assoc_iso(assoc_iso(r))


def test_assoc_commutes_with_middle_basis_change(rng):
    for _ in range(20):
        r = NestedTensor((2, 3, 4), "right", complex_normal(rng, 24))
        U = random_unitary(rng, 3)
        # Id (x) (U (x) Id) on the right bracketing; (Id (x) U) (x) Id on the left
        right_op = np.kron(np.eye(2), np.kron(U, np.eye(4)))
        left_op = np.kron(np.kron(np.eye(2), U), np.eye(4))
        before = assoc_iso(NestedTensor(r.dims, "right", right_op @ r.coords))
        after = left_op @ assoc_iso(r).coords
        np.testing.assert_allclose(before.coords, after, atol=1e-12)


def test_assoc_matches_operator_formula(rng):
    for _ in range(10):
        r = NestedTensor((2, 3, 2), "right", complex_normal(rng, 12))
        expected = assoc_iso(r).coords
        np.testing.assert_allclose(assoc_via_operator_u(r).coords, expected, atol=1e-12)
        g, h = random_unitary(rng, 2), random_unitary(rng, 3)
        np.testing.assert_allclose(assoc_via_operator_u(r, g, h).coords, expected, atol=1e-12)


def test_nest_checks_shapes():
    t = TensorElement((2, 6), np.arange(12))
    assert nest(t, (2, 3)).dims == (2, 2, 3)
    assert nest(TensorElement((6, 2), np.arange(12)), (2, 3), "left").dims == (2, 3, 2)
    with pytest.raises(SpaceMismatchError):
        nest(t, (4, 2))


def test_tensor_json_round_trip(rng):
    t = TensorElement((2, 3), complex_normal(rng, 6))
    data = json.loads(json.dumps(t.to_dict()))
    assert data["factors"] == [2, 3]
    assert TensorElement.from_dict(data).allclose(t, atol=0)


@given(st.integers(1, 4), st.integers(1, 4), st.integers(0, 2**32 - 1))
def test_regroup_preserves_coordinates(m, n, seed):
    t = TensorElement((m, n), complex_normal(np.random.default_rng(seed), m * n))
    assert t.regroup((n, m)).norm() == t.norm()
    with pytest.raises(SpaceMismatchError):
        TensorElement((m, n), np.zeros(m * n + 1))
