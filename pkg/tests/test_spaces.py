import json

import numpy as np
import pytest
from hypothesis import given
from hypothesis import strategies as st

from braket import (
    BraketError,
    ConventionError,
    Ket,
    SpaceLabel,
    SpaceMismatchError,
    basis,
    conjugate_scalar_mul,
    conjugation_map,
    inner_math,
    inner_phys,
    ket,
    norm,
    riesz_bra,
    riesz_inverse,
)
from braket.sampling import random_ket

from conftest import ket_pairs, scalars

S = 1 / np.sqrt(2)


def test_space_label_involution_and_validation():
    h = SpaceLabel(3)
    assert h.conj().conj() == h
    assert h.conj() != h
    with pytest.raises(BraketError):
        SpaceLabel(0)
    with pytest.raises(SpaceMismatchError):
        Ket(h, [1, 2])


def test_kets_are_immutable():
    x = ket([1, 2])
    with pytest.raises(ValueError):
        x.coords[0] = 5


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ([1, 0], [3 + 4j, 5], 3 - 4j),
        ([S, 1j * S], [S, 1j * S], 1),
        ([S, S], [S, -S], 0),
    ],
)
def test_inner_math_examples(x, y, expected):
    assert inner_math(ket(x), ket(y)) == pytest.approx(expected, abs=1e-15)


@pytest.mark.parametrize(
    "x, y, expected",
    [
        ([1, 0], [3 + 4j, 5], 3 + 4j),
        ([0, 1], [1j, 0], 0),
    ],
)
def test_inner_phys_examples(x, y, expected):
    assert inner_phys(ket(x), ket(y)) == pytest.approx(expected, abs=1e-15)


def test_inner_products_reject_mixed_spaces():
    with pytest.raises(SpaceMismatchError):
        inner_phys(ket([1, 0]), ket([1, 0, 0]))
    with pytest.raises(SpaceMismatchError):
        inner_math(ket([1, 0]), ket([1, 0], conjugated=True))


@pytest.mark.parametrize(
    "lam, x, expected",
    [(1j, [1, 0], [-1j, 0]), (1, [0.3, 2j], [0.3, 2j]), (2j, [0, 1], [0, -2j])],
)
def test_conjugate_scalar_mul(lam, x, expected):
    out = conjugate_scalar_mul(lam, ket(x, conjugated=True))
    assert out.space.conjugated
    np.testing.assert_array_equal(out.coords, expected)


def test_conjugate_scalar_mul_needs_conjugated_space():
    with pytest.raises(ConventionError):
        conjugate_scalar_mul(1j, ket([1, 0]))


def test_star_action_is_linear_for_the_conjugate_inner_product():
    x, y = ket([1 + 1j, 2], conjugated=True), ket([0.5, -1j], conjugated=True)
    lam = 0.3 - 2j
    assert inner_math(conjugate_scalar_mul(lam, x), y) == pytest.approx(lam * inner_math(x, y))


def test_conjugation_map_examples():
    cx = conjugation_map(ket([1 + 1j, 2]))
    assert cx.space == SpaceLabel(2, True)
    np.testing.assert_array_equal(cx.coords, [1 - 1j, 2])
    real = conjugation_map(ket([3.0, -1.0]))
    np.testing.assert_array_equal(real.coords, [3, -1])
    x = ket([0.1 + 2j, -3j, 4])
    assert conjugation_map(conjugation_map(x)).allclose(x, atol=0)


def test_conjugation_map_semilinear_on_the_set():
    x, lam = ket([1 + 2j, -1j]), 0.5 + 3j
    np.testing.assert_allclose(conjugation_map(lam * x).coords, np.conj(lam) * conjugation_map(x).coords)
    # and linear for the *-action of the target space
    assert conjugation_map(lam * x).allclose(conjugate_scalar_mul(lam, conjugation_map(x)))


@given(ket_pairs(conjugated=False))
def test_conjugation_map_is_an_isometric_isomorphism(pair):
    x, y = pair
    cx, cy = conjugation_map(x), conjugation_map(y)
    assert norm(cx) == pytest.approx(norm(x))
    assert inner_math(cx, cy) == pytest.approx(inner_math(x, y), abs=1e-9)
    # the naive set-level product sees the conjugate
    assert np.dot(cx.coords, cy.coords.conj()) == pytest.approx(np.conj(inner_math(x, y)), abs=1e-9)


def test_riesz_examples():
    y = ket([2 - 1j, 5j])
    alpha, beta = y.coords
    assert riesz_bra(ket([1, 0]))(y) == alpha
    assert riesz_bra(ket([0, 1j]))(y) == pytest.approx(-1j * beta)


def test_riesz_round_trip_and_norm(rng):
    for _ in range(100):
        n = int(rng.integers(1, 6))
        x = random_ket(rng, n, conjugated=bool(rng.integers(2)))
        b = riesz_bra(x)
        assert riesz_inverse(b).allclose(x, atol=1e-12)
        assert b.norm() == pytest.approx(norm(x), abs=1e-12)
        y = random_ket(rng, n, conjugated=x.space.conjugated)
        assert abs(b(y) - inner_phys(x, y)) < 1e-12
        assert b(x) == pytest.approx(norm(x) ** 2)


def test_riesz_bra_on_conjugate_space_is_linear_in_star_action():
    x = ket([1j, 2], conjugated=True)
    y = ket([3, 1 - 1j], conjugated=True)
    lam = 2 + 1j
    assert riesz_bra(x)(conjugate_scalar_mul(lam, y)) == pytest.approx(lam * riesz_bra(x)(y))


@pytest.mark.parametrize("coords, expected", [([1, 0], 1), ([3, 4], 5), ([0, 0], 0)])
def test_norm_examples(coords, expected):
    assert norm(ket(coords)) == expected
    assert norm(ket(coords, conjugated=True)) == expected


@given(ket_pairs())
def test_hermitian_symmetry(pair):
    x, y = pair
    assert inner_phys(x, y) == pytest.approx(np.conj(inner_phys(y, x)), abs=1e-9)
    assert inner_phys(x, y) == pytest.approx(np.conj(inner_math(x, y)), abs=1e-9)


@given(ket_pairs(conjugated=False), scalars, scalars)
def test_sesquilinearity(pair, lam, mu):
    x, y = pair
    lhs = inner_phys(lam * x, mu * y)
    assert lhs == pytest.approx(np.conj(lam) * mu * inner_phys(x, y), rel=1e-9, abs=1e-9)


@given(ket_pairs())
def test_parseval(pair):
    x, _ = pair
    n, conj = x.dim, x.space.conjugated
    total = sum(abs(inner_phys(basis(n, i, conj), x)) ** 2 for i in range(n))
    assert total == pytest.approx(norm(x) ** 2, rel=1e-12, abs=1e-12)


@given(ket_pairs())
def test_cauchy_schwarz(pair):
    x, y = pair
    assert abs(inner_phys(x, y)) <= norm(x) * norm(y) * (1 + 1e-12) + 1e-12


@given(ket_pairs(conjugated=False), st.data())
def test_cauchy_schwarz_equality_iff_rank_one(pair, data):
    x, y = pair
    gap = norm(x) * norm(y) - abs(inner_phys(x, y))
    rank = np.linalg.matrix_rank(np.vstack([x.coords, y.coords]), tol=1e-6)
    if rank <= 1:
        assert gap <= 1e-9 * max(1.0, norm(x) * norm(y))
    lam = data.draw(scalars)
    z = lam * x
    assert abs(abs(inner_phys(x, z)) - norm(x) * norm(z)) <= 1e-9 * max(1.0, norm(x) * norm(z))


def test_ket_json_round_trip():
    x = ket([0.1 + 2j, -3, 1e-300j], conjugated=True)
    data = json.loads(json.dumps(x.to_dict()))
    assert data["space"] == {"dim": 3, "conj": True}
    assert data["coords"][0] == [0.1, 2.0]
    assert Ket.from_dict(data).allclose(x, atol=0)
