"""Numbered invariant checks, grouped into suites, behind ``braket verify``.

A check returns the largest residual it observed; it passes when that residual
is at most its tolerance.  Random checks draw trial t from
``numpy.random.default_rng([seed, t])``, so results depend only on the flags.
"""

from __future__ import annotations

from dataclasses import asdict, dataclass
from typing import Callable

import numpy as np

from . import hilbert_schmidt as hs
from . import operators as ops
from . import quantum as qu
from . import spaces as sp
from . import tensor as tn
from .sampling import complex_normal, random_ket, random_operator, random_unitary

DEFAULT_TOL = 1e-12
POWER_TOL = 1e-9
SUITES = ("spaces", "operators", "hs", "tensor", "quantum")


@dataclass(frozen=True)
class Check:
    suite: str
    name: str
    fn: Callable
    tol: float = DEFAULT_TOL
    randomized: bool = True


@dataclass(frozen=True)
class CheckResult:
    suite: str
    number: int
    name: str
    residual: float
    tol: float
    passed: bool
    skipped: bool = False

    def to_dict(self) -> dict:
        return asdict(self)


REGISTRY: dict[str, list[Check]] = {s: [] for s in SUITES}


def check(suite: str, name: str, tol: float = DEFAULT_TOL, randomized: bool = True):
    def register(fn):
        REGISTRY[suite].append(Check(suite, name, fn, tol, randomized))
        return fn

    return register


def _maxabs(a) -> float:
    a = np.asarray(a)
    return float(np.max(np.abs(a))) if a.size else 0.0


def _dims(rng, lo=1, hi=5) -> int:
    return int(rng.integers(lo, hi + 1))


# -- spaces -------------------------------------------------------------------


@check("spaces", "Hermitian symmetry <x|y> = conj <y|x>")
def _(rng):
    n = _dims(rng)
    x, y = random_ket(rng, n), random_ket(rng, n)
    return abs(sp.inner_phys(x, y) - np.conj(sp.inner_phys(y, x)))


@check("spaces", "sesquilinearity <lx|my> = conj(l) m <x|y>")
def _(rng):
    n = _dims(rng)
    x, y = random_ket(rng, n), random_ket(rng, n)
    lam, mu = complex_normal(rng, 2)
    return abs(sp.inner_phys(lam * x, mu * y) - np.conj(lam) * mu * sp.inner_phys(x, y))


@check("spaces", "Parseval over the standard basis")
def _(rng):
    n = _dims(rng)
    x = random_ket(rng, n, conjugated=bool(rng.integers(2)))
    total = sum(abs(sp.inner_phys(sp.basis(n, i, x.space.conjugated), x)) ** 2 for i in range(n))
    return abs(total - sp.norm(x) ** 2)


@check("spaces", "Cauchy-Schwarz, with equality exactly for dependent pairs", tol=1e-9)
def _(rng):
    n = _dims(rng, 2, 5)
    x, y = random_ket(rng, n), random_ket(rng, n)
    excess = abs(sp.inner_phys(x, y)) - sp.norm(x) * sp.norm(y)
    z = complex(*rng.standard_normal(2)) * x
    gap_dependent = abs(abs(sp.inner_phys(x, z)) - sp.norm(x) * sp.norm(z))
    # independent random pair: the inequality is strict
    strict = sp.norm(x) * sp.norm(y) - abs(sp.inner_phys(x, y))
    return max(excess, gap_dependent, 0.0 if strict > 1e-9 else 1.0)


@check("spaces", "conjugation map: isometric, involutive, <Cx,Cy> = <x,y>")
def _(rng):
    n = _dims(rng)
    x, y = random_ket(rng, n), random_ket(rng, n)
    cx, cy = sp.conjugation_map(x), sp.conjugation_map(y)
    lam = complex(*rng.standard_normal(2))
    return max(
        abs(sp.norm(cx) - sp.norm(x)),
        _maxabs(sp.conjugation_map(cx).coords - x.coords),
        abs(sp.inner_math(cx, cy) - sp.inner_math(x, y)),
        _maxabs(sp.conjugation_map(lam * x).coords - np.conj(lam) * cx.coords),
    )


@check("spaces", "Riesz map: round trip, <x| y = <x|y>, ||<x|||= ||x||")
def _(rng):
    n = _dims(rng)
    x = random_ket(rng, n, conjugated=bool(rng.integers(2)))
    y = random_ket(rng, n, conjugated=x.space.conjugated)
    b = sp.riesz_bra(x)
    return max(
        _maxabs(sp.riesz_inverse(b).coords - x.coords),
        abs(b(y) - sp.inner_phys(x, y)),
        abs(b.norm() - sp.norm(x)),
    )


# -- operators ----------------------------------------------------------------


@check("operators", "adjoint: (ST)* = T*S*, (lA)* = conj(l)A*, A** = A")
def _(rng):
    a, b, c = (_dims(rng) for _ in range(3))
    T, S = random_operator(rng, a, b), random_operator(rng, b, c)
    lam = complex(*rng.standard_normal(2))
    return max(
        _maxabs(ops.adjoint(ops.compose(S, T)).matrix - ops.compose(ops.adjoint(T), ops.adjoint(S)).matrix),
        _maxabs(ops.adjoint(lam * T).matrix - np.conj(lam) * ops.adjoint(T).matrix),
        _maxabs(ops.adjoint(ops.adjoint(T)).matrix - T.matrix),
    )


@check("operators", "adjoint identity <z|Ax> = <A*z|x>")
def _(rng):
    a, b = _dims(rng), _dims(rng)
    A = random_operator(rng, a, b)
    x, z = random_ket(rng, a), random_ket(rng, b)
    return abs(sp.inner_phys(z, ops.apply(A, x)) - sp.inner_phys(ops.apply(ops.adjoint(A), z), x))


@check("operators", "dyad bilinearity over the conjugated domain")
def _(rng):
    a, b = _dims(rng), _dims(rng)
    x, z = random_ket(rng, a, conjugated=True), random_ket(rng, b)
    lam, mu = complex_normal(rng, 2)
    return _maxabs(ops.dyad(lam * x, mu * z).matrix - lam * mu * ops.dyad(x, z).matrix)


@check("operators", "dyads have rank one")
def _(rng):
    a, b = _dims(rng, 2, 5), _dims(rng, 2, 5)
    s = np.linalg.svd(ops.dyad(random_ket(rng, a), random_ket(rng, b)).matrix, compute_uv=False)
    return float(s[1])


@check("operators", "push identities T(z(x)x) = z(x)Tx and (z(x)x)S = S*z(x)x")
def _(rng):
    h, k, l = _dims(rng), _dims(rng), _dims(rng)
    x, z = random_ket(rng, h), random_ket(rng, k)
    T = random_operator(rng, h, l)
    S = random_operator(rng, l, k)
    left = ops.compose(T, ops.dyad(z, x)).matrix - ops.dyad(z, ops.apply(T, x)).matrix
    right = ops.compose(ops.dyad(z, x), S).matrix - ops.dyad(ops.apply(ops.adjoint(S), z), x).matrix
    return max(_maxabs(left), _maxabs(right))


@check("operators", "bra identities <z|A = <A*z| and <x|A* = <Ax|, <x|* l = l|x>")
def _(rng):
    a, b = _dims(rng), _dims(rng)
    A = random_operator(rng, a, b)
    x, z = random_ket(rng, a), random_ket(rng, b)
    lam = complex(*rng.standard_normal(2))
    J = ops.ket_as_map(x)
    return max(
        _maxabs(ops.bra_compose(z, A).coords - sp.riesz_bra(ops.apply(ops.adjoint(A), z)).coords),
        _maxabs(ops.bra_compose(x, ops.adjoint(A)).coords - sp.riesz_bra(ops.apply(A, x)).coords),
        _maxabs(ops.apply(J, sp.Ket(ops.SCALARS, [lam])).coords - lam * x.coords),
        _maxabs(ops.map_as_ket(J).coords - x.coords),
    )


@check("operators", "dyad composition (z2(x)w)(x(x)z1) = <z2|z1> x(x)w")
def _(rng):
    h, k, l = _dims(rng, 2, 4), _dims(rng, 2, 4), _dims(rng, 2, 4)
    x, z1, z2, w = random_ket(rng, h), random_ket(rng, k), random_ket(rng, k), random_ket(rng, l)
    lhs = ops.compose(ops.dyad(z2, w), ops.dyad(x, z1)).matrix
    return _maxabs(lhs - sp.inner_phys(z2, z1) * ops.dyad(x, w).matrix)


# -- hilbert-schmidt ----------------------------------------------------------


@check("hs", "identity: <Id,Id> = n, sigma_2(Id) = sqrt(n)", randomized=False)
def _(rng):
    return max(
        max(abs(hs.hs_inner(ops.identity(n), ops.identity(n)) - n) for n in range(1, 8)),
        max(abs(hs.hs_norm(ops.identity(n)) - np.sqrt(n)) for n in range(1, 8)),
    )


@check("hs", "dyad basis is orthonormal for all shapes up to 6x7", randomized=False)
def _(rng):
    worst = 0.0
    for m in range(1, 7):
        for n in range(1, 8):
            gram = _dyad_basis_gram(m, n)
            worst = max(worst, _maxabs(gram - np.eye(m * n)))
    return worst


def _dyad_basis_gram(m: int, n: int) -> np.ndarray:
    elems = [ops.dyad(sp.basis(m, i), sp.basis(n, j)) for i in range(m) for j in range(n)]
    return np.array([[hs.hs_inner(a, b) for b in elems] for a in elems])


@check("hs", "inner product: Hermitian, sesquilinear, positive")
def _(rng):
    a, b = _dims(rng), _dims(rng)
    S, T = random_operator(rng, a, b), random_operator(rng, a, b)
    lam, mu = complex_normal(rng, 2)
    positive = hs.hs_inner(S, S)
    return max(
        abs(hs.hs_inner(S, T) - np.conj(hs.hs_inner(T, S))),
        abs(hs.hs_inner(lam * S, mu * T) - lam * np.conj(mu) * hs.hs_inner(S, T)),
        abs(positive.imag),
        0.0 if positive.real > 0 else 1.0,
    )


@check("hs", "unitary invariance sigma_2(UTV) = sigma_2(T)")
def _(rng):
    a, b = _dims(rng), _dims(rng)
    T = random_operator(rng, a, b)
    U = ops.Operator.from_matrix(random_unitary(rng, b))
    V = ops.Operator.from_matrix(random_unitary(rng, a))
    return abs(hs.hs_norm(ops.compose(U, ops.compose(T, V))) - hs.hs_norm(T))


@check("hs", "dyad-basis reconstruction and Plancherel")
def _(rng):
    a, b = _dims(rng, 1, 6), _dims(rng, 1, 7)
    R = random_operator(rng, a, b)
    lam = hs.hs_coefficients(R)
    rebuilt = hs.hs_reconstruct(lam, R.domain, R.codomain)
    return max(_maxabs(rebuilt.matrix - R.matrix), abs(np.sum(np.abs(lam) ** 2) - hs.hs_norm(R) ** 2))


@check("hs", "2-summing domination, with equality on the standard basis", tol=POWER_TOL)
def _(rng):
    a, b = _dims(rng, 1, 6), _dims(rng, 1, 6)
    T = random_operator(rng, a, b)
    family = [random_ket(rng, a) for _ in range(int(rng.integers(1, 21)))]
    res = hs.two_summing_check(T, family)
    std = hs.two_summing_check(T, [sp.basis(a, i) for i in range(a)])
    return max(res.lhs - res.rhs, 0.0, abs(std.lhs - hs.hs_norm(T)), abs(std.rhs - std.lhs))


# -- tensor -------------------------------------------------------------------


@check("tensor", "kron is bilinear")
def _(rng):
    m, n = _dims(rng), _dims(rng)
    x, x2, y, y2 = random_ket(rng, m), random_ket(rng, m), random_ket(rng, n), random_ket(rng, n)
    lam = complex(*rng.standard_normal(2))
    left = tn.kron(lam * x + x2, y).coords - (lam * tn.kron(x, y).coords + tn.kron(x2, y).coords)
    right = tn.kron(x, lam * y + y2).coords - (lam * tn.kron(x, y).coords + tn.kron(x, y2).coords)
    return max(_maxabs(left), _maxabs(right))


@check("tensor", "<x1(x)z1 | x2(x)z2> = <x1|x2><z1|z2>")
def _(rng):
    m, n = _dims(rng), _dims(rng)
    x1, x2, z1, z2 = random_ket(rng, m), random_ket(rng, m), random_ket(rng, n), random_ket(rng, n)
    lhs = sp.inner_phys(tn.kron(x1, z1).as_ket(), tn.kron(x2, z2).as_ket())
    return abs(lhs - sp.inner_phys(x1, x2) * sp.inner_phys(z1, z2))


@check("tensor", "vec(y x^T) = kron(x, y), unvec inverts vec")
def _(rng):
    m, n = _dims(rng), _dims(rng)
    x, y = random_ket(rng, m), random_ket(rng, n)
    M = complex_normal(rng, (n, m))
    return max(
        _maxabs(tn.vec(np.outer(y.coords, x.coords)).coords - tn.kron(x, y).coords),
        _maxabs(tn.unvec(tn.vec(M)) - M),
    )


@check("tensor", "U_(x) intertwines: unvec((A(x)B) t) = B unvec(t) A^T")
def _(rng):
    m, n = _dims(rng), _dims(rng)
    A, B = random_operator(rng, m), random_operator(rng, n)
    t = tn.TensorElement((m, n), complex_normal(rng, m * n))
    moved = tn.tensor_to_hs(tn.apply_tensor(tn.kron_op(A, B), t)).matrix
    x, y = random_ket(rng, m), random_ket(rng, n)
    elementary = tn.tensor_to_hs(tn.kron(ops.apply(A, x), ops.apply(B, y))).matrix
    expected = ops.dyad(ops.apply(A, x).viewed_in(sp.SpaceLabel(m, True)), ops.apply(B, y)).matrix
    return max(
        _maxabs(moved - B.matrix @ tn.tensor_to_hs(t).matrix @ A.matrix.T),
        _maxabs(elementary - expected),
    )


@check("tensor", "U_(x) is isometric and invertible")
def _(rng):
    m, n = _dims(rng, 2, 5), _dims(rng, 2, 5)
    t = tn.TensorElement((m, n), complex_normal(rng, m * n))
    return max(abs(t.norm() - hs.hs_norm(tn.tensor_to_hs(t))), _maxabs(tn.hs_to_tensor(tn.tensor_to_hs(t)).coords - t.coords))


@check("tensor", "commutation matrices are permutations with K_mn K_nm = Id", randomized=False)
def _(rng):
    worst = 0.0
    for m in range(1, 5):
        for n in range(1, 5):
            K = tn.commutation_matrix(m, n).matrix
            perm = np.all(np.sum(K == 1, axis=0) == 1) and np.all(np.sum(K == 1, axis=1) == 1)
            perm = perm and np.count_nonzero(K) == m * n
            worst = max(worst, 0.0 if perm else 1.0)
            worst = max(worst, _maxabs(K @ tn.commutation_matrix(n, m).matrix - np.eye(m * n)))
    return worst


@check("tensor", "direct-sum isometry psi")
def _(rng):
    m, n = _dims(rng), _dims(rng)
    t = tn.TensorElement((m, n), complex_normal(rng, m * n))
    w = tn.direct_sum_iso(t)
    return max(abs(sum(sp.norm(w_j) ** 2 for w_j in w) - t.norm() ** 2), _maxabs(tn.direct_sum_inverse(w).coords - t.coords))


@check("tensor", "associativity: norm, elementary regrouping, operator U in any basis")
def _(rng):
    m, n, p = _dims(rng, 1, 4), _dims(rng, 1, 4), _dims(rng, 1, 4)
    r = tn.NestedTensor((m, n, p), "right", complex_normal(rng, m * n * p))
    left = tn.assoc_iso(r)
    x, z, u = random_ket(rng, m), random_ket(rng, n), random_ket(rng, p)
    via_u = tn.assoc_via_operator_u(r, random_unitary(rng, m), random_unitary(rng, n))
    return max(
        abs(left.norm() - r.norm()),
        _maxabs(tn.assoc_iso(tn.kron3(x, z, u, "right")).coords - tn.kron3(x, z, u, "left").coords),
        _maxabs(via_u.coords - left.coords),
    )


# -- quantum ------------------------------------------------------------------


@check("quantum", "every gate is unitary", tol=1e-15, randomized=False)
def _(rng):
    return max(_maxabs(g.matrix @ g.matrix.conj().T - np.eye(g.shape[0])) for g in qu.gates().values())


@check("quantum", "T is the reference 0, +-1 pattern and T T^T = Id_8", randomized=False)
def _(rng):
    T = qu.teleport_matrix().matrix
    entries = set(np.round(T.real * np.sqrt(2), 12).ravel()) <= {0.0, 1.0, -1.0}
    return max(_maxabs(T @ T.T - np.eye(8)), _maxabs(T.imag), 0.0 if entries else 1.0)


@check("quantum", "factorization T = (H (x) Id_4)(U_CN (x) Id_2)", tol=1e-15, randomized=False)
def _(rng):
    return _maxabs(qu.teleport_factorized().matrix - qu.teleport_matrix().matrix)


@check("quantum", "teleportation identity T(xi (x) phi+) = 1/2 sum e_i (x) T_i xi")
def _(rng):
    xi = qu.Qubit.random(rng)
    return _maxabs(qu.teleport_apply(xi).coords - qu.teleport_expansion(xi).coords)


@check("quantum", "fidelity 1 in every outcome branch", tol=1e-9)
def _(rng):
    xi = qu.Qubit.random(rng)
    return max(1.0 - qu.teleport(xi, 0, force=i).fidelity for i in range(1, 5))


@check("quantum", "general version witnessed by U_T = T, U_i = T_i", randomized=False)
def _(rng):
    T = qu.teleport_matrix()
    worst = 0.0
    for xi in (sp.ket([1, 0]), sp.ket([0, 1]), sp.ket([1, 1j]) * (1 / np.sqrt(2))):
        lhs = ops.apply(T, tn.kron(xi, qu.PHI_PLUS).as_ket()).coords
        worst = max(worst, _maxabs(lhs - qu.teleport_expansion(xi, qu.correction_gates()).coords))
    return max(worst, _maxabs(T.matrix @ T.matrix.conj().T - np.eye(8)))


def outcome_frequencies(xi: qu.Qubit, seed: int, n_trials: int = 10_000) -> np.ndarray:
    _, _, psi2 = qu.teleport_trace(xi)
    counts = np.zeros(4)
    for t in range(n_trials):
        counts[qu.measure_alice(psi2, seed * n_trials + t).outcome - 1] += 1
    return counts / n_trials


@check("quantum", "outcome frequencies within 0.25 +- 0.02 over 10000 shots", tol=0.02, randomized=False)
def _(rng):
    freqs = outcome_frequencies(qu.Qubit.from_amplitudes(0.6, 0.8j), seed=int(rng.integers(2**31)))
    return _maxabs(freqs - 0.25)


def run(suite: str = "all", trials: int = 100, seed: int = 0, tol: float | None = None) -> list[CheckResult]:
    if suite != "all" and suite not in REGISTRY:
        raise KeyError(suite)
    names = SUITES if suite == "all" else (suite,)
    results = []
    for s in names:
        for number, c in enumerate(REGISTRY[s], start=1):
            limit = tol if (tol is not None and c.tol == DEFAULT_TOL) else c.tol
            if c.randomized:
                if trials <= 0:
                    results.append(CheckResult(s, number, c.name, 0.0, limit, True, skipped=True))
                    continue
                residual = max(float(c.fn(np.random.default_rng([seed, t]))) for t in range(trials))
            else:
                residual = float(c.fn(np.random.default_rng([seed])))
            results.append(CheckResult(s, number, c.name, residual, limit, residual <= limit))
    return results
