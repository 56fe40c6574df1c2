import cmath
import math

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from sis_lab import fock, states, transforms
from sis_lab.errors import InadmissibleParams, NotPositiveDefinite
from sis_lab.fock import FockVector
from sis_lab.states import SisParams
from sis_lab.transforms import UncertaintyMatrix, uncertainty_matrix


def random_state(seed, support=25, n_max=64):
    rng = np.random.default_rng(seed)
    c = np.zeros(n_max + 1, dtype=complex)
    c[:support] = rng.normal(size=support) + 1j * rng.normal(size=support)
    return FockVector(c).normalized()


def admissible_uv(rng, ratio=0.9):
    k = rng.uniform(0, ratio)
    u = cmath.exp(1j * rng.uniform(-math.pi, math.pi)) / math.sqrt(1 - k * k)
    v = k * abs(u) * cmath.exp(1j * rng.uniform(-math.pi, math.pi))
    return u, v


def test_matrix_validation():
    with pytest.raises(ValueError):
        UncertaintyMatrix([[1, 0.2], [0.3, 1]], ("q", "p"))
    with pytest.raises(ValueError):
        UncertaintyMatrix(np.eye(4), "abcd")
    m = UncertaintyMatrix([[2, 0.5], [0.5, 1]], ("q", "p"))
    assert m.det == pytest.approx(1.75) and m.off_diagonal == 0.5
    with pytest.raises(ValueError):
        m.entries[0, 0] = 3


def test_vacuum_matrices():
    vac = FockVector.basis(0, 10)
    assert np.allclose(uncertainty_matrix(vac).entries, 0.5 * np.eye(2))
    assert np.allclose(uncertainty_matrix(vac, ("X_sa", "Y_sa")).entries, np.eye(2))


@settings(max_examples=30, deadline=None)
@given(st.integers(0, 2**31))
def test_symplectic_matrix_has_unit_determinant(seed):
    u, v = admissible_uv(np.random.default_rng(seed))
    assert np.linalg.det(transforms.symplectic_matrix(u, v)) == pytest.approx(1, abs=1e-10)


def test_symplectic_matrix_rejects_bad_pair():
    with pytest.raises(InadmissibleParams):
        transforms.symplectic_matrix(1, 0.5)


@pytest.mark.parametrize("seed", range(6))
def test_congruence_matches_transformed_quadratures(seed):
    rng = np.random.default_rng(seed)
    u, v = admissible_uv(rng)
    psi = random_state(seed)
    lam = transforms.symplectic_matrix(u, v)
    qq = lam[0, 0] * fock.q + lam[0, 1] * fock.p
    pp = lam[1, 0] * fock.q + lam[1, 1] * fock.p
    # the new pair is exactly the quadratures of u a + v a^dag
    lowered = (u * fock.a + v * fock.a_dag) - (qq + 1j * pp) * (1 / math.sqrt(2))
    assert fock.apply(lowered, psi).norm() < 1e-12
    direct = uncertainty_matrix(psi, (qq, pp)).entries
    moved = transforms.congruence(uncertainty_matrix(psi), lam).entries
    assert np.allclose(direct, moved, atol=1e-10)


def test_congruence_composes():
    sigma = uncertainty_matrix(random_state(3))
    a, b = transforms.rotation(0.3), transforms.symplectic_matrix(1.25, 0.75j)
    once = transforms.congruence(sigma, b @ a)
    twice = transforms.congruence(transforms.congruence(sigma, a), b)
    assert np.allclose(once.entries, twice.entries, atol=1e-12)


@pytest.mark.parametrize("seed", range(20))
@pytest.mark.parametrize("labels", [("q", "p"), ("X_sa", "Y_sa")])
def test_diagonalize_random_states(seed, labels):
    psi = random_state(seed)
    sigma = uncertainty_matrix(psi, labels)
    lam, diag = transforms.diagonalize_2x2(sigma)
    assert diag.off_diagonal < 1e-10 * max(1, np.max(np.abs(sigma.entries)))
    assert diag.det == pytest.approx(sigma.det, rel=1e-10)
    assert np.linalg.det(lam) == pytest.approx(1, abs=1e-14)
    assert abs(transforms.diagonalizing_angle(sigma)) <= math.pi / 4


@pytest.mark.parametrize("seed", range(8))
@pytest.mark.parametrize("labels", [("q", "p"), ("X_sa", "Y_sa")])
def test_phase_rotation_realizes_diagonal_form(seed, labels):
    psi = random_state(seed + 50)
    sigma = uncertainty_matrix(psi, labels)
    turned = fock.rotate_phase(psi, transforms.diagonalizing_phase(sigma))
    after = uncertainty_matrix(turned, labels)
    _, diag = transforms.diagonalize_2x2(sigma)
    assert after.off_diagonal < 1e-10 * max(1, np.max(np.abs(sigma.entries)))
    assert np.allclose(after.entries, diag.entries, atol=1e-9)


def test_diagonalize_rejects_indefinite():
    with pytest.raises(NotPositiveDefinite):
        transforms.diagonalize_2x2(UncertaintyMatrix([[1, 2], [2, 1]], ("q", "p")))
    with pytest.raises(ValueError):
        transforms.diagonalizing_phase(UncertaintyMatrix(np.eye(2), ("K1", "K2")))


@pytest.mark.parametrize("seed", range(6))
def test_robertson_gap_is_covariance_squared(seed):
    sigma = uncertainty_matrix(random_state(seed))
    assert transforms.robertson_gap(sigma) == pytest.approx(sigma.entries[0, 1] ** 2, abs=1e-12)
    assert transforms.robertson_gap(sigma) >= 0


def test_sis_matrix_sits_on_the_bound():
    p = SisParams(1.5 - 0.5j, 1.2, 0.4 + 0.5j)
    psi = states.sis(p, "odd")
    sigma = uncertainty_matrix(psi, ("X_sa", "Y_sa"))
    comm = 4 * fock.mean_number(psi) + 2
    assert sigma.det == pytest.approx(comm ** 2 / 4, rel=1e-9)
    _, diag = transforms.diagonalize_2x2(sigma)
    # after rotation the state is a Heisenberg-intelligent state
    assert diag.entries[0, 0] * diag.entries[1, 1] == pytest.approx(comm ** 2 / 4, rel=1e-9)


def test_fock_k_matrix():
    m = transforms.k_uncertainty_3x3(FockVector.basis(2, 20)).entries
    assert np.allclose(m, np.diag([7 / 8, 7 / 8, 0]), atol=1e-12)


@pytest.mark.parametrize("alpha", [0.5, 1.2 - 0.7j, 2j])
def test_his_k_matrix_couples_k3(alpha):
    # the K1-K2 block is diagonal with equal entries; K3 still couples to both
    z = alpha ** 2
    psi = states.sis(SisParams(z, 1, 0), "even")
    m = transforms.k_uncertainty_3x3(psi).entries
    assert abs(m[0, 1]) < 1e-9
    assert m[0, 0] == pytest.approx(m[1, 1], rel=1e-10)
    assert m[0, 2] == pytest.approx(z.real / 4, abs=1e-9)
    assert m[1, 2] == pytest.approx(-z.imag / 4, abs=1e-9)


@pytest.mark.parametrize("seed", range(5))
def test_k12_rotation_leaves_k3(seed):
    sigma = transforms.k_uncertainty_3x3(random_state(seed))
    lam, out = transforms.diagonalize_k12(sigma)
    assert abs(out.entries[0, 1]) < 1e-10 * max(1, np.max(np.abs(sigma.entries)))
    assert out.entries[2, 2] == pytest.approx(sigma.entries[2, 2])
    assert out.det == pytest.approx(sigma.det, rel=1e-9, abs=1e-12)
