"""
Uncertainty matrices and their linear transformations.

A second-moment matrix sigma of observables (X_1, ..., X_n) transforms by
congruence, sigma -> L sigma L^T, when the observables are mapped linearly
by L. For a canonical pair the relevant L are symplectic (det L = 1) and
leave det sigma unchanged, so a rotation that diagonalizes sigma also
preserves the Schrodinger bound.
"""

import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .errors import InadmissibleParams, NotPositiveDefinite

SYMMETRY_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class UncertaintyMatrix:
    """Symmetric real 2x2 or 3x3 covariance matrix with operator labels."""

    entries: np.ndarray
    labels: tuple

    def __post_init__(self):
        m = np.array(self.entries, dtype=float)
        if m.ndim != 2 or m.shape[0] != m.shape[1] or m.shape[0] not in (2, 3):
            raise ValueError(f"expected a 2x2 or 3x3 matrix, got shape {m.shape}")
        if len(self.labels) != m.shape[0]:
            raise ValueError("one label per row is required")
        scale = max(1.0, float(np.max(np.abs(m))))
        if np.max(np.abs(m - m.T)) > SYMMETRY_TOL * scale:
            raise ValueError("uncertainty matrix is not symmetric")
        m = 0.5 * (m + m.T)
        m.setflags(write=False)
        object.__setattr__(self, "entries", m)
        object.__setattr__(self, "labels", tuple(self.labels))

    @property
    def dim(self):
        return self.entries.shape[0]

    @property
    def det(self):
        return float(np.linalg.det(self.entries))

    @property
    def off_diagonal(self):
        """Largest off-diagonal magnitude."""
        m = self.entries
        return float(np.max(np.abs(m - np.diag(np.diag(m)))))

    def is_positive_definite(self):
        try:
            np.linalg.cholesky(self.entries)
        except np.linalg.LinAlgError:
            return False
        return True


def uncertainty_matrix(v, labels=("q", "p")):
    """Covariance matrix of the named Hermitian operators in state v."""
    ops = [fock.op(x) if isinstance(x, str) else x for x in labels]
    n = len(ops)
    m = np.empty((n, n))
    for i in range(n):
        m[i, i] = fock.variance(v, ops[i])
        for j in range(i + 1, n):
            m[i, j] = m[j, i] = fock.covariance(v, ops[i], ops[j])
    names = tuple(x if isinstance(x, str) else x.name for x in labels)
    return UncertaintyMatrix(m, names)


def k_uncertainty_3x3(v):
    """Covariance matrix of (K1, K2, K3)."""
    return uncertainty_matrix(v, ("K1", "K2", "K3"))


def symplectic_matrix(u, v):
    """Matrix taking (q, p) to the quadratures of u a + v a^dag.

    With u a + v a^dag = (q' + i p')/sqrt2 one finds
    q' = Re(u+v) q - Im(u-v) p and p' = Im(u+v) q + Re(u-v) p.
    """
    u, v = complex(u), complex(v)
    gap = abs(u) ** 2 - abs(v) ** 2
    if abs(gap - 1) > SYMMETRY_TOL * max(1.0, abs(u) ** 2):
        raise InadmissibleParams(f"|u|^2 - |v|^2 = {gap:.15g}, expected 1")
    return np.array([
        [(u + v).real, -(u - v).imag],
        [(u + v).imag, (u - v).real],
    ])


def congruence(sigma, lam, labels=None):
    """lam sigma lam^T."""
    lam = np.asarray(lam, dtype=float)
    if lam.shape != sigma.entries.shape:
        raise ValueError(f"transformation of shape {lam.shape} does not match {sigma.entries.shape}")
    if labels is None:
        labels = tuple(f"{x}'" for x in sigma.labels)
    return UncertaintyMatrix(lam @ sigma.entries @ lam.T, labels)


def rotation(phi):
    """[[cos phi, sin phi], [-sin phi, cos phi]]."""
    c, s = math.cos(phi), math.sin(phi)
    return np.array([[c, s], [-s, c]])


def diagonalizing_angle(sigma):
    """Minimal rotation angle in (-pi/4, pi/4] that diagonalizes a 2x2 sigma."""
    m = sigma.entries
    if m[0, 1] == 0:
        return 0.0
    phi = 0.5 * math.atan2(2 * m[0, 1], m[0, 0] - m[1, 1])
    if phi > math.pi / 4:
        phi -= math.pi / 2
    elif phi <= -math.pi / 4:
        phi += math.pi / 2
    return phi


def diagonalize_2x2(sigma):
    """(lam, lam sigma lam^T) with lam a rotation and the result diagonal.

    A rotation has unit determinant, so it is symplectic for a canonical
    pair and a plane rotation for the squared-amplitude pair; det sigma is
    preserved in both cases.
    """
    if sigma.dim != 2:
        raise ValueError("diagonalize_2x2 needs a 2x2 matrix")
    if not sigma.is_positive_definite():
        raise NotPositiveDefinite(f"matrix of {sigma.labels} is not positive definite")
    lam = rotation(diagonalizing_angle(sigma))
    out = lam @ sigma.entries @ lam.T
    out[0, 1] = out[1, 0] = 0.5 * (out[0, 1] + out[1, 0])
    return lam, UncertaintyMatrix(out, tuple(f"{x}'" for x in sigma.labels))


def diagonalizing_phase(sigma):
    """beta such that exp(i beta N) applied to the state diagonalizes sigma.

    Under exp(i beta N) the operator a picks up exp(i beta) and a^2 picks up
    exp(2 i beta), so the quadrature plane of (q, p) turns by beta and that
    of (X_sa, Y_sa) by 2 beta.
    """
    phi = diagonalizing_angle(sigma)
    if set(sigma.labels) <= {"q", "p"}:
        return -phi
    if set(sigma.labels) <= {"X_sa", "Y_sa"}:
        return -phi / 2
    raise ValueError(f"no phase-space rotation is known for {sigma.labels}")


def k_plane_rotation(phi):
    """3x3 rotation of the (K1, K2) plane leaving K3 fixed."""
    m = np.eye(3)
    m[:2, :2] = rotation(phi)
    return m


def diagonalize_k12(sigma3):
    """Rotate the (K1, K2) block of a 3x3 K-matrix to diagonal form.

    Only the space-like plane is touched, so couplings of K1, K2 to K3
    generally remain."""
    if sigma3.dim != 3:
        raise ValueError("diagonalize_k12 needs a 3x3 matrix")
    block = UncertaintyMatrix(sigma3.entries[:2, :2], sigma3.labels[:2])
    lam = k_plane_rotation(diagonalizing_angle(block))
    return lam, congruence(sigma3, lam)


def robertson_gap(sigma):
    """Product of the diagonal entries minus det sigma; never negative."""
    return float(np.prod(np.diag(sigma.entries))) - sigma.det
