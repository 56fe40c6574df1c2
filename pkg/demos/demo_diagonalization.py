"""
Diagonalizing uncertainty matrices
==================================

A rotation of the quadrature plane removes the covariance while keeping the
determinant, and a phase shift exp(i beta N) realizes that rotation on the
state. After it, an SIS becomes a Heisenberg intelligent state.
"""

import numpy as np

from sis_lab import fock, states, transforms
from sis_lab.states import SisParams

psi = states.sis(SisParams(1.5 - 0.5j, 1.2, 0.4 + 0.5j), "odd")
for labels in (("q", "p"), ("X_sa", "Y_sa")):
    sigma = transforms.uncertainty_matrix(psi, labels)
    lam, diag = transforms.diagonalize_2x2(sigma)
    beta = transforms.diagonalizing_phase(sigma)
    turned = transforms.uncertainty_matrix(fock.rotate_phase(psi, beta), labels)
    print(f"{labels}:")
    print("  sigma =", np.array2string(sigma.entries, precision=5))
    print(f"  det {sigma.det:.6f} -> {diag.det:.6f}, off-diagonal {sigma.off_diagonal:.4f}"
          f" -> {diag.off_diagonal:.1e}")
    print(f"  phase beta = {beta:+.5f}, state-level off-diagonal {turned.off_diagonal:.1e}")

# the symplectic map behind u a + v a^dag
lam = transforms.symplectic_matrix(1.25, 0.75j)
print("symplectic matrix of (u, v) = (1.25, 0.75i):", np.array2string(lam, precision=4),
      f"det {np.linalg.det(lam):.12f}")
