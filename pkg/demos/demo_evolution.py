"""
Free evolution of an SIS
========================

Under H = omega (N + 1/2) the state stays an SIS with rotating z and u, and
the relative squared-amplitude variances oscillate at frequency 4 omega.
"""

import cmath

import numpy as np

from sis_lab import evolution, fock, states
from sis_lab.analysis import moment_report
from sis_lab.states import SisParams

p0 = SisParams(2 - 1j, 1.3 * cmath.exp(0.4j), 0.5 * cmath.exp(-1.1j))
omega = 1.0
psi0 = states.sis(p0, "even")
print(f"period of the relative variances: {evolution.period(omega):.6f}")
for t in np.linspace(0, evolution.period(omega), 5):
    psi = evolution.evolve_state(psi0, omega, t)
    target = states.sis(evolution.evolve_params(p0, omega, t), "even")
    rep = moment_report(psi)
    r_x, r_y = evolution.relative_variances(p0.u, p0.v, omega, t)
    print(f"t = {t:.4f}: overlap {fock.overlap(psi, target):.12f}, "
          f"r_X = {r_x:.5f} (brute {2 * rep.var_Xsa / rep.comm_sa:.5f}), r_Y = {r_y:.5f}")
