"""
Known states inside the SIS family
==================================

Three parameter choices collapse the general eigenstate onto familiar ones:
v = 0 gives the even and odd coherent states, z = +-sqrt(-uv) and
z = +-3 sqrt(-uv) give squeezed vacuum and squeezed one-photon states, and
z = -(4n+1) sqrt(-uv) turns the Kummer function into a Hermite polynomial.
"""

import cmath
import math

import numpy as np

from sis_lab import states
from sis_lab.fock import overlap
from sis_lab.states import SisParams

alpha = 1.2 - 0.5j
for parity in ("even", "odd"):
    ov = overlap(states.sis(SisParams(alpha ** 2, 1, 0), parity), states.even_odd_cs(alpha, parity))
    print(f"v = 0, {parity}: |<cat|sis>| = {ov:.15f}")

# squeezed vacuum and one-photon states, compared with S(zeta)|0>, S(zeta)|1>
p0 = SisParams(0, 1.3, -0.5)
xi = p0.s
zeta = math.atanh(abs(xi)) * cmath.exp(1j * cmath.phase(xi))
vac = states.sis(SisParams(p0.sqrt_muv, p0.u, p0.v), "even")
one = states.sis(SisParams(3 * p0.sqrt_muv, p0.u, p0.v), "odd")
print(f"xi = {xi:.4f}: |<S|0>|sis>| = {overlap(vac, states.squeeze_fock(zeta, 0)):.15f}")
print(f"           |<S|1>|sis>| = {overlap(one, states.squeeze_fock(zeta, 1)):.15f}")

# Hermite cases: the Kummer-function state has finite support, while the
# SIS itself is its squeezed image
p0 = SisParams(0, 1.2 - 0.3j, 0.4 + 0.5j)
for n in (1, 2, 3):
    p = SisParams(states.hermite_eigenvalue(p0, n), p0.u, p0.v)
    series = states.kummer_state_series(p, "even")
    support = np.flatnonzero(series.coeffs)
    print(f"n = {n}: Kummer parameter a = {p.kummer_a[0]:.3f}, support {support.tolist()}")
