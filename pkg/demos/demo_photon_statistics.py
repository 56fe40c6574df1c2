"""
Photon statistics and the quasi-spin picture
============================================

Two even SIS with opposite Mandel Q, their photon-number distributions, and
the identity linking Q to the SU(1,1) quasi-spin (K1, K2, K3).
"""

import math

import numpy as np

from sis_lab import analysis, fock, states
from sis_lab.states import SisParams

wide = states.sis(SisParams(-5, math.sqrt(37), -6), "even")
sub = states.sis(SisParams(-5, math.sqrt(1.04), 0.2), "even")
for label, v in (("|v| = 6", wide), ("|v| = 0.2", sub)):
    prob = v.probabilities()
    print(f"{label}: Q = {fock.mandel_q(v):+.4f}, <N> = {fock.mean_number(v):.3f}")
    print("   P(n), n = 0..10:", np.array2string(prob[:11], precision=4, suppress_small=True))

# <N> Q = 4(var K1 + var K2) + 4 length^2 - 2<K3> - 1/4; the variances are
# nonnegative, so length^2 >= 1/16 - <K3>/2 is sufficient for Q >= 0
for v in (wide, sub, states.even_odd_cs(1.3j, "even"), states.even_odd_cs(1.3j, "odd")):
    qs = analysis.quasi_spin(v)
    holds, margin = analysis.superpoissonian_condition(qs)
    lhs = fock.mean_number(v) * fock.mandel_q(v)
    print(f"Q<N> = {lhs:+.6f}, quasi-spin side {analysis.mandel_quasi_spin_rhs(v):+.6f}, "
          f"length^2 = {qs.length_sq:+.4f}, sufficient condition {holds} (margin {margin:+.3g})")

# squeezing preserves the quasi-spin length
v = states.even_odd_cs(0.8, "odd")
for r in (0, 0.3, 0.6):
    print(f"r = {r}: length^2 = {analysis.quasi_spin(states.squeeze_apply(r, v)).length_sq:+.12f}")
