"""
Joint squeezing in squeezed even coherent states
================================================

Applying S(zeta) to an even coherent state trades linear against
squared-amplitude noise. For z = -0.4 there is a window of real zeta where
Var q < 1/2 and Var X_sa < 1 hold at once.
"""

import numpy as np

from sis_lab import analysis
from sis_lab.analysis import moment_report
from sis_lab.states import squeezed_even_cs

for r in np.linspace(0, 0.5, 11):
    var_q, var_x, q = analysis.squeezed_even_moments_closed(r, -0.4)
    brute = moment_report(squeezed_even_cs(r, -0.4))
    joint = "joint" if var_q < 0.5 and var_x < 1 else ""
    print(f"r = {r:.2f}: Var q = {var_q:.5f}, Var X_sa = {var_x:.5f}, Q = {q:+.4f}"
          f"  (brute force {brute.var_q:.5f}, {brute.var_Xsa:.5f})  {joint}")
