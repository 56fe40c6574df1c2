"""
Formulas in the form they appear in the source literature, kept only so
that the test suite can record how far each one is from the brute-force
oracle. Nothing else in the package uses them.
"""

import math

import numpy as np

from .specialfn import pochhammer
from .states import _parity


def sis_covariances(params, mean_N):
    """(cov_qp, cov_XY) as printed: Im[(u - v) z*] and 4 Im(u* v)(2<N> + 1)."""
    z, u, v = params.z, params.u, params.v
    cov_qp = ((u - v) * z.conjugate()).imag
    cov_xy = 4 * (u.conjugate() * v).imag * (2 * mean_N + 1)
    return cov_qp, cov_xy


def his_x_variance(mean_N):
    """Equal-uncertainty HIS variance as printed, (2<N> + 1)/4."""
    return (2 * mean_N + 1) / 4


def fock_k1_variance(n):
    """Var K1 = Var K2 in |n> as printed, (n^2 + 2n + 1/2)/2."""
    return (n * n + 2 * n + 0.5) / 2


def perelomov_relative_squeezing(xi):
    """|1 + xi^2|^2 / (1 + |xi|^2)^2 as printed."""
    xi = complex(xi)
    return abs(1 + xi * xi) ** 2 / (1 + abs(xi) ** 2) ** 2


def relative_variance_phase(u0, v0):
    """Phase offset arg u0 + arg v0 of the oscillating relative variances as printed."""
    return np.angle(u0) + np.angle(v0)


def sis_series_coefficients(params, parity, order):
    """Fock amplitudes g_n of the even or odd SIS as printed, up to ``order``.

    The inner sum carries neither the 1/(k!(n-k)!) weights nor the s^k
    factor of the Cauchy product of exp(-y/2) and 1F1."""
    p = _parity(parity)
    s = params.s
    a = params.kummer_a[p]
    b = 0.5 + p
    c = np.zeros(order + 1, dtype=complex)
    for m in range((order - p) // 2 + 1):
        total = sum((-0.5 * s) ** (m - k) * pochhammer(a, k) / pochhammer(b, k) for k in range(m + 1))
        c[2 * m + p] = math.sqrt(math.factorial(2 * m + p)) * total
    return c


def even_sis_mean_number(params, terms=60):
    """<N> of the even SIS from the positive-term series

        <N> = sum 2n (2n)! |f_n|^2 |v/u|^n / sum (2n)! |f_n|^2 |v/u|^n,
        f_n = sum_k (-1/2)^k (a)_{n-k} / (k! (n-k)! (1/2)_{n-k}).

    Each f_n is an alternating sum, so accuracy degrades with ``terms``
    and the series is only a cross-check for small z/u and v/u."""
    a = params.kummer_a[0]
    ratio = abs(params.v / params.u)
    num = den = 0.0
    for n in range(terms):
        f = sum(
            (-0.5) ** k * pochhammer(a, n - k)
            / (math.factorial(k) * math.factorial(n - k) * pochhammer(0.5, n - k))
            for k in range(n + 1)
        )
        w = math.factorial(2 * n) * abs(f) ** 2 * ratio ** n
        num += 2 * n * w
        den += w
    return num / den
