"""
Free-field evolution under H = omega (N + 1/2).

Since exp(-i omega t N) a^2 exp(i omega t N) picks up only a phase, an SIS
stays an SIS: the evolved state is the eigenvector with
z(t) = z0 exp(2i omega t), u(t) = u0 exp(4i omega t), v(t) = v0
(up to a global phase). The relative variances 2 var / |<[X_sa, Y_sa]>|
reduce to |u - v|^2 and |u + v|^2 and oscillate with period 2 pi / (4 omega).
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np

from . import fock
from .errors import InadmissibleParams
from .states import SisParams


@dataclass(frozen=True)
class EvolutionTrack:
    omega: float
    t: float
    params_t: SisParams
    r_X: float
    r_Y: float


def evolve_params(p0, omega, t):
    """SIS parameters at time t; the moduli of z, u, v are conserved."""
    if not isinstance(p0, SisParams):
        p0 = SisParams(*p0)
    ph = cmath.exp(2j * omega * t)
    return SisParams(p0.z * ph, p0.u * ph * ph, p0.v)


def evolve_state(psi, omega, t):
    """exp(-i omega t N) psi; the zero-point phase is dropped."""
    return fock.rotate_phase(psi, -omega * t)


def relative_variances(u0, v0, omega, t):
    """(r_X, r_Y) = |u0|^2 + |v0|^2 -+ 2|u0||v0| cos(4 omega t + arg u0 - arg v0)."""
    u0, v0 = complex(u0), complex(v0)
    gap = abs(u0) ** 2 - abs(v0) ** 2
    if abs(gap - 1) > 1e-12 * max(1.0, abs(u0) ** 2):
        raise InadmissibleParams(f"|u0|^2 - |v0|^2 = {gap:.15g}, expected 1")
    t = np.asarray(t, dtype=float)
    base = abs(u0) ** 2 + abs(v0) ** 2
    swing = 2 * abs(u0) * abs(v0) * np.cos(4 * omega * t + cmath.phase(u0) - cmath.phase(v0))
    r_x, r_y = base - swing, base + swing
    if r_x.ndim == 0:
        return float(r_x), float(r_y)
    return r_x, r_y


def period(omega):
    return 2 * math.pi / (4 * omega)


def track(p0, omega, times):
    """EvolutionTrack at each of ``times``."""
    if not isinstance(p0, SisParams):
        p0 = SisParams(*p0)
    out = []
    for t in times:
        r_x, r_y = relative_variances(p0.u, p0.v, omega, t)
        out.append(EvolutionTrack(float(omega), float(t), evolve_params(p0, omega, t), r_x, r_y))
    return out
