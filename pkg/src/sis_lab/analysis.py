"""
Moments, photon statistics and the quasi-spin picture.

:func:`moment_report` evaluates everything by brute force on a FockVector.
The ``*_closed`` functions give the analytic counterparts for the state
families that have them; each is checked against the brute-force oracle in
the test suite.
"""

import math
from dataclasses import asdict, dataclass, fields

from . import fock
from .errors import DegenerateState, InadmissibleParams
from .states import SisParams, SqueezeParams, _parity

SCHRODINGER_FLOOR = -1e-9


@dataclass(frozen=True)
class MomentReport:
    """First and second moments of one state.

    Fields left as ``None`` are not provided by the source (closed forms
    cover a subset); ``mandel_q`` is ``None`` when <N> vanishes.
    ``schrodinger_residual_*`` is var_X var_Y - cov_XY^2 - |<[X,Y]>|^2/4,
    nonnegative for every state.
    """

    mean_q: float = None
    mean_p: float = None
    var_q: float = None
    var_p: float = None
    cov_qp: float = None
    mean_Xsa: float = None
    mean_Ysa: float = None
    var_Xsa: float = None
    var_Ysa: float = None
    cov_XY: float = None
    mean_N: float = None
    var_N: float = None
    mandel_q: float = None
    schrodinger_residual_qp: float = None
    schrodinger_residual_sa: float = None

    def to_dict(self):
        return asdict(self)

    @property
    def comm_sa(self):
        """|<[X_sa, Y_sa]>| = 4<N> + 2."""
        return None if self.mean_N is None else 4 * self.mean_N + 2


REPORT_FIELDS = tuple(f.name for f in fields(MomentReport))


def schrodinger_residual(var_x, var_y, cov, comm):
    """var_x var_y - cov^2 - comm^2/4 with comm = |<[X,Y]>|."""
    return var_x * var_y - cov * cov - 0.25 * comm * comm


def schrodinger_floor(report):
    """Most negative residual attributable to rounding for this report.

    The residual is a difference of products of order var_X var_Y, so the
    -1e-9 floor is applied relative to that scale."""
    scale = max(1.0, abs(report.var_Xsa * report.var_Ysa)) if report.var_Xsa is not None else 1.0
    return SCHRODINGER_FLOOR * scale


def moment_report(v):
    """All MomentReport fields by direct operator expectation."""
    mean_q = fock.expectation(v, fock.q)
    mean_p = fock.expectation(v, fock.p)
    var_q = fock.variance(v, fock.q)
    var_p = fock.variance(v, fock.p)
    cov_qp = fock.covariance(v, fock.q, fock.p)
    mean_x = fock.expectation(v, fock.X_sa)
    mean_y = fock.expectation(v, fock.Y_sa)
    var_x = fock.variance(v, fock.X_sa)
    var_y = fock.variance(v, fock.Y_sa)
    cov_xy = fock.covariance(v, fock.X_sa, fock.Y_sa)
    mean_n = fock.mean_number(v)
    return MomentReport(
        mean_q=mean_q,
        mean_p=mean_p,
        var_q=var_q,
        var_p=var_p,
        cov_qp=cov_qp,
        mean_Xsa=mean_x,
        mean_Ysa=mean_y,
        var_Xsa=var_x,
        var_Ysa=var_y,
        cov_XY=cov_xy,
        mean_N=mean_n,
        var_N=fock.number_variance(v),
        mandel_q=fock.mandel_q(v),
        schrodinger_residual_qp=schrodinger_residual(var_q, var_p, cov_qp, 1.0),
        schrodinger_residual_sa=schrodinger_residual(var_x, var_y, cov_xy, 4 * mean_n + 2),
    )


def _q_from_pair(mean_n, pair_moment):
    # pair_moment = <a^dag^2 a^2>, so <N^2> = pair_moment + <N>
    if mean_n <= 0:
        return None
    return pair_moment / mean_n - mean_n


def sis_moments_closed(params, mean_N):
    """Closed-form moments of an even or odd SIS.

    Parity states have <a> = 0 and <a^2> = u* z - v z*, from which

        var_q, var_p = 1/2 + <N> +- Re[(u - v) z*]
        cov_qp       = Im(u* z - v z*)
        var_Xsa      = |u - v|^2 (2<N> + 1)
        var_Ysa      = |u + v|^2 (2<N> + 1)
        cov_XY       = -2 Im(u* v) (2<N> + 1)
        <a^dag^2 a^2> = |z|^2 (1 + 2|v|^2) + |v|^2 (4<N> + 2) - 2 Re(u* v* z^2)

    The last one gives Mandel Q and var N.
    """
    if not isinstance(params, SisParams):
        params = SisParams(*params)
    if mean_N < 0:
        raise ValueError("mean_N must be nonnegative")
    z, u, v = params.z, params.u, params.v
    n = float(mean_N)
    pair = u.conjugate() * z - v * z.conjugate()
    var_q = 0.5 + n + pair.real
    var_p = 0.5 + n - pair.real
    cov_qp = pair.imag
    g = 2 * n + 1
    var_x = abs(u - v) ** 2 * g
    var_y = abs(u + v) ** 2 * g
    cov_xy = -2 * (u.conjugate() * v).imag * g
    m = abs(z) ** 2 * (1 + 2 * abs(v) ** 2) + abs(v) ** 2 * (4 * n + 2)
    m -= 2 * (u.conjugate() * v.conjugate() * z * z).real
    return MomentReport(
        mean_q=0.0,
        mean_p=0.0,
        var_q=var_q,
        var_p=var_p,
        cov_qp=cov_qp,
        mean_Xsa=math.sqrt(2) * pair.real,
        mean_Ysa=math.sqrt(2) * pair.imag,
        var_Xsa=var_x,
        var_Ysa=var_y,
        cov_XY=cov_xy,
        mean_N=n,
        var_N=m + n - n * n,
        mandel_q=_q_from_pair(n, m),
        schrodinger_residual_qp=schrodinger_residual(var_q, var_p, cov_qp, 1.0),
        schrodinger_residual_sa=schrodinger_residual(var_x, var_y, cov_xy, 4 * n + 2),
    )


def even_odd_mean_number(alpha, parity):
    """|alpha|^2 tanh|alpha|^2 (even) or |alpha|^2 coth|alpha|^2 (odd)."""
    p = _parity(parity)
    x = abs(complex(alpha)) ** 2
    if p == 0:
        return x * math.tanh(x)
    if x == 0:
        raise DegenerateState("the odd coherent state is undefined at alpha = 0")
    return x / math.tanh(x)


def even_odd_cs_moments_closed(alpha, parity):
    """Closed-form moments of the even or odd coherent state."""
    alpha = complex(alpha)
    n = even_odd_mean_number(alpha, parity)
    z = alpha * alpha
    g = 2 * n + 1
    pair = abs(z) ** 2
    return MomentReport(
        mean_q=0.0,
        mean_p=0.0,
        var_q=0.5 + n + z.real,
        var_p=0.5 + n - z.real,
        cov_qp=z.imag,
        mean_Xsa=math.sqrt(2) * z.real,
        mean_Ysa=math.sqrt(2) * z.imag,
        var_Xsa=g,
        var_Ysa=g,
        cov_XY=0.0,
        mean_N=n,
        var_N=pair + n - n * n,
        mandel_q=_q_from_pair(n, pair),
        schrodinger_residual_qp=schrodinger_residual(0.5 + n + z.real, 0.5 + n - z.real, z.imag, 1.0),
        schrodinger_residual_sa=0.0,
    )


def squeezed_even_moments_closed(zeta, z):
    """(var_q, var_Xsa, mandel_q) of S(zeta) applied to the even cat with alpha^2 = z.

    With zeta = r e^{i theta}, z = rho e^{i phi} and n the even-state
    photon number rho tanh rho. Mandel Q is ``None`` at the vacuum.
    """
    zeta = zeta.zeta if isinstance(zeta, SqueezeParams) else complex(zeta)
    z = complex(z)
    r, theta = abs(zeta), (math.atan2(zeta.imag, zeta.real) if zeta else 0.0)
    rho, phi = abs(z), (math.atan2(z.imag, z.real) if z else 0.0)
    n = rho * math.tanh(rho)
    ch2, sh2 = math.cosh(2 * r), math.sinh(2 * r)
    s1, s2 = math.cosh(r) ** 2, math.sinh(r) ** 2
    ct = math.cos(theta)
    eith = complex(math.cos(theta), -math.sin(theta))

    var_q = 0.5 + s2 + n * (ch2 + ct * sh2) + 0.5 * ct * sh2
    var_q += (z * (math.cosh(r) + eith * math.sinh(r)) ** 2).real

    var_x = 2 * ct * ct * sh2 * sh2 * (rho * rho + n * (1 - n))
    var_x += (s1 * s1 + s2 * s2 + 2 * s1 * s2 * math.cos(2 * theta)) * (1 + 2 * n)
    var_x += 4 * rho * ct * sh2 * (s1 * math.cos(phi) + s2 * math.cos(2 * theta - phi))

    nq = ch2 * ch2 * (rho * rho + n * (1 - n)) + 0.5 * sh2 * sh2 * (1 + 2 * n)
    nq += -n * ch2 - s2 + rho * sh2 * math.cos(theta - phi) * (2 * ch2 - 1)
    mean_sq = n * ch2 + s2 + rho * sh2 * math.cos(theta - phi)
    q = nq / mean_sq if mean_sq > 0 else None
    return var_q, var_x, q


# -- quasi-spin ---------------------------------------------------------------

@dataclass(frozen=True)
class QuasiSpin:
    """Mean SU(1,1) vector and its Minkowski length k1^2 + k2^2 - k3^2."""

    k1: float
    k2: float
    k3: float

    @property
    def length_sq(self):
        return self.k1 ** 2 + self.k2 ** 2 - self.k3 ** 2


def quasi_spin(v):
    return QuasiSpin(
        fock.expectation(v, fock.K1),
        fock.expectation(v, fock.K2),
        fock.expectation(v, fock.K3),
    )


def superpoissonian_bound(k3):
    return 1 / 16 - k3 / 2


def superpoissonian_condition(qs, atol=1e-12):
    """(holds, margin) for the sufficient condition length_sq >= 1/16 - k3/2.

    ``atol`` absorbs rounding at the boundary, which the vacuum sits on."""
    margin = qs.length_sq - superpoissonian_bound(qs.k3)
    return margin >= -atol, margin


def mandel_quasi_spin_rhs(v):
    """4(var K1 + var K2) + 4 length_sq - 2<K3> - 1/4, equal to <N> Q."""
    qs = quasi_spin(v)
    var_k = fock.variance(v, fock.K1) + fock.variance(v, fock.K2)
    return 4 * var_k + 4 * qs.length_sq - 2 * qs.k3 - 0.25


def squeezed_fock_condition(r, n):
    """Sufficient condition sinh^2 r + cosh^2 r >= n + 1 for |zeta, n>."""
    return math.cosh(2 * r) >= n + 1


def perelomov_relative_squeezing(xi):
    """2 var X_sa / |<[X_sa, Y_sa]>| in (1 - |xi|^2)^(1/4) exp((xi/2) a^dag^2)|0>.

    Equals |1 + xi^2|^2 / (1 - |xi|^4): 1 at xi = 0, tending to 0 as xi -> +-i.
    """
    xi = complex(xi)
    if abs(xi) >= 1:
        raise InadmissibleParams(f"|xi| = {abs(xi):.6g} must be < 1")
    return abs(1 + xi * xi) ** 2 / (1 - abs(xi) ** 4)


def relative_squeezing(report):
    """(2 var X_sa, 2 var Y_sa) / |<[X_sa, Y_sa]>| from a report."""
    c = report.comm_sa
    return 2 * report.var_Xsa / c, 2 * report.var_Ysa / c
