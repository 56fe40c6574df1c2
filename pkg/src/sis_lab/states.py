"""
State constructors.

Every constructor returns a normalized :class:`~sis_lab.fock.FockVector`
whose truncation is chosen adaptively: n_max starts at
:func:`~sis_lab.fock.default_n_max` and doubles until the squared norm in the
top guard band falls below ``tol`` (relative), up to :data:`N_MAX_CAP`.

Squared-amplitude SIS are the eigenvectors of u a^2 + v a^dag^2 with
eigenvalue z. In the Bargmann representation (a -> d/dx, a^dag -> x) the
eigenvalue equation is u f'' + v x^2 f = z f, whose two parity solutions are

    even:  exp(-y/2) 1F1((1 + z/(u s))/4, 1/2; y)
    odd:   x exp(-y/2) 1F1((3 + z/(u s))/4, 3/2; y)

with y = s x^2 and s = sqrt(-v/u) on the principal branch. Throughout,
sqrt(-uv) means u*s, which keeps the branch consistent between the two
factors.
"""

import cmath
import math
from dataclasses import dataclass

import numpy as np
import scipy.sparse as sp
from scipy.sparse.linalg import expm_multiply

from . import fock
from .errors import DegenerateState, InadmissibleParams, NonConvergence, TruncationLeak
from .fock import GUARD_BAND, FockVector, default_n_max
from .specialfn import kummer_1f1, principal_sqrt

N_MAX_CAP = 65536
# relative guard-band mass accepted by constructors; far below the 1e-12
# truncation tolerance so eigenvalue residuals, which scale like n|v||c_n|,
# stay small as well
TAIL_TOL = 1e-28
NORM_TOL = 1e-12
_RESCALE = 1e150

EVEN, ODD = "even", "odd"


def _parity(parity):
    if parity in (EVEN, "+", 0, "plus"):
        return 0
    if parity in (ODD, "-", 1, "minus"):
        return 1
    raise ValueError(f"parity must be 'even' or 'odd', got {parity!r}")


@dataclass(frozen=True)
class SisParams:
    """Eigenvalue problem (u a^2 + v a^dag^2) psi = z psi.

    A raw triple is rescaled by 1/sqrt(|u|^2 - |v|^2) so that the stored
    (u, v) obey |u|^2 - |v|^2 = 1. The rescaling multiplies z too, which
    leaves the eigenvector unchanged.
    """

    z: complex
    u: complex
    v: complex

    def __post_init__(self):
        z, u, v = complex(self.z), complex(self.u), complex(self.v)
        for name, val in (("z", z), ("u", u), ("v", v)):
            if not (math.isfinite(val.real) and math.isfinite(val.imag)):
                raise InadmissibleParams(f"{name} must be finite, got {val!r}")
        if u == 0 or abs(v) >= abs(u):
            ratio = math.inf if u == 0 else abs(v / u)
            raise InadmissibleParams(f"|v/u| = {ratio:.6g} must be < 1")
        gap = abs(u) ** 2 - abs(v) ** 2
        if abs(gap - 1) > NORM_TOL:
            k = 1 / math.sqrt(gap)
            z, u, v = z * k, u * k, v * k
        object.__setattr__(self, "z", z)
        object.__setattr__(self, "u", u)
        object.__setattr__(self, "v", v)

    @property
    def s(self):
        """sqrt(-v/u), principal branch."""
        return principal_sqrt(-self.v / self.u)

    @property
    def sqrt_muv(self):
        """sqrt(-uv) taken as u*s, the branch consistent with ``s``."""
        return self.u * self.s

    @property
    def kummer_a(self):
        """First Kummer parameters (a_even, a_odd); undefined when v = 0."""
        if self.v == 0:
            raise ZeroDivisionError("the Kummer parameters need v != 0")
        w = self.z / self.sqrt_muv
        return (1 + w) / 4, (3 + w) / 4


@dataclass(frozen=True)
class SqueezeParams:
    """Squeeze parameter zeta = r exp(i theta) of S(zeta) = exp((zeta a^dag^2 - zeta* a^2)/2)."""

    zeta: complex

    def __post_init__(self):
        object.__setattr__(self, "zeta", complex(self.zeta))

    @property
    def r(self):
        return abs(self.zeta)

    @property
    def theta(self):
        return cmath.phase(self.zeta) if self.zeta != 0 else 0.0


def _zeta(z):
    return z.zeta if isinstance(z, SqueezeParams) else complex(z)


def _ladder(n_max):
    start = default_n_max() if n_max is None else int(n_max)
    if start < 2 * GUARD_BAND:
        raise ValueError(f"n_max must be at least {2 * GUARD_BAND}")
    n = start
    while n <= N_MAX_CAP:
        yield n
        n *= 2


def _adaptive(fill, n_max, tol, what):
    """Grow the truncation until the relative guard-band mass is below tol."""
    tail = math.nan
    for n in _ladder(n_max):
        c = fill(n)
        total = float(np.sum(np.abs(c) ** 2))
        if total == 0 or not math.isfinite(total):
            raise NonConvergence(f"{what}: coefficients are not normalizable at n_max={n}")
        tail = fock.guard_mass(c) / total
        if tail <= tol:
            return FockVector(c / math.sqrt(total), tail_norm=tail)
    raise NonConvergence(
        f"{what}: guard-band mass {tail:.3e} still above {tol:.1e} at the cap n_max={N_MAX_CAP}"
    )


def _ratio_fill(ratio, start):
    """Coefficients from c_{n+2} = ratio(n) c_n, with overflow rescaling."""
    def fill(n_max):
        c = np.zeros(n_max + 1, dtype=complex)
        c[start] = 1.0
        for n in range(start, n_max - 1, 2):
            c[n + 2] = c[n] * ratio(n)
            if abs(c[n + 2]) > _RESCALE:
                c[: n + 3] /= _RESCALE
        return c
    return fill


# -- Glauber and cat states -------------------------------------------------

def coherent(alpha, n_max=None, tol=TAIL_TOL):
    """Glauber coherent state, c_n = exp(-|alpha|^2/2) alpha^n / sqrt(n!)."""
    alpha = complex(alpha)

    def fill(n_max):
        c = np.zeros(n_max + 1, dtype=complex)
        if alpha == 0:
            c[0] = 1.0
            return c
        n = np.arange(n_max + 1)
        logmag = n * math.log(abs(alpha)) - 0.5 * np.array([math.lgamma(k + 1) for k in n])
        logmag -= abs(alpha) ** 2 / 2
        return np.exp(logmag + 1j * n * cmath.phase(alpha))

    return _adaptive(fill, n_max, tol, "coherent")


def even_odd_cs(alpha, parity, n_max=None, tol=TAIL_TOL):
    """Normalized |alpha> + |-alpha> (even) or |alpha> - |-alpha> (odd)."""
    p = _parity(parity)
    alpha = complex(alpha)
    if p == 1 and alpha == 0:
        raise DegenerateState("the odd coherent state vanishes at alpha = 0; use |1> for the limit")

    def fill(n_max):
        c = np.array(coherent(alpha, n_max=n_max, tol=math.inf).coeffs)
        c[1 - p::2] = 0
        return c

    return _adaptive(fill, n_max, tol, "even_odd_cs")


# -- squared-amplitude SIS ----------------------------------------------------

def sis(params, parity, n_max=None, tol=TAIL_TOL):
    """Even or odd eigenvector of u a^2 + v a^dag^2 with eigenvalue z.

    The amplitudes come from the three-term relation obtained by projecting
    the eigenvalue equation on |n>,

        u sqrt((n+2)(n+1)) c_{n+2} = z c_n - v sqrt(n(n-1)) c_{n-2},

    run forward from c_0 = 1 (even) or c_1 = 1 (odd). The Taylor expansion
    of the closed Kummer-function form (:func:`sis_series_coefficients`)
    agrees term by term but cancels catastrophically at high order in
    double precision, so it is kept as a low-order cross-check only.
    """
    if not isinstance(params, SisParams):
        params = SisParams(*params)
    p = _parity(parity)
    z, u, v = params.z, params.u, params.v

    def fill(n_max):
        c = np.zeros(n_max + 1, dtype=complex)
        c[p] = 1.0
        for n in range(p, n_max - 1, 2):
            nxt = z * c[n]
            if n >= 2:
                nxt -= v * math.sqrt(n * (n - 1)) * c[n - 2]
            c[n + 2] = nxt / (u * math.sqrt((n + 2) * (n + 1)))
            if abs(c[n + 2]) > _RESCALE:
                c[: n + 3] /= _RESCALE
        return c

    return _adaptive(fill, n_max, tol, "sis")


def sis_operator(params):
    """The operator u a^2 + v a^dag^2 as a banded Operator."""
    return params.u * fock.a2 + params.v * fock.a_dag2


def eigen_residual(params, psi):
    """||(u a^2 + v a^dag^2 - z) psi||, evaluated without truncation loss."""
    op = sis_operator(params) - params.z * fock.identity
    return fock.apply_padded(op, psi).norm()


def sis_series_coefficients(params, parity, order):
    """Fock amplitudes of the closed Kummer form, up to photon number ``order``.

    The Bargmann function exp(-y/2) 1F1(a, b; y) (times x for odd parity) is
    expanded as a Cauchy product of the two power series in y = s x^2, and
    c_n = sqrt(n!) [x^n] f. Unnormalized, with c_0 = 1 or c_1 = 1 like
    :func:`sis`. Intended for low orders: the alternating product loses
    roughly a factor of 3 per term to cancellation.
    """
    p = _parity(parity)
    s = params.s
    c = np.zeros(order + 1, dtype=complex)
    if params.v == 0:
        # cosh(beta x) or sinh(beta x)/beta with beta^2 = z/u, the s -> 0 limit
        w = params.z / params.u
        for k in range((order - p) // 2 + 1):
            n = 2 * k + p
            c[n] = w ** k / math.sqrt(math.factorial(n))
        return c
    a = params.kummer_a[p]
    b = 0.5 + p
    kummer = [1 + 0j]
    expo = [1 + 0j]
    for j in range(1, (order - p) // 2 + 1):
        kummer.append(kummer[-1] * (a + j - 1) * s / ((b + j - 1) * j))
        expo.append(expo[-1] * (-s / 2) / j)
    for k in range((order - p) // 2 + 1):
        n = 2 * k + p
        coef = sum(kummer[j] * expo[k - j] for j in range(k + 1))
        c[n] = coef * math.sqrt(math.factorial(n) / math.factorial(p))
    return c


def sis_bargmann(params, parity, x):
    """Closed-form Bargmann function of the (unnormalized) SIS at x = alpha*.

    Normalized like :func:`sis_series_coefficients`, so that
    f(x) = sum_n c_n x^n / sqrt(n!) with the same c_n.
    """
    p = _parity(parity)
    x = complex(x)
    if params.v == 0:
        beta = cmath.sqrt(params.z / params.u)
        if p == 0:
            return cmath.cosh(beta * x)
        return cmath.sinh(beta * x) / beta if beta != 0 else x
    y = params.s * x * x
    a = params.kummer_a[p]
    return x ** p * cmath.exp(-y / 2) * kummer_1f1(a, 0.5 + p, y)


def sis_combination(params, c_plus, c_minus, n_max=None, tol=TAIL_TOL):
    """c_plus |even SIS> + c_minus |odd SIS> with |c_plus|^2 + |c_minus|^2 = 1."""
    c_plus, c_minus = complex(c_plus), complex(c_minus)
    weight = abs(c_plus) ** 2 + abs(c_minus) ** 2
    if abs(weight - 1) > NORM_TOL:
        raise InadmissibleParams(f"|c_plus|^2 + |c_minus|^2 = {weight:.15g}, expected 1")
    even = sis(params, EVEN, n_max=n_max, tol=tol)
    odd = sis(params, ODD, n_max=n_max, tol=tol)
    m = max(even.n_max, odd.n_max)
    c = c_plus * even.padded(m).coeffs + c_minus * odd.padded(m).coeffs
    return FockVector(c, tail_norm=fock.guard_mass(c))


def yurke_stoler_weights(alpha):
    """(c_plus, c_minus) reproducing the Yurke-Stoler state from the v = 0 SIS pair.

    The SIS pair at z = alpha^2 carries real positive leading amplitudes,
    so the odd weight picks up the phase alpha/|alpha| of the odd cat state.
    """
    alpha = complex(alpha)
    e = math.exp(-2 * abs(alpha) ** 2)
    c_plus = math.sqrt((1 + e) / 2)
    if alpha == 0:
        return complex(c_plus), 0j
    c_minus = -1j * math.sqrt((1 - e) / 2) * alpha / abs(alpha)
    return complex(c_plus), complex(c_minus)


def yurke_stoler(alpha, n_max=None, tol=TAIL_TOL):
    """(exp(-i pi/4)|alpha> + exp(i pi/4)|-alpha>)/sqrt2 from coherent states."""
    plus = coherent(alpha, n_max=n_max, tol=tol)
    minus = coherent(-complex(alpha), n_max=plus.n_max, tol=math.inf)
    c = (cmath.exp(-0.25j * math.pi) * plus.coeffs + cmath.exp(0.25j * math.pi) * minus.coeffs)
    return FockVector(c / math.sqrt(2)).normalized()


# -- squeezing ----------------------------------------------------------------

def perelomov_vacuum(xi, n_max=None, tol=TAIL_TOL):
    """(1 - |xi|^2)^(1/4) exp((xi/2) a^dag^2)|0>, the SU(1,1) vacuum orbit."""
    xi = complex(xi)
    if abs(xi) >= 1:
        raise InadmissibleParams(f"|xi| = {abs(xi):.6g} must be < 1")
    fill = _ratio_fill(lambda n: xi / 2 * math.sqrt((n + 1) * (n + 2)) / (n // 2 + 1), 0)
    return _adaptive(fill, n_max, tol, "perelomov_vacuum")


def perelomov_one_photon(xi, n_max=None, tol=TAIL_TOL):
    """(1 - |xi|^2)^(3/4) exp((xi/2) a^dag^2)|1>, the odd-sector analog."""
    xi = complex(xi)
    if abs(xi) >= 1:
        raise InadmissibleParams(f"|xi| = {abs(xi):.6g} must be < 1")
    fill = _ratio_fill(lambda n: xi / 2 * math.sqrt((n + 1) * (n + 2)) / ((n - 1) // 2 + 1), 1)
    return _adaptive(fill, n_max, tol, "perelomov_one_photon")


def squeeze_generator(zeta, dim):
    """Sparse matrix of (zeta a^dag^2 - zeta* a^2)/2 on |0>..|dim-1>."""
    zeta = _zeta(zeta)
    n = np.arange(dim - 2)
    up = 0.5 * zeta * np.sqrt((n + 1.0) * (n + 2.0))
    return sp.diags([up, -np.conj(up)], [-2, 2], shape=(dim, dim), format="csr", dtype=complex)


def squeeze_apply(zeta, v, tol=1e-24, steps=8):
    """S(zeta) v with S(zeta) = exp((zeta a^dag^2 - zeta* a^2)/2).

    The action is the exponential of the sparse anti-Hermitian generator in
    a padded space. Padding doubles until the squared norm reaching the top
    guard band, monitored at ``steps`` intermediate times, stays below
    ``tol``; the result is then cut back to the smallest n_max on the
    doubling ladder of the input that discards no more than ``tol``.
    In this convention S(r)|0> has Var q = exp(2r)/2 for real r.
    """
    zeta = _zeta(zeta)
    if zeta == 0:
        return v
    c0 = np.asarray(v.coeffs)
    ref = float(np.sum(np.abs(c0) ** 2))
    n_in = v.n_max
    n_pad = 2 * n_in
    while True:
        if n_pad > N_MAX_CAP:
            raise TruncationLeak(f"squeezing by |zeta|={abs(zeta):.3g} needs more than {N_MAX_CAP} levels")
        start = np.zeros(n_pad + 1, dtype=complex)
        start[: c0.size] = c0
        gen = squeeze_generator(zeta, n_pad + 1)
        path = expm_multiply(gen, start, start=0.0, stop=1.0, num=steps + 1, endpoint=True)
        worst = max(float(np.sum(np.abs(row[-GUARD_BAND:]) ** 2)) for row in path)
        if worst <= tol * ref:
            break
        n_pad *= 2
    out = path[-1]
    mass = np.cumsum((np.abs(out) ** 2)[::-1])[::-1]
    m = n_in
    while m < n_pad and mass[m + 1 - GUARD_BAND] > tol * ref:
        m *= 2
    c = out[: m + 1]
    return FockVector(c, tail_norm=fock.guard_mass(c) / ref)


def squeeze_fock(zeta, n, n_max=None):
    """Squeezed number state S(zeta)|n>."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    start = default_n_max() if n_max is None else n_max
    while n + GUARD_BAND > start:
        start *= 2
    return squeeze_apply(zeta, FockVector.basis(n, start))


def squeezed_even_cs(zeta, z, n_max=None):
    """S(zeta) applied to the even cat state with alpha^2 = z."""
    return squeeze_apply(zeta, even_odd_cs(principal_sqrt(z), EVEN, n_max=n_max))


# -- Kummer-function initial states -------------------------------------------

def kummer_zeta(params):
    """Squeeze parameter zeta_k with exp(i theta) tanh r = -s.

    S(zeta_k)|0> is proportional to exp(-(s/2) a^dag^2)|0>, so S(-zeta_k)
    undoes the Gaussian factor of the even SIS.
    """
    s = params.s
    if s == 0:
        return 0j
    return math.atanh(abs(s)) * cmath.exp(1j * cmath.phase(-s))


def metaplectic_generator_coefficients(u, v, zeta):
    """(h3, h_plus, h_minus) of S(zeta)^dag (u a^2 + v a^dag^2) S(zeta)
    written as h3 K3 + h_plus K_plus + h_minus K_minus."""
    zeta = _zeta(zeta)
    r = abs(zeta)
    ph = cmath.exp(1j * cmath.phase(zeta)) if zeta != 0 else 1.0
    ch, sh = math.cosh(r), math.sinh(r)
    h_minus = 2 * (u * ch * ch + v * sh * sh / (ph * ph))
    h_plus = 2 * (u * ph * ph * sh * sh + v * ch * ch)
    h3 = 2 * (u * ph + v / ph) * math.sinh(2 * r)
    return complex(h3), complex(h_plus), complex(h_minus)


def kummer_generator_coefficients(params):
    """Generator coefficients for which the Kummer state is an eigenvector
    with eigenvalue z; h_plus vanishes, leaving a K3 plus lowering form."""
    return metaplectic_generator_coefficients(params.u, params.v, kummer_zeta(params))


def kummer_state(params, parity=EVEN, n_max=None):
    """Initial state S(-zeta_k) |SIS> from which S(zeta_k) generates the SIS."""
    psi = sis(params, parity, n_max=n_max)
    return squeeze_apply(-kummer_zeta(params), psi)


def kummer_state_series(params, parity=EVEN, n_max=None, tol=TAIL_TOL):
    """Kummer initial state from its Fock series.

    c_{2k+p} is proportional to (a_p)_k (4 kappa)^k sqrt(p!/(2k+p)!) with
    kappa = s/(1 + |s|^2), so a nonpositive-integer a_p truncates the series.
    """
    p = _parity(parity)
    if params.v == 0:
        return sis(params, p, n_max=n_max, tol=tol)
    a = params.kummer_a[p]
    if a.real <= 0 and abs(a - round(a.real)) < 1e-10:
        # terminating case: make the zero factor exact
        a = complex(round(a.real))
    s = params.s
    kappa = s / (1 + abs(s) ** 2)
    fill = _ratio_fill(
        lambda n: 4 * kappa * (a + (n - p) // 2) / math.sqrt((n + 1) * (n + 2)), p
    )
    return _adaptive(fill, n_max, tol, "kummer_state_series")


def hermite_eigenvalue(params, n, parity=EVEN):
    """Eigenvalue z = -(4n+1) sqrt(-uv) (even) or -(4n+3) sqrt(-uv) (odd)
    for which the Kummer parameter equals -n."""
    p = _parity(parity)
    return -(4 * n + 1 + 2 * p) * params.sqrt_muv
