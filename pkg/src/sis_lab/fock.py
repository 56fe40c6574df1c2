"""
Truncated single-mode Fock space.

States are :class:`FockVector` instances holding the amplitudes c_n of
|0>, ..., |n_max>. Operators are :class:`Operator` instances stored as a
handful of bands: an offset k together with a function giving the matrix
element <n+k|O|n>. Products, adjoints and linear combinations are formed on
the bands, so an operator is never materialized as a dense matrix and every
application costs O(n_max) per band.

Conventions: q = (a + a^dag)/sqrt2, p = -i(a - a^dag)/sqrt2, so that
a = (q + ip)/sqrt2; X_sa, Y_sa are the quadratures of a^2 with the same
normalization; K1 = (a^2 + a^dag^2)/4, K2 = i(a^2 - a^dag^2)/4,
K3 = (2N + 1)/4 and K_plus = K1 + iK2 = a^dag^2/2, K_minus = a^2/2.
"""

import math
import os
from dataclasses import dataclass, field
from functools import cached_property

import numpy as np

from .errors import SisLabError, TruncationLeak

DEFAULT_N_MAX = 256
GUARD_BAND = 8
TRUNCATION_TOL = 1e-12
HERMITIAN_RESIDUE = 1e-10


class ImaginaryResidue(SisLabError, ArithmeticError):
    """The expectation of a Hermitian operator came out with a sizeable imaginary part."""


def default_n_max():
    """Starting truncation, overridable through the SIS_LAB_NMAX variable."""
    env = os.environ.get("SIS_LAB_NMAX")
    if env:
        n = int(env)
        if n < 2 * GUARD_BAND:
            raise ValueError(f"SIS_LAB_NMAX={n} is smaller than twice the guard band")
        return n
    return DEFAULT_N_MAX


@dataclass(frozen=True, eq=False)
class FockVector:
    """Amplitudes over |0>..|n_max>. Immutable once built.

    ``tail_norm`` is the squared norm carried by the top ``GUARD_BAND``
    levels when the vector was produced by a state constructor, and
    ``leakage`` the squared norm dropped by the operator application that
    produced it (zero otherwise).
    """

    coeffs: np.ndarray
    tail_norm: float = 0.0
    leakage: float = 0.0

    def __post_init__(self):
        c = np.array(self.coeffs, dtype=complex).reshape(-1)
        if c.size == 0:
            raise ValueError("a FockVector needs at least one amplitude")
        if not np.all(np.isfinite(c)):
            raise ValueError("FockVector amplitudes must be finite")
        c.setflags(write=False)
        object.__setattr__(self, "coeffs", c)

    @classmethod
    def basis(cls, n, n_max=None):
        """Number state |n> in a space of dimension n_max + 1."""
        if n_max is None:
            n_max = max(default_n_max(), n + GUARD_BAND)
        if not 0 <= n <= n_max:
            raise ValueError(f"|{n}> does not fit below n_max={n_max}")
        c = np.zeros(n_max + 1, dtype=complex)
        c[n] = 1.0
        return cls(c)

    @property
    def n_max(self):
        return self.coeffs.size - 1

    def __len__(self):
        return self.coeffs.size

    def norm(self):
        return float(np.linalg.norm(self.coeffs))

    def normalized(self):
        nrm = self.norm()
        if nrm == 0:
            raise ZeroDivisionError("cannot normalize the zero vector")
        c = self.coeffs / nrm
        return FockVector(c, tail_norm=guard_mass(c))

    def padded(self, n_max):
        """Zero-extend to a larger truncation; never shrinks."""
        if n_max < self.n_max:
            raise ValueError("padded() cannot shrink a vector, use truncated()")
        c = np.zeros(n_max + 1, dtype=complex)
        c[: self.coeffs.size] = self.coeffs
        return FockVector(c, tail_norm=self.tail_norm)

    def truncated(self, n_max):
        return FockVector(self.coeffs[: n_max + 1], tail_norm=guard_mass(self.coeffs[: n_max + 1]))

    def probabilities(self):
        """Photon-number distribution |c_n|^2."""
        return np.abs(self.coeffs) ** 2

    def __add__(self, other):
        m = max(self.n_max, other.n_max)
        return FockVector(self.padded(m).coeffs + other.padded(m).coeffs)

    def __sub__(self, other):
        return self + (-1) * other

    def __mul__(self, scalar):
        return FockVector(complex(scalar) * self.coeffs, tail_norm=self.tail_norm)

    __rmul__ = __mul__


def guard_mass(coeffs, guard=GUARD_BAND):
    c = np.asarray(coeffs)
    return float(np.sum(np.abs(c[-guard:]) ** 2))


def _as_index(n):
    return np.asarray(n, dtype=float)


@dataclass(frozen=True, eq=False)
class Operator:
    """Banded operator: ``bands[k](n)`` is the matrix element <n+k|O|n>.

    Coefficient functions receive an integer-valued float array and must
    return zero wherever the source or an intermediate index is negative.
    """

    bands: dict
    name: str = "op"
    _cache: dict = field(default_factory=dict, repr=False, compare=False)

    @property
    def max_raise(self):
        return max(0, max(self.bands))

    @property
    def max_lower(self):
        return max(0, -min(self.bands))

    def coefficients(self, k, n):
        return np.asarray(self.bands[k](_as_index(n)), dtype=complex) * np.ones(np.shape(n))

    def __matmul__(self, other):
        bands = {}
        for ka, fa in self.bands.items():
            for kb, fb in other.bands.items():
                def f(n, fa=fa, fb=fb, kb=kb):
                    return fa(n + kb) * fb(n)
                k = ka + kb
                if k in bands:
                    g = bands[k]
                    bands[k] = lambda n, g=g, f=f: g(n) + f(n)
                else:
                    bands[k] = f
        return Operator(bands, f"({self.name})({other.name})")

    def __add__(self, other):
        bands = dict(self.bands)
        for k, f in other.bands.items():
            if k in bands:
                g = bands[k]
                bands[k] = lambda n, g=g, f=f: g(n) + f(n)
            else:
                bands[k] = f
        return Operator(bands, f"{self.name} + {other.name}")

    def __mul__(self, scalar):
        s = complex(scalar)
        return Operator({k: (lambda n, f=f: s * f(n)) for k, f in self.bands.items()},
                        f"{_fmt(s)}*{self.name}")

    __rmul__ = __mul__

    def __neg__(self):
        return -1 * self

    def __sub__(self, other):
        return self + (-1) * other

    def __pow__(self, k):
        if k < 1 or int(k) != k:
            raise ValueError("only positive integer powers are supported")
        out = self
        for _ in range(int(k) - 1):
            out = out @ self
        return out

    @property
    def dag(self):
        bands = {-k: (lambda n, f=f, k=k: np.conj(f(n - k))) for k, f in self.bands.items()}
        return Operator(bands, f"({self.name})^dag")

    @cached_property
    def is_hermitian(self):
        n = np.arange(64, dtype=float)
        adj = self.dag
        keys = set(self.bands) | set(adj.bands)
        for k in keys:
            mine = self.coefficients(k, n) if k in self.bands else np.zeros(n.size)
            theirs = adj.coefficients(k, n) if k in adj.bands else np.zeros(n.size)
            valid = n + k >= 0
            if not np.allclose(mine[valid], theirs[valid], rtol=1e-13, atol=1e-13):
                return False
        return True

    def __repr__(self):
        return f"Operator({self.name})"


def _fmt(s):
    return f"{s.real:g}" if s.imag == 0 else f"({s:g})"


def _sqrt0(x):
    return np.sqrt(np.clip(x, 0.0, None))


def commutator(x, y):
    return x @ y - y @ x


identity = Operator({0: lambda n: np.ones_like(n)}, "1")
a = Operator({-1: lambda n: _sqrt0(n)}, "a")
a_dag = Operator({1: lambda n: _sqrt0(n + 1)}, "a^dag")
a2 = Operator({-2: lambda n: _sqrt0(n) * _sqrt0(n - 1)}, "a^2")
a_dag2 = Operator({2: lambda n: _sqrt0(n + 1) * _sqrt0(n + 2)}, "a^dag^2")
N = Operator({0: lambda n: np.clip(n, 0.0, None)}, "N")
_r2 = 1 / math.sqrt(2)
q = Operator((_r2 * (a + a_dag)).bands, "q")
p = Operator((-1j * _r2 * (a - a_dag)).bands, "p")
X_sa = Operator((_r2 * (a2 + a_dag2)).bands, "X_sa")
Y_sa = Operator((-1j * _r2 * (a2 - a_dag2)).bands, "Y_sa")
K1 = Operator((0.25 * (a2 + a_dag2)).bands, "K1")
K2 = Operator((0.25j * (a2 - a_dag2)).bands, "K2")
K3 = Operator({0: lambda n: (2 * np.clip(n, 0.0, None) + 1) / 4}, "K3")
K_plus = Operator((0.5 * a_dag2).bands, "K_plus")
K_minus = Operator((0.5 * a2).bands, "K_minus")

OPERATORS = {
    "identity": identity,
    "a": a,
    "a_dag": a_dag,
    "a2": a2,
    "a_dag2": a_dag2,
    "N": N,
    "q": q,
    "p": p,
    "X_sa": X_sa,
    "Y_sa": Y_sa,
    "K1": K1,
    "K2": K2,
    "K3": K3,
    "K_plus": K_plus,
    "K_minus": K_minus,
}


def op(name):
    """Look up a named operator."""
    try:
        return OPERATORS[name]
    except KeyError:
        raise KeyError(f"unknown operator {name!r}; known: {sorted(OPERATORS)}") from None


def _resolve(o):
    return op(o) if isinstance(o, str) else o


def _apply_raw(o, c):
    """Banded action on an amplitude array; returns the result extended by
    ``o.max_raise`` levels so that nothing is lost."""
    dim = c.size
    ext = np.zeros(dim + o.max_raise, dtype=complex)
    n = np.arange(dim, dtype=float)
    for k, f in o.bands.items():
        lo = max(0, -k)
        if lo >= dim:
            continue
        coef = np.asarray(f(n[lo:]), dtype=complex) * np.ones(dim - lo)
        ext[lo + k: dim + k] += coef * c[lo:]
    return ext


def apply(o, v, tol=TRUNCATION_TOL):
    """Exact action of ``o`` on ``v`` inside the truncated space.

    Amplitude pushed above n_max is dropped; its squared norm is recorded in
    the result's ``leakage`` field and must stay below ``tol`` times the
    squared norm of the input, otherwise TruncationLeak is raised.
    The result is not normalized.
    """
    o = _resolve(o)
    ext = _apply_raw(o, v.coeffs)
    dim = v.coeffs.size
    leak = float(np.sum(np.abs(ext[dim:]) ** 2))
    ref = max(float(np.sum(np.abs(v.coeffs) ** 2)), np.finfo(float).tiny)
    if leak > tol * ref:
        raise TruncationLeak(
            f"applying {o.name} leaks {leak:.3e} of norm^2 {ref:.3e} above n_max={v.n_max}"
        )
    return FockVector(ext[:dim], leakage=leak)


def apply_padded(o, v):
    """Action of ``o`` on ``v`` with the space enlarged so nothing is dropped."""
    o = _resolve(o)
    return FockVector(_apply_raw(o, v.coeffs))


def inner(u, v):
    """<u|v>; the shorter vector is implicitly zero-padded."""
    m = min(u.coeffs.size, v.coeffs.size)
    return complex(np.vdot(u.coeffs[:m], v.coeffs[:m]))


def overlap(u, v):
    """|<u|v>| for normalized inputs, a phase-insensitive comparison."""
    return abs(inner(u, v)) / (u.norm() * v.norm())


def expectation(v, o):
    """<v|o|v>, evaluated without truncation error.

    The vector is zero-padded by the operator's band width first, so the
    value is exact for the stored amplitudes. Hermitian operators return a
    real float after checking the discarded imaginary part.
    """
    o = _resolve(o)
    c = v.coeffs
    ext = _apply_raw(o, c)
    val = complex(np.vdot(c, ext[: c.size]))
    if o.is_hermitian:
        if abs(val.imag) > HERMITIAN_RESIDUE * max(1.0, abs(val.real)):
            raise ImaginaryResidue(f"<{o.name}> has imaginary part {val.imag:.3e}")
        return val.real
    return val


def variance(v, x):
    """<x^2> - <x>^2 for a Hermitian x."""
    x = _resolve(x)
    m = expectation(v, x)
    return expectation(v, x @ x) - m * m


def covariance(v, x, y):
    """Symmetrized covariance <xy + yx>/2 - <x><y>."""
    x, y = _resolve(x), _resolve(y)
    sym = 0.5 * (x @ y + y @ x)
    sym = Operator(sym.bands, f"{{{x.name},{y.name}}}/2")
    return expectation(v, sym) - expectation(v, x) * expectation(v, y)


def mean_number(v):
    return expectation(v, N)


def number_variance(v):
    n = np.arange(v.coeffs.size)
    prob = v.probabilities()
    mean = float(np.dot(n, prob))
    return float(np.dot(n * n, prob)) - mean * mean


def mandel_q(v, floor=1e-15):
    """Mandel Q = <N^2>/<N> - <N> - 1; ``None`` when <N> vanishes."""
    n = np.arange(v.coeffs.size, dtype=float)
    prob = v.probabilities()
    mean = float(np.dot(n, prob))
    if mean <= floor:
        return None
    return float(np.dot(n * n, prob)) / mean - mean - 1.0


def rotate_phase(v, beta):
    """exp(i beta N) v, i.e. c_n -> c_n exp(i beta n)."""
    n = np.arange(v.coeffs.size)
    return FockVector(v.coeffs * np.exp(1j * beta * n), tail_norm=v.tail_norm)
