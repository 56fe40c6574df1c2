"""
Complex special functions used by the closed-form state solutions.

Everything here works on plain Python ``complex`` scalars. Results are
checked for finiteness: an overflow is reported as ``OverflowError`` rather
than leaking ``inf``/``nan`` to the caller.
"""

import cmath
import math

from .errors import NonConvergence

# magnitudes above this switch to log-magnitude + phase accumulation
_LOG_SWITCH = 1e280


def _finite(x, what):
    x = complex(x)
    if not (math.isfinite(x.real) and math.isfinite(x.imag)):
        raise OverflowError(f"{what} is not finite: {x!r}")
    return x


def log_factorial(n):
    """Natural log of n! for a nonnegative integer n."""
    if n < 0:
        raise ValueError("n must be nonnegative")
    return math.lgamma(n + 1)


def log_pochhammer(a, k):
    """Complex logarithm of the rising factorial (a)_k.

    The real part is log|(a)_k| and the imaginary part the accumulated phase
    (not reduced to a principal value). Returns ``-inf`` if a factor vanishes.
    """
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = complex(a)
    acc = 0j
    for j in range(k):
        f = a + j
        if f == 0:
            return complex(-math.inf, 0.0)
        acc += cmath.log(f)
    return acc


def pochhammer(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1); equals 1 for k = 0."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    a = complex(a)
    prod = 1 + 0j
    for j in range(k):
        prod *= a + j
        if prod == 0:
            return 0j
        if abs(prod) > _LOG_SWITCH:
            # finish in log form; exp() of the total decides whether it fits
            logp = cmath.log(prod) + log_pochhammer(a + j + 1, k - j - 1)
            if logp.real > 709.0:
                raise OverflowError(f"(a)_k too large for a double: a={a}, k={k}")
            return _finite(cmath.exp(logp), "pochhammer")
    return prod


def _is_nonpositive_integer(b):
    return b.imag == 0 and b.real <= 0 and b.real == math.floor(b.real)


def _kummer_series(a, b, x, tol, max_terms):
    # Kahan-compensated sum of (a)_k x^k / ((b)_k k!)
    total = 1 + 0j
    comp = 0j
    term = 1 + 0j
    small = 0
    for k in range(max_terms):
        term *= (a + k) * x / ((b + k) * (k + 1))
        if term == 0:
            return total
        y = term - comp
        t = total + y
        comp = (t - total) - y
        total = t
        if not cmath.isfinite(total):
            raise OverflowError(f"1F1({a}, {b}; {x}) overflows a double")
        # the tail is only bounded once terms start shrinking
        if abs(term) <= tol * abs(total) and abs((a + k + 1) * x / ((b + k + 1) * (k + 2))) < 1:
            small += 1
            if small >= 2:
                return total
        else:
            small = 0
    raise NonConvergence(f"1F1({a}, {b}; {x}) did not converge in {max_terms} terms")


def kummer_1f1(a, b, x, tol=1e-14, max_terms=100_000):
    """Kummer confluent hypergeometric function 1F1(a, b; x).

    Summed as the defining power series until the relative size of the last
    terms drops below ``tol``. For Re x < 0 the Kummer transformation
    1F1(a, b; x) = e^x 1F1(b - a, b; -x) is applied first, which avoids the
    alternating-sign cancellation of the direct series; it is skipped when
    ``a`` is a nonpositive integer so that polynomial cases stay exact.

    Raises NonConvergence when more than ``max_terms`` terms are needed.
    """
    a, b, x = complex(a), complex(b), complex(x)
    if _is_nonpositive_integer(b):
        raise ValueError(f"1F1 is undefined for b = {b}")
    if a == 0 or x == 0:
        return 1 + 0j
    if x.real < 0 and not _is_nonpositive_integer(a):
        val = cmath.exp(x) * _kummer_series(b - a, b, -x, tol, max_terms)
    else:
        val = _kummer_series(a, b, x, tol, max_terms)
    return _finite(val, "kummer_1f1")


def hermite(m, x):
    """Physicists' Hermite polynomial H_m(x) from the three-term recurrence."""
    if m < 0:
        raise ValueError("m must be nonnegative")
    x = complex(x)
    h_prev, h = 0j, 1 + 0j
    for k in range(m):
        h_prev, h = h, 2 * x * h - 2 * k * h_prev
    return _finite(h, "hermite")


def principal_sqrt(x):
    """Square root with argument in (-pi/2, pi/2]; sqrt(-1) = 1j."""
    x = complex(x)
    # a signed zero imaginary part would move -1 onto the other branch
    return cmath.sqrt(complex(x.real, x.imag + 0.0))


def principal_root4(x):
    """Fourth root obtained as the principal square root applied twice."""
    return principal_sqrt(principal_sqrt(x))
