"""Foundational complex-valued special functions.

The centerpiece is a log-gamma implementation built from the gamma
recurrence plus a Stirling tail: the argument is shifted right by an
integer ``N`` until Stirling's series is accurate, and the shift is
undone by subtracting principal logarithms.  Because every subtracted
logarithm has its cut on a subset of the negative real axis, the
resulting function has a *single* branch discontinuity, on
``z in (-inf, 0)`` — unlike ``log(gamma(z))``, whose imaginary part
jumps every time ``gamma`` winds around the origin.  That single-cut
property is what the Coulomb normalization coefficient downstream
relies on.

Also provided: ``gamma`` and ``digamma`` derived from the same
construction, Pochhammer symbols, generalized Laguerre polynomials, and
power-series modified Bessel functions ``I`` and ``K`` used as
validation targets for the zero-energy limits.

All functions are pure and accept anything ``complex()`` accepts.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from .errors import (
    ConvergenceError,
    DomainError,
    NonFiniteInputError,
    PoleError,
)

__all__ = [
    "LogGammaConfig",
    "log_gamma",
    "gamma",
    "digamma",
    "pochhammer",
    "recip_gamma",
    "bessel_i",
    "bessel_k",
    "laguerre",
    "cpow",
    "EULER_GAMMA",
]

EULER_GAMMA = 0.5772156649015328606065121

_LN_2PI = 1.8378770664093454835606594
_LN_SQRT_2PI = 0.5 * _LN_2PI

# B_{2k} / (2k (2k-1)) for k = 1..5: Stirling correction for log-gamma,
# through the B_10 term.
_STIRLING_LOGGAMMA = (
    1.0 / 12.0,
    -1.0 / 360.0,
    1.0 / 1260.0,
    -1.0 / 1680.0,
    1.0 / 1188.0,
)

# B_{2k} / (2k) for k = 1..5: the corresponding tail for digamma.
_STIRLING_DIGAMMA = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
)

# |z + N| must reach this radius before the Stirling tail is trusted;
# with five correction terms the truncation error is then below 1e-14.
_STIRLING_RADIUS = 10.0

_SERIES_CAP = 2000
_EPS = 2.220446049250313e-16


@dataclass(frozen=True)
class LogGammaConfig:
    """Tuning knobs of the recurrence-plus-Stirling construction.

    Parameters
    ----------
    shift_count:
        Fixed integer shift ``N``.  ``None`` (the default) selects the
        smallest admissible shift per evaluation point.  An explicit
        value is still bumped up if it leaves ``z + N`` inside the
        Stirling radius or in the left half-plane.
    stirling_terms:
        Number of Bernoulli correction terms (at most 5, i.e. through
        the B_10 term).
    """

    shift_count: int | None = None
    stirling_terms: int = 5

    def __post_init__(self) -> None:
        if self.shift_count is not None and self.shift_count < 0:
            raise ValueError("shift_count must be a non-negative integer")
        if not 1 <= self.stirling_terms <= 5:
            raise ValueError("stirling_terms must be between 1 and 5")


_DEFAULT_CONFIG = LogGammaConfig()


def _require_finite(*values: complex) -> None:
    for v in values:
        if not (math.isfinite(v.real) and math.isfinite(v.imag)):
            raise NonFiniteInputError(f"non-finite argument {v!r}")


def _as_complex(z) -> complex:
    z = complex(z)
    _require_finite(z)
    return z


def _is_nonpositive_integer(z: complex) -> bool:
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


def _shift_count(z: complex, config: LogGammaConfig) -> int:
    # Smallest N >= 0 with Re(z+N) >= 0 and |z+N| >= radius.  The real-part
    # condition is needed on top of the radius: Stirling's series is not
    # usable near arg = pi.  Extra shift terms only add logarithms whose
    # cuts lie inside (-inf, 0), so the branch structure is unchanged.
    im2 = z.imag * z.imag
    r2 = _STIRLING_RADIUS * _STIRLING_RADIUS
    target = math.sqrt(r2 - im2) if im2 < r2 else 0.0
    n = max(0, math.ceil(target - z.real))
    if config.shift_count is not None:
        n = max(n, config.shift_count)
    return n


def log_gamma(z, config: LogGammaConfig | None = None) -> complex:
    """Log-gamma with a single branch cut on the negative real axis.

    Equals ``log(gamma(z))`` for real positive ``z`` and satisfies
    ``log_gamma(z + 1) = log_gamma(z) + log(z)`` for ``Re z > 0``.
    The only discontinuity of the imaginary part is across
    ``z in (-inf, 0)``.

    Raises
    ------
    PoleError
        At the poles ``z = 0, -1, -2, ...``.
    NonFiniteInputError
        For NaN or infinite input.
    """
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"log_gamma pole at z = {z}")
    cfg = config or _DEFAULT_CONFIG
    n = _shift_count(z, cfg)
    w = z + n
    res = (w - 0.5) * cmath.log(w) - w + _LN_SQRT_2PI
    winv = 1.0 / w
    w2inv = winv * winv
    power = winv
    for k in range(cfg.stirling_terms):
        res += _STIRLING_LOGGAMMA[k] * power
        power *= w2inv
    for j in range(n):
        res -= cmath.log(z + j)
    return res


def digamma(z, config: LogGammaConfig | None = None) -> complex:
    """Digamma psi(z) = Gamma'(z)/Gamma(z).

    Term-wise derivative of the same recurrence-plus-Stirling
    construction as :func:`log_gamma`; satisfies
    ``digamma(z + 1) = digamma(z) + 1/z`` exactly in exact arithmetic.
    """
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"digamma pole at z = {z}")
    cfg = config or _DEFAULT_CONFIG
    n = _shift_count(z, cfg)
    w = z + n
    winv = 1.0 / w
    w2inv = winv * winv
    res = cmath.log(w) - 0.5 * winv
    power = w2inv
    for k in range(cfg.stirling_terms):
        res -= _STIRLING_DIGAMMA[k] * power
        power *= w2inv
    for j in range(n):
        res -= 1.0 / (z + j)
    return res


def _sinpi(z: complex) -> complex:
    # sin(pi z) with argument reduction on the real part, so the zeros at
    # integers are exact.
    n = math.floor(z.real + 0.5)
    r = complex(z.real - n, z.imag)
    s = cmath.sin(math.pi * r)
    return -s if (n & 1) else s


def _cospi(z: complex) -> complex:
    n = math.floor(z.real + 0.5)
    r = complex(z.real - n, z.imag)
    c = cmath.cos(math.pi * r)
    return -c if (n & 1) else c


def gamma(z) -> complex:
    """Gamma function, ``exp(log_gamma(z))``.

    For ``Re z < 1/2`` the Euler reflection formula is used so the
    left half-plane does not go through a cancellation-prone
    exponentiated sum.

    Raises
    ------
    PoleError
        At non-positive integers.
    OverflowError
        When ``|Re log_gamma(z)|`` exceeds the double exponent range.
    """
    z = _as_complex(z)
    if _is_nonpositive_integer(z):
        raise PoleError(f"gamma pole at z = {z}")
    if z.real >= 0.5:
        lg = log_gamma(z)
        if abs(lg.real) > 709.0:
            raise OverflowError(f"gamma(z) exponent out of range at z = {z}")
        return cmath.exp(lg)
    # gamma(z) = pi / (sin(pi z) gamma(1 - z))
    lg = log_gamma(1.0 - z)
    s = _sinpi(z)
    val = cmath.log(math.pi) - lg - cmath.log(s)
    if abs(val.real) > 709.0:
        raise OverflowError(f"gamma(z) exponent out of range at z = {z}")
    return cmath.exp(val)


def recip_gamma(z) -> tuple[complex, complex]:
    """Entire reciprocal gamma and its derivative: ``(1/Gamma, (1/Gamma)')``.

    Well defined everywhere, including the gamma poles where the value
    is 0 and the derivative is ``(-1)**m * m!`` at ``z = -m``.  This is
    the coefficient generator of every regularized power series in the
    package.
    """
    z = _as_complex(z)
    if z.real >= 0.5:
        r = cmath.exp(-log_gamma(z))
        return r, -digamma(z) * r
    w = 1.0 - z
    g1 = cmath.exp(log_gamma(w))
    s = _sinpi(z)
    c = _cospi(z)
    r = s * g1 / math.pi
    dr = g1 * (math.pi * c - s * digamma(w)) / math.pi
    return r, dr


def cpow(base, expo) -> complex:
    """Principal-branch power ``exp(expo * Log base)``.

    Near-integer exponents take the exact repeated-product route, which
    keeps integer powers entire (no spurious cut in ``base``).  A zero
    base is admitted only when it gives a finite limit.
    """
    base = _as_complex(base)
    expo = _as_complex(expo)
    if expo.imag == 0.0 and expo.real == math.floor(expo.real) and abs(expo.real) <= 512:
        n = int(expo.real)
        if base == 0:
            if n > 0:
                return complex(0.0)
            if n == 0:
                return complex(1.0)
            raise DomainError("0 raised to a negative power")
        return base**n
    if base == 0:
        if expo.real > 0:
            return complex(0.0)
        raise DomainError("0 raised to a non-positive non-integer power")
    return cmath.exp(expo * cmath.log(base))


def pochhammer(alpha, n: int) -> complex:
    """Rising factorial ``alpha (alpha+1) ... (alpha+n-1)``; 1 for n = 0."""
    alpha = _as_complex(alpha)
    if n < 0:
        raise DomainError("pochhammer order must be non-negative")
    out = complex(1.0)
    for j in range(n):
        out *= alpha + j
    return out


def laguerre(n: int, alpha, x) -> complex:
    """Generalized Laguerre polynomial ``L_n^(alpha)(x)`` by the
    standard three-term recurrence."""
    alpha = _as_complex(alpha)
    x = _as_complex(x)
    if n < 0:
        raise DomainError("laguerre degree must be non-negative")
    if n == 0:
        return complex(1.0)
    prev = complex(1.0)
    cur = alpha + 1.0 - x
    for k in range(1, n):
        prev, cur = cur, ((2 * k + 1 + alpha - x) * cur - (k + alpha) * prev) / (k + 1)
    return cur


def bessel_i(nu, x) -> complex:
    """Modified Bessel function of the first kind, power series.

    Coefficients use the entire reciprocal gamma, so the function is
    entire in both order and argument (integer orders included, where
    ``I_{-n} = I_n`` emerges from the vanishing leading coefficients).
    """
    nu = _as_complex(nu)
    x = _as_complex(x)
    if x == 0:
        if nu == 0:
            return complex(1.0)
        if nu.imag == 0.0 and nu.real == math.floor(nu.real):
            return complex(0.0)
        if nu.real > 0:
            return complex(0.0)
        raise DomainError("bessel_i singular at x = 0 for Re nu < 0")
    half = 0.5 * x
    q = half * half
    nu_int = nu.imag == 0.0 and nu.real == math.floor(nu.real)
    # Integer order: shift to the first non-vanishing term and use exact
    # integer powers, keeping x |-> -x symmetries exact.
    if nu_int:
        m = int(nu.real)
        k0 = max(0, -m)
        prefactor = half ** (m + 2 * k0) / math.factorial(m + k0) / math.factorial(k0)
        term = prefactor
        total = term
        k = k0
        small = 0
        while small < 3:
            k += 1
            term *= q / (k * (m + k))
            total += term
            small = small + 1 if abs(term) <= _EPS * abs(total) else 0
            if k - k0 > _SERIES_CAP:
                raise ConvergenceError("bessel_i series did not converge")
        return total
    prefactor = cmath.exp(nu * cmath.log(half))
    rg, _ = recip_gamma(nu + 1.0)
    term = rg
    total = term
    k = 0
    small = 0
    while small < 3:
        k += 1
        term *= q / k
        # recip-gamma recurrence 1/Gamma(nu+k+1) = (1/Gamma(nu+k)) / (nu+k)
        term /= nu + k
        total += term
        small = small + 1 if abs(term) <= _EPS * abs(total) else 0
        if k > _SERIES_CAP:
            raise ConvergenceError("bessel_i series did not converge")
    return prefactor * total


def bessel_k(n: int, x) -> complex:
    """Modified Bessel function of the second kind, integer order.

    Uses the order-limit form of the standard connection formula, i.e.
    the finite sum, the logarithmic term ``(-1)**(n+1) log(x/2) I_n(x)``
    and the digamma-weighted series.  Only integer orders are needed by
    the Coulomb zero-energy limits (2*ell + 1 with half-integer ell).

    Raises
    ------
    DomainError
        At ``x = 0`` (logarithmic singularity).
    """
    x = _as_complex(x)
    if not isinstance(n, int):
        if float(n) != math.floor(float(n)):
            raise DomainError("bessel_k implemented for integer order only")
        n = int(n)
    n = abs(n)
    if x == 0:
        raise DomainError("bessel_k singular at x = 0")
    half = 0.5 * x
    q = half * half
    # finite sum: (1/2) (x/2)^{-n} sum_{k<n} (n-k-1)!/k! (-q)^k
    finite = complex(0.0)
    if n > 0:
        coef = 0.5 * half ** (-n)
        term = complex(math.factorial(n - 1))
        for k in range(n):
            finite += coef * term
            if k < n - 1:
                coef *= -q
                term /= (n - k - 1) * (k + 1)
    sign = -1.0 if (n % 2 == 0) else 1.0  # (-1)^{n+1}
    log_term = sign * cmath.log(half) * bessel_i(n, x)
    # digamma series: (-1)^n (1/2)(x/2)^n sum_k [psi(k+1)+psi(n+k+1)] q^k/(k!(n+k)!)
    psi_a = -EULER_GAMMA  # psi(1)
    psi_b = -EULER_GAMMA + sum(1.0 / j for j in range(1, n + 1))  # psi(n+1)
    term = 0.5 * half**n / math.factorial(n)
    total = term * (psi_a + psi_b)
    k = 0
    small = 0
    while small < 3:
        k += 1
        term *= q / (k * (n + k))
        psi_a += 1.0 / k
        psi_b += 1.0 / (n + k)
        contrib = term * (psi_a + psi_b)
        total += contrib
        small = small + 1 if abs(contrib) <= _EPS * abs(total) else 0
        if k > _SERIES_CAP:
            raise ConvergenceError("bessel_k series did not converge")
    series = -sign * total
    return finite + log_term + series
