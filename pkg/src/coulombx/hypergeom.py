"""Confluent hypergeometric kernel.

Everything downstream is assembled from the regularized Kummer series

    Mstar(alpha, beta, z) = sum_n (alpha)_n / Gamma(beta + n) * z^n / n!

which is entire in all three arguments, from its directional derivative
in the (alpha, beta) parameter plane (the engine behind the angular
momentum derivatives of the modified Coulomb function), and from the
Tricomi function built out of the two.

Series are summed with compensated (Neumaier) accumulation; the Kummer
series loses digits to leading-term cancellation at moderate |z| and
the compensation buys back roughly two of them.  Termination is shared
by every series here: stop once three consecutive terms are each below
machine epsilon relative to the running sum, give up at 2000 terms.

Accuracy domain: |z| <= 60 and |alpha|, |beta| <= 30.  Outside it the
operations still return, but ``SeriesResult.truncation_estimate`` grows
with the cancellation actually encountered (it tracks the peak term
magnitude), so the precision loss is observable instead of silent.
"""

from __future__ import annotations

import cmath
import math
from dataclasses import dataclass

from . import _ddarith as _dd
from .complexfn import _as_complex, _is_nonpositive_integer, _sinpi, cpow, recip_gamma
from .errors import ConvergenceError, DomainError, PoleError

__all__ = [
    "KummerParams",
    "SeriesResult",
    "kummer_m",
    "kummer_m_reg",
    "kummer_m_reg_dparams",
    "tricomi_u",
    "BETA_SWITCH",
]

_EPS = 2.220446049250313e-16
_EPS_DD = 1e-32
_TERM_CAP = 2000
_CONSECUTIVE_SMALL = 3

# When the peak summand exceeds the final sum by this factor, the fast
# binary64 pass has lost enough digits to leading-term cancellation that
# the series is re-summed with double-double term recurrences.  (The
# recurrence error also grows ~n*eps, so the threshold is kept tight.)
_DD_TRIGGER = 8.0

# Distance from an integer beta below which the two-term Tricomi
# combination is abandoned for the integer-limit path.
BETA_SWITCH = 1e-3


@dataclass(frozen=True)
class KummerParams:
    """Argument triple of the confluent hypergeometric functions."""

    alpha: complex
    beta: complex
    z: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", _as_complex(self.alpha))
        object.__setattr__(self, "beta", _as_complex(self.beta))
        object.__setattr__(self, "z", _as_complex(self.z))


@dataclass(frozen=True)
class SeriesResult:
    """A series value plus its convergence diagnostics."""

    value: complex
    terms_used: int
    truncation_estimate: float


class _Neumaier:
    """Compensated accumulator for complex terms (componentwise)."""

    __slots__ = ("sr", "si", "cr", "ci")

    def __init__(self) -> None:
        self.sr = self.si = self.cr = self.ci = 0.0

    def add(self, t: complex) -> None:
        tr = t.real
        s = self.sr + tr
        if abs(self.sr) >= abs(tr):
            self.cr += (self.sr - s) + tr
        else:
            self.cr += (tr - s) + self.sr
        self.sr = s
        ti = t.imag
        s = self.si + ti
        if abs(self.si) >= abs(ti):
            self.ci += (self.si - s) + ti
        else:
            self.ci += (ti - s) + self.si
        self.si = s

    @property
    def value(self) -> complex:
        return complex(self.sr + self.cr, self.si + self.ci)

    @property
    def magnitude(self) -> float:
        return abs(self.value)


def _mstar_core(
    alpha: complex,
    beta: complex,
    z: complex,
    dalpha: complex = 0j,
    dbeta: complex = 0j,
    want_deriv: bool = False,
    want_dz: bool = False,
):
    """Shared summation loop for Mstar, its parameter derivative, and
    their z-derivatives.

    Returns ``(value, deriv, value_dz, deriv_dz, terms, estimate)``
    where unrequested entries are 0.  ``deriv`` is the directional
    derivative along ``(dalpha, dbeta)``.
    """
    # Pochhammer factor and its directional derivative, maintained by
    # recurrence so zeros of (alpha)_n (terminating series) stay exact.
    p = complex(1.0)
    dp = complex(0.0)
    # Reciprocal gamma 1/Gamma(beta+n): direct evaluation while beta+n
    # can sit near a pole, recurrence once safely in the right half-plane.
    n_switch = max(0, math.ceil(0.5 - beta.real))
    rg, drg_unit = recip_gamma(beta)
    drg = drg_unit * dbeta
    f = complex(1.0)  # z^n / n!

    s_val = _Neumaier()
    s_der = _Neumaier()
    s_val_dz = _Neumaier()
    s_der_dz = _Neumaier()

    peak = 0.0
    peak_der = 0.0
    peak_dz = 0.0
    peak_der_dz = 0.0
    tail: list[float] = [0.0, 0.0, 0.0]
    small = 0
    n = 0
    while True:
        coeff = p * rg
        dcoeff = dp * rg + p * drg if want_deriv else 0j
        t_val = coeff * f
        s_val.add(t_val)
        mag = abs(t_val)
        peak = max(peak, mag)
        tail[n % 3] = mag
        ok = mag <= _EPS * s_val.magnitude
        if want_deriv:
            t_der = dcoeff * f
            s_der.add(t_der)
            peak_der = max(peak_der, abs(t_der))
            ok = ok and abs(t_der) <= _EPS * s_der.magnitude
        if n >= 1:
            if want_dz:
                t = coeff * f_prev
                s_val_dz.add(t)
                peak_dz = max(peak_dz, abs(t))
                ok = ok and abs(t) <= _EPS * s_val_dz.magnitude
            if want_dz and want_deriv:
                t = dcoeff * f_prev
                s_der_dz.add(t)
                peak_der_dz = max(peak_der_dz, abs(t))
                ok = ok and abs(t) <= _EPS * s_der_dz.magnitude
        small = small + 1 if ok else 0
        # n_switch guard: while beta+n can sit at a gamma pole the terms
        # vanish identically and must not count as convergence.
        if small >= _CONSECUTIVE_SMALL and n >= n_switch:
            break
        if n >= _TERM_CAP:
            raise ConvergenceError(
                f"Kummer series did not converge within {_TERM_CAP} terms "
                f"(alpha={alpha}, beta={beta}, z={z})"
            )
        # advance n -> n+1
        dp = dp * (alpha + n) + p * dalpha
        p = p * (alpha + n)
        f_prev = f
        f = f * z / (n + 1)
        if n + 1 <= n_switch:
            rg, drg_unit = recip_gamma(beta + n + 1)
            drg = drg_unit * dbeta
        else:
            denom = beta + n
            rg_new = rg / denom
            drg = (drg - rg_new * dbeta) / denom
            rg = rg_new
        n += 1

    denom_mag = s_val.magnitude
    need_dd = peak > 0.0 and peak > _DD_TRIGGER * denom_mag
    if want_deriv and peak_der > 0.0:
        need_dd = need_dd or peak_der > _DD_TRIGGER * s_der.magnitude
    if want_dz and peak_dz > 0.0:
        need_dd = need_dd or peak_dz > _DD_TRIGGER * s_val_dz.magnitude
    if want_dz and want_deriv and peak_der_dz > 0.0:
        need_dd = need_dd or peak_der_dz > _DD_TRIGGER * s_der_dz.magnitude
    if need_dd:
        return _mstar_core_dd(alpha, beta, z, dalpha, dbeta, want_deriv, want_dz)
    estimate = 0.0
    if peak > 0.0:
        scale = denom_mag if denom_mag > 0.0 else peak
        estimate = (sum(tail) + peak * _EPS) / scale
    return (
        s_val.value,
        s_der.value if want_deriv else 0j,
        s_val_dz.value if want_dz else 0j,
        s_der_dz.value if (want_dz and want_deriv) else 0j,
        n + 1,
        estimate,
    )


_CDD_ZERO = (0.0, 0.0, 0.0, 0.0)
_CDD_ONE = (1.0, 0.0, 0.0, 0.0)


def _mstar_core_dd(
    alpha: complex,
    beta: complex,
    z: complex,
    dalpha: complex = 0j,
    dbeta: complex = 0j,
    want_deriv: bool = False,
    want_dz: bool = False,
):
    """Double-double re-summation of the Kummer loop.

    Same recurrences as the fast pass, but every factor and accumulator
    is an (hi, lo) pair, so the peak-term cancellation costs accuracy
    out of ~32 digits instead of 16.  The reciprocal-gamma seeds stay
    binary64: their error is a common factor (or attached to small
    pre-peak terms) and does not get amplified.
    """
    a_c = _dd.cdd_from(alpha)
    z_c = _dd.cdd_from(z)
    da_c = _dd.cdd_from(dalpha)
    db_c = _dd.cdd_from(dbeta)
    dbeta_nonzero = dbeta != 0

    p = _CDD_ONE
    dp = _CDD_ZERO
    n_switch = max(0, math.ceil(0.5 - beta.real))
    rg0, drg0 = recip_gamma(beta)
    rg = _dd.cdd_from(rg0)
    drg = _dd.cdd_from(drg0 * dbeta)
    f = _CDD_ONE

    s_val = _CDD_ZERO
    s_der = _CDD_ZERO
    s_val_dz = _CDD_ZERO
    s_der_dz = _CDD_ZERO
    f_prev = _CDD_ZERO

    peak = 0.0
    tail = [0.0, 0.0, 0.0]
    small = 0
    n = 0
    while True:
        coeff = _dd.cdd_mul(p, rg)
        if want_deriv:
            dcoeff = _dd.cdd_add(_dd.cdd_mul(dp, rg), _dd.cdd_mul(p, drg))
        t_val = _dd.cdd_mul(coeff, f)
        s_val = _dd.cdd_add(s_val, t_val)
        mag = _dd.cdd_abs_estimate(t_val)
        peak = max(peak, mag)
        tail[n % 3] = mag
        ok = mag <= _EPS_DD * _dd.cdd_abs_estimate(s_val)
        if want_deriv:
            t_der = _dd.cdd_mul(dcoeff, f)
            s_der = _dd.cdd_add(s_der, t_der)
            ok = ok and _dd.cdd_abs_estimate(t_der) <= _EPS_DD * _dd.cdd_abs_estimate(s_der)
        if n >= 1 and want_dz:
            t = _dd.cdd_mul(coeff, f_prev)
            s_val_dz = _dd.cdd_add(s_val_dz, t)
            ok = ok and _dd.cdd_abs_estimate(t) <= _EPS_DD * _dd.cdd_abs_estimate(s_val_dz)
            if want_deriv:
                t = _dd.cdd_mul(dcoeff, f_prev)
                s_der_dz = _dd.cdd_add(s_der_dz, t)
                ok = ok and _dd.cdd_abs_estimate(t) <= _EPS_DD * _dd.cdd_abs_estimate(s_der_dz)
        small = small + 1 if ok else 0
        if small >= _CONSECUTIVE_SMALL and n >= n_switch:
            break
        if n >= _TERM_CAP:
            raise ConvergenceError(
                f"Kummer series did not converge within {_TERM_CAP} terms "
                f"(alpha={alpha}, beta={beta}, z={z})"
            )
        a_plus_n = _dd.cdd_add(a_c, (float(n), 0.0, 0.0, 0.0))
        if want_deriv:
            dp = _dd.cdd_add(_dd.cdd_mul(dp, a_plus_n), _dd.cdd_mul(p, da_c))
        p = _dd.cdd_mul(p, a_plus_n)
        f_prev = f
        f = _dd.cdd_div_real(_dd.cdd_mul(f, z_c), float(n + 1), 0.0)
        if n + 1 <= n_switch:
            rg0, drg0 = recip_gamma(beta + n + 1)
            rg = _dd.cdd_from(rg0)
            drg = _dd.cdd_from(drg0 * dbeta)
        else:
            denom = _dd.cdd_add(_dd.cdd_from(beta), (float(n), 0.0, 0.0, 0.0))
            rg_new = _dd.cdd_div(rg, denom)
            if dbeta_nonzero:
                drg = _dd.cdd_div(
                    _dd.cdd_add(drg, _dd.cdd_mul((-1.0, 0.0, 0.0, 0.0), _dd.cdd_mul(rg_new, db_c))),
                    denom,
                )
            rg = rg_new
        n += 1

    denom_mag = _dd.cdd_abs_estimate(s_val)
    estimate = 0.0
    if peak > 0.0:
        scale = denom_mag if denom_mag > 0.0 else peak
        estimate = (sum(tail) + peak * _EPS_DD) / scale
    return (
        _dd.cdd_to_complex(s_val),
        _dd.cdd_to_complex(s_der) if want_deriv else 0j,
        _dd.cdd_to_complex(s_val_dz) if want_dz else 0j,
        _dd.cdd_to_complex(s_der_dz) if (want_dz and want_deriv) else 0j,
        n + 1,
        estimate,
    )


def kummer_m(p: KummerParams) -> SeriesResult:
    """Kummer function of the first kind, direct series
    ``sum (alpha)_n / (beta)_n * z^n / n!``.

    Raises
    ------
    PoleError
        If ``beta`` is a non-positive integer (use :func:`kummer_m_reg`).
    """
    if _is_nonpositive_integer(p.beta):
        raise PoleError(f"kummer_m undefined at beta = {p.beta}")
    term = complex(1.0)
    acc = _Neumaier()
    acc.add(term)
    peak = 1.0
    tail = [1.0, 0.0, 0.0]
    small = 0
    n = 0
    while small < _CONSECUTIVE_SMALL:
        if n >= _TERM_CAP:
            raise ConvergenceError(
                f"Kummer series did not converge within {_TERM_CAP} terms ({p})"
            )
        term = term * (p.alpha + n) * p.z / ((p.beta + n) * (n + 1))
        n += 1
        acc.add(term)
        mag = abs(term)
        peak = max(peak, mag)
        tail[n % 3] = mag
        small = small + 1 if mag <= _EPS * acc.magnitude else 0
    denom = acc.magnitude or peak
    return SeriesResult(acc.value, n + 1, (sum(tail) + peak * _EPS) / denom)


def kummer_m_reg(p: KummerParams) -> SeriesResult:
    """Regularized Kummer function, entire in alpha, beta and z."""
    value, _, _, _, terms, est = _mstar_core(p.alpha, p.beta, p.z)
    return SeriesResult(value, terms, est)


def kummer_m_reg_dparams(p: KummerParams, dalpha, dbeta) -> SeriesResult:
    """Directional derivative of the regularized Kummer function in the
    (alpha, beta) parameter plane along ``(dalpha, dbeta)``.

    Computed term-wise: each term contributes the Pochhammer logarithmic
    sum along ``dalpha`` and a digamma-weighted reciprocal gamma factor
    along ``dbeta``, both maintained by pole-safe recurrences.
    """
    dalpha = _as_complex(dalpha)
    dbeta = _as_complex(dbeta)
    _, deriv, _, _, terms, est = _mstar_core(
        p.alpha, p.beta, p.z, dalpha=dalpha, dbeta=dbeta, want_deriv=True
    )
    return SeriesResult(deriv, terms, est)


def _tricomi_two_term(alpha: complex, beta: complex, z: complex) -> complex:
    front = math.pi / _sinpi(beta)
    m1, _, _, _, _, _ = _mstar_core(alpha, beta, z)
    m2, _, _, _, _, _ = _mstar_core(alpha - beta + 1.0, 2.0 - beta, z)
    rg1, _ = recip_gamma(alpha - beta + 1.0)
    rg2, _ = recip_gamma(alpha)
    return front * (m1 * rg1 - cpow(z, 1.0 - beta) * m2 * rg2)


def _tricomi_integer_limit(alpha: complex, b: int, z: complex) -> complex:
    # beta -> b limit of the two-term combination: both terms collapse to
    # the same solution, the sine prefactor supplies a 1/eps, and the
    # bracket is expanded to first order in eps = beta - b.  The parameter
    # derivatives reuse kummer_m_reg_dparams, i.e. exactly the machinery
    # that defines the irregular energy-holomorphic Coulomb solution.
    m1, d1, _, _, _, _ = _mstar_core(alpha, complex(b), z, dbeta=1.0, want_deriv=True)
    rg1, drg1 = recip_gamma(alpha - b + 1.0)
    shifted_alpha = alpha - b + 1.0
    m2, d2, _, _, _, _ = _mstar_core(
        shifted_alpha, complex(2 - b), z, dalpha=1.0, dbeta=1.0, want_deriv=True
    )
    rg_a, _ = recip_gamma(alpha)
    bracket = d1 * rg1 - m1 * drg1 + cpow(z, 1 - b) * rg_a * (cmath.log(z) * m2 + d2)
    return (1.0 if b % 2 == 0 else -1.0) * bracket


def tricomi_u(p: KummerParams) -> complex:
    """Confluent hypergeometric function of the second kind.

    Dispatches on the distance of ``beta`` from the integers: further
    than ``BETA_SWITCH`` away, the usual two-term combination of
    regularized Kummer functions is used; closer, that combination
    cancels catastrophically and the integer-limit form (first-order
    expansion in ``beta - b``) takes over.  Inside the switch band the
    returned value is the limit at the nearest integer, so it carries an
    O(|beta - b|) parameter-rounding error.

    The branch cut in ``z`` lies on the negative real axis (principal
    ``z**(1-beta)``).

    Raises
    ------
    DomainError
        At ``z = 0``.
    """
    if p.z == 0:
        raise DomainError("tricomi_u singular at z = 0")
    b = round(p.beta.real)
    if abs(p.beta - b) <= BETA_SWITCH:
        return _tricomi_integer_limit(p.alpha, b, p.z)
    return _tricomi_two_term(p.alpha, p.beta, p.z)
