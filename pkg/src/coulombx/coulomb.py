"""Coulomb wave functions on complex parameters.

Solutions of  -u'' + [l(l+1)/rho^2 + 2 eta/rho - 1] u = 0  and their
energy-holomorphic companions:

* ``coulomb_f``      regular solution F (unit far-field sine wave),
* ``coulomb_g``      irregular solution G,
* ``coulomb_h``      outgoing/incoming combinations H+- = G +- iF,
* ``phi``            modified regular solution, entire in energy and
                     angular momentum,
* ``psi_fn``         modified irregular solution built from angular
                     momentum derivatives of ``phi`` (half-integer ell),
* ``coulomb_i``      the standard-normalization version of ``psi_fn``,
* ``continue_g``     analytic continuation of G around rho = 0,
* ``branches_f`` / ``branches_g``   the multifunction value sets.

Supporting rho-independent quantities: the normalization coefficient C
(three equivalent definitions differing only in branch-cut layout), the
D+- coefficients, the far-field phase, and the w, h+-, g functions that
carry all wave-number singularities of the irregular solutions.

Branch conventions: ``(2*eta)**(ell+1)``, ``(+-i*eta)**(2*ell+1)``,
``rho**(ell+1)``, ``(2*eta*rho)**(ell+1)`` and every logarithm are
principal; ``log(+-i*eta)`` inside h+- is continued as
``log(eta) +- i*pi/2`` so its cut in the ``1/eta`` plane lies on the
negative real axis.  Multi-valuedness beyond that is expressed only
through the explicit ``sheet_sign`` and ``winding`` indices of
:class:`BranchValue`.  Identities that mix the modified and standard
normalizations hold on the principal region
``arg(2*eta) + arg(rho) in (-pi, pi]``.

Accuracy domain (double-precision power series): |rho| <= 30,
|eta| <= 10, |ell| <= 10; outside it an :class:`AccuracyDomainWarning`
is emitted.  The large-|eta|, small-|rho| corner with moderate
``eta*rho`` converges fine and is used by the zero-energy limits.
"""

from __future__ import annotations

import cmath
import math
import warnings
from dataclasses import dataclass
from enum import Enum

from .complexfn import (
    _as_complex,
    _is_nonpositive_integer,
    _sinpi,
    cpow,
    digamma,
    gamma,
    log_gamma,
    recip_gamma,
)
from .errors import (
    AccuracyDomainWarning,
    DomainError,
    EssentialSingularityError,
    LowPrecisionWarning,
    PoleError,
)
from .hypergeom import BETA_SWITCH, _mstar_core

__all__ = [
    "CVariant",
    "CoulombParams",
    "BranchValue",
    "TOL_HALF",
    "is_half_integer",
    "theta",
    "coulomb_c",
    "coulomb_d",
    "w_fn",
    "sqrt_w_ratio",
    "h_fn",
    "g_fn",
    "phi",
    "phi_dl",
    "psi_fn",
    "wronskian_phi_psi",
    "coulomb_f",
    "coulomb_i",
    "coulomb_h",
    "coulomb_g",
    "continue_g",
    "branches_f",
    "branches_g",
]

TOL_HALF = 1e-6

_MAX_RHO = 30.0
_MAX_ETA = 10.0
_MAX_ELL = 10.0

_TWO_PI = 2.0 * math.pi


class CVariant(Enum):
    """The three equivalent definitions of the normalization coefficient.

    They define the same multifunction (equal modulus everywhere) but
    place the branch cuts differently in the plane of ``1/eta``:
    SQRT_GAMMA produces the tangled layout of the raw square-rooted
    gamma product, EULER_REFLECTION joins every Coulomb pole to the
    origin through the right half-plane, LOG_GAMMA (the default) yields
    short cuts alternating between adjacent poles.
    """

    SQRT_GAMMA = "sqrtgamma"
    EULER_REFLECTION = "eulerreflection"
    LOG_GAMMA = "loggamma"


def is_half_integer(ell, tol: float = TOL_HALF) -> bool:
    """True when 2*ell is within ``tol`` of an integer (complex distance)."""
    ell = complex(ell)
    return abs(2.0 * ell - round(2.0 * ell.real)) < tol


def _snap_half(ell: complex) -> float:
    return round(2.0 * ell.real) / 2.0


@dataclass(frozen=True)
class CoulombParams:
    """The (eta, ell, rho) triple.

    eta:  Sommerfeld parameter, 1/(a_B k); positive for repulsion.
    ell:  angular momentum; complex allowed, half-integers get exact
          connection formulas.
    rho:  scaled radius k*r.
    """

    eta: complex
    ell: complex
    rho: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "eta", _as_complex(self.eta))
        object.__setattr__(self, "ell", _as_complex(self.ell))
        object.__setattr__(self, "rho", _as_complex(self.rho))
        if (
            abs(self.rho) > _MAX_RHO
            or abs(self.eta) > _MAX_ETA
            or abs(self.ell) > _MAX_ELL
        ):
            warnings.warn(
                "parameters outside the documented accuracy domain "
                "(|rho|<=30, |eta|<=10, |ell|<=10)",
                AccuracyDomainWarning,
                stacklevel=3,
            )

    @classmethod
    def from_wavenumber(cls, k, r, ell, bohr_radius=1.0) -> "CoulombParams":
        """Build from (k, r, a_B); eta = 1/(a_B k), rho = k r."""
        k = _as_complex(k)
        r = _as_complex(r)
        a = _as_complex(bohr_radius)
        if a * k == 0:
            raise EssentialSingularityError(
                "a_B * k = 0 is the essential singularity of the "
                "normalization coefficient"
            )
        return cls(eta=1.0 / (a * k), ell=ell, rho=k * r)

    @property
    def energy(self) -> complex:
        """Dimensionless energy eta**-2 (Rydberg units)."""
        if self.eta == 0:
            raise DomainError("energy = eta**-2 undefined at eta = 0")
        return 1.0 / (self.eta * self.eta)

    @property
    def eta_rho(self) -> complex:
        """eta*rho = r/a_B; independent of the wave number."""
        return self.eta * self.rho

    def is_half_integer(self, tol: float = TOL_HALF) -> bool:
        return is_half_integer(self.ell, tol)


@dataclass(frozen=True)
class BranchValue:
    """A function value with its branch bookkeeping.

    sheet_sign indexes the two sheets of the normalization coefficient
    (+-C); winding counts full turns of rho around the origin.
    """

    value: complex
    sheet_sign: int = 1
    winding: int = 0

    def __post_init__(self) -> None:
        if self.sheet_sign not in (-1, 1):
            raise ValueError("sheet_sign must be +1 or -1")


def _sign_re_eta(eta: complex) -> float:
    # The closed right half-plane maps to +1: the reflection laws then
    # hold with equality on the imaginary axis.
    return 1.0 if eta.real >= 0.0 else -1.0


def _sign_pow(eta: complex, ell_snapped: float) -> float:
    """sign(Re eta)**(2*ell+1) for half-integer ell."""
    if (round(2.0 * ell_snapped) + 1) % 2 == 0:
        return 1.0
    return _sign_re_eta(eta)


def _exp_2pi_eta_ell(eta: complex, ell_snapped: float) -> complex:
    # exp(2*pi*(eta + i*ell)) with the half-integer phase applied exactly.
    sign = 1.0 if round(2.0 * ell_snapped) % 2 == 0 else -1.0
    return sign * cmath.exp(_TWO_PI * eta)


def _check_sign(sign: int) -> int:
    if sign not in (-1, 1):
        raise ValueError("sign must be +1 or -1")
    return sign


# ---------------------------------------------------------------------------
# rho-independent coefficients
# ---------------------------------------------------------------------------


def theta(p: CoulombParams) -> complex:
    """Far-field phase: rho - ell*pi/2 - eta*log(2*rho) + arg Gamma(ell+1+i*eta).

    The last term is the imaginary part of the single-cut log-gamma
    (continuous extension, not wrapped to (-pi, pi]).
    """
    if p.rho == 0:
        raise DomainError("theta undefined at rho = 0")
    lg = log_gamma(p.ell + 1.0 + 1j * p.eta)
    return p.rho - p.ell * (math.pi / 2.0) - p.eta * cmath.log(2.0 * p.rho) + lg.imag


def _lgw(eta: complex, ell: complex, sign: int) -> complex:
    # log of w(sign) in the exponential (log-gamma) form.
    if eta == 0:
        raise PoleError("w exponential form undefined at eta = 0")
    s = 1j * sign
    return (
        log_gamma(ell + 1.0 + s * eta)
        - log_gamma(-ell + s * eta)
        - (2.0 * ell + 1.0) * cmath.log(s * eta)
    )


def w_fn(eta, ell, sign: int = 1) -> complex:
    """The reflection coefficient w of the ell -> -ell-1 symmetry.

    For half-integer ell this is the exact ladder product
    ``prod (1 + j**2/eta**2)`` (j integer or half-odd up to ell; the
    reciprocal for negative ell), entire in the energy and independent
    of ``sign``.  For generic complex ell it is the gamma-ratio form
    ``Gamma(ell+1 +- i eta) / ((+-i eta)**(2 ell+1) Gamma(-ell +- i eta))``
    evaluated in exponential form with principal powers.
    """
    eta = _as_complex(eta)
    ell = _as_complex(ell)
    _check_sign(sign)
    if is_half_integer(ell):
        ells = _snap_half(ell)
        if ells < 0:
            return 1.0 / w_fn(eta, -ells - 1.0, sign)
        two_ell = round(2 * ells)
        ladder = range(2, two_ell + 1, 2) if two_ell % 2 == 0 else range(1, two_ell + 1, 2)
        out = complex(1.0)
        for twoj in ladder:
            j = 0.5 * twoj
            if eta == 0:
                raise PoleError("w diverges at eta = 0 for ell > 0")
            out *= 1.0 + (j * j) / (eta * eta)
        return out
    return cmath.exp(_lgw(eta, ell, sign))


def sqrt_w_ratio(eta, ell, sign: int = 1) -> complex:
    """sqrt(w(-sign)/w(sign)), the reflection factor of H(sign).

    Evaluated in the exponential form
    ``(+-i)**(2 ell+1) * exp((lg(ell+1 -+ i eta) + lg(-ell +- i eta)
    - lg(ell+1 +- i eta) - lg(-ell -+ i eta))/2)``
    with the single-cut log-gamma.  Equals
    ``sign(Re eta)**(2*ell+1)`` for half-integer ell (both half-planes);
    for generic complex ell the underlying coefficient reflection
    identity holds on Re eta > 0.
    """
    eta = _as_complex(eta)
    ell = _as_complex(ell)
    _check_sign(sign)
    if eta == 0:
        raise PoleError("sqrt_w_ratio undefined at eta = 0")
    s = 1j * sign
    t = 0.5 * (
        log_gamma(ell + 1.0 - s * eta)
        + log_gamma(-ell + s * eta)
        - log_gamma(ell + 1.0 + s * eta)
        - log_gamma(-ell - s * eta)
    )
    return cpow(sign * 1j, 2.0 * ell + 1.0) * cmath.exp(t)


def h_fn(eta, ell, sign: int = 1) -> complex:
    """h(sign) = [psi(ell+1 +- i eta) + psi(-ell +- i eta)]/2 - log(+-i eta).

    The logarithm is continued as ``log(eta) +- i pi/2`` so that in the
    plane of ``1/eta`` every branch cut lies on the negative real axis.
    """
    eta = _as_complex(eta)
    ell = _as_complex(ell)
    _check_sign(sign)
    if eta == 0:
        raise EssentialSingularityError("h has an essential singularity at eta = 0")
    s = 1j * sign
    pair = 0.5 * (digamma(ell + 1.0 + s * eta) + digamma(-ell + s * eta))
    return pair - cmath.log(eta) - sign * (1j * math.pi / 2.0)


def g_fn(eta, ell) -> complex:
    """g = (h(+) + h(-))/2 = [psi(ell+1+i eta) + psi(ell+1-i eta)]/2 - log(eta).

    Real for real eta > 0 and real ell.
    """
    eta = _as_complex(eta)
    ell = _as_complex(ell)
    if eta == 0:
        raise EssentialSingularityError("g has an essential singularity at eta = 0")
    pair = 0.5 * (digamma(ell + 1.0 + 1j * eta) + digamma(ell + 1.0 - 1j * eta))
    return pair - cmath.log(eta)


def _cf(eta: complex, ell: complex, variant: CVariant) -> complex:
    """C * Gamma(2*ell+2): the pole-free normalization core."""
    if variant is CVariant.LOG_GAMMA:
        half = 0.5 * (
            log_gamma(ell + 1.0 + 1j * eta) + log_gamma(ell + 1.0 - 1j * eta)
        )
        return cpow(2.0, ell) * cmath.exp(-eta * (math.pi / 2.0) + half)
    if variant is CVariant.SQRT_GAMMA:
        prod = gamma(ell + 1.0 + 1j * eta) * gamma(ell + 1.0 - 1j * eta)
        return cpow(2.0, ell) * cmath.exp(-eta * (math.pi / 2.0)) * cmath.sqrt(prod)
    if eta == 0:
        raise DomainError(
            "the Euler-reflection form of C degenerates at eta = 0; "
            "use the log-gamma or sqrt-gamma variant"
        )
    wplus = w_fn(eta, ell, 1)
    radicand = (
        _TWO_PI * eta * wplus / (cmath.exp(_TWO_PI * eta) - cmath.exp(-_TWO_PI * 1j * ell))
    )
    return cpow(2.0 * eta, ell) * cmath.sqrt(radicand)


def coulomb_c(eta, ell, variant: CVariant = CVariant.LOG_GAMMA) -> complex:
    """Normalization coefficient C of the regular solution.

    All three variants agree for real eta > 0; elsewhere they may differ
    by a sign (they live on the two sheets of the same multifunction)
    but never in modulus.  Poles (branch points) sit at the Coulomb
    points ``1/eta = +-i/(n+ell+1)``.
    """
    eta = _as_complex(eta)
    ell = _as_complex(ell)
    rg, _ = recip_gamma(2.0 * ell + 2.0)
    return _cf(eta, ell, variant) * rg


def coulomb_d(eta, ell, sign: int = 1, variant: CVariant = CVariant.LOG_GAMMA) -> complex:
    """Normalization coefficient D(sign) of the outgoing/incoming solutions.

    ``D(+-) = (-+2i)**(2*ell+1) * Gamma(ell+1 +- i eta) / (C Gamma(2*ell+2))``;
    conjugation symmetry ``D(-)(eta) = conj(D(+)(conj eta))`` for real ell.
    """
    eta = _as_complex(eta)
    ell = _as_complex(ell)
    _check_sign(sign)
    base = -2j if sign == 1 else 2j
    num = gamma(ell + 1.0 + 1j * sign * eta)
    return cpow(base, 2.0 * ell + 1.0) * num / _cf(eta, ell, variant)


# ---------------------------------------------------------------------------
# modified (energy-holomorphic) solutions
# ---------------------------------------------------------------------------


def _kummer_args(p: CoulombParams, exp_sign: int) -> tuple[complex, complex, complex]:
    s = exp_sign
    return p.ell + 1.0 + 1j * s * p.eta, 2.0 * p.ell + 2.0, -2j * s * p.rho


def phi(p: CoulombParams, exp_sign: int = 1) -> complex:
    """Modified regular Coulomb function.

    ``(2 eta rho)**(ell+1) exp(+-i rho) Mstar(ell+1 +- i eta, 2 ell+2, -+2i rho)``,
    holomorphic in the wave number, the energy and ell.  The two
    exp_sign choices agree (Kummer reflection).
    """
    _check_sign(exp_sign)
    alpha, beta, z = _kummer_args(p, exp_sign)
    pref = cpow(2.0 * p.eta * p.rho, p.ell + 1.0)
    if pref == 0:
        return complex(0.0)
    m, _, _, _, _, _ = _mstar_core(alpha, beta, z)
    return pref * cmath.exp(1j * exp_sign * p.rho) * m


def _phi_pair(p: CoulombParams, exp_sign: int) -> tuple[complex, complex]:
    """(phi, d phi / d rho); rho must be nonzero."""
    if p.rho == 0:
        raise DomainError("phi derivative undefined at rho = 0")
    s = exp_sign
    alpha, beta, z = _kummer_args(p, s)
    m, _, mdz, _, _, _ = _mstar_core(alpha, beta, z, want_dz=True)
    pref = cpow(2.0 * p.eta * p.rho, p.ell + 1.0)
    e = cmath.exp(1j * s * p.rho)
    val = pref * e * m
    dval = pref * e * (
        ((p.ell + 1.0) / p.rho + 1j * s) * m + (-2j * s) * mdz
    )
    return val, dval


def phi_dl(p: CoulombParams, exp_sign: int = 1) -> complex:
    """Angular momentum derivative of :func:`phi` at the given index.

    Term-wise analytic: the prefactor contributes ``log(2 eta rho)``
    (principal) and the series contributes the directional parameter
    derivative along (d alpha, d beta) = (1, 2).
    """
    _check_sign(exp_sign)
    if p.rho == 0 or p.eta == 0:
        raise DomainError("phi_dl undefined where 2*eta*rho = 0 (logarithm)")
    alpha, beta, z = _kummer_args(p, exp_sign)
    m, d, _, _, _, _ = _mstar_core(alpha, beta, z, dalpha=1.0, dbeta=2.0, want_deriv=True)
    w2 = 2.0 * p.eta * p.rho
    pref = cpow(w2, p.ell + 1.0)
    return pref * cmath.exp(1j * exp_sign * p.rho) * (cmath.log(w2) * m + d)


def _phi_dl_pair(p: CoulombParams, exp_sign: int) -> tuple[complex, complex]:
    """(phi_dl, d phi_dl / d rho)."""
    if p.rho == 0 or p.eta == 0:
        raise DomainError("phi_dl undefined where 2*eta*rho = 0 (logarithm)")
    s = exp_sign
    alpha, beta, z = _kummer_args(p, s)
    m, d, mdz, ddz, _, _ = _mstar_core(
        alpha, beta, z, dalpha=1.0, dbeta=2.0, want_deriv=True, want_dz=True
    )
    w2 = 2.0 * p.eta * p.rho
    lw = cmath.log(w2)
    pref = cpow(w2, p.ell + 1.0)
    e = cmath.exp(1j * s * p.rho)
    val = pref * e * (lw * m + d)
    dval = pref * e * (
        ((p.ell + 1.0) * lw + 1.0) / p.rho * m
        + (p.ell + 1.0) / p.rho * d
        + 1j * s * (lw * m + d)
        + (-2j * s) * (lw * mdz + ddz)
    )
    return val, dval


def _require_half_integer(ell: complex, what: str) -> float:
    if not is_half_integer(ell):
        raise DomainError(f"{what} is defined for half-integer ell only (got {ell})")
    return _snap_half(ell)


def _half_odd_sign(ell_snapped: float) -> float:
    """(-1)**(2*ell): +1 at integer ell, -1 at half-odd ell."""
    return -1.0 if round(2.0 * ell_snapped) % 2 else 1.0


def _psi_literal_pair(p: CoulombParams, exp_sign: int = 1) -> tuple[complex, complex]:
    # The raw connection-formula combination (w/2) phi_dl(ell)
    # + (1/2) phi_dl(-ell-1) and its rho-derivative.  Its Wronskian with
    # phi is (-1)**(2*ell) and its zero-energy limit is
    # (-1)**(2*ell) * 2x K_{2 ell+1}(2x): the leading coefficient near
    # the origin is the derivative of 1/Gamma at -2*ell, which
    # alternates in sign along the half-integer ladder.
    ells = _require_half_integer(p.ell, "psi_fn")
    w = w_fn(p.eta, ells)
    pa = CoulombParams(p.eta, ells, p.rho)
    pb = CoulombParams(p.eta, -ells - 1.0, p.rho)
    va, da = _phi_dl_pair(pa, exp_sign)
    vb, db = _phi_dl_pair(pb, exp_sign)
    return 0.5 * w * va + 0.5 * vb, 0.5 * w * da + 0.5 * db


def psi_fn(p: CoulombParams, exp_sign: int = 1) -> complex:
    """Modified irregular Coulomb function (half-integer ell).

    The angular-momentum-derivative combination
    ``(w/2) phi_dl(ell) + (1/2) phi_dl(-ell-1)``, normalized so that the
    Wronskian with :func:`phi` (in the variable ``2*eta*rho``) equals 1
    on the whole half-integer ladder and the zero-energy limit is
    ``2x K_{2 ell+1}(2x)``; the raw combination alternates in sign at
    half-odd ell, so a ``(-1)**(2*ell)`` factor is applied.
    Holomorphic in the wave number and the energy.
    """
    ells = _require_half_integer(p.ell, "psi_fn")
    val, _ = _psi_literal_pair(p, exp_sign)
    return _half_odd_sign(ells) * val


def _psi_pair(p: CoulombParams, exp_sign: int = 1) -> tuple[complex, complex]:
    ells = _require_half_integer(p.ell, "psi_fn")
    sign = _half_odd_sign(ells)
    v, d = _psi_literal_pair(p, exp_sign)
    return sign * v, sign * d


def wronskian_phi_psi(p: CoulombParams, exp_sign: int = 1) -> complex:
    """W[psi, phi] with respect to 2*r/a_B = 2*eta*rho; equals 1."""
    if p.eta == 0:
        raise DomainError("wronskian variable degenerates at eta = 0")
    ells = _require_half_integer(p.ell, "wronskian_phi_psi")
    s, ds = _psi_pair(p, exp_sign)
    f, df = _phi_pair(CoulombParams(p.eta, ells, p.rho), exp_sign)
    return (s * df - f * ds) / (2.0 * p.eta)


# ---------------------------------------------------------------------------
# standard-normalization solutions
# ---------------------------------------------------------------------------


def _spherical_s(ell: int, rho: complex) -> complex:
    """Riccati-Bessel rho*j_ell(rho) for integer ell of either sign,
    by the trigonometric recurrence."""
    if rho == 0:
        if ell >= 0:
            return complex(0.0)
        if ell == -1:
            return complex(1.0)
        raise DomainError("spherical reduction singular at rho = 0")
    s0 = cmath.sin(rho)
    sm1 = cmath.cos(rho)
    if ell == 0:
        return s0
    if ell == -1:
        return sm1
    if ell > 0:
        prev, cur = sm1, s0
        for n in range(0, ell):
            prev, cur = cur, (2 * n + 1) / rho * cur - prev
        return cur
    nxt, cur = s0, sm1
    for n in range(-1, ell, -1):
        nxt, cur = cur, (2 * n + 1) / rho * cur - nxt
    return cur


def _near_integer(ell: complex) -> int | None:
    n = round(ell.real)
    if abs(ell - n) < TOL_HALF:
        return n
    return None


def _eta_zero_fg(ell: complex, rho: complex) -> tuple[complex, complex]:
    # Free field: F = rho j_l, G = (-1)^l F at index -l-1. Exact reduction,
    # used instead of the Coulomb formulas whose eta-bookkeeping
    # degenerates at eta = 0.
    n = _near_integer(ell)
    if n is None:
        raise DomainError(
            "eta = 0 irregular solutions implemented for integer ell only"
        )
    f = _spherical_s(n, rho)
    g = (-1.0) ** n * _spherical_s(-n - 1, rho)
    return f, g


def _f_value(p: CoulombParams, variant: CVariant, exp_sign: int) -> complex:
    if p.eta == 0:
        n = _near_integer(p.ell)
        if n is not None:
            return _spherical_s(n, p.rho)
    alpha, beta, z = _kummer_args(p, exp_sign)
    cf = _cf(p.eta, p.ell, variant)
    pref = cpow(p.rho, p.ell + 1.0)
    if pref == 0:
        return complex(0.0)
    m, _, _, _, _, _ = _mstar_core(alpha, beta, z)
    return cf * pref * cmath.exp(1j * exp_sign * p.rho) * m


def _f_pair(p: CoulombParams, variant: CVariant, exp_sign: int) -> tuple[complex, complex]:
    """(F, dF/d rho) via the series route (eta may not be 0 with
    negative integer ell here)."""
    if p.rho == 0:
        raise DomainError("F derivative undefined at rho = 0")
    if p.eta == 0:
        n = _near_integer(p.ell)
        if n is not None:
            # derivative from the recurrence S'_l = S_{l-1} - l/rho S_l
            s = _spherical_s(n, p.rho)
            sm = _spherical_s(n - 1, p.rho)
            return s, sm - n / p.rho * s
    s = exp_sign
    alpha, beta, z = _kummer_args(p, s)
    m, _, mdz, _, _, _ = _mstar_core(alpha, beta, z, want_dz=True)
    cf = _cf(p.eta, p.ell, variant)
    pref = cpow(p.rho, p.ell + 1.0)
    e = cmath.exp(1j * s * p.rho)
    val = cf * pref * e * m
    dval = cf * pref * e * (((p.ell + 1.0) / p.rho + 1j * s) * m + (-2j * s) * mdz)
    return val, dval


def coulomb_f(
    p: CoulombParams,
    sheet_sign: int = 1,
    variant: CVariant = CVariant.LOG_GAMMA,
    exp_sign: int = 1,
) -> BranchValue:
    """Regular Coulomb function F.

    ``C * rho**(ell+1) * exp(+-i rho) * Gamma(2 ell+2) * Mstar(...)``
    with principal ``rho**(ell+1)``.  ``sheet_sign`` selects the sheet
    of the two-valued normalization (the multifunction is {+F, -F}).
    Real for real eta and rho > 0; reduces to the Riccati-Bessel
    function at eta = 0 (exact trigonometric route for integer ell).
    """
    _check_sign(sheet_sign)
    _check_sign(exp_sign)
    return BranchValue(sheet_sign * _f_value(p, variant, exp_sign), sheet_sign, 0)


def _f_dl(p: CoulombParams, variant: CVariant, exp_sign: int) -> complex:
    """Angular momentum derivative of F at the given index (exact
    derivative of the implemented F, including its normalization)."""
    if p.rho == 0 or p.eta == 0:
        raise DomainError("F ell-derivative undefined where 2*eta*rho = 0")
    s = exp_sign
    alpha, beta, z = _kummer_args(p, s)
    m, d, _, _, _, _ = _mstar_core(alpha, beta, z, dalpha=1.0, dbeta=2.0, want_deriv=True)
    cf = _cf(p.eta, p.ell, variant)
    pref = cpow(p.rho, p.ell + 1.0)
    e = cmath.exp(1j * s * p.rho)
    lfac = g_fn(p.eta, p.ell) + cmath.log(2.0 * p.eta) + cmath.log(p.rho)
    return cf * pref * e * (lfac * m + d)


def _coeff_f_from_phi(p: CoulombParams, ells: float, variant: CVariant) -> complex:
    # C Gamma(2 ell+2) / (2 eta)**(ell+1): the modified-to-standard bridge.
    return _cf(p.eta, ells, variant) / cpow(2.0 * p.eta, ells + 1.0)


def _i_value(
    p: CoulombParams, variant: CVariant, exp_sign: int
) -> tuple[complex, float]:
    ells = _require_half_integer(p.ell, "coulomb_i")
    if p.eta == 0:
        raise DomainError("coulomb_i undefined at eta = 0")
    psi = psi_fn(CoulombParams(p.eta, ells, p.rho), exp_sign)
    return _coeff_f_from_phi(p, ells, variant) * psi, ells


def coulomb_i(
    p: CoulombParams,
    sheet_sign: int = 1,
    variant: CVariant = CVariant.LOG_GAMMA,
    exp_sign: int = 1,
) -> BranchValue:
    """Irregular Coulomb function I: psi_fn in the standard
    normalization, ``C Gamma(2 ell+2)/(2 eta)**(ell+1) * psi``.

    Real for rho > 0 and real eta; on an equal footing with F regarding
    the wave-number dependence.  Half-integer ell only.
    """
    _check_sign(sheet_sign)
    val, _ = _i_value(p, variant, exp_sign)
    return BranchValue(sheet_sign * val, sheet_sign, 0)


def _i_value_fdot_route(
    p: CoulombParams, variant: CVariant = CVariant.LOG_GAMMA, exp_sign: int = 1
) -> complex:
    """I via the F-derivative connection
    ``(w/2)[Fdot(ell) + sign(Re eta)**(2 ell+1) Fdot(-ell-1) - 2 g F]``
    (same half-odd normalization as the psi route)."""
    ells = _require_half_integer(p.ell, "coulomb_i")
    pa = CoulombParams(p.eta, ells, p.rho)
    pb = CoulombParams(p.eta, -ells - 1.0, p.rho)
    w = w_fn(p.eta, ells)
    g = g_fn(p.eta, ells)
    fd_a = _f_dl(pa, variant, exp_sign)
    fd_b = _f_dl(pb, variant, exp_sign)
    f = _f_value(pa, variant, exp_sign)
    raw = 0.5 * w * (fd_a + _sign_pow(p.eta, ells) * fd_b - 2.0 * g * f)
    return _half_odd_sign(ells) * raw


def _ell_dispatch(ell: complex) -> tuple[str, float | None]:
    d = abs(2.0 * ell - round(2.0 * ell.real))
    if d < TOL_HALF:
        return "half", _snap_half(ell)
    if d < 0.5 * BETA_SWITCH:
        warnings.warn(
            "ell in the low-precision band between the half-integer snap "
            "tolerance and the generic-formula zone; expect ~|sin(2 pi ell)|**-1 "
            "digit loss",
            LowPrecisionWarning,
            stacklevel=3,
        )
    return "generic", None


def _h_half(
    p: CoulombParams, sign: int, ells: float, variant: CVariant, exp_sign: int,
    g_instead_of_h: bool = False,
) -> complex:
    # Uses the raw derivative combination (the half-odd normalization of
    # psi/I cancels against 1/w here; H and G must match the generic-ell
    # limit, which this combination does).
    ph = CoulombParams(p.eta, ells, p.rho)
    psi_lit, _ = _psi_literal_pair(ph, exp_sign)
    ival_lit = _coeff_f_from_phi(p, ells, variant) * psi_lit
    f = _f_value(ph, variant, exp_sign)
    w = w_fn(p.eta, ells)
    hg = g_fn(p.eta, ells) if g_instead_of_h else h_fn(p.eta, ells, sign)
    pref = (_exp_2pi_eta_ell(p.eta, ells) - 1.0) / math.pi
    return pref * (ival_lit / w + hg * f)


def _h_generic(
    p: CoulombParams, sign: int, variant: CVariant, exp_sign: int
) -> complex:
    if p.rho == 0:
        raise DomainError("H undefined at rho = 0")
    wpm = w_fn(p.eta, p.ell, sign)
    pa = CoulombParams(p.eta, p.ell, p.rho)
    pb = CoulombParams(p.eta, -p.ell - 1.0, p.rho)
    bracket = wpm * phi(pa, exp_sign) - phi(pb, exp_sign)
    front = (
        cpow(2.0 * p.eta, p.ell)
        / _cf(p.eta, p.ell, variant)
        * (math.pi / _sinpi(2.0 * p.ell))
    )
    return front * bracket


def coulomb_h(
    p: CoulombParams,
    sign: int = 1,
    sheet_sign: int = 1,
    variant: CVariant = CVariant.LOG_GAMMA,
    exp_sign: int = 1,
) -> BranchValue:
    """Outgoing (+) / incoming (-) Coulomb function H.

    Far field ``exp(+-i theta)``.  Dispatches on the angular momentum:
    within ``TOL_HALF`` of a half-integer the connection through the
    energy-holomorphic pair (I, F) is used; otherwise the generic
    two-term combination of modified regular solutions, which loses
    precision as ``sin(2 pi ell)`` approaches zero.
    """
    _check_sign(sign)
    _check_sign(sheet_sign)
    if p.rho == 0:
        raise DomainError("H undefined at rho = 0")
    if p.eta == 0:
        f, g = _eta_zero_fg(p.ell, p.rho)
        return BranchValue(sheet_sign * (g + 1j * sign * f), sheet_sign, 0)
    kind, ells = _ell_dispatch(p.ell)
    if kind == "half":
        val = _h_half(p, sign, ells, variant, exp_sign)
    else:
        val = _h_generic(p, sign, variant, exp_sign)
    return BranchValue(sheet_sign * val, sheet_sign, 0)


def coulomb_g(
    p: CoulombParams,
    sheet_sign: int = 1,
    variant: CVariant = CVariant.LOG_GAMMA,
    exp_sign: int = 1,
) -> BranchValue:
    """Irregular Coulomb function G = (H+ + H-)/2.

    Near field ``rho**(-ell) / ((2 ell+1) C)``; at half-integer ell the
    analytic decomposition ``(e^{2 pi (eta+i ell)}-1)/pi [I/w + g F]``
    is used, so every wave-number singularity is carried by the
    rho-independent functions.
    """
    _check_sign(sheet_sign)
    if p.rho == 0:
        raise DomainError("G undefined at rho = 0")
    if p.eta == 0:
        _, g0 = _eta_zero_fg(p.ell, p.rho)
        return BranchValue(sheet_sign * g0, sheet_sign, 0)
    kind, ells = _ell_dispatch(p.ell)
    if kind == "half":
        val = _h_half(p, 1, ells, variant, exp_sign, g_instead_of_h=True)
    else:
        val = 0.5 * (
            _h_generic(p, 1, variant, exp_sign) + _h_generic(p, -1, variant, exp_sign)
        )
    return BranchValue(sheet_sign * val, sheet_sign, 0)


def _g_pair(
    p: CoulombParams, variant: CVariant = CVariant.LOG_GAMMA, exp_sign: int = 1
) -> tuple[complex, complex]:
    """(G, dG/d rho) at half-integer ell; used to seed the ODE oracle."""
    ells = _require_half_integer(p.ell, "coulomb_g")
    if p.rho == 0:
        raise DomainError("G undefined at rho = 0")
    if p.eta == 0:
        n = _near_integer(p.ell)
        if n is None:
            raise DomainError("eta = 0 G implemented for integer ell only")
        sgn = (-1.0) ** n
        g = sgn * _spherical_s(-n - 1, p.rho)
        gm = sgn * _spherical_s(-n - 2, p.rho)
        return g, gm - (-n - 1) / p.rho * g
    ph = CoulombParams(p.eta, ells, p.rho)
    coeff = _coeff_f_from_phi(p, ells, variant)
    psi_lit, dpsi_lit = _psi_literal_pair(ph, exp_sign)
    f, df = _f_pair(ph, variant, exp_sign)
    w = w_fn(p.eta, ells)
    g = g_fn(p.eta, ells)
    pref = (_exp_2pi_eta_ell(p.eta, ells) - 1.0) / math.pi
    return (
        pref * (coeff * psi_lit / w + g * f),
        pref * (coeff * dpsi_lit / w + g * df),
    )


def _g_value_fdot_route(
    p: CoulombParams, variant: CVariant = CVariant.LOG_GAMMA, exp_sign: int = 1
) -> complex:
    """G via the F-derivative connection
    ``(e^{2 pi (eta+i ell)}-1)/(2 pi) [Fdot(ell) + sign(Re eta)**(2 ell+1) Fdot(-ell-1)]``."""
    ells = _require_half_integer(p.ell, "coulomb_g")
    pa = CoulombParams(p.eta, ells, p.rho)
    pb = CoulombParams(p.eta, -ells - 1.0, p.rho)
    fd_a = _f_dl(pa, variant, exp_sign)
    fd_b = _f_dl(pb, variant, exp_sign)
    pref = (_exp_2pi_eta_ell(p.eta, ells) - 1.0) / (2.0 * math.pi)
    return pref * (fd_a + _sign_pow(p.eta, ells) * fd_b)


def continue_g(
    p: CoulombParams,
    n: int,
    sheet_sign: int = 1,
    variant: CVariant = CVariant.LOG_GAMMA,
) -> BranchValue:
    """Analytic continuation ``G(rho e^{2 pi i n})`` for half-integer ell:

    ``e^{2 pi i n ell} [G(rho) + 2 i n (e^{2 pi (eta+i ell)} - 1) F(rho)]``.
    """
    ells = _require_half_integer(p.ell, "continue_g")
    g = coulomb_g(p, sheet_sign, variant).value
    if n == 0:
        return BranchValue(g, sheet_sign, 0)
    f = coulomb_f(p, sheet_sign, variant).value
    phase = 1.0 if round(2.0 * n * ells) % 2 == 0 else -1.0
    val = phase * (g + 2j * n * (_exp_2pi_eta_ell(p.eta, ells) - 1.0) * f)
    return BranchValue(val, sheet_sign, n)


def branches_f(
    p: CoulombParams, variant: CVariant = CVariant.LOG_GAMMA
) -> tuple[BranchValue, BranchValue]:
    """The two branches {+F, -F} of the regular multifunction."""
    f = _f_value(p, variant, 1)
    return BranchValue(f, 1, 0), BranchValue(-f, -1, 0)


def branches_g(
    p: CoulombParams, n_max: int, variant: CVariant = CVariant.LOG_GAMMA
) -> list[BranchValue]:
    """The 2*(2*n_max+1) branches
    ``+-(G + 2 i n (e^{2 pi (eta+i ell)} - 1) F)`` with |n| <= n_max."""
    if n_max < 0:
        raise DomainError("n_max must be non-negative")
    ells = _require_half_integer(p.ell, "branches_g")
    g = coulomb_g(p, 1, variant).value
    f = _f_value(CoulombParams(p.eta, ells, p.rho), variant, 1)
    step = 2j * (_exp_2pi_eta_ell(p.eta, ells) - 1.0) * f
    out = []
    for n in range(-n_max, n_max + 1):
        base = g + n * step
        out.append(BranchValue(base, 1, n))
        out.append(BranchValue(-base, -1, n))
    return out
