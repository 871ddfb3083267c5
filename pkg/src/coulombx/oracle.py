"""Independent verification machinery: adaptive integration of the
radial equation  -u'' + [l(l+1)/rho^2 + 2 eta/rho - 1] u = 0  along
straight-line paths in the complex rho plane.

Used only by tests and the ``selftest`` command, never by the
production formulas.  Each segment is parameterized by a real variable
and handed to an embedded 5(4) Dormand-Prince pair
(``scipy.integrate.solve_ivp``, method ``RK45``); closed polygonal
loops around the origin probe the monodromy of the irregular solution.

The regular solution is seeded near the origin from the Frobenius
series of the equation itself (coefficient recurrence
``k (k + 2 l + 1) c_k = 2 eta c_{k-1} - c_{k-2}``), which shares no
code with the hypergeometric evaluation it is used to check.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np
from scipy.integrate import solve_ivp

from .complexfn import _as_complex, cpow
from .coulomb import CoulombParams, coulomb_c, coulomb_g
from .errors import PathThroughOriginError, StepFailureError

__all__ = [
    "OdeState",
    "integrate_radial",
    "frobenius_regular_seed",
    "oracle_f",
    "oracle_g",
    "SEED_RHO",
]

SEED_RHO = 1e-3
_FROBENIUS_TERMS = 6
_MIN_ORIGIN_DISTANCE = 1e-6
_DEFAULT_REL_TOL = 1e-10


@dataclass(frozen=True)
class OdeState:
    """Wave function value, its rho-derivative, and the current point."""

    u: complex
    du: complex
    rho: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "u", _as_complex(self.u))
        object.__setattr__(self, "du", _as_complex(self.du))
        object.__setattr__(self, "rho", _as_complex(self.rho))


def _segment_origin_distance(a: complex, b: complex) -> float:
    # distance from 0 to the segment a..b
    d = b - a
    L2 = (d * d.conjugate()).real
    if L2 == 0.0:
        return abs(a)
    t = -(a * d.conjugate()).real / L2
    t = min(1.0, max(0.0, t))
    return abs(a + t * d)


def integrate_radial(
    p: CoulombParams,
    seed: OdeState,
    path: list[complex],
    rel_tol: float = _DEFAULT_REL_TOL,
) -> OdeState:
    """Continue (u, u') from ``seed`` along straight segments through
    ``path`` (the seed point is the implicit first waypoint).

    Supports closed loops; the result is path-independent within any
    homotopy class avoiding rho = 0.

    Raises
    ------
    PathThroughOriginError
        If a segment passes within 1e-6 of the origin.
    StepFailureError
        If the embedded pair cannot meet the tolerance.
    """
    eta, ell = p.eta, p.ell
    u, du = complex(seed.u), complex(seed.du)
    current = complex(seed.rho)
    ll1 = ell * (ell + 1.0)

    for waypoint in path:
        target = _as_complex(waypoint)
        if target == current:
            continue
        if _segment_origin_distance(current, target) < _MIN_ORIGIN_DISTANCE:
            raise PathThroughOriginError(
                f"segment {current} -> {target} passes through rho = 0"
            )
        delta = target - current
        a = current

        def rhs(t: float, y: np.ndarray) -> np.ndarray:
            rho = a + t * delta
            uu = complex(y[0], y[1])
            dd = complex(y[2], y[3])
            upp = (ll1 / (rho * rho) + 2.0 * eta / rho - 1.0) * uu
            dudt = dd * delta
            ddudt = upp * delta
            return np.array(
                [dudt.real, dudt.imag, ddudt.real, ddudt.imag], dtype=float
            )

        y0 = np.array([u.real, u.imag, du.real, du.imag], dtype=float)
        sol = solve_ivp(
            rhs,
            (0.0, 1.0),
            y0,
            method="RK45",
            rtol=rel_tol,
            atol=rel_tol * max(1.0, float(np.max(np.abs(y0)))),
        )
        if not sol.success:
            raise StepFailureError(
                f"integration {current} -> {target} failed: {sol.message}"
            )
        yf = sol.y[:, -1]
        u = complex(yf[0], yf[1])
        du = complex(yf[2], yf[3])
        current = target

    return OdeState(u, du, current)


def frobenius_regular_seed(
    eta, ell, rho0: complex = SEED_RHO, terms: int = _FROBENIUS_TERMS
) -> OdeState:
    """Unnormalized regular solution near the origin.

    ``u = rho**(ell+1) * sum_k c_k rho**k`` with ``c_0 = 1`` and the
    coefficient recurrence read off the differential equation.  The
    caller supplies the physical normalization (for F, the coefficient
    C) as a multiplicative factor.
    """
    eta = _as_complex(eta)
    ell = _as_complex(ell)
    rho0 = _as_complex(rho0)
    coeffs = [complex(1.0)]
    for k in range(1, terms):
        prev2 = coeffs[k - 2] if k >= 2 else 0j
        coeffs.append(
            (2.0 * eta * coeffs[k - 1] - prev2) / (k * (k + 2.0 * ell + 1.0))
        )
    series = 0j
    dseries = 0j
    for k in range(terms - 1, -1, -1):
        series = series * rho0 + coeffs[k]
    for k in range(terms - 1, 0, -1):
        dseries = dseries * rho0 + k * coeffs[k]
    base = cpow(rho0, ell + 1.0)
    u = base * series
    du = base * ((ell + 1.0) / rho0 * series + dseries)
    return OdeState(u, du, rho0)


def oracle_f(eta, ell, rhos, rel_tol: float = _DEFAULT_REL_TOL) -> dict:
    """Reference values of the regular solution at the points ``rhos``.

    Frobenius seed near the origin, continued outward; normalized by
    the production C coefficient (the only non-oracle ingredient; the
    regular direction is the dominant one outward, so the continuation
    is well conditioned).
    """
    targets = sorted(rhos, key=abs)
    c = coulomb_c(eta, ell)
    state = frobenius_regular_seed(eta, ell)
    out = {}
    for rho in targets:
        state = integrate_radial(
            CoulombParams(eta, ell, state.rho), state, [rho], rel_tol
        )
        out[rho] = c * state.u
    return out


def oracle_g(eta, ell, rhos, rel_tol: float = _DEFAULT_REL_TOL) -> dict:
    """Reference values of the irregular solution at the points ``rhos``.

    Seeded at the outermost point with the production G value and a
    derivative fixed by the Wronskian against the independently
    integrated regular solution (F' G - F G' = 1), then continued
    *inward*: that is the direction in which the irregular solution
    dominates, so contamination by the regular solution decays.
    Continuing G outward from the near field instead would amplify seed
    error by roughly (rho/rho0)**(2 ell+1).
    """
    targets = sorted(rhos, key=abs, reverse=True)
    rho_max = targets[0]
    fstate = frobenius_regular_seed(eta, ell)
    fstate = integrate_radial(CoulombParams(eta, ell, fstate.rho), fstate, [rho_max], rel_tol)
    c = coulomb_c(eta, ell)
    f_val, f_der = c * fstate.u, c * fstate.du
    g0 = coulomb_g(CoulombParams(eta, ell, rho_max)).value
    state = OdeState(g0, (f_der * g0 - 1.0) / f_val, rho_max)
    out = {rho_max: g0}
    for rho in targets[1:]:
        state = integrate_radial(
            CoulombParams(eta, ell, state.rho), state, [rho], rel_tol
        )
        out[rho] = state.u
    return out
