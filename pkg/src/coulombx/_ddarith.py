"""Double-double ("compensated") arithmetic for the series hot path.

A value is carried as an unevaluated sum of two floats (hi, lo), giving
roughly 32 significant digits.  Complex quantities are 4-tuples
(re_hi, re_lo, im_hi, im_lo).  Only the handful of operations needed by
the power-series recurrences is provided; error-free transformations
are Knuth two-sum and Dekker two-product (no FMA available from pure
Python).
"""

from __future__ import annotations

_SPLITTER = 134217729.0  # 2**27 + 1


def two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    bb = s - a
    return s, (a - (s - bb)) + (b - bb)


def quick_two_sum(a: float, b: float) -> tuple[float, float]:
    s = a + b
    return s, b - (s - a)


def two_prod(a: float, b: float) -> tuple[float, float]:
    p = a * b
    t = _SPLITTER * a
    ah = t - (t - a)
    al = a - ah
    t = _SPLITTER * b
    bh = t - (t - b)
    bl = b - bh
    return p, ((ah * bh - p) + ah * bl + al * bh) + al * bl


def dd_add(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    s, e = two_sum(xh, yh)
    e += xl + yl
    return quick_two_sum(s, e)


def dd_mul(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    p, e = two_prod(xh, yh)
    e += xh * yl + xl * yh
    return quick_two_sum(p, e)


def dd_div(xh: float, xl: float, yh: float, yl: float) -> tuple[float, float]:
    q1 = xh / yh
    ph, pl = dd_mul(q1, 0.0, yh, yl)
    rh, rl = dd_add(xh, xl, -ph, -pl)
    q2 = (rh + rl) / yh
    return quick_two_sum(q1, q2)


def cdd_from(z: complex):
    return (z.real, 0.0, z.imag, 0.0)


def cdd_to_complex(x) -> complex:
    return complex(x[0] + x[1], x[2] + x[3])


def cdd_add(x, y):
    rh, rl = dd_add(x[0], x[1], y[0], y[1])
    ih, il = dd_add(x[2], x[3], y[2], y[3])
    return (rh, rl, ih, il)


def cdd_mul(x, y):
    # (xr + i xi)(yr + i yi)
    ah, al = dd_mul(x[0], x[1], y[0], y[1])
    bh, bl = dd_mul(x[2], x[3], y[2], y[3])
    rh, rl = dd_add(ah, al, -bh, -bl)
    ch, cl = dd_mul(x[0], x[1], y[2], y[3])
    dh, dl = dd_mul(x[2], x[3], y[0], y[1])
    ih, il = dd_add(ch, cl, dh, dl)
    return (rh, rl, ih, il)


def cdd_div_real(x, yh: float, yl: float):
    rh, rl = dd_div(x[0], x[1], yh, yl)
    ih, il = dd_div(x[2], x[3], yh, yl)
    return (rh, rl, ih, il)


def cdd_div(x, y):
    # multiply by the conjugate, divide by |y|^2
    conj = (y[0], y[1], -y[2], -y[3])
    num = cdd_mul(x, conj)
    ah, al = dd_mul(y[0], y[1], y[0], y[1])
    bh, bl = dd_mul(y[2], y[3], y[2], y[3])
    dh, dl = dd_add(ah, al, bh, bl)
    return cdd_div_real(num, dh, dl)


def cdd_abs_estimate(x) -> float:
    return abs(complex(x[0], x[2]))
