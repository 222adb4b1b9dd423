"""Pure-Python implementation of the numerical hot loops.

This is the fallback used when the compiled ``_ckernels`` extension is not
available (or when ``OSTROWSKI_PURE_PYTHON=1``).  Both modules expose the same
functions with the same argument order and return layout; see ``_backend``.

Function families are addressed by integer code plus a flat parameter tuple:

    0 polynomial   (c0, c1, ..., cn)      ascending coefficients
    1 pow_s        (s,)                   t**s
    2 breckner     (u, v, w, s)           u at 0, v*t**s + w for t > 0
    3 ln           ()
    4 exp          ()
    5 cpow         (c, s)                 c*t**(s+2)

Non-finite values are returned as inf/nan rather than raised; the callers in
the public modules turn them into exceptions.
"""

from __future__ import annotations

import math

import numpy as np

POLY, POW_S, BRECKNER, LN, EXP, CPOW = range(6)

FLAG_INSET_A = 1
FLAG_INSET_B = 2
FLAG_DEPTH = 4
FLAG_NONFINITE = 8

MIN_DEPTH = 2
INSET = 1e-12

_INF = math.inf
_NAN = math.nan


def _pow(t: float, e: float) -> float:
    # t >= 0 is guaranteed by the callers
    if t == 0.0:
        if e > 0.0:
            return 0.0
        if e == 0.0:
            return 1.0
        return _INF
    return math.pow(t, e)


def family_value(code: int, params, k: int, t: float) -> float:
    """Value of the k-th derivative (k in 0, 1, 2) of a family member at t."""
    if code == POLY:
        acc = 0.0
        n = len(params)
        for i in range(n - 1, k - 1, -1):
            if k == 0:
                ff = 1.0
            elif k == 1:
                ff = float(i)
            else:
                ff = float(i * (i - 1))
            acc = acc * t + params[i] * ff
        return acc
    if code == EXP:
        try:
            return math.exp(t)
        except OverflowError:
            return _INF
    if code == LN:
        if t < 0.0:
            return _NAN
        if k == 0:
            return -_INF if t == 0.0 else math.log(t)
        if t == 0.0:
            return _INF if k == 1 else -_INF
        return 1.0 / t if k == 1 else -1.0 / (t * t)
    if t < 0.0:
        return _NAN
    if code == POW_S:
        s = params[0]
        if k == 0:
            return _pow(t, s)
        if k == 1:
            if t == 0.0:
                return 1.0 if s == 1.0 else _INF
            return s * _pow(t, s - 1.0)
        if t == 0.0:
            return 0.0 if s == 1.0 else -_INF
        return s * (s - 1.0) * _pow(t, s - 2.0)
    if code == BRECKNER:
        u, v, w, s = params
        if k == 0:
            return u if t == 0.0 else v * _pow(t, s) + w
        if t == 0.0:
            if v == 0.0:
                return 0.0
            if k == 1:
                return v if s == 1.0 else math.copysign(_INF, v)
            return 0.0 if s == 1.0 else -math.copysign(_INF, v)
        if k == 1:
            return v * s * _pow(t, s - 1.0)
        return v * s * (s - 1.0) * _pow(t, s - 2.0)
    if code == CPOW:
        c, s = params
        if k == 0:
            return c * _pow(t, s + 2.0)
        if k == 1:
            return c * (s + 2.0) * _pow(t, s + 1.0)
        return c * (s + 2.0) * (s + 1.0) * _pow(t, s)
    raise ValueError(f"unknown family code {code}")


def family_array(code: int, params, k: int, t: np.ndarray) -> np.ndarray:
    """Vectorised ``family_value`` over a float64 array."""
    t = np.asarray(t, dtype=np.float64)
    with np.errstate(all="ignore"):
        if code == POLY:
            acc = np.zeros_like(t)
            for i in range(len(params) - 1, k - 1, -1):
                ff = 1.0 if k == 0 else float(i) if k == 1 else float(i * (i - 1))
                acc = acc * t + params[i] * ff
            return acc
        if code == EXP:
            return np.exp(t)
        if code == LN:
            if k == 0:
                out = np.log(t)
            elif k == 1:
                out = 1.0 / t
            else:
                out = -1.0 / (t * t)
            return np.where(t < 0.0, np.nan, out)
        neg = t < 0.0
        tc = np.where(neg, 1.0, t)
        zero = tc == 0.0
        tz = np.where(zero, 1.0, tc)
        if code == POW_S:
            s = params[0]
            if k == 0:
                out = np.where(zero, 0.0, tz**s)
            elif k == 1:
                out = np.where(zero, 1.0 if s == 1.0 else np.inf, s * tz ** (s - 1.0))
            else:
                out = np.where(zero, 0.0 if s == 1.0 else -np.inf, s * (s - 1.0) * tz ** (s - 2.0))
        elif code == BRECKNER:
            u, v, w, s = params
            if k == 0:
                out = np.where(zero, u, v * tz**s + w)
            else:
                if v == 0.0:
                    at0 = 0.0
                elif k == 1:
                    at0 = v if s == 1.0 else math.copysign(np.inf, v)
                else:
                    at0 = 0.0 if s == 1.0 else -math.copysign(np.inf, v)
                body = v * s * tz ** (s - 1.0) if k == 1 else v * s * (s - 1.0) * tz ** (s - 2.0)
                out = np.where(zero, at0, body)
        elif code == CPOW:
            c, s = params
            if k == 0:
                out = np.where(zero, 0.0, c * tz ** (s + 2.0))
            elif k == 1:
                out = np.where(zero, 0.0, c * (s + 2.0) * tz ** (s + 1.0))
            else:
                out = np.where(zero, 0.0, c * (s + 2.0) * (s + 1.0) * tz**s)
        else:
            raise ValueError(f"unknown family code {code}")
        return np.where(neg, np.nan, out)


def _integrand(code, params, k, absq, q, e1, e2, alpha, beta):
    def g(t: float) -> float:
        w = 1.0
        if e1 != 0.0:
            w = _pow(t, e1)
        if e2 != 0.0:
            w *= _pow(1.0 - t, e2)
        if k < 0:
            return w
        d = family_value(code, params, k, alpha * t + beta)
        if absq:
            d = abs(d)
            if q != 1.0:
                d = _pow(d, q) if d == d else d
        return w * d

    return g


def simpson(f, a: float, b: float, tol: float, max_depth: int):
    """Adaptive Simpson on an arbitrary Python callable.

    Returns ``(value, error_estimate, flags, evaluations)``.  A non-finite
    endpoint value moves that endpoint inward by ``INSET*(b-a)``; a non-finite
    interior value aborts with ``FLAG_NONFINITE`` set.
    """
    flags = 0
    width = b - a
    fa = f(a)
    if not math.isfinite(fa):
        a = a + INSET * width
        fa = f(a)
        flags |= FLAG_INSET_A
    fb = f(b)
    if not math.isfinite(fb):
        b = b - INSET * width
        fb = f(b)
        flags |= FLAG_INSET_B
    m = 0.5 * (a + b)
    fm = f(m)
    nevals = 3
    if not (math.isfinite(fa) and math.isfinite(fb) and math.isfinite(fm)):
        return _NAN, _INF, flags | FLAG_NONFINITE, nevals

    state = [flags, 0.0, nevals]

    def adapt(a, b, fa, fm, fb, whole, tol, depth):
        m = 0.5 * (a + b)
        lm = 0.5 * (a + m)
        rm = 0.5 * (m + b)
        flm = f(lm)
        frm = f(rm)
        state[2] += 2
        if not (math.isfinite(flm) and math.isfinite(frm)):
            state[0] |= FLAG_NONFINITE
            return _NAN
        left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
        right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
        delta = left + right - whole
        if depth >= max_depth:
            state[0] |= FLAG_DEPTH
            state[1] += abs(delta) / 15.0
            return left + right + delta / 15.0
        if depth >= MIN_DEPTH and abs(delta) <= 15.0 * tol:
            state[1] += abs(delta) / 15.0
            return left + right + delta / 15.0
        lv = adapt(a, m, fa, flm, fm, left, 0.5 * tol, depth + 1)
        if state[0] & FLAG_NONFINITE:
            return _NAN
        rv = adapt(m, b, fm, frm, fb, right, 0.5 * tol, depth + 1)
        return lv + rv

    whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
    value = adapt(a, b, fa, fm, fb, whole, tol, 0)
    return value, state[1], state[0], state[2]


def simpson_family(code, params, k, absq, q, e1, e2, alpha, beta, a, b, tol, max_depth):
    """Integrate ``t**e1 * (1-t)**e2 * h(alpha*t + beta)`` over [a, b].

    ``h`` is the k-th derivative of the family member (``k < 0`` means the
    constant 1); with ``absq`` set it is replaced by ``|h|**q``.
    """
    g = _integrand(code, tuple(params), k, absq, q, e1, e2, alpha, beta)
    return simpson(g, a, b, tol, max_depth)


def _g_array(code, params, k, absq, q, t):
    d = family_array(code, params, k, t)
    if absq:
        with np.errstate(all="ignore"):
            d = np.abs(d)
            if q != 1.0:
                d = d**q
    return d


def lattice_extrema(code, params, k, absq, q, s, xs, ts):
    """Extrema of g(t*x + (1-t)*y) - t**s g(x) - (1-t)**s g(y) over a lattice.

    ``g`` is the k-th derivative of the family member, optionally as ``|.|**q``.
    Returns ``(dmax, imax, jmax, lmax, dmin, imin, jmin, lmin, gmax_abs, ok)``
    where indices refer to (x, y, t) and ``ok`` is False if any sample was
    non-finite.
    """
    xs = np.asarray(xs, dtype=np.float64)
    ts = np.asarray(ts, dtype=np.float64)
    gx = _g_array(code, tuple(params), k, absq, q, xs)
    z = ts[None, None, :] * xs[:, None, None] + (1.0 - ts[None, None, :]) * xs[None, :, None]
    gz = _g_array(code, tuple(params), k, absq, q, z)
    return _extrema(gx, gz, ts, s)


def lattice_extrema_values(gx, gz, ts, s):
    """Same as ``lattice_extrema`` with g already sampled.

    ``gx[i]`` is g at the i-th node and ``gz[i, j, l]`` is g at
    ``ts[l]*x[i] + (1-ts[l])*x[j]``.
    """
    return _extrema(np.asarray(gx, dtype=np.float64), np.asarray(gz, dtype=np.float64),
                    np.asarray(ts, dtype=np.float64), s)


def _extrema(gx, gz, ts, s):
    n, nt = gx.shape[0], ts.shape[0]
    if not (np.all(np.isfinite(gx)) and np.all(np.isfinite(gz))):
        return (_NAN, -1, -1, -1, _NAN, -1, -1, -1, _INF, False)
    with np.errstate(all="ignore"):
        wt = np.where(ts == 0.0, 0.0, np.abs(ts) ** s)
        one_minus = 1.0 - ts
        wu = np.where(one_minus == 0.0, 0.0, np.abs(one_minus) ** s)
    d = gz - wt[None, None, :] * gx[:, None, None] - wu[None, None, :] * gx[None, :, None]
    imax = int(np.argmax(d))
    imin = int(np.argmin(d))
    i1, j1, l1 = np.unravel_index(imax, (n, n, nt))
    i2, j2, l2 = np.unravel_index(imin, (n, n, nt))
    gmax = max(float(np.max(np.abs(gx))), float(np.max(np.abs(gz))))
    return (float(d.flat[imax]), int(i1), int(j1), int(l1),
            float(d.flat[imin]), int(i2), int(j2), int(l2), gmax, True)


def scan_abs(code, params, k, a, b, n):
    """Grid maximum of |k-th derivative| on n uniform points over [a, b].

    Returns ``(max_value, index)``; ``max_value`` is inf if any sample is not
    finite, with ``index`` pointing at the first such sample.
    """
    t = np.linspace(a, b, n)
    v = np.abs(family_array(code, tuple(params), k, t))
    bad = ~np.isfinite(v)
    if bad.any():
        return _INF, int(np.argmax(bad))
    idx = int(np.argmax(v))
    return float(v[idx]), idx
