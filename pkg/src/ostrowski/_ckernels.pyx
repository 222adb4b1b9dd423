# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True, initializedcheck=False
"""Compiled hot loops; a drop-in replacement for ``_pykernels``.

Family codes, flag bits and return layouts are identical to the pure-Python
module.  Only family-defined integrands run here; arbitrary Python callables
always go through ``_pykernels.simpson``.
"""

import numpy as np

from libc.math cimport pow as c_pow, exp as c_exp, log as c_log, fabs, isfinite, copysign, sqrt, INFINITY, NAN

cdef enum:
    POLY = 0
    POW_S = 1
    BRECKNER = 2
    LN = 3
    EXP = 4
    CPOW = 5

cdef enum:
    FLAG_INSET_A = 1
    FLAG_INSET_B = 2
    FLAG_DEPTH = 4
    FLAG_NONFINITE = 8

cdef enum:
    MIN_DEPTH = 2

cdef double INSET = 1e-12


cdef inline double _pow(double t, double e) noexcept nogil:
    if t == 0.0:
        if e > 0.0:
            return 0.0
        if e == 0.0:
            return 1.0
        return INFINITY
    # exact and much cheaper than libm pow for the exponents the grids use
    if e == 1.0:
        return t
    if e == 2.0:
        return t * t
    if e == 3.0:
        return t * t * t
    if e == 0.5 and t > 0.0:
        return sqrt(t)
    return c_pow(t, e)


cdef double fam(int code, const double* p, int np_, int k, double t) noexcept nogil:
    cdef double acc, ff, s, u, v, w, c
    cdef int i
    if code == POLY:
        acc = 0.0
        i = np_ - 1
        while i >= k:
            if k == 0:
                ff = 1.0
            elif k == 1:
                ff = <double>i
            else:
                ff = <double>(i * (i - 1))
            acc = acc * t + p[i] * ff
            i -= 1
        return acc
    if code == EXP:
        return c_exp(t)
    if code == LN:
        if t < 0.0:
            return NAN
        if k == 0:
            if t == 0.0:
                return -INFINITY
            return c_log(t)
        if t == 0.0:
            return INFINITY if k == 1 else -INFINITY
        if k == 1:
            return 1.0 / t
        return -1.0 / (t * t)
    if t < 0.0:
        return NAN
    if code == POW_S:
        s = p[0]
        if k == 0:
            return _pow(t, s)
        if k == 1:
            if t == 0.0:
                return 1.0 if s == 1.0 else INFINITY
            return s * _pow(t, s - 1.0)
        if t == 0.0:
            return 0.0 if s == 1.0 else -INFINITY
        return s * (s - 1.0) * _pow(t, s - 2.0)
    if code == BRECKNER:
        u = p[0]
        v = p[1]
        w = p[2]
        s = p[3]
        if k == 0:
            if t == 0.0:
                return u
            return v * _pow(t, s) + w
        if t == 0.0:
            if v == 0.0:
                return 0.0
            if k == 1:
                return v if s == 1.0 else copysign(INFINITY, v)
            return 0.0 if s == 1.0 else -copysign(INFINITY, v)
        if k == 1:
            return v * s * _pow(t, s - 1.0)
        return v * s * (s - 1.0) * _pow(t, s - 2.0)
    if code == CPOW:
        c = p[0]
        s = p[1]
        if k == 0:
            return c * _pow(t, s + 2.0)
        if k == 1:
            return c * (s + 2.0) * _pow(t, s + 1.0)
        return c * (s + 2.0) * (s + 1.0) * _pow(t, s)
    return NAN


cdef struct Integrand:
    int code
    const double* p
    int np_
    int k
    int absq
    double q
    double e1
    double e2
    double alpha
    double beta


cdef struct Stats:
    int flags
    double err
    long nevals
    int max_depth


cdef inline double g_abs(const Integrand* g, double d) noexcept nogil:
    if g.absq:
        d = fabs(d)
        if g.q != 1.0 and d == d:
            d = _pow(d, g.q)
    return d


cdef double integrand(const Integrand* g, double t) noexcept nogil:
    cdef double w = 1.0
    cdef double d
    if g.e1 != 0.0:
        w = _pow(t, g.e1)
    if g.e2 != 0.0:
        w *= _pow(1.0 - t, g.e2)
    if g.k < 0:
        return w
    d = fam(g.code, g.p, g.np_, g.k, g.alpha * t + g.beta)
    return w * g_abs(g, d)


cdef double adapt(const Integrand* g, double a, double b, double fa, double fm, double fb,
                  double whole, double tol, int depth, Stats* st) noexcept nogil:
    cdef double m = 0.5 * (a + b)
    cdef double lm = 0.5 * (a + m)
    cdef double rm = 0.5 * (m + b)
    cdef double flm = integrand(g, lm)
    cdef double frm = integrand(g, rm)
    cdef double left, right, delta, lv, rv
    st.nevals += 2
    if not (isfinite(flm) and isfinite(frm)):
        st.flags |= FLAG_NONFINITE
        return NAN
    left = (m - a) / 6.0 * (fa + 4.0 * flm + fm)
    right = (b - m) / 6.0 * (fm + 4.0 * frm + fb)
    delta = left + right - whole
    if depth >= st.max_depth:
        st.flags |= FLAG_DEPTH
        st.err += fabs(delta) / 15.0
        return left + right + delta / 15.0
    if depth >= MIN_DEPTH and fabs(delta) <= 15.0 * tol:
        st.err += fabs(delta) / 15.0
        return left + right + delta / 15.0
    lv = adapt(g, a, m, fa, flm, fm, left, 0.5 * tol, depth + 1, st)
    if st.flags & FLAG_NONFINITE:
        return NAN
    rv = adapt(g, m, b, fm, frm, fb, right, 0.5 * tol, depth + 1, st)
    return lv + rv


def family_value(int code, params, int k, double t):
    """k-th derivative of a family member at t (no domain checks)."""
    cdef double[::1] pv = np.ascontiguousarray(params, dtype=np.float64)
    cdef double dummy = 0.0
    return fam(code, &pv[0] if pv.shape[0] > 0 else &dummy, <int>pv.shape[0], k, t)


def simpson_family(int code, params, int k, bint absq, double q, double e1, double e2,
                   double alpha, double beta, double a, double b, double tol, int max_depth):
    """Integrate ``t**e1 * (1-t)**e2 * h(alpha*t + beta)`` over [a, b]."""
    cdef double[::1] pv = np.ascontiguousarray(params, dtype=np.float64)
    cdef double dummy = 0.0
    cdef Integrand g
    cdef Stats st
    cdef double width = b - a
    cdef double fa, fb, fm, whole, value
    g.code = code
    g.p = &pv[0] if pv.shape[0] > 0 else &dummy
    g.np_ = <int>pv.shape[0]
    g.k = k
    g.absq = absq
    g.q = q
    g.e1 = e1
    g.e2 = e2
    g.alpha = alpha
    g.beta = beta
    st.flags = 0
    st.err = 0.0
    st.nevals = 3
    st.max_depth = max_depth
    with nogil:
        fa = integrand(&g, a)
        if not isfinite(fa):
            a = a + INSET * width
            fa = integrand(&g, a)
            st.flags |= FLAG_INSET_A
        fb = integrand(&g, b)
        if not isfinite(fb):
            b = b - INSET * width
            fb = integrand(&g, b)
            st.flags |= FLAG_INSET_B
        fm = integrand(&g, 0.5 * (a + b))
        if not (isfinite(fa) and isfinite(fb) and isfinite(fm)):
            st.flags |= FLAG_NONFINITE
            value = NAN
            st.err = INFINITY
        else:
            whole = (b - a) / 6.0 * (fa + 4.0 * fm + fb)
            value = adapt(&g, a, b, fa, fm, fb, whole, tol, 0, &st)
    return value, st.err, st.flags, st.nevals


def lattice_extrema(int code, params, int k, bint absq, double q, double s, xs, ts):
    """Extrema of g(t*x + (1-t)*y) - t**s g(x) - (1-t)**s g(y) over a lattice."""
    cdef double[::1] pv = np.ascontiguousarray(params, dtype=np.float64)
    cdef double[::1] xv = np.ascontiguousarray(xs, dtype=np.float64)
    cdef double[::1] tv = np.ascontiguousarray(ts, dtype=np.float64)
    cdef double dummy = 0.0
    cdef const double* pp = &pv[0] if pv.shape[0] > 0 else &dummy
    cdef int npar = <int>pv.shape[0]
    cdef Py_ssize_t n = xv.shape[0]
    cdef Py_ssize_t nt = tv.shape[0]
    cdef double[::1] gx = np.empty(n, dtype=np.float64)
    cdef double[::1] wt = np.empty(nt, dtype=np.float64)
    cdef double[::1] wu = np.empty(nt, dtype=np.float64)
    cdef Py_ssize_t i, j, l
    cdef Py_ssize_t i1 = -1, j1 = -1, l1 = -1, i2 = -1, j2 = -1, l2 = -1
    cdef double dmax = -INFINITY, dmin = INFINITY, gmax = 0.0
    cdef double t, z, gz, d
    cdef bint ok = True
    with nogil:
        for l in range(nt):
            t = tv[l]
            wt[l] = 0.0 if t == 0.0 else c_pow(fabs(t), s)
            wu[l] = 0.0 if 1.0 - t == 0.0 else c_pow(fabs(1.0 - t), s)
        for i in range(n):
            d = fam(code, pp, npar, k, xv[i])
            if absq:
                d = fabs(d)
                if q != 1.0 and d == d:
                    d = _pow(d, q)
            gx[i] = d
            if not isfinite(d):
                ok = False
            elif fabs(d) > gmax:
                gmax = fabs(d)
        if ok:
            for i in range(n):
                for j in range(n):
                    for l in range(nt):
                        t = tv[l]
                        z = t * xv[i] + (1.0 - t) * xv[j]
                        gz = fam(code, pp, npar, k, z)
                        if absq:
                            gz = fabs(gz)
                            if q != 1.0 and gz == gz:
                                gz = _pow(gz, q)
                        if not isfinite(gz):
                            ok = False
                            break
                        if fabs(gz) > gmax:
                            gmax = fabs(gz)
                        d = gz - wt[l] * gx[i] - wu[l] * gx[j]
                        if d > dmax:
                            dmax = d
                            i1 = i
                            j1 = j
                            l1 = l
                        if d < dmin:
                            dmin = d
                            i2 = i
                            j2 = j
                            l2 = l
                    if not ok:
                        break
                if not ok:
                    break
    if not ok:
        return (NAN, -1, -1, -1, NAN, -1, -1, -1, INFINITY, False)
    return (dmax, i1, j1, l1, dmin, i2, j2, l2, gmax, True)


def scan_abs(int code, params, int k, double a, double b, int n):
    """Grid maximum of |k-th derivative| on n uniform points over [a, b]."""
    cdef double[::1] pv = np.ascontiguousarray(params, dtype=np.float64)
    cdef double dummy = 0.0
    cdef const double* pp = &pv[0] if pv.shape[0] > 0 else &dummy
    cdef int npar = <int>pv.shape[0]
    cdef double step = (b - a) / (n - 1)
    cdef double best = -1.0, v, t
    cdef Py_ssize_t i, idx = 0
    with nogil:
        for i in range(n):
            t = b if i == n - 1 else a + i * step
            v = fabs(fam(code, pp, npar, k, t))
            if not isfinite(v):
                best = INFINITY
                idx = i
                break
            if v > best:
                best = v
                idx = i
    return best, idx
