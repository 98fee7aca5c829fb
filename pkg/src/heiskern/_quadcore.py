"""Hot quadrature kernels, written in Cython pure-Python mode.

setup.py compiles this file into a C extension (``heiskern._quadcore``);
when the build is skipped or fails, the very same file runs under the
plain interpreter as the fallback backend. ``is_compiled()`` tells which
one is active. Everything here is scalar and allocation-light: adaptive
panel worklists live in caller-provided flat buffers, and status travels
in a small result buffer instead of exceptions on the hot paths.

Contents:
  * complex gamma (Lanczos approximation with reflection),
  * the Laplace-type product integral G(a)*Psi(a,c;u) over (0, inf),
  * the semi-infinite kernel integral
        int_0^inf x^(n-1) [G*Psi](a(x), n; 2 x s) e^(-x s) cos(x t) dx
    with a(x) = n/2 (Green / fundamental-solution case) or
    a(x) = n/2 - zeta/(2x) (resolvent case), s = |z-w|^2, t = theta.

All routines are pure functions of their arguments and safe for
concurrent callers.
"""

import cython
from array import array

if cython.compiled:
    from cython.cimports.libc.math import (exp, log, expm1, cos, sin, sqrt,
                                           hypot, atan2, floor, fabs, sinh,
                                           cosh, isfinite)
else:
    from math import (exp, log, expm1, cos, sin, sqrt, hypot, atan2, floor,
                      fabs, sinh, cosh, isfinite)

INF = cython.declare(cython.double, float("inf"))
PI = cython.declare(cython.double, 3.141592653589793238462643383280)
SQRT_TWO_PI = cython.declare(cython.double, 2.506628274631000502415765284811)

# 15-point Kronrod nodes on [-1, 1] (positive half; odd indices are the
# embedded 7-point Gauss abscissae, index 7 is the centre).
_XGK = array('d', [
    0.99145537112081263921, 0.94910791234275852453,
    0.86486442335976907279, 0.74153118559939443986,
    0.58608723546769113029, 0.40584515137739716691,
    0.20778495500789846760, 0.0,
])
_WGK = array('d', [
    0.02293532201052922496, 0.06309209262997855329,
    0.10479001032225018384, 0.14065325971552591875,
    0.16900472663926790283, 0.19035057806478540991,
    0.20443294007529889241, 0.20948214108472782801,
])
_WG = array('d', [
    0.12948496616886969327, 0.27970539148927666790,
    0.38183005050511894495, 0.41795918367346938776,
])

# Lanczos coefficients, g = 607/128, 15 terms (Godfrey's set; relative
# accuracy ~1e-15 on the right half-plane).
_LANCZOS_G = cython.declare(cython.double, 4.7421875)
_LANCZOS_C0 = cython.declare(cython.double, 0.99999999999999709182)
_LANCZOS = array('d', [
    57.156235665862923517, -59.597960355475491248,
    14.136097974741747174, -0.49191381609762019978,
    0.33994649984811888699e-4, 0.46523628927048575665e-4,
    -0.98374475304879564677e-4, 0.15808870322491248884e-3,
    -0.21026444172410488319e-3, 0.21743961811521264320e-3,
    -0.16431810653676389022e-3, 0.84418223983852743293e-4,
    -0.26190838401581408670e-4, 0.36899182659531622704e-5,
])


def is_compiled() -> bool:
    """True when running as the compiled extension."""
    return cython.compiled


@cython.cfunc
@cython.inline
def _exp_safe(x: cython.double) -> cython.double:
    # keep interpreted math.exp from raising OverflowError; compiled libm
    # saturates the same way
    if x > 709.0:
        return INF
    if x < -745.0:
        return 0.0
    return exp(x)


@cython.cfunc
@cython.inline
def _cexp(z: cython.doublecomplex) -> cython.doublecomplex:
    m: cython.double = _exp_safe(z.real)
    if m == 0.0:
        return complex(0.0, 0.0)
    if not isfinite(z.imag):
        return complex(INF, INF)
    return complex(m * cos(z.imag), m * sin(z.imag))


@cython.cfunc
@cython.inline
def _clog(z: cython.doublecomplex) -> cython.doublecomplex:
    h: cython.double = hypot(z.real, z.imag)
    if h == 0.0:
        return complex(-INF, 0.0)
    return complex(log(h), atan2(z.imag, z.real))


@cython.cfunc
@cython.inline
def _cabs(z: cython.doublecomplex) -> cython.double:
    return hypot(z.real, z.imag)


# ----------------------------------------------------------------------
# gamma
# ----------------------------------------------------------------------

@cython.cfunc
def _lanczos_sum(w: cython.doublecomplex) -> cython.doublecomplex:
    # w = z - 1; A(w) = c0 + sum_k c_k / (w + k)
    lc: cython.double[::1] = _LANCZOS
    s: cython.doublecomplex = complex(_LANCZOS_C0, 0.0)
    k: cython.int
    for k in range(14):
        s = s + lc[k] / (w + (k + 1.0))
    return s


@cython.cfunc
def _sinpi(z: cython.doublecomplex) -> cython.doublecomplex:
    # sin(pi z) with the argument reduced on the real axis so that
    # sin(pi n) is exactly 0 for integer n
    x: cython.double = z.real
    y: cython.double = z.imag
    r: cython.double = x - 2.0 * floor(0.5 * x)   # in [0, 2)
    sr: cython.double = sin(PI * r)
    cr: cython.double = cos(PI * r)
    if y == 0.0:
        return complex(sr, 0.0)
    return complex(sr * cosh(PI * y), cr * sinh(PI * y))


@cython.ccall
def gammac(z: cython.doublecomplex) -> complex:
    """Gamma for complex arguments (Lanczos + reflection).

    Raises ValueError on a real non-positive-integer pole and
    OverflowError when |Gamma(z)| exceeds double range.
    """
    re: cython.double = z.real
    if z.imag == 0.0 and re == floor(re) and re <= 0.0:
        raise ValueError(f"gamma pole at non-positive integer {re!r}")
    if re < 0.5:
        s: cython.doublecomplex = _sinpi(z)
        if s.real == 0.0 and s.imag == 0.0:
            raise ValueError(f"gamma pole at {complex(z)!r}")
        return PI / (s * gammac(complex(1.0 - z.real, -z.imag)))
    if z.imag == 0.0:
        # real axis: t^(x-1/2) through two half-powers keeps the error at
        # a few ulp (exp of the composed logarithm would cost eps * |log|)
        wr: cython.double = re - 1.0
        tr: cython.double = wr + (_LANCZOS_G + 0.5)
        ar: cython.double = _lanczos_sum(complex(wr, 0.0)).real
        hp: cython.double = tr ** (0.5 * (wr + 0.5))
        vr: cython.double = SQRT_TWO_PI * ar * hp * exp(-tr) * hp
        if not isfinite(vr):
            raise OverflowError(f"gamma overflow at {re!r}")
        return complex(vr, 0.0)
    w: cython.doublecomplex = z - 1.0
    t: cython.doublecomplex = w + (_LANCZOS_G + 0.5)
    lg: cython.doublecomplex = ((w + 0.5) * _clog(t) - t
                                + _clog(SQRT_TWO_PI * _lanczos_sum(w)))
    if lg.real > 709.78:
        raise OverflowError(f"gamma overflow at {complex(z)!r}")
    return complex(_cexp(lg))


# ----------------------------------------------------------------------
# product integral G(a) * Psi(a, c; u)
# ----------------------------------------------------------------------

@cython.cfunc
@cython.inline
def _gpsi_f(a: cython.doublecomplex, c: cython.double, u: cython.double,
            t: cython.double) -> cython.doublecomplex:
    # integrand exp(-a t - u/(e^t - 1) - c log(1 - e^-t)), in log form so
    # the t -> 0 boundary layer underflows cleanly to 0 (u > 0)
    if t <= 0.0:
        return complex(0.0, 0.0)
    w: cython.double = expm1(t)
    q: cython.double = -expm1(-t)
    ex_re: cython.double = -a.real * t - u / w - c * log(q)
    return _cexp(complex(ex_re, -a.imag * t))


@cython.cfunc
def _gpsi_panel(a: cython.doublecomplex, c: cython.double, u: cython.double,
                lo: cython.double, hi: cython.double,
                xg: cython.double[::1], wk: cython.double[::1],
                wg: cython.double[::1],
                res: cython.double[::1]) -> cython.void:
    # res[0..3] = value re, value im, |K15-G7| error, finite flag
    hw: cython.double = 0.5 * (hi - lo)
    ctr: cython.double = 0.5 * (hi + lo)
    fc: cython.doublecomplex = _gpsi_f(a, c, u, ctr)
    sk: cython.doublecomplex = wk[7] * fc
    sg: cython.doublecomplex = wg[3] * fc
    j: cython.int
    for j in range(7):
        dx: cython.double = hw * xg[j]
        fpair: cython.doublecomplex = (_gpsi_f(a, c, u, ctr - dx)
                                       + _gpsi_f(a, c, u, ctr + dx))
        sk = sk + wk[j] * fpair
        if j % 2 == 1:
            sg = sg + wg[j // 2] * fpair
    sk = sk * hw
    sg = sg * hw
    res[0] = sk.real
    res[1] = sk.imag
    res[2] = _cabs(sk - sg)
    res[3] = 1.0 if (isfinite(sk.real) and isfinite(sk.imag)) else 0.0


@cython.cfunc
def _gpsi_adaptive(a: cython.doublecomplex, c: cython.double,
                   u: cython.double, abs_tol: cython.double,
                   rel_tol: cython.double, max_panels: cython.int,
                   cap: cython.int, buf: cython.double[::1],
                   res: cython.double[::1], xg: cython.double[::1],
                   wk: cython.double[::1], wg: cython.double[::1]) -> cython.void:
    """Adaptive GK15 for the product integral over (0, inf).

    buf holds five columns of length cap (lo, hi, vre, vim, err);
    res[0..5] = value re, value im, error, evals, converged, finite.
    """
    pr: cython.double[::1] = res  # panel scratch reuses the result buffer tail
    ra: cython.double = a.real
    if ra < 1e-8:
        ra = 1e-8
    # truncation: tail of e^(-ra t) (1-e^-t)^(-c) beyond T is bounded by
    # e^(0.46 c - ra T)/ra since (1-e^-T)^(-c) <= e^(0.46 c) for T >= 1
    tcut: cython.double = (46.0 + 0.46 * c) / ra
    if tcut < 1.0:
        tcut = 1.0
    tail: cython.double = _exp_safe(0.46 * c - ra * tcut) / ra

    # geometric seed boundaries from the e^(-ra t) boundary-layer scale
    s: cython.double = 1.0 / (ra if ra > 1.0 else 1.0)
    if s > tcut:
        s = tcut
    n: cython.int = 0
    lo: cython.double = 0.0
    hi: cython.double = 0.125 * s
    used: cython.int = 0
    tot_re: cython.double = 0.0
    tot_im: cython.double = 0.0
    esum: cython.double = 0.0
    finite: cython.double = 1.0
    while lo < tcut and n < cap - 1:
        if hi > tcut * 0.75:
            hi = tcut
        _gpsi_panel(a, c, u, lo, hi, xg, wk, wg, pr)
        buf[n] = lo
        buf[cap + n] = hi
        buf[2 * cap + n] = pr[0]
        buf[3 * cap + n] = pr[1]
        buf[4 * cap + n] = pr[2]
        tot_re += pr[0]
        tot_im += pr[1]
        esum += pr[2]
        if pr[3] == 0.0:
            finite = 0.0
        n += 1
        used += 1
        lo = hi
        hi = 2.0 * hi
    converged: cython.double = 0.0
    imax: cython.int
    i: cython.int
    while finite == 1.0:
        thresh: cython.double = rel_tol * hypot(tot_re, tot_im)
        if abs_tol > thresh:
            thresh = abs_tol
        if esum + tail <= thresh:
            converged = 1.0
            break
        if used >= max_panels or n >= cap - 1:
            break
        imax = 0
        emax: cython.double = buf[4 * cap]
        for i in range(1, n):
            if buf[4 * cap + i] > emax:
                emax = buf[4 * cap + i]
                imax = i
        plo: cython.double = buf[imax]
        phi: cython.double = buf[cap + imax]
        mid: cython.double = 0.5 * (plo + phi)
        if mid <= plo or mid >= phi:
            break  # panel at rounding resolution
        tot_re -= buf[2 * cap + imax]
        tot_im -= buf[3 * cap + imax]
        esum -= buf[4 * cap + imax]
        _gpsi_panel(a, c, u, plo, mid, xg, wk, wg, pr)
        buf[imax] = plo
        buf[cap + imax] = mid
        buf[2 * cap + imax] = pr[0]
        buf[3 * cap + imax] = pr[1]
        buf[4 * cap + imax] = pr[2]
        tot_re += pr[0]
        tot_im += pr[1]
        esum += pr[2]
        if pr[3] == 0.0:
            finite = 0.0
        _gpsi_panel(a, c, u, mid, phi, xg, wk, wg, pr)
        buf[n] = mid
        buf[cap + n] = phi
        buf[2 * cap + n] = pr[0]
        buf[3 * cap + n] = pr[1]
        buf[4 * cap + n] = pr[2]
        tot_re += pr[0]
        tot_im += pr[1]
        esum += pr[2]
        if pr[3] == 0.0:
            finite = 0.0
        n += 1
        used += 2
    res[0] = tot_re
    res[1] = tot_im
    res[2] = esum + tail
    res[3] = 15.0 * used
    res[4] = converged
    res[5] = finite


@cython.ccall
def gamma_psi_integral(a: cython.doublecomplex, c: cython.double,
                       u: cython.double, abs_tol: cython.double,
                       rel_tol: cython.double,
                       max_panels: cython.int) -> tuple:
    """G(a)*Psi(a,c;u) by adaptive quadrature of the Laplace-type integral.

    Requires Re(a) > 0 and u > 0 (caller-checked). Returns
    (value, error_estimate, evaluations, converged, finite).
    """
    cap: cython.int = max_panels + 80
    buf: cython.double[::1] = array('d', bytes(8 * 5 * cap))
    res: cython.double[::1] = array('d', bytes(8 * 8))
    xg: cython.double[::1] = _XGK
    wk: cython.double[::1] = _WGK
    wg: cython.double[::1] = _WG
    _gpsi_adaptive(a, c, u, abs_tol, rel_tol, max_panels, cap, buf, res,
                   xg, wk, wg)
    return (complex(res[0], res[1]), res[2], int(res[3]),
            res[4] != 0.0, res[5] != 0.0)


# ----------------------------------------------------------------------
# semi-infinite kernel integral
# ----------------------------------------------------------------------

@cython.cfunc
def _kern_f(n: cython.int, zsq: cython.double, theta: cython.double,
            zeta: cython.doublecomplex, use_zeta: cython.bint,
            x: cython.double, inner_rel_tol: cython.double,
            inner_max_panels: cython.int, icap: cython.int,
            ibuf: cython.double[::1], ires: cython.double[::1],
            stats: cython.double[::1], xg: cython.double[::1],
            wk: cython.double[::1], wg: cython.double[::1],
            abs_scale: cython.double) -> cython.doublecomplex:
    # stats[0] += inner evals, stats[1] += inner failures, stats[2] &= finite
    if x <= 0.0:
        return complex(0.0, 0.0)
    a: cython.doublecomplex = complex(0.5 * n, 0.0)
    if use_zeta:
        a = a - zeta / (2.0 * x)
    xp: cython.double = 1.0
    k: cython.int
    for k in range(n - 1):
        xp *= x
    damp: cython.double = xp * _exp_safe(-x * zsq)
    # the damping weight is known before the inner integral runs, so deep
    # tail points may stop at a proportionally coarser absolute level
    inner_abs: cython.double = 1e-280
    if damp > 0.0 and abs_scale > 0.0:
        inner_abs = abs_scale / damp
    _gpsi_adaptive(a, 1.0 * n, 2.0 * x * zsq, inner_abs, inner_rel_tol,
                   inner_max_panels, icap, ibuf, ires, xg, wk, wg)
    stats[0] += ires[3]
    if ires[4] == 0.0:
        stats[1] += 1.0
    if ires[5] == 0.0:
        stats[2] = 0.0
    w: cython.double = damp * cos(x * theta)
    return complex(w * ires[0], w * ires[1])


@cython.cfunc
def _kern_panel(n: cython.int, zsq: cython.double, theta: cython.double,
                zeta: cython.doublecomplex, use_zeta: cython.bint,
                lo: cython.double, hi: cython.double,
                inner_rel_tol: cython.double, inner_max_panels: cython.int,
                icap: cython.int, ibuf: cython.double[::1],
                ires: cython.double[::1], stats: cython.double[::1],
                xg: cython.double[::1], wk: cython.double[::1],
                wg: cython.double[::1],
                res: cython.double[::1], abs_scale: cython.double) -> cython.void:
    hw: cython.double = 0.5 * (hi - lo)
    ctr: cython.double = 0.5 * (hi + lo)
    fc: cython.doublecomplex = _kern_f(n, zsq, theta, zeta, use_zeta, ctr,
                                       inner_rel_tol, inner_max_panels,
                                       icap, ibuf, ires, stats, xg, wk, wg,
                                       abs_scale)
    sk: cython.doublecomplex = wk[7] * fc
    sg: cython.doublecomplex = wg[3] * fc
    j: cython.int
    for j in range(7):
        dx: cython.double = hw * xg[j]
        f1: cython.doublecomplex = _kern_f(n, zsq, theta, zeta, use_zeta,
                                           ctr - dx, inner_rel_tol,
                                           inner_max_panels, icap, ibuf,
                                           ires, stats, xg, wk, wg, abs_scale)
        f2: cython.doublecomplex = _kern_f(n, zsq, theta, zeta, use_zeta,
                                           ctr + dx, inner_rel_tol,
                                           inner_max_panels, icap, ibuf,
                                           ires, stats, xg, wk, wg, abs_scale)
        fpair: cython.doublecomplex = f1 + f2
        sk = sk + wk[j] * fpair
        if j % 2 == 1:
            sg = sg + wg[j // 2] * fpair
    sk = sk * hw
    sg = sg * hw
    res[0] = sk.real
    res[1] = sk.imag
    res[2] = _cabs(sk - sg)
    res[3] = 1.0 if (isfinite(sk.real) and isfinite(sk.imag)) else 0.0


@cython.ccall
def kernel_x_integral(n: cython.int, zsq: cython.double,
                      theta: cython.double, zeta: cython.doublecomplex,
                      use_zeta: cython.bint, abs_tol: cython.double,
                      rel_tol: cython.double, max_panels: cython.int,
                      tail_eps: cython.double, inner_rel_tol: cython.double,
                      inner_max_panels: cython.int) -> tuple:
    """Semi-infinite x-integral shared by the Green, fundamental-solution
    and resolvent kernels (prefactors are applied by the caller).

    Truncation point comes from the fitted envelope C x^p e^(-zsq x);
    when theta != 0 the initial panels align to half-periods pi/|theta|.
    Returns (value, error_estimate, evaluations, converged, finite,
    inner_failures).
    """
    icap: cython.int = inner_max_panels + 80
    ibuf: cython.double[::1] = array('d', bytes(8 * 5 * icap))
    ires: cython.double[::1] = array('d', bytes(8 * 8))
    stats: cython.double[::1] = array('d', [0.0, 0.0, 1.0, 0.0])
    pr: cython.double[::1] = array('d', bytes(8 * 4))
    xg: cython.double[::1] = _XGK
    wk: cython.double[::1] = _WGK
    wg: cython.double[::1] = _WG

    lam: cython.double = zsq
    x0: cython.double = log(1.0 / tail_eps) / lam
    prelim_scale: cython.double = 1e-4 * abs_tol / (x0 if x0 > 1.0 else 1.0)

    # probe the envelope |f| <= C x^p e^(-lam x) on 8 points
    j: cython.int
    sx: cython.double = 0.0
    sy: cython.double = 0.0
    sxx: cython.double = 0.0
    sxy: cython.double = 0.0
    npos: cython.int = 0
    cmax: cython.double = 0.0
    for j in range(1, 9):
        xj: cython.double = x0 * j / 8.0
        fj: cython.doublecomplex = _kern_f(n, zsq, theta, zeta, use_zeta, xj,
                                           inner_rel_tol, inner_max_panels,
                                           icap, ibuf, ires, stats,
                                           xg, wk, wg, prelim_scale)
        mj: cython.double = _cabs(fj) * _exp_safe(lam * xj)
        if mj > 0.0 and isfinite(mj):
            lx: cython.double = log(xj)
            lm: cython.double = log(mj)
            sx += lx
            sy += lm
            sxx += lx * lx
            sxy += lx * lm
            npos += 1
    p: cython.double = 0.0
    csafe: cython.double = 0.0
    if npos >= 2:
        det: cython.double = npos * sxx - sx * sx
        if det > 0.0:
            p = (npos * sxy - sx * sy) / det
        if p < 0.0:
            p = 0.0
        if p > 8.0:
            p = 8.0
        # C from the probe maxima, with head-room for inter-probe wiggle
        for j in range(1, 9):
            xj2: cython.double = x0 * j / 8.0
            fj2: cython.doublecomplex = _kern_f(n, zsq, theta, zeta,
                                                use_zeta, xj2, inner_rel_tol,
                                                inner_max_panels, icap,
                                                ibuf, ires, stats,
                                                xg, wk, wg, prelim_scale)
            mj2: cython.double = (_cabs(fj2) * _exp_safe(lam * xj2)
                                  * _exp_safe(-p * log(xj2)))
            if mj2 > cmax:
                cmax = mj2
        csafe = 3.0 * cmax

    # truncation point: X = (p ln X - ln(eps lam / C)) / lam, iterated
    xcut: cython.double = x0
    if csafe > 0.0:
        lrhs: cython.double = log(tail_eps * lam / csafe)
        for j in range(2):
            xn: cython.double = (p * log(xcut if xcut > 2.0 else 2.0)
                                 - lrhs) / lam
            if xn > xcut:
                xcut = xn
    xcut *= 1.02
    abs_scale: cython.double = 1e-4 * abs_tol / (xcut if xcut > 1.0 else 1.0)
    tailb: cython.double = 0.0
    if csafe > 0.0:
        tailb = csafe * _exp_safe(p * log(xcut) - lam * xcut) / lam

    # initial boundaries: half-period panels for oscillatory integrands,
    # doubling in width along the exponential tail (alignment to multiples
    # of the current width preserves the alternating-panel cancellation);
    # geometric refinement toward 0 otherwise
    half: cython.double = 0.0
    if theta != 0.0:
        half = PI / fabs(theta)
    osc: cython.bint = theta != 0.0 and xcut / half >= 4.0
    g0: cython.double = (1.0 / lam if 1.0 / lam < xcut else xcut) / 8.0

    nseed: cython.int = 0
    lo: cython.double = 0.0
    w: cython.double = half if osc else g0
    dbl_at: cython.double = 6.0 / lam
    while lo < xcut and nseed <= 150000:
        lo += w
        nseed += 1
        if osc:
            if lo >= dbl_at and w < 64.0 * half:
                w *= 2.0
                dbl_at = lo + 6.0 / lam
        else:
            w *= 2.0
    if nseed > 150000:
        return (complex(0.0, 0.0), INF, int(stats[0]) + 120, False,
                True, int(stats[1]))
    cap: cython.int = nseed + max_panels + 8
    buf: cython.double[::1] = array('d', bytes(8 * 5 * cap))

    nn: cython.int = 0
    used: cython.int = 0
    tot_re: cython.double = 0.0
    tot_im: cython.double = 0.0
    esum: cython.double = 0.0
    finite: cython.double = 1.0
    hi: cython.double
    lo = 0.0
    w = half if osc else g0
    dbl_at = 6.0 / lam
    while lo < xcut and nn < cap - 1:
        hi = lo + w
        if hi >= xcut or xcut - hi < 0.5 * w:
            hi = xcut
        _kern_panel(n, zsq, theta, zeta, use_zeta, lo, hi, inner_rel_tol,
                    inner_max_panels, icap, ibuf, ires, stats,
                    xg, wk, wg, pr, abs_scale)
        buf[nn] = lo
        buf[cap + nn] = hi
        buf[2 * cap + nn] = pr[0]
        buf[3 * cap + nn] = pr[1]
        buf[4 * cap + nn] = pr[2]
        tot_re += pr[0]
        tot_im += pr[1]
        esum += pr[2]
        if pr[3] == 0.0:
            finite = 0.0
        nn += 1
        used += 1
        lo = hi
        if osc:
            if lo >= dbl_at and w < 64.0 * half:
                w *= 2.0
                dbl_at = lo + 6.0 / lam
        else:
            w *= 2.0

    converged: cython.double = 0.0
    imax: cython.int
    while finite == 1.0 and stats[2] == 1.0:
        thresh: cython.double = rel_tol * hypot(tot_re, tot_im)
        if abs_tol > thresh:
            thresh = abs_tol
        if esum + tailb <= thresh:
            converged = 1.0
            break
        if used >= max_panels or nn >= cap - 1:
            break
        imax = 0
        emax: cython.double = buf[4 * cap]
        for i in range(1, nn):
            if buf[4 * cap + i] > emax:
                emax = buf[4 * cap + i]
                imax = i
        plo: cython.double = buf[imax]
        phi: cython.double = buf[cap + imax]
        mid: cython.double = 0.5 * (plo + phi)
        if mid <= plo or mid >= phi:
            break
        tot_re -= buf[2 * cap + imax]
        tot_im -= buf[3 * cap + imax]
        esum -= buf[4 * cap + imax]
        _kern_panel(n, zsq, theta, zeta, use_zeta, plo, mid, inner_rel_tol,
                    inner_max_panels, icap, ibuf, ires, stats,
                    xg, wk, wg, pr, abs_scale)
        buf[imax] = plo
        buf[cap + imax] = mid
        buf[2 * cap + imax] = pr[0]
        buf[3 * cap + imax] = pr[1]
        buf[4 * cap + imax] = pr[2]
        tot_re += pr[0]
        tot_im += pr[1]
        esum += pr[2]
        if pr[3] == 0.0:
            finite = 0.0
        _kern_panel(n, zsq, theta, zeta, use_zeta, mid, phi, inner_rel_tol,
                    inner_max_panels, icap, ibuf, ires, stats,
                    xg, wk, wg, pr, abs_scale)
        buf[nn] = mid
        buf[cap + nn] = phi
        buf[2 * cap + nn] = pr[0]
        buf[3 * cap + nn] = pr[1]
        buf[4 * cap + nn] = pr[2]
        tot_re += pr[0]
        tot_im += pr[1]
        esum += pr[2]
        if pr[3] == 0.0:
            finite = 0.0
        nn += 1
        used += 2

    inner_failures: cython.int = cython.cast(cython.int, stats[1])
    if inner_failures > 0 or stats[2] == 0.0:
        converged = 0.0
    if stats[2] == 0.0:
        finite = 0.0
    evals: cython.int = cython.cast(cython.int, stats[0]) + 15 * used + 16
    return (complex(tot_re, tot_im), esum + tailb, evals, converged != 0.0,
            finite != 0.0, inner_failures)
