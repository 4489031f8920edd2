# cython: language_level=3, boundscheck=False, wraparound=False, cdivision=True
"""Compiled twins of the kernels in ``_pykernels``.

Keep these in lockstep with the pure-Python versions: same loop order, same
truncation rules, same return tuples.
"""

from libc.math cimport exp, log, cos, sin, cosh, sqrt, fabs, asinh, pow

BACKEND = "cython"

cdef double _C2 = 1.0 / 5.0, _C3 = 3.0 / 10.0, _C4 = 4.0 / 5.0, _C5 = 8.0 / 9.0
cdef double _A21 = 1.0 / 5.0
cdef double _A31 = 3.0 / 40.0, _A32 = 9.0 / 40.0
cdef double _A41 = 44.0 / 45.0, _A42 = -56.0 / 15.0, _A43 = 32.0 / 9.0
cdef double _A51 = 19372.0 / 6561.0, _A52 = -25360.0 / 2187.0
cdef double _A53 = 64448.0 / 6561.0, _A54 = -212.0 / 729.0
cdef double _A61 = 9017.0 / 3168.0, _A62 = -355.0 / 33.0, _A63 = 46732.0 / 5247.0
cdef double _A64 = 49.0 / 176.0, _A65 = -5103.0 / 18656.0
cdef double _B1 = 35.0 / 384.0, _B3 = 500.0 / 1113.0, _B4 = 125.0 / 192.0
cdef double _B5 = -2187.0 / 6784.0, _B6 = 11.0 / 84.0
cdef double _E1 = 71.0 / 57600.0, _E3 = -71.0 / 16695.0, _E4 = 71.0 / 1920.0
cdef double _E5 = -17253.0 / 339200.0, _E6 = 22.0 / 525.0, _E7 = -1.0 / 40.0


def zeta_em(double sr, double si, long nterms, bern):
    cdef double acc_r = 0.0, acc_i = 0.0
    cdef double ln_n, mag, ph, pr, pi_, nr, ni, dr, di, den
    cdef double inv_n, inv_n2, tr, ti, b, a1r, a2r, mr, mi
    cdef long n
    cdef Py_ssize_t j, nb
    cdef double[32] bc

    nb = len(bern)
    if nb > 32:
        raise ValueError("at most 32 Bernoulli terms")
    for j in range(nb):
        bc[j] = bern[j]

    with nogil:
        for n in range(nterms - 1, 0, -1):
            ln_n = log(<double>n)
            mag = exp(-sr * ln_n)
            ph = si * ln_n
            acc_r += mag * cos(ph)
            acc_i -= mag * sin(ph)

    ln_n = log(<double>nterms)
    mag = exp(-sr * ln_n)
    ph = si * ln_n
    pr = mag * cos(ph)
    pi_ = -mag * sin(ph)
    acc_r += 0.5 * pr
    acc_i += 0.5 * pi_

    nr = nterms * pr
    ni = nterms * pi_
    dr = sr - 1.0
    di = si
    den = dr * dr + di * di
    acc_r += (nr * dr + ni * di) / den
    acc_i += (ni * dr - nr * di) / den

    inv_n = 1.0 / nterms
    inv_n2 = inv_n * inv_n
    tr = (sr * pr - si * pi_) * inv_n
    ti = (sr * pi_ + si * pr) * inv_n
    for j in range(nb):
        b = bc[j]
        acc_r += b * tr
        acc_i += b * ti
        a1r = sr + 2.0 * j + 1.0
        a2r = sr + 2.0 * j + 2.0
        mr = a1r * a2r - si * si
        mi = si * (a1r + a2r)
        nr = (tr * mr - ti * mi) * inv_n2
        ni = (tr * mi + ti * mr) * inv_n2
        tr = nr
        ti = ni
    return acc_r, acc_i


def eta_borwein(double sr, double si, long n):
    cdef list d = [0.0] * (n + 1)
    cdef double term = 1.0, total = 1.0, dn, acc_r = 0.0, acc_i = 0.0
    cdef double ln_k, mag, ph, dk
    cdef long i, k
    d[0] = total
    for i in range(n):
        term *= 4.0 * (n + i) * (n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0))
        total += term
        d[i + 1] = total
    dn = d[n]
    for k in range(n - 1, -1, -1):
        ln_k = log(k + 1.0)
        dk = d[k]
        mag = exp(-sr * ln_k) * (dk - dn)
        ph = si * ln_k
        if k % 2:
            mag = -mag
        acc_r += mag * cos(ph)
        acc_i -= mag * sin(ph)
    return -acc_r / dn, -acc_i / dn


cdef double _k_terms(double nu, double x, double h, long start, long stride,
                     double u_peak, double floor):
    cdef double total = 0.0, u, val
    cdef long j = start
    while True:
        u = j * h
        val = exp(-x * (cosh(u) - 1.0) + nu * u) * 0.5 * (1.0 + exp(-2.0 * nu * u))
        total += val
        if u > u_peak and val < floor * total:
            break
        j += stride
    return total


def bessel_k_scaled(double nu, double x, double h0, double rtol, int max_levels):
    cdef double u_peak = asinh(nu / x)
    cdef double floor = 1e-18
    cdef double h = h0, s, est, new
    cdef int level
    s = 0.5 + _k_terms(nu, x, h, 1, 1, u_peak, floor)
    est = h * s
    for level in range(1, max_levels + 1):
        h *= 0.5
        s += _k_terms(nu, x, h, 1, 2, u_peak, floor)
        new = h * s
        if fabs(new - est) <= rtol * fabs(new):
            return new, level, True
        est = new
    return est, max_levels, False


def radial_dp45(double lam, double k, double r_start, double r_end,
                double u, double du, double rtol, double h):
    cdef double k2 = k * k
    cdef double nu = sqrt(0.25 + lam)
    cdef double q2 = (nu + 0.5) * (nu + 0.5)
    cdef double r = r_start
    cdef long crossings = 0, steps = 0, max_steps = 10000000
    cdef double f1u, f1v, f2u, f2v, f3u, f3v, f4u, f4v, f5u, f5v, f6u, f6v, f7u, f7v
    cdef double ru, yu, yv, r_new, un, vn, eu, ev, w, amp_old, amp_new, amp, err, fac
    cdef double h_free
    cdef bint last

    f1u = du
    f1v = (lam / (r * r) - k2) * u
    while r < r_end:
        if steps >= max_steps:
            return u, du, crossings, steps, h, False
        last = False
        h_free = h
        if r + h >= r_end:
            h = r_end - r
            last = True
        ru = r + _C2 * h
        yu = u + h * (_A21 * f1u)
        yv = du + h * (_A21 * f1v)
        f2u = yv
        f2v = (lam / (ru * ru) - k2) * yu
        ru = r + _C3 * h
        yu = u + h * (_A31 * f1u + _A32 * f2u)
        yv = du + h * (_A31 * f1v + _A32 * f2v)
        f3u = yv
        f3v = (lam / (ru * ru) - k2) * yu
        ru = r + _C4 * h
        yu = u + h * (_A41 * f1u + _A42 * f2u + _A43 * f3u)
        yv = du + h * (_A41 * f1v + _A42 * f2v + _A43 * f3v)
        f4u = yv
        f4v = (lam / (ru * ru) - k2) * yu
        ru = r + _C5 * h
        yu = u + h * (_A51 * f1u + _A52 * f2u + _A53 * f3u + _A54 * f4u)
        yv = du + h * (_A51 * f1v + _A52 * f2v + _A53 * f3v + _A54 * f4v)
        f5u = yv
        f5v = (lam / (ru * ru) - k2) * yu
        ru = r + h
        yu = u + h * (_A61 * f1u + _A62 * f2u + _A63 * f3u + _A64 * f4u + _A65 * f5u)
        yv = du + h * (_A61 * f1v + _A62 * f2v + _A63 * f3v + _A64 * f4v + _A65 * f5v)
        f6u = yv
        f6v = (lam / (ru * ru) - k2) * yu
        r_new = r + h
        un = u + h * (_B1 * f1u + _B3 * f3u + _B4 * f4u + _B5 * f5u + _B6 * f6u)
        vn = du + h * (_B1 * f1v + _B3 * f3v + _B4 * f4v + _B5 * f5v + _B6 * f6v)
        f7u = vn
        f7v = (lam / (r_new * r_new) - k2) * un
        eu = h * (_E1 * f1u + _E3 * f3u + _E4 * f4u + _E5 * f5u + _E6 * f6u + _E7 * f7u)
        ev = h * (_E1 * f1v + _E3 * f3v + _E4 * f4v + _E5 * f5v + _E6 * f6v + _E7 * f7v)

        w = sqrt(k2 + q2 / (r_new * r_new))
        amp_old = sqrt(u * u + (du / w) * (du / w))
        amp_new = sqrt(un * un + (vn / w) * (vn / w))
        amp = amp_old if amp_old > amp_new else amp_new
        err = fabs(eu)
        if fabs(ev) / w > err:
            err = fabs(ev) / w
        err = err / (rtol * amp)

        if err <= 1.0:
            if (u > 0.0) != (un > 0.0):
                crossings += 1
            r = r_end if last else r_new
            u = un
            du = vn
            f1u = f7u
            f1v = f7v
            steps += 1
            if err == 0.0:
                fac = 5.0
            else:
                fac = 0.9 * pow(err, -0.2)
                if fac > 5.0:
                    fac = 5.0
            h = h_free if last else h * fac
        else:
            fac = 0.9 * pow(err, -0.2)
            if fac < 0.2:
                fac = 0.2
            h *= fac
    return u, du, crossings, steps, h, True
