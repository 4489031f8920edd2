"""Pure-Python implementations of the hot numerical kernels.

Each function here has a line-for-line twin in ``_ckernels.pyx``. The two
must stay algorithmically identical; ``tests/test_kernels.py`` runs both
against each other.
"""

import math

BACKEND = "python"

# Dormand-Prince 5(4) tableau
_C2, _C3, _C4, _C5 = 1.0 / 5.0, 3.0 / 10.0, 4.0 / 5.0, 8.0 / 9.0
_A21 = 1.0 / 5.0
_A31, _A32 = 3.0 / 40.0, 9.0 / 40.0
_A41, _A42, _A43 = 44.0 / 45.0, -56.0 / 15.0, 32.0 / 9.0
_A51, _A52, _A53, _A54 = 19372.0 / 6561.0, -25360.0 / 2187.0, 64448.0 / 6561.0, -212.0 / 729.0
_A61, _A62, _A63, _A64, _A65 = (
    9017.0 / 3168.0, -355.0 / 33.0, 46732.0 / 5247.0, 49.0 / 176.0, -5103.0 / 18656.0)
_B1, _B3, _B4, _B5, _B6 = 35.0 / 384.0, 500.0 / 1113.0, 125.0 / 192.0, -2187.0 / 6784.0, 11.0 / 84.0
_E1, _E3, _E4, _E5, _E6, _E7 = (
    71.0 / 57600.0, -71.0 / 16695.0, 71.0 / 1920.0, -17253.0 / 339200.0, 22.0 / 525.0, -1.0 / 40.0)


def zeta_em(sr, si, nterms, bern):
    """Euler-Maclaurin sum for zeta(sr + i si).

    ``bern[j]`` holds B_{2j+2} / (2j+2)!. Returns ``(re, im)``; the caller
    guarantees s != 1.
    """
    acc_r = 0.0
    acc_i = 0.0
    for n in range(nterms - 1, 0, -1):
        ln_n = math.log(n)
        mag = math.exp(-sr * ln_n)
        ph = si * ln_n
        acc_r += mag * math.cos(ph)
        acc_i -= mag * math.sin(ph)

    ln_big = math.log(nterms)
    mag = math.exp(-sr * ln_big)
    ph = si * ln_big
    # N^{-s}
    pr = mag * math.cos(ph)
    pi_ = -mag * math.sin(ph)
    acc_r += 0.5 * pr
    acc_i += 0.5 * pi_

    # N^{1-s} / (s - 1)
    nr = nterms * pr
    ni = nterms * pi_
    dr = sr - 1.0
    di = si
    den = dr * dr + di * di
    acc_r += (nr * dr + ni * di) / den
    acc_i += (ni * dr - nr * di) / den

    # Bernoulli corrections: B_{2k}/(2k)! * s(s+1)...(s+2k-2) * N^{-s-2k+1}
    inv_n = 1.0 / nterms
    inv_n2 = inv_n * inv_n
    # running rising factorial times N^{-s-2k+1}, starting at k = 1: s * N^{-s-1}
    tr = (sr * pr - si * pi_) * inv_n
    ti = (sr * pi_ + si * pr) * inv_n
    for j in range(len(bern)):
        b = bern[j]
        acc_r += b * tr
        acc_i += b * ti
        a1r = sr + 2.0 * j + 1.0
        a2r = sr + 2.0 * j + 2.0
        # multiply by (s + 2j + 1)(s + 2j + 2) / N^2
        mr = a1r * a2r - si * si
        mi = si * (a1r + a2r)
        nr = (tr * mr - ti * mi) * inv_n2
        ni = (tr * mi + ti * mr) * inv_n2
        tr = nr
        ti = ni
    return acc_r, acc_i


def eta_borwein(sr, si, n):
    """Dirichlet eta via Borwein's accelerated alternating series."""
    # d_k = n * sum_{i<=k} (n+i-1)! 4^i / ((n-i)! (2i)!), built by term ratios
    d = [0.0] * (n + 1)
    term = 1.0
    total = 1.0
    d[0] = total
    for i in range(n):
        term *= 4.0 * (n + i) * (n - i) / ((2.0 * i + 1.0) * (2.0 * i + 2.0))
        total += term
        d[i + 1] = total
    dn = d[n]
    acc_r = 0.0
    acc_i = 0.0
    for k in range(n - 1, -1, -1):
        ln_k = math.log(k + 1.0)
        mag = math.exp(-sr * ln_k) * (d[k] - dn)
        ph = si * ln_k
        if k % 2:
            mag = -mag
        acc_r += mag * math.cos(ph)
        acc_i -= mag * math.sin(ph)
    return -acc_r / dn, -acc_i / dn


def _k_terms(nu, x, h, start, stride, u_peak, floor):
    # sum of exp(-x (cosh u - 1)) cosh(nu u) over u = h*start, h*(start+stride), ...
    total = 0.0
    j = start
    while True:
        u = j * h
        val = math.exp(-x * (math.cosh(u) - 1.0) + nu * u) * 0.5 * (1.0 + math.exp(-2.0 * nu * u))
        total += val
        if u > u_peak and val < floor * total:
            break
        j += stride
    return total


def bessel_k_scaled(nu, x, h0, rtol, max_levels):
    """Trapezoidal rule for exp(x) K_nu(x) = int_0^inf exp(-x(cosh u - 1)) cosh(nu u) du.

    The integrand decays double-exponentially, so halving the step converges
    geometrically in the number of correct digits. Returns
    ``(value, levels_used, converged)``.
    """
    u_peak = math.asinh(nu / x)
    floor = 1e-18
    h = h0
    s = 0.5 + _k_terms(nu, x, h, 1, 1, u_peak, floor)
    est = h * s
    for level in range(1, max_levels + 1):
        h *= 0.5
        s += _k_terms(nu, x, h, 1, 2, u_peak, floor)
        new = h * s
        if abs(new - est) <= rtol * abs(new):
            return new, level, True
        est = new
    return est, max_levels, False


def radial_dp45(lam, k, r_start, r_end, u, du, rtol, h):
    """Integrate u'' = (lam / r^2 - k^2) u from r_start to r_end.

    Adaptive Dormand-Prince 5(4). The error norm scales the derivative by the
    local wavenumber w = sqrt(k^2 + (nu + 1/2)^2 / r^2) so that the power-law
    inner region and the oscillatory outer region are controlled on the same
    footing. The last step is clipped to land exactly on ``r_end``.

    Returns ``(u, du, crossings, steps, h_next, ok)`` where ``crossings``
    counts sign changes of u.
    """
    k2 = k * k
    nu = math.sqrt(0.25 + lam)
    q2 = (nu + 0.5) * (nu + 0.5)
    r = r_start
    crossings = 0
    steps = 0
    max_steps = 10000000
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
        # stage 2
        ru = r + _C2 * h
        yu = u + h * (_A21 * f1u)
        yv = du + h * (_A21 * f1v)
        f2u = yv
        f2v = (lam / (ru * ru) - k2) * yu
        # stage 3
        ru = r + _C3 * h
        yu = u + h * (_A31 * f1u + _A32 * f2u)
        yv = du + h * (_A31 * f1v + _A32 * f2v)
        f3u = yv
        f3v = (lam / (ru * ru) - k2) * yu
        # stage 4
        ru = r + _C4 * h
        yu = u + h * (_A41 * f1u + _A42 * f2u + _A43 * f3u)
        yv = du + h * (_A41 * f1v + _A42 * f2v + _A43 * f3v)
        f4u = yv
        f4v = (lam / (ru * ru) - k2) * yu
        # stage 5
        ru = r + _C5 * h
        yu = u + h * (_A51 * f1u + _A52 * f2u + _A53 * f3u + _A54 * f4u)
        yv = du + h * (_A51 * f1v + _A52 * f2v + _A53 * f3v + _A54 * f4v)
        f5u = yv
        f5v = (lam / (ru * ru) - k2) * yu
        # stage 6
        ru = r + h
        yu = u + h * (_A61 * f1u + _A62 * f2u + _A63 * f3u + _A64 * f4u + _A65 * f5u)
        yv = du + h * (_A61 * f1v + _A62 * f2v + _A63 * f3v + _A64 * f4v + _A65 * f5v)
        f6u = yv
        f6v = (lam / (ru * ru) - k2) * yu
        # 5th-order solution
        r_new = r + h
        un = u + h * (_B1 * f1u + _B3 * f3u + _B4 * f4u + _B5 * f5u + _B6 * f6u)
        vn = du + h * (_B1 * f1v + _B3 * f3v + _B4 * f4v + _B5 * f5v + _B6 * f6v)
        f7u = vn
        f7v = (lam / (r_new * r_new) - k2) * un
        eu = h * (_E1 * f1u + _E3 * f3u + _E4 * f4u + _E5 * f5u + _E6 * f6u + _E7 * f7u)
        ev = h * (_E1 * f1v + _E3 * f3v + _E4 * f4v + _E5 * f5v + _E6 * f6v + _E7 * f7v)

        w = math.sqrt(k2 + q2 / (r_new * r_new))
        amp_old = math.sqrt(u * u + (du / w) * (du / w))
        amp_new = math.sqrt(un * un + (vn / w) * (vn / w))
        amp = amp_old if amp_old > amp_new else amp_new
        err = max(abs(eu), abs(ev) / w) / (rtol * amp)

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
                fac = 0.9 * err ** -0.2
                if fac > 5.0:
                    fac = 5.0
            h = h_free if last else h * fac
        else:
            fac = 0.9 * err ** -0.2
            if fac < 0.2:
                fac = 0.2
            h *= fac
    return u, du, crossings, steps, h, True
