import cmath
import math

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xilab.errors import DomainError, PoleError
from xilab.specfun import (
    EULER_GAMMA,
    SpecFunConfig,
    bernoulli,
    bessel_j,
    bessel_k,
    bessel_y,
    complex_gamma,
    complex_zeta,
    dirichlet_eta,
    hankel1,
    log_gamma,
    zeta_via_eta,
)

# reference values below were computed with mpmath at 30 digits


def close(a, b, rel):
    return abs(a - b) <= rel * abs(b)


# --- Gamma -------------------------------------------------------------------


@pytest.mark.parametrize("x", [0.1, 0.5, 1.0, 2.5, 7.0, 30.5, 150.0])
def test_gamma_real_axis_matches_stdlib(x):
    assert close(complex_gamma(x).real, math.gamma(x), 1e-13)


@pytest.mark.parametrize("x", [-0.5, -1.5, -2.25, -7.9])
def test_gamma_negative_real_matches_stdlib(x):
    assert close(complex_gamma(x).real, math.gamma(x), 1e-13)


def test_gamma_half_is_sqrt_pi():
    assert close(complex_gamma(0.5).real, math.sqrt(math.pi), 1e-15)


@pytest.mark.parametrize(
    "s, expected",
    [
        (0.5 + 14j, -4.0537030780372814884e-10 - 5.7732998345536051632e-10j),
        (-1.5 + 3j, -0.0020960381605393191349 + 0.00069222595466354386609j),
        (2.5 - 7j, -0.0021086008354232166538 + 0.00013036010541391394893j),
        (10 + 1j, -217255.64361963254461 + 267132.03414680115815j),
    ],
)
def test_gamma_complex_reference(s, expected):
    assert close(complex_gamma(s), expected, 2e-14)


@pytest.mark.parametrize("s", [0, -1, -2, -10])
def test_gamma_poles(s):
    with pytest.raises(PoleError):
        complex_gamma(s)
    with pytest.raises(PoleError):
        log_gamma(s)


@pytest.mark.parametrize("bad", [math.nan, complex(1, math.inf)])
def test_non_finite_rejected(bad):
    with pytest.raises(DomainError):
        complex_gamma(bad)


@settings(max_examples=80, deadline=None)
@given(re=st.floats(-5.0, 20.0), im=st.floats(-40.0, 40.0))
def test_gamma_recurrence(re, im):
    s = complex(re, im)
    if abs(im) < 1e-3 and abs(re - round(re)) < 1e-3 and re < 0.5:
        return
    lhs = complex_gamma(s + 1)
    rhs = s * complex_gamma(s)
    assert abs(lhs - rhs) <= 1e-12 * abs(lhs)


@settings(max_examples=60, deadline=None)
@given(re=st.floats(-3.0, 4.0), im=st.floats(0.05, 20.0))
def test_gamma_reflection(re, im):
    s = complex(re, im)
    lhs = complex_gamma(s) * complex_gamma(1 - s)
    rhs = math.pi / cmath.sin(math.pi * s)
    assert abs(lhs - rhs) <= 1e-12 * abs(rhs)


@pytest.mark.parametrize(
    "s, expected",
    [
        (-3.5 + 0.2j, -1.4896603675052907745 - 12.288514412727094922j),
        (0.25 - 30j, -47.055241933994316021 - 71.643569596014939817j),
    ],
)
def test_log_gamma_principal_branch(s, expected):
    assert abs(log_gamma(s) - expected) <= 1e-12 * abs(expected)


def test_log_gamma_matches_stirling_for_large_argument():
    # Stirling series through 1/(1260 z^5) as an independent oracle
    z = 40.0 + 25.0j
    stirling = (
        (z - 0.5) * cmath.log(z) - z + 0.5 * math.log(2 * math.pi)
        + 1 / (12 * z) - 1 / (360 * z**3) + 1 / (1260 * z**5)
    )
    assert abs(log_gamma(z) - stirling) < 1e-12


def test_log_gamma_half_plus_30i_stirling_eight_terms():
    # B_{2k} / (2k (2k - 1) z^(2k - 1)) for k = 1..8
    from xilab.specfun import bernoulli

    z = 0.5 + 30j
    series = (z - 0.5) * cmath.log(z) - z + 0.5 * math.log(2 * math.pi)
    for k in range(1, 9):
        series += float(bernoulli(2 * k)) / (2 * k * (2 * k - 1) * z ** (2 * k - 1))
    assert abs(log_gamma(z).real - series.real) < 1e-12
    assert abs(log_gamma(z).imag - series.imag) < 1e-11


@settings(max_examples=60, deadline=None)
@given(re=st.floats(0.5, 30.0), im=st.floats(-60.0, 60.0))
def test_gamma_against_mpmath(re, im):
    s = complex(re, im)
    ref = complex(mpmath.gamma(mpmath.mpc(re, im)))
    assert abs(complex_gamma(s) - ref) <= 1e-13 * abs(ref)


# --- zeta and eta --------------------------------------------------------------


def test_bernoulli_numbers():
    assert [str(bernoulli(n)) for n in (0, 1, 2, 4, 12)] == ["1", "-1/2", "1/6", "-1/30", "-691/2730"]


@pytest.mark.parametrize(
    "s, expected",
    [
        (0.5 + 14j, 0.022241142609993589246 - 0.1032581232664500579j),
        (-2 + 40j, -11.715809956449401208 - 95.019778402284177412j),
        (0.5, -1.4603545088095868129),
        (3 + 99j, 1.0971730844557278032 + 0.032134771941242512478j),
    ],
)
def test_zeta_reference(s, expected):
    assert abs(complex_zeta(s) - expected) <= 1e-11 * max(1.0, abs(expected))


def test_zeta_two_is_basel():
    assert close(complex_zeta(2).real, math.pi**2 / 6, 1e-14)


# absolute accuracy target on -2 <= Re s <= 3 is 1e-10
@pytest.mark.parametrize("n, expected", [(-1, -1 / 12), (0, -0.5)])
def test_zeta_at_nonpositive_integers(n, expected):
    assert complex_zeta(n).real == pytest.approx(expected, abs=1e-12)


def test_zeta_trivial_zero():
    assert abs(complex_zeta(-2)) < 1e-10


def test_zeta_pole():
    with pytest.raises(PoleError):
        complex_zeta(1)


@pytest.mark.parametrize("s", [1.5 + 2j, 2.2 - 7j, 3 + 0.5j])
def test_zeta_against_direct_series(s):
    # direct Dirichlet series with integral tail and half-term correction
    n = 20000
    direct = sum(k ** (-s) for k in range(1, n))
    direct += n ** (1 - s) / (s - 1) + 0.5 * n ** (-s) + s * n ** (-s - 1) / 12
    assert abs(complex_zeta(s) - direct) < 1e-12


def test_eta_reference():
    expected = 0.58539874512911666167 - 1.044132363675748411j
    assert abs(dirichlet_eta(0.5 + 30j) - expected) < 1e-13


def test_eta_domain():
    with pytest.raises(DomainError):
        dirichlet_eta(-0.5)
    with pytest.raises(DomainError):
        dirichlet_eta(0.5 + 1000j)


@settings(max_examples=50, deadline=None)
@given(re=st.floats(0.05, 3.0), im=st.floats(-80.0, 80.0))
def test_zeta_routes_agree(re, im):
    s = complex(re, im)
    if abs(s - 1) < 0.05:
        return
    a = complex_zeta(s)
    b = zeta_via_eta(s)
    assert abs(a - b) <= 1e-11 * max(1.0, abs(a))


@settings(max_examples=40, deadline=None)
@given(re=st.floats(-2.0, 3.0), im=st.floats(1.0, 100.0))
def test_zeta_against_mpmath(re, im):
    ref = complex(mpmath.zeta(mpmath.mpc(re, im)))
    assert abs(complex_zeta(complex(re, im)) - ref) <= 1e-11 * max(1.0, abs(ref))


def test_zeta_conjugate_symmetry():
    s = 0.3 + 17.2j
    assert abs(complex_zeta(s.conjugate()) - complex_zeta(s).conjugate()) < 1e-14


def test_config_validation():
    with pytest.raises(ValueError):
        SpecFunConfig(zeta_terms_min=2)
    with pytest.raises(ValueError):
        SpecFunConfig(zeta_bernoulli_order=7)
    with pytest.raises(ValueError):
        SpecFunConfig(quad_abs_tol=0.0)


def test_more_terms_same_answer():
    s = 0.5 + 30j
    a = complex_zeta(s)
    b = complex_zeta(s, SpecFunConfig(zeta_terms_min=200, zeta_bernoulli_order=20))
    assert abs(a - b) < 1e-12


def test_euler_gamma_harmonic_limit():
    # H_n - ln n - 1/(2n) + 1/(12 n^2) - 1/(120 n^4) -> gamma
    n = 10**6
    h = math.fsum(1.0 / k for k in range(1, n + 1))
    approx = h - math.log(n) - 1 / (2 * n) + 1 / (12 * n * n)
    assert EULER_GAMMA == pytest.approx(approx, abs=1e-13)


# --- Bessel ----------------------------------------------------------------------


@pytest.mark.parametrize("x", [1e-3, 0.1, 1.0, 2.0, 10.0, 60.0])
def test_bessel_k_half_closed_form(x):
    expected = math.sqrt(math.pi / (2 * x)) * math.exp(-x)
    assert close(bessel_k(0.5, x), expected, 5e-15)


def test_bessel_k_half_reference_values():
    assert bessel_k(0.5, 1.0) == pytest.approx(0.4610685044, abs=5e-11)
    assert bessel_k(0.5, 2.0) == pytest.approx(0.1199377720, abs=5e-11)


@pytest.mark.parametrize(
    "nu, x, expected",
    [
        (0.75, 1.0, 0.51577530069591862858),
        (0.6, 0.01, 17.8112213910917501),
        (2.3, 5.0, 0.0059613503174411019806),
        (5.0, 30.0, 3.2103335105890262479e-14),
    ],
)
def test_bessel_k_reference(nu, x, expected):
    assert close(bessel_k(nu, x), expected, 1e-13)


@settings(max_examples=50, deadline=None)
@given(nu=st.floats(1.05, 4.0), x=st.floats(0.01, 40.0))
def test_bessel_k_recurrence(nu, x):
    lhs = bessel_k(nu + 1, x)
    rhs = bessel_k(nu - 1, x) + 2 * nu / x * bessel_k(nu, x)
    assert abs(lhs - rhs) <= 1e-12 * lhs


@pytest.mark.parametrize("nu, x", [(0.0, 1.0), (-1.0, 1.0), (1.0, 0.0), (1.0, -2.0), (6.0, 1.0)])
def test_bessel_k_domain(nu, x):
    with pytest.raises(DomainError):
        bessel_k(nu, x)


@pytest.mark.parametrize("x", [0.3, 1.0, 7.5, 24.0, 30.0, 120.0])
def test_bessel_j_half_orders(x):
    pref = math.sqrt(2 / (math.pi * x))
    assert bessel_j(0.5, x) == pytest.approx(pref * math.sin(x), abs=1e-14)
    assert bessel_j(-0.5, x) == pytest.approx(pref * math.cos(x), abs=1e-14)


@pytest.mark.parametrize(
    "mu, x, expected",
    [
        (0.3, 2.0, 0.4256940619814137223),
        (-0.7, 10.0, -0.15667111070272785407),
        (2.5, 40.0, -0.08751431140932354553),
        (0.75, 200.0, -0.056033686617371437842),
    ],
)
def test_bessel_j_reference(mu, x, expected):
    assert bessel_j(mu, x) == pytest.approx(expected, abs=1e-13)


@settings(max_examples=40, deadline=None)
@given(nu=st.floats(0.05, 3.0), x=st.floats(0.1, 60.0))
def test_bessel_j_recurrence(nu, x):
    lhs = bessel_j(nu - 1, x) + bessel_j(nu + 1, x)
    rhs = 2 * nu / x * bessel_j(nu, x)
    assert abs(lhs - rhs) < 1e-12 * (1 + abs(rhs))


@settings(max_examples=40, deadline=None)
@given(nu=st.floats(0.05, 2.9).filter(lambda v: abs(v - round(v)) > 1e-3), x=st.floats(0.5, 80.0))
def test_bessel_wronskian(nu, x):
    w = bessel_j(nu + 1, x) * bessel_y(nu, x) - bessel_j(nu, x) * bessel_y(nu + 1, x)
    assert w == pytest.approx(2 / (math.pi * x), rel=1e-10)


def test_hankel_reference():
    expected = -0.068743519310886324662 - 0.089484743798709009245j
    assert abs(hankel1(0.75, 50.0) - expected) < 1e-14


def test_hankel_half_order_closed_form():
    # H1_{1/2}(x) = -i sqrt(2/(pi x)) e^(ix)
    x = 10.0
    closed = -1j * math.sqrt(2 / (math.pi * x)) * cmath.exp(1j * x)
    assert abs(hankel1(0.5000001, x) - closed) < 1e-6


@pytest.mark.parametrize("nu", [1.0, 2.0])
def test_hankel_integer_order_rejected(nu):
    with pytest.raises(DomainError, match="perturb"):
        hankel1(nu, 3.0)
    with pytest.raises(DomainError):
        bessel_y(nu, 3.0)
