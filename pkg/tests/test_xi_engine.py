import math
import random

import mpmath
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xilab.errors import AccuracyError, DomainError
from xilab.xi_engine import (
    ChiConstants,
    HadamardTruncation,
    b0_closed_form,
    big_xi,
    chi_direct,
    chi_lambda_roundtrip,
    chi_via_ratio,
    estimate_b0,
    hadamard_partial,
    stated_b0,
    xi,
    xi_eta_route,
    zero_free_factor,
)
from xilab.zero_scan import ScanConfig, cached_zeros

XI_HALF = 0.49712077818831410991  # mpmath, 30 digits


def mp_xi(s):
    s = mpmath.mpc(s)
    return complex(s * (s - 1) / 2 * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s))


@pytest.fixture(scope="module")
def zeros240():
    return cached_zeros(ScanConfig(0.0, 240.0, 0.05, 1e-10))


# --- xi values -------------------------------------------------------------------


@pytest.mark.parametrize("s", [0, 1])
def test_xi_at_zero_and_one(s):
    assert xi(s) == pytest.approx(0.5, abs=1e-13)


def test_xi_half():
    assert xi(0.5).real == pytest.approx(XI_HALF, rel=1e-13)


def test_xi_half_from_gamma_and_zeta_oracles():
    # zeta(1/2) and Gamma(1/4) from the standard constants
    zeta_half = -1.4603545088095868
    gamma_quarter = math.gamma(0.25)
    expected = 0.5 * 0.5 * (-0.5) * math.pi ** (-0.25) * gamma_quarter * zeta_half
    assert xi(0.5).real == pytest.approx(expected, rel=1e-13)


def test_xi_two_is_pi_over_six():
    # (1/2) 2 (1) pi^-1 Gamma(1) zeta(2) = pi/6
    assert xi(2).real == pytest.approx(math.pi / 6, rel=1e-14)


@pytest.mark.parametrize("s", [0.3 + 2j, -1.5 + 12j, 2.5 - 30j, 1.02 + 0.01j, -0.03 + 0.02j, -2.04 + 0.03j])
def test_xi_against_mpmath(s):
    ref = mp_xi(s)
    assert abs(xi(s) - ref) <= 1e-11 * abs(ref)


def test_xi_near_pole_of_zeta_is_smooth():
    vals = [xi(1 + h).real for h in (-1e-8, 0.0, 1e-8)]
    assert max(vals) - min(vals) < 1e-9
    assert vals[1] == pytest.approx(0.5, abs=1e-14)


def test_functional_equation_grid():
    worst = 0.0
    for i in range(21):
        sigma = -2 + 0.25 * i
        for t in range(0, 41, 4):
            s = complex(sigma, t)
            a = xi(s)
            worst = max(worst, abs(a - xi(1 - s)) / (1 + abs(a)))
    assert worst <= 1e-9


@settings(max_examples=60, deadline=None)
@given(sigma=st.floats(-2.0, 3.0), t=st.floats(-40.0, 40.0))
def test_conjugate_symmetry(sigma, t):
    s = complex(sigma, t)
    a = xi(s.conjugate())
    b = xi(s).conjugate()
    assert abs(a.real - b.real) <= 1e-12 * (1 + abs(b))
    assert abs(a.imag - b.imag) <= 1e-12 * (1 + abs(b))


@settings(max_examples=60, deadline=None)
@given(sigma=st.floats(-2.0, 3.0), t=st.floats(-40.0, 40.0))
def test_functional_equation_property(sigma, t):
    s = complex(sigma, t)
    a = xi(s)
    assert abs(a - xi(1 - s)) <= 1e-9 * (1 + abs(a))


def test_realness_on_critical_line():
    for j in range(121):
        v = xi(complex(0.5, 0.5 * j))
        assert abs(v.imag) <= 1e-10 * (1 + abs(v.real))


def test_eta_route_matches():
    for t in (0.0, 5.0, 14.1, 33.3, 60.0):
        s = complex(0.5, t)
        assert abs(xi(s) - xi_eta_route(s)) <= 1e-12 * (1 + abs(xi(s)))


def test_eta_route_domain():
    with pytest.raises(DomainError):
        xi_eta_route(-0.5 + 3j)


def test_no_zeros_right_of_strip_in_zeta_factor():
    # xi = zero_free_factor * zeta; the zero-free factor decays like e^(-pi t/4)
    for sigma in (1.1, 1.5, 2.0, 3.0, -0.1, -1.0):
        for j in range(81):
            s = complex(sigma, 0.5 * j)
            v = xi(s)
            assert abs(v) > 0.0
            assert abs(v / zero_free_factor(s)) > 1e-6


# --- Xi -----------------------------------------------------------------------------


def test_big_xi_zero():
    assert big_xi(0.0) == pytest.approx(XI_HALF, rel=1e-13)


def test_big_xi_even():
    assert big_xi(7.3) == pytest.approx(big_xi(-7.3), rel=1e-13)
    assert big_xi(7.3) == pytest.approx(0.13643137002538716578, rel=1e-12)


@pytest.mark.parametrize("t, expected", [(20.0, -3.6655427755609456832e-05), (40.0, 2.1176217079072258174e-11)])
def test_big_xi_reference(t, expected):
    assert big_xi(t) == pytest.approx(expected, rel=1e-10)


def test_big_xi_brackets_first_zero():
    assert (big_xi(14.0) > 0) != (big_xi(14.5) > 0)


def test_big_xi_methods():
    assert big_xi(25.0, method="eta") == pytest.approx(big_xi(25.0), rel=1e-12)
    with pytest.raises(ValueError):
        big_xi(1.0, method="nope")


def test_big_xi_flags_imaginary_residue(monkeypatch):
    import xilab.xi_engine as xe

    monkeypatch.setattr(xe, "xi", lambda s, config=None: complex(1.0, 1e-3))
    with pytest.raises(AccuracyError):
        xe.big_xi(3.0)


# --- b0 and the Hadamard product --------------------------------------------------------


def test_b0_closed_form_value():
    assert b0_closed_form() == pytest.approx(-0.0230957089661, abs=1e-12)


def test_stated_b0_value():
    assert stated_b0() == pytest.approx(-2.5541199559, abs=1e-9)


def test_estimate_b0_matches_log_derivative():
    # d/ds ln xi(s) at 0 by mpmath differentiation
    ref = float(mpmath.diff(lambda s: mpmath.log(s * (s - 1) / 2 * mpmath.pi ** (-s / 2) * mpmath.gamma(s / 2) * mpmath.zeta(s)), 0))
    assert estimate_b0() == pytest.approx(ref, abs=1e-9)
    assert estimate_b0() == pytest.approx(b0_closed_form(), abs=1e-9)


def test_hadamard_at_zero_is_half(zeros240):
    for n in (1, 10, 50):
        assert hadamard_partial(0.0, zeros240, HadamardTruncation(n, -0.02)) == pytest.approx(0.5, abs=1e-15)


def test_hadamard_error_decreases(zeros240):
    b0 = estimate_b0()
    target = xi(2).real
    errs = [
        abs(hadamard_partial(2.0, zeros240, HadamardTruncation(n, b0)) - target) / target
        for n in (10, 50, 100)
    ]
    assert errs[0] > errs[1] > errs[2]
    assert errs[2] <= 0.1


def test_hadamard_conjugation(zeros240):
    trunc = HadamardTruncation(50, estimate_b0())
    s = 0.3 + 2j
    a = hadamard_partial(s.conjugate(), zeros240, trunc)
    b = hadamard_partial(s, zeros240, trunc).conjugate()
    assert abs(a - b) < 1e-14


def test_hadamard_pairing_matches_unpaired(zeros240):
    s = 1.7 + 0.4j
    a = hadamard_partial(s, zeros240, HadamardTruncation(30, -0.02, pairing=True))
    b = hadamard_partial(s, zeros240, HadamardTruncation(30, -0.02, pairing=False))
    assert abs(a - b) < 1e-12 * abs(a)


def test_hadamard_accepts_plain_floats():
    val = hadamard_partial(2.0, [14.134725141734694], HadamardTruncation(1, 0.0))
    m = 0.25 + 14.134725141734694**2
    assert val == pytest.approx(0.5 * (1 + 2 / m) * math.exp(2 / m), rel=1e-15)


def test_hadamard_errors(zeros240):
    with pytest.raises(DomainError):
        hadamard_partial(1.0, [], HadamardTruncation(1, 0.0))
    with pytest.raises(DomainError):
        hadamard_partial(1.0, zeros240[:5], HadamardTruncation(6, 0.0))
    with pytest.raises(ValueError):
        HadamardTruncation(0, 0.0)


# --- chi ------------------------------------------------------------------------------------


def test_chi_constants():
    c = ChiConstants.stated()
    assert c.alpha == pytest.approx(math.log(2) - math.pi, abs=1e-15)
    assert c.beta == pytest.approx(3.16468836256, abs=1e-10)
    assert c.consistency(stated_b0())[0] == pytest.approx(0.0, abs=1e-15)
    # beta matches pi - b0 only for the numeric b0
    assert c.beta == pytest.approx(math.pi - estimate_b0(), abs=1e-9)
    assert abs(c.beta - (math.pi - stated_b0())) > 2.5


def test_chi_from_hadamard():
    c = ChiConstants.from_hadamard(-0.5)
    assert c.beta == pytest.approx(math.pi + 0.5)
    assert c.consistency(-0.5) == (0.0, 0.0)


@pytest.mark.parametrize("s, expected", [(2.0, math.exp(math.pi)), (-1.0, math.exp(math.pi)), (1.000001, 1.0000031416)])
def test_chi_direct(s, expected):
    assert chi_direct(s) == pytest.approx(expected, rel=1e-10)


@pytest.mark.parametrize("s", [0.0, 0.5, 1.0])
def test_chi_direct_gap(s):
    with pytest.raises(DomainError):
        chi_direct(s)


def test_chi_via_ratio_is_xi_times_exponential():
    c = ChiConstants.stated()
    assert chi_via_ratio(2.0, c) == pytest.approx(math.pi / 6 * math.exp(c.alpha + 2 * c.beta), rel=1e-13)


def test_chi_ratio_differs_from_direct_deterministically():
    a = chi_via_ratio(2.0).real
    b = chi_via_ratio(2.0).real
    assert a == b
    assert abs(a - chi_direct(2.0)) > 1.0


@pytest.mark.parametrize("s, lam", [(2.0, 2.0), (1.0, 0.0), (3.0, 6.0)])
def test_chi_lambda_roundtrip_examples(s, lam):
    assert chi_lambda_roundtrip(s) == pytest.approx(lam, abs=1e-14)


def test_chi_lambda_roundtrip_random():
    rng = random.Random(7)
    for _ in range(50):
        s = 1 + 9 * (1 - rng.random())
        assert chi_lambda_roundtrip(s) == pytest.approx(s * (s - 1), rel=1e-12)


def test_chi_lambda_roundtrip_domain():
    with pytest.raises(DomainError):
        chi_lambda_roundtrip(0.5)
