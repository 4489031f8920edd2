import os
import subprocess
import sys

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from xilab import kernels
from xilab.kernels import available_backends
from xilab.specfun import _em_coefficients

BACKENDS = available_backends()
BERN = _em_coefficients(12)
needs_compiled = pytest.mark.skipif("cython" not in BACKENDS, reason="compiled backend not built")


def test_python_backend_always_available():
    assert "python" in BACKENDS
    assert BACKENDS["python"].BACKEND == "python"


def test_selected_backend_is_one_of_available():
    assert kernels.BACKEND in BACKENDS


@pytest.mark.parametrize("flag, expected", [("1", "python"), ("0", None), ("", None)])
def test_env_flag_selects_backend(flag, expected):
    env = dict(os.environ, XILAB_PURE_PYTHON=flag)
    out = subprocess.run(
        [sys.executable, "-c", "import xilab.kernels as k; print(k.BACKEND)"],
        env=env, capture_output=True, text=True, check=True,
    ).stdout.strip()
    if expected is None:
        expected = "cython" if "cython" in BACKENDS else "python"
    assert out == expected


@needs_compiled
@settings(max_examples=60, deadline=None)
@given(
    sr=st.floats(-2.0, 3.0),
    si=st.floats(-100.0, 100.0),
)
def test_zeta_backends_agree(sr, si):
    n = max(30, int(2 * abs(si)) + 21)
    a = BACKENDS["python"].zeta_em(sr, si, n, BERN)
    b = BACKENDS["cython"].zeta_em(sr, si, n, BERN)
    scale = 1.0 + abs(complex(*a))
    assert abs(complex(*a) - complex(*b)) <= 1e-12 * scale


@needs_compiled
@settings(max_examples=40, deadline=None)
@given(sr=st.floats(0.0, 3.0), si=st.floats(-60.0, 60.0))
def test_eta_backends_agree(sr, si):
    a = complex(*BACKENDS["python"].eta_borwein(sr, si, 80))
    b = complex(*BACKENDS["cython"].eta_borwein(sr, si, 80))
    assert abs(a - b) <= 1e-12 * (1.0 + abs(a))


@needs_compiled
@settings(max_examples=40, deadline=None)
@given(nu=st.floats(0.01, 5.0), x=st.floats(1e-3, 50.0))
def test_bessel_k_backends_agree(nu, x):
    a = BACKENDS["python"].bessel_k_scaled(nu, x, 0.5, 1e-14, 10)
    b = BACKENDS["cython"].bessel_k_scaled(nu, x, 0.5, 1e-14, 10)
    assert a[1:] == b[1:]
    assert a[0] == pytest.approx(b[0], rel=1e-13)


@needs_compiled
@pytest.mark.parametrize("lam", [0.5, 2.0, 5.0])
def test_radial_backends_agree(lam):
    nu = (0.25 + lam) ** 0.5
    r0 = 1e-6
    args = (lam, 1.0, r0, 60.0, r0 ** (0.5 + nu), (0.5 + nu) * r0 ** (nu - 0.5), 1e-10, 1e-8)
    a = BACKENDS["python"].radial_dp45(*args)
    b = BACKENDS["cython"].radial_dp45(*args)
    assert a[2:4] == b[2:4]  # crossings, steps
    assert a[5] and b[5]
    assert a[0] == pytest.approx(b[0], rel=1e-9, abs=1e-12)
    assert a[1] == pytest.approx(b[1], rel=1e-9, abs=1e-12)


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_radial_lands_on_endpoint_and_keeps_step(name):
    mod = BACKENDS[name]
    u, du, crossings, steps, h, ok = mod.radial_dp45(2.0, 1.0, 1.0, 10.0, 1.0, 1.5, 1e-10, 0.01)
    assert ok
    # h returned is the controller's step, not the clipped final one
    assert h > 1e-3


@pytest.mark.parametrize("name", sorted(BACKENDS))
def test_free_wave_crossings(name):
    # lambda = 0 gives u = sin(r)/... with nodes at multiples of pi
    mod = BACKENDS[name]
    u, du, crossings, *_ = mod.radial_dp45(0.0, 1.0, 1e-8, 10.0, 1e-8, 1.0, 1e-11, 1e-9)
    assert crossings == 3
    assert u == pytest.approx(-0.5440211108893698, abs=1e-8)  # sin(10)
