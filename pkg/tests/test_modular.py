import cmath
import math
import random
import time

import mpmath
import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hyperchain.errors import BranchCutError, ConvergenceError, DomainError, PoleError
from hyperchain.modular import (
    FundamentalDomainPoint,
    in_fundamental_domain,
    j_from_lambda,
    lambda_from_tau,
    tau_from_z,
)
from oracles import J_2I, LAMBDA_2I


def test_tau_examples():
    assert tau_from_z(0.5) == pytest.approx(1j, abs=1e-14)
    assert tau_from_z(0.1).imag > tau_from_z(0.5).imag
    for z in (0.01, 0.3, 0.77, 0.999):
        assert abs(tau_from_z(z).real) < 1e-12


def test_tau_monotone_on_unit_interval():
    ims = [tau_from_z(k / 100).imag for k in range(1, 100)]
    assert all(a > b for a, b in zip(ims, ims[1:]))


def test_tau_errors():
    for z in (0, 1):
        with pytest.raises(DomainError):
            tau_from_z(z)
    for z in (-2, 3.5):
        with pytest.raises(BranchCutError):
            tau_from_z(z)


def test_fundamental_domain_examples():
    assert in_fundamental_domain(1j)
    assert not in_fundamental_domain(0.1 + 0.05j)
    assert not in_fundamental_domain(1.5 + 1j)
    assert not in_fundamental_domain(-1j)
    assert in_fundamental_domain(1 + 1j)
    with pytest.raises(DomainError):
        FundamentalDomainPoint(0.5 + 0.1j)


def test_lambda_examples():
    assert lambda_from_tau(1j) == pytest.approx(0.5, abs=1e-12)
    assert lambda_from_tau(tau_from_z(0.3)) == pytest.approx(0.3, abs=1e-10)
    lam = lambda_from_tau(2j)
    assert abs(lam.imag) < 1e-12 and 0 < lam.real < 0.5
    assert lam.real == pytest.approx(LAMBDA_2I, rel=1e-9)
    with pytest.raises(DomainError):
        lambda_from_tau(0.2 + 0.1j)


def test_lambda_against_theta_oracle():
    # lambda = (theta_2 / theta_3)^4 with nome q = exp(i pi tau)
    for tau in (1j, 0.3 + 1.2j, -0.7 + 0.9j, 0.5 + 0.87j, 1 + 2j, 0.05 + 4j):
        q = mpmath.exp(1j * mpmath.pi * tau)
        ref = complex((mpmath.jtheta(2, 0, q) / mpmath.jtheta(3, 0, q)) ** 4)
        lam, res = lambda_from_tau(tau, full_output=True)
        assert res < 1e-9
        assert abs(lam - ref) < 1e-8 * max(1, abs(ref))


def test_round_trip_samples():
    rng = random.Random(11)
    zs = [rng.uniform(0.05, 0.95) for _ in range(20)]
    zs += [0.5 + cmath.rect(rng.uniform(0, 0.3), rng.uniform(-math.pi, math.pi)) for _ in range(10)]
    for z in zs:
        tau = tau_from_z(z)
        if not in_fundamental_domain(tau):
            continue
        assert abs(lambda_from_tau(tau) - z) < 1e-8


@given(st.floats(-1, 1), st.floats(0.3, 6))
def test_lambda_residual_property(x, y):
    tau = complex(x, y)
    assume(in_fundamental_domain(tau))
    lam, res = lambda_from_tau(tau, full_output=True)
    assert res < 1e-9
    assert abs(tau_from_z(lam) - tau) < 1e-9


def test_cusp_neighbourhood_limitation():
    # near tau = 1 with tiny Im the solution z is astronomically large
    with pytest.raises(ConvergenceError):
        lambda_from_tau(1 + 0.01j)


def test_j_examples():
    assert j_from_lambda(0.5) == pytest.approx(1728, abs=1e-9)
    for lam in (0.3, 2.5 - 1j, -4 + 0.2j):
        assert j_from_lambda(lam) == pytest.approx(j_from_lambda(1 - lam), rel=1e-12)
        assert j_from_lambda(lam) == pytest.approx(j_from_lambda(1 / lam), rel=1e-12)
    assert j_from_lambda(2) == pytest.approx(j_from_lambda(0.5))
    for lam in (0, 1):
        with pytest.raises(PoleError):
            j_from_lambda(lam)


@given(st.complex_numbers(min_magnitude=0.05, max_magnitude=20, allow_nan=False, allow_infinity=False))
def test_j_sixfold_symmetry(lam):
    assume(abs(lam - 1) > 0.05)
    j = j_from_lambda(lam)
    for img in (1 - lam, 1 / lam, 1 / (1 - lam), lam / (lam - 1), (lam - 1) / lam):
        assert abs(j_from_lambda(img) - j) <= 1e-9 * abs(j)


def test_j_at_i_and_2i():
    assert abs(j_from_lambda(lambda_from_tau(1j)) - 1728) < 1e-6
    assert abs(j_from_lambda(lambda_from_tau(2j)) - J_2I) < 1e-4 * J_2I


def test_lambda_timing():
    t = time.perf_counter()
    for k in range(20):
        lambda_from_tau(tau_from_z(0.05 + 0.045 * k))
    assert time.perf_counter() - t < 5
