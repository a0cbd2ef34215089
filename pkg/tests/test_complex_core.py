import cmath
import math

import pytest
from hypothesis import assume, given
from hypothesis import strategies as st

from hyperchain.complex_core import (
    BranchedLog,
    MonodromyMatrix,
    PathSpec,
    apply_monodromy,
    branch_sqrt,
    digamma,
    gamma,
    principal_log,
    principal_power,
)
from hyperchain.errors import DomainError, PoleError
from oracles import EULER_GAMMA, K_BELOW, K_VALUES, SQRT_PI, TWO_LN2

finite = st.floats(-10, 10, allow_nan=False)
cplx = st.builds(complex, finite, finite)


def test_principal_log_examples():
    assert principal_log(1) == BranchedLog(0j, 0)
    neg = principal_log(-1)
    assert neg.principal == pytest.approx(1j * math.pi)
    assert neg.winding == 0
    assert principal_log(math.exp(2)).principal == pytest.approx(2.0, abs=1e-15)


def test_principal_log_arg_half_open():
    # -1 - 0j has cmath argument -pi; the convention closes the interval at +pi
    assert principal_log(complex(-1.0, -0.0)).principal.imag == math.pi


def test_principal_log_tiny_negative_imaginary_part():
    w = principal_log(complex(-0.5, -1e-95)).principal
    assert -math.pi < w.imag < -3.14


def test_principal_log_zero():
    with pytest.raises(DomainError):
        principal_log(0)


def test_branched_log_value():
    w = principal_log(2j).shifted(-1)
    assert w.value == pytest.approx(math.log(2) + 1j * (math.pi / 2 - 2 * math.pi))


@given(cplx)
def test_exp_of_log_roundtrip(z):
    assume(abs(z) > 1e-6)
    w = principal_log(z).principal
    assert -math.pi < w.imag <= math.pi
    assert abs(cmath.exp(w) - z) <= 1e-13 * abs(z)


def test_branch_sqrt_examples():
    assert branch_sqrt(4) == 2
    assert branch_sqrt(-9, "negated") == pytest.approx(-3j)
    assert branch_sqrt(2j) == pytest.approx(1 + 1j)
    assert branch_sqrt(-9) == pytest.approx(3j)
    assert branch_sqrt(0) == 0


def test_branch_sqrt_squares_on_grid():
    for i in range(-20, 21):
        for k in range(-20, 21):
            w = complex(i / 2, k / 2)
            for hint in ("principal", "negated"):
                r = branch_sqrt(w, hint)
                assert abs(r * r - w) <= 1e-14 * max(abs(w), 1e-300) + 1e-300
            assert branch_sqrt(w).real >= 0


def test_gamma_examples():
    assert gamma(1) == pytest.approx(1, rel=1e-14)
    assert gamma(5) == pytest.approx(24, rel=1e-13)
    assert gamma(0.5) == pytest.approx(SQRT_PI, rel=1e-13)
    # reflection oracle at z = 1/2
    assert gamma(0.5) ** 2 == pytest.approx(math.pi / math.sin(math.pi / 2), rel=1e-13)


@pytest.mark.parametrize("z", [0, -1, -7])
def test_gamma_poles(z):
    with pytest.raises(PoleError):
        gamma(z)
    with pytest.raises(PoleError):
        digamma(z)


def test_gamma_recurrence_grid():
    pts = [complex(-4.7 + 0.9 * i, -2.0 + 0.45 * k) for i in range(10) for k in range(10)]
    for z in pts:
        assert abs(gamma(z + 1) / gamma(z) - z) <= 1e-11 * abs(z)


@given(cplx)
def test_gamma_recurrence_property(z):
    assume(min(abs(z - n) for n in range(-11, 1)) > 1e-3)
    assert abs(gamma(z + 1) - z * gamma(z)) <= 1e-11 * abs(z * gamma(z))


def test_digamma_examples():
    assert digamma(2) - digamma(1) == pytest.approx(1, abs=1e-13)
    assert digamma(1) == pytest.approx(-EULER_GAMMA, abs=1e-13)
    assert digamma(1) - digamma(0.5) == pytest.approx(TWO_LN2, abs=1e-13)


def test_digamma_harmonic_oracle():
    # psi(1) = -lim (H_n - ln n); accelerate with the 1/(2n) correction
    n = 100_000
    h = math.fsum(1 / k for k in range(1, n + 1))
    assert digamma(1).real == pytest.approx(-(h - math.log(n) - 1 / (2 * n)), abs=1e-10)


@given(cplx)
def test_digamma_recurrence(z):
    assume(min(abs(z - n) for n in range(-11, 1)) > 1e-2)
    assert abs(digamma(z + 1) - digamma(z) - 1 / z) <= 1e-12 * max(1.0, abs(1 / z))


def test_principal_power():
    assert principal_power(4, 0.5) == pytest.approx(2)
    assert principal_power(-1, 0.5) == pytest.approx(1j)
    assert principal_power(0, 2) == 0
    with pytest.raises(DomainError):
        principal_power(0, -1)


def test_apply_monodromy_examples():
    ident = MonodromyMatrix.identity()
    assert apply_monodromy(ident, (2 + 1j, -3j)) == (2 + 1j, -3j)
    m = MonodromyMatrix(1, -2j, 0, 1)
    x = 2.0
    k_x, k_1mx = K_BELOW[x], K_VALUES[1 - x]
    u, v = apply_monodromy(m, (k_x, k_1mx))
    assert u == pytest.approx(k_x - 2j * k_1mx)
    assert v == k_1mx
    assert apply_monodromy(m, apply_monodromy(m, (1, 0))) == (1, 0)


def test_monodromy_algebra():
    m = MonodromyMatrix(1, -2j, 0, 1)
    assert (m @ m).max_abs_diff(MonodromyMatrix(1, -4j, 0, 1)) == 0
    assert (m ** -1 @ m).max_abs_diff(MonodromyMatrix.identity()) == 0
    assert m.det() == 1
    with pytest.raises(DomainError):
        MonodromyMatrix(1, 2, 2, 4)


@given(cplx, cplx, cplx, cplx, cplx, cplx)
def test_monodromy_inverse_roundtrip(a, b, c, d, u, v):
    assume(abs(a * d - b * c) > 0.1)
    m = MonodromyMatrix(a, b, c, d)
    uu, vv = apply_monodromy(m.inverse(), apply_monodromy(m, (u, v)))
    scale = max(1.0, abs(u), abs(v)) * max(1.0, abs(a), abs(b), abs(c), abs(d)) ** 2 / abs(m.det())
    assert abs(uu - u) <= 1e-13 * scale
    assert abs(vv - v) <= 1e-13 * scale


def test_pathspec_validation_and_json():
    p = PathSpec((0.5, 1 + 1j, 2j), 0.1)
    assert PathSpec.from_json(p.to_json()) == p
    assert p.distance_to(1 + 1j) == 0
    with pytest.raises(DomainError):
        PathSpec((1,), 0.1)
    with pytest.raises(DomainError):
        PathSpec((1, 1, 2), 0.1)
    with pytest.raises(DomainError):
        PathSpec((0, 1), 0)
    with pytest.raises(DomainError):
        PathSpec.from_dict({"waypoints": [[0, 0], [1, 0]], "bogus": 1})


def test_pathspec_circle_closed():
    c = PathSpec.circle(0.5, 0.25, n=16, turns=2)
    assert c.waypoints[0] == c.waypoints[-1]
    assert len(c.waypoints) == 33
    assert c.length() == pytest.approx(2 * 16 * 2 * 0.25 * math.sin(math.pi / 16))
