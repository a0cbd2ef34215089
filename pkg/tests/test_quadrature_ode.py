import math

import numpy as np
import pytest

from hyperchain.ode import dopri45
from hyperchain.quadrature import tanh_sinh_beta


def beta_fn(a, b):
    return math.gamma(a) * math.gamma(b) / math.gamma(a + b)


@pytest.mark.parametrize("a,b", [(0.5, 0.5), (1, 1), (0.1, 2.5), (3, 0.25), (7.5, 7.5)])
def test_beta_integrals(a, b):
    val, err = tanh_sinh_beta(lambda t, s: np.ones_like(t), a, b)
    assert val == pytest.approx(beta_fn(a, b), rel=1e-13)
    assert err < 1e-10


def test_smooth_weight():
    # int_0^1 t^(-1/2) (1-t)^(-1/2) / (1 + t) dt = pi / sqrt 2
    val, _ = tanh_sinh_beta(lambda t, s: 1 / (1 + t), 0.5, 0.5)
    assert val == pytest.approx(math.pi / math.sqrt(2), rel=1e-13)


def test_rejects_nonintegrable():
    with pytest.raises(ValueError):
        tanh_sinh_beta(lambda t, s: t, 0.0, 1.0)


def test_dopri_exponential():
    y = dopri45(lambda t, y: y, 0.0, 1.0, [1.0])
    assert y[0] == pytest.approx(math.e, rel=1e-11)


def test_dopri_complex_rotation_and_backwards():
    y = dopri45(lambda t, y: 1j * y, 0.0, -math.pi, np.array([1 + 0j]))
    assert abs(y[0] + 1) < 1e-11


def test_dopri_record_and_max_step():
    rec = []
    dopri45(lambda t, y: -y, 0.0, 2.0, [1.0], max_step=0.1, record=rec)
    ts = [t for t, _ in rec]
    assert ts[0] == 0 and ts[-1] == pytest.approx(2.0)
    assert max(np.diff(ts)) <= 0.1 + 1e-15


def test_dopri_zero_span():
    y = dopri45(lambda t, y: y, 1.0, 1.0, [3.0])
    assert y[0] == 3.0


def test_dopri_guard_aborts():
    class Stop(Exception):
        pass

    def guard(t, y):
        if y[0] > 10:
            raise Stop

    with pytest.raises(Stop):
        dopri45(lambda t, y: y * y, 0.0, 2.0, [1.0], guard=guard)
