"""Complete elliptic integral of the first kind, K(z) = (pi/2) 2F1(1/2, 1/2; 1; z).

``z`` is the parameter (``m`` in the Abramowitz-Stegun convention).  The
principal branch lives on ``C \\ [1, inf)``.  Evaluation routes:

* ``|z| <= 0.8``: Gauss series;
* ``|1 - z| <= 0.8``: the logarithmic expansion at ``z = 1``,
  ``K(z) = L(z) - log(1-z)/pi * K(1-z)`` with ``L`` given by
  ``k_star_formula``;
* ``|1 - z| >= 1.25``: Pfaff transformation ``K(z) = K(z/(z-1)) / sqrt(1-z)``
  followed by the expansion at 1;
* the remaining lens around ``z = 1/2 +- 0.87i``: the quadratic
  transformation ``K(4q/(1+q)^2) = (1+q) K(q^2)``, where
  ``q = (1 - sqrt(1-z)) / (1 + sqrt(1-z))`` lies in the unit disk.

Across the cut the one-sided boundary values satisfy
``K(x + i0) - K(x - i0) = 2i K(1-x)`` for ``x > 1``, and a counterclockwise
loop around ``z = 1`` acts on the basis ``(K(z), K(1-z))`` by
``[[1, -2i], [0, 1]]``.
"""
from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .complex_core import (
    MonodromyMatrix,
    PathSpec,
    as_complex,
    branch_sqrt,
    digamma,
    principal_log,
)
from .errors import (
    BranchCutError,
    ConvergenceError,
    DomainError,
    QuadratureError,
    SingularityError,
)
from .hyp2f1 import HypParams, SERIES_RADIUS, _gauss_series
from .ode import dopri45
from .quadrature import tanh_sinh_beta

__all__ = [
    "K_MONODROMY",
    "ZERO_LOOP_MONODROMY",
    "BranchState",
    "k_principal",
    "k_derivative",
    "k_complement",
    "k_and_derivative",
    "k_star_formula",
    "k_split_integral",
    "k_below_cut",
    "k_above_cut",
    "pfaff_transform_check",
    "continue_along_path",
]

HALF_PI = 0.5 * math.pi
# counterclockwise loop around z = 1 acting on (K(z), K(1-z))
K_MONODROMY = MonodromyMatrix(1, -2j, 0, 1)
# counterclockwise loop around z = 0 acting on (K(z), K(1-z))
ZERO_LOOP_MONODROMY = MonodromyMatrix(1, 0, -2j, 1)

_K_PARAMS = HypParams(0.5, 0.5, 1)
_DK_PARAMS = HypParams(1.5, 1.5, 2)
_NEAR_ONE = 0.8
_FAR = 1.25
_SERIES_TOL = 1e-17
_STAR_MAX_TERMS = 100_000
SINGULAR_DISTANCE = 1e-6
CUT_NUDGE = 1e-9


def _check_principal(z: complex) -> None:
    if z.imag == 0.0 and z.real >= 1.0:
        raise BranchCutError("point on branch cut [1,∞)")


def _k_series_pair(z: complex) -> tuple[complex, complex]:
    k = HALF_PI * _gauss_series(_K_PARAMS, z, _SERIES_TOL).value
    dk = HALF_PI * 0.25 * _gauss_series(_DK_PARAMS, z, _SERIES_TOL).value
    return k, dk


def _star_series(w: complex, want_derivative: bool = False):
    """Sum_n c_n d_n w^n with c_n = ((1/2)_n / n!)^2, d_n = psi(n+1) - psi(n+1/2).

    Returns the value and, optionally, the derivative with respect to ``w``.
    ``d_n`` follows from the digamma recurrence, starting from
    ``d_0 = psi(1) - psi(1/2)``.
    """
    aw = abs(w)
    if aw >= 1.0:
        raise ConvergenceError(f"expansion at z=1 needs |1-z| < 1, got {aw:.6g}")
    d = (digamma(1.0) - digamma(0.5)).real
    c = 1.0
    wn = 1 + 0j
    total = 0j
    dtotal = 0j
    wn_1 = 0j  # w^(n-1)
    for n in range(_STAR_MAX_TERMS):
        term = c * d * wn
        total += term
        if want_derivative and n:
            dtotal += n * c * d * wn_1
        # c_n d_n is decreasing, so the remaining tail is below |term| * |w| / (1 - |w|)
        tail = abs(term) * aw / (1.0 - aw)
        if want_derivative:
            tail = max(tail, (n + 1) * abs(term) / (1.0 - aw) ** 2)
        if tail <= _SERIES_TOL * max(1.0, abs(total)):
            return (total, dtotal) if want_derivative else total
        nn = n + 1
        d += 1.0 / nn - 2.0 / (2 * nn - 1)
        c *= ((nn - 0.5) / nn) ** 2
        wn_1 = wn
        wn = wn * w
    raise ConvergenceError("expansion at z=1 did not converge")


def k_star_formula(z) -> complex:
    """Analytic part at ``z = 1``: ``L(z) = K(z) + log(1-z)/pi * K(1-z)``.

    Computed from the right-hand series in powers of ``1 - z``; ``L(1) = 2 ln 2``.
    """
    z = as_complex(z)
    return _star_series(1.0 - z)


def _k_near_one(z: complex, w: complex | None = None) -> tuple[complex, complex]:
    # w = 1 - z may be passed exactly when the caller knows it
    w = 1.0 - z if w is None else w
    if w == 0:
        raise BranchCutError("K has a logarithmic singularity at z = 1")
    lval, ldw = _star_series(w, want_derivative=True)
    k1, dk1 = _k_series_pair(w)  # K(1-z), K'(1-z)
    log_w = principal_log(w).principal
    k = lval - log_w / math.pi * k1
    # d/dz: L'(z) = -dL/dw; d/dz[log(1-z) K(1-z)] = -K(1-z)/(1-z) - log(1-z) K'(1-z)
    dk = -ldw + (k1 / w + log_w * dk1) / math.pi
    return k, dk


def _k_pair(z: complex, depth: int = 0) -> tuple[complex, complex]:
    if depth > 8:
        raise ConvergenceError(f"no convergent evaluation route for K at {z!r}")
    if abs(z) <= SERIES_RADIUS:
        return _k_series_pair(z)
    if abs(1.0 - z) <= _NEAR_ONE:
        return _k_near_one(z)
    if abs(1.0 - z) >= _FAR:
        # Pfaff: K(z) = K(w) (1-z)^(-1/2), w = z/(z-1), |1-w| = 1/|1-z| <= 0.8
        w = z / (z - 1.0)
        kw, dkw = _k_near_one(w)
        s = branch_sqrt(1.0 - z)
        k = kw / s
        dw = -1.0 / (z - 1.0) ** 2
        dk = dkw * dw / s + 0.5 * kw / (s * (1.0 - z))
        return k, dk
    # quadratic transformation K(z) = (1+q) K(q^2)
    s = branch_sqrt(1.0 - z)
    q = (1.0 - s) / (1.0 + s)
    kq, dkq = _k_pair(q * q, depth + 1)
    dq = 1.0 / (s * (1.0 + s) ** 2)
    return (1.0 + q) * kq, dq * (kq + (1.0 + q) * 2.0 * q * dkq)


def k_and_derivative(z) -> tuple[complex, complex]:
    """Principal ``(K(z), K'(z))``."""
    z = as_complex(z)
    _check_principal(z)
    return _k_pair(z)


def k_principal(z) -> complex:
    """Principal-branch ``K(z)`` for ``z`` off ``[1, inf)``."""
    return k_and_derivative(z)[0]


def k_complement(z) -> complex:
    """``K(1 - z)`` without rounding ``1 - z`` first (keeps accuracy for tiny ``z``)."""
    z = as_complex(z)
    if z.imag == 0.0 and z.real <= 0.0:
        raise BranchCutError("point on branch cut (-∞,0] of K(1-z)")
    if abs(z) <= _NEAR_ONE:
        return _k_near_one(1.0 - z, w=z)[0]
    return k_principal(1.0 - z)


def k_derivative(z) -> complex:
    """``K'(z) = (pi/8) 2F1(3/2, 3/2; 2; z)`` on the principal branch."""
    return k_and_derivative(z)[1]


def _split_parts(x: float) -> tuple[float, float]:
    k = math.sqrt(x)
    inv_k = 1.0 / k

    # int_0^{1/k} dt / (sqrt(1-t^2) sqrt(1-k^2 t^2)), t = s/k
    def g_re(s, oms):
        return 1.0 / np.sqrt((1.0 + s) * (1.0 - (s * inv_k) ** 2))

    re, err_re = tanh_sinh_beta(g_re, 1.0, 0.5)
    re *= inv_k

    # int_{1/k}^1 dt / (sqrt(1-t^2) sqrt(k^2 t^2 - 1)), t = 1/k + (1 - 1/k) s
    span = 1.0 - inv_k

    def g_im(s, oms):
        t = inv_k + span * s
        return 1.0 / np.sqrt((1.0 + t) * (k * t + 1.0))

    im, err_im = tanh_sinh_beta(g_im, 0.5, 0.5)
    im *= math.sqrt(span / (k - 1.0))
    if max(err_re, err_im) > 1e-11:
        # x just above 1: the first integrand nearly hits its singularity at
        # s = k.  Reciprocal-modulus identities give the same two integrals.
        re = k_principal(1.0 / x).real * inv_k
        im = k_principal(1.0 - 1.0 / x).real * inv_k
        if not (math.isfinite(re) and math.isfinite(im)):
            raise QuadratureError("split-integral evaluation failed")
        return re, im
    return re.real, im.real


def k_split_integral(x: float) -> complex:
    """Boundary value ``K(x - i0)`` for real ``x > 1`` from the split integral.

    With ``x = k^2`` the integrand's square root ``sqrt(1 - k^2 t^2)`` is real
    on ``[0, 1/k]`` and purely imaginary on ``(1/k, 1]``.  The two pieces are
    positive integrals ``R`` and ``I``; the value returned is ``R - i I``,
    which is the limit approached from the lower half plane.
    """
    x = float(x)
    if not x > 1.0:
        raise DomainError("split integral needs real x > 1")
    re, im = _split_parts(x)
    return complex(re, -im)


def k_below_cut(x: float) -> complex:
    """``lim_{y -> 0+} K(x - iy)`` for ``x > 1``."""
    return k_split_integral(x)


def k_above_cut(x: float) -> complex:
    """``lim_{y -> 0+} K(x + iy) = K(x - i0) + 2i K(1-x)`` for ``x > 1``."""
    x = float(x)
    if not x > 1.0:
        raise DomainError("cut limit needs real x > 1")
    return k_split_integral(x) + 2j * k_principal(1.0 - x)


def pfaff_transform_check(z) -> tuple[complex, complex]:
    """Both sides of ``K(z/(z-1)) = sqrt(1-z) K(z)``."""
    z = as_complex(z)
    if z == 1:
        raise BranchCutError("z = 1 is a singular point")
    w = z / (z - 1.0)
    _check_principal(z)
    _check_principal(w)
    return k_principal(w), branch_sqrt(1.0 - z) * k_principal(z)


def _k_ode(dz: complex):
    """Right-hand side of (z - z^2) Y'' + (1 - 2z) Y' - Y/4 = 0 along z(s) = z0 + s dz."""

    def rhs(z: complex, y: np.ndarray) -> np.ndarray:
        out = np.empty_like(y)
        denom = z - z * z
        for j in (0, 2):
            yy, dy = y[j], y[j + 1]
            out[j] = dz * dy
            out[j + 1] = dz * (0.25 * yy - (1.0 - 2.0 * z) * dy) / denom
        return out

    return rhs


@dataclass
class BranchState:
    """Continuation of the basis ``(K(z), K(1-z))`` along a path.

    ``base_values`` are the continued values at ``current_point``,
    ``base_derivatives`` their z-derivatives, and ``accumulated_monodromy``
    the matrix ``A`` with ``base_values = A @ principal values`` at the
    current point.
    """

    base_values: tuple[complex, complex]
    base_derivatives: tuple[complex, complex]
    accumulated_monodromy: MonodromyMatrix
    current_point: complex
    crossings: list = field(default_factory=list)
    samples: list = field(default_factory=list)

    def predicted_values(self) -> tuple[complex, complex]:
        """``A @ (K(z), K(1-z))`` from the principal evaluator at ``current_point``."""
        z = self.current_point
        p = (k_principal(z), k_principal(1.0 - z))
        m = self.accumulated_monodromy
        return (m.a * p[0] + m.b * p[1], m.c * p[0] + m.d * p[1])

    def to_dict(self) -> dict:
        m = self.accumulated_monodromy
        pair = lambda w: [w.real, w.imag]  # noqa: E731
        return {
            "crossings": [dict(c) for c in self.crossings],
            "current_point": pair(self.current_point),
            "monodromy": [[pair(m.a), pair(m.b)], [pair(m.c), pair(m.d)]],
            "values": {
                "K(1-z)": pair(self.base_values[1]),
                "K(z)": pair(self.base_values[0]),
            },
        }


def _nudge(points: list[complex]) -> list[complex]:
    """Move waypoints lying on a cut off the real axis, toward the side the path came from."""
    out = [points[0]]
    for i, w in enumerate(points[1:], start=1):
        if w.imag == 0.0 and (w.real > 1.0 or w.real < 0.0):
            prev = out[i - 1]
            side = prev.imag if prev.imag != 0.0 else (points[i + 1].imag if i + 1 < len(points) else 1.0)
            w = complex(w.real, math.copysign(CUT_NUDGE, side if side != 0.0 else 1.0))
        out.append(w)
    return out


def _crossing(a: complex, b: complex):
    """Cut crossing of segment a -> b as (generator, label, x) or None."""
    if a.imag * b.imag >= 0.0:
        return None
    s = a.imag / (a.imag - b.imag)
    x = a.real + s * (b.real - a.real)
    upward = a.imag < 0.0
    if x > 1.0:
        g = K_MONODROMY if upward else K_MONODROMY.inverse()
        return g, "[1,inf)", x, upward
    if x < 0.0:
        g = ZERO_LOOP_MONODROMY.inverse() if upward else ZERO_LOOP_MONODROMY
        return g, "(-inf,0]", x, upward
    return None


def continue_along_path(path: PathSpec, rtol: float = 1e-12, keep_samples: bool = False) -> BranchState:
    """Analytically continue ``(K(z), K(1-z))`` along ``path`` by integrating the ODE.

    Each crossing of ``[1, inf)`` from below to above right-multiplies the
    accumulated matrix by ``[[1, -2i], [0, 1]]`` (the inverse for the
    opposite direction).  Crossing ``(-inf, 0]`` changes the second basis
    function, ``K(1-z)``, whose own cut lies there: from above to below the
    factor is ``[[1, 0], [-2i, 1]]``.
    """
    for sing in (1.0, 0.0):
        if path.distance_to(sing) < SINGULAR_DISTANCE:
            raise SingularityError(f"path passes within {SINGULAR_DISTANCE:g} of z = {sing:g}")
    pts = list(path.waypoints)
    z0 = pts[0]
    if z0.imag == 0.0 and (z0.real >= 1.0 or z0.real <= 0.0):
        raise BranchCutError("path must start off the cuts (-∞,0] and [1,∞)")
    pts = _nudge(pts)
    k0, dk0 = k_and_derivative(z0)
    g0, dg0 = k_and_derivative(1.0 - z0)
    y = np.array([k0, dk0, g0, -dg0], dtype=complex)
    acc = MonodromyMatrix.identity()
    crossings = []
    samples = []
    for a, b in zip(pts, pts[1:]):
        dz = b - a
        rhs = _k_ode(dz)
        record = [] if keep_samples else None
        y = dopri45(
            lambda s, yy: rhs(a + s * dz, yy),
            0.0,
            1.0,
            y,
            rtol=rtol,
            atol=rtol,
            max_step=path.max_step / abs(dz),
            record=record,
        )
        if keep_samples:
            samples.extend((a + s * dz, v[0], v[1], v[2], v[3]) for s, v in record)
        hit = _crossing(a, b)
        if hit is not None:
            g, label, x, upward = hit
            acc = acc @ g
            crossings.append({"cut": label, "direction": "up" if upward else "down", "x": x})
    return BranchState(
        base_values=(complex(y[0]), complex(y[2])),
        base_derivatives=(complex(y[1]), complex(y[3])),
        accumulated_monodromy=acc,
        current_point=pts[-1],
        crossings=crossings,
        samples=samples,
    )

