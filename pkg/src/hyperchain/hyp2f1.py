"""Gauss hypergeometric function 2F1(a, b; c; z) on the principal branch.

Two independent evaluation routes are provided:

* ``f21_series`` -- the Gauss series with a provable geometric tail bound,
  restricted to ``|z| <= 0.8`` (unless the series terminates);
* ``f21_euler_integral`` -- Euler's integral representation, valid on the
  whole slit plane ``C \\ [1, inf)`` when ``Re c > Re b > 0``, computed with
  tanh-sinh quadrature that absorbs the algebraic endpoint singularities.

``f21`` dispatches between them.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .complex_core import (
    as_complex,
    gamma,
    is_nonpositive_integer,
    principal_power,
)
from .errors import (
    BranchCutError,
    ConvergenceError,
    DomainError,
    ParamError,
    PoleError,
    QuadratureError,
)
from .quadrature import tanh_sinh_beta

__all__ = [
    "HypParams",
    "SeriesResult",
    "IntegralResult",
    "SERIES_RADIUS",
    "MAX_TERMS",
    "pochhammer",
    "f21_series",
    "f21_euler_integral",
    "f21",
    "f21_derivative",
    "second_solution",
    "mobius_disk_to_slitplane",
    "hypergeometric_ode_residual",
]

SERIES_RADIUS = 0.8
MAX_TERMS = 100_000
QUAD_ERROR_LIMIT = 1e-9


@dataclass(frozen=True)
class HypParams:
    a: complex
    b: complex
    c: complex

    def __post_init__(self):
        for name in ("a", "b", "c"):
            object.__setattr__(self, name, as_complex(getattr(self, name)))
        if is_nonpositive_integer(self.c):
            raise ParamError(f"c = {self.c.real:g} is zero or a negative integer")

    def shifted(self, k: int = 1) -> "HypParams":
        """Parameters of the k-th derivative: (a+k, b+k; c+k)."""
        return HypParams(self.a + k, self.b + k, self.c + k)


class SeriesResult(NamedTuple):
    value: complex
    terms_used: int
    truncation_bound: float


class IntegralResult(NamedTuple):
    value: complex
    quad_error: float


def pochhammer(x, n: int) -> complex:
    """Rising factorial ``(x)_n``."""
    if n < 0:
        raise DomainError("Pochhammer index must be non-negative")
    x = as_complex(x)
    out = 1 + 0j
    for k in range(n):
        out *= x + k
    return out


def _terminating_degree(p: HypParams) -> int | None:
    degs = [int(-v.real) for v in (p.a, p.b) if is_nonpositive_integer(v)]
    return min(degs) if degs else None


def _ratio_majorant(p: HypParams, n: int) -> float:
    """Upper bound for |(a+m)(b+m)/((c+m)(m+1))| over all m >= n (needs n > |c|)."""
    A, B, C = abs(p.a), abs(p.b), abs(p.c)
    return (n + A) / (n - C) * max(1.0, (n + B) / (n + 1))


def _gauss_series(p: HypParams, z: complex, tol: float, max_terms: int = MAX_TERMS) -> SeriesResult:
    deg = _terminating_degree(p)
    term = 1 + 0j
    total = 0j
    az = abs(z)
    if deg is not None:
        for n in range(deg + 1):
            total += term
            term *= (p.a + n) * (p.b + n) / ((p.c + n) * (n + 1)) * z
        return SeriesResult(total, deg + 1, 0.0)
    c_abs = abs(p.c)
    for n in range(max_terms):
        # invariant: total = sum of terms 0..n-1, term = term n
        if n > c_abs:
            q = az * _ratio_majorant(p, n)
            if q < 1.0:
                bound = abs(term) / (1.0 - q)
                if bound <= tol:
                    return SeriesResult(total, max(n, 1), bound)
        total += term
        term *= (p.a + n) * (p.b + n) / ((p.c + n) * (n + 1)) * z
        if not cmath.isfinite(term):
            break
    raise ConvergenceError(f"2F1 series did not reach tol={tol:g} within {max_terms} terms")


def f21_series(p: HypParams, z, tol: float = 1e-16) -> SeriesResult:
    """Partial sum of the Gauss series with absolute tail bound ``<= tol``.

    The tail is bounded by a geometric majorant built from a provable upper
    bound of the term ratio for all later indices.  Terminating series (``a``
    or ``b`` a non-positive integer) are summed exactly for any ``z``.
    """
    z = as_complex(z)
    if tol <= 0:
        raise DomainError("tol must be positive")
    if _terminating_degree(p) is None and abs(z) > SERIES_RADIUS:
        raise DomainError(f"series route requires |z| <= {SERIES_RADIUS}, got |z| = {abs(z):.6g}")
    return _gauss_series(p, z, tol)


def _check_slit(z: complex) -> None:
    if z.imag == 0.0 and z.real >= 1.0:
        raise BranchCutError("point on branch cut [1,∞)")


def f21_euler_integral(p: HypParams, z, *, full_output: bool = False):
    """Euler's integral

        Gamma(c) / (Gamma(b) Gamma(c-b)) * int_0^1 t^(b-1) (1-t)^(c-b-1) (1-zt)^(-a) dt,

    valid for ``Re c > Re b > 0`` and ``z`` off ``[1, inf)``.  The power
    ``(1-zt)^(-a)`` is principal: for such ``z`` the segment ``1 - z t``
    never meets the negative real axis.
    """
    z = as_complex(z)
    if not (p.c.real > p.b.real > 0):
        raise ParamError("Euler integral requires Re(c) > Re(b) > 0")
    if z.imag == 0.0 and z.real >= 1.0:
        raise ParamError("Euler integral requires |arg(1-z)| < pi")
    a = p.a
    one_minus_z = 1.0 - z

    def g(t, omt):
        w = one_minus_z + z * omt  # 1 - z t, accurate near t = 1
        return np.exp(-a * np.log(w))

    integral, err = tanh_sinh_beta(g, p.b, p.c - p.b)
    pref = gamma(p.c) / (gamma(p.b) * gamma(p.c - p.b))
    value = pref * integral
    err *= abs(pref)
    if err > QUAD_ERROR_LIMIT * max(1.0, abs(value)):
        raise QuadratureError(f"quadrature error estimate {err:.3g} exceeds {QUAD_ERROR_LIMIT:g}")
    return IntegralResult(value, err) if full_output else value


def f21(p: HypParams, z, method: str = "auto") -> complex:
    """Principal-branch 2F1: series for ``|z| <= 0.8``, Euler integral elsewhere."""
    z = as_complex(z)
    if method == "series":
        return f21_series(p, z).value
    if method == "integral":
        return f21_euler_integral(p, z)
    if method != "auto":
        raise DomainError(f"unknown method {method!r}")
    if abs(z) <= SERIES_RADIUS or _terminating_degree(p) is not None:
        return _gauss_series(p, z, 1e-17).value
    _check_slit(z)
    if p.c.real > p.b.real > 0:
        return f21_euler_integral(p, z)
    if p.c.real > p.a.real > 0:
        return f21_euler_integral(HypParams(p.b, p.a, p.c), z)
    raise ParamError(
        "outside |z| <= 0.8 the Euler integral needs Re(c) > Re(b) > 0 or Re(c) > Re(a) > 0"
    )


def f21_derivative(p: HypParams, z, method: str = "auto") -> complex:
    """d/dz 2F1(a,b;c;z) = (ab/c) 2F1(a+1, b+1; c+1; z)."""
    return p.a * p.b / p.c * f21(p.shifted(), z, method)


def second_solution(p: HypParams, z, method: str = "auto") -> complex:
    """``z^(1-c) 2F1(1+a-c, 1+b-c; 2-c; z)`` with the principal power."""
    z = as_complex(z)
    if p.c.imag == 0.0 and p.c.real == math.floor(p.c.real):
        raise ParamError("second solution requires c not an integer")
    if z == 0:
        if (1 - p.c).real > 0:
            return 0j
        raise PoleError("second solution is singular at z = 0 for Re(c) >= 1")
    if z.imag == 0.0 and z.real < 0.0:
        raise BranchCutError("point on branch cut (-∞,0] of z^(1-c)")
    q = HypParams(1 + p.a - p.c, 1 + p.b - p.c, 2 - p.c)
    return principal_power(z, 1 - p.c) * f21(q, z, method)


def mobius_disk_to_slitplane(z) -> complex:
    """``4z/(z+1)^2``: maps the open unit disk onto ``{|arg(1-w)| < pi}``."""
    z = as_complex(z)
    if z == -1:
        raise PoleError("4z/(z+1)^2 has a pole at z = -1")
    return 4.0 * z / (z + 1.0) ** 2


def hypergeometric_ode_residual(p: HypParams, y, z, h: float = 1e-3) -> complex:
    """Residual of z(1-z)Y'' + [c-(a+b+1)z]Y' - abY at ``z`` by central differences.

    ``y`` is any callable; the stencil uses real-direction steps of size ``h``
    and is fourth-order accurate.
    """
    z = as_complex(z)
    f = [y(z + k * h) for k in (-2, -1, 0, 1, 2)]
    d1 = (f[0] - 8 * f[1] + 8 * f[3] - f[4]) / (12 * h)
    d2 = (-f[0] + 16 * f[1] - 30 * f[2] + 16 * f[3] - f[4]) / (12 * h * h)
    return z * (1 - z) * d2 + (p.c - (p.a + p.b + 1) * z) * d1 - p.a * p.b * f[2]

