"""Modular lambda and j via the period ratio tau(z) = i K(1-z) / K(z).

lambda is obtained by inverting tau numerically (damped Newton in the real
and imaginary parts of z, finite-difference Jacobian); no theta series.
"""
from __future__ import annotations

import cmath
import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .complex_core import as_complex
from .elliptic import k_complement, k_principal
from .errors import BranchCutError, ConvergenceError, DomainError, PoleError

__all__ = [
    "FundamentalDomainPoint",
    "in_fundamental_domain",
    "tau_from_z",
    "lambda_from_tau",
    "j_from_lambda",
    "MAX_ITER",
]

MAX_ITER = 200
RESIDUAL_TOL = 1e-12


def in_fundamental_domain(tau) -> bool:
    tau = as_complex(tau)
    return (
        tau.imag > 0
        and abs(tau.real) <= 1
        and abs(2 * tau - 1) >= 1
        and abs(2 * tau + 1) >= 1
    )


@dataclass(frozen=True)
class FundamentalDomainPoint:
    tau: complex

    def __post_init__(self):
        t = as_complex(self.tau)
        object.__setattr__(self, "tau", t)
        if not in_fundamental_domain(t):
            raise DomainError(f"tau = {t} is outside the fundamental domain")


def tau_from_z(z) -> complex:
    z = as_complex(z)
    if z == 0 or z == 1:
        raise DomainError("tau(z) is undefined at z = 0 and z = 1")
    if z.imag == 0 and (z.real >= 1 or z.real <= 0):
        raise BranchCutError("point on branch cut (-∞,0] or [1,∞) of K(1-z)/K(z)")
    return 1j * k_complement(z) / k_principal(z)


def _tau_or_none(z: complex) -> complex | None:
    if z.imag == 0 and (z.real >= 1 or z.real <= 0):
        return None
    try:
        t = tau_from_z(z)
    except (DomainError, ArithmeticError):
        return None
    return t if cmath.isfinite(t) else None


@lru_cache(maxsize=None)
def _seed_grid() -> tuple[np.ndarray, np.ndarray]:
    """(z, tau(z)) on 40x40 points of (0,1) x (-0.4,0.4), plus a coarse wider ring."""
    xs = (np.arange(40) + 0.5) / 40
    ys = -0.4 + 0.8 * (np.arange(40) + 0.5) / 40
    pts = [complex(x, y) for x in xs for y in ys]
    # outer ring: lets Newton reach tau near the edges of F
    for x in np.linspace(-3.0, 4.0, 29):
        for y in np.linspace(-3.0, 3.0, 25):
            if not (0 < x < 1 and abs(y) < 0.4):
                pts.append(complex(x, y if y != 0 else 1e-3))
    zs, taus = [], []
    for z in pts:
        t = _tau_or_none(z)
        if t is not None:
            zs.append(z)
            taus.append(t)
    return np.array(zs), np.array(taus)


def _newton(target: complex, z: complex) -> tuple[complex, float]:
    t = _tau_or_none(z)
    if t is None:
        return z, math.inf
    r = t - target
    for _ in range(MAX_ITER):
        res = abs(r)
        if res < RESIDUAL_TOL:
            return z, res
        h = 1e-7 * min(abs(z), abs(1 - z), 1.0)
        tx = _tau_or_none(z + h)
        ty = _tau_or_none(z + 1j * h)
        if tx is None or ty is None:
            tx = _tau_or_none(z - h)
            ty = _tau_or_none(z - 1j * h)
            if tx is None or ty is None:
                return z, res
            h = -h
        jac = np.array(
            [[(tx - t).real, (ty - t).real], [(tx - t).imag, (ty - t).imag]]
        ) / h
        try:
            step = np.linalg.solve(jac, [-r.real, -r.imag])
        except np.linalg.LinAlgError:
            return z, res
        dz = complex(step[0], step[1])
        lam = 1.0
        for _ in range(40):
            cand = z + lam * dz
            tc = _tau_or_none(cand)
            if tc is not None and abs(tc - target) < res:
                z, t, r = cand, tc, tc - target
                break
            lam *= 0.5
        else:
            return z, res
    return z, abs(r)


def lambda_from_tau(tau, full_output: bool = False):
    """Solve ``tau_from_z(z) = tau`` for ``z`` with ``tau`` in the fundamental domain.

    Seeds are tried in order of distance between their tau-value and the
    target, preceded by the cusp asymptotic ``16 exp(i pi tau)``.  Returns
    ``z``, or ``(z, residual)`` when ``full_output`` is true.
    """
    if isinstance(tau, FundamentalDomainPoint):
        tau = tau.tau
    tau = FundamentalDomainPoint(tau).tau
    zs, taus = _seed_grid()
    order = np.argsort(np.abs(taus - tau))
    q = cmath.exp(1j * math.pi * tau)
    seeds = [16 * q * (1 - 8 * q)] + [complex(zs[k]) for k in order[:8]]
    best = (None, math.inf)
    for seed in seeds:
        z, res = _newton(tau, seed)
        if res < best[1]:
            best = (z, res)
        if res < RESIDUAL_TOL:
            break
    z, res = best
    if z is None or res >= 1e-9:
        raise ConvergenceError(
            f"lambda inversion did not converge for tau = {tau} (best residual {res:.3g})"
        )
    return (z, res) if full_output else z


def j_from_lambda(lam) -> complex:
    """``256 (1 - l + l^2)^3 / (l^2 (1 - l)^2)``."""
    lam = as_complex(lam)
    if lam == 0 or lam == 1:
        raise PoleError("j(lambda) has poles at lambda = 0 and lambda = 1")
    return 256 * (1 - lam + lam * lam) ** 3 / (lam * lam * (1 - lam) ** 2)
