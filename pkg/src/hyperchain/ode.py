"""Adaptive Dormand-Prince 5(4) integrator for real or complex systems.

Used by the elliptic path continuation and by numeric chain evaluation.  The
state is a 1-D numpy array; the independent variable is real.
"""
from __future__ import annotations

import math
from typing import Callable, Optional

import numpy as np

from .errors import StepError

__all__ = ["dopri45"]

_C = (0.0, 1 / 5, 3 / 10, 4 / 5, 8 / 9, 1.0, 1.0)
_A = (
    (),
    (1 / 5,),
    (3 / 40, 9 / 40),
    (44 / 45, -56 / 15, 32 / 9),
    (19372 / 6561, -25360 / 2187, 64448 / 6561, -212 / 729),
    (9017 / 3168, -355 / 33, 46732 / 5247, 49 / 176, -5103 / 18656),
    (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84),
)
_B5 = (35 / 384, 0.0, 500 / 1113, 125 / 192, -2187 / 6784, 11 / 84, 0.0)
_B4 = (5179 / 57600, 0.0, 7571 / 16695, 393 / 640, -92097 / 339200, 187 / 2100, 1 / 40)
_E = tuple(b5 - b4 for b5, b4 in zip(_B5, _B4))


def dopri45(
    f: Callable[[float, np.ndarray], np.ndarray],
    t0: float,
    t1: float,
    y0,
    rtol: float = 1e-12,
    atol: float = 1e-12,
    max_step: float = math.inf,
    guard: Optional[Callable[[float, np.ndarray], None]] = None,
    record: Optional[list] = None,
) -> np.ndarray:
    """Integrate ``y' = f(t, y)`` from ``t0`` to ``t1``.

    ``guard(t, y)`` is called after every accepted step and may raise to abort
    (blow-up detection).  When ``record`` is a list, accepted ``(t, y)`` pairs
    are appended to it, starting with the initial point.
    """
    y = np.array(y0, dtype=complex if np.iscomplexobj(y0) else float)
    t = float(t0)
    span = float(t1) - t
    if record is not None:
        record.append((t, y.copy()))
    if span == 0.0:
        return y
    direction = 1.0 if span > 0 else -1.0
    total = abs(span)
    h = min(max_step, total, 0.01 * total if total > 0 else 1.0)
    h_min = min(1e-15 * max(1.0, total), 1e-6 * total)
    k1 = f(t, y)
    done = 0.0
    while done < total:
        h = min(h, total - done, max_step)
        hs = direction * h
        ks = [k1]
        for i in range(1, 7):
            yi = y + hs * sum(a * k for a, k in zip(_A[i], ks))
            ks.append(f(t + _C[i] * hs, yi))
        y_new = y + hs * sum(b * k for b, k in zip(_B5, ks) if b)
        err_vec = hs * sum(e * k for e, k in zip(_E, ks) if e)
        scale = atol + rtol * np.maximum(np.abs(y), np.abs(y_new))
        err = float(np.max(np.abs(err_vec) / scale)) if y.size else 0.0
        if not math.isfinite(err):
            err = math.inf
        if err <= 1.0:
            done += h
            t = float(t0) + direction * done
            if done >= total:
                t = float(t1)
            y = y_new
            k1 = ks[6]
            if guard is not None:
                guard(t, y)
            if record is not None:
                record.append((t, y.copy()))
            factor = 5.0 if err == 0 else min(5.0, 0.9 * err ** -0.2)
        else:
            factor = max(0.2, 0.9 * err ** -0.2) if math.isfinite(err) else 0.2
        h *= factor
        if h < h_min and done < total:
            raise StepError(
                f"step size underflow at t={t:.17g}: local error cannot meet rtol={rtol:g}"
            )
    return y
