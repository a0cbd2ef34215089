"""Branch-aware complex scalars, Gamma/digamma, paths and monodromy matrices.

Complex values are plain Python ``complex``.  The branch conventions are:

* ``principal_log``: imaginary part in the half-open interval (-pi, pi].
* ``branch_sqrt``: the principal root has ``Re >= 0`` (and ``Im >= 0`` when
  ``Re == 0``); the ``NEGATED`` hint returns the other root.

Signed zeros are normalised away before any branch decision, so that
``-9 - 0j`` and ``-9 + 0j`` land on the same side of the cut.
"""
from __future__ import annotations

import cmath
import enum
import json
import math
from dataclasses import dataclass
from typing import Iterable, Sequence

from .errors import DomainError, PoleError

__all__ = [
    "BranchedLog",
    "SqrtBranch",
    "MonodromyMatrix",
    "PathSpec",
    "as_complex",
    "principal_log",
    "branch_sqrt",
    "principal_power",
    "gamma",
    "digamma",
    "apply_monodromy",
    "is_nonpositive_integer",
]

_TWO_PI = 2.0 * math.pi


def as_complex(z) -> complex:
    """Coerce to ``complex``, dropping negative zeros and rejecting non-finite values."""
    z = complex(z)
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"non-finite complex value {z!r}")
    # x + 0.0 turns -0.0 into +0.0
    return complex(z.real + 0.0, z.imag + 0.0)


def _finite(z: complex, what: str) -> complex:
    if not (math.isfinite(z.real) and math.isfinite(z.imag)):
        raise DomainError(f"{what} overflows double precision")
    return z


def is_nonpositive_integer(z: complex) -> bool:
    z = complex(z)
    return z.imag == 0.0 and z.real <= 0.0 and z.real == math.floor(z.real)


@dataclass(frozen=True)
class BranchedLog:
    """A logarithm value ``principal + 2*pi*i*winding``."""

    principal: complex
    winding: int = 0

    @property
    def value(self) -> complex:
        return self.principal + complex(0.0, _TWO_PI * self.winding)

    def shifted(self, turns: int) -> "BranchedLog":
        return BranchedLog(self.principal, self.winding + turns)


def principal_log(z) -> BranchedLog:
    z = as_complex(z)
    if z == 0:
        raise DomainError("logarithm of zero")
    w = cmath.log(z)
    if w.imag <= -math.pi:
        # arg is -pi only for -0.0 imaginary part; a genuinely negative
        # imaginary part whose arg rounded to -pi stays just above it
        im = math.pi if z.imag == 0.0 else math.nextafter(-math.pi, 0.0)
        w = complex(w.real, im)
    return BranchedLog(w, 0)


class SqrtBranch(enum.Enum):
    PRINCIPAL = "principal"
    NEGATED = "negated"


def branch_sqrt(w, branch: SqrtBranch | str = SqrtBranch.PRINCIPAL) -> complex:
    """Square root with an explicit branch.

    For ``w`` on the negative real axis the principal root is ``+i*sqrt(|w|)``;
    the ``NEGATED`` branch gives ``-i*sqrt(|w|)``, which is the choice made
    when continuing ``K`` across ``[1, inf)`` by the split integral.
    """
    branch = SqrtBranch(branch)
    r = cmath.sqrt(as_complex(w))
    if r.real == 0.0 and r.imag < 0.0:
        r = -r
    return r if branch is SqrtBranch.PRINCIPAL else -r


def principal_power(z, p) -> complex:
    """``z**p`` through the principal logarithm."""
    z = as_complex(z)
    p = as_complex(p)
    if z == 0:
        if p.real > 0:
            return 0j
        raise DomainError("zero raised to a power with non-positive real part")
    return _finite(cmath.exp(p * principal_log(z).principal), "power")


# Lanczos approximation, g = 7, n = 9.
_LANCZOS_G = 7.0
_LANCZOS = (
    0.99999999999980993,
    676.5203681218851,
    -1259.1392167224028,
    771.32342877765313,
    -176.61502916214059,
    12.507343278686905,
    -0.13857109526572012,
    9.9843695780195716e-6,
    1.5056327351493116e-7,
)
_SQRT_2PI = math.sqrt(2.0 * math.pi)


def gamma(z) -> complex:
    """Euler Gamma function for complex arguments."""
    z = as_complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"Gamma has a pole at {z.real:g}")
    if z.real < 0.5:
        s = cmath.sin(math.pi * z)
        return _finite(math.pi / (s * gamma(1.0 - z)), "Gamma")
    z -= 1.0
    x = _LANCZOS[0]
    for k in range(1, len(_LANCZOS)):
        x += _LANCZOS[k] / (z + k)
    t = z + _LANCZOS_G + 0.5
    try:
        val = _SQRT_2PI * cmath.exp((z + 0.5) * cmath.log(t) - t) * x
    except OverflowError as exc:
        raise DomainError("Gamma overflows double precision") from exc
    return _finite(val, "Gamma")


# B_{2k} / (2k) for k = 1..9
_DIGAMMA_ASYMPTOTIC = (
    1.0 / 12.0,
    -1.0 / 120.0,
    1.0 / 252.0,
    -1.0 / 240.0,
    1.0 / 132.0,
    -691.0 / 32760.0,
    1.0 / 12.0,
    -3617.0 / 8160.0,
    43867.0 / 14364.0,
)


def digamma(z) -> complex:
    """Logarithmic derivative of Gamma.

    Reflection for ``Re z < 1/2``, then upward recurrence until ``Re z >= 8``
    and the Stirling-type asymptotic series.
    """
    z = as_complex(z)
    if is_nonpositive_integer(z):
        raise PoleError(f"digamma has a pole at {z.real:g}")
    if z.real < 0.5:
        return digamma(1.0 - z) - math.pi / cmath.tan(math.pi * z)
    acc = 0j
    while z.real < 8.0:
        acc -= 1.0 / z
        z += 1.0
    inv2 = 1.0 / (z * z)
    series = 0j
    p = inv2
    for c in _DIGAMMA_ASYMPTOTIC:
        series += c * p
        p *= inv2
    return acc + cmath.log(z) - 0.5 / z - series


@dataclass(frozen=True)
class MonodromyMatrix:
    """Invertible 2x2 complex matrix ``[[a, b], [c, d]]``.

    Acts on a column vector of basis values; composition is ordinary matrix
    product (``m1 @ m2``).
    """

    a: complex
    b: complex
    c: complex
    d: complex

    def __post_init__(self):
        if self.det() == 0:
            raise DomainError("monodromy matrix must be invertible")

    @classmethod
    def identity(cls) -> "MonodromyMatrix":
        return cls(1, 0, 0, 1)

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[complex]]) -> "MonodromyMatrix":
        (a, b), (c, d) = rows
        return cls(complex(a), complex(b), complex(c), complex(d))

    @property
    def rows(self) -> tuple[tuple[complex, complex], tuple[complex, complex]]:
        return ((self.a, self.b), (self.c, self.d))

    def det(self) -> complex:
        return self.a * self.d - self.b * self.c

    def inverse(self) -> "MonodromyMatrix":
        det = self.det()
        return MonodromyMatrix(self.d / det, -self.b / det, -self.c / det, self.a / det)

    def __matmul__(self, other: "MonodromyMatrix") -> "MonodromyMatrix":
        return MonodromyMatrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
        )

    def __pow__(self, n: int) -> "MonodromyMatrix":
        base = self if n >= 0 else self.inverse()
        out = MonodromyMatrix.identity()
        for _ in range(abs(n)):
            out = out @ base
        return out

    def max_abs_diff(self, other: "MonodromyMatrix") -> float:
        return max(
            abs(self.a - other.a),
            abs(self.b - other.b),
            abs(self.c - other.c),
            abs(self.d - other.d),
        )


def apply_monodromy(m: MonodromyMatrix, basis_values: tuple[complex, complex]) -> tuple[complex, complex]:
    u, v = basis_values
    return (m.a * u + m.b * v, m.c * u + m.d * v)


@dataclass(frozen=True)
class PathSpec:
    """Piecewise-linear path through ``waypoints``; steps never exceed ``max_step``."""

    waypoints: tuple[complex, ...]
    max_step: float = 0.05

    def __post_init__(self):
        pts = tuple(as_complex(w) for w in self.waypoints)
        object.__setattr__(self, "waypoints", pts)
        if len(pts) < 2:
            raise DomainError("a path needs at least two waypoints")
        if not (self.max_step > 0 and math.isfinite(self.max_step)):
            raise DomainError("max_step must be a positive finite number")
        for p, q in zip(pts, pts[1:]):
            if p == q:
                raise DomainError(f"consecutive waypoints coincide at {p!r}")

    @property
    def segments(self) -> Iterable[tuple[complex, complex]]:
        return zip(self.waypoints, self.waypoints[1:])

    def length(self) -> float:
        return sum(abs(q - p) for p, q in self.segments)

    def distance_to(self, point: complex) -> float:
        """Euclidean distance from ``point`` to the polyline."""
        best = math.inf
        for p, q in self.segments:
            d = q - p
            t = ((point - p) * d.conjugate()).real / abs(d) ** 2
            t = min(1.0, max(0.0, t))
            best = min(best, abs(p + t * d - point))
        return best

    def to_dict(self) -> dict:
        return {
            "max_step": self.max_step,
            "waypoints": [[w.real, w.imag] for w in self.waypoints],
        }

    @classmethod
    def from_dict(cls, data: dict) -> "PathSpec":
        unknown = set(data) - {"waypoints", "max_step"}
        if unknown:
            raise DomainError(f"unknown path keys: {sorted(unknown)}")
        try:
            pts = [complex(float(re), float(im)) for re, im in data["waypoints"]]
        except (KeyError, TypeError, ValueError) as exc:
            raise DomainError("path needs 'waypoints' as a list of [re, im] pairs") from exc
        return cls(tuple(pts), float(data.get("max_step", 0.05)))

    @classmethod
    def from_json(cls, text: str) -> "PathSpec":
        return cls.from_dict(json.loads(text))

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)

    @classmethod
    def circle(cls, center: complex, radius: float, n: int = 64, turns: int = 1,
               start_angle: float = 0.0, max_step: float = 0.05) -> "PathSpec":
        """Closed polygonal approximation of a counterclockwise circle (negative ``turns`` for clockwise)."""
        sign = 1 if turns >= 0 else -1
        total = n * abs(turns)
        pts = [
            center + radius * cmath.exp(1j * (start_angle + sign * _TWO_PI * k / n))
            for k in range(total + 1)
        ]
        pts[-1] = pts[0]
        return cls(tuple(pts), max_step)
