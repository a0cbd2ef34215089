"""Rational points of bounded height on graphs of transcendental functions.

The counter never trusts a plain float comparison.  Each abscissa ``x = p/q``
first gets a cheap vectorised double-precision enclosure of ``f(x)`` with an
explicit error margin; only enclosures that contain a rational of height
``<= H`` are re-examined with outward-rounded interval arithmetic (mpmath's
``iv`` context) at increasing precision.  A point is counted when the
candidate ``y`` survives refinement down to the certification width.

Whether the graph has an algebraic part is the caller's business: the count
is over the whole graph.
"""
from __future__ import annotations

import csv
import io
import json
import math
import warnings
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterator, Protocol, Sequence

import mpmath
import numpy as np
from mpmath import iv

from .errors import CertificationError, DegenerateDataWarning, DomainError

__all__ = [
    "height",
    "enumerate_rationals",
    "simplest_rational",
    "CertifiedCurve",
    "ExpCurve",
    "EllipticKCurve",
    "Hyp2F1Curve",
    "LinearCurve",
    "curve_from_spec",
    "count_rational_points",
    "CountReport",
    "fit_growth",
    "run_experiment",
    "DEFAULT_HEIGHTS",
    "DEFAULT_CERTIFY_TOL",
    "MAX_HEIGHT",
]

DEFAULT_HEIGHTS = (2**4, 2**6, 2**8, 2**10, 2**12)
DEFAULT_CERTIFY_TOL = 1e-30
MAX_HEIGHT = 2**20
_EPS = 2.0**-52
_SCALE_BITS = 41  # fixed-point grid for the vectorised continued fractions
_MAX_PREC = 4096


def height(r) -> int:
    r = Fraction(r)
    return max(abs(r.numerator), r.denominator)


# --------------------------------------------------------------------------
# enumeration

def _as_fraction(v) -> Fraction:
    if isinstance(v, float) and not math.isfinite(v):
        raise DomainError("interval endpoints must be finite")
    return Fraction(v)


def _farey_unit(lo: Fraction, hi: Fraction, H: int) -> Iterator[Fraction]:
    """Ascending Farey sequence of order H restricted to [lo, hi] with 0 <= lo <= hi <= 1."""
    if lo > hi:
        return
    # smallest a/b >= lo with b <= H
    a, b = min(((-(-lo.numerator * d // lo.denominator), d) for d in range(1, H + 1)),
               key=lambda t: Fraction(t[0], t[1]))
    g = math.gcd(a, b)
    a, b = a // g, b // g
    if Fraction(a, b) > hi:
        return
    yield Fraction(a, b)
    if a == b:  # reached 1
        return
    # right neighbour c/d in F_H: b c - a d = 1 with the largest d <= H
    if a == 0:
        c, d = 1, H
    else:
        c = pow(b, -1, a)
        d = (b * c - 1) // a
        t = (H - d) // b
        c, d = c + t * a, d + t * b
    while Fraction(c, d) <= hi:
        yield Fraction(c, d)
        if c == d:
            return
        k = (H + b) // d
        a, b, c, d = c, d, k * c - a, k * d - b


def enumerate_rationals(interval: Sequence, H: int) -> list[Fraction]:
    """All reduced rationals in ``[lo, hi]`` of height ``<= H``, ascending.

    Values in ``[0, 1]`` come from the Farey recurrence; values above 1 are
    reciprocals of Farey fractions (height is invariant under ``r -> 1/r``);
    negative values mirror the positive ones.
    """
    lo, hi = (_as_fraction(v) for v in interval)
    if lo > hi:
        raise DomainError("empty interval: lo > hi")
    if H < 1:
        return []

    def nonneg(a: Fraction, b: Fraction) -> list[Fraction]:
        # rationals of height <= H in [a, b], 0 <= a <= b
        out = list(_farey_unit(a, min(b, Fraction(1)), H)) if a <= 1 else []
        if b > 1:
            small = _farey_unit(1 / b, 1 / max(a, Fraction(1)), H)
            out += [1 / f for f in reversed([f for f in small if f < 1])]
        return out

    result: list[Fraction] = []
    if lo < 0:
        neg = nonneg(max(Fraction(0), -hi), -lo)
        result += [-f for f in reversed(neg) if f != 0]
    if hi >= 0:
        result += nonneg(max(lo, Fraction(0)), hi)
    return result


def simplest_rational(lo: Fraction, hi: Fraction) -> Fraction:
    """The rational of least denominator (then least |numerator|) in ``[lo, hi]``."""
    if lo > hi:
        raise DomainError("empty interval")
    if lo <= 0 <= hi:
        return Fraction(0)
    if hi < 0:
        return -simplest_rational(-hi, -lo)
    n = math.ceil(lo)
    if n <= hi:
        return Fraction(n)
    fl = math.floor(lo)
    return fl + 1 / simplest_rational(1 / (hi - fl), 1 / (lo - fl))


def _denominator_block(lo: Fraction, hi: Fraction, H: int, q: int) -> np.ndarray:
    """Reduced numerators p with p/q in [lo, hi] and height(p/q) <= H."""
    p_lo = max(-(-lo.numerator * q // lo.denominator), -H)
    p_hi = min(hi.numerator * q // hi.denominator, H)
    if p_lo > p_hi:
        return np.empty(0, dtype=np.int64)
    p = np.arange(p_lo, p_hi + 1, dtype=np.int64)
    return p[np.gcd(p, q) == 1]


# --------------------------------------------------------------------------
# certified curves

class CertifiedCurve(Protocol):
    name: str

    def check_interval(self, lo: Fraction, hi: Fraction) -> None: ...

    def enclose(self, p: np.ndarray, q: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
        """Float enclosure of f(p/q) elementwise; may be infinite where no cheap bound exists."""

    def refine(self, p: int, q: int, prec: int) -> tuple[Fraction, Fraction]:
        """Rigorous enclosure of f(p/q) using ``prec``-bit interval arithmetic."""


def _iv_bounds(v) -> tuple[Fraction, Fraction]:
    a, b = v._mpi_
    try:
        return (
            Fraction(*mpmath.libmp.to_rational(a)),
            Fraction(*mpmath.libmp.to_rational(b)),
        )
    except (ValueError, OverflowError, ZeroDivisionError) as exc:
        raise CertificationError("interval enclosure is unbounded") from exc


class _IvPrec:
    """Set the global ``iv`` precision for a block (mpmath's iv context has no workprec)."""

    def __init__(self, prec: int):
        self.prec = prec

    def __enter__(self):
        self.saved = iv.prec
        iv.prec = self.prec

    def __exit__(self, *exc):
        iv.prec = self.saved


def _outward(y: np.ndarray, err: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    lo = np.nextafter(y - err, -np.inf)
    hi = np.nextafter(y + err, np.inf)
    bad = ~np.isfinite(lo) | ~np.isfinite(hi)
    lo[bad] = -np.inf
    hi[bad] = np.inf
    return lo, hi


@dataclass(frozen=True)
class ExpCurve:
    name: str = "exp"

    def check_interval(self, lo, hi):
        if hi > 700 or lo < -700:
            raise DomainError("exp curve is limited to [-700, 700]")

    def enclose(self, p, q):
        x = p / q  # correctly rounded: |x - p/q| <= |x| eps/2
        y = np.exp(x)
        # 8 ulp for the library exp, plus the propagated rounding of x
        err = np.abs(y) * (8 * _EPS + np.abs(x) * _EPS)
        return _outward(y, err)

    def refine(self, p, q, prec):
        with _IvPrec(prec):
            return _iv_bounds(iv.exp(iv.mpf(p) / q))


@dataclass(frozen=True)
class EllipticKCurve:
    """``x -> K(x)`` restricted to real ``x < 1``, evaluated through the AGM."""

    name: str = "k"

    def check_interval(self, lo, hi):
        if hi >= 1:
            raise DomainError("K curve needs hi < 1 (logarithmic singularity at 1)")

    def enclose(self, p, q):
        m = p / q
        a = np.ones_like(m)
        b = np.sqrt(1.0 - m)
        for _ in range(64):
            a, b = 0.5 * (a + b), np.sqrt(a * b)
            if np.all(np.abs(a - b) <= 4 * _EPS * a):
                break
        y = 0.5 * math.pi / a
        # rounding through ~10 AGM steps, plus |K'(m)| <= 1/(1-m) times the rounding of m
        err = np.abs(y) * 32 * _EPS + np.abs(m) * _EPS / (1.0 - m)
        return _outward(y, err)

    def refine(self, p, q, prec):
        with _IvPrec(prec):
            m = iv.mpf(p) / q
            a = iv.mpf(1)
            b = iv.sqrt(1 - m)
            for _ in range(4 * prec):
                a, b = (a + b) / 2, iv.sqrt(a * b)
                lo = min(a.a, b.a)
                hi = max(a.b, b.b)
                if (hi - lo) < iv.mpf(2) ** (-prec + 8):
                    break
            # the AGM lies between the two means at every step
            hull = iv.mpf([min(a.a, b.a), max(a.b, b.b)])
            return _iv_bounds(iv.pi / (2 * hull))


@dataclass(frozen=True)
class Hyp2F1Curve:
    """``x -> 2F1(a, b; c; x)`` for rational real parameters on ``|x| <= 0.8``."""

    a: Fraction
    b: Fraction
    c: Fraction
    name: str = "f21"

    def __post_init__(self):
        for k in ("a", "b", "c"):
            object.__setattr__(self, k, Fraction(getattr(self, k)))
        if self.c <= 0 and self.c.denominator == 1:
            raise DomainError("c must not be zero or a negative integer")

    def check_interval(self, lo, hi):
        if max(abs(lo), abs(hi)) > Fraction(4, 5):
            raise DomainError("f21 curve is limited to |x| <= 0.8")

    def _tail_start(self) -> int:
        return int(abs(self.c)) + 2

    def enclose(self, p, q):
        x = p / q
        a, b, c = float(self.a), float(self.b), float(self.c)
        term = np.ones_like(x)
        total = np.zeros_like(x)
        mag = np.zeros_like(x)
        dmag = np.zeros_like(x)
        ax = np.abs(x)
        A, B, C = abs(a), abs(b), abs(c)
        n0 = self._tail_start()
        tail = np.full_like(x, np.inf)
        for n in range(2000):
            if n >= n0:
                r = (n + A) / (n - C) * max(1.0, (n + B) / (n + 1))
                qn = ax * r
                ok = qn < 1
                tail = np.where(ok, np.abs(term) / np.where(ok, 1 - qn, 1.0), np.inf)
                if np.all(tail <= 1e-18 * np.maximum(1.0, mag)):
                    break
            total = total + term
            mag = mag + np.abs(term)
            dmag = dmag + n * np.abs(term)
            term = term * ((a + n) * (b + n) / ((c + n) * (n + 1))) * x
            if not np.any(term):
                tail = np.zeros_like(x)
                break
        # truncation + summation rounding + rounding of x (|x F'(x)| <= sum n |t_n|)
        err = tail + mag * (4 * n + 8) * _EPS + 2 * _EPS * dmag
        return _outward(total, err)

    def refine(self, p, q, prec):
        with _IvPrec(prec):
            x = iv.mpf(p) / q
            a, b, c = (iv.mpf(v.numerator) / v.denominator for v in (self.a, self.b, self.c))
            ax = abs(Fraction(p, q))
            A, B, C = abs(self.a), abs(self.b), abs(self.c)
            term = iv.mpf(1)
            total = iv.mpf(0)
            target = Fraction(1, 2**prec)
            n0 = self._tail_start()
            for n in range(100 * prec):
                if n >= n0:
                    r = Fraction(n + A, 1) / (n - C) * max(Fraction(1), (n + B) / (n + 1))
                    qn = ax * r
                    if qn < 1:
                        t_hi = _iv_bounds(abs(term))[1]
                        bound = t_hi / (1 - qn)
                        if bound <= target:
                            bound_iv = iv.mpf([-_to_mpf_up(bound), _to_mpf_up(bound)])
                            return _iv_bounds(total + bound_iv)
                total = total + term
                term = term * ((a + n) * (b + n) / ((c + n) * (n + 1))) * x
                if term == 0:
                    return _iv_bounds(total)
            raise CertificationError("2F1 series enclosure did not converge")


def _to_mpf_up(v: Fraction):
    # an mpf >= v
    return mpmath.mpf(v.numerator) / v.denominator * (1 + mpmath.mpf(2) ** -40) + mpmath.mpf(2) ** -4000


@dataclass(frozen=True)
class LinearCurve:
    """``x -> slope * x + intercept`` with rational coefficients (exact test curve)."""

    slope: Fraction
    intercept: Fraction
    name: str = "linear"

    def __post_init__(self):
        object.__setattr__(self, "slope", Fraction(self.slope))
        object.__setattr__(self, "intercept", Fraction(self.intercept))

    def check_interval(self, lo, hi):
        return None

    def enclose(self, p, q):
        x = p / q
        y = float(self.slope) * x + float(self.intercept)
        err = (np.abs(y) + abs(float(self.slope)) * np.abs(x) + abs(float(self.intercept))) * 4 * _EPS
        return _outward(y, err)

    def refine(self, p, q, prec):
        y = self.slope * Fraction(p, q) + self.intercept
        return y, y


def curve_from_spec(spec: str) -> CertifiedCurve:
    """``exp``, ``k``, ``f21:a,b,c`` or ``linear:m,c`` (rationals like ``1/3`` allowed)."""
    name, _, args = spec.partition(":")
    try:
        vals = [Fraction(v.strip()) for v in args.split(",")] if args else []
    except (ValueError, ZeroDivisionError):
        raise DomainError(f"bad curve parameters in {spec!r}") from None
    if name == "exp" and not vals:
        return ExpCurve()
    if name == "k" and not vals:
        return EllipticKCurve()
    if name == "f21" and len(vals) == 3:
        return Hyp2F1Curve(*vals)
    if name == "linear" and len(vals) == 2:
        return LinearCurve(*vals)
    raise DomainError(f"unknown curve {spec!r}; expected exp, k, f21:a,b,c or linear:m,c")


# --------------------------------------------------------------------------
# counting

def _convergent_candidates(ylo: np.ndarray, yhi: np.ndarray, H: int):
    """Indices and (num, den) of the unique rational of height <= H in each narrow enclosure.

    Relies on Legendre's theorem: a rational a/b within 1/(2b^2) of y is a
    convergent of y.  The midpoint is rounded to a 2^-41 grid, which keeps
    that margin for enclosures narrower than 1/(4H^2) when H <= 2^20.
    """
    mid = 0.5 * (ylo + yhi)
    ids = np.arange(mid.size)
    sign = np.where(mid < 0, -1, 1).astype(np.int64)
    num = np.rint(np.abs(mid) * 2.0**_SCALE_BITS).astype(np.int64)
    den = np.full_like(num, 2**_SCALE_BITS)
    h_prev, h = np.zeros_like(num), np.ones_like(num)  # h_{-2}, h_{-1}
    k_prev, k = np.ones_like(num), np.zeros_like(num)
    lo_, hi_ = ylo, yhi
    hits_i, hits_p, hits_q = [], [], []
    for _ in range(128):
        if ids.size == 0:
            break
        a = num // den
        rem = num - a * den
        # cap the partial quotient so the next denominator stays near H (no overflow)
        cap = np.where(k > 0, (H - k_prev) // np.maximum(k, 1) + 1, a)
        a_eff = np.minimum(a, np.maximum(cap, 0))
        h_new = a_eff * h + h_prev
        k_new = a_eff * k + k_prev
        ok = (k_new <= H) & (h_new <= H)
        val = np.where(ok, sign * h_new / np.maximum(k_new, 1), np.nan)
        width = hi_ - lo_
        inside = ok & (val >= lo_ - width) & (val <= hi_ + width)
        for j in np.nonzero(inside)[0]:
            hits_i.append(int(ids[j]))
            hits_p.append(int(sign[j] * h_new[j]))
            hits_q.append(int(k_new[j]))
        # at most one rational of height <= H fits, so a hit ends the search
        keep = ~inside & (k_new <= H) & (rem != 0) & (a_eff == a)
        ids, sign, lo_, hi_ = ids[keep], sign[keep], lo_[keep], hi_[keep]
        h_prev, h = h[keep], h_new[keep]
        k_prev, k = k[keep], k_new[keep]
        num, den = den[keep], rem[keep]
    return hits_i, hits_p, hits_q


def _certify(curve: CertifiedCurve, p: int, q: int, H: int, target: Fraction,
             lo: Fraction | None = None, hi: Fraction | None = None,
             y: Fraction | None = None) -> bool:
    """Refine f(p/q) until ``y`` is excluded or the enclosure is narrower than ``target``.

    Without ``y`` the candidate is found once the enclosure is narrower than
    the gap between rationals of height ``<= H``.
    """
    gap = Fraction(1, 4 * H * H)
    prec = 64
    while prec <= _MAX_PREC:
        r_lo, r_hi = curve.refine(p, q, prec)
        lo = r_lo if lo is None else max(lo, r_lo)
        hi = r_hi if hi is None else min(hi, r_hi)
        if lo > hi:
            raise CertificationError(f"inconsistent enclosures at x = {p}/{q}")
        if y is None and hi - lo < gap:
            cand = simplest_rational(lo, hi)
            if height(cand) > H:
                return False
            y = cand
        if y is not None:
            if not lo <= y <= hi:
                return False
            if hi - lo <= target:
                return True
        prec *= 2
    raise CertificationError(
        f"enclosure of f({p}/{q}) could not be refined below {float(target):.3g}"
    )


_BATCH = 1 << 17


def _batches(lo: Fraction, hi: Fraction, H: int, qs: Sequence[int]) -> Iterator[tuple[np.ndarray, np.ndarray]]:
    ps: list[np.ndarray] = []
    qq: list[np.ndarray] = []
    size = 0
    for q in qs:
        p = _denominator_block(lo, hi, H, q)
        if p.size:
            ps.append(p)
            qq.append(np.full(p.size, q, dtype=np.int64))
            size += p.size
        if size >= _BATCH:
            yield np.concatenate(ps), np.concatenate(qq)
            ps, qq, size = [], [], 0
    if size:
        yield np.concatenate(ps), np.concatenate(qq)


def _count_block(args) -> int:
    curve, lo, hi, H, qs, target = args
    total = 0
    gap = 1.0 / (4.0 * H * H)
    for p, q in _batches(lo, hi, H, qs):
        ylo, yhi = curve.enclose(p, q)
        finite = np.isfinite(ylo) & np.isfinite(yhi)
        narrow = finite & (yhi - ylo < gap) & (np.abs(ylo) <= H + 1)
        # enclosures entirely beyond +-H cannot hold a rational of height <= H
        far = finite & ((ylo > H) | (yhi < -H))
        wide = ~narrow & ~far
        idx_n = np.nonzero(narrow)[0]
        if idx_n.size:
            hit_i, hit_p, hit_q = _convergent_candidates(ylo[idx_n], yhi[idx_n], H)
            for j, yp, yq in zip(hit_i, hit_p, hit_q):
                k = idx_n[j]
                y = Fraction(yp, yq)
                flo, fhi = Fraction(float(ylo[k])), Fraction(float(yhi[k]))
                if flo <= y <= fhi and _certify(curve, int(p[k]), int(q[k]), H, target, flo, fhi, y):
                    total += 1
        for k in np.nonzero(wide)[0]:
            if _certify(curve, int(p[k]), int(q[k]), H, target):
                total += 1
    return total


def count_rational_points(
    curve: CertifiedCurve,
    interval: Sequence,
    H: int,
    certify_tol: float = DEFAULT_CERTIFY_TOL,
    jobs: int = 1,
) -> int:
    """Number of rational ``x`` in the interval, height ``<= H``, with ``f(x)`` rational of height ``<= H``.

    A point counts when the candidate ``y`` stays inside enclosures refined to
    width ``<= min(certify_tol, 1/(4 H^2))``.  Work is split by denominator
    blocks; with ``jobs > 1`` the blocks run in worker processes and the
    integer sum is independent of scheduling.
    """
    lo, hi = (_as_fraction(v) for v in interval)
    if lo > hi:
        raise DomainError("empty interval: lo > hi")
    if H < 1:
        return 0
    if H > MAX_HEIGHT:
        raise DomainError(f"H must be <= {MAX_HEIGHT}")
    if not certify_tol > 0:
        raise DomainError("certify_tol must be positive")
    curve.check_interval(lo, hi)
    target = min(Fraction(certify_tol), Fraction(1, 4 * H * H))
    qs = list(range(1, H + 1))
    if jobs <= 1:
        return _count_block((curve, lo, hi, H, qs, target))
    blocks = [qs[i::jobs] for i in range(jobs)]
    with ProcessPoolExecutor(max_workers=jobs) as pool:
        parts = list(pool.map(_count_block, [(curve, lo, hi, H, b, target) for b in blocks]))
    return sum(parts)


# --------------------------------------------------------------------------
# growth fits

@dataclass
class CountReport:
    heights: list[int]
    counts: list[float]
    alpha_power: float | None = None
    alpha_log: float | None = None
    residuals: tuple[float, float] | None = None
    curve: str = ""
    interval: tuple[float, float] | None = None
    notes: list[str] = field(default_factory=list)

    def __post_init__(self):
        if len(self.heights) != len(self.counts):
            raise DomainError("heights and counts differ in length")
        if any(b <= a for a, b in zip(self.heights, self.heights[1:])):
            raise DomainError("heights must be strictly increasing")
        if any(c < 0 for c in self.counts):
            raise DomainError("counts must be non-negative")
        if any(b < a for a, b in zip(self.counts, self.counts[1:])):
            raise DomainError("counts must be non-decreasing in H")

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["H", "N"])
        for h, n in zip(self.heights, self.counts):
            w.writerow([h, n])
        return buf.getvalue()

    def to_dict(self) -> dict:
        return {
            "alpha_log": self.alpha_log,
            "alpha_power": self.alpha_power,
            "counts": list(self.counts),
            "curve": self.curve,
            "heights": list(self.heights),
            "interval": list(self.interval) if self.interval else None,
            "notes": list(self.notes),
            "residuals": list(self.residuals) if self.residuals else None,
        }

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), sort_keys=True)


def _lsq_slope(u: np.ndarray, v: np.ndarray) -> tuple[float, float]:
    A = np.column_stack([u, np.ones_like(u)])
    (slope, icpt), *_ = np.linalg.lstsq(A, v, rcond=None)
    resid = float(np.sqrt(np.mean((A @ [slope, icpt] - v) ** 2)))
    return float(slope), resid


def fit_growth(heights: Sequence[int], counts: Sequence[float]) -> CountReport:
    """Least-squares exponents for ``N ~ c H^alpha`` and ``N ~ c (log H)^alpha``.

    Needs at least four distinct heights above 1 and all counts ``>= 1``.
    Constant counts give both exponents 0 with zero residuals and a
    ``DegenerateDataWarning``.
    """
    pairs = sorted(zip(heights, counts))
    hs = [h for h, _ in pairs]
    ns = [n for _, n in pairs]
    if len(set(hs)) != len(hs):
        raise DomainError("heights must be distinct")
    if len(hs) < 4:
        raise DomainError("need at least 4 distinct heights")
    if min(hs) <= 1:
        raise DomainError("heights must exceed 1 for the log-log fit")
    if min(ns) < 1:
        raise DomainError("counts must be >= 1 for logarithmic fits")
    report = CountReport(hs, ns)
    if len(set(ns)) == 1:
        warnings.warn("all counts are equal; growth exponents set to 0", DegenerateDataWarning, stacklevel=2)
        report.alpha_power = 0.0
        report.alpha_log = 0.0
        report.residuals = (0.0, 0.0)
        report.notes.append("degenerate: constant counts")
        return report
    H = np.array(hs, dtype=float)
    N = np.log(np.array(ns, dtype=float))
    a_pow, r_pow = _lsq_slope(np.log(H), N)
    a_log, r_log = _lsq_slope(np.log(np.log(H)), N)
    report.alpha_power = a_pow
    report.alpha_log = a_log
    report.residuals = (r_pow, r_log)
    return report


def run_experiment(
    curve: CertifiedCurve,
    interval: Sequence,
    heights: Sequence[int] = DEFAULT_HEIGHTS,
    certify_tol: float = DEFAULT_CERTIFY_TOL,
    jobs: int = 1,
) -> CountReport:
    """Counts over a height ladder plus both growth fits (when the data allow them)."""
    hs = sorted(set(int(h) for h in heights))
    counts = [count_rational_points(curve, interval, h, certify_tol, jobs) for h in hs]
    lo, hi = (float(v) for v in interval)
    try:
        with warnings.catch_warnings(record=True) as caught:
            warnings.simplefilter("always", DegenerateDataWarning)
            report = fit_growth(hs, counts)
        report.notes += [str(w.message) for w in caught if w.category is not DegenerateDataWarning]
    except DomainError as exc:
        report = CountReport(hs, counts)
        report.notes.append(f"no fit: {exc}")
    report.curve = curve.name if not isinstance(curve, Hyp2F1Curve) else (
        f"f21:{curve.a},{curve.b},{curve.c}"
    )
    report.interval = (lo, hi)
    return report
