"""Pfaffian and Noetherian chains: symbolic tables, verification, constructions, integration.

A chain over base variables ``x_1..x_n`` is an ordered list of functions
``f_1..f_N`` with ``d f_i / d x_j = P_{i,j}(x, f)`` for polynomials ``P``.
Everything symbolic is exact (``Poly`` with rational coefficients); floating
point only appears in :func:`integrate_chain`.
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from typing import Callable, Mapping, Sequence

import numpy as np

from .errors import (
    BlowupError,
    ChainSyntaxError,
    CompositionError,
    DomainError,
    StepError,
)
from .ode import dopri45
from .poly import Poly, parse_number, parse_poly

__all__ = [
    "ChainFunction",
    "ChainSpec",
    "ChainVerdict",
    "BLOWUP_LIMIT",
    "verify_chain",
    "total_derivative",
    "closure_sum",
    "closure_product",
    "closure_reciprocal",
    "pull_back",
    "first_order_linear_chain",
    "riccati_system",
    "hypergeometric_riccati",
    "integrate_chain",
    "table_residual",
    "parse_chain",
    "dump_chain",
]

BLOWUP_LIMIT = 1e12
KINDS = ("pfaffian", "noetherian")


@dataclass(frozen=True)
class ChainFunction:
    name: str
    table: tuple[Poly, ...]

    def __post_init__(self):
        object.__setattr__(self, "table", tuple(Poly.coerce(p) for p in self.table))


@dataclass(frozen=True)
class ChainSpec:
    base_vars: tuple[str, ...]
    functions: tuple[ChainFunction, ...]
    base_point: tuple[float, ...]
    initial_values: tuple[float, ...]
    declared_kind: str = "pfaffian"

    def __post_init__(self):
        object.__setattr__(self, "base_vars", tuple(self.base_vars))
        object.__setattr__(self, "functions", tuple(self.functions))
        object.__setattr__(self, "base_point", tuple(float(v) for v in self.base_point))
        object.__setattr__(self, "initial_values", tuple(float(v) for v in self.initial_values))
        n = len(self.base_vars)
        if len(self.base_point) != n:
            raise DomainError(f"base point has {len(self.base_point)} coordinates, expected {n}")
        if len(self.initial_values) != len(self.functions):
            raise DomainError(
                f"{len(self.initial_values)} initial values for {len(self.functions)} functions"
            )
        names = list(self.base_vars) + [f.name for f in self.functions]
        if len(set(names)) != len(names):
            raise DomainError("variable and function names must be distinct")
        for f in self.functions:
            if len(f.table) != n:
                raise DomainError(f"function {f.name} has {len(f.table)} table entries, expected {n}")
        if self.declared_kind not in KINDS:
            raise DomainError(f"kind must be one of {KINDS}")

    @property
    def n_base_vars(self) -> int:
        return len(self.base_vars)

    @property
    def names(self) -> tuple[str, ...]:
        return tuple(f.name for f in self.functions)

    def index(self, key: int | str) -> int:
        if isinstance(key, str):
            try:
                return self.names.index(key)
            except ValueError:
                raise DomainError(f"no chain function named {key!r}") from None
        if not 0 <= key < len(self.functions):
            raise DomainError(f"chain index {key} out of range")
        return key

    def tables(self) -> dict[str, tuple[Poly, ...]]:
        return {f.name: f.table for f in self.functions}

    def extended(self, fn: ChainFunction, value: float, kind: str | None = None) -> "ChainSpec":
        return ChainSpec(
            self.base_vars,
            self.functions + (fn,),
            self.base_point,
            self.initial_values + (value,),
            kind or self.declared_kind,
        )


@dataclass(frozen=True)
class ChainVerdict:
    kind: str  # "pfaffian" | "noetherian" | "invalid"
    witness: str = ""
    triple: tuple[int, int, int] | None = None


def total_derivative(expr: Poly, spec_tables: Mapping[str, Sequence[Poly]], base_vars: Sequence[str], k: int) -> Poly:
    """``D_k expr = d expr/d x_k + sum_l d expr/d f_l * P_{l,k}``."""
    out = expr.diff(base_vars[k])
    used = expr.variables()
    for name, table in spec_tables.items():
        if name in used:
            out = out + expr.diff(name) * table[k]
    return out


def verify_chain(spec: ChainSpec) -> ChainVerdict:
    """Classify a chain as pfaffian, noetherian or invalid.

    Checks run in order: every table references only known names; the
    integrability identity ``D_k P_{i,j} = D_j P_{i,k}`` holds exactly; the
    tables are triangular.  The first failure is reported as the witness.
    Indices in ``triple`` are 1-based ``(i, j, k)``.
    """
    known = set(spec.base_vars) | set(spec.names)
    for i, f in enumerate(spec.functions, 1):
        for j, p in enumerate(f.table, 1):
            unknown = sorted(p.variables() - known)
            if unknown:
                return ChainVerdict(
                    "invalid",
                    f"d{f.name}/d{spec.base_vars[j - 1]} references unknown variable {unknown[0]}",
                    (i, j, j),
                )
    tables = spec.tables()
    bv = spec.base_vars
    for i, f in enumerate(spec.functions, 1):
        for j in range(spec.n_base_vars):
            for k in range(j + 1, spec.n_base_vars):
                lhs = total_derivative(f.table[j], tables, bv, k)
                rhs = total_derivative(f.table[k], tables, bv, j)
                if lhs != rhs:
                    return ChainVerdict(
                        "invalid",
                        f"integrability fails for {f.name}: D_{bv[k]} of d/d{bv[j]} differs from "
                        f"D_{bv[j]} of d/d{bv[k]} by {lhs - rhs}",
                        (i, j + 1, k + 1),
                    )
    order = {name: pos for pos, name in enumerate(spec.names)}
    for i, f in enumerate(spec.functions):
        for p in f.table:
            later = sorted((order[v], v) for v in p.variables() if v in order and order[v] > i)
            if later:
                return ChainVerdict(
                    "noetherian",
                    f"{f.name} depends on later function {later[0][1]}",
                )
    return ChainVerdict("pfaffian", "triangular and integrable")


# --------------------------------------------------------------------------
# closure operations

def _checked(spec: ChainSpec, reduced: ChainFunction, raw: ChainFunction, value: float) -> ChainSpec:
    """Prefer the simplified table; fall back to the raw product-rule table."""
    cand = spec.extended(reduced, value)
    if reduced == raw or verify_chain(cand).kind != "invalid":
        return cand
    return spec.extended(raw, value)


def _fresh(spec: ChainSpec, name: str) -> str:
    taken = set(spec.base_vars) | set(spec.names)
    out = name
    n = 2
    while out in taken:
        out = f"{name}_{n}"
        n += 1
    return out


def closure_sum(spec: ChainSpec, i: int | str, j: int | str, name: str | None = None) -> ChainSpec:
    """Append ``f_i + f_j`` to the chain."""
    a, b = spec.index(i), spec.index(j)
    fa, fb = spec.functions[a], spec.functions[b]
    new = _fresh(spec, name or f"{fa.name}_plus_{fb.name}")
    fn = ChainFunction(new, tuple(p + q for p, q in zip(fa.table, fb.table)))
    return spec.extended(fn, spec.initial_values[a] + spec.initial_values[b])


def closure_product(spec: ChainSpec, i: int | str, j: int | str, name: str | None = None) -> ChainSpec:
    """Append ``f_i * f_j``; occurrences of ``f_i f_j`` in the new table are folded into the new symbol."""
    a, b = spec.index(i), spec.index(j)
    fa, fb = spec.functions[a], spec.functions[b]
    new = _fresh(spec, name or f"{fa.name}_times_{fb.name}")
    va, vb = Poly.var(fa.name), Poly.var(fb.name)
    raw = tuple(p * vb + va * q for p, q in zip(fa.table, fb.table))
    red = tuple(p.reduce_product([fa.name, fb.name], Poly.var(new)) for p in raw)
    value = spec.initial_values[a] * spec.initial_values[b]
    return _checked(spec, ChainFunction(new, red), ChainFunction(new, raw), value)


def closure_reciprocal(spec: ChainSpec, i: int | str, name: str | None = None) -> ChainSpec:
    """Append ``r = 1/f_i`` with ``dr = -r^2 df_i``, simplified with ``r f_i = 1``."""
    a = spec.index(i)
    fa = spec.functions[a]
    f0 = spec.initial_values[a]
    if f0 == 0:
        raise ZeroDivisionError(f"{fa.name} vanishes at the base point")
    new = _fresh(spec, name or f"inv_{fa.name}")
    r = Poly.var(new)
    raw = tuple(-(r * r) * p for p in fa.table)
    red = tuple(p.reduce_product([new, fa.name], Poly.const(1)) for p in raw)
    return _checked(spec, ChainFunction(new, red), ChainFunction(new, raw), 1.0 / f0)


# --------------------------------------------------------------------------
# pull-back

def pull_back(
    spec: ChainSpec,
    map_chain: ChainSpec,
    coordinates: Sequence[Poly | str | int],
) -> ChainSpec:
    """Compose ``spec`` (over y-space) with a map ``Phi`` built from ``map_chain`` (over x-space).

    Each coordinate of ``Phi`` is a polynomial in the map chain's base
    variables and functions; an integer selects a map-chain function.  The
    result lists the map-chain functions followed by ``g_i = f_i o Phi``.
    """
    if len(coordinates) != spec.n_base_vars:
        raise CompositionError(
            f"map has {len(coordinates)} coordinates but the chain has {spec.n_base_vars} base variables"
        )
    map_names = set(map_chain.base_vars) | set(map_chain.names)
    phi: list[Poly] = []
    for c in coordinates:
        if isinstance(c, int) and not isinstance(c, bool):
            phi.append(Poly.var(map_chain.functions[map_chain.index(c)].name))
        elif isinstance(c, str):
            phi.append(parse_poly(c, allowed=map_names))
        elif isinstance(c, Poly):
            extra = c.variables() - map_names
            if extra:
                raise CompositionError(f"coordinate uses names outside the map chain: {sorted(extra)}")
            phi.append(c)
        else:
            raise CompositionError(f"bad coordinate {c!r}")

    rename: dict[str, str] = {}
    taken = set(map_names)
    for name in spec.names:
        new = name
        while new in taken:
            new = new + "_pb"
        taken.add(new)
        rename[name] = new
    subst: dict[str, Poly] = {y: p for y, p in zip(spec.base_vars, phi)}
    subst.update({old: Poly.var(new) for old, new in rename.items()})

    map_tables = map_chain.tables()
    dphi = [
        [total_derivative(p, map_tables, map_chain.base_vars, k) for k in range(map_chain.n_base_vars)]
        for p in phi
    ]
    new_funcs = []
    for f in spec.functions:
        composed = [p.subs(subst) for p in f.table]
        table = []
        for k in range(map_chain.n_base_vars):
            acc = Poly()
            for j, pj in enumerate(composed):
                acc = acc + pj * dphi[j][k]
            table.append(acc)
        new_funcs.append(ChainFunction(rename[f.name], tuple(table)))

    # initial values of g at the map chain's base point
    env = dict(zip(map_chain.base_vars, map_chain.base_point))
    env.update(zip(map_chain.names, map_chain.initial_values))
    y0 = tuple(float(p.evaluate(env)) for p in phi)
    if all(math.isclose(a, b, rel_tol=0, abs_tol=1e-14) for a, b in zip(y0, spec.base_point)):
        g0 = spec.initial_values
    else:
        try:
            g0 = tuple(integrate_chain(spec, [spec.base_point, y0])[-1])
        except (BlowupError, StepError) as exc:
            raise DomainError(
                f"image of the base point {y0} is outside the chain's domain: {exc}"
            ) from exc
    return ChainSpec(
        map_chain.base_vars,
        map_chain.functions + tuple(new_funcs),
        map_chain.base_point,
        map_chain.initial_values + tuple(g0),
        "noetherian",
    )


# --------------------------------------------------------------------------
# chains derived from holomorphic ODEs

def _poly(p, allowed=None) -> Poly:
    if isinstance(p, str):
        return parse_poly(p, allowed=allowed)
    return Poly.coerce(p)


def first_order_linear_chain(
    g_re,
    g_im,
    base_point: Sequence[float],
    init: Sequence[float],
    h_re=None,
    h_im=None,
    particular_init: Sequence[float] | None = None,
    base_vars: tuple[str, str] = ("x", "y"),
) -> ChainSpec:
    """Pfaffian chain for ``f' = g f (+ h)`` with ``g = a + ib`` holomorphic polynomial.

    The homogeneous solution ``f0 = u + iv`` is encoded as
    ``q0 = u/v, q1 = 1/v, q2 = v, q3 = u`` (requires ``v != 0`` at the base
    point).  With ``h`` given, variation of parameters adds
    ``s = 1/|f0|^2``, ``c = c1 + i c2`` with ``c' = h/f0``, and the real and
    imaginary parts ``U, V`` of ``f = c f0``; ``particular_init`` is ``f`` at
    the base point (default 0).
    """
    x, y = base_vars
    allowed = set(base_vars)
    a = _poly(g_re, allowed)
    b = _poly(g_im, allowed)
    u0, v0 = (float(t) for t in init)
    if v0 == 0:
        raise DomainError("Im f0 vanishes at the base point; q0 = u/v is undefined there")
    q0, q1, q2, q3 = (Poly.var(n) for n in ("q0", "q1", "q2", "q3"))
    one = Poly.const(1)
    funcs = [
        ChainFunction("q0", (-b * (one + q0 * q0), -a * (one + q0 * q0))),
        ChainFunction("q1", (-(b * q0 + a) * q1, -(a * q0 - b) * q1)),
        ChainFunction("q2", ((b * q0 + a) * q2, (a * q0 - b) * q2)),
        ChainFunction("q3", ((a * q0 - b) * q2, -(b * q0 + a) * q2)),
    ]
    values = [u0 / v0, 1.0 / v0, v0, u0]
    if h_re is None and h_im is None:
        return ChainSpec(base_vars, funcs, base_point, values, "pfaffian")

    h1 = _poly(h_re if h_re is not None else 0, allowed)
    h2 = _poly(h_im if h_im is not None else 0, allowed)
    s, c1, c2 = Poly.var("s"), Poly.var("c1"), Poly.var("c2")
    # u is written as q0*q2 here: with q3 the identity only holds modulo q3 = q0 q2
    u_ = q0 * q2
    re_part = (h1 * u_ + h2 * q2) * s  # Re(h / f0)
    im_part = (h2 * u_ - h1 * q2) * s  # Im(h / f0)
    funcs += [
        ChainFunction("s", (-2 * a * s, 2 * b * s)),
        ChainFunction("c1", (re_part, -im_part)),
        ChainFunction("c2", (im_part, re_part)),
    ]
    tables = {f.name: f.table for f in funcs}
    U = c1 * u_ - c2 * q2
    V = c1 * q2 + c2 * u_
    funcs += [
        ChainFunction("u", tuple(total_derivative(U, tables, base_vars, k) for k in range(2))),
        ChainFunction("v", tuple(total_derivative(V, tables, base_vars, k) for k in range(2))),
    ]
    U0, V0 = (float(t) for t in (particular_init or (0.0, 0.0)))
    f0 = complex(u0, v0)
    c0 = complex(U0, V0) / f0
    values += [1.0 / abs(f0) ** 2, c0.real, c0.imag, U0, V0]
    return ChainSpec(base_vars, funcs, base_point, values, "pfaffian")


def riccati_system(
    a1_re,
    a1_im,
    a0_re,
    a0_im,
    base_point: Sequence[float],
    init: Sequence[float],
    prefix: ChainSpec | None = None,
    names: tuple[str, str] = ("u", "v"),
) -> ChainSpec:
    """Noetherian chain for ``q = u + iv`` solving ``q' + q^2 + a1 q + a0 = 0``.

    The coefficients are polynomials in the base variables ``x, y`` and,
    when ``prefix`` is given, in that chain's functions; the prefix chain is
    kept in front of ``(u, v)``.  Holomorphy gives ``u_y = -v_x``, ``v_y = u_x``.
    """
    base_vars = prefix.base_vars if prefix is not None else ("x", "y")
    if len(base_vars) != 2:
        raise DomainError("Riccati chains live over two real base variables")
    allowed = set(base_vars) | (set(prefix.names) if prefix is not None else set())
    A1, B1, A0, B0 = (_poly(p, allowed) for p in (a1_re, a1_im, a0_re, a0_im))
    u, v = Poly.var(names[0]), Poly.var(names[1])
    ux = -(u * u - v * v + A1 * u - B1 * v + A0)
    vx = -(2 * u * v + B1 * u + A1 * v + B0)
    funcs = (ChainFunction(names[0], (ux, -vx)), ChainFunction(names[1], (vx, ux)))
    if prefix is None:
        return ChainSpec(base_vars, funcs, base_point, tuple(init), "noetherian")
    if tuple(float(t) for t in base_point) != prefix.base_point:
        raise DomainError("Riccati base point must match the prefix chain's base point")
    return ChainSpec(
        base_vars,
        prefix.functions + funcs,
        prefix.base_point,
        prefix.initial_values + tuple(float(t) for t in init),
        "noetherian",
    )


# complex polynomials as (re, im) pairs of real Polys
def _cmul(p, q):
    return (p[0] * q[0] - p[1] * q[1], p[0] * q[1] + p[1] * q[0])


def _cadd(p, q):
    return (p[0] + q[0], p[1] + q[1])


def _cconst(c):
    return (Poly.const(c), Poly())


def hypergeometric_riccati(
    a,
    b,
    c,
    base_point: Sequence[float],
    q_init: complex,
) -> ChainSpec:
    """Riccati chain for ``q = Y'/Y`` with ``Y`` solving the hypergeometric equation.

    ``a1 = (c - (a+b+1) z) w`` and ``a0 = -ab w`` with ``w = 1/(z - z^2)``;
    ``w = R + iI`` is carried as a two-function prefix chain using
    ``w' = -(1 - 2z) w^2``.  ``a, b, c`` must be real rationals (floats are
    converted exactly).
    """
    a, b, c = (Fraction(t) for t in (a, b, c))
    x0, y0 = (float(t) for t in base_point)
    z0 = complex(x0, y0)
    if z0 in (0, 1):
        raise DomainError("base point must avoid the singular points z = 0 and z = 1")
    z = (Poly.var("x"), Poly.var("y"))
    w = (Poly.var("wr"), Poly.var("wi"))
    one_minus_2z = _cadd(_cconst(1), _cmul(_cconst(-2), z))
    dw = _cmul(_cmul(_cconst(-1), one_minus_2z), _cmul(w, w))
    prefix = ChainSpec(
        ("x", "y"),
        (
            ChainFunction("wr", (dw[0], -dw[1])),
            ChainFunction("wi", (dw[1], dw[0])),
        ),
        (x0, y0),
        ((1 / (z0 - z0 * z0)).real, (1 / (z0 - z0 * z0)).imag),
        "noetherian",
    )
    a1 = _cmul(_cadd(_cconst(c), _cmul(_cconst(-(a + b + 1)), z)), w)
    a0 = _cmul(_cconst(-a * b), w)
    q_init = complex(q_init)
    return riccati_system(
        a1[0], a1[1], a0[0], a0[1], (x0, y0), (q_init.real, q_init.imag), prefix=prefix, names=("qr", "qi")
    )


# --------------------------------------------------------------------------
# numerics

def _compile(spec: ChainSpec) -> Callable[[np.ndarray], np.ndarray]:
    """Vector field ``v -> matrix P_{i,j}`` with ``v = (x..., f...)``."""
    order = list(spec.base_vars) + list(spec.names)
    index = {name: k for k, name in enumerate(order)}
    rows = []
    for f in spec.functions:
        rows.append("[" + ", ".join(p.to_source(index) for p in f.table) + "]")
    src = "lambda v: [" + ", ".join(rows) + "]"
    fn = eval(src, {"__builtins__": {}})  # generated from Poly objects only
    n = spec.n_base_vars
    N = len(spec.functions)

    def field_at(v):
        if N == 0:
            return np.zeros((0, n))
        return np.array(fn(v), dtype=float).reshape(N, n)

    return field_at


def _fmt_point(p: np.ndarray) -> str:
    return "(" + ", ".join(f"{float(v):.12g}" for v in p) + ")"


def _segment(field_at, a: np.ndarray, b: np.ndarray, y: np.ndarray, rtol: float, state: dict) -> np.ndarray:
    d = b - a
    length = float(np.linalg.norm(d))
    if length == 0.0 or y.size == 0:
        return y
    direction = d / length

    def rhs(s, yy):
        v = np.concatenate([a + s * direction, yy])
        return field_at(v) @ direction

    def guard(s, yy):
        m = float(np.max(np.abs(yy))) if yy.size else 0.0
        state["max"] = m
        state["at"] = a + s * direction
        if not math.isfinite(m) or m > BLOWUP_LIMIT:
            raise BlowupError(
                f"chain value exceeds {BLOWUP_LIMIT:g} near {_fmt_point(state['at'])}"
            )

    try:
        return dopri45(rhs, 0.0, length, y, rtol=rtol, atol=rtol, guard=guard)
    except StepError as exc:
        if state.get("max", 0.0) > 1e6:
            raise BlowupError(
                f"finite escape: step size collapsed with |value| ~ {state['max']:.3g} "
                f"near {_fmt_point(state['at'])}"
            ) from exc
        raise


def _as_point(p, n: int) -> np.ndarray:
    arr = np.atleast_1d(np.asarray(p, dtype=float))
    if arr.shape != (n,):
        raise DomainError(f"path point {p!r} does not have {n} coordinates")
    return arr


def integrate_chain(
    spec: ChainSpec,
    path: Sequence,
    rtol: float = 1e-12,
    check: bool = True,
) -> list[np.ndarray]:
    """Values of the chain functions at each vertex of a polyline in base space.

    ``path[0]`` must be the base point.  Integration is adaptive with local
    tolerance ``rtol``; a ``BlowupError`` is raised when a value exceeds
    ``1e12`` in magnitude or the step size collapses on a growing solution.
    """
    if check:
        verdict = verify_chain(spec)
        if verdict.kind == "invalid":
            raise DomainError(f"chain is not integrable: {verdict.witness}")
    n = spec.n_base_vars
    pts = [_as_point(p, n) for p in path]
    if not pts:
        raise DomainError("path is empty")
    base = np.array(spec.base_point)
    if not np.allclose(pts[0], base, rtol=0, atol=1e-12):
        raise DomainError(f"path must start at the base point {spec.base_point}")
    field_at = _compile(spec)
    y = np.array(spec.initial_values, dtype=float)
    out = [y.copy()]
    state: dict = {}
    for a, b in zip(pts[:-1], pts[1:]):
        y = _segment(field_at, a, b, y, rtol, state)
        out.append(y.copy())
    return out


def table_residual(
    spec: ChainSpec,
    path: Sequence,
    n_points: int = 10,
    h: float = 1e-5,
) -> float:
    """Largest relative mismatch between central differences and the tables.

    ``n_points`` sample points are spread along the path (by arc length);
    at each one ``(f(x + h e_j) - f(x - h e_j)) / 2h`` is compared with
    ``P_{i,j}(x, f(x))``, scaled by ``max(1, |P|)``.
    """
    n = spec.n_base_vars
    pts = [_as_point(p, n) for p in path]
    if len(pts) < 2:
        raise DomainError("need a path with at least two points")
    seg_len = [float(np.linalg.norm(b - a)) for a, b in zip(pts[:-1], pts[1:])]
    total = sum(seg_len)
    field_at = _compile(spec)
    worst = 0.0
    state: dict = {}
    y = np.array(spec.initial_values, dtype=float)
    pos = pts[0]
    seg = 0
    travelled = 0.0
    for m in range(1, n_points + 1):
        target = total * m / (n_points + 1)
        while seg < len(seg_len) and travelled + seg_len[seg] < target:
            y = _segment(field_at, pos, pts[seg + 1], y, 1e-13, state)
            pos = pts[seg + 1]
            travelled += seg_len[seg]
            seg += 1
        frac = (target - travelled) / seg_len[seg]
        p = pts[seg] + frac * (pts[seg + 1] - pts[seg])
        y = _segment(field_at, pos, p, y, 1e-13, state)
        travelled = target
        pos = p
        table = field_at(np.concatenate([p, y]))
        for j in range(n):
            e = np.zeros(n)
            e[j] = h
            yp = _segment(field_at, p, p + e, y, 1e-13, state)
            ym = _segment(field_at, p, p - e, y, 1e-13, state)
            fd = (yp - ym) / (2 * h)
            scale = np.maximum(1.0, np.abs(table[:, j]))
            if fd.size:
                worst = max(worst, float(np.max(np.abs(fd - table[:, j]) / scale)))
    return worst


# --------------------------------------------------------------------------
# text format

def parse_chain(text: str) -> ChainSpec:
    """Parse the line-based chain format.

    ::

        # comment
        var x y
        let a = 1
        fun q0 : dx = -b*(1+q0^2) ; dy = -a*(1+q0^2)
        base 0 pi/2
        init 0 1 1 0
        kind pfaffian

    ``let`` defines a polynomial macro usable in later expressions.  Names in
    ``fun`` tables are not restricted here, so :func:`verify_chain` can
    report dangling references.
    """
    base_vars: list[str] | None = None
    macros: dict[str, Poly] = {}
    funs: list[tuple[int, str, str]] = []
    base = init = None
    kind = "pfaffian"
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, _, rest = line.partition(" ")
        rest = rest.strip()
        try:
            if head == "var":
                if base_vars is not None:
                    raise ChainSyntaxError("duplicate var line")
                base_vars = rest.split()
                if not base_vars or not all(v.isidentifier() for v in base_vars):
                    raise ChainSyntaxError("var needs identifiers")
            elif head == "let":
                name, eq, expr = rest.partition("=")
                name = name.strip()
                if not eq or not name.isidentifier():
                    raise ChainSyntaxError("expected 'let name = expression'")
                macros[name] = parse_poly(expr, macros=macros)
            elif head == "fun":
                name, colon, body = rest.partition(":")
                name = name.strip()
                if not colon or not name.isidentifier():
                    raise ChainSyntaxError("expected 'fun name : dx = ... ; dy = ...'")
                funs.append((lineno, name, body))
            elif head == "base":
                base = [parse_number(t) for t in rest.split()]
            elif head == "init":
                init = [parse_number(t) for t in rest.split()]
            elif head == "kind":
                if rest not in KINDS:
                    raise ChainSyntaxError(f"kind must be one of {KINDS}")
                kind = rest
            else:
                raise ChainSyntaxError(f"unknown directive {head!r}")
        except ChainSyntaxError as exc:
            raise ChainSyntaxError(f"line {lineno}: {exc}") from None
    if base_vars is None:
        raise ChainSyntaxError("missing 'var' line")
    functions = []
    for lineno, name, body in funs:
        entries: dict[str, Poly] = {}
        try:
            for part in body.split(";"):
                key, eq, expr = part.partition("=")
                key = key.strip()
                if not eq or not key.startswith("d") or key[1:] not in base_vars:
                    raise ChainSyntaxError(f"bad derivative entry {part.strip()!r}")
                if key[1:] in entries:
                    raise ChainSyntaxError(f"duplicate entry {key}")
                entries[key[1:]] = parse_poly(expr, macros=macros)
            missing = [v for v in base_vars if v not in entries]
            if missing:
                raise ChainSyntaxError(f"missing d{missing[0]} for {name}")
        except ChainSyntaxError as exc:
            raise ChainSyntaxError(f"line {lineno}: {exc}") from None
        functions.append(ChainFunction(name, tuple(entries[v] for v in base_vars)))
    if base is None:
        base = [0.0] * len(base_vars)
    if init is None:
        raise ChainSyntaxError("missing 'init' line")
    try:
        return ChainSpec(tuple(base_vars), tuple(functions), tuple(base), tuple(init), kind)
    except DomainError as exc:
        raise ChainSyntaxError(str(exc)) from None


def dump_chain(spec: ChainSpec) -> str:
    """Inverse of :func:`parse_chain` (floats written with ``repr``)."""
    lines = ["var " + " ".join(spec.base_vars)]
    for f in spec.functions:
        body = " ; ".join(f"d{v} = {p}" for v, p in zip(spec.base_vars, f.table))
        lines.append(f"fun {f.name} : {body}")
    lines.append("base " + " ".join(repr(v) for v in spec.base_point))
    lines.append("init " + " ".join(repr(v) for v in spec.initial_values))
    lines.append(f"kind {spec.declared_kind}")
    return "\n".join(lines) + "\n"
