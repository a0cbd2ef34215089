"""Sparse multivariate polynomials with exact rational coefficients.

Monomials are keyed by variable *name*: a monomial is a sorted tuple of
``(name, exponent)`` pairs, so polynomials over different variable sets mix
freely.  Coefficients are ``fractions.Fraction``.

Parsing goes through the stdlib ``ast`` module; ``^`` is accepted as power.
"""
from __future__ import annotations

import ast
import math
from fractions import Fraction
from typing import Callable, Iterable, Mapping, Sequence

from .errors import ChainSyntaxError

__all__ = ["Poly", "Monomial", "parse_poly", "parse_number"]

Monomial = tuple[tuple[str, int], ...]
ONE: Monomial = ()


def _mono_mul(m1: Monomial, m2: Monomial) -> Monomial:
    if not m1:
        return m2
    if not m2:
        return m1
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


def _to_fraction(c) -> Fraction:
    if isinstance(c, Fraction):
        return c
    if isinstance(c, float):
        if not math.isfinite(c):
            raise ValueError("non-finite coefficient")
        return Fraction(c)
    return Fraction(c)


class Poly:
    """Immutable sparse polynomial; zero coefficients are never stored."""

    __slots__ = ("_terms", "_hash")

    def __init__(self, terms: Mapping[Monomial, Fraction] | None = None):
        clean: dict[Monomial, Fraction] = {}
        if terms:
            for m, c in terms.items():
                c = _to_fraction(c)
                if c:
                    for _, e in m:
                        if e < 0 or int(e) != e:
                            raise ValueError("exponents must be non-negative integers")
                    clean[m] = c
        self._terms = clean
        self._hash = None

    # construction ---------------------------------------------------------
    @classmethod
    def const(cls, c) -> "Poly":
        return cls({ONE: _to_fraction(c)})

    @classmethod
    def var(cls, name: str) -> "Poly":
        return cls({((name, 1),): Fraction(1)})

    @classmethod
    def coerce(cls, other) -> "Poly":
        if isinstance(other, Poly):
            return other
        if isinstance(other, (int, Fraction, float)):
            return cls.const(other)
        if isinstance(other, str):
            return parse_poly(other)
        raise TypeError(f"cannot convert {type(other).__name__} to Poly")

    # inspection -----------------------------------------------------------
    @property
    def terms(self) -> dict[Monomial, Fraction]:
        return dict(self._terms)

    def is_zero(self) -> bool:
        return not self._terms

    def variables(self) -> set[str]:
        return {v for m in self._terms for v, _ in m}

    def degree(self) -> int:
        return max((sum(e for _, e in m) for m in self._terms), default=0)

    def constant_value(self) -> Fraction | None:
        """The value if the polynomial is constant, else ``None``."""
        if not self._terms:
            return Fraction(0)
        if set(self._terms) == {ONE}:
            return self._terms[ONE]
        return None

    # arithmetic -----------------------------------------------------------
    def __add__(self, other) -> "Poly":
        other = Poly.coerce(other)
        out = dict(self._terms)
        for m, c in other._terms.items():
            out[m] = out.get(m, 0) + c
        return Poly(out)

    __radd__ = __add__

    def __neg__(self) -> "Poly":
        return Poly({m: -c for m, c in self._terms.items()})

    def __sub__(self, other) -> "Poly":
        return self + (-Poly.coerce(other))

    def __rsub__(self, other) -> "Poly":
        return Poly.coerce(other) - self

    def __mul__(self, other) -> "Poly":
        other = Poly.coerce(other)
        out: dict[Monomial, Fraction] = {}
        for m1, c1 in self._terms.items():
            for m2, c2 in other._terms.items():
                m = _mono_mul(m1, m2)
                out[m] = out.get(m, 0) + c1 * c2
        return Poly(out)

    __rmul__ = __mul__

    def __pow__(self, n: int) -> "Poly":
        if not isinstance(n, int) or n < 0:
            raise ValueError("only non-negative integer powers")
        out = Poly.const(1)
        base = self
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def __eq__(self, other) -> bool:
        if isinstance(other, (int, Fraction)):
            other = Poly.const(other)
        if not isinstance(other, Poly):
            return NotImplemented
        return self._terms == other._terms

    def __hash__(self) -> int:
        if self._hash is None:
            self._hash = hash(frozenset(self._terms.items()))
        return self._hash

    # calculus and substitution -------------------------------------------
    def diff(self, name: str) -> "Poly":
        out: dict[Monomial, Fraction] = {}
        for m, c in self._terms.items():
            d = dict(m)
            e = d.get(name, 0)
            if not e:
                continue
            if e == 1:
                del d[name]
            else:
                d[name] = e - 1
            key = tuple(sorted(d.items()))
            out[key] = out.get(key, 0) + c * e
        return Poly(out)

    def subs(self, mapping: Mapping[str, "Poly"]) -> "Poly":
        """Simultaneous substitution of variables by polynomials."""
        mapping = {k: Poly.coerce(v) for k, v in mapping.items()}
        out = Poly()
        cache: dict[tuple[str, int], Poly] = {}
        for m, c in self._terms.items():
            term = Poly.const(c)
            rest = []
            for v, e in m:
                if v in mapping:
                    key = (v, e)
                    if key not in cache:
                        cache[key] = mapping[v] ** e
                    term = term * cache[key]
                else:
                    rest.append((v, e))
            if rest:
                term = term * Poly({tuple(rest): 1})
            out = out + term
        return out

    def rename(self, mapping: Mapping[str, str]) -> "Poly":
        return self.subs({k: Poly.var(v) for k, v in mapping.items()})

    def reduce_product(self, factors: Sequence[str], replacement: "Poly") -> "Poly":
        """Rewrite every monomial divisible by the product of ``factors`` using ``replacement``.

        Applied repeatedly, e.g. ``reduce_product(['r', 'f'], 1)`` encodes the
        relation ``r*f = 1``.
        """
        need: dict[str, int] = {}
        for f in factors:
            need[f] = need.get(f, 0) + 1
        replacement = Poly.coerce(replacement)
        cur = self
        for _ in range(64):
            out = Poly()
            changed = False
            for m, c in cur._terms.items():
                d = dict(m)
                if all(d.get(v, 0) >= e for v, e in need.items()):
                    for v, e in need.items():
                        d[v] -= e
                        if not d[v]:
                            del d[v]
                    out = out + Poly({tuple(sorted(d.items())): c}) * replacement
                    changed = True
                else:
                    out = out + Poly({m: c})
            cur = out
            if not changed:
                break
        return cur

    # numerics -------------------------------------------------------------
    def evaluate(self, values: Mapping[str, float | complex]):
        total = 0
        for m, c in self._terms.items():
            t = float(c)
            for v, e in m:
                t = t * values[v] ** e
            total = total + t
        return total

    def to_source(self, index: Mapping[str, int], array: str = "v") -> str:
        """Python expression evaluating the polynomial with ``array[index[name]]``."""
        if not self._terms:
            return "0.0"
        parts = []
        for m, c in sorted(self._terms.items()):
            factors = [repr(float(c))]
            for v, e in m:
                ref = f"{array}[{index[v]}]"
                factors.append(ref if e == 1 else f"{ref}**{e}")
            parts.append("*".join(factors))
        return " + ".join(parts)

    # display --------------------------------------------------------------
    def __str__(self) -> str:
        if not self._terms:
            return "0"
        pieces = []
        for m, c in sorted(self._terms.items(), key=lambda kv: (-sum(e for _, e in kv[0]), kv[0])):
            mono = "*".join(v if e == 1 else f"{v}^{e}" for v, e in m)
            sign = "-" if c < 0 else "+"
            mag = abs(c)
            if not mono:
                body = str(mag)
            elif mag == 1:
                body = mono
            else:
                body = f"{mag}*{mono}"
            pieces.append((sign, body))
        first_sign, first = pieces[0]
        out = ("-" if first_sign == "-" else "") + first
        for sign, body in pieces[1:]:
            out += f" {sign} {body}"
        return out

    def __repr__(self) -> str:
        return f"Poly({str(self)!r})"


_NUMERIC_NAMES = {"pi": math.pi, "e": math.e}
_NUMERIC_FUNCS: dict[str, Callable[[float], float]] = {
    "sqrt": math.sqrt,
    "exp": math.exp,
    "log": math.log,
    "sin": math.sin,
    "cos": math.cos,
    "tan": math.tan,
    "atan": math.atan,
}


def _prep(text: str) -> ast.expr:
    try:
        tree = ast.parse(text.replace("^", "**").strip(), mode="eval")
    except SyntaxError as exc:
        raise ChainSyntaxError(f"cannot parse expression {text!r}") from exc
    return tree.body


def parse_poly(
    text: str,
    allowed: Iterable[str] | None = None,
    macros: Mapping[str, Poly] | None = None,
) -> Poly:
    """Parse ``text`` into a ``Poly``.

    ``allowed`` restricts the variable names (``None`` accepts any
    identifier); ``macros`` maps names to polynomials substituted in place.
    Division is only allowed by a non-zero constant.  Decimal literals are
    converted exactly (``0.1`` becomes ``1/10``).
    """
    allowed_set = set(allowed) if allowed is not None else None
    macros = dict(macros or {})

    def walk(node: ast.AST) -> Poly:
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return Poly.const(Fraction(repr(node.value)) if isinstance(node.value, float) else node.value)
        if isinstance(node, ast.Name):
            if node.id in macros:
                return macros[node.id]
            if allowed_set is not None and node.id not in allowed_set:
                raise ChainSyntaxError(f"unknown variable {node.id!r}")
            return Poly.var(node.id)
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            inner = walk(node.operand)
            return -inner if isinstance(node.op, ast.USub) else inner
        if isinstance(node, ast.BinOp):
            left = walk(node.left)
            if isinstance(node.op, ast.Pow):
                exp = walk(node.right).constant_value()
                if exp is None or exp.denominator != 1 or exp < 0:
                    raise ChainSyntaxError("exponents must be non-negative integer constants")
                return left ** int(exp)
            right = walk(node.right)
            if isinstance(node.op, ast.Add):
                return left + right
            if isinstance(node.op, ast.Sub):
                return left - right
            if isinstance(node.op, ast.Mult):
                return left * right
            if isinstance(node.op, ast.Div):
                c = right.constant_value()
                if c is None or c == 0:
                    raise ChainSyntaxError("division only by a non-zero constant")
                return left * Poly.const(1 / c)
        raise ChainSyntaxError(f"unsupported syntax in polynomial: {ast.dump(node)[:60]}")

    return walk(_prep(text))


def parse_number(text: str) -> float:
    """Evaluate a numeric literal expression such as ``pi/2`` or ``-1.5e-3``."""

    def walk(node: ast.AST) -> float:
        if isinstance(node, ast.Constant) and isinstance(node.value, (int, float)) and not isinstance(node.value, bool):
            return float(node.value)
        if isinstance(node, ast.Name) and node.id in _NUMERIC_NAMES:
            return _NUMERIC_NAMES[node.id]
        if isinstance(node, ast.UnaryOp) and isinstance(node.op, (ast.UAdd, ast.USub)):
            v = walk(node.operand)
            return -v if isinstance(node.op, ast.USub) else v
        if isinstance(node, ast.BinOp):
            ops = {
                ast.Add: lambda a, b: a + b,
                ast.Sub: lambda a, b: a - b,
                ast.Mult: lambda a, b: a * b,
                ast.Div: lambda a, b: a / b,
                ast.Pow: lambda a, b: a**b,
            }
            for k, fn in ops.items():
                if isinstance(node.op, k):
                    return fn(walk(node.left), walk(node.right))
        if (
            isinstance(node, ast.Call)
            and isinstance(node.func, ast.Name)
            and node.func.id in _NUMERIC_FUNCS
            and len(node.args) == 1
        ):
            return _NUMERIC_FUNCS[node.func.id](walk(node.args[0]))
        raise ChainSyntaxError(f"not a numeric expression: {text!r}")

    try:
        return walk(_prep(text))
    except (ValueError, ZeroDivisionError, OverflowError) as exc:
        raise ChainSyntaxError(f"cannot evaluate {text!r}: {exc}") from exc
