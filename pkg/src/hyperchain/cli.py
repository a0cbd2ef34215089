"""Command-line entry point.

Every subcommand prints machine-readable output (compact JSON with sorted
keys, floats at 17 significant digits; chain constructions print the chain
text format; ``count`` can also write CSV).  Exit status: 0 on success,
2 for invalid input or violated preconditions, 3 for numerical failures.
"""
from __future__ import annotations

import argparse
import json
import math
import sys
from dataclasses import dataclass, field
from fractions import Fraction
from pathlib import Path
from typing import Any, Sequence

from . import counting, elliptic, hyp2f1, modular, pfaffian
from .complex_core import PathSpec
from .errors import DomainError, NumericError

__all__ = ["RunConfig", "run", "main", "dumps", "build_parser"]

EXIT_OK, EXIT_DOMAIN, EXIT_NUMERIC = 0, 2, 3


def _fmt_float(x: float) -> str:
    if math.isnan(x) or math.isinf(x):
        return "null"
    s = format(x, ".17g")
    return "0" if s == "-0" else s


def dumps(obj: Any) -> str:
    """Deterministic compact JSON: sorted keys, floats with 17 significant digits."""
    if isinstance(obj, dict):
        items = sorted((str(k), v) for k, v in obj.items())
        return "{" + ",".join(json.dumps(k) + ":" + dumps(v) for k, v in items) + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(dumps(v) for v in obj) + "]"
    if isinstance(obj, bool) or obj is None:
        return json.dumps(obj)
    if isinstance(obj, int):
        return str(obj)
    if isinstance(obj, float):
        return _fmt_float(obj)
    if isinstance(obj, complex):
        return dumps({"re": obj.real, "im": obj.imag})
    if isinstance(obj, Fraction):
        return json.dumps(str(obj))
    if hasattr(obj, "item"):  # numpy scalar
        return dumps(obj.item())
    return json.dumps(str(obj))


def _cplx(w: complex) -> dict:
    w = complex(w)
    return {"re": w.real, "im": w.imag}


@dataclass
class RunConfig:
    subcommand: str
    parameters: dict = field(default_factory=dict)
    output_path: str | None = None
    output_format: str = "json"


# --------------------------------------------------------------------------
# handlers return (text, ...) to be written by run()

def _read(path: str) -> str:
    try:
        return Path(path).read_text()
    except OSError as exc:
        raise DomainError(f"cannot read {path}: {exc.strerror}") from None


def _do_f21(p: dict) -> str:
    params = hyp2f1.HypParams(
        complex(p["a_re"], p["a_im"]), complex(p["b_re"], p["b_im"]), complex(p["c_re"], p["c_im"])
    )
    z = complex(p["z_re"], p["z_im"])
    out = _cplx(hyp2f1.f21(params, z, p["method"]))
    if p["derivative"]:
        d = hyp2f1.f21_derivative(params, z, p["method"])
        out.update({"d_re": d.real, "d_im": d.imag})
    return dumps(out)


def _do_k(p: dict) -> str:
    z = complex(p["z_re"], p["z_im"])
    k, dk = elliptic.k_and_derivative(z)
    out = _cplx(k)
    if p["derivative"]:
        out.update({"d_re": dk.real, "d_im": dk.imag})
    return dumps(out)


def _do_k_continue(p: dict) -> str:
    try:
        path = PathSpec.from_json(_read(p["path"]))
    except (ValueError, KeyError, TypeError) as exc:
        if isinstance(exc, DomainError):
            raise
        raise DomainError(f"bad path file: {exc}") from None
    state = elliptic.continue_along_path(path, rtol=p["rtol"])
    return dumps(state.to_dict())


def _parse_point(text: str) -> tuple[float, ...]:
    from .poly import parse_number

    return tuple(parse_number(t) for t in text.split(","))


def _do_chain(p: dict) -> str:
    action = p["action"]
    if action == "riccati":
        base = _parse_point(p["base"])
        init = _parse_point(p["init"])
        if p["hyp"]:
            try:
                a, b, c = (Fraction(t) for t in p["hyp"].split(","))
            except ValueError:
                raise DomainError("--hyp expects a,b,c") from None
            if len(init) != 2:
                raise DomainError("--init expects re,im of q at the base point")
            spec = pfaffian.hypergeometric_riccati(a, b, c, base, complex(*init))
        else:
            prefix = pfaffian.parse_chain(_read(p["file"])) if p["file"] else None
            spec = pfaffian.riccati_system(
                p["a1_re"], p["a1_im"], p["a0_re"], p["a0_im"], base, init, prefix=prefix
            )
        return pfaffian.dump_chain(spec).rstrip("\n")
    if not p["file"]:
        raise DomainError(f"chain {action} needs --file")
    spec = pfaffian.parse_chain(_read(p["file"]))
    if action == "verify":
        verdict = pfaffian.verify_chain(spec)
        out: dict = {"kind": verdict.kind}
        if verdict.kind != "pfaffian":
            out["witness"] = verdict.witness
        if verdict.triple is not None:
            out["triple"] = list(verdict.triple)
        return dumps(out)
    if action == "integrate":
        if not p["to"]:
            raise DomainError("chain integrate needs at least one --to point")
        path = [spec.base_point] + [_parse_point(t) for t in p["to"]]
        values = pfaffian.integrate_chain(spec, path)
        return dumps(
            {
                "names": list(spec.names),
                "path": [list(map(float, pt)) for pt in path],
                "values": [[float(v) for v in row] for row in values],
            }
        )
    if action == "pullback":
        if not p["map"] or not p["coords"]:
            raise DomainError("chain pullback needs --map and --coords")
        map_chain = pfaffian.parse_chain(_read(p["map"]))
        spec = pfaffian.pull_back(spec, map_chain, p["coords"])
        return pfaffian.dump_chain(spec).rstrip("\n")
    raise DomainError(f"unknown chain action {action!r}")


def _do_modular(p: dict) -> str:
    tau = complex(p["tau_re"], p["tau_im"])
    lam, res = modular.lambda_from_tau(tau, full_output=True)
    return dumps({"j": _cplx(modular.j_from_lambda(lam)), "lambda": _cplx(lam), "residual": res})


def _do_count(p: dict, fmt: str) -> str:
    curve = counting.curve_from_spec(p["curve"])
    try:
        lo, hi = Fraction(p["lo"]), Fraction(p["hi"])
        heights = [int(h) for h in p["heights"].split(",")]
    except (ValueError, ZeroDivisionError):
        raise DomainError("bad --lo/--hi/--heights value") from None
    report = counting.run_experiment(curve, (lo, hi), heights, p["certify_tol"], p["jobs"])
    if fmt == "csv":
        return report.to_csv().rstrip("\n")
    return dumps(report.to_dict())


def run(config: RunConfig) -> int:
    """Execute one subcommand; returns the process exit status."""
    p = config.parameters
    try:
        cmd = config.subcommand
        if cmd == "f21":
            text = _do_f21(p)
        elif cmd == "k":
            text = _do_k(p)
        elif cmd == "k-continue":
            text = _do_k_continue(p)
        elif cmd == "chain":
            text = _do_chain(p)
        elif cmd in ("lambda", "j"):
            text = _do_modular(p)
        elif cmd == "count":
            text = _do_count(p, config.output_format)
        else:
            raise DomainError(f"unknown subcommand {cmd!r}")
    except DomainError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except ZeroDivisionError as exc:
        print(f"error: {exc}", file=sys.stderr)
        return EXIT_DOMAIN
    except NumericError as exc:
        print(f"numeric failure: {exc}", file=sys.stderr)
        return EXIT_NUMERIC
    if config.output_path:
        try:
            Path(config.output_path).write_text(text + "\n")
        except OSError as exc:
            print(f"error: cannot write {config.output_path}: {exc.strerror}", file=sys.stderr)
            return EXIT_DOMAIN
    else:
        print(text)
    return EXIT_OK


def _positive_float(text: str) -> float:
    v = float(text)
    if not v > 0:
        raise argparse.ArgumentTypeError("must be positive")
    return v


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--out", help="write output to this file instead of stdout")

    ap = argparse.ArgumentParser(prog="hyperchain", description=__doc__.splitlines()[0])
    sub = ap.add_subparsers(dest="subcommand", required=True)

    f = sub.add_parser("f21", parents=[common], help="Gauss 2F1 on the principal branch")
    for name in ("a", "b", "c", "z"):
        f.add_argument(f"--{name}-re", type=float, required=True)
        f.add_argument(f"--{name}-im", type=float, default=0.0)
    f.add_argument("--method", choices=["auto", "series", "integral"], default="auto")
    f.add_argument("--derivative", action="store_true")

    k = sub.add_parser("k", parents=[common], help="complete elliptic integral K(z)")
    k.add_argument("--z-re", type=float, required=True)
    k.add_argument("--z-im", type=float, default=0.0)
    k.add_argument("--derivative", action="store_true")

    kc = sub.add_parser("k-continue", parents=[common], help="continue (K(z), K(1-z)) along a path")
    kc.add_argument("--path", required=True, help='JSON file {"waypoints": [[re, im], ...], "max_step": h}')
    kc.add_argument("--rtol", type=_positive_float, default=1e-12)

    ch = sub.add_parser("chain", parents=[common], help="Pfaffian/Noetherian chain tools")
    ch.add_argument("action", choices=["verify", "integrate", "pullback", "riccati"])
    ch.add_argument("--file", help="chain file (prefix chain for riccati)")
    ch.add_argument("--to", action="append", default=[], help="path vertex 'x,y,...' (repeatable)")
    ch.add_argument("--map", help="map chain file for pullback")
    ch.add_argument("--coords", action="append", default=[], help="map coordinate polynomial (repeatable)")
    for name in ("a1-re", "a1-im", "a0-re", "a0-im"):
        ch.add_argument(f"--{name}", default="0")
    ch.add_argument("--hyp", help="a,b,c: Riccati chain of the hypergeometric equation")
    ch.add_argument("--base", default="0,0", help="base point 'x,y'")
    ch.add_argument("--init", default="0,0", help="initial 'u,v'")

    for name in ("lambda", "j"):
        m = sub.add_parser(name, parents=[common], help=f"modular {name} at tau")
        m.add_argument("--tau-re", type=float, required=True)
        m.add_argument("--tau-im", type=float, required=True)

    c = sub.add_parser("count", parents=[common], help="rational points of bounded height")
    c.add_argument("--curve", required=True, help="exp | k | f21:a,b,c | linear:m,c")
    c.add_argument("--lo", required=True)
    c.add_argument("--hi", required=True)
    c.add_argument("--heights", default=",".join(str(h) for h in counting.DEFAULT_HEIGHTS))
    c.add_argument("--certify-tol", type=_positive_float, default=counting.DEFAULT_CERTIFY_TOL)
    c.add_argument("--jobs", type=int, default=1)
    c.add_argument("--format", choices=["json", "csv"], help="default: csv for *.csv outputs, else json")
    return ap


def main(argv: Sequence[str] | None = None) -> int:
    args = build_parser().parse_args(argv)
    params = {k: v for k, v in vars(args).items() if k not in ("subcommand", "out", "format")}
    fmt = getattr(args, "format", None)
    if fmt is None:
        fmt = "csv" if args.out and args.out.endswith(".csv") else "json"
    params = {k.replace("-", "_"): v for k, v in params.items()}
    return run(RunConfig(args.subcommand, params, args.out, fmt))


if __name__ == "__main__":
    sys.exit(main())
