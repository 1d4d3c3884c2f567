"""``frh``: command-line access to the library.

Exit codes: 0 success, 2 invalid input, 3 a search bound was exhausted.
"""

from __future__ import annotations

import argparse
import json
import os
import random
import sys
import time

from . import __version__
from .additive import RootSearchError, roots_of_additive
from .finite_field import FieldError, FiniteField, make_field
from .frobenius_module import (
    ModuleError,
    TwistMapData,
    find_isomorphism,
    hom_space,
    is_unit,
    min_annihilator,
    unitalize,
)
from .galois_ring import make_galois_ring
from .parsing import ParseError, parse_field_spec, parse_ring_spec
from .rh_contravariant import LangBoundError, algebra_from_etale, lang_solve, rh_cont_dual, sol_at
from .rh_covariant import rh_cov_data, rh_inv
from .serialization import (
    SchemaError,
    algebra_from_dict,
    etale_from_dict,
    load,
    module_from_dict,
    module_to_dict,
    rep_from_dict,
    rep_to_dict,
)
from .skew_poly import SkewPoly, SkewPolyError, left_divmod, right_gcd
from .witt import (
    CACHE_ENV,
    QQ,
    ZZ,
    BigWitt,
    RationalWitt,
    WittError,
    coefficients_to_roots,
    frobenius_op,
    ghost_map,
    rational_to_big,
    roots_to_coefficients,
    verschiebung_op,
    witt_add,
    witt_mul,
)

SCHEMA_VERSION = 1
EXIT_OK, EXIT_INVALID, EXIT_BOUND = 0, 2, 3


class InputError(Exception):
    def __init__(self, message, column=None):
        super().__init__(message)
        self.column = column


class _ArgumentParser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(message)


# --------------------------------------------------------------------------
# literal parsing with command-line columns
# --------------------------------------------------------------------------


class _Literals:
    """Parses option values and maps parse errors to columns of the joined command line."""

    def __init__(self, argv):
        self.argv = list(argv)

    def column_of(self, value: str):
        col = len("frh")
        for tok in self.argv:
            col += 1
            if tok == value:
                return col
            if "=" in tok and tok.split("=", 1)[1] == value:
                return col + tok.index("=") + 1
            col += len(tok)
        return None

    def parse(self, value: str, fn):
        try:
            return fn(value)
        except ParseError as exc:
            base = self.column_of(value)
            col = None if base is None else base + exc.position
            where = f" at column {col}" if col is not None else ""
            raise InputError(f"syntax error{where}: {exc.message}", col) from None


def _base_from(args, allow_ring=True):
    if getattr(args, "ring", None) and allow_ring:
        spec = parse_ring_spec(args.ring)
        if spec[0] == "galois":
            return make_galois_ring(*spec[1:])
        if spec[0] == "field":
            return make_field(*spec[1:])
        raise InputError(f"ring {args.ring!r} is not allowed here")
    if not getattr(args, "field", None):
        raise InputError("--field p:n is required")
    return make_field(*parse_field_spec(args.field))


def _witt_ring(args):
    spec = parse_ring_spec(args.ring or "Z")
    if spec[0] == "Z":
        return ZZ
    if spec[0] == "Q":
        return QQ
    if spec[0] == "field":
        return make_field(*spec[1:])
    return make_galois_ring(*spec[1:])


def _cache_dir(args):
    return args.witt_cache_dir or os.environ.get(CACHE_ENV) or None


def _vector(lits, K, text):
    parts = [s for s in text.split(",")]
    out = []
    offset = 0
    for part in parts:
        padded = " " * offset + part
        out.append(lits.parse(text, lambda _t, s=padded: K.parse(s)))
        offset += len(part) + 1
    return out


def _col(x):
    return [str(c) for c in x]


# --------------------------------------------------------------------------
# commands
# --------------------------------------------------------------------------


def cmd_field(args, lits):
    K = _base_from(args, allow_ring=False)
    result = {
        "field": K.spec,
        "order": K.order,
        "modulus": _poly_str(K.modulus),
        "generator": str(K.gen),
    }
    if args.element:
        x = lits.parse(args.element, K.parse)
        result["element"] = {
            "value": str(x),
            "inverse": None if x.is_zero() else str(x.inverse()),
            "frobenius": str(x.frob(1)),
        }
    return {"field": K.spec, "element": args.element}, result


def _poly_str(mod):
    terms = []
    for i in range(len(mod) - 1, -1, -1):
        c = mod[i]
        if not c:
            continue
        mono = "" if i == 0 else ("x" if i == 1 else f"x^{i}")
        if not mono:
            terms.append(str(c))
        else:
            terms.append(mono if c == 1 else f"{c}*{mono}")
    return "+".join(terms)


def cmd_skew(args, lits):
    R = _base_from(args)
    a = lits.parse(args.a, lambda s: SkewPoly.parse(R, s))
    b = lits.parse(args.b, lambda s: SkewPoly.parse(R, s))
    inputs = {"ring": R.spec, "a": str(a), "b": str(b)}
    if args.op == "mul":
        return inputs, {"product": str(a * b)}
    if args.op == "div":
        q, r = left_divmod(a, b)
        return inputs, {"quotient": str(q), "remainder": str(r)}
    return inputs, {"gcd": str(right_gcd(a, b))}


def cmd_roots(args, lits):
    K = _base_from(args, allow_ring=False)
    T = lits.parse(args.skew, lambda s: SkewPoly.parse(K, s))
    rs = roots_of_additive(T, max_degree=args.max_degree)
    result = {
        "splitting_field": rs.field.spec,
        "splitting_degree": rs.splitting_degree,
        "count": rs.count,
        "multiplicity": rs.multiplicity,
        "basis": [str(b) for b in rs.basis],
    }
    if rs.roots is not None:
        result["roots"] = [str(r) for r in rs.roots]
    return {"field": K.spec, "skew": str(T)}, result


def _module_arg(text):
    try:
        return module_from_dict(load(text))
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read module: {exc}") from None


def cmd_module(args, lits):
    M = _module_arg(args.module)
    K = M.base
    inputs = {"module": module_to_dict(M)}
    if args.op == "unit":
        return inputs, {"unit": is_unit(M)}
    if args.op == "annihilator":
        if not args.vector:
            raise InputError("--vector is required")
        x = _vector(lits, K, args.vector)
        w = min_annihilator(M, x)
        inputs["vector"] = _col(x)
        return inputs, {"annihilator": str(w.T), "degree": w.degree}
    if args.op == "unitalize":
        un = unitalize(TwistMapData(K, M.matrix))
        return inputs, {
            "unit_module": module_to_dict(un.module),
            "structure_map": [[str(c) for c in row] for row in un.structure_map],
            "stage": un.stage,
        }
    if not args.target:
        raise InputError("hom needs a second module (--target)")
    N = _module_arg(args.target)
    inputs["target"] = module_to_dict(N)
    basis = hom_space(M, N)
    iso = find_isomorphism(M, N, random.Random(args.seed))
    return inputs, {
        "dimension": len(basis),
        "basis": [[[str(c) for c in row] for row in H] for H in basis],
        "isomorphism": None if iso is None else [[str(c) for c in row] for row in iso],
    }


def cmd_rh(args, lits):
    if args.op == "inv":
        V = rep_from_dict(load(args.payload))
        M = rh_inv(V)
        return {"rep": rep_to_dict(V)}, {"module": module_to_dict(M)}
    if args.op == "dual":
        doc = load(args.payload)
        B = algebra_from_etale(etale_from_dict(doc)) if "factors" in doc else algebra_from_dict(doc)
        U = rh_cont_dual(B)
        return {"algebra": doc}, {"module": module_to_dict(U)}
    M = _module_arg(args.payload)
    inputs = {"module": module_to_dict(M)}
    if args.op == "cov":
        data = rh_cov_data(M, require_unit=args.strict)
        return inputs, {
            "rep": rep_to_dict(data.rep),
            "extension": data.field.spec,
            "fixed_point_basis": [_col(x) for x in data.basis],
        }
    if args.op == "sol":
        S = sol_at(M, args.k)
        inputs["k"] = args.k
        res = {"extension": S.field.spec, "dim": S.dim, "count": S.count, "basis": [_col(x) for x in S.basis]}
        if S.elements is not None:
            res["solutions"] = [_col(x) for x in S.elements]
        return inputs, res
    if not args.vector:
        raise InputError("--vector is required")
    L0 = make_field(*parse_field_spec(args.vector_field)) if args.vector_field else M.base
    v = _vector(lits, L0, args.vector)
    x, m = lang_solve(M, v, max_degree=args.max_degree)
    inputs["vector"] = _col(v)
    return inputs, {"solution": _col(x), "extension_degree": m, "extension": x[0].field.spec if x else M.base.spec}


def cmd_witt(args, lits):
    R = _witt_ring(args)
    N = args.N
    parse = lambda s: BigWitt.parse(R, s, N)  # noqa: E731
    cache = _cache_dir(args)
    inputs = {"ring": getattr(R, "spec", str(R)), "N": N, "args": list(args.values)}
    prov = {}
    need = {"add": 2, "mul": 2, "ghost": 1, "frob": 1, "versch": 1, "rat2big": 2}
    if args.op in need and len(args.values) != need[args.op]:
        raise InputError(f"witt {args.op} takes {need[args.op]} series argument(s)")
    if args.op == "add":
        a, b = (lits.parse(v, parse) for v in args.values)
        return inputs, {"sum": str(witt_add(a, b))}, prov
    if args.op == "mul":
        a, b = (lits.parse(v, parse) for v in args.values)
        if not getattr(R, "torsion_free", False):
            prov["witt_cache_key"] = ["mul", N]
        return inputs, {"product": str(witt_mul(a, b, cache_dir=cache))}, prov
    if args.op == "ghost":
        a = lits.parse(args.values[0], parse)
        return inputs, {"ghost": [str(w) for w in ghost_map(a).values]}, prov
    if args.op == "frob":
        a = lits.parse(args.values[0], parse)
        if not getattr(R, "torsion_free", False) and args.n > 1:
            prov["witt_cache_key"] = [f"frobenius_{args.n}", N]
        inputs["n"] = args.n
        return inputs, {"frobenius": str(frobenius_op(args.n, a, cache_dir=cache))}, prov
    if args.op == "versch":
        a = lits.parse(args.values[0], parse)
        inputs["n"] = args.n
        return inputs, {"verschiebung": str(verschiebung_op(args.n, a))}, prov
    if args.op == "rat2big":
        num, den = (lits.parse(v, lambda s: _series_poly(R, s)) for v in args.values)
        return inputs, {"series": str(rational_to_big(RationalWitt(R, num, den), N))}, prov
    # roots2coef
    roots = [lits.parse(v, R.parse if hasattr(R, "parse") else R) for v in args.values]
    r = roots_to_coefficients(roots, R)
    result = {"polynomial": str(BigWitt(R, list(r.num[1:])) if len(r.num) > 1 else "1")}
    if args.check and isinstance(R, FiniteField):
        L, back = coefficients_to_roots(list(r.num), R)
        result["recovered_roots"] = [str(x) for x in back]
        result["splitting_field"] = L.spec
    return inputs, result, prov


def _series_poly(R, text):
    from .parsing import parse_series

    terms = parse_series(text, R.parse if hasattr(R, "parse") else R, var="t")
    top = max(terms, default=0)
    return [terms.get(i, R.zero) for i in range(top + 1)]


def cmd_selftest(args, lits):
    from .acceptance import run_all

    results = run_all(scale=args.scale, seed=args.seed if args.seed is not None else 20240611,
                      out=None if args.json else sys.stdout)
    return {"scale": args.scale}, {
        "criteria": [{"number": r.number, "name": r.name, "passed": r.passed, "detail": r.detail} for r in results],
        "passed": all(r.passed for r in results),
    }


# --------------------------------------------------------------------------
# parser and dispatch
# --------------------------------------------------------------------------


def build_parser():
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--json", action="store_true", help="emit a JSON report")
    common.add_argument("--seed", type=int, default=None)
    common.add_argument("--max-degree", type=int, default=None, help="cap on extension degrees searched")
    common.add_argument("--witt-cache-dir", default=None, help=f"universal-polynomial cache (default ${CACHE_ENV})")
    common.add_argument("--field", default=None, help="finite field p:n")
    common.add_argument("--ring", default=None, help="coefficient ring p:n, p:m:n, Z or Q")

    parser = _ArgumentParser(prog="frh", description="Frobenius modules, skew polynomials and Witt vectors.")
    parser.add_argument("--version", action="version", version=f"frh {__version__}")
    sub = parser.add_subparsers(dest="command", required=True, parser_class=_ArgumentParser)

    p = sub.add_parser("field", parents=[common], help="describe a finite field")
    p.add_argument("--element", default=None)
    p.set_defaults(handler=cmd_field)

    p = sub.add_parser("skew", parents=[common], help="skew polynomial arithmetic")
    p.add_argument("op", choices=["mul", "div", "gcd"])
    p.add_argument("a")
    p.add_argument("b")
    p.set_defaults(handler=cmd_skew)

    p = sub.add_parser("roots", parents=[common], help="roots of the additive polynomial of a skew polynomial")
    p.add_argument("--skew", required=True)
    p.set_defaults(handler=cmd_roots)

    p = sub.add_parser("module", parents=[common], help="Frobenius module operations")
    p.add_argument("op", choices=["unit", "annihilator", "unitalize", "hom"])
    p.add_argument("module", help="module JSON (inline or file path)")
    p.add_argument("--vector", default=None, help="comma-separated coordinates")
    p.add_argument("--target", default=None, help="second module for hom")
    p.set_defaults(handler=cmd_module)

    p = sub.add_parser("rh", parents=[common], help="Riemann-Hilbert style correspondences")
    p.add_argument("op", choices=["cov", "inv", "sol", "dual", "lang"])
    p.add_argument("payload", help="module, representation or algebra JSON (inline or file path)")
    p.add_argument("--strict", action="store_true", help="reject non-unit modules")
    p.add_argument("--k", type=int, default=1, help="extension degree for sol")
    p.add_argument("--vector", default=None)
    p.add_argument("--vector-field", default=None, help="field p:n the target vector lives in")
    p.set_defaults(handler=cmd_rh)

    p = sub.add_parser("witt", parents=[common], help="big Witt vector arithmetic")
    p.add_argument("op", choices=["add", "mul", "ghost", "frob", "versch", "rat2big", "roots2coef"])
    p.add_argument("values", nargs="+")
    p.add_argument("--N", type=int, default=4, help="truncation length")
    p.add_argument("--n", type=int, default=2, help="index of F_n / V_n")
    p.add_argument("--check", action="store_true", help="roots2coef: factor the result back")
    p.set_defaults(handler=cmd_witt)

    p = sub.add_parser("selftest", parents=[common], help="run the acceptance checks at reduced scale")
    p.add_argument("--scale", type=float, default=0.1)
    p.set_defaults(handler=cmd_selftest)
    return parser


def run_command(argv):
    """Parse and execute; returns the report dictionary."""
    args = build_parser().parse_args(argv)
    lits = _Literals(argv)
    t0 = time.perf_counter()
    out = args.handler(args, lits)
    inputs, result = out[0], out[1]
    prov = {"version": __version__, "seed": args.seed}
    if len(out) > 2:
        prov.update(out[2])
    return {
        "schema_version": SCHEMA_VERSION,
        "command": " ".join(a for a in [args.command, getattr(args, "op", None)] if a),
        "inputs": inputs,
        "result": result,
        "provenance": prov,
        "timing": {"seconds": round(time.perf_counter() - t0, 6)},
    }


def emit_report(report, fmt="human") -> str:
    if fmt == "json":
        return json.dumps(report, indent=2, sort_keys=True)
    lines = [f"# {report['command']}"]
    for key, val in report["inputs"].items():
        lines.append(f"{key}: {json.dumps(val) if isinstance(val, (dict, list)) else val}")
    for key, val in report["result"].items():
        if isinstance(val, list):
            lines.append(f"{key}:")
            lines.extend(f"  {json.dumps(v) if isinstance(v, (dict, list)) else v}" for v in val)
        elif isinstance(val, dict):
            lines.append(f"{key}: {json.dumps(val, sort_keys=True)}")
        else:
            lines.append(f"{key}: {val}")
    return "\n".join(lines)


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else list(argv)
    try:
        report = run_command(argv)
    except SystemExit as exc:  # --help / --version
        return int(exc.code or 0)
    except InputError as exc:
        print(f"frh: error: {exc}", file=sys.stderr)
        if exc.column is not None:
            line = " ".join(["frh"] + argv)
            print(f"  {line}\n  {' ' * exc.column}^", file=sys.stderr)
        return EXIT_INVALID
    except (RootSearchError, LangBoundError) as exc:
        print(f"frh: bound exhausted: {exc}", file=sys.stderr)
        return EXIT_BOUND
    except (FieldError, ModuleError, SkewPolyError, WittError, SchemaError, ParseError,
            ValueError, ZeroDivisionError, OSError) as exc:
        print(f"frh: error: {exc}", file=sys.stderr)
        return EXIT_INVALID
    as_json = "--json" in argv
    print(emit_report(report, "json" if as_json else "human"))
    if report["command"] == "selftest" and not report["result"]["passed"]:
        return 1
    return EXIT_OK


if __name__ == "__main__":
    sys.exit(main())
