"""Command-line interface: ``convcodes {code,conv,family,selftest}``.

Results go to stdout; errors go to stderr as a JSON object. Exit status is
0 on success, 2 on invalid input, 3 when an enumeration guard is exceeded
(rerun with a larger guard), and 1 on an internal certification fault.
"""

from __future__ import annotations

import argparse
import csv
import io as _io
import json
import logging
import math
import os
import sys
from fractions import Fraction

from .blockcode import (
    DEFAULT_MAX_CODEWORDS,
    certify_labels,
    check_code,
    dual,
    min_distance,
)
from .combinators import direct_sum, expand, extend, product, puncture, u_u_plus_v
from .convolutional import (
    DEFAULT_MAX_COSETS,
    DEFAULT_MAX_MINORS,
    DEFAULT_MAX_STATES,
    DEFAULT_MAX_TRUNCATED,
    free_distance_search,
    free_distance_truncated,
    generalized_singleton,
    internal_degree,
    is_basic,
    is_reduced,
    unit_memory_from_block,
)
from .errors import CertificationError, CodingError, GuardExceeded
from .families import FamilySpec, check_report, run_family
from .galois import embedding_new, field_from_order
from .io import code_to_json, conv_to_json, dumps, load_code, load_conv, read_json

EXIT_OK, EXIT_FAULT, EXIT_INVALID, EXIT_GUARD = 0, 1, 2, 3

GUARDS = {
    "max_codewords": ("CONVCODES_MAX_CODEWORDS", DEFAULT_MAX_CODEWORDS),
    "max_states": ("CONVCODES_MAX_STATES", DEFAULT_MAX_STATES),
    "max_cosets": ("CONVCODES_MAX_COSETS", DEFAULT_MAX_COSETS),
    "max_truncated": ("CONVCODES_MAX_TRUNCATED", DEFAULT_MAX_TRUNCATED),
}


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise CodingError(f"usage: {message}")


def _guard(args, name: str) -> int:
    value = getattr(args, name)
    if value is None:
        env, default = GUARDS[name]
        raw = os.environ.get(env)
        try:
            value = int(raw) if raw is not None else default
        except ValueError:
            raise CodingError(f"{env} must be an integer, got {raw!r}") from None
    if value < 1:
        raise CodingError(f"{name} must be positive")
    return value


def _int_list(text: str) -> list[int]:
    try:
        return [int(x) for x in text.split(",") if x.strip()]
    except ValueError:
        raise CodingError(f"expected comma-separated integers, got {text!r}") from None


# -- output -------------------------------------------------------------------

def _cell(v) -> str:
    if v is None:
        return ""
    if isinstance(v, (dict, list, tuple)):
        return json.dumps(v, sort_keys=True, separators=(",", ":"))
    if isinstance(v, bool):
        return str(v).lower()
    return str(v)


def render(result, fmt: str) -> str:
    """Serialise a dict (or list of flat dicts) as json, csv or table."""
    if fmt == "json":
        return dumps(result)
    rows = result if isinstance(result, list) else [result]
    keys = list(rows[0]) if rows else []
    if fmt == "csv":
        buf = _io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(keys)
        for r in rows:
            w.writerow([_cell(r.get(k)) for k in keys])
        return buf.getvalue()
    if isinstance(result, dict):
        width = max((len(k) for k in keys), default=0)
        return "".join(f"{k.ljust(width)}  {_cell(result[k])}\n" for k in keys)
    cols = [[k] + [_cell(r.get(k)) for r in rows] for k in keys]
    widths = [max(len(c) for c in col) for col in cols]
    lines = ["  ".join(col[i].rjust(w) for col, w in zip(cols, widths)) for i in range(len(rows) + 1)]
    return "\n".join(lines) + "\n"


def _emit(args, result) -> None:
    text = render(result, args.format)
    if getattr(args, "out", None):
        with open(args.out, "w") as fh:
            fh.write(text)
    else:
        sys.stdout.write(text)


# -- code ---------------------------------------------------------------------

def _code_info(C) -> dict:
    lo, hi = C.distance_interval()
    rate = Fraction(C.k, C.n)
    return {
        "name": C.name,
        "q": C.field.q,
        "n": C.n,
        "k": C.k,
        "d_lo": lo,
        "d_hi": hi,
        "rate_num": rate.numerator,
        "rate_den": rate.denominator,
        **certify_labels(C),
    }


def cmd_code(args) -> dict:
    C = load_code(args.inputs[0])
    guard = _guard(args, "max_codewords")
    if args.action == "info":
        return _code_info(C)
    if args.action == "mindist":
        return {"d": min_distance(C, guard)}
    if args.action == "dual":
        D = dual(C)
        if D.k == 0:
            raise CodingError("the dual is the zero code")
        return code_to_json(D)
    if args.action == "check":
        out = check_code(C)
        claimed = C.meta.get("claimed_d")
        if claimed is not None:
            d = min_distance(C, guard)
            out["d"] = d
            out["claimed_d"] = claimed
            out["claimed_d_ok"] = d == int(claimed)
            out["ok"] = out["ok"] and out["claimed_d_ok"]
        return out
    return code_to_json(_transform(args, C))


def _transform(args, C):
    op = args.op
    if op is None:
        raise CodingError("code transform needs --op")
    if op in ("sum", "uv", "product"):
        if len(args.inputs) < 2:
            raise CodingError(f"{op} needs a second --in")
        C2 = load_code(args.inputs[1])
        return {"sum": direct_sum, "uv": u_u_plus_v, "product": product}[op](C, C2)
    if op == "extend":
        return extend(C)
    if op == "puncture":
        return puncture(C, args.coord)
    # expand
    small = field_from_order(args.subfield_q or C.field.p)
    m = C.field.e // small.e
    if small.p != C.field.p or m * small.e != C.field.e or m < 2:
        raise CodingError(f"GF({small.q}) is not a proper subfield of GF({C.field.q})")
    emb = embedding_new(small, m, _int_list(args.basis) if args.basis else None)
    return expand(C, emb)


# -- conv ---------------------------------------------------------------------

def cmd_conv(args) -> dict:
    if args.action == "bound":
        if args.inputs:
            V = load_conv(args.inputs[0])
            n, k, gamma = V.n, V.k, V.gamma
        elif None not in (args.n, args.k, args.gamma):
            n, k, gamma = args.n, args.k, args.gamma
        else:
            raise CodingError("conv bound needs --in or all of --n --k --gamma")
        sd = generalized_singleton(n, k, gamma)
        return {"n": n, "k": k, "gamma": gamma, "s": sd.s, "r": sd.r}
    if not args.inputs:
        raise CodingError(f"conv {args.action} needs --in")
    if args.action == "build":
        if args.gamma0 is None:
            raise CodingError("conv build needs --gamma0")
        C = load_code(args.inputs[0])
        order = _int_list(args.row_order) if args.row_order else None
        V = unit_memory_from_block(C, args.gamma0, row_order=order, max_codewords=_guard(args, "max_codewords"))
        return conv_to_json(V)
    V = load_conv(args.inputs[0])
    if args.action == "check":
        # load_conv has already certified; report both routes where affordable
        out = {**V.params(), "basic": is_basic(V.generator), "reduced": is_reduced(V.generator)}
        if math.comb(V.n, V.k) <= DEFAULT_MAX_MINORS:
            out["basic_smith"] = is_basic(V.generator, "smith")
            out["internal_degree"] = internal_degree(V.generator)
        return out
    # freedist
    if args.truncated is not None:
        d = free_distance_truncated(V, args.truncated, _guard(args, "max_truncated"))
        # for memory <= 1 this is exact only when L reaches a minimal witness
        return {"df_truncated": d, "L": args.truncated, "kind": "upper_bound"}
    fd = free_distance_search(V, max_states=_guard(args, "max_states"), max_cosets=_guard(args, "max_cosets"))
    V = V.with_df(fd.value)
    return {
        "df": fd.value,
        "witness_length": fd.witness_length,
        "witness": [list(b) for b in fd.witness],
        "df_lb": V.df_lb,
        "s": V.s,
        "r": V.r,
    }


# -- family -------------------------------------------------------------------

def cmd_family(args):
    if not args.spec:
        raise CodingError("family report needs --spec")
    spec = FamilySpec.from_json(read_json(args.spec), base_dir=os.path.dirname(os.path.abspath(args.spec)))
    if args.max_states is not None or "CONVCODES_MAX_STATES" in os.environ:
        spec.max_states = _guard(args, "max_states")
    if args.max_cosets is not None or "CONVCODES_MAX_COSETS" in os.environ:
        spec.max_cosets = _guard(args, "max_cosets")
    report, _ = run_family(spec)
    problems = check_report(report)
    if problems:
        raise CertificationError("; ".join(problems))
    if args.format == "csv":
        return report.to_csv()
    if args.format == "json":
        return report.to_json()
    return [r.as_dict() for r in report.rows]


# -- selftest -----------------------------------------------------------------

def cmd_selftest(args) -> dict:
    from . import selftest

    return selftest.run(seed=args.seed)


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    common = _Parser(add_help=False)
    common.add_argument("--format", choices=("json", "csv", "table"), default=None)
    common.add_argument("--out", help="write the result to a file instead of stdout")
    for name in GUARDS:
        common.add_argument("--" + name.replace("_", "-"), dest=name, type=int, default=None)
    common.add_argument("--seed", type=int, default=0)
    common.add_argument("-v", "--verbose", action="count", default=0)

    p = _Parser(prog="convcodes", description="Convolutional codes from linear block codes.")
    sub = p.add_subparsers(dest="command", required=True, parser_class=_Parser)

    pc = sub.add_parser("code", parents=[common], help="block code operations")
    pc.add_argument("action", choices=("info", "dual", "mindist", "check", "transform"))
    pc.add_argument("--in", dest="inputs", action="append", default=[], required=True)
    pc.add_argument("--in2", dest="in2")
    pc.add_argument("--op", choices=("expand", "extend", "puncture", "sum", "uv", "product"))
    pc.add_argument("--coord", type=int)
    pc.add_argument("--basis", help="comma-separated basis of GF(q^m) over the subfield")
    pc.add_argument("--subfield-q", type=int)

    pv = sub.add_parser("conv", parents=[common], help="convolutional code operations")
    pv.add_argument("action", choices=("build", "check", "freedist", "bound"))
    pv.add_argument("--in", dest="inputs", action="append", default=[])
    pv.add_argument("--gamma0", type=int)
    pv.add_argument("--row-order", help="comma-separated permutation of generator rows")
    pv.add_argument("--truncated", type=int, metavar="L")
    pv.add_argument("--n", type=int)
    pv.add_argument("--k", type=int)
    pv.add_argument("--gamma", type=int)

    pf = sub.add_parser("family", parents=[common], help="family reports")
    pf.add_argument("action", choices=("report",))
    pf.add_argument("--spec")

    sub.add_parser("selftest", parents=[common], help="run the built-in invariant checks")
    return p


def run(argv=None) -> int:
    try:
        args = build_parser().parse_args(argv)
        if args.format is None:
            args.format = "csv" if args.command == "family" else "json"
        logging.basicConfig(
            level=logging.WARNING - 10 * min(args.verbose, 2),
            format="%(levelname)s %(name)s: %(message)s",
            stream=sys.stderr,
        )
        if getattr(args, "in2", None):
            args.inputs.append(args.in2)
        handler = {"code": cmd_code, "conv": cmd_conv, "family": cmd_family, "selftest": cmd_selftest}
        result = handler[args.command](args)
        if isinstance(result, str):
            if args.out:
                with open(args.out, "w") as fh:
                    fh.write(result)
            else:
                sys.stdout.write(result)
        else:
            _emit(args, result)
        if args.command == "selftest" and result["failed"]:
            return EXIT_FAULT
        return EXIT_OK
    except GuardExceeded as exc:
        _error("guard_exceeded", str(exc), what=exc.what, needed=exc.needed, guard=exc.guard)
        return EXIT_GUARD
    except (CodingError, ZeroDivisionError) as exc:
        _error(type(exc).__name__, str(exc))
        return EXIT_INVALID
    except OSError as exc:
        _error("io_error", str(exc))
        return EXIT_INVALID
    except CertificationError as exc:
        _error("certification_fault", str(exc))
        return EXIT_FAULT


def _error(kind: str, message: str, **extra) -> None:
    sys.stderr.write(json.dumps({"error": kind, "message": message, **extra}, sort_keys=True) + "\n")


def main() -> None:
    sys.exit(run())


if __name__ == "__main__":
    main()
