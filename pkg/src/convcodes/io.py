"""JSON serialisation of fields, block codes and convolutional codes."""

from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .blockcode import LinearCode, ZeroCode, code_from_generator
from .combinators import TransformRecord
from .convolutional import ConvCode, conv_code
from .errors import CodingError
from .galois import field_from_json
from .polys import PolyMatrix


def _jsonable(obj):
    if isinstance(obj, TransformRecord):
        return obj.to_json()
    if isinstance(obj, dict):
        return {k: _jsonable(v) for k, v in obj.items() if not k.startswith("_")}
    if isinstance(obj, (list, tuple)):
        return [_jsonable(v) for v in obj]
    if isinstance(obj, np.integer):
        return int(obj)
    return obj


def code_to_json(C: LinearCode | ZeroCode) -> dict:
    if isinstance(C, ZeroCode):
        return {"field": C.field.to_json(), "generator": [], "n": C.n, "meta": _jsonable(C.meta)}
    meta = _jsonable(C.meta)
    lo, hi = C.distance_interval()
    meta["d_interval"] = [lo, hi]
    meta["generator_order"] = "rref"
    return {"field": C.field.to_json(), "generator": C.generator.tolist(), "meta": meta}


def code_from_json(obj: dict) -> LinearCode:
    """Parse a code object; a zero generator raises :class:`CodingError`."""
    try:
        field = field_from_json(obj["field"])
        rows = obj["generator"]
    except (KeyError, TypeError) as exc:
        raise CodingError(f"malformed code JSON: missing {exc}") from None
    if not rows or not any(any(r) for r in rows):
        raise CodingError("zero code: the generator has no nonzero row")
    meta = dict(obj.get("meta") or {})
    d_lo = d_hi = None
    if "d_interval" in meta:
        d_lo, d_hi = (int(x) for x in meta["d_interval"])
    return code_from_generator(field, rows, d_lo=d_lo, d_hi=d_hi, meta=meta)


def conv_to_json(V: ConvCode) -> dict:
    return {
        "field": V.field.to_json(),
        "coeffs": V.generator.to_json(),
        "params": V.params(),
        "meta": _jsonable(V.meta),
    }


def conv_from_json(obj: dict) -> ConvCode:
    """Parse and re-certify a convolutional code object."""
    try:
        field = field_from_json(obj["field"])
        coeffs = obj["coeffs"]
    except (KeyError, TypeError) as exc:
        raise CodingError(f"malformed conv JSON: missing {exc}") from None
    G = PolyMatrix(field, np.array(coeffs, dtype=np.int64))
    params = obj.get("params") or {}
    V = conv_code(G, df_lb=params.get("df_lb"), df=params.get("df"), meta=obj.get("meta") or {})
    for key in ("n", "k", "gamma", "memory", "s", "r"):
        if key in params and params[key] != getattr(V, key):
            raise CodingError(f"params.{key}={params[key]} disagrees with the matrix ({getattr(V, key)})")
    return V


def read_json(path) -> dict:
    try:
        return json.loads(Path(path).read_text())
    except FileNotFoundError:
        raise CodingError(f"no such file: {path}") from None
    except json.JSONDecodeError as exc:
        raise CodingError(f"{path}: invalid JSON ({exc})") from None


def dumps(obj) -> str:
    return json.dumps(obj, sort_keys=True, indent=2) + "\n"


def write_json(path, obj) -> None:
    Path(path).write_text(dumps(obj))


def load_code(path) -> LinearCode:
    return code_from_json(read_json(path))


def load_conv(path) -> ConvCode:
    return conv_from_json(read_json(path))
