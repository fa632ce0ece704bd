"""Code families, construction pipelines and asymptotic-goodness reports.

A family is a finite, deterministic sequence of block codes (BCH,
Reed-Solomon, Reed-Muller, catalog codes or user files). A pipeline applies
a chain of combinators to each member and turns the result into a
unit-memory convolutional code. The report tabulates rate ``k/n`` and the
normalised free distance ``d_f / r`` with ``r = max(n, s)`` as exact
rationals. Finite prefixes can only give evidence about limits, never
prove them, and the report says so.
"""

from __future__ import annotations

import csv
import io
import logging
from dataclasses import dataclass, field as dc_field
from fractions import Fraction
from pathlib import Path
from typing import Sequence

from . import codes
from .blockcode import LinearCode, certify_labels, dual, min_distance
from .combinators import direct_sum, expand, extend, product, puncture, u_u_plus_v
from .convolutional import (
    DEFAULT_MAX_COSETS,
    DEFAULT_MAX_STATES,
    ConvCode,
    free_distance_search,
    generalized_singleton,
    unit_memory_from_block,
)
from .errors import CodingError, GuardExceeded
from .galois import embedding_new, field_from_json, field_from_order

log = logging.getLogger(__name__)

KINDS = ("cyclic_catalog", "bch", "reed_solomon", "reed_muller", "user_files")
OPS = ("expand", "extend", "puncture", "direct_sum", "u_u_plus_v", "product", "dual")
_OP_ALIASES = {"sum": "direct_sum", "uv": "u_u_plus_v"}

CSV_COLUMNS = (
    "j", "n", "k", "gamma", "memory", "d_block_lo", "d_block_hi", "d_dual", "df_lb",
    "df_exact", "s", "r", "rate_num", "rate_den", "ratio_num", "ratio_den", "labels",
)
FINITE_PREFIX_NOTE = "finite-prefix evidence, not a limit statement"


@dataclass
class FamilySpec:
    kind: str
    members: list
    field: dict | None = None
    transforms: list = dc_field(default_factory=list)
    gamma0: int = 1
    row_order: list | None = None
    exact_block_guard: int = 1 << 20
    max_states: int = DEFAULT_MAX_STATES
    max_cosets: int = DEFAULT_MAX_COSETS
    compute_df: bool = True
    reference: dict | None = None
    base_dir: str = "."

    @classmethod
    def from_json(cls, obj: dict, base_dir: str = ".") -> "FamilySpec":
        obj = dict(obj)
        kind = obj.pop("kind", None)
        if kind not in KINDS:
            raise CodingError(f"family kind must be one of {KINDS}, got {kind!r}")
        members = obj.pop("members", None)
        if kind == "bch" and members is None and "lengths" in obj:
            delta = obj.pop("designed_distance", 3)
            members = [{"n": n, "delta": delta} for n in obj.pop("lengths")]
        if kind == "cyclic_catalog" and members is None and "names" in obj:
            members = list(obj.pop("names"))
        if kind == "user_files" and members is None and "files" in obj:
            members = list(obj.pop("files"))
        if not members:
            raise CodingError("family spec has no members")
        if "q" in obj:
            q = int(obj.pop("q"))
            obj["field"] = field_from_order(q).to_json()
        known = set(cls.__dataclass_fields__) - {"kind", "members", "base_dir"}
        extra = set(obj) - known
        if extra:
            raise CodingError(f"unknown family spec keys: {sorted(extra)}")
        spec = cls(kind=kind, members=members, base_dir=base_dir, **obj)
        for t in spec.transforms:
            op = _OP_ALIASES.get(t.get("op"), t.get("op"))
            if op not in OPS:
                raise CodingError(f"unknown transform {t.get('op')!r}")
        return spec


@dataclass
class Member:
    j: int
    code: LinearCode | None
    labels: dict = dc_field(default_factory=dict)
    skipped: str | None = None


def _build_member(spec: FamilySpec, item) -> LinearCode:
    kind = spec.kind
    if kind == "bch":
        F = field_from_json(spec.field or {"p": 2})
        return codes.bch_code(F, int(item["n"]), int(item.get("delta", 3)), int(item.get("b", 1)))
    if kind == "reed_solomon":
        F = field_from_json(spec.field or {"p": 2})
        return codes.reed_solomon(F, int(item["n"]), int(item["k"]))
    if kind == "reed_muller":
        return codes.reed_muller(int(item["r"]), int(item["m"]))
    if kind == "cyclic_catalog":
        if isinstance(item, str):
            return codes.catalog(item)
        F = field_from_json(spec.field or {"p": 2})
        return codes.cyclic_code(F, int(item["n"]), item["generator_poly"], meta={"name": item.get("name", "")})
    if kind == "user_files":
        from .io import load_code

        path = Path(item)
        if not path.is_absolute():
            path = Path(spec.base_dir) / path
        return load_code(path)
    raise CodingError(f"unsupported family kind {kind!r}")  # pragma: no cover


def family_generate(spec: FamilySpec) -> list[Member]:
    """Build and certify every member; failures become skipped members."""
    out = []
    for j, item in enumerate(spec.members):
        try:
            C = _build_member(spec, item)
        except CodingError as exc:
            log.info("member %d skipped: %s", j, exc)
            out.append(Member(j, None, skipped=str(exc)))
            continue
        if C.field.q ** C.k <= spec.exact_block_guard:
            min_distance(C, spec.exact_block_guard)
        out.append(Member(j, C, certify_labels(C)))
    return out


# -- pipelines ----------------------------------------------------------------

def _subfield(t: dict):
    if "subfield" in t:
        return field_from_json(t["subfield"])
    if "subfield_q" in t:
        return field_from_order(int(t["subfield_q"]))
    raise CodingError("expand needs 'subfield' or 'subfield_q'")


def _apply_op(C: LinearCode, t: dict) -> LinearCode:
    op = _OP_ALIASES.get(t["op"], t["op"])
    if op == "expand":
        small = _subfield(t)
        m = C.field.e // small.e
        if small.p != C.field.p or m * small.e != C.field.e:
            raise CodingError(f"{small!r} is not a subfield of {C.field!r}")
        emb = embedding_new(small, m, t.get("basis"))
        if emb.big != C.field:
            raise CodingError("code field does not use the default modulus of GF(q^m)")
        return expand(C, emb)
    if op == "extend":
        return extend(C)
    if op == "puncture":
        return puncture(C, t.get("coord"))
    if op == "dual":
        D = dual(C)
        if D.k == 0:
            raise CodingError("dual is the zero code")
        return D
    # binary combinators take the code with itself
    return {"direct_sum": direct_sum, "u_u_plus_v": u_u_plus_v, "product": product}[op](C, C)


def claimed_block_params(n: int, k: int, chain: Sequence[dict]) -> tuple[int, int]:
    """Closed-form ``(n, k)`` after the transform chain (binary ops use the code twice)."""
    for t in chain:
        op = _OP_ALIASES.get(t["op"], t["op"])
        if op == "expand":
            m = t.get("_m")
            if m is None:
                raise CodingError("expand claim needs the extension degree")
            n, k = m * n, m * k
        elif op == "extend":
            n += 1
        elif op == "puncture":
            n -= 1
        elif op in ("direct_sum", "u_u_plus_v"):
            n, k = 2 * n, 2 * k
        elif op == "product":
            n, k = n * n, k * k
        elif op == "dual":
            k = n - k
    return n, k


def closed_form_singleton(n: int, k: int, chain: Sequence[dict], gamma0: int) -> int | None:
    """Closed-form ``s`` for an empty or single-step chain, or ``None``.

    ``(n, k)`` are the parameters of the family member before the
    transform. The forms assume the convolutional dimension exceeds
    ``gamma0`` (so ``floor(gamma0 / dim) = 0``) and, for a transform,
    ``gamma0 = 1``.
    """
    if not chain:
        if k - gamma0 <= gamma0:
            return None
        return n - (k - gamma0) + gamma0 + 1
    if len(chain) != 1 or gamma0 != 1:
        return None
    t = chain[0]
    if claimed_block_params(n, k, chain)[1] - 1 <= 1:
        return None
    op = _OP_ALIASES.get(t["op"], t["op"])
    r = n - k
    forms = {
        "expand": lambda: t["_m"] * r + 3,
        "direct_sum": lambda: 2 * r + 3,
        "u_u_plus_v": lambda: 2 * r + 3,
        "extend": lambda: r + 4,
        "puncture": lambda: r + 2,
        "product": lambda: n * n - k * k + 3,
    }
    return forms[op]() if op in forms else None


@dataclass
class PipelineRow:
    j: int
    base: LinearCode | None
    block: LinearCode | None = None
    conv: ConvCode | None = None
    skipped: str | None = None
    labels: dict = dc_field(default_factory=dict)
    claims: dict = dc_field(default_factory=dict)


def apply_pipeline(members: Sequence[Member], spec: FamilySpec) -> list[PipelineRow]:
    """Transform each member and build its unit-memory convolutional code.

    Members violating a precondition (``k >= 2 gamma0``, a dimension-
    preserving puncture, ...) are kept as skipped rows with the reason.
    """
    rows = []
    for mem in members:
        row = PipelineRow(mem.j, mem.code, labels=dict(mem.labels))
        rows.append(row)
        if mem.code is None:
            row.skipped = mem.skipped
            continue
        C = mem.code
        chain = []
        try:
            B = C
            for t in spec.transforms:
                t = dict(t)
                if _OP_ALIASES.get(t["op"], t["op"]) == "expand":
                    t["_m"] = B.field.e // _subfield(t).e
                B = _apply_op(B, t)
                chain.append(t)
            if B.field.q ** B.k <= spec.exact_block_guard:
                min_distance(B, spec.exact_block_guard)
            V = unit_memory_from_block(
                B, spec.gamma0, row_order=spec.row_order, max_codewords=spec.exact_block_guard
            )
        except CodingError as exc:
            log.info("index %d skipped: %s", mem.j, exc)
            row.skipped = str(exc)
            continue
        row.block = B
        if chain:
            row.labels.update({f"block_{k}": v for k, v in certify_labels(B).items()})
        cn, ck = claimed_block_params(C.n, C.k, chain)
        row.claims = {
            "block_n": cn,
            "block_k": ck,
            "conv": (cn, ck - spec.gamma0, spec.gamma0, 1),
            "s": generalized_singleton(cn, ck - spec.gamma0, spec.gamma0).s,
        }
        closed = closed_form_singleton(C.n, C.k, chain, spec.gamma0)
        if closed is not None:
            row.claims["closed_form_s"] = closed
        V.meta.update({"j": mem.j, "labels": row.labels})
        row.conv = V
    return rows


# -- reports ------------------------------------------------------------------

@dataclass
class ReportRow:
    j: int
    n: int
    k: int
    gamma: int
    memory: int
    d_block_lo: int
    d_block_hi: int
    d_dual: int | None
    df_lb: int
    df_exact: int | None
    s: int
    r: int
    rate: Fraction
    ratio: Fraction
    labels: dict

    @property
    def ratio_is_lower_bound(self) -> bool:
        return self.df_exact is None

    def label_string(self) -> str:
        parts = []
        for key in sorted(self.labels):
            v = self.labels[key]
            parts.append(f"{key}={str(v).lower() if isinstance(v, bool) else v}")
        parts.append("ratio=" + ("lower_bound" if self.ratio_is_lower_bound else "exact"))
        return ";".join(parts)

    def as_dict(self) -> dict:
        return {
            "j": self.j,
            "n": self.n,
            "k": self.k,
            "gamma": self.gamma,
            "memory": self.memory,
            "d_block_lo": self.d_block_lo,
            "d_block_hi": self.d_block_hi,
            "d_dual": self.d_dual,
            "df_lb": self.df_lb,
            "df_exact": self.df_exact,
            "s": self.s,
            "r": self.r,
            "rate_num": self.rate.numerator,
            "rate_den": self.rate.denominator,
            "ratio_num": self.ratio.numerator,
            "ratio_den": self.ratio.denominator,
            "labels": self.label_string(),
        }


@dataclass
class FamilyReport:
    rows: list[ReportRow]
    skipped: list[dict] = dc_field(default_factory=list)
    reference: dict | None = None
    note: str = "stand-in families: asymptotic optimality is not claimed"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.DictWriter(buf, fieldnames=CSV_COLUMNS, lineterminator="\n")
        w.writeheader()
        for row in self.rows:
            w.writerow({k: ("" if v is None else v) for k, v in row.as_dict().items()})
        return buf.getvalue()

    def to_json(self) -> dict:
        out = {"rows": [r.as_dict() for r in self.rows], "skipped": self.skipped, "note": self.note}
        if self.reference is not None:
            out["reference"] = self.reference
        return out


def reference_constants(ref: dict | None) -> dict | None:
    """Annotate ``R = 1 - delta - 1/(l - 1)`` from ``{"l": .., "delta": ..}``."""
    if not ref:
        return None
    l = int(ref["l"])
    delta = Fraction(str(ref["delta"]))
    R = 1 - delta - Fraction(1, l - 1)
    return {"l": l, "delta": str(delta), "R": str(R)}


def agcc_report(
    convs: Sequence[ConvCode],
    *,
    compute_df: bool = True,
    max_states: int = DEFAULT_MAX_STATES,
    max_cosets: int = DEFAULT_MAX_COSETS,
    skipped: Sequence[dict] = (),
    reference: dict | None = None,
) -> FamilyReport:
    """Per-code metrics; exact free distance where the search guards allow."""
    if not convs:
        raise CodingError("empty family: nothing to report")
    rows = []
    for idx, V in enumerate(convs):
        df = V.df
        if df is None and compute_df:
            try:
                df = free_distance_search(V, max_states=max_states, max_cosets=max_cosets).value
            except GuardExceeded as exc:
                log.info("free distance of row %s not computed: %s", V.meta.get("j", idx), exc)
        if df is not None:
            V = V.with_df(df)
        block = V.meta.get("block") or {}
        lb = V.df_lb if V.df_lb is not None else 1
        d_lo, d_hi = block.get("d_lo", lb), block.get("d_hi", V.s)
        d_dual = block.get("d_exact")
        rows.append(
            ReportRow(
                j=V.meta.get("j", idx),
                n=V.n,
                k=V.k,
                gamma=V.gamma,
                memory=V.memory,
                d_block_lo=d_lo,
                d_block_hi=d_hi,
                d_dual=d_dual,
                df_lb=lb,
                df_exact=df,
                s=V.s,
                r=V.r,
                rate=Fraction(V.k, V.n),
                ratio=Fraction(df if df is not None else lb, V.r),
                labels=dict(V.meta.get("labels") or {}),
            )
        )
    return FamilyReport(rows, list(skipped), reference_constants(reference))


def run_family(spec: FamilySpec) -> tuple[FamilyReport, list[PipelineRow]]:
    members = family_generate(spec)
    prows = apply_pipeline(members, spec)
    convs = []
    skipped = []
    for row in prows:
        if row.conv is None:
            skipped.append({"j": row.j, "reason": row.skipped})
            continue
        lo, hi = row.block.distance_interval()
        row.conv.meta["block"] = {"d_lo": lo, "d_hi": hi, "d_exact": lo if lo == hi else None}
        convs.append(row.conv)
    if not convs:
        raise CodingError("every family member was skipped")
    report = agcc_report(
        convs,
        compute_df=spec.compute_df,
        max_states=spec.max_states,
        max_cosets=spec.max_cosets,
        skipped=skipped,
        reference=spec.reference,
    )
    return report, prows


def check_report(report: FamilyReport) -> list[str]:
    """Internal-consistency violations of a report (empty list when sound)."""
    bad = []
    for row in report.rows:
        sd = generalized_singleton(row.n, row.k, row.gamma)
        if (sd.s, sd.r) != (row.s, row.r):
            bad.append(f"row {row.j}: stored s/r {row.s}/{row.r} != recomputed {sd.s}/{sd.r}")
        if row.rate != Fraction(row.k, row.n):
            bad.append(f"row {row.j}: rate mismatch")
        if not row.d_block_lo <= row.d_block_hi:
            bad.append(f"row {row.j}: empty block distance interval")
        if row.df_lb > row.s:
            bad.append(f"row {row.j}: df lower bound above the Singleton bound")
        if row.df_exact is not None:
            if row.d_dual is not None and not row.d_dual <= row.df_exact:
                bad.append(f"row {row.j}: d_dual {row.d_dual} > df {row.df_exact}")
            if not row.df_lb <= row.df_exact <= row.s:
                bad.append(f"row {row.j}: df {row.df_exact} outside [{row.df_lb}, {row.s}]")
            if row.ratio != Fraction(row.df_exact, row.r):
                bad.append(f"row {row.j}: ratio != df/r")
        elif row.ratio != Fraction(row.df_lb, row.r):
            bad.append(f"row {row.j}: lower-bound ratio != df_lb/r")
    return bad


def goodness_trend(report: FamilyReport, rate_floor, ratio_floor) -> dict:
    """Compare row-wise minima of rate and ratio against floors in (0, 1)."""
    if not report.rows:
        raise CodingError("empty report")
    rate_floor, ratio_floor = Fraction(str(rate_floor)), Fraction(str(ratio_floor))
    for fl in (rate_floor, ratio_floor):
        if not 0 < fl <= 1:
            raise CodingError("floors must lie in (0, 1]")
    rates = [r.rate for r in report.rows]
    ratios = [r.ratio for r in report.rows]
    running_rate, running_ratio = [], []
    for a, b in zip(rates, ratios):
        running_rate.append(max(a, running_rate[-1]) if running_rate else a)
        running_ratio.append(max(b, running_ratio[-1]) if running_ratio else b)
    min_rate, min_ratio = min(rates), min(ratios)
    return {
        "pass": min_rate >= rate_floor and min_ratio >= ratio_floor,
        "min_rate": min_rate,
        "min_ratio": min_ratio,
        "running_max_rate": running_rate,
        "running_max_ratio": running_ratio,
        "ratio_includes_lower_bounds": any(r.ratio_is_lower_bound for r in report.rows),
        "note": FINITE_PREFIX_NOTE,
    }
