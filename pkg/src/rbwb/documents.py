"""Versioned JSON documents for algebras, Hopf algebras, groups, operators,
search results and reports.

A document is ``{"kind": ..., "version": 1, "body": {...}}``.  Scalars are
strings ("3/2", "4 mod 5") so nothing is lost to floating point, and
emitting a parsed document reproduces the canonical text exactly.
"""

from __future__ import annotations

import json
from dataclasses import dataclass

from .algebra import AlgebraSpec
from .errors import ParseError
from .groups import GroupRB, GroupTable
from .hopf import HopfSpec
from .linalg import Mat, Vec
from .rbops import RBCandidate
from .report import Report
from .scalars import FieldCtx

__all__ = ["Document", "KINDS", "VERSION", "emit", "parse", "to_document", "from_document",
           "load", "dump"]

KINDS = ("algebra", "hopf", "group", "operator", "search", "report")
VERSION = 1


@dataclass
class Document:
    kind: str
    body: dict
    version: int = VERSION

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ParseError(f"unknown document kind {self.kind!r}")
        if self.version != VERSION:
            raise ParseError(f"unsupported {self.kind} document version {self.version}")

    def to_json(self) -> dict:
        return {"kind": self.kind, "version": self.version, "body": self.body}


def emit(doc: Document) -> str:
    return json.dumps(doc.to_json(), indent=2, sort_keys=True, ensure_ascii=False) + "\n"


def parse(text: str) -> Document:
    try:
        raw = json.loads(text)
    except json.JSONDecodeError as e:
        raise ParseError(f"malformed document: {e.msg}", e.lineno, e.colno) from None
    if not isinstance(raw, dict) or not {"kind", "version", "body"} <= set(raw):
        raise ParseError("a document needs 'kind', 'version' and 'body'", 1, 1)
    if not isinstance(raw["body"], dict):
        raise ParseError("document body must be an object", 1, 1)
    return Document(raw["kind"], raw["body"], raw["version"])


def load(path) -> Document:
    with open(path, encoding="utf-8") as fh:
        return parse(fh.read())


def dump(doc: Document, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(emit(doc))


# -- encoders -------------------------------------------------------------

def _scalars(ctx: FieldCtx, arr) -> list:
    if getattr(arr, "ndim", 1) == 1:
        return [ctx.render(v, document=True) for v in arr]
    return [_scalars(ctx, row) for row in arr]


def _algebra_body(A: AlgebraSpec) -> dict:
    return {
        "field": A.ctx.token,
        "name": A.name,
        "labels": list(A.labels),
        "structure": _scalars(A.ctx, A.structure),
        "unit": None if A.unit is None else _scalars(A.ctx, A.unit.data),
        "associative": A.assoc_expected,
    }


def _group_body(G: GroupTable) -> dict:
    return {"name": G.name, "labels": list(G.labels), "table": [list(r) for r in G.table]}


def to_document(obj, **extra) -> Document:
    if isinstance(obj, HopfSpec):
        ctx = obj.ctx
        return Document("hopf", {
            "name": obj.name,
            "algebra": _algebra_body(obj.alg),
            "delta": _scalars(ctx, obj.delta.data),
            "counit": _scalars(ctx, obj.counit.data[0]),
            "antipode": _scalars(ctx, obj.antipode.data),
        })
    if isinstance(obj, AlgebraSpec):
        return Document("algebra", _algebra_body(obj))
    if isinstance(obj, GroupTable):
        return Document("group", _group_body(obj))
    if isinstance(obj, GroupRB):
        return Document("operator", {
            "type": "group",
            "group": _group_body(obj.group),
            "map": obj.describe(),
            "weight": obj.weight,
        })
    if isinstance(obj, (RBCandidate, Mat)):
        cand = obj if isinstance(obj, RBCandidate) else RBCandidate(obj)
        ctx = cand.ctx
        labels = extra.get("labels")
        return Document("operator", {
            "type": "linear",
            "field": ctx.token,
            "labels": list(labels) if labels else None,
            "matrix": _scalars(ctx, cand.op.data),
            "weight": None if cand.weight is None else cand.weight.to_document(),
        })
    if isinstance(obj, Report):
        return Document("report", obj.to_dict())
    raise TypeError(f"no document form for {type(obj).__name__}")


def search_document(result, labels, diff=None) -> Document:
    """Document for a :class:`~rbwb.search.SearchResult` (and optional diff)."""
    ctx = result.space.ctx
    body = {
        "space": result.space.describe(),
        "labels": list(labels),
        "count": result.count,
        "scanned": result.scanned,
        "timing": round(result.timing, 6),
        "candidates": [_scalars(ctx, c.op.data) for c in result.candidates],
    }
    if diff is not None:
        body["diff"] = {
            "families": diff.families,
            "found_only": [_scalars(ctx, m.data) for m in diff.found_only],
            "family_only": [_scalars(ctx, m.data) for m in diff.family_only],
            "both": len(diff.both),
        }
    return Document("search", body)


# -- decoders -------------------------------------------------------------

def _need(body: dict, key: str, kind: str):
    if key not in body:
        raise ParseError(f"{kind} document is missing {key!r}")
    return body[key]


def _ctx(token: str) -> FieldCtx:
    try:
        return FieldCtx.parse(token)
    except (ValueError, TypeError) as e:
        raise ParseError(f"bad field {token!r}: {e}") from None


def _array(ctx, rows):
    try:
        return ctx.array(rows)
    except (TypeError, ValueError) as e:
        if isinstance(e, ParseError):
            raise
        raise ParseError(f"bad scalar table: {e}") from None


def _algebra_from(body: dict) -> AlgebraSpec:
    ctx = _ctx(_need(body, "field", "algebra"))
    labels = _need(body, "labels", "algebra")
    unit = body.get("unit")
    return AlgebraSpec(ctx, labels, _array(ctx, _need(body, "structure", "algebra")),
                       None if unit is None else Vec(ctx, _array(ctx, unit)),
                       assoc_expected=body.get("associative", True), name=body.get("name", ""))


def _group_from(body: dict) -> GroupTable:
    return GroupTable(_need(body, "table", "group"), body.get("labels"), body.get("name", ""))


def from_document(doc: Document):
    """Rebuild the object a document describes (search documents stay plain dicts)."""
    b = doc.body
    if doc.kind == "algebra":
        return _algebra_from(b)
    if doc.kind == "hopf":
        alg = _algebra_from(_need(b, "algebra", "hopf"))
        ctx = alg.ctx
        return HopfSpec(alg, Mat(ctx, _array(ctx, _need(b, "delta", "hopf"))),
                        Mat(ctx, _array(ctx, [_need(b, "counit", "hopf")])),
                        Mat(ctx, _array(ctx, _need(b, "antipode", "hopf"))), b.get("name", ""))
    if doc.kind == "group":
        return _group_from(b)
    if doc.kind == "operator":
        if b.get("type") == "group":
            G = _group_from(_need(b, "group", "operator"))
            idx = {lab: i for i, lab in enumerate(G.labels)}
            try:
                m = [idx[b["map"][lab]] for lab in G.labels]
            except KeyError as e:
                raise ParseError(f"group operator map is missing or names {e}") from None
            return GroupRB(G, m, int(b.get("weight", 1)))
        ctx = _ctx(_need(b, "field", "operator"))
        w = b.get("weight")
        return RBCandidate(Mat(ctx, _array(ctx, _need(b, "matrix", "operator"))),
                           None if w is None else ctx(w))
    if doc.kind == "report":
        return Report.from_dict(b)
    return b
