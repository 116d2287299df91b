"""Catalog of the parametric operator families on H4.

Every matrix is written in the basis (1, g, x, gx) exactly as the formulas
are printed, including coefficients that do not survive checking.  The
checkers decide; nothing here is corrected.

Three groups of families:

* ``ma_a`` .. ``ma_h``: associative RB operators of free weight ``lam``.
* ``t41_*`` / ``t42_*``: Hopf-type operators extending the trivial map
  (B(1) = B(g) = 1) or the identity (B(1) = 1, B(g) = g) on {1, g}.
* ``lie_*`` / ``b0_lie_*``: operators on the bracket algebra with a fixed
  weight or any weight.
"""

from __future__ import annotations

import itertools
import random
from dataclasses import dataclass, field, replace
from typing import Callable

from .errors import ConstraintViolated, WrongCharacteristic
from .linalg import Mat
from .rbops import RBCandidate
from .scalars import FieldCtx, Scalar

__all__ = [
    "Family",
    "FamilySpec",
    "FAMILIES",
    "PINS",
    "get_family",
    "family_instantiate",
    "sample_parameters",
    "sweep_parameters",
    "family_members",
    "survey_family",
]

# pinned columns for the two extensions of a group RB operator on {1, g}
PINS = {
    "b0": {"1": (1, 0, 0, 0), "g": (1, 0, 0, 0)},
    "bm1": {"1": (1, 0, 0, 0), "g": (0, 1, 0, 0)},
}


@dataclass(frozen=True)
class Family:
    id: str
    kind: str  # "assoc", "chrb" or "lie"
    params: tuple[str, ...]
    columns: Callable
    char: str = "any"  # "any", "2" or "odd"
    weight: object = None  # "lam", "any", an int, or None for Hopf-type families
    constraints: tuple = ()
    pins: str | None = None
    text: str = ""

    @property
    def required(self) -> tuple[str, ...]:
        return self.params

    @property
    def optional(self) -> tuple[str, ...]:
        return ("lam",) if self.weight == "any" else ()

    def char_ok(self, ctx: FieldCtx) -> bool:
        p = ctx.characteristic
        if self.char == "2":
            return p == 2
        if self.char == "odd":
            return p != 2
        return True

    def constraint_failures(self, values: dict) -> list[str]:
        return [desc for desc, pred in self.constraints if not pred(values)]

    def summary(self) -> dict:
        return {
            "id": self.id,
            "kind": self.kind,
            "params": list(self.params),
            "characteristic": {"any": "any", "2": "2", "odd": "not 2"}[self.char],
            "weight": "none" if self.weight is None else str(self.weight),
            "constraints": [d for d, _ in self.constraints],
            "pins": self.pins,
            "formula": self.text,
        }


@dataclass
class FamilySpec:
    family_id: str
    params: dict = field(default_factory=dict)
    ctx: FieldCtx | None = None

    def __post_init__(self):
        if self.ctx is None:
            raise ValueError("FamilySpec needs a field context")
        self.params = {k: v if isinstance(v, Scalar) else self.ctx(v)
                       for k, v in self.params.items()}


def _nz(name):
    return (f"{name} != 0", lambda v: not v[name].is_zero())


def _ma_a(v):
    lam = v["lam"]
    return [(0, 0, 0, 0), (0, 0, 0, 0), (0, 0, -lam, 0), (0, 0, 0, -lam)]


def _ma_b(v):
    lam = v["lam"]
    return [(-lam, 0, 0, 0), (0, -lam, 0, 0), (0, 0, 0, 0), (0, 0, 0, 0)]


def _ma_c(v):
    lam = v["lam"]
    return [(-lam, 0, 0, 0), (0, -lam, 0, 0), (0, 0, -lam, 0), (0, 0, 0, -lam)]


def _ma_d(v):
    lam, p1, p2, p3 = v["lam"], v["p1"], v["p2"], v["p3"]
    return [
        (0, 0, 0, 0),
        (-p1, p1, -(lam + p1) * (lam + p1 + p2) / p3, (lam + p1) * (lam + p2) / p3),
        (-p3, p3, -(2 * lam + p1 + p3), lam + p2),
        (-p3, p3, -(lam + p1 + p2), p2),
    ]


def _ma_e(v):
    lam, p1, p2, p3 = v["lam"], v["p1"], v["p2"], v["p3"]
    return [
        (-lam, 0, 0, 0),
        (lam + p1, p1, -(lam + p1) * (lam + p1 + p2) / p3, (lam + p1) * (lam + p2) / p3),
        (p3, p3, -(2 * lam + p1 + p2), lam + p2),
        (p3, p3, -(lam + p1 + p2), p2),
    ]


def _ma_f(v):
    lam, p1, p2 = v["lam"], v["p1"], v["p2"]
    return [
        (-lam, 0, 0, 0),
        (lam, 0, p1, p1 * p2 / (lam + p2)),
        (0, 0, -(lam + p2), -p2),
        (0, 0, lam + p2, p2),
    ]


def _ma_g(v):
    lam, p1, p2 = v["lam"], v["p1"], v["p2"]
    c = lam * (lam + p1) / p2
    return [
        (-lam, 0, 0, 0),
        (lam, 0, c, c),
        (-p2, -p2, -(2 * lam + p1), -(lam + p1)),
        (p2, p2, lam + p1, p1),
    ]


def _ma_h(v):
    lam, p1, p2 = v["lam"], v["p1"], v["p2"]
    half = lam / 2
    return [
        (half, -half, p1, p2),
        (half, -half, -p2, p1),
        (0, 0, -half, -half),
        (0, 0, -half, -half),
    ]


_B0 = [(1, 0, 0, 0), (1, 0, 0, 0)]
_BM1 = [(1, 0, 0, 0), (0, 1, 0, 0)]


def _t41_char2(v):
    a1, a3, a4 = v["a1"], v["a3"], v["a4"]
    col = (a1, a1, a3, a4)
    return [*_B0, col, col]


def _t41_a(v):
    a1, a3 = v["a1"], v["a3"]
    col = (a1, a1, a3, -2 * a3)
    return [*_B0, col, col]


def _t41_b(v):
    a1, a3 = v["a1"], v["a3"]
    col = (a1, -a1, a3, -2 * a3)
    return [*_B0, col, col]


def _t42_char2(v):
    a1, a3, a4 = v["a1"], v["a3"], v["a4"]
    return [*_BM1, (a1, a1, a3, a4), (a1, a1, a4, a3)]


def _t42_a(v):
    a = v["a"]
    col = (a, -a, 0, 0)
    return [*_BM1, col, col]


def _t42_b(v):
    col = (0, 0, -1, 1)
    return [*_BM1, col, col]


def _t42_c(v):
    a = v["a"]
    return [*_BM1, (a, a, 1, 1), (-a, -a, -1, -1)]


def _lie_1(v):
    return [*_BM1, (0, 0, 0, 0), (0, 0, 0, 0)]


def _lie_4(v):
    return [*_BM1, (0, 0, 1, 1), (0, 0, -1, -1)]


def _b0_lie_1(v):
    a = v["a"]
    col = (0, 0, a, -2 * a)
    return [*_B0, col, col]


_MA_TEXT = {
    "ma_a": "R(1)=0, R(g)=0, R(x)=-lam x, R(gx)=-lam gx",
    "ma_b": "R(1)=-lam 1, R(g)=-lam g, R(x)=0, R(gx)=0",
    "ma_c": "R = -lam id",
    "ma_d": "R(1)=0, R(g)=-p1+p1 g-(lam+p1)(lam+p1+p2)/p3 x+(lam+p1)(lam+p2)/p3 gx, "
            "R(x)=-p3+p3 g-(2lam+p1+p3)x+(lam+p2)gx, R(gx)=-p3+p3 g-(lam+p1+p2)x+p2 gx",
    "ma_e": "R(1)=-lam, R(g)=(lam+p1)+p1 g-(lam+p1)(lam+p1+p2)/p3 x+(lam+p1)(lam+p2)/p3 gx, "
            "R(x)=p3+p3 g-(2lam+p1+p2)x+(lam+p2)gx, R(gx)=p3+p3 g-(lam+p1+p2)x+p2 gx",
    "ma_f": "R(1)=-lam, R(g)=lam+p1 x+p1 p2/(lam+p2) gx, "
            "R(x)=-(lam+p2)x-p2 gx, R(gx)=(lam+p2)x+p2 gx",
    "ma_g": "R(1)=-lam, R(g)=lam+lam(lam+p1)/p2 (x+gx), "
            "R(x)=-p2-p2 g-(2lam+p1)x-(lam+p1)gx, R(gx)=p2+p2 g+(lam+p1)x+p1 gx",
    "ma_h": "R(1)=lam/2-lam/2 g+p1 x+p2 gx, R(g)=lam/2-lam/2 g-p2 x+p1 gx, "
            "R(x)=R(gx)=-lam/2 x-lam/2 gx",
}

_LAM = ("lam",)


def _build_catalog() -> dict[str, Family]:
    fams = [
        Family("ma_a", "assoc", _LAM, _ma_a, weight="lam"),
        Family("ma_b", "assoc", _LAM, _ma_b, weight="lam"),
        Family("ma_c", "assoc", _LAM, _ma_c, weight="lam"),
        Family("ma_d", "assoc", ("lam", "p1", "p2", "p3"), _ma_d, weight="lam",
               constraints=(_nz("p3"),)),
        Family("ma_e", "assoc", ("lam", "p1", "p2", "p3"), _ma_e, weight="lam",
               constraints=(_nz("p3"),)),
        Family("ma_f", "assoc", ("lam", "p1", "p2"), _ma_f, weight="lam",
               constraints=(("lam + p2 != 0", lambda v: not (v["lam"] + v["p2"]).is_zero()),)),
        Family("ma_g", "assoc", ("lam", "p1", "p2"), _ma_g, weight="lam",
               constraints=(_nz("p2"),)),
        Family("ma_h", "assoc", ("lam", "p1", "p2"), _ma_h, char="odd", weight="lam"),
        Family("t41_char2", "chrb", ("a1", "a3", "a4"), _t41_char2, char="2", pins="b0",
               text="B(x)=B(gx)=a1+a1 g+a3 x+a4 gx"),
        Family("t41_a", "chrb", ("a1", "a3"), _t41_a, char="odd", pins="b0",
               text="B(x)=B(gx)=a1+a1 g+a3 x-2a3 gx"),
        Family("t41_b", "chrb", ("a1", "a3"), _t41_b, char="odd", pins="b0",
               text="B(x)=B(gx)=a1-a1 g+a3 x-2a3 gx"),
        Family("t42_char2", "chrb", ("a1", "a3", "a4"), _t42_char2, char="2", pins="bm1",
               text="B(x)=a1+a1 g+a3 x+a4 gx, B(gx)=a1+a1 g+a4 x+a3 gx"),
        Family("t42_a", "chrb", ("a",), _t42_a, char="odd", pins="bm1",
               text="B(x)=B(gx)=a-a g"),
        Family("t42_b", "chrb", (), _t42_b, char="odd", pins="bm1",
               text="B(x)=B(gx)=-x+gx"),
        Family("t42_c", "chrb", ("a",), _t42_c, char="odd", pins="bm1",
               text="B(x)=-B(gx)=a+a g+x+gx"),
        Family("lie_1", "lie", (), _lie_1, char="odd", weight="any", pins="bm1",
               text="B(x)=B(gx)=0"),
        Family("lie_2", "lie", ("a",), _t42_a, char="odd", weight=-1, pins="bm1",
               text="B(x)=B(gx)=a-a g"),
        Family("lie_3", "lie", (), _t42_b, char="odd", weight=-2, pins="bm1",
               text="B(x)=B(gx)=-x+gx"),
        Family("lie_4", "lie", (), _lie_4, char="odd", weight=-2, pins="bm1",
               text="B(x)=-B(gx)=x+gx"),
        Family("b0_lie_1", "lie", ("a",), _b0_lie_1, char="odd", weight="any", pins="b0",
               text="B(x)=B(gx)=a x-2a gx"),
        Family("b0_lie_2", "lie", ("a1", "a3"), _t41_b, char="odd", weight="any", pins="b0",
               text="B(x)=B(gx)=a1-a1 g+a3 x-2a3 gx"),
    ]
    out = {}
    for f in fams:
        if f.id in _MA_TEXT:
            f = replace(f, text=_MA_TEXT[f.id])
        out[f.id] = f
    return out


FAMILIES: dict[str, Family] = _build_catalog()


def get_family(family_id: str) -> Family:
    try:
        return FAMILIES[family_id]
    except KeyError:
        raise KeyError(f"unknown family {family_id!r}; known: {', '.join(FAMILIES)}") from None


def family_instantiate(spec: FamilySpec) -> RBCandidate:
    """Matrix of the family at the given parameters, with the family's weight if it has one."""
    fam = get_family(spec.family_id)
    ctx = spec.ctx
    if not fam.char_ok(ctx):
        raise WrongCharacteristic(
            f"{fam.id} needs characteristic {fam.summary()['characteristic']}, got {ctx.name}")
    extra = set(spec.params) - set(fam.required) - set(fam.optional)
    if extra:
        raise ConstraintViolated(f"{fam.id} has no parameter(s) {sorted(extra)}")
    missing = [p for p in fam.required if p not in spec.params]
    if missing:
        raise ConstraintViolated(f"{fam.id} needs parameter(s) {missing}")
    bad = fam.constraint_failures(spec.params)
    if bad:
        raise ConstraintViolated(f"{fam.id}: {'; '.join(bad)}")
    cols = fam.columns(dict(spec.params))
    op = Mat(ctx, ctx.array([[col[r] for col in cols] for r in range(4)]))
    if fam.weight == "lam":
        weight = spec.params["lam"]
    elif fam.weight == "any":
        weight = spec.params.get("lam")
    elif fam.weight is None:
        weight = None
    else:
        weight = ctx(fam.weight)
    return RBCandidate(op, weight)


def _assignments(fam: Family, ctx: FieldCtx, values):
    for combo in itertools.product(values, repeat=len(fam.params)):
        v = {name: ctx(x) for name, x in zip(fam.params, combo)}
        if not fam.constraint_failures(v):
            yield v


def sample_parameters(fam: Family | str, ctx: FieldCtx, count: int, seed: int = 0,
                      lo: int = -3, hi: int = 3) -> list[dict]:
    """Deterministic constraint-respecting samples: small integers over Q, the whole field over GF(p).

    Parameter-free families yield a single empty assignment."""
    fam = get_family(fam) if isinstance(fam, str) else fam
    if not fam.params:
        return [{}]
    rng = random.Random(seed)
    pool = list(range(lo, hi + 1)) if ctx.is_rational else list(range(ctx.characteristic))
    out = []
    tries = 0
    while len(out) < count:
        tries += 1
        if tries > 1000 * count:
            raise ConstraintViolated(f"could not sample {count} admissible points for {fam.id}")
        v = {name: ctx(rng.choice(pool)) for name in fam.params}
        if not fam.constraint_failures(v):
            out.append(v)
    return out


def sweep_parameters(fam: Family | str, ctx: FieldCtx) -> list[dict]:
    """Every admissible parameter assignment over a finite field."""
    fam = get_family(fam) if isinstance(fam, str) else fam
    if ctx.is_rational:
        raise ValueError("parameter sweeps need a finite field")
    return list(_assignments(fam, ctx, range(ctx.characteristic)))


def family_members(fam: Family | str, ctx: FieldCtx) -> list[Mat]:
    """Distinct operator matrices of a family over a finite field, sorted by column-major key."""
    fam = get_family(fam) if isinstance(fam, str) else fam
    seen = {}
    for v in sweep_parameters(fam, ctx):
        op = family_instantiate(FamilySpec(fam.id, v, ctx)).op
        seen.setdefault(op.key(), op)
    return [seen[k] for k in sorted(seen)]


def survey_family(fam: Family | str, ctx: FieldCtx, points, check) -> dict:
    """Run ``check(candidate) -> (ok, witnesses)`` over parameter points.

    Returns pass/fail counts plus the first failing point with its first
    failing pair, so discrepancies surface with a witness."""
    fam = get_family(fam) if isinstance(fam, str) else fam
    passed, failed, first = 0, 0, None
    for v in points:
        cand = family_instantiate(FamilySpec(fam.id, v, ctx))
        ok, bad = check(cand)
        if ok:
            passed += 1
            continue
        failed += 1
        if first is None:
            first = {"params": {k: s.to_document() for k, s in v.items()},
                     "pair": list(bad[0]["pair"]), "defect": bad[0]["defect"]}
    return {"family": fam.id, "field": ctx.name, "points": passed + failed,
            "passed": passed, "failed": failed, "first_failure": first}
