"""Finite-dimensional algebras given by structure constants.

``structure[i, j]`` holds the coordinates of the product e_i * e_j.  The
same container carries associative unital algebras as well as the derived
bracket algebra A^(-) (ab - ba) and the Jordan-type algebra A^(+)
(ab + ba, no 1/2 so that characteristic 2 works).
"""

from __future__ import annotations

import itertools
import re

import numpy as np

from .errors import DimensionMismatch, ParseError
from .linalg import Mat, Vec
from .report import Report
from .scalars import FieldCtx

__all__ = [
    "AlgebraSpec",
    "mul_vec",
    "check_associativity_and_unit",
    "minus_algebra",
    "plus_algebra",
    "group_algebra",
    "parse_element",
]


class AlgebraSpec:
    def __init__(self, ctx: FieldCtx, labels, structure, unit=None, assoc_expected=True, name=""):
        self.ctx = ctx
        self.labels = tuple(labels)
        n = len(self.labels)
        arr = structure if isinstance(structure, np.ndarray) and structure.dtype == ctx.dtype \
            else ctx.array(structure)
        if arr.shape != (n, n, n):
            raise DimensionMismatch(f"structure table must be {n}x{n}x{n}, got {arr.shape}")
        self.structure = arr
        self.unit = unit if unit is None or isinstance(unit, Vec) else Vec(ctx, unit)
        if self.unit is not None and self.unit.dim != n:
            raise DimensionMismatch("unit has the wrong dimension")
        self.assoc_expected = assoc_expected
        self.name = name

    @classmethod
    def from_products(cls, ctx, labels, products: dict, unit_label=None, **kw) -> AlgebraSpec:
        """Build from ``{(label_i, label_j): element}``; missing pairs are zero.
        Elements are vectors, coordinate lists or strings such as ``"-g*x"``."""
        n = len(labels)
        index = {lab: i for i, lab in enumerate(labels)}
        arr = ctx.zeros((n, n, n))
        proto = cls(ctx, labels, arr)
        for (a, b), val in products.items():
            arr[index[a], index[b]] = _as_vec(proto, val).data
        unit = Vec.basis(ctx, n, index[unit_label]) if unit_label is not None else None
        return cls(ctx, labels, arr, unit, **kw)

    @property
    def dim(self) -> int:
        return len(self.labels)

    def index(self, label: str) -> int:
        try:
            return self.labels.index(label)
        except ValueError:
            raise KeyError(f"no basis element {label!r} in {self.labels}") from None

    def basis(self, i) -> Vec:
        if isinstance(i, str):
            i = self.index(i)
        return Vec.basis(self.ctx, self.dim, i)

    def element(self, text: str) -> Vec:
        return parse_element(self, text)

    def structure_tensor(self) -> np.ndarray:
        """``M[k, i, j]``: coefficient of e_k in e_i * e_j."""
        return np.ascontiguousarray(np.transpose(self.structure, (2, 0, 1)))

    def mult_matrix(self) -> Mat:
        """Multiplication as an n x n^2 matrix on the big-endian tensor basis."""
        n = self.dim
        return Mat(self.ctx, self.structure.reshape(n * n, n).T.copy())

    def __repr__(self):
        return f"AlgebraSpec({self.name or '?'}, dim={self.dim}, {self.ctx.name})"


def _as_vec(A: AlgebraSpec, val) -> Vec:
    if isinstance(val, Vec):
        return val
    if isinstance(val, str):
        return parse_element(A, val)
    return Vec(A.ctx, list(val))


def mul_vec(A: AlgebraSpec, u: Vec, v: Vec) -> Vec:
    if u.dim != A.dim or v.dim != A.dim:
        raise DimensionMismatch(f"dims {u.dim}, {v.dim} in a dim-{A.dim} algebra")
    ctx = A.ctx
    t = ctx.reduce(np.tensordot(u.data, A.structure, axes=(0, 0)))
    return Vec(ctx, ctx.reduce(np.tensordot(v.data, t, axes=(0, 0))))


def check_associativity_and_unit(A: AlgebraSpec) -> Report:
    """Associativity on all basis triples plus two-sided unit; violations are witnesses."""
    rep = Report(f"algebra axioms {A.name}".strip())
    n, L = A.dim, A.labels
    bad = []
    prods = [[Vec(A.ctx, A.structure[i, j]) for j in range(n)] for i in range(n)]
    for i, j, k in itertools.product(range(n), repeat=3):
        left = mul_vec(A, prods[i][j], A.basis(k))
        right = mul_vec(A, A.basis(i), prods[j][k])
        if left != right:
            bad.append({"triple": [L[i], L[j], L[k]],
                        "left": left.pretty(L), "right": right.pretty(L)})
    rep.add("associativity", not bad, bad or None,
            f"{n**3} triples" if not bad else f"{len(bad)} violating triples")
    if A.unit is None:
        rep.add("unit", False, "no unit element declared")
    else:
        ubad = [L[i] for i in range(n)
                if mul_vec(A, A.unit, A.basis(i)) != A.basis(i)
                or mul_vec(A, A.basis(i), A.unit) != A.basis(i)]
        rep.add("unit", not ubad, ubad or None)
    return rep


def minus_algebra(A: AlgebraSpec) -> AlgebraSpec:
    """Bracket algebra [a, b] = ab - ba."""
    s = A.ctx.reduce(A.structure - np.transpose(A.structure, (1, 0, 2)))
    return AlgebraSpec(A.ctx, A.labels, s, None, assoc_expected=False, name=f"{A.name}(-)")


def plus_algebra(A: AlgebraSpec) -> AlgebraSpec:
    """Symmetrized algebra a o b = ab + ba (no 1/2 factor)."""
    s = A.ctx.reduce(A.structure + np.transpose(A.structure, (1, 0, 2)))
    return AlgebraSpec(A.ctx, A.labels, s, None, assoc_expected=False, name=f"{A.name}(+)")


def group_algebra(G, ctx: FieldCtx) -> AlgebraSpec:
    """k[G] on the group basis; ``G`` is a :class:`~rbwb.groups.GroupTable`."""
    n = G.n
    arr = ctx.zeros((n, n, n))
    one = ctx.raw(1)
    for i in range(n):
        for j in range(n):
            arr[i, j, G.table[i][j]] = one
    return AlgebraSpec(ctx, G.labels, arr, Vec.basis(ctx, n, G.id), name=f"k[{G.name}]")


_TERM = re.compile(r"\s*([+-])?\s*([^+-]+)")


def parse_element(A: AlgebraSpec, text: str) -> Vec:
    """Parse ``"1 - g + 1/2*gx"``-style linear combinations of basis labels.
    A bare number is a multiple of the unit."""
    ctx, n = A.ctx, A.dim
    acc = ctx.zeros(n)
    src = text.strip()
    if not src:
        raise ParseError("empty element")
    pos = 0
    while pos < len(src):
        m = _TERM.match(src, pos)
        if not m or m.end() == pos:
            raise ParseError(f"cannot parse element {text!r}", 1, pos + 1)
        sign, body = m.group(1), m.group(2).strip()
        pos = m.end()
        coef, label = ("1", body.replace(" ", "")) if body.replace(" ", "") in A.labels \
            else _split_term(body)
        if label is None:
            if A.unit is None:
                raise ParseError(f"bare scalar {body!r} in an algebra without unit")
            vec = A.unit.data
        else:
            if label not in A.labels:
                raise ParseError(f"unknown basis label {label!r} in {text!r}", 1, pos)
            vec = A.basis(label).data
        c = ctx.raw(coef)
        if sign == "-":
            c = ctx.neg(c)
        acc = ctx.reduce(acc + vec * c)
    return Vec(ctx, acc)


def _split_term(body: str):
    body = body.replace(" ", "")
    m = re.fullmatch(r"(\d+(?:/\d+)?)(?:\*(.+))?", body)
    if m:
        num, label = m.groups()
        if label is None:
            return num, None
        return num, label
    return "1", body
