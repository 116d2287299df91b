"""Dense exact vectors and matrices over a :class:`FieldCtx`.

Entries are stored as numpy arrays of raw field values (``Fraction`` objects
for Q, ``int64`` residues for small primes).  Tensor products use the
big-endian convention: the basis vector e_i (x) e_j of V (x) W sits at index
``i * dim(W) + j``.  Every Sweedler-leg computation relies on this.
"""

from __future__ import annotations

import itertools
import math
from fractions import Fraction
from functools import reduce

import numpy as np

from .errors import DimensionMismatch, MixedFieldContexts
from .scalars import FieldCtx, Scalar

__all__ = [
    "Vec",
    "Mat",
    "mat_apply",
    "mat_compose",
    "kron",
    "kron_all",
    "flip",
    "leg_permutation",
    "contract",
    "exact_bilinear",
    "tensor_labels",
]


def _check_ctx(a, b):
    if a.ctx != b.ctx:
        raise MixedFieldContexts(f"{a.ctx.name} vs {b.ctx.name}")


class Vec:
    __slots__ = ("ctx", "data")

    def __init__(self, ctx: FieldCtx, data):
        arr = data if isinstance(data, np.ndarray) and data.dtype == ctx.dtype else ctx.array(list(data))
        if arr.ndim != 1 or arr.shape[0] == 0:
            raise DimensionMismatch(f"vector needs a positive 1-d shape, got {arr.shape}")
        self.ctx = ctx
        self.data = arr

    @classmethod
    def zeros(cls, ctx, dim):
        return cls(ctx, ctx.zeros(dim))

    @classmethod
    def basis(cls, ctx, dim, i):
        v = ctx.zeros(dim)
        v[i] = ctx.raw(1)
        return cls(ctx, v)

    @property
    def dim(self) -> int:
        return self.data.shape[0]

    @property
    def entries(self) -> list[Scalar]:
        return [Scalar(self.ctx, v) for v in self.data.tolist()]

    def __getitem__(self, i) -> Scalar:
        return Scalar(self.ctx, self.data[i].item() if hasattr(self.data[i], "item") else self.data[i])

    def __len__(self):
        return self.dim

    def _same(self, other):
        _check_ctx(self, other)
        if self.dim != other.dim:
            raise DimensionMismatch(f"dims {self.dim} and {other.dim}")

    def __add__(self, other: Vec) -> Vec:
        self._same(other)
        return Vec(self.ctx, self.ctx.reduce(self.data + other.data))

    def __sub__(self, other: Vec) -> Vec:
        self._same(other)
        return Vec(self.ctx, self.ctx.reduce(self.data - other.data))

    def __neg__(self) -> Vec:
        return Vec(self.ctx, self.ctx.reduce(-self.data))

    def scale(self, s) -> Vec:
        return Vec(self.ctx, self.ctx.reduce(self.data * self.ctx.raw(s)))

    def __rmul__(self, s) -> Vec:
        return self.scale(s)

    def __eq__(self, other):
        if not isinstance(other, Vec):
            return NotImplemented
        return self.ctx == other.ctx and self.dim == other.dim and bool(np.all(self.data == other.data))

    def __hash__(self):
        return hash((self.ctx, self.key()))

    def key(self) -> tuple:
        return tuple(self.data.tolist())

    def is_zero(self) -> bool:
        return not np.any(self.data != 0)

    def support(self) -> list[int]:
        return [i for i, v in enumerate(self.data.tolist()) if v != 0]

    def to_strings(self, document=True) -> list[str]:
        return [self.ctx.render(v, document) for v in self.data.tolist()]

    def pretty(self, labels=None) -> str:
        """Linear-combination rendering, e.g. ``1 - g + 2*gx``."""
        labels = labels or [f"e{i}" for i in range(self.dim)]
        parts = []
        for i, v in enumerate(self.data.tolist()):
            if v == 0:
                continue
            s = self.ctx.render(v)
            if s == "1":
                parts.append(f"+ {labels[i]}")
            elif s == "-1":
                parts.append(f"- {labels[i]}")
            elif s.startswith("-"):
                parts.append(f"- {s[1:]}*{labels[i]}")
            else:
                parts.append(f"+ {s}*{labels[i]}")
        if not parts:
            return "0"
        out = " ".join(parts)
        return out[2:] if out.startswith("+ ") else "-" + out[2:]

    def __repr__(self):
        return f"Vec({self.ctx.name}, [{', '.join(self.to_strings(False))}])"


class Mat:
    __slots__ = ("ctx", "data")

    def __init__(self, ctx: FieldCtx, data):
        arr = data if isinstance(data, np.ndarray) and data.dtype == ctx.dtype else ctx.array(data)
        if arr.ndim != 2 or 0 in arr.shape:
            raise DimensionMismatch(f"matrix needs a positive 2-d shape, got {arr.shape}")
        self.ctx = ctx
        self.data = arr

    @classmethod
    def identity(cls, ctx, n) -> Mat:
        return cls(ctx, ctx.eye(n))

    @classmethod
    def zeros(cls, ctx, rows, cols) -> Mat:
        return cls(ctx, ctx.zeros((rows, cols)))

    @classmethod
    def from_columns(cls, ctx, columns) -> Mat:
        cols = [c.data if isinstance(c, Vec) else ctx.array(list(c)) for c in columns]
        return cls(ctx, np.stack(cols, axis=1))

    @property
    def rows(self) -> int:
        return self.data.shape[0]

    @property
    def cols(self) -> int:
        return self.data.shape[1]

    @property
    def shape(self):
        return self.data.shape

    def __getitem__(self, ij) -> Scalar:
        v = self.data[ij]
        return Scalar(self.ctx, v.item() if hasattr(v, "item") else v)

    def column(self, j) -> Vec:
        return Vec(self.ctx, self.data[:, j].copy())

    def columns(self) -> list[Vec]:
        return [self.column(j) for j in range(self.cols)]

    def row(self, i) -> Vec:
        return Vec(self.ctx, self.data[i, :].copy())

    @property
    def T(self) -> Mat:
        return Mat(self.ctx, self.data.T.copy())

    def _same_shape(self, other):
        _check_ctx(self, other)
        if self.shape != other.shape:
            raise DimensionMismatch(f"shapes {self.shape} and {other.shape}")

    def __add__(self, other: Mat) -> Mat:
        self._same_shape(other)
        return Mat(self.ctx, self.ctx.reduce(self.data + other.data))

    def __sub__(self, other: Mat) -> Mat:
        self._same_shape(other)
        return Mat(self.ctx, self.ctx.reduce(self.data - other.data))

    def __neg__(self) -> Mat:
        return Mat(self.ctx, self.ctx.reduce(-self.data))

    def scale(self, s) -> Mat:
        return Mat(self.ctx, self.ctx.reduce(self.data * self.ctx.raw(s)))

    def __rmul__(self, s) -> Mat:
        return self.scale(s)

    def __matmul__(self, other):
        if isinstance(other, Mat):
            return mat_compose(self, other)
        if isinstance(other, Vec):
            return mat_apply(self, other)
        return NotImplemented

    def __pow__(self, k: int) -> Mat:
        if self.rows != self.cols:
            raise DimensionMismatch("power of a non-square matrix")
        return reduce(mat_compose, [self] * k, Mat.identity(self.ctx, self.rows))

    def __eq__(self, other):
        if not isinstance(other, Mat):
            return NotImplemented
        return self.ctx == other.ctx and self.shape == other.shape and bool(np.all(self.data == other.data))

    def __hash__(self):
        return hash((self.ctx, self.shape, self.key()))

    def key(self) -> tuple:
        """Hashable, column-major tuple of raw entries (images of basis vectors in order)."""
        return tuple(self.data.T.reshape(-1).tolist())

    def is_zero(self) -> bool:
        return not np.any(self.data != 0)

    def to_rows(self, document=True) -> list[list[str]]:
        return [[self.ctx.render(v, document) for v in row] for row in self.data.tolist()]

    def __repr__(self):
        body = "; ".join(" ".join(r) for r in self.to_rows(False))
        return f"Mat({self.ctx.name}, {self.rows}x{self.cols}, [{body}])"


_INT64_SAFE = 1 << 62


def _integer_form(arr: np.ndarray):
    """(integer entries as a Python list, common denominator) of a Fraction array."""
    flat = arr.reshape(-1).tolist()
    den = math.lcm(*(f.denominator for f in flat)) if flat else 1
    return [f.numerator * (den // f.denominator) for f in flat], den


def exact_bilinear(ctx: FieldCtx, fn, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """``fn(a, b)`` for a bilinear numpy operation, reduced into the field.

    Over Q both operands are cleared of denominators first, so the heavy
    lifting runs on machine integers whenever the entries are small enough
    to rule out overflow, and on Python integers otherwise."""
    if not ctx.is_rational:
        return ctx.reduce(fn(a, b))
    ia, da = _integer_form(a)
    ib, db = _integer_form(b)
    ma = max(map(abs, ia), default=0)
    mb = max(map(abs, ib), default=0)
    wide = ma * mb * max(a.size, b.size, 1) >= _INT64_SAFE
    dtype = object if wide else np.int64
    xa = np.array(ia, dtype=dtype).reshape(a.shape)
    xb = np.array(ib, dtype=dtype).reshape(b.shape)
    r = fn(xa, xb)
    den = da * db
    out = np.empty(r.shape, dtype=object)
    out.reshape(-1)[:] = [Fraction(int(v), den) for v in r.reshape(-1).tolist()]
    return out


def mat_apply(M: Mat, v: Vec) -> Vec:
    _check_ctx(M, v)
    if M.cols != v.dim:
        raise DimensionMismatch(f"{M.rows}x{M.cols} matrix applied to dim-{v.dim} vector")
    return Vec(M.ctx, exact_bilinear(M.ctx, np.matmul, M.data, v.data))


def mat_compose(A: Mat, B: Mat) -> Mat:
    """The composite A o B (apply B first)."""
    _check_ctx(A, B)
    if A.cols != B.rows:
        raise DimensionMismatch(f"cannot compose {A.shape} with {B.shape}")
    return Mat(A.ctx, exact_bilinear(A.ctx, np.matmul, A.data, B.data))


def kron(A: Mat, B: Mat) -> Mat:
    _check_ctx(A, B)
    return Mat(A.ctx, exact_bilinear(A.ctx, np.kron, A.data, B.data))


def kron_all(*mats: Mat) -> Mat:
    return reduce(kron, mats)


def leg_permutation(ctx: FieldCtx, n: int, perm) -> Mat:
    """Matrix on V^{(x)k} sending e_{i_0} (x) ... (x) e_{i_{k-1}} to the tensor
    whose leg ``t`` is ``i_{perm[t]}``."""
    k = len(perm)
    if sorted(perm) != list(range(k)):
        raise ValueError(f"not a permutation: {perm}")
    N = n**k
    out = ctx.zeros((N, N))
    one = ctx.raw(1)
    for src, idx in enumerate(itertools.product(range(n), repeat=k)):
        dst = 0
        for t in range(k):
            dst = dst * n + idx[perm[t]]
        out[dst, src] = one
    return Mat(ctx, out)


def flip(ctx: FieldCtx, n: int) -> Mat:
    """The tensor flip a (x) b -> b (x) a on V (x) V, dim V = n."""
    return leg_permutation(ctx, n, (1, 0))


def contract(ctx: FieldCtx, subscripts: str, a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Exact two-operand einsum followed by reduction into the field."""
    return exact_bilinear(ctx, lambda x, y: np.einsum(subscripts, x, y), a, b)


def tensor_labels(labels, k: int) -> list[str]:
    """Labels of the big-endian tensor basis of V^{(x)k}."""
    return ["⊗".join(t) for t in itertools.product(labels, repeat=k)]
