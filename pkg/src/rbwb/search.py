"""Exhaustive enumeration of linear RB candidates over GF(p).

Candidates are matrices with some columns pinned; the remaining entries
run over the field in odometer order.  Batches of candidates are held as
``(C, n, n)`` integer arrays and filtered one basis pair at a time, so a
candidate is dropped at its first failing pair.  Every survivor is checked
again with the standalone checker from :mod:`rbwb.rbops`.
"""

from __future__ import annotations

import time
from concurrent.futures import ThreadPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraSpec, minus_algebra, parse_element, plus_algebra
from .errors import FlavorMismatch, ParseError, SpaceTooLarge
from .families import Family, family_members, get_family
from .hopf import HopfSpec
from .linalg import Mat, Vec
from .rbops import RBCandidate, check_algebra_rb, check_chrb, nchrb_check
from .report import Report
from .scalars import FieldCtx

__all__ = [
    "PREDICATES",
    "SearchSpace",
    "SearchResult",
    "DiffReport",
    "parse_pins",
    "enumerate_space",
    "diff_against_family",
    "MAX_FREE",
    "MAX_SPACE",
]

PREDICATES = ("algebra_rb", "lie_rb", "jordan_rb", "chrb", "nchrb")
WEIGHTED = ("algebra_rb", "lie_rb", "jordan_rb")
MAX_FREE = 20
MAX_SPACE = 10**8
BATCH = 1 << 15


def parse_pins(A: AlgebraSpec, text: str) -> dict:
    """``"1->1,g->g"`` to ``{"1": Vec, "g": Vec}``."""
    pins = {}
    if not text.strip():
        return pins
    for chunk in text.split(","):
        if "->" not in chunk:
            raise ParseError(f"pin {chunk.strip()!r} is not of the form label->element")
        src, dst = (s.strip() for s in chunk.split("->", 1))
        if src not in A.labels:
            raise ParseError(f"unknown basis label {src!r} in pin {chunk.strip()!r}")
        pins[src] = parse_element(A, dst)
    return pins


@dataclass
class SearchSpace:
    target: AlgebraSpec | HopfSpec
    ctx: FieldCtx
    pins: dict = field(default_factory=dict)
    predicate: str = "chrb"
    weight: object = None

    def __post_init__(self):
        if self.ctx.is_rational:
            raise SpaceTooLarge("exhaustive search needs a finite field")
        if self.target.ctx != self.ctx:
            raise FlavorMismatch(f"target lives over {self.target.ctx.name}, search over {self.ctx.name}")
        if self.predicate not in PREDICATES:
            raise FlavorMismatch(f"unknown predicate {self.predicate!r}; choose from {PREDICATES}")
        if self.predicate in ("chrb", "nchrb") and not isinstance(self.target, HopfSpec):
            raise FlavorMismatch(f"{self.predicate} needs a Hopf algebra")
        if self.predicate in WEIGHTED:
            if self.weight is None:
                raise FlavorMismatch(f"{self.predicate} needs a weight")
            self.weight = self.ctx(self.weight)
        alg = self.algebra
        pins = {}
        for lab, val in self.pins.items():
            j = alg.index(lab) if isinstance(lab, str) else int(lab)
            if isinstance(val, str):
                val = parse_element(alg, val)
            elif not isinstance(val, Vec):
                val = Vec(self.ctx, list(val))
            pins[alg.labels[j]] = val
        self.pins = pins
        free = self.free_entries()
        if len(free) > MAX_FREE or self.size() > MAX_SPACE:
            raise SpaceTooLarge(
                f"{self.ctx.characteristic}^{len(free)} candidates exceeds the bound {MAX_SPACE}")

    @property
    def algebra(self) -> AlgebraSpec:
        return self.target.alg if isinstance(self.target, HopfSpec) else self.target

    @property
    def dim(self) -> int:
        return self.algebra.dim

    def free_columns(self) -> list[int]:
        return [j for j, lab in enumerate(self.algebra.labels) if lab not in self.pins]

    def free_entries(self) -> list[tuple[int, int]]:
        """(row, column) of every free entry, column by column."""
        return [(r, c) for c in self.free_columns() for r in range(self.dim)]

    def size(self) -> int:
        return self.ctx.characteristic ** len(self.free_entries())

    def describe(self) -> dict:
        return {
            "field": self.ctx.name,
            "predicate": self.predicate,
            "weight": None if self.weight is None else self.weight.to_document(),
            "pins": {k: v.pretty(self.algebra.labels) for k, v in self.pins.items()},
            "free_entries": len(self.free_entries()),
            "space": self.size(),
        }


@dataclass
class SearchResult:
    space: SearchSpace
    candidates: list[RBCandidate]
    scanned: int
    timing: float
    partitions: int

    @property
    def count(self) -> int:
        return len(self.candidates)

    @property
    def matrices(self) -> list[Mat]:
        return [c.op for c in self.candidates]


class _Kernel:
    """Batch evaluation of one predicate, pair by pair."""

    def __init__(self, S: SearchSpace):
        self.p = S.ctx.characteristic
        self.n = S.dim
        self.pred = S.predicate
        alg = S.algebra
        if self.pred == "lie_rb":
            alg = minus_algebra(alg)
        elif self.pred == "jordan_rb":
            alg = plus_algebra(alg)
        self.M = alg.structure_tensor().astype(np.int64)
        self.M2 = np.ascontiguousarray(self.M.reshape(self.n, -1).T)
        self.lam = int(S.ctx.raw(S.weight)) if S.weight is not None else 0
        if isinstance(S.target, HopfSpec):
            H = S.target
            self.S = H.antipode.data.astype(np.int64)
            self.D = H.delta.data.astype(np.int64)
            self.eps = H.counit.data[0].astype(np.int64)
            self.legs = {k: self._terms(H.legs_tensor(k).astype(np.int64)) for k in (2, 3, 5)}
        self.pairs = self._pair_order()

    @staticmethod
    def _terms(T):
        out = []
        for i in range(T.shape[0]):
            nz = np.argwhere(T[i] != 0)
            out.append([(int(T[i][tuple(idx)]), tuple(int(t) for t in idx)) for idx in nz])
        return out

    def _pair_order(self):
        # pairs with two non-unit basis elements first: they reject the most
        n = self.n
        return sorted(((i, j) for i in range(n) for j in range(n)),
                      key=lambda ij: (-(ij[0] > 0) - (ij[1] > 0), ij))

    def mul(self, u, v):
        C = u.shape[0]
        return ((u[:, :, None] * v[:, None, :]).reshape(C, -1) @ self.M2) % self.p

    def basis(self, C, j):
        e = np.zeros((C, self.n), dtype=np.int64)
        e[:, j] = 1
        return e

    def apply(self, B, v):
        return np.einsum("cqk,ck->cq", B, v) % self.p

    def pair_ok(self, B, SB, i, j):
        C = B.shape[0]
        p = self.p
        if self.pred in WEIGHTED:
            Bi, Bj = B[:, :, i], B[:, :, j]
            ei, ej = self.basis(C, i), self.basis(C, j)
            lhs = self.mul(Bi, Bj)
            inner = (self.mul(Bi, ej) + self.mul(ei, Bj) + self.lam * self.mul(ei, ej)) % p
            return np.all((lhs - self.apply(B, inner)) % p == 0, axis=1)
        ej = self.basis(C, j)
        lhs = self.mul(B[:, :, i], B[:, :, j])
        inner = np.zeros((C, self.n), dtype=np.int64)
        for coef, (a, b, c) in self.legs[3][i]:
            if self.pred == "chrb":
                t = self.mul(self.mul(self.mul(self.basis(C, a), B[:, :, b]), ej), SB[:, :, c])
            else:
                t = self.mul(self.mul(self.mul(self.basis(C, a), SB[:, :, b]), ej), B[:, :, c])
            inner = (inner + coef * t) % p
        ok = np.all((lhs - self.apply(B, inner)) % p == 0, axis=1)
        if self.pred == "nchrb":
            ok &= self._five_leg_ok(B, SB, i, j)
        return ok

    def _five_leg_ok(self, B, SB, i, j):
        C, n, p = B.shape[0], self.n, self.p
        ej = self.basis(C, j)
        lhs = np.zeros((C, n, n), dtype=np.int64)
        for coef, (a, b, c) in self.legs[3][i]:
            left = self.mul(self.mul(SB[:, :, b], ej), B[:, :, c])
            lhs = (lhs + coef * np.einsum("ck,cm->ckm", left, SB[:, :, a])) % p
        rhs = np.zeros((C, n, n), dtype=np.int64)
        for coef, (a, b, c, d, e) in self.legs[5][i]:
            left = self.mul(self.mul(SB[:, :, b], ej), B[:, :, c])
            Sa = np.broadcast_to(self.S[:, a], (C, n))
            right = self.mul(self.mul(Sa, self.basis(C, d)), SB[:, :, e])
            rhs = (rhs + coef * np.einsum("ck,cm->ckm", left, right)) % p
        return np.all(((lhs - rhs) % p).reshape(C, -1) == 0, axis=1)

    def coalg_ok(self, B):
        """Δ∘B = (B⊗B)∘Δ and ε∘B = ε, column by column."""
        C, n, p = B.shape[0], self.n, self.p
        ok = np.ones(C, dtype=bool)
        for i in range(n):
            lhs = np.einsum("Kk,ck->cK", self.D, B[:, :, i]) % p
            rhs = np.zeros((C, n * n), dtype=np.int64)
            for coef, (a, b) in self.legs[2][i]:
                rhs = (rhs + coef * np.einsum("ck,cm->ckm", B[:, :, a], B[:, :, b]).reshape(C, -1)) % p
            ok &= np.all((lhs - rhs) % p == 0, axis=1)
            ok &= (B[:, :, i] @ self.eps - self.eps[i]) % p == 0
        return ok

    def filter(self, B):
        """Indices of the batch that satisfy the predicate."""
        alive = np.arange(B.shape[0])
        SB = None
        if self.pred == "nchrb":
            alive = alive[self.coalg_ok(B)]
        for i, j in self.pairs:
            if alive.size == 0:
                break
            sub = B[alive]
            if self.pred in ("chrb", "nchrb"):
                SB = np.einsum("kl,clr->ckr", self.S, sub) % self.p
            alive = alive[self.pair_ok(sub, SB, i, j)]
        return alive


def _scan(S: SearchSpace, kernel: _Kernel, order, base, start, stop):
    p = S.ctx.characteristic
    free = [S.free_entries()[k] for k in order]
    weights = p ** np.arange(len(free) - 1, -1, -1, dtype=np.int64)
    rows = np.array([r for r, _ in free], dtype=np.int64)
    cols = np.array([c for _, c in free], dtype=np.int64)
    hits = []
    for lo in range(start, stop, BATCH):
        idx = np.arange(lo, min(lo + BATCH, stop), dtype=np.int64)
        digits = (idx[:, None] // weights[None, :]) % p
        B = np.broadcast_to(base, (idx.size,) + base.shape).copy()
        if free:
            B[:, rows, cols] = digits
        for k in kernel.filter(B):
            hits.append(B[k].copy())
    return hits


def enumerate_space(S: SearchSpace, jobs: int = 1, order=None, verify: bool = True) -> SearchResult:
    """Complete, duplicate-free list of candidates satisfying the predicate.

    The space is split on the value of the first free entry; ``jobs > 1``
    scans those partitions on a thread pool.  ``order`` permutes the
    significance of the free entries in the odometer (the result is the
    same set, sorted by column-major entries either way)."""
    t0 = time.perf_counter()
    ctx, n = S.ctx, S.dim
    free = S.free_entries()
    order = list(range(len(free))) if order is None else list(order)
    if sorted(order) != list(range(len(free))):
        raise ValueError("order must be a permutation of the free entries")
    base = np.zeros((n, n), dtype=np.int64)
    for lab, vec in S.pins.items():
        base[:, S.algebra.index(lab)] = vec.data.astype(np.int64)
    kernel = _Kernel(S)
    total = S.size()
    parts = ctx.characteristic if free else 1
    step = total // parts
    bounds = [(k * step, (k + 1) * step) for k in range(parts)]
    if jobs > 1 and parts > 1:
        with ThreadPoolExecutor(max_workers=jobs) as pool:
            chunks = list(pool.map(lambda b: _scan(S, kernel, order, base, *b), bounds))
    else:
        chunks = [_scan(S, kernel, order, base, *b) for b in bounds]
    mats = {}
    for chunk in chunks:
        for arr in chunk:
            m = Mat(ctx, arr.astype(ctx.dtype))
            mats.setdefault(m.key(), m)
    cands = [RBCandidate(mats[k], S.weight) for k in sorted(mats)]
    if verify:
        for c in cands:
            _reverify(S, c)
    return SearchResult(S, cands, total, time.perf_counter() - t0, parts)


def _reverify(S: SearchSpace, c: RBCandidate):
    if S.predicate == "algebra_rb":
        ok = check_algebra_rb(S.algebra, c)[0]
    elif S.predicate == "lie_rb":
        ok = check_algebra_rb(minus_algebra(S.algebra), c)[0]
    elif S.predicate == "jordan_rb":
        ok = check_algebra_rb(plus_algebra(S.algebra), c)[0]
    elif S.predicate == "chrb":
        ok = check_chrb(S.target, c.op)[0]
    else:
        ok = nchrb_check(S.target, c.op).passed
    if not ok:
        raise AssertionError(f"search kernel and {S.predicate} checker disagree on {c.op.to_rows()}")


@dataclass
class DiffReport:
    families: list[str]
    found_only: list[Mat]
    family_only: list[Mat]
    both: list[Mat]

    @property
    def empty(self) -> bool:
        return not self.found_only and not self.family_only

    def to_report(self, labels) -> Report:
        rep = Report(f"search vs {' + '.join(self.families)}")
        fmt = lambda ms: [{labels[j]: m.column(j).pretty(labels) for j in range(m.cols)} for m in ms]
        rep.add("found but not in family", not self.found_only, fmt(self.found_only) or None,
                f"{len(self.found_only)} operators")
        rep.add("in family but not found", not self.family_only, fmt(self.family_only) or None,
                f"{len(self.family_only)} operators")
        rep.add("intersection", True, None, f"{len(self.both)} operators")
        return rep


def diff_against_family(found, fam, ctx: FieldCtx, members=None) -> DiffReport:
    """Compare a search result with the full parameter sweep of one or more families.

    ``members`` overrides the sweep (used to plant discrepancies)."""
    ids = [fam] if isinstance(fam, (str, Family)) else list(fam)
    ids = [f.id if isinstance(f, Family) else get_family(f).id for f in ids]
    if members is None:
        members = [m for f in ids for m in family_members(f, ctx)]
    found_m = [c.op if isinstance(c, RBCandidate) else c for c in found]
    fk = {m.key(): m for m in found_m}
    mk = {m.key(): m for m in members}
    return DiffReport(
        ids,
        [fk[k] for k in sorted(set(fk) - set(mk))],
        [mk[k] for k in sorted(set(mk) - set(fk))],
        [fk[k] for k in sorted(set(fk) & set(mk))],
    )
