"""Rota-Baxter identities for linear operators.

Every checker builds the full defect tensor ``D[k, i, j]`` (coefficient of
e_k in LHS - RHS for the basis pair (e_i, e_j)) with exact contractions,
so a single call covers all n^2 pairs.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .algebra import AlgebraSpec, minus_algebra, plus_algebra
from .errors import DimensionMismatch
from .hopf import HopfSpec, builtin_h4, is_coalgebra_hom
from .linalg import Mat, Vec, contract, tensor_labels
from .report import Report
from .scalars import FieldCtx, Scalar

__all__ = [
    "RBCandidate",
    "algebra_rb_defect",
    "check_algebra_rb",
    "chrb_defect",
    "check_chrb",
    "nchrb_check",
    "lie_rb_check",
    "jordan_rb_check",
]


@dataclass(frozen=True, eq=False)
class RBCandidate:
    op: Mat
    weight: Scalar | None = None

    def __post_init__(self):
        if self.op.rows != self.op.cols:
            raise DimensionMismatch(f"operator must be square, got {self.op.shape}")
        if self.weight is not None and not isinstance(self.weight, Scalar):
            object.__setattr__(self, "weight", self.op.ctx(self.weight))

    @property
    def ctx(self) -> FieldCtx:
        return self.op.ctx

    def with_weight(self, weight) -> RBCandidate:
        return RBCandidate(self.op, weight)

    def describe(self, labels) -> dict:
        return {labels[j]: self.op.column(j).pretty(labels) for j in range(self.op.cols)}


def _check_dims(n: int, B: Mat):
    if B.shape != (n, n):
        raise DimensionMismatch(f"operator {B.shape} on a dim-{n} algebra")


def _witnesses(ctx, D: np.ndarray, labels, out_labels=None):
    """Failing basis pairs of a defect tensor D[k, i, j]."""
    n = D.shape[1]
    out_labels = out_labels or labels
    bad = []
    for i in range(n):
        for j in range(n):
            col = D[:, i, j]
            if np.any(col != 0):
                bad.append({"pair": (labels[i], labels[j]),
                            "defect": Vec(ctx, col.copy()).pretty(out_labels)})
    return bad


def _algebra_rb_tensor(A: AlgebraSpec, R: np.ndarray, lam) -> np.ndarray:
    ctx = A.ctx
    M = A.structure_tensor()
    lhs = contract(ctx, "kib,bj->kij", contract(ctx, "kab,ai->kib", M, R), R)
    left = contract(ctx, "kaj,ai->kij", M, R)
    right = contract(ctx, "kib,bj->kij", M, R)
    inner = ctx.reduce(left + right + M * ctx.raw(lam))
    rhs = contract(ctx, "qk,kij->qij", R, inner)
    return ctx.reduce(lhs - rhs)


def algebra_rb_defect(A: AlgebraSpec, R: RBCandidate, i: int, j: int) -> Vec:
    """R(e_i)R(e_j) - R(R(e_i)e_j + e_i R(e_j) + lam e_i e_j)."""
    if R.weight is None:
        raise ValueError("algebra RB identity needs a weight")
    _check_dims(A.dim, R.op)
    D = _algebra_rb_tensor(A, R.op.data, R.weight)
    return Vec(A.ctx, D[:, i, j].copy())


def check_algebra_rb(A: AlgebraSpec, R: RBCandidate):
    """``(ok, witnesses)`` for the weight-lam RB identity on all basis pairs."""
    if R.weight is None:
        raise ValueError("algebra RB identity needs a weight")
    _check_dims(A.dim, R.op)
    D = _algebra_rb_tensor(A, R.op.data, R.weight)
    bad = _witnesses(A.ctx, D, A.labels)
    return not bad, bad


def lie_rb_check(ctx: FieldCtx, B: Mat, lam):
    """RB identity of weight lam on the bracket algebra of H4."""
    return check_algebra_rb(minus_algebra(builtin_h4(ctx).alg), RBCandidate(B, lam))


def jordan_rb_check(ctx: FieldCtx, B: Mat, lam):
    """RB identity of weight lam on H4 with product ab + ba."""
    return check_algebra_rb(plus_algebra(builtin_h4(ctx).alg), RBCandidate(B, lam))


def _triple(ctx, M, Q, R):
    """T[q, j, r, k]: coefficient of e_k in (Q e_q) e_j (R e_r)."""
    U = contract(ctx, "klj,lq->qjk", M, Q)
    V = contract(ctx, "klm,mr->klr", M, R)
    return contract(ctx, "qjl,klr->qjrk", U, V)


def _sandwich(ctx, M, P, Q, R):
    """T[p, q, j, r, k]: coefficient of e_k in (P e_p)(Q e_q) e_j (R e_r)."""
    T = _triple(ctx, M, Q, R)
    W = contract(ctx, "klm,lp->kpm", M, P)
    return contract(ctx, "kpm,qjrm->pqjrk", W, T)


def _product_tensor(ctx, M, B):
    """P[k, i, j]: coefficient of e_k in B(e_i) B(e_j)."""
    return contract(ctx, "kib,bj->kij", contract(ctx, "kab,ai->kib", M, B), B)


def _chrb_tensor(H: HopfSpec, B: np.ndarray) -> np.ndarray:
    ctx = H.ctx
    M = H.alg.structure_tensor()
    I = ctx.eye(H.dim)
    SB = contract(ctx, "kl,lr->kr", H.antipode.data, B)
    T = _sandwich(ctx, M, I, B, SB)
    inner = contract(ctx, "ipqr,pqjrk->ijk", H.legs_tensor(3), T)
    rhs = contract(ctx, "ck,ijk->cij", B, inner)
    return ctx.reduce(_product_tensor(ctx, M, B) - rhs)


def chrb_defect(H: HopfSpec, B: Mat, i: int, j: int) -> Vec:
    """B(a)B(b) - B(a_(1) B(a_(2)) b S(B(a_(3)))) at a = e_i, b = e_j."""
    _check_dims(H.dim, B)
    return Vec(H.ctx, _chrb_tensor(H, B.data)[:, i, j].copy())


def check_chrb(H: HopfSpec, B: Mat):
    """``(ok, witnesses)`` for the cocommutative-Hopf RB identity on all basis pairs.

    The identity is evaluated verbatim even when H is not cocommutative."""
    _check_dims(H.dim, B)
    bad = _witnesses(H.ctx, _chrb_tensor(H, B.data), H.labels)
    return not bad, bad


def nchrb_check(H: HopfSpec, B: Mat) -> Report:
    """The three conditions of a non-cocommutative Hopf RB operator, reported separately.

    (1) B is a coalgebra map (the opposite algebra has the same coalgebra);
    (2) S(B(a2)) b B(a3) ⊗ S(B(a1)) = S(B(a2)) b B(a3) ⊗ S(a1) a4 S(B(a5));
    (3) B(a)B(b) = B(a1 S(B(a2)) b B(a3))."""
    _check_dims(H.dim, B)
    ctx, n, L = H.ctx, H.dim, H.labels
    M = H.alg.structure_tensor()
    S = H.antipode.data
    Bd = B.data
    SB = contract(ctx, "kl,lr->kr", S, Bd)
    rep = Report(f"NCH-RB conditions on {H.name}")

    ok, w = is_coalgebra_hom(H, B)
    rep.add("(1) coalgebra homomorphism H -> H^op", ok, w)

    L3, L5 = H.legs_tensor(3), H.legs_tensor(5)
    left = _triple(ctx, M, SB, Bd)  # [q, j, r, m]: S(B(e_q)) e_j B(e_r)
    lhs_right = contract(ctx, "ipqr,kp->iqrk", L3, SB)
    lhs = contract(ctx, "iqrk,qjrm->ijmk", lhs_right, left)
    right5 = _triple(ctx, M, S, SB)  # [p, s, t, k]: S(e_p) e_s S(B(e_t))
    E = contract(ctx, "ipqrst,pstk->iqrk", L5, right5)
    rhs = contract(ctx, "iqrk,qjrm->ijmk", E, left)
    D2 = ctx.reduce(lhs - rhs).reshape(n, n, n * n)
    D2 = np.ascontiguousarray(np.transpose(D2, (2, 0, 1)))
    bad = _witnesses(ctx, D2, L, tensor_labels(L, 2))
    rep.add("(2) five-leg tensor identity", not bad, bad or None,
            f"{len(bad)} failing pairs" if bad else "")

    I = ctx.eye(n)
    T = _sandwich(ctx, M, I, SB, Bd)
    inner = contract(ctx, "ipqr,pqjrk->ijk", L3, T)
    D3 = ctx.reduce(_product_tensor(ctx, M, Bd) - contract(ctx, "ck,ijk->cij", Bd, inner))
    bad = _witnesses(ctx, D3, L)
    rep.add("(3) B(a)B(b) = B(a1 S(B(a2)) b B(a3))", not bad, bad or None,
            f"{len(bad)} failing pairs" if bad else "")
    return rep
