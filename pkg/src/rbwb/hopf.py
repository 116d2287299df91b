"""Hopf algebras on top of :class:`AlgebraSpec`.

The comultiplication is an n^2 x n matrix (column i = coordinates of
Delta(e_i) in the big-endian tensor basis), the counit a 1 x n matrix and
the antipode an n x n matrix.  Also here: Sweedler-leg expansion, the
Sweedler algebra H4, group Hopf algebras, and a checker for Hopf maps out
of a finitely presented Hopf algebra (used for U_q(sl2) -> H4).
"""

from __future__ import annotations

from dataclasses import dataclass, field

import numpy as np

from .algebra import AlgebraSpec, check_associativity_and_unit, group_algebra, mul_vec
from .errors import ConstraintViolated, DimensionMismatch, KTooLarge, UnknownGenerator
from .linalg import Mat, Vec, exact_bilinear, flip, kron, kron_all, tensor_labels
from .report import Report
from .scalars import FieldCtx, Scalar

__all__ = [
    "HopfSpec",
    "check_hopf_axioms",
    "sweedler_legs",
    "is_cocommutative",
    "is_coalgebra_hom",
    "builtin_h4",
    "group_hopf",
    "PresentedHopf",
    "uq_sl2",
    "check_presented_hom",
    "MAX_LEGS",
]

MAX_LEGS = 5


class HopfSpec:
    def __init__(self, alg: AlgebraSpec, delta: Mat, counit: Mat, antipode: Mat, name: str = ""):
        n = alg.dim
        if delta.shape != (n * n, n) or counit.shape != (1, n) or antipode.shape != (n, n):
            raise DimensionMismatch(
                f"dim {n}: delta {delta.shape}, counit {counit.shape}, antipode {antipode.shape}")
        self.alg = alg
        self.delta = delta
        self.counit = counit
        self.antipode = antipode
        self.name = name or alg.name

    @property
    def ctx(self) -> FieldCtx:
        return self.alg.ctx

    @property
    def dim(self) -> int:
        return self.alg.dim

    @property
    def labels(self):
        return self.alg.labels

    def identity(self) -> Mat:
        return Mat.identity(self.ctx, self.dim)

    def unit_map(self) -> Mat:
        """k -> H, 1 |-> 1_H as an n x 1 matrix."""
        return Mat(self.ctx, self.alg.unit.data.reshape(-1, 1).copy())

    def iterated_delta(self, k: int, side: str = "left") -> Mat:
        """The k-leg comultiplication H -> H^{(x)k} (k = 1 is the identity).

        ``side="left"`` expands the leftmost leg at each step, ``"right"`` the
        rightmost; coassociativity makes them agree."""
        if not 1 <= k <= MAX_LEGS:
            raise KTooLarge(f"k must be in 1..{MAX_LEGS}, got {k}")
        return self._iterated(k, side)

    def _iterated(self, k: int, side: str) -> Mat:
        key = (k, side)
        cache = self.__dict__.setdefault("_legs_cache", {})
        if key not in cache:
            n, ctx = self.dim, self.ctx
            if k == 1:
                cache[key] = self.identity()
            else:
                prev = self._iterated(k - 1, side).data.T.reshape((n,) * k)
                D = self.delta.data.reshape(n, n, n)  # D[b, c, a]: e_b (x) e_c in Delta(e_a)
                if side == "left":
                    T = exact_bilinear(ctx, lambda x, y: np.tensordot(x, y, axes=(1, 2)), prev, D)
                    T = np.moveaxis(T, (-2, -1), (1, 2))
                elif side == "right":
                    T = exact_bilinear(ctx, lambda x, y: np.tensordot(x, y, axes=(k - 1, 2)), prev, D)
                else:
                    raise ValueError(f"side must be 'left' or 'right', got {side!r}")
                cache[key] = Mat(ctx, np.ascontiguousarray(T.reshape(n, -1).T))
        return cache[key]

    def legs_tensor(self, k: int) -> np.ndarray:
        """Raw array ``T[i, a_1, ..., a_k]`` = coefficient of e_{a_1} (x)...(x) e_{a_k}
        in the k-leg expansion of e_i."""
        n = self.dim
        D = self.iterated_delta(k).data
        return np.ascontiguousarray(D.T.reshape((n,) + (n,) * k))

    def __repr__(self):
        return f"HopfSpec({self.name}, dim={self.dim}, {self.ctx.name})"


def _first_bad_column(A: Mat, B: Mat, labels):
    for j in range(A.cols):
        if np.any(A.data[:, j] != B.data[:, j]):
            return labels[j] if labels is not None else j
    return None


def check_hopf_axioms(H: HopfSpec) -> Report:
    """Algebra axioms, coassociativity, counit, antipode and bialgebra compatibility."""
    rep = Report(f"Hopf axioms {H.name}".strip())
    ctx, n, L = H.ctx, H.dim, H.labels
    I = H.identity()
    D, eps, S, m = H.delta, H.counit, H.antipode, H.alg.mult_matrix()

    alg = check_associativity_and_unit(H.alg)
    bad = [c.name for c in alg.failures()]
    rep.add("algebra", alg.passed, bad or None, "associativity and unit")

    w = _first_bad_column(kron(I, D) @ D, kron(D, I) @ D, L)
    rep.add("coassociativity", w is None, w, "(id⊗Δ)Δ = (Δ⊗id)Δ")

    w = _first_bad_column(kron(eps, I) @ D, I, L) or _first_bad_column(kron(I, eps) @ D, I, L)
    rep.add("counit", w is None, w, "(ε⊗id)Δ = (id⊗ε)Δ = id")

    if H.alg.unit is None:
        rep.add("antipode", False, "no unit")
        rep.add("bialgebra", False, "no unit")
        return rep
    u_eps = H.unit_map() @ eps
    w = _first_bad_column(m @ kron(S, I) @ D, u_eps, L) or _first_bad_column(m @ kron(I, S) @ D, u_eps, L)
    rep.add("antipode", w is None, w, "m(S⊗id)Δ = m(id⊗S)Δ = ε·1")

    # Delta(ab) = Delta(a) Delta(b), eps(ab) = eps(a) eps(b), Delta(1) = 1⊗1, eps(1) = 1
    m_tensor = kron(m, m) @ kron_all(I, flip(ctx, n), I)
    pairs = tensor_labels(L, 2)
    w = _first_bad_column(D @ m, m_tensor @ kron(D, D), pairs)
    if w is None:
        w = _first_bad_column(eps @ m, kron(eps, eps), pairs)
    unit = H.alg.unit
    if w is None and D @ unit != Vec(ctx, np.kron(unit.data, unit.data)):
        w = "Δ(1)"
    if w is None and (eps @ unit)[0] != 1:
        w = "ε(1)"
    rep.add("bialgebra", w is None, w, "Δ, ε multiplicative and unital")
    return rep


def sweedler_legs(H: HopfSpec, k: int, a: Vec, check: bool = True) -> Vec:
    """Coordinates of a_(1) (x) ... (x) a_(k) in the big-endian basis of H^{(x)k}."""
    if a.dim != H.dim:
        raise DimensionMismatch(f"element of dim {a.dim} in a dim-{H.dim} Hopf algebra")
    left = H.iterated_delta(k, "left") @ a
    if check:
        right = H.iterated_delta(k, "right") @ a
        assert left == right, "left- and right-iterated coproducts disagree (not coassociative)"
    return left


def is_cocommutative(H: HopfSpec):
    """(True, None) if P∘Δ = Δ, else (False, label of a basis witness)."""
    w = _first_bad_column(flip(H.ctx, H.dim) @ H.delta, H.delta, H.labels)
    return w is None, w


def is_coalgebra_hom(H: HopfSpec, B: Mat):
    """Whether Δ∘B = (B⊗B)∘Δ and ε∘B = ε.

    Returns ``(ok, witness)``; the witness names the first failing basis
    element and lists the tensor coefficients on which the two sides differ."""
    if B.shape != (H.dim, H.dim):
        raise DimensionMismatch(f"operator {B.shape} on dim-{H.dim} Hopf algebra")
    ctx, L = H.ctx, H.labels
    lhs = H.delta @ B
    rhs = kron(B, B) @ H.delta
    tl = tensor_labels(L, 2)
    for j in range(H.dim):
        if np.any(lhs.data[:, j] != rhs.data[:, j]):
            diffs = [{"tensor": tl[r], "delta_of_B": ctx.render(lhs.data[r, j]),
                      "B_tensor_B_of_delta": ctx.render(rhs.data[r, j])}
                     for r in range(lhs.rows) if lhs.data[r, j] != rhs.data[r, j]]
            return False, {"element": L[j], "condition": "ΔB = (B⊗B)Δ", "differences": diffs}
    eb = H.counit @ B
    for j in range(H.dim):
        if eb.data[0, j] != H.counit.data[0, j]:
            return False, {"element": L[j], "condition": "εB = ε",
                           "epsilon_of_B": ctx.render(eb.data[0, j]),
                           "epsilon": ctx.render(H.counit.data[0, j])}
    return True, None


H4_LABELS = ("1", "g", "x", "gx")


def builtin_h4(ctx: FieldCtx) -> HopfSpec:
    """The Sweedler algebra: g^2 = 1, x^2 = 0, xg = -gx, basis (1, g, x, gx)."""
    products = {}
    for b in H4_LABELS:
        products[("1", b)] = b
        products[(b, "1")] = b
    products.update({
        ("g", "g"): "1", ("g", "x"): "gx", ("g", "gx"): "x",
        ("x", "g"): "-gx", ("gx", "g"): "-x",
    })
    alg = AlgebraSpec.from_products(ctx, H4_LABELS, products, unit_label="1", name="H4")
    d = ctx.zeros((16, 4))
    one = ctx.raw(1)
    pos = {lab: i for i, lab in enumerate(H4_LABELS)}

    def put(col, left, right):
        d[pos[left] * 4 + pos[right], pos[col]] = one

    put("1", "1", "1")
    put("g", "g", "g")
    put("x", "x", "1")
    put("x", "g", "x")
    put("gx", "gx", "g")
    put("gx", "1", "gx")
    counit = Mat(ctx, [[1, 1, 0, 0]])
    S = Mat.from_columns(ctx, [alg.element("1"), alg.element("g"), alg.element("-gx"), alg.element("x")])
    return HopfSpec(alg, Mat(ctx, d), counit, S, name="H4")


def group_hopf(G, ctx: FieldCtx) -> HopfSpec:
    """k[G] with Δ(g) = g⊗g, ε(g) = 1, S(g) = g^{-1}."""
    G.require_valid()
    alg = group_algebra(G, ctx)
    n = G.n
    d = ctx.zeros((n * n, n))
    s = ctx.zeros((n, n))
    one = ctx.raw(1)
    for g in range(n):
        d[g * n + g, g] = one
        s[G.inv[g], g] = one
    counit = Mat(ctx, [[1] * n])
    return HopfSpec(alg, Mat(ctx, d), counit, Mat(ctx, s), name=f"k[{G.name}]")


# -- finitely presented Hopf algebras -------------------------------------

Word = tuple
Poly = list  # [(Scalar, Word)]


@dataclass
class PresentedHopf:
    """Generators, algebra relations (each ``poly = 0``), and Hopf data on generators.

    ``ideal`` lists extra relations generating the ideal one quotients by;
    they are checked to map to zero together with their coproducts."""

    ctx: FieldCtx
    generators: list
    relations: list  # [(name, Poly)]
    coproducts: dict  # gen -> [(Scalar, Word, Word)]
    counits: dict  # gen -> Scalar
    antipodes: dict  # gen -> Poly
    ideal: list = field(default_factory=list)  # [(name, Poly)]
    name: str = ""

    def __post_init__(self):
        known = set(self.generators)

        def words():
            for _, poly in self.relations + self.ideal:
                yield from (w for _, w in poly)
            for terms in self.coproducts.values():
                for _, wl, wr in terms:
                    yield wl
                    yield wr
            for poly in self.antipodes.values():
                yield from (w for _, w in poly)

        for w in words():
            for letter in w:
                if letter not in known:
                    raise UnknownGenerator(letter)
        for table in (self.coproducts, self.counits, self.antipodes):
            for g in table:
                if g not in known:
                    raise UnknownGenerator(g)
            missing = known - set(table)
            if missing:
                raise UnknownGenerator(f"no Hopf data for {sorted(missing)}")

    # free-algebra operations on words and polynomials

    def coproduct_of_word(self, word):
        terms = [(self.ctx.one, (), ())]
        for letter in word:
            terms = [(c * d, wl + xl, wr + xr)
                     for c, wl, wr in terms for d, xl, xr in self.coproducts[letter]]
        return terms

    def coproduct(self, poly):
        return [(c * d, wl, wr) for c, w in poly for d, wl, wr in self.coproduct_of_word(w)]

    def counit_of(self, poly) -> Scalar:
        total = self.ctx.zero
        for c, w in poly:
            term = c
            for letter in w:
                term = term * self.counits[letter]
            total = total + term
        return total

    def antipode_of(self, poly):
        out = []
        for c, w in poly:
            terms = [(c, ())]
            for letter in reversed(w):
                terms = [(a * b, wa + wb) for a, wa in terms for b, wb in self.antipodes[letter]]
            out.extend(terms)
        return out


def uq_sl2(ctx: FieldCtx, q, quotient: bool = True) -> PresentedHopf:
    """U_q(sl2) on E, F, K, Kinv with the [E, F] relation cleared of its
    denominator.  ``quotient`` adds K^2 - 1 and Kinv - K to the ideal."""
    q = ctx(q) if not isinstance(q, Scalar) else q
    if q.is_zero():
        raise ConstraintViolated("q must be invertible")
    qq = q - q.inv()
    if qq.is_zero():
        raise ConstraintViolated(f"q - 1/q = 0 for q = {q}; q must differ from 1 and -1")
    one = ctx.one
    q2 = q * q
    rels = [
        ("K Kinv = 1", [(one, ("K", "Kinv")), (-one, ())]),
        ("Kinv K = 1", [(one, ("Kinv", "K")), (-one, ())]),
        ("K E Kinv = q^2 E", [(one, ("K", "E", "Kinv")), (-q2, ("E",))]),
        ("K F Kinv = q^-2 F", [(one, ("K", "F", "Kinv")), (-q2.inv(), ("F",))]),
        ("(q - q^-1)[E, F] = K - Kinv",
         [(qq, ("E", "F")), (-qq, ("F", "E")), (-one, ("K",)), (one, ("Kinv",))]),
    ]
    coproducts = {
        "E": [(one, (), ("E",)), (one, ("E",), ("K",))],
        "F": [(one, ("Kinv",), ("F",)), (one, ("F",), ())],
        "K": [(one, ("K",), ("K",))],
        "Kinv": [(one, ("Kinv",), ("Kinv",))],
    }
    counits = {"E": ctx.zero, "F": ctx.zero, "K": one, "Kinv": one}
    antipodes = {
        "E": [(-one, ("E", "Kinv"))],
        "F": [(-one, ("K", "F"))],
        "K": [(one, ("Kinv",))],
        "Kinv": [(one, ("K",))],
    }
    ideal = []
    if quotient:
        ideal = [("K^2 = 1", [(one, ("K", "K")), (-one, ())]),
                 ("Kinv = K", [(one, ("Kinv",)), (-one, ("K",))])]
    return PresentedHopf(ctx, ["E", "F", "K", "Kinv"], rels, coproducts, counits, antipodes,
                         ideal, name=f"U_q(sl2), q={q}")


def _eval_word(H: HopfSpec, images, word) -> Vec:
    v = H.alg.unit
    for letter in word:
        v = mul_vec(H.alg, v, images[letter])
    return v


def _eval_poly(H: HopfSpec, images, poly) -> Vec:
    acc = Vec.zeros(H.ctx, H.dim)
    for c, w in poly:
        acc = acc + _eval_word(H, images, w).scale(c)
    return acc


def _eval_tensor(H: HopfSpec, images, terms) -> Vec:
    acc = Vec.zeros(H.ctx, H.dim**2)
    for c, wl, wr in terms:
        left, right = _eval_word(H, images, wl), _eval_word(H, images, wr)
        acc = acc + Vec(H.ctx, H.ctx.reduce(np.kron(left.data, right.data))).scale(c)
    return acc


def check_presented_hom(P: PresentedHopf, H: HopfSpec, images: dict) -> Report:
    """Check that generator images define a Hopf map P -> H (relations, ideal,
    Δ, ε and S on generators).  Injectivity modulo the ideal is not checked."""
    for g in images:
        if g not in P.generators:
            raise UnknownGenerator(g)
    missing = [g for g in P.generators if g not in images]
    if missing:
        raise UnknownGenerator(f"no image for {missing}")
    imgs = {}
    for g, v in images.items():
        v = H.alg.element(v) if isinstance(v, str) else v
        if v.dim != H.dim or v.ctx != H.ctx:
            raise DimensionMismatch(f"image of {g} does not live in {H.name}")
        imgs[g] = v
    L = H.labels
    L2 = tensor_labels(L, 2)
    rep = Report(f"{P.name or 'presented'} -> {H.name}")

    for name, poly in P.relations:
        val = _eval_poly(H, imgs, poly)
        rep.add(f"relation {name}", val.is_zero(), None if val.is_zero() else val.pretty(L))
    for name, poly in P.ideal:
        val = _eval_poly(H, imgs, poly)
        rep.add(f"ideal {name}", val.is_zero(), None if val.is_zero() else val.pretty(L))
        dval = _eval_tensor(H, imgs, P.coproduct(poly))
        e = P.counit_of(poly)
        sval = _eval_poly(H, imgs, P.antipode_of(poly))
        ok = dval.is_zero() and e.is_zero() and sval.is_zero()
        rep.add(f"coideal {name}", ok, None if ok else
                {"delta": dval.pretty(L2), "counit": str(e), "antipode": sval.pretty(L)})
    for g in P.generators:
        lhs = H.delta @ imgs[g]
        rhs = _eval_tensor(H, imgs, P.coproduct_of_word((g,)))
        rep.add(f"Δ({g})", lhs == rhs, None if lhs == rhs else
                {"delta_H": lhs.pretty(L2), "image_of_delta": rhs.pretty(L2)})
        e_h = (H.counit @ imgs[g])[0]
        e_p = P.counits[g]
        rep.add(f"ε({g})", e_h == e_p, None if e_h == e_p else {"epsilon_H": str(e_h), "epsilon_P": str(e_p)})
        s_h = H.antipode @ imgs[g]
        s_p = _eval_poly(H, imgs, P.antipodes[g])
        rep.add(f"S({g})", s_h == s_p, None if s_h == s_p else
                {"antipode_H": s_h.pretty(L), "image_of_antipode": s_p.pretty(L)})
    return rep
