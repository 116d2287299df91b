"""Finite groups as Cayley tables and Rota-Baxter operators on them.

Elements are indices ``0..n-1`` with 0 the identity.  Covers weight +-1
group RB operators, the derived product g*h = g B(g) h B(g)^{-1}, image and
kernel subgroups, exact factorizations, and the group-algebra (GA-RB)
operators obtained as B(kh) = h from a factorization G = KH.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from functools import cached_property

from .errors import (
    CandidateFails,
    HypothesisViolated,
    NotAnRBOperator,
    OrderTooLarge,
    SubgroupCheckFailed,
)
from .report import Report
from .scalars import FieldCtx

__all__ = [
    "GroupTable",
    "GroupRB",
    "cyclic",
    "klein_four",
    "symmetric3",
    "dihedral4",
    "quaternion8",
    "builtin_group",
    "BUILTIN_GROUPS",
    "check_group_rb",
    "enumerate_group_rb",
    "derived_group",
    "image_kernel",
    "weight_flip",
    "subgroups",
    "exact_factorizations",
    "ga_rb_from_factorization",
    "satisfies_ga_hypotheses",
    "check_ga_rb",
    "check_ga_structure",
    "ENUMERATION_BOUND",
    "LATTICE_BOUND",
]

ENUMERATION_BOUND = 6
LATTICE_BOUND = 24


class GroupTable:
    def __init__(self, table, labels=None, name=""):
        self.table = tuple(tuple(int(v) for v in row) for row in table)
        self.n = len(self.table)
        self.labels = tuple(labels) if labels is not None else tuple(f"g{i}" for i in range(self.n))
        self.name = name
        if len(self.labels) != self.n or any(len(r) != self.n for r in self.table):
            raise ValueError("table must be square and match the labels")

    @cached_property
    def id(self) -> int:
        for e in range(self.n):
            if all(self.table[e][g] == g and self.table[g][e] == g for g in range(self.n)):
                return e
        raise ValueError(f"{self.name or 'table'} has no identity")

    @cached_property
    def inv(self) -> tuple:
        e = self.id
        out = []
        for g in range(self.n):
            cands = [h for h in range(self.n) if self.table[g][h] == e and self.table[h][g] == e]
            if not cands:
                raise ValueError(f"element {self.labels[g]} has no inverse")
            out.append(cands[0])
        return tuple(out)

    def mul(self, *elems) -> int:
        out = self.id
        for g in elems:
            out = self.table[out][g]
        return out

    def validate(self) -> Report:
        rep = Report(f"group axioms {self.name}".strip())
        n, t = self.n, self.table
        bad = [(g, h) for g in range(n) for h in range(n) if not 0 <= t[g][h] < n]
        rep.add("closure", not bad, bad[:1] or None)
        if bad:
            return rep
        assoc = next(((a, b, c) for a, b, c in itertools.product(range(n), repeat=3)
                      if t[t[a][b]][c] != t[a][t[b][c]]), None)
        rep.add("associativity", assoc is None,
                None if assoc is None else [self.labels[i] for i in assoc])
        try:
            e = self.id
            rep.add("identity", True, detail=self.labels[e])
        except ValueError as exc:
            rep.add("identity", False, str(exc))
            return rep
        try:
            self.inv
            rep.add("inverses", True)
        except ValueError as exc:
            rep.add("inverses", False, str(exc))
        return rep

    def require_valid(self) -> None:
        rep = self.validate()
        if not rep.passed:
            raise ValueError(f"not a group: {[c.witness for c in rep.failures()]}")

    def is_commutative(self, subset=None) -> bool:
        elems = range(self.n) if subset is None else subset
        return all(self.table[a][b] == self.table[b][a] for a in elems for b in elems)

    def is_subgroup(self, subset) -> bool:
        s = set(subset)
        return self.id in s and all(self.table[a][b] in s for a in s for b in s) \
            and all(self.inv[a] in s for a in s)

    def closure(self, gens) -> frozenset:
        out = {self.id}
        frontier = list(out)
        gens = list(gens)
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    p = self.table[a][g]
                    if p not in out:
                        out.add(p)
                        new.append(p)
            frontier = new
        return frozenset(out)

    def names(self, subset) -> list:
        return [self.labels[i] for i in sorted(subset)]

    def __eq__(self, other):
        return isinstance(other, GroupTable) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __repr__(self):
        return f"GroupTable({self.name or '?'}, order={self.n})"

    @classmethod
    def from_permutations(cls, gens, name="", labeler=None) -> GroupTable:
        """Close permutation tuples under composition; the identity gets index 0.
        Products are composed as (p*q)(i) = p(q(i))."""
        deg = len(gens[0])
        ident = tuple(range(deg))
        elems = [ident]
        seen = {ident}
        frontier = [ident]
        while frontier:
            new = []
            for a in frontier:
                for g in gens:
                    p = tuple(a[g[i]] for i in range(deg))
                    if p not in seen:
                        seen.add(p)
                        elems.append(p)
                        new.append(p)
            frontier = new
        index = {p: i for i, p in enumerate(elems)}
        table = [[index[tuple(a[b[i]] for i in range(deg))] for b in elems] for a in elems]
        labels = [labeler(p) if labeler else _cycles(p) for p in elems]
        return cls(table, labels, name)


def _cycles(p) -> str:
    seen, parts = set(), []
    for i in range(len(p)):
        if i in seen or p[i] == i:
            continue
        cyc, j = [], i
        while j not in seen:
            seen.add(j)
            cyc.append(str(j))
            j = p[j]
        parts.append("(" + "".join(cyc) + ")")
    return "".join(parts) or "e"


def cyclic(n: int) -> GroupTable:
    labels = ["e", "a"] + [f"a{k}" for k in range(2, n)]
    return GroupTable([[(i + j) % n for j in range(n)] for i in range(n)], labels[:n], f"C{n}")


def klein_four() -> GroupTable:
    labels = ["e", "a", "b", "ab"]
    return GroupTable([[i ^ j for j in range(4)] for i in range(4)], labels, "V4")


def symmetric3() -> GroupTable:
    return GroupTable.from_permutations([(1, 0, 2), (1, 2, 0)], "S3")


def dihedral4() -> GroupTable:
    return GroupTable.from_permutations([(1, 2, 3, 0), (0, 3, 2, 1)], "D4")


def quaternion8() -> GroupTable:
    # units +-1, +-i, +-j, +-k as (sign, unit) with z standing for -1
    mult = {("1", u): (1, u) for u in "1ijk"}
    mult.update({(u, "1"): (1, u) for u in "1ijk"})
    mult.update({("i", "i"): (-1, "1"), ("j", "j"): (-1, "1"), ("k", "k"): (-1, "1"),
                 ("i", "j"): (1, "k"), ("j", "k"): (1, "i"), ("k", "i"): (1, "j"),
                 ("j", "i"): (-1, "k"), ("k", "j"): (-1, "i"), ("i", "k"): (-1, "j")})
    elems = [(s, u) for s in (1, -1) for u in "1ijk"]
    index = {e: i for i, e in enumerate(elems)}

    def times(a, b):
        s, u = mult[(a[1], b[1])]
        return (a[0] * b[0] * s, u)

    table = [[index[times(a, b)] for b in elems] for a in elems]
    labels = [u if s == 1 else "z" + (u if u != "1" else "") for s, u in elems]
    return GroupTable(table, labels, "Q8")


BUILTIN_GROUPS = {
    "C2": lambda: cyclic(2),
    "C3": lambda: cyclic(3),
    "C4": lambda: cyclic(4),
    "V4": klein_four,
    "C5": lambda: cyclic(5),
    "C6": lambda: cyclic(6),
    "S3": symmetric3,
    "D4": dihedral4,
    "Q8": quaternion8,
}


def builtin_group(name: str) -> GroupTable:
    try:
        return BUILTIN_GROUPS[name.upper()]()
    except KeyError:
        raise KeyError(f"unknown group {name!r}; known: {', '.join(BUILTIN_GROUPS)}") from None


@dataclass(frozen=True)
class GroupRB:
    group: GroupTable
    map: tuple
    weight: int = 1

    def __post_init__(self):
        object.__setattr__(self, "map", tuple(int(v) for v in self.map))
        if len(self.map) != self.group.n or not all(0 <= v < self.group.n for v in self.map):
            raise ValueError("map must be a total function on the group")
        if self.weight not in (1, -1):
            raise ValueError("weight must be +1 or -1")

    def __call__(self, g: int) -> int:
        return self.map[g]

    def describe(self) -> dict:
        G = self.group
        return {G.labels[g]: G.labels[self.map[g]] for g in range(G.n)}


def _rb_pair_ok(G: GroupTable, B, weight: int, g: int, h: int) -> bool:
    t, inv = G.table, G.inv
    bg = B[g]
    if weight == 1:
        arg = t[t[t[g][bg]][h]][inv[bg]]
    else:
        arg = t[t[t[bg][h]][inv[bg]]][g]
    return t[bg][B[h]] == B[arg]


def check_group_rb(B: GroupRB):
    """Check the weight-(+-1) group RB identity on all pairs; ``(ok, witness pair)``."""
    G = B.group
    for g in range(G.n):
        for h in range(G.n):
            if not _rb_pair_ok(G, B.map, B.weight, g, h):
                return False, (G.labels[g], G.labels[h])
    return True, None


def enumerate_group_rb(G: GroupTable, weight: int = 1, bound: int = ENUMERATION_BOUND) -> list:
    """All set maps G -> G satisfying the RB identity of ``weight``, by brute force.

    The map space is scanned one partition per value of B(e); results come
    out in lexicographic order of the map tuple."""
    if G.n > bound:
        raise OrderTooLarge(f"|G| = {G.n} exceeds enumeration bound {bound}")
    n = G.n
    pairs = [(g, h) for g in range(n) for h in range(n)]
    found = []
    for b0 in range(n):
        for rest in itertools.product(range(n), repeat=n - 1):
            m = (b0,) + rest
            if all(_rb_pair_ok(G, m, weight, g, h) for g, h in pairs):
                found.append(GroupRB(G, m, weight))
    return found


def derived_group(B: GroupRB):
    """The group (G, *) with g*h = g B(g) h B(g)^{-1}.

    Returns ``(table, report)``; the report covers the group axioms of *, that
    B is an RB operator of (G, *), and that B: (G, *) -> (G, .) is a homomorphism."""
    ok, w = check_group_rb(B)
    if B.weight != 1 or not ok:
        raise NotAnRBOperator(f"not a weight-1 group RB operator (witness {w})")
    G = B.group
    t, inv, m = G.table, G.inv, B.map
    star = [[t[t[t[g][m[g]]][h]][inv[m[g]]] for h in range(G.n)] for g in range(G.n)]
    D = GroupTable(star, G.labels, f"{G.name}*")
    rep = Report(f"derived group of {G.name}")
    rep.extend(D.validate(), "(G,*) ")
    if rep.passed:
        rep.add("B is RB on (G,*)", *check_group_rb(GroupRB(D, m, 1)))
        bad = next(((G.labels[g], G.labels[h]) for g in range(G.n) for h in range(G.n)
                    if m[star[g][h]] != t[m[g]][m[h]]), None)
        rep.add("B: (G,*) -> (G,.) homomorphism", bad is None, bad)
    return D, rep


def image_kernel(B: GroupRB):
    """(Im B, ker B) as frozensets; raises if either is not a subgroup."""
    G = B.group
    H = frozenset(B.map)
    K = frozenset(g for g in range(G.n) if B.map[g] == G.id)
    for name, S in (("image", H), ("kernel", K)):
        if not G.is_subgroup(S):
            raise SubgroupCheckFailed(f"{name} {G.names(S)} of {B.describe()} is not a subgroup")
    return H, K


def weight_flip(B: GroupRB) -> GroupRB:
    """Candidate weight -1 operator g -> g B(g); verified, never assumed."""
    if B.weight != 1:
        raise ValueError("weight_flip expects a weight-1 operator")
    G = B.group
    C = GroupRB(G, tuple(G.table[g][B.map[g]] for g in range(G.n)), -1)
    ok, w = check_group_rb(C)
    if not ok:
        raise CandidateFails(f"g -> gB(g) fails the weight -1 identity at {w}")
    return C


def subgroups(G: GroupTable, bound: int = LATTICE_BOUND) -> list:
    """All subgroups, grown by joining cyclic subgroups; sorted by (order, elements)."""
    if G.n > bound:
        raise OrderTooLarge(f"|G| = {G.n} exceeds lattice bound {bound}")
    found = {frozenset([G.id])}
    frontier = list(found)
    while frontier:
        new = []
        for S in frontier:
            for g in range(G.n):
                if g not in S:
                    T = G.closure(set(S) | {g})
                    if T not in found:
                        found.add(T)
                        new.append(T)
        frontier = new
    return sorted(found, key=lambda S: (len(S), sorted(S)))


def _is_exact(G: GroupTable, K, H) -> bool:
    if K & H != {G.id} or len(K) * len(H) != G.n:
        return False
    products = {G.table[k][h] for k in K for h in H}
    return len(products) == G.n


def exact_factorizations(G: GroupTable, bound: int = LATTICE_BOUND) -> list:
    """Ordered pairs (K, H) of subgroups with K ∩ H = 1 and |K||H| = |G|."""
    subs = subgroups(G, bound)
    out = []
    for K in subs:
        for H in subs:
            if K & H == {G.id} and len(K) * len(H) == G.n:
                assert _is_exact(G, K, H), "trivial intersection and orders should force KH = G"
                out.append((K, H))
    return out


def _ga_hypotheses(G: GroupTable, K, H):
    if not (G.is_subgroup(K) and G.is_subgroup(H) and _is_exact(G, K, H)):
        return "exact factorization", "G = KH with K ∩ H = 1 fails"
    if not G.is_commutative(H):
        return "H commutative", f"H = {G.names(H)}"
    for h in H:
        h2 = G.mul(h, h)
        h2inv = G.inv[h2]
        for k in K:
            if G.mul(h2, k, h2inv) not in K:
                return "h^2 K h^-2 ⊆ K", f"h = {G.labels[h]}, k = {G.labels[k]}"
    return None


def ga_rb_from_factorization(G: GroupTable, K, H) -> GroupRB:
    """The operator kh -> h for an exact factorization meeting the GA-RB hypotheses."""
    K, H = frozenset(K), frozenset(H)
    bad = _ga_hypotheses(G, K, H)
    if bad:
        raise HypothesisViolated(*bad)
    m = [None] * G.n
    for k in K:
        for h in H:
            g = G.table[k][h]
            assert m[g] is None, "decomposition g = kh is not unique"
            m[g] = h
    return GroupRB(G, tuple(m), 1)


def satisfies_ga_hypotheses(G: GroupTable, K, H) -> bool:
    return _ga_hypotheses(G, frozenset(K), frozenset(H)) is None


def check_ga_rb(B: GroupRB, ctx: FieldCtx, lam):
    """Weight-lam algebra RB identity for the linear extension of B to k[G].

    For each pair (g, h) the element B(g)B(h) - B(B(g)h) - B(gB(h)) - lam B(gh)
    of k[G] must vanish; returns ``(ok, witness)``."""
    G = B.group
    t, m = G.table, B.map
    lam = ctx.raw(lam)
    one = ctx.raw(1)
    for g in range(G.n):
        for h in range(G.n):
            coeff = {}

            def bump(e, c):
                coeff[e] = ctx.add(coeff.get(e, ctx.raw(0)), c)

            bump(t[m[g]][m[h]], one)
            bump(m[t[m[g]][h]], ctx.neg(one))
            bump(m[t[g][m[h]]], ctx.neg(one))
            bump(m[t[g][h]], ctx.neg(lam))
            residue = {G.labels[e]: ctx.render(c) for e, c in coeff.items() if c != 0}
            if residue:
                return False, {"pair": (G.labels[g], G.labels[h]), "residue": residue}
    return True, None


def check_ga_structure(B: GroupRB) -> Report:
    """Structural consequences of being a GA-RB operator (weight -1)."""
    G = B.group
    t, inv, m = G.table, G.inv, B.map
    L = G.labels
    rep = Report(f"GA-RB structure on {G.name}: {B.describe()}")
    bad = next((L[g] for g in range(G.n) if m[m[g]] != m[g]), None)
    rep.add("B∘B = B", bad is None, bad)
    H = frozenset(m)
    K = frozenset(g for g in range(G.n) if m[g] == G.id)
    subs_ok = G.is_subgroup(H) and G.is_subgroup(K)
    exact = subs_ok and _is_exact(G, K, H)
    rep.add("(ker B, Im B) exact factorization", exact,
            None if exact else {"K": G.names(K), "H": G.names(H)})
    bad = next(((L[k], L[h]) for k in K for h in H if m[t[k][h]] != h), None)
    rep.add("B(kh) = h", bad is None, bad)
    rep.add("Im B commutative", G.is_commutative(H), None if G.is_commutative(H) else G.names(H))
    bad = None
    for h in H:
        h2 = t[h][h]
        for k in K:
            if m[t[t[h2][k]][inv[h2]]] != G.id:
                bad = (L[h], L[k])
                break
        if bad:
            break
    rep.add("h² K h⁻² ⊆ K", bad is None, bad)
    bad = None
    for g in range(G.n):
        for h in range(G.n):
            lhs = t[m[g]][m[h]]
            first = lhs == m[t[m[g]][h]] and m[t[g][m[h]]] == m[t[g][h]]
            second = lhs == m[t[g][m[h]]] and m[t[m[g]][h]] == m[t[g][h]]
            if not (first or second):
                bad = (L[g], L[h])
                break
        if bad:
            break
    rep.add("one of the two alternative systems holds", bad is None, bad)
    return rep
