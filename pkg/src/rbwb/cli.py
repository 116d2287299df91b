"""Command-line front end: ``rbwb verify | check-rb | enumerate | catalog | hom-check``.

Every command prints a human table and can write the machine report with
``--out``.  Exit status is 0 when the verdict is pass, 1 when it is not,
and 2 for usage or input errors.
"""

from __future__ import annotations

import argparse
import hashlib
import os
import sys
import time

from . import __version__
from .documents import dump, emit, from_document, load, search_document, to_document
from .errors import (
    ConstraintViolated,
    FlavorMismatch,
    ParseError,
    RBWBError,
    UnknownCheck,
)
from .families import FAMILIES, FamilySpec, family_instantiate, get_family, sample_parameters
from .groups import (
    GroupRB,
    GroupTable,
    builtin_group,
    check_ga_rb,
    check_ga_structure,
    check_group_rb,
    derived_group,
    enumerate_group_rb,
    image_kernel,
)
from .algebra import AlgebraSpec, check_associativity_and_unit, minus_algebra, plus_algebra
from .hopf import HopfSpec, builtin_h4, check_hopf_axioms, check_presented_hom, group_hopf, \
    is_coalgebra_hom, uq_sl2
from .linalg import Mat
from .rbops import RBCandidate, check_algebra_rb, check_chrb, nchrb_check
from .report import Report
from .scalars import QQ, FieldCtx
from .search import SearchSpace, diff_against_family, enumerate_space, parse_pins

EXIT_PASS, EXIT_FAIL, EXIT_USAGE = 0, 1, 2
DEFAULT_SEED = 20240601

FLAVORS = ("assoc", "lie", "jordan", "chrb", "nchrb", "coalghom", "group", "ga")
PREDICATES = {
    "chrb": "chrb", "nchrb": "nchrb", "algebra-rb": "algebra_rb", "lie-rb": "lie_rb",
    "jordan-rb": "jordan_rb", "group-rb": None, "ga-rb": None,
}


class UsageError(RBWBError):
    pass


# -- targets ----------------------------------------------------------------

def _resolve_target(args, ctx: FieldCtx):
    """HopfSpec, AlgebraSpec or GroupTable from --input or --builtin."""
    if getattr(args, "input", None):
        obj = from_document(load(args.input))
        if not isinstance(obj, (HopfSpec, AlgebraSpec, GroupTable)):
            raise UsageError(f"{args.input} does not describe an algebra, Hopf algebra or group")
        return obj
    name = (args.builtin or "h4").strip()
    if name.lower() == "h4":
        return builtin_h4(ctx)
    if ":" in name:
        kind, gname = name.split(":", 1)
        if kind.lower() == "group":
            return builtin_group(gname)
        if kind.lower() in ("kgroup", "hopf-group"):
            return group_hopf(builtin_group(gname), ctx)
    raise UsageError(f"unknown builtin {name!r}; use h4, group:NAME or kgroup:NAME")


def _digest(path) -> str:
    with open(path, "rb") as fh:
        return hashlib.sha256(fh.read()).hexdigest()


def _provenance(args, argv, seed) -> dict:
    inputs = {}
    for attr in ("input", "op"):
        path = getattr(args, attr, None)
        if path and os.path.exists(path):
            inputs[path] = "sha256:" + _digest(path)
    return {"command": "rbwb " + " ".join(argv), "inputs": inputs, "seed": seed,
            "version": __version__}


def _seed(args) -> int:
    env = os.environ.get("RBWB_SEED")
    if env is not None:
        try:
            return int(env)
        except ValueError:
            raise UsageError(f"RBWB_SEED must be an integer, got {env!r}") from None
    return args.seed


def _parse_params(text: str | None) -> dict:
    out = {}
    if not text:
        return out
    for chunk in text.split(","):
        if "=" not in chunk:
            raise ParseError(f"parameter {chunk.strip()!r} is not of the form name=value")
        k, v = (s.strip() for s in chunk.split("=", 1))
        out[k] = v
    return out


def _parse_group_map(G: GroupTable, text: str) -> list:
    mapping = {}
    for chunk in text.split(","):
        if "->" not in chunk:
            raise ParseError(f"map entry {chunk.strip()!r} is not of the form g->h")
        a, b = (s.strip() for s in chunk.split("->", 1))
        for lab in (a, b):
            if lab not in G.labels:
                raise ParseError(f"unknown group element {lab!r}")
        mapping[a] = b
    missing = [g for g in G.labels if g not in mapping]
    if missing:
        raise ParseError(f"map leaves {missing} undefined")
    return [G.labels.index(mapping[g]) for g in G.labels]


# -- commands -----------------------------------------------------------------

def cmd_verify(args, ctx) -> Report:
    target = _resolve_target(args, ctx)
    suites = [s.strip() for s in args.checks.split(",")] if args.checks else None
    known = {"algebra", "hopf", "group"}
    if suites and set(suites) - known:
        raise UnknownCheck(f"unknown check suite(s) {sorted(set(suites) - known)}; choose from {sorted(known)}")
    if isinstance(target, GroupTable):
        rep = Report(f"verify {target.name}")
        if suites is None or "group" in suites:
            rep.extend(target.validate(), "group: ")
        if suites is None or "hopf" in suites or "algebra" in suites:
            H = group_hopf(target, ctx)
            sub = check_hopf_axioms(H)
            if suites and "hopf" not in suites:
                sub.checks = [c for c in sub.checks if c.name == "algebra"]
            rep.extend(sub, f"k[{target.name}] over {ctx.name}: ")
        return rep
    if isinstance(target, HopfSpec):
        if suites and "group" in suites:
            raise UnknownCheck("group axioms do not apply to a Hopf algebra")
        rep = check_hopf_axioms(target)
        if suites and "hopf" not in suites:
            rep.checks = [c for c in rep.checks if c.name == "algebra"]
        return rep
    if suites and set(suites) - {"algebra"}:
        raise UnknownCheck("only the algebra suite applies to a bare algebra")
    return check_associativity_and_unit(target)


def _candidates(args, ctx, alg, seed):
    """(description, RBCandidate) pairs from --op, --matrix or --family."""
    if args.op:
        obj = from_document(load(args.op))
        if isinstance(obj, GroupRB):
            raise FlavorMismatch("a group operator needs --flavor group or ga")
        if not isinstance(obj, RBCandidate):
            raise UsageError(f"{args.op} is not an operator document")
        return [("operator", obj)]
    if args.family:
        fam = get_family(args.family)
        params = _parse_params(args.param)
        if args.samples:
            pts = sample_parameters(fam, ctx, args.samples, seed)
            specs = [FamilySpec(fam.id, {**pts_i, **params}, ctx) for pts_i in pts]
        else:
            specs = [FamilySpec(fam.id, params, ctx)]
        out = []
        for s in specs:
            desc = ",".join(f"{k}={v}" for k, v in s.params.items()) or "-"
            out.append((f"{fam.id}[{desc}]", family_instantiate(s)))
        return out
    if args.matrix:
        cols = [c.strip() for c in args.matrix.split(";")]
        if len(cols) != alg.dim:
            raise ParseError(f"--matrix needs {alg.dim} ';'-separated columns")
        w = ctx(args.weight) if args.weight is not None else None
        return [("matrix", RBCandidate(Mat.from_columns(ctx, [alg.element(c) for c in cols]), w))]
    raise UsageError("check-rb needs --op, --family or --matrix")


def cmd_check_rb(args, ctx, seed) -> Report:
    flavor = args.flavor
    if flavor not in FLAVORS:
        raise FlavorMismatch(f"unknown flavor {flavor!r}")
    target = _resolve_target(args, ctx)
    if flavor in ("group", "ga"):
        return _check_group_flavor(args, ctx, target)
    if isinstance(target, GroupTable):
        raise FlavorMismatch(f"flavor {flavor} needs a linear target, got group {target.name}")
    alg = target.alg if isinstance(target, HopfSpec) else target
    cands = _candidates(args, ctx, alg, seed)
    if flavor in ("chrb", "nchrb", "coalghom") and not isinstance(target, HopfSpec):
        raise FlavorMismatch(f"flavor {flavor} needs a Hopf algebra")
    rep = Report(f"check-rb {flavor} on {alg.name or 'input'} over {ctx.name}")
    for desc, cand in cands:
        if cand.op.shape != (alg.dim, alg.dim):
            raise FlavorMismatch(f"operator is {cand.op.shape}, target has dimension {alg.dim}")
        if cand.ctx != ctx:
            raise FlavorMismatch(f"operator lives over {cand.ctx.name}, target over {ctx.name}")
        if flavor in ("assoc", "lie", "jordan"):
            w = ctx(args.weight) if args.weight is not None else cand.weight
            if w is None:
                raise ConstraintViolated(f"{desc}: flavor {flavor} needs --weight")
            A = {"assoc": alg, "lie": minus_algebra(alg), "jordan": plus_algebra(alg)}[flavor]
            ok, bad = check_algebra_rb(A, cand.with_weight(w))
            rep.add(f"{desc} weight {w}", ok, bad or None,
                    "all pairs" if ok else f"{len(bad)} failing pairs")
        elif flavor == "chrb":
            ok, bad = check_chrb(target, cand.op)
            rep.add(desc, ok, bad or None, "all pairs" if ok else f"{len(bad)} failing pairs")
        elif flavor == "nchrb":
            rep.extend(nchrb_check(target, cand.op), f"{desc} ")
        else:
            ok, w = is_coalgebra_hom(target, cand.op)
            rep.add(f"{desc} coalgebra homomorphism", ok, w)
    return rep


def _check_group_flavor(args, ctx, target) -> Report:
    if not isinstance(target, GroupTable):
        raise FlavorMismatch(f"flavor {args.flavor} needs a group target")
    G = target
    if args.op:
        B = from_document(load(args.op))
        if not isinstance(B, GroupRB):
            raise FlavorMismatch("flavor group/ga needs a group operator document")
    elif args.map:
        w = int(args.weight) if args.weight is not None else 1
        B = GroupRB(G, _parse_group_map(G, args.map), w)
    else:
        raise UsageError("group flavors need --op or --map")
    rep = Report(f"check-rb {args.flavor} on {G.name}")
    ok, pair = check_group_rb(B)
    rep.add(f"group RB identity, weight {B.weight}", ok, None if ok else {"pair": pair})
    if args.flavor == "group":
        if ok:
            _, drep = derived_group(B)
            rep.extend(drep, "derived: ")
            try:
                image_kernel(B)
                rep.add("image and kernel are subgroups", True)
            except RBWBError as e:
                rep.add("image and kernel are subgroups", False, str(e))
        return rep
    lam = ctx(args.weight_ga) if args.weight_ga is not None else ctx(-1)
    ok, w = check_ga_rb(B, ctx, lam)
    rep.add(f"group-algebra RB identity over {ctx.name}, weight {lam}", ok, w)
    if ok:
        rep.extend(check_ga_structure(B), "structure: ")
    return rep


def cmd_enumerate(args, ctx, seed):
    pred = args.predicate
    if pred not in PREDICATES:
        raise FlavorMismatch(f"unknown predicate {pred!r}; choose from {sorted(PREDICATES)}")
    target = _resolve_target(args, ctx)
    if pred in ("group-rb", "ga-rb"):
        return _enumerate_group(args, ctx, target), None
    if isinstance(target, GroupTable):
        raise FlavorMismatch(f"predicate {pred} needs a linear target")
    alg = target.alg if isinstance(target, HopfSpec) else target
    pins = parse_pins(alg, args.pin or "")
    S = SearchSpace(target, ctx, pins, PREDICATES[pred], args.weight)
    result = enumerate_space(S, jobs=args.jobs)
    rep = Report(f"enumerate {pred} on {alg.name or 'input'} over {ctx.name}")
    rep.add("search", True, None,
            f"{result.count} operators in {result.scanned} candidates, {result.partitions} partitions")
    rep.add("re-verified by standalone checker", True, None, f"{result.count} operators")
    diff = None
    if args.diff_family:
        fams = [f.strip() for f in args.diff_family.split(",")]
        diff = diff_against_family(result.candidates, fams, ctx)
        rep.extend(diff.to_report(alg.labels), "diff: ")
    if args.list:
        for c in result.candidates:
            print("  " + ", ".join(f"{k} -> {v}" for k, v in c.describe(alg.labels).items()))
    return rep, search_document(result, alg.labels, diff)


def _enumerate_group(args, ctx, G) -> Report:
    if not isinstance(G, GroupTable):
        raise FlavorMismatch(f"predicate {args.predicate} needs a group target")
    w = int(args.weight) if args.weight is not None else 1
    ops = enumerate_group_rb(G, w)
    rep = Report(f"enumerate {args.predicate} on {G.name}")
    if args.predicate == "group-rb":
        rep.add("search", True, None, f"{len(ops)} operators of weight {w}")
        listing = ops
    else:
        lam = ctx(-1) if args.weight_ga is None else ctx(args.weight_ga)
        listing = [B for B in ops if check_ga_rb(B, ctx, lam)[0]]
        rep.add("search", True, None, f"{len(listing)} group-algebra RB operators of weight {lam} over {ctx.name}")
        for B in listing:
            s = check_ga_structure(B)
            rep.add(f"structure {B.describe()}", s.passed, None if s.passed else [c.to_dict() for c in s.failures()])
    if args.list:
        for B in listing:
            print("  " + ", ".join(f"{k} -> {v}" for k, v in B.describe().items()))
    return rep


def cmd_catalog(args) -> Report:
    rep = Report("operator families")
    rows = [fam.summary() for fam in FAMILIES.values()]
    rep.add("catalog", True, None, f"{len(rows)} families")
    rep.provenance["families"] = rows
    return rep


def render_catalog(rows) -> str:
    head = ("id", "kind", "params", "char", "weight", "constraints")
    body = [(r["id"], r["kind"], ",".join(r["params"]) or "-", r["characteristic"], r["weight"],
             "; ".join(r["constraints"]) or "-") for r in rows]
    widths = [max(len(str(x[i])) for x in [head, *body]) for i in range(len(head))]
    fmt = lambda row: "  ".join(str(v).ljust(w) for v, w in zip(row, widths)).rstrip()
    return "\n".join([fmt(head), *(fmt(r) for r in body)])


def cmd_hom_check(args, ctx) -> Report:
    q = ctx(args.q)
    P = uq_sl2(ctx, q)
    H = builtin_h4(ctx)
    images = {}
    for chunk in args.images.split(","):
        if "->" not in chunk:
            raise ParseError(f"image {chunk.strip()!r} is not of the form generator->element")
        a, b = (s.strip() for s in chunk.split("->", 1))
        images[a] = b
    rep = check_presented_hom(P, H, images)
    rep.title = f"U_q(sl2) -> H4 over {ctx.name}, q = {q}"
    return rep


# -- entry point --------------------------------------------------------------

def build_parser() -> argparse.ArgumentParser:
    ap = argparse.ArgumentParser(prog="rbwb", description="Exact checks and searches for Rota-Baxter operators.")
    ap.add_argument("--version", action="version", version=f"rbwb {__version__}")
    sub = ap.add_subparsers(dest="command", required=True)

    def common(p, target=True):
        p.add_argument("--field", default="q", help="q or gfP (default q)")
        p.add_argument("--seed", type=int, default=DEFAULT_SEED, help="sampling seed (RBWB_SEED overrides)")
        p.add_argument("--out", help="write the machine-readable report document here")
        p.add_argument("--json", action="store_true", help="print the report document instead of the table")
        if target:
            p.add_argument("--builtin", help="h4, group:NAME or kgroup:NAME")
            p.add_argument("--input", help="algebra, hopf or group document")

    p = sub.add_parser("verify", help="run axiom suites")
    common(p)
    p.add_argument("--checks", help="comma list of algebra, hopf, group")

    p = sub.add_parser("check-rb", help="check one operator or a family")
    common(p)
    p.add_argument("--flavor", required=True, help="|".join(FLAVORS))
    p.add_argument("--op", help="operator document")
    p.add_argument("--family", help="catalog family id")
    p.add_argument("--param", help="name=value,... for --family")
    p.add_argument("--samples", type=int, help="check this many seeded parameter samples")
    p.add_argument("--matrix", help="images of the basis, ';'-separated, e.g. '1;g;1-g;1-g'")
    p.add_argument("--map", help="group operator as g->h,...")
    p.add_argument("--weight", help="weight for assoc/lie/jordan, or +-1 for group maps")
    p.add_argument("--ga-weight", dest="weight_ga", help="group-algebra weight for flavor ga (default -1)")

    p = sub.add_parser("enumerate", help="exhaustive search over a finite field")
    common(p)
    p.add_argument("--pin", help="fixed columns as label->element,...")
    p.add_argument("--predicate", required=True, help="|".join(PREDICATES))
    p.add_argument("--weight", help="weight for algebra/lie/jordan predicates or group maps")
    p.add_argument("--ga-weight", dest="weight_ga", help="group-algebra weight for ga-rb (default -1)")
    p.add_argument("--diff-family", help="comma list of family ids to compare against")
    p.add_argument("--jobs", type=int, default=1)
    p.add_argument("--list", action="store_true", help="print every operator found")

    p = sub.add_parser("catalog", help="list operator families and their constraints")
    common(p, target=False)

    p = sub.add_parser("hom-check", help="check a map U_q(sl2) -> H4 on generators")
    common(p, target=False)
    p.add_argument("--q", default="2")
    p.add_argument("--images", default="K->g,E->gx,F->x,Kinv->g")
    return ap


def main(argv=None) -> int:
    argv = list(sys.argv[1:] if argv is None else argv)
    ap = build_parser()
    try:
        args = ap.parse_args(argv)
    except SystemExit as e:
        return EXIT_USAGE if e.code else EXIT_PASS
    t0 = time.perf_counter()
    doc = None
    try:
        seed = _seed(args)
        ctx = FieldCtx.parse(args.field) if args.field else QQ
        if args.command == "verify":
            rep = cmd_verify(args, ctx)
        elif args.command == "check-rb":
            rep = cmd_check_rb(args, ctx, seed)
        elif args.command == "enumerate":
            rep, doc = cmd_enumerate(args, ctx, seed)
        elif args.command == "catalog":
            rep = cmd_catalog(args)
        else:
            rep = cmd_hom_check(args, ctx)
    except (RBWBError, KeyError, ValueError, OSError) as e:
        msg = e.args[0] if isinstance(e, KeyError) and e.args else e
        print(f"rbwb: error: {msg}", file=sys.stderr)
        return EXIT_USAGE
    rep.timing = time.perf_counter() - t0
    rep.provenance.update(_provenance(args, argv, seed))
    rdoc = to_document(rep)
    if args.out:
        if doc is not None:
            doc.body["report"] = rdoc.body
            dump(doc, args.out)
        else:
            dump(rdoc, args.out)
    if args.json:
        sys.stdout.write(emit(doc if doc is not None else rdoc))
    elif args.command == "catalog":
        print(render_catalog(rep.provenance["families"]))
    else:
        print(rep.render_table())
    return EXIT_PASS if rep.passed else EXIT_FAIL


if __name__ == "__main__":
    sys.exit(main())
