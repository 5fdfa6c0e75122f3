"""Natural-deduction judgement checking for labelled proof terms.

Bidirectional discipline: constructors check against a goal formula,
hypotheses and destructors infer.  ``check`` returns a full derivation
tree whose rule labels follow the usual introduction/elimination names.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    And, App, Atom, BHyp, Bottom, BPath, BVar, Case, Const, Context, Eps,
    Exists, Extr, Fn, ForAll, Formula, Fst, Gen, Hyp, Id, IdIntro, Implies,
    Inl, Inr, Inst, Lam, Or, Pair, Path, PathError, PathHyp, PathRef,
    ProofTerm, Rewr, Signature, Snd, SortError, Var, alpha_eq, apply_step,
    close_dvar_formula, formula_free_vars, fresh_name, free_names,
    instantiate_dvar_formula, instantiate_dvar_proof, instantiate_hyp,
    open_hyp, open_path, sort_of_term, term_ground,
)


class TypeCheckError(Exception):
    """Judgement failure; ``kind`` is one of a small closed set and
    ``location`` addresses the offending subterm by child indices."""

    KINDS = (
        "unknown hypothesis",
        "constructor/formula mismatch",
        "destructor on non-matching type",
        "sort error",
        "invalid path",
        "variable escapes scope",
        "cannot infer",
    )

    def __init__(self, kind, location, message):
        assert kind in self.KINDS
        self.kind = kind
        self.location = tuple(location)
        self.message = message
        super().__init__(f"{kind} at {list(location)}: {message}")


class CannotInfer(TypeCheckError):
    def __init__(self, location, message):
        super().__init__("cannot infer", location, message)


@dataclass(frozen=True)
class Derivation:
    rule: str
    context: Context
    term: ProofTerm
    formula: Formula
    premises: tuple = ()
    discharged: tuple = ()


def check_path(sig: Signature, path: Path, u, v) -> bool:
    """Do the chained steps rewrite ``u`` into ``v`` under the signature's
    equations?  Endpoints must be ground and well-sorted."""
    if not (term_ground(u) and term_ground(v)):
        raise PathError("path endpoints must be ground")
    su, sv = sort_of_term(sig, u), sort_of_term(sig, v)
    if su != sv:
        raise SortError(f"path endpoints have sorts {su} vs {sv}")
    current = u
    for step in path.steps:
        nxt = apply_step(sig, current, step)
        if nxt is None:
            return False
        current = nxt
    return current == v


def _ctx_sort_of(ctx: Context, t, pos) -> str:
    match t:
        case Var(name, sort):
            declared = ctx.var_sort(name)
            if declared is None:
                raise TypeCheckError("sort error", pos, f"undeclared variable {name}")
            if declared != sort:
                raise TypeCheckError(
                    "sort error", pos, f"variable {name} declared {declared}, used {sort}"
                )
            return sort
        case BVar(i):
            raise TypeCheckError("sort error", pos, f"dangling bound variable {i}")
        case Const() | Fn():
            try:
                if isinstance(t, Fn):
                    for a in t.args:
                        _ctx_sort_of(ctx, a, pos)
                return sort_of_term(ctx.sig, t)
            except SortError as e:
                raise TypeCheckError("sort error", pos, str(e))
    raise TypeCheckError("sort error", pos, f"not a domain term: {t!r}")


def _goal_well_sorted(ctx: Context, goal: Formula, pos=()):
    for name in formula_free_vars(goal):
        if ctx.var_sort(name) is None:
            raise TypeCheckError("sort error", pos, f"goal uses undeclared variable {name}")
    try:
        from .syntax import formula_well_sorted

        formula_well_sorted(ctx.sig, goal)
    except SortError as e:
        raise TypeCheckError("sort error", pos, str(e))


def _fresh(ctx: Context, hint: str, *terms) -> str:
    avoid = set(ctx.all_names())
    for t in terms:
        if t is None:
            continue
        hs, ds = free_names(t)
        avoid |= hs | ds
    return fresh_name(hint or "x", avoid)


def _id_intro(ctx: Context, term: IdIntro, pos) -> Formula:
    ls = _ctx_sort_of(ctx, term.left, pos)
    rs = _ctx_sort_of(ctx, term.right, pos)
    if ls != rs:
        raise TypeCheckError("sort error", pos, f"identity endpoints of sorts {ls} vs {rs}")
    p = term.path
    match p:
        case PathRef(name):
            ph = ctx.path_hyp(name)
            if ph is None:
                raise TypeCheckError("unknown hypothesis", pos, f"unknown reason {name}")
            if ph.sort != ls or ph.left != term.left or ph.right != term.right:
                raise TypeCheckError(
                    "invalid path", pos, f"reason {name} has different endpoints"
                )
        case Path():
            if not (term_ground(term.left) and term_ground(term.right)):
                raise TypeCheckError(
                    "invalid path", pos, "a concrete path needs ground endpoints"
                )
            try:
                ok = check_path(ctx.sig, p, term.left, term.right)
            except (PathError, SortError) as e:
                raise TypeCheckError("invalid path", pos, str(e))
            if not ok:
                raise TypeCheckError("invalid path", pos, "path does not join the endpoints")
        case BPath(i):
            raise TypeCheckError("invalid path", pos, f"dangling path variable {i}")
        case _:
            raise TypeCheckError("invalid path", pos, f"not a path: {p!r}")
    return Id(ls, term.left, term.right)


def infer(ctx: Context, term: ProofTerm) -> Formula:
    """Unique formula the term proves, for hypotheses, destructor
    applications, and annotated constructors.  Agrees with ``check``."""
    return _infer(ctx, term, ()).formula


def _infer(ctx: Context, term: ProofTerm, pos) -> Derivation:
    match term:
        case Hyp(name):
            f = ctx.hyp(name)
            if f is None:
                raise TypeCheckError("unknown hypothesis", pos, name)
            return Derivation("hyp", ctx, term, f)
        case BHyp(i):
            raise TypeCheckError("unknown hypothesis", pos, f"dangling proof variable {i}")
        case Fst(p):
            pd = _infer(ctx, p, pos + (0,))
            match pd.formula:
                case And(a, _):
                    return Derivation("∧-elim-l", ctx, term, a, (pd,))
            raise TypeCheckError(
                "destructor on non-matching type", pos, "FST needs a conjunction"
            )
        case Snd(p):
            pd = _infer(ctx, p, pos + (0,))
            match pd.formula:
                case And(_, b):
                    return Derivation("∧-elim-r", ctx, term, b, (pd,))
            raise TypeCheckError(
                "destructor on non-matching type", pos, "SND needs a conjunction"
            )
        case App(f, a):
            fd = _infer(ctx, f, pos + (0,))
            match fd.formula:
                case Implies(x, y):
                    ad = check(ctx, a, x, pos + (1,))
                    return Derivation("→-elim", ctx, term, y, (fd, ad))
            raise TypeCheckError(
                "destructor on non-matching type", pos, "APP needs an implication"
            )
        case Extr(p, s):
            pd = _infer(ctx, p, pos + (0,))
            match pd.formula:
                case ForAll(_, srt, fb):
                    got = _ctx_sort_of(ctx, s, pos)
                    if got != srt:
                        raise TypeCheckError(
                            "sort error", pos, f"instance of sort {got}, expected {srt}"
                        )
                    return Derivation(
                        "∀-elim", ctx, term, instantiate_dvar_formula(fb, s), (pd,)
                    )
            raise TypeCheckError(
                "destructor on non-matching type", pos, "EXTR needs a universal"
            )
        case Case(s, lh, lb, rh, rb):
            sd = _infer(ctx, s, pos + (0,))
            match sd.formula:
                case Or(a, b):
                    ln = _fresh(ctx, lh, lb)
                    ld = _infer(ctx.with_hyp(ln, a), open_hyp(lb, ln), pos + (1,))
                    rn = _fresh(ctx, rh, rb)
                    rd = _infer(ctx.with_hyp(rn, b), open_hyp(rb, rn), pos + (2,))
                    if not alpha_eq(ld.formula, rd.formula):
                        raise TypeCheckError(
                            "constructor/formula mismatch", pos, "branches disagree"
                        )
                    return Derivation(
                        "∨-elim", ctx, term, ld.formula, (sd, ld, rd), (ln, rn)
                    )
            raise TypeCheckError(
                "destructor on non-matching type", pos, "CASE needs a disjunction"
            )
        case Inst(s, gh, th, b):
            sd = _infer(ctx, s, pos + (0,))
            match sd.formula:
                case Exists(_, srt, fb):
                    tn = _fresh(ctx, th, b)
                    gn = fresh_name(gh or "g", set(ctx.all_names()) | {tn} | free_names(b)[0])
                    tv = Var(tn, srt)
                    ctx2 = ctx.with_domain_var(tn, srt).with_hyp(
                        gn, instantiate_dvar_formula(fb, tv)
                    )
                    opened = instantiate_dvar_proof(instantiate_hyp(b, Hyp(gn)), tv)
                    bd = _infer(ctx2, opened, pos + (1,))
                    if tn in formula_free_vars(bd.formula):
                        raise TypeCheckError(
                            "variable escapes scope",
                            pos,
                            f"witness variable {th} occurs in the inferred formula",
                        )
                    return Derivation("∃-elim", ctx, term, bd.formula, (sd, bd), (gn, tn))
            raise TypeCheckError(
                "destructor on non-matching type", pos, "INST needs an existential"
            )
        case Rewr(s, h, b):
            sd = _infer(ctx, s, pos + (0,))
            match sd.formula:
                case Id(srt, u, v):
                    pn = _fresh(ctx, h, b)
                    ctx2 = ctx.with_path_hyp(pn, PathHyp(srt, u, v))
                    bd = _infer(ctx2, open_path(b, pn), pos + (1,))
                    return Derivation("Id-elim", ctx, term, bd.formula, (sd, bd), (pn,))
            raise TypeCheckError(
                "destructor on non-matching type", pos, "REWR needs an identity"
            )
        case Pair(l, r):
            ld = _infer(ctx, l, pos + (0,))
            rd = _infer(ctx, r, pos + (1,))
            return Derivation("∧-intr", ctx, term, And(ld.formula, rd.formula), (ld, rd))
        case Inl(a, ann):
            if ann is None:
                raise CannotInfer(pos, "inl without the absent-disjunct annotation")
            ad = _infer(ctx, a, pos + (0,))
            return Derivation("∨-intr-l", ctx, term, Or(ad.formula, ann), (ad,))
        case Inr(a, ann):
            if ann is None:
                raise CannotInfer(pos, "inr without the absent-disjunct annotation")
            ad = _infer(ctx, a, pos + (0,))
            return Derivation("∨-intr-r", ctx, term, Or(ann, ad.formula), (ad,))
        case Gen(h, srt, b):
            if srt not in ctx.sig.sorts:
                raise TypeCheckError("sort error", pos, f"unknown sort {srt!r}")
            n = _fresh(ctx, h, b)
            v = Var(n, srt)
            bd = _infer(ctx.with_domain_var(n, srt), instantiate_dvar_proof(b, v), pos + (0,))
            body = close_dvar_formula(bd.formula, n)
            return Derivation("∀-intr", ctx, term, ForAll(h, srt, body), (bd,), (n,))
        case IdIntro():
            f = _id_intro(ctx, term, pos)
            return Derivation("Id-intr", ctx, term, f)
        case Lam():
            raise CannotInfer(pos, "a lambda needs a goal")
        case Eps():
            raise CannotInfer(pos, "a witness pair needs a goal")
    raise TypeCheckError("constructor/formula mismatch", pos, f"not a proof term: {term!r}")


def check(ctx: Context, term: ProofTerm, goal: Formula, pos=()) -> Derivation:
    """Derivation concluding ``ctx ⊢ term : goal``; deterministic."""
    if pos == ():
        _goal_well_sorted(ctx, goal)
    match term:
        case Lam(h, b):
            match goal:
                case Implies(a, c):
                    n = _fresh(ctx, h, b)
                    d = check(ctx.with_hyp(n, a), open_hyp(b, n), c, pos + (0,))
                    return Derivation("→-intr", ctx, term, goal, (d,), (n,))
            raise TypeCheckError(
                "constructor/formula mismatch", pos, "lambda against a non-implication"
            )
        case Pair(l, r):
            match goal:
                case And(a, b):
                    ld = check(ctx, l, a, pos + (0,))
                    rd = check(ctx, r, b, pos + (1,))
                    return Derivation("∧-intr", ctx, term, goal, (ld, rd))
            raise TypeCheckError(
                "constructor/formula mismatch", pos, "pair against a non-conjunction"
            )
        case Inl(a, ann):
            match goal:
                case Or(la, ra):
                    if ann is not None and not alpha_eq(ann, ra):
                        raise TypeCheckError(
                            "constructor/formula mismatch", pos,
                            "inl annotation disagrees with the goal",
                        )
                    d = check(ctx, a, la, pos + (0,))
                    return Derivation("∨-intr-l", ctx, term, goal, (d,))
            raise TypeCheckError(
                "constructor/formula mismatch", pos, "inl against a non-disjunction"
            )
        case Inr(a, ann):
            match goal:
                case Or(la, ra):
                    if ann is not None and not alpha_eq(ann, la):
                        raise TypeCheckError(
                            "constructor/formula mismatch", pos,
                            "inr annotation disagrees with the goal",
                        )
                    d = check(ctx, a, ra, pos + (0,))
                    return Derivation("∨-intr-r", ctx, term, goal, (d,))
            raise TypeCheckError(
                "constructor/formula mismatch", pos, "inr against a non-disjunction"
            )
        case Gen(h, srt, b):
            match goal:
                case ForAll(_, s2, fb):
                    if srt != s2:
                        raise TypeCheckError(
                            "sort error", pos, f"binder sort {srt}, goal wants {s2}"
                        )
                    n = _fresh(ctx, h, b)
                    v = Var(n, s2)
                    d = check(
                        ctx.with_domain_var(n, s2),
                        instantiate_dvar_proof(b, v),
                        instantiate_dvar_formula(fb, v),
                        pos + (0,),
                    )
                    return Derivation("∀-intr", ctx, term, goal, (d,), (n,))
            raise TypeCheckError(
                "constructor/formula mismatch", pos, "generalization against a non-universal"
            )
        case Eps(h, b, w):
            match goal:
                case Exists(_, s2, fb):
                    got = _ctx_sort_of(ctx, w, pos)
                    if got != s2:
                        raise TypeCheckError(
                            "sort error", pos, f"witness of sort {got}, expected {s2}"
                        )
                    d = check(
                        ctx,
                        instantiate_dvar_proof(b, w),
                        instantiate_dvar_formula(fb, w),
                        pos + (0,),
                    )
                    return Derivation("∃-intr", ctx, term, goal, (d,))
            raise TypeCheckError(
                "constructor/formula mismatch", pos, "witness pair against a non-existential"
            )
        case IdIntro():
            f = _id_intro(ctx, term, pos)
            if not alpha_eq(f, goal):
                raise TypeCheckError(
                    "constructor/formula mismatch", pos, "identity term proves a different equation"
                )
            return Derivation("Id-intr", ctx, term, goal)
        case Case(s, lh, lb, rh, rb):
            sd = _infer(ctx, s, pos + (0,))
            match sd.formula:
                case Or(a, b):
                    ln = _fresh(ctx, lh, lb)
                    ld = check(ctx.with_hyp(ln, a), open_hyp(lb, ln), goal, pos + (1,))
                    rn = _fresh(ctx, rh, rb)
                    rd = check(ctx.with_hyp(rn, b), open_hyp(rb, rn), goal, pos + (2,))
                    return Derivation("∨-elim", ctx, term, goal, (sd, ld, rd), (ln, rn))
            raise TypeCheckError(
                "destructor on non-matching type", pos, "CASE needs a disjunction"
            )
        case Inst(s, gh, th, b):
            sd = _infer(ctx, s, pos + (0,))
            match sd.formula:
                case Exists(_, srt, fb):
                    tn = _fresh(ctx, th, b)
                    gn = fresh_name(gh or "g", set(ctx.all_names()) | {tn} | free_names(b)[0])
                    tv = Var(tn, srt)
                    ctx2 = ctx.with_domain_var(tn, srt).with_hyp(
                        gn, instantiate_dvar_formula(fb, tv)
                    )
                    opened = instantiate_dvar_proof(instantiate_hyp(b, Hyp(gn)), tv)
                    bd = check(ctx2, opened, goal, pos + (1,))
                    return Derivation("∃-elim", ctx, term, goal, (sd, bd), (gn, tn))
            raise TypeCheckError(
                "destructor on non-matching type", pos, "INST needs an existential"
            )
        case Rewr(s, h, b):
            sd = _infer(ctx, s, pos + (0,))
            match sd.formula:
                case Id(srt, u, v):
                    pn = _fresh(ctx, h, b)
                    ctx2 = ctx.with_path_hyp(pn, PathHyp(srt, u, v))
                    bd = check(ctx2, open_path(b, pn), goal, pos + (1,))
                    return Derivation("Id-elim", ctx, term, goal, (sd, bd), (pn,))
            raise TypeCheckError(
                "destructor on non-matching type", pos, "REWR needs an identity"
            )
        case App(f, a):
            try:
                d = _infer(ctx, term, pos)
            except CannotInfer:
                # Redex form: the function is a constructor, so type the
                # argument first and push the implication inward.
                ad = _infer(ctx, a, pos + (1,))
                fd = check(ctx, f, Implies(ad.formula, goal), pos + (0,))
                return Derivation("→-elim", ctx, term, goal, (fd, ad))
            return _conclude(ctx, term, goal, d, pos)
        case Fst(p):
            try:
                d = _infer(ctx, term, pos)
            except CannotInfer:
                match p:
                    case Pair(_, r):
                        rd = _infer(ctx, r, pos + (0, 1))
                        pd = check(ctx, p, And(goal, rd.formula), pos + (0,))
                        return Derivation("∧-elim-l", ctx, term, goal, (pd,))
                raise
            return _conclude(ctx, term, goal, d, pos)
        case Snd(p):
            try:
                d = _infer(ctx, term, pos)
            except CannotInfer:
                match p:
                    case Pair(l, _):
                        ld = _infer(ctx, l, pos + (0, 0))
                        pd = check(ctx, p, And(ld.formula, goal), pos + (0,))
                        return Derivation("∧-elim-r", ctx, term, goal, (pd,))
                raise
            return _conclude(ctx, term, goal, d, pos)
        case _:
            d = _infer(ctx, term, pos)
            return _conclude(ctx, term, goal, d, pos)


def _conclude(ctx, term, goal, d: Derivation, pos) -> Derivation:
    if not alpha_eq(d.formula, goal):
        raise TypeCheckError(
            "constructor/formula mismatch",
            pos,
            f"term proves a different formula than the goal",
        )
    return Derivation(d.rule, ctx, term, goal, d.premises, d.discharged)
