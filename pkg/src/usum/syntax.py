"""Core syntax: sorted signatures, first-order formulas, labelled proof
terms, and ground rewrite paths.

Binding is locally nameless: bound variables are de Bruijn indices (a
separate index space each for proof, domain, and path binders), free
variables are names.  Binder name hints are kept for printing only and are
excluded from comparison, so ``==`` on any syntax value is exactly
alpha-equivalence.  All values are immutable and safe to share.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Iterable, Optional, Union


class SyntaxError_(Exception):
    """Ill-formed syntax value (bad sorts, duplicate names, broken path)."""


class SortError(SyntaxError_):
    pass


class PathError(SyntaxError_):
    """Structurally ill-formed rewrite path or step instantiation."""


# ---------------------------------------------------------------------------
# Signatures


@dataclass(frozen=True)
class Axiom:
    """Equational axiom ``left = right`` between domain terms.

    Free variables of the right side must occur in the left side and both
    sides share one sort.
    """

    name: str
    left: "DomainTerm"
    right: "DomainTerm"


@dataclass(frozen=True, eq=False)
class Signature:
    sorts: tuple
    constants: dict  # name -> sort
    functions: dict  # name -> (arg sorts tuple, result sort)
    predicates: dict  # name -> arg sorts tuple
    axioms: tuple = ()

    def __post_init__(self):
        if not self.sorts:
            raise SyntaxError_("signature needs at least one sort")
        seen = set()
        for space in (self.constants, self.functions, self.predicates):
            for name in space:
                if name in seen:
                    raise SyntaxError_(f"duplicate signature name: {name}")
                seen.add(name)
        for name, sort in self.constants.items():
            self._check_sort(sort, name)
        for name, (args, res) in self.functions.items():
            for s in args:
                self._check_sort(s, name)
            self._check_sort(res, name)
        for name, args in self.predicates.items():
            for s in args:
                self._check_sort(s, name)
        ax_names = set()
        for ax in self.axioms:
            if ax.name in ax_names:
                raise SyntaxError_(f"duplicate axiom name: {ax.name}")
            ax_names.add(ax.name)
            ls = sort_of_term(self, ax.left)
            rs = sort_of_term(self, ax.right)
            if ls != rs:
                raise SortError(f"axiom {ax.name}: sides have sorts {ls} vs {rs}")
            if not term_vars(ax.right) <= term_vars(ax.left):
                raise SyntaxError_(
                    f"axiom {ax.name}: right side has variables not on the left"
                )

    def _check_sort(self, sort, where):
        if sort not in self.sorts:
            raise SortError(f"unknown sort {sort!r} in {where}")

    def axiom(self, name):
        for ax in self.axioms:
            if ax.name == name:
                return ax
        raise PathError(f"unknown axiom: {name}")


# ---------------------------------------------------------------------------
# Domain terms


@dataclass(frozen=True)
class Var:
    """Free domain variable."""

    name: str
    sort: str


@dataclass(frozen=True)
class BVar:
    """Bound domain variable (index counts enclosing domain binders)."""

    index: int


@dataclass(frozen=True)
class Const:
    name: str


@dataclass(frozen=True)
class Fn:
    name: str
    args: tuple


DomainTerm = Union[Var, BVar, Const, Fn]


def sort_of_term(sig: Signature, t: DomainTerm) -> str:
    """Sort of a locally closed domain term; raises SortError if ill-sorted."""
    match t:
        case Var(_, sort):
            if sort not in sig.sorts:
                raise SortError(f"unknown sort {sort!r}")
            return sort
        case BVar(i):
            raise SortError(f"dangling bound variable (index {i})")
        case Const(name):
            if name not in sig.constants:
                raise SortError(f"unknown constant: {name}")
            return sig.constants[name]
        case Fn(name, args):
            if name not in sig.functions:
                raise SortError(f"unknown function: {name}")
            arg_sorts, result = sig.functions[name]
            if len(args) != len(arg_sorts):
                raise SortError(f"{name} expects {len(arg_sorts)} arguments")
            for a, expected in zip(args, arg_sorts):
                got = sort_of_term(sig, a)
                if got != expected:
                    raise SortError(f"{name}: argument sort {got}, expected {expected}")
            return result
    raise SortError(f"not a domain term: {t!r}")


def term_vars(t: DomainTerm) -> frozenset:
    match t:
        case Var(name, _):
            return frozenset([name])
        case Fn(_, args):
            out = frozenset()
            for a in args:
                out |= term_vars(a)
            return out
    return frozenset()


def term_ground(t: DomainTerm) -> bool:
    match t:
        case Var() | BVar():
            return False
        case Fn(_, args):
            return all(term_ground(a) for a in args)
    return True


def subterm_at(t: DomainTerm, pos: tuple) -> DomainTerm:
    for i in pos:
        match t:
            case Fn(_, args) if i < len(args):
                t = args[i]
            case _:
                raise PathError(f"no subterm at position {pos}")
    return t


def replace_at(t: DomainTerm, pos: tuple, new: DomainTerm) -> DomainTerm:
    if not pos:
        return new
    match t:
        case Fn(name, args) if pos[0] < len(args):
            i = pos[0]
            return Fn(
                name,
                args[:i] + (replace_at(args[i], pos[1:], new),) + args[i + 1 :],
            )
    raise PathError(f"no subterm at position {pos}")


def _tx_dterm(t, on_var, d):
    match t:
        case Var() | BVar():
            return on_var(t, d)
        case Const():
            return t
        case Fn(name, args):
            return Fn(name, tuple(_tx_dterm(a, on_var, d) for a in args))
    raise SyntaxError_(f"not a domain term: {t!r}")


# ---------------------------------------------------------------------------
# Formulas


@dataclass(frozen=True)
class Atom:
    pred: str
    args: tuple = ()


@dataclass(frozen=True)
class And:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Or:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class Implies:
    left: "Formula"
    right: "Formula"


@dataclass(frozen=True)
class ForAll:
    hint: str = field(compare=False)
    sort: str = "D"
    body: "Formula" = None


@dataclass(frozen=True)
class Exists:
    hint: str = field(compare=False)
    sort: str = "D"
    body: "Formula" = None


@dataclass(frozen=True)
class Id:
    """Propositional equality between two domain terms of one sort."""

    sort: str
    left: DomainTerm
    right: DomainTerm


@dataclass(frozen=True)
class Bottom:
    pass


Formula = Union[Atom, And, Or, Implies, ForAll, Exists, Id, Bottom]

BOT = Bottom()


def neg(f: Formula) -> Formula:
    """Negation is the derived notation ``f -> bottom``."""
    return Implies(f, BOT)


def _tx_formula(f, on_var, d):
    match f:
        case Atom(p, args):
            return Atom(p, tuple(_tx_dterm(a, on_var, d) for a in args))
        case And(l, r):
            return And(_tx_formula(l, on_var, d), _tx_formula(r, on_var, d))
        case Or(l, r):
            return Or(_tx_formula(l, on_var, d), _tx_formula(r, on_var, d))
        case Implies(l, r):
            return Implies(_tx_formula(l, on_var, d), _tx_formula(r, on_var, d))
        case ForAll(h, s, b):
            return ForAll(h, s, _tx_formula(b, on_var, d + 1))
        case Exists(h, s, b):
            return Exists(h, s, _tx_formula(b, on_var, d + 1))
        case Id(s, l, r):
            return Id(s, _tx_dterm(l, on_var, d), _tx_dterm(r, on_var, d))
        case Bottom():
            return f
    raise SyntaxError_(f"not a formula: {f!r}")


def formula_well_sorted(sig: Signature, f: Formula, bound=()) -> bool:
    """Validate sorts; ``bound`` is the stack of binder sorts, innermost first."""

    def sort_of(t):
        match t:
            case BVar(i):
                if i >= len(bound):
                    raise SortError(f"dangling bound variable (index {i})")
                return bound[i]
            case _:
                return sort_of_term(sig, t)

    match f:
        case Atom(p, args):
            if p not in sig.predicates:
                raise SortError(f"unknown predicate: {p}")
            expected = sig.predicates[p]
            if len(args) != len(expected):
                raise SortError(f"{p} expects {len(expected)} arguments")
            for a, s in zip(args, expected):
                if sort_of(a) != s:
                    raise SortError(f"{p}: bad argument sort")
            return True
        case And(l, r) | Or(l, r) | Implies(l, r):
            return formula_well_sorted(sig, l, bound) and formula_well_sorted(
                sig, r, bound
            )
        case ForAll(_, s, b) | Exists(_, s, b):
            if s not in sig.sorts:
                raise SortError(f"unknown sort {s!r}")
            return formula_well_sorted(sig, b, (s,) + bound)
        case Id(s, l, r):
            if s not in sig.sorts:
                raise SortError(f"unknown sort {s!r}")
            if sort_of(l) != s or sort_of(r) != s:
                raise SortError("identity endpoints must share the declared sort")
            return True
        case Bottom():
            return True
    raise SortError(f"not a formula: {f!r}")


def formula_free_vars(f: Formula) -> frozenset:
    out = set()

    def collect(v, d):
        if isinstance(v, Var):
            out.add(v.name)
        return v

    _tx_formula(f, collect, 0)
    return frozenset(out)


# ---------------------------------------------------------------------------
# Rewrite paths (the "reason" witnessing an identity)


@dataclass(frozen=True)
class ReflStep:
    """Anchor step: contributes no rewriting, fixes the current term."""

    term: DomainTerm


@dataclass(frozen=True)
class AxStep:
    """Apply one equational axiom at a position, under a ground instantiation.

    ``binding`` is a sorted tuple of (variable name, ground term) pairs.
    """

    axiom: str
    direction: str = "fwd"  # or "bwd"
    position: tuple = ()
    binding: tuple = ()


PathStep = Union[ReflStep, AxStep]


@dataclass(frozen=True)
class Path:
    """Chain of ground rewrite steps; the first step anchors the start term."""

    steps: tuple

    def __post_init__(self):
        if not self.steps:
            raise PathError("a path needs at least one step")


@dataclass(frozen=True)
class PathRef:
    """Free reference to an identity hypothesis in the context."""

    name: str


@dataclass(frozen=True)
class BPath:
    """Bound path variable (index counts enclosing path binders)."""

    index: int


PathExpr = Union[Path, PathRef, BPath]


def refl(term: DomainTerm) -> Path:
    return Path((ReflStep(term),))


def make_binding(pairs: Iterable) -> tuple:
    return tuple(sorted(pairs))


def _instantiate_axiom_side(side: DomainTerm, binding: dict) -> DomainTerm:
    def repl(v, d):
        if isinstance(v, Var):
            if v.name not in binding:
                raise PathError(f"step instantiation misses variable {v.name}")
            return binding[v.name]
        raise PathError("axiom sides must not contain bound variables")

    return _tx_dterm(side, repl, 0)


def apply_step(sig: Signature, term: DomainTerm, step: PathStep):
    """Apply one step to ``term``; returns the rewritten term or None on a
    mismatch.  Raises PathError if the step itself is ill-formed."""
    match step:
        case ReflStep(t):
            return term if t == term else None
        case AxStep(axname, direction, position, binding):
            ax = sig.axiom(axname)
            if direction not in ("fwd", "bwd"):
                raise PathError(f"bad step direction: {direction}")
            inst = dict(binding)
            for t in inst.values():
                if not term_ground(t):
                    raise PathError("step instantiation must be ground")
            src, dst = (ax.left, ax.right) if direction == "fwd" else (ax.right, ax.left)
            src = _instantiate_axiom_side(src, inst)
            dst = _instantiate_axiom_side(dst, inst)
            try:
                here = subterm_at(term, position)
            except PathError:
                return None
            if here != src:
                return None
            return replace_at(term, position, dst)
    raise PathError(f"not a path step: {step!r}")


def path_start(sig: Signature, path: Path) -> DomainTerm:
    """Start term of an anchored path (first step Refl, or a root axiom step)."""
    first = path.steps[0]
    match first:
        case ReflStep(t):
            return t
        case AxStep(axname, direction, (), binding):
            ax = sig.axiom(axname)
            side = ax.left if direction == "fwd" else ax.right
            return _instantiate_axiom_side(side, dict(binding))
    raise PathError("path has no anchor: first step must fix the start term")


def path_endpoints(sig: Signature, path: Path) -> tuple:
    current = path_start(sig, path)
    start = current
    for step in path.steps:
        nxt = apply_step(sig, current, step)
        if nxt is None:
            raise PathError("path steps do not chain")
        current = nxt
    return start, current


def compose_paths(sig: Signature, first: Path, second: Path) -> Path:
    _, mid = path_endpoints(sig, first)
    start, _ = path_endpoints(sig, second)
    if mid != start:
        raise PathError("composed paths must meet at a shared endpoint")
    return Path(first.steps + second.steps)


def invert_path(sig: Signature, path: Path) -> Path:
    u, v = path_endpoints(sig, path)
    steps = [ReflStep(v)]
    for step in reversed(path.steps):
        match step:
            case ReflStep(_):
                pass
            case AxStep(ax, direction, pos, binding):
                flipped = "bwd" if direction == "fwd" else "fwd"
                steps.append(AxStep(ax, flipped, pos, binding))
    return Path(tuple(steps))


# ---------------------------------------------------------------------------
# Proof terms


@dataclass(frozen=True)
class Hyp:
    """Free hypothesis reference."""

    name: str


@dataclass(frozen=True)
class BHyp:
    """Bound proof variable (index counts enclosing proof binders)."""

    index: int


@dataclass(frozen=True)
class Pair:
    left: "ProofTerm"
    right: "ProofTerm"


@dataclass(frozen=True)
class Fst:
    arg: "ProofTerm"


@dataclass(frozen=True)
class Snd:
    arg: "ProofTerm"


@dataclass(frozen=True)
class Inl:
    arg: "ProofTerm"
    other: Optional[Formula] = None  # annotation: the absent right disjunct


@dataclass(frozen=True)
class Inr:
    arg: "ProofTerm"
    other: Optional[Formula] = None  # annotation: the absent left disjunct


@dataclass(frozen=True)
class Case:
    scrutinee: "ProofTerm"
    left_hint: str = field(compare=False)
    left: "ProofTerm" = None  # binds proof index 0
    right_hint: str = field(compare=False, default="y")
    right: "ProofTerm" = None  # binds proof index 0


@dataclass(frozen=True)
class Lam:
    hint: str = field(compare=False)
    body: "ProofTerm" = None  # binds proof index 0


@dataclass(frozen=True)
class App:
    fn: "ProofTerm"
    arg: "ProofTerm"


@dataclass(frozen=True)
class Gen:
    """Universal constructor; the binder carries its sort."""

    hint: str = field(compare=False)
    sort: str = "D"
    body: "ProofTerm" = None  # binds domain index 0


@dataclass(frozen=True)
class Extr:
    arg: "ProofTerm"
    term: DomainTerm


@dataclass(frozen=True)
class Eps:
    """Existential constructor: body template over the binder plus a witness."""

    hint: str = field(compare=False)
    body: "ProofTerm" = None  # binds domain index 0
    witness: DomainTerm = None


@dataclass(frozen=True)
class Inst:
    """Existential destructor; the body binds a proof variable (index 0)
    for the opened proof and a domain variable (index 0) for the witness."""

    scrutinee: "ProofTerm"
    proof_hint: str = field(compare=False)
    domain_hint: str = field(compare=False, default="t")
    body: "ProofTerm" = None


@dataclass(frozen=True)
class IdIntro:
    """Identity constructor: a path together with its stated endpoints."""

    path: PathExpr
    left: DomainTerm = None
    right: DomainTerm = None


@dataclass(frozen=True)
class Rewr:
    """Identity destructor; the body binds a path variable (index 0)."""

    scrutinee: "ProofTerm"
    hint: str = field(compare=False, default="t")
    body: "ProofTerm" = None


ProofTerm = Union[
    Hyp, BHyp, Pair, Fst, Snd, Inl, Inr, Case, Lam, App, Gen, Extr, Eps, Inst,
    IdIntro, Rewr,
]

CONSTRUCTORS = (Pair, Inl, Inr, Lam, Gen, Eps, IdIntro)
DESTRUCTORS = (Fst, Snd, Case, App, Extr, Inst, Rewr)


def _tx_path(p, on_pathvar, on_dvar, pad, dd):
    match p:
        case PathRef() | BPath():
            return on_pathvar(p, pad)
        case Path(steps):
            out = []
            for s in steps:
                match s:
                    case ReflStep(t):
                        out.append(ReflStep(_tx_dterm(t, on_dvar, dd)))
                    case AxStep(ax, direction, pos, binding):
                        out.append(
                            AxStep(
                                ax,
                                direction,
                                pos,
                                tuple(
                                    (n, _tx_dterm(t, on_dvar, dd)) for n, t in binding
                                ),
                            )
                        )
            return Path(tuple(out))
    raise SyntaxError_(f"not a path expression: {p!r}")


def _tx_proof(t, on_pvar, on_dvar, on_pathvar, pd=0, dd=0, pad=0):
    rec = lambda x, pd=pd, dd=dd, pad=pad: _tx_proof(
        x, on_pvar, on_dvar, on_pathvar, pd, dd, pad
    )
    dterm = lambda x: _tx_dterm(x, on_dvar, dd)
    form = lambda x: _tx_formula(x, on_dvar, dd) if x is not None else None
    match t:
        case Hyp() | BHyp():
            return on_pvar(t, pd)
        case Pair(l, r):
            return Pair(rec(l), rec(r))
        case Fst(a):
            return Fst(rec(a))
        case Snd(a):
            return Snd(rec(a))
        case Inl(a, ann):
            return Inl(rec(a), form(ann))
        case Inr(a, ann):
            return Inr(rec(a), form(ann))
        case Case(s, lh, lb, rh, rb):
            return Case(rec(s), lh, rec(lb, pd=pd + 1), rh, rec(rb, pd=pd + 1))
        case Lam(h, b):
            return Lam(h, rec(b, pd=pd + 1))
        case App(f, a):
            return App(rec(f), rec(a))
        case Gen(h, s, b):
            return Gen(h, s, rec(b, dd=dd + 1))
        case Extr(a, s):
            return Extr(rec(a), dterm(s))
        case Eps(h, b, w):
            return Eps(h, rec(b, dd=dd + 1), dterm(w))
        case Inst(s, gh, th, b):
            return Inst(rec(s), gh, th, rec(b, pd=pd + 1, dd=dd + 1))
        case IdIntro(p, l, r):
            return IdIntro(_tx_path(p, on_pathvar, on_dvar, pad, dd), dterm(l), dterm(r))
        case Rewr(s, h, b):
            return Rewr(rec(s), h, rec(b, pad=pad + 1))
    raise SyntaxError_(f"not a proof term: {t!r}")


def _keep(v, d):
    return v


# -- proof-variable operations ----------------------------------------------


def substitute_proof(body: ProofTerm, name: str, replacement: ProofTerm) -> ProofTerm:
    """Capture-avoiding substitution of a proof term for a free hypothesis."""

    def on_pvar(v, pd):
        if isinstance(v, Hyp) and v.name == name:
            return replacement
        return v

    return _tx_proof(body, on_pvar, _keep, _keep)


def open_hyp(body: ProofTerm, name: str) -> ProofTerm:
    """Replace the outermost bound proof variable with a free hypothesis."""
    return instantiate_hyp(body, Hyp(name))


def instantiate_hyp(body: ProofTerm, replacement: ProofTerm) -> ProofTerm:
    def on_pvar(v, pd):
        if isinstance(v, BHyp) and v.index == pd:
            return replacement
        return v

    return _tx_proof(body, on_pvar, _keep, _keep)


def close_hyp(t: ProofTerm, name: str) -> ProofTerm:
    def on_pvar(v, pd):
        if isinstance(v, Hyp) and v.name == name:
            return BHyp(pd)
        return v

    return _tx_proof(t, on_pvar, _keep, _keep)


# -- domain-variable operations ---------------------------------------------


def _dvar_subst(name, replacement):
    def on_dvar(v, dd):
        if isinstance(v, Var) and v.name == name:
            return replacement
        return v

    return on_dvar


def substitute_domain_formula(f: Formula, name: str, replacement: DomainTerm) -> Formula:
    return _tx_formula(f, _dvar_subst(name, replacement), 0)


def substitute_domain_proof(t: ProofTerm, name: str, replacement: DomainTerm) -> ProofTerm:
    return _tx_proof(t, _keep, _dvar_subst(name, replacement), _keep)


def substitute_domain(target, name: str, replacement: DomainTerm):
    """Capture-avoiding domain substitution in a formula or proof term."""
    if isinstance(target, (Atom, And, Or, Implies, ForAll, Exists, Id, Bottom)):
        return substitute_domain_formula(target, name, replacement)
    return substitute_domain_proof(target, name, replacement)


def _dvar_inst(replacement):
    def on_dvar(v, dd):
        if isinstance(v, BVar) and v.index == dd:
            return replacement
        return v

    return on_dvar


def instantiate_dvar_formula(body: Formula, replacement: DomainTerm) -> Formula:
    return _tx_formula(body, _dvar_inst(replacement), 0)


def instantiate_dvar_proof(body: ProofTerm, replacement: DomainTerm) -> ProofTerm:
    return _tx_proof(body, _keep, _dvar_inst(replacement), _keep)


def _dvar_close(name):
    def on_dvar(v, dd):
        if isinstance(v, Var) and v.name == name:
            return BVar(dd)
        return v

    return on_dvar


def close_dvar_formula(f: Formula, name: str) -> Formula:
    return _tx_formula(f, _dvar_close(name), 0)


def close_dvar_proof(t: ProofTerm, name: str) -> ProofTerm:
    return _tx_proof(t, _keep, _dvar_close(name), _keep)


# -- path-variable operations ------------------------------------------------


def instantiate_path(body: ProofTerm, replacement: PathExpr) -> ProofTerm:
    def on_pathvar(p, pad):
        if isinstance(p, BPath) and p.index == pad:
            return replacement
        return p

    return _tx_proof(body, _keep, _keep, on_pathvar)


def open_path(body: ProofTerm, name: str) -> ProofTerm:
    return instantiate_path(body, PathRef(name))


def close_path(t: ProofTerm, name: str) -> ProofTerm:
    def on_pathvar(p, pad):
        if isinstance(p, PathRef) and p.name == name:
            return BPath(pad)
        return p

    return _tx_proof(t, _keep, _keep, on_pathvar)


# -- free names ---------------------------------------------------------------


def free_names(t: ProofTerm) -> tuple:
    """Free hypothesis names and free domain variable names of a proof term."""
    hyps = set()
    dvars = set()

    def on_pvar(v, pd):
        if isinstance(v, Hyp):
            hyps.add(v.name)
        return v

    def on_dvar(v, dd):
        if isinstance(v, Var):
            dvars.add(v.name)
        return v

    _tx_proof(t, on_pvar, on_dvar, _keep)
    return frozenset(hyps), frozenset(dvars)


def free_path_refs(t: ProofTerm) -> frozenset:
    out = set()

    def on_pathvar(p, pad):
        if isinstance(p, PathRef):
            out.add(p.name)
        return p

    _tx_proof(t, _keep, _keep, on_pathvar)
    return frozenset(out)


def alpha_eq(t1, t2) -> bool:
    """Equality up to bound-variable renaming (hints are not compared)."""
    return t1 == t2


def term_size(t: ProofTerm) -> int:
    """Number of proof-term nodes (domain terms and paths count as leaves)."""
    match t:
        case Hyp() | BHyp() | IdIntro():
            return 1
        case Pair(l, r) | App(l, r):
            return 1 + term_size(l) + term_size(r)
        case Fst(a) | Snd(a) | Inl(a, _) | Inr(a, _):
            return 1 + term_size(a)
        case Case(s, _, lb, _, rb):
            return 1 + term_size(s) + term_size(lb) + term_size(rb)
        case Lam(_, b) | Gen(_, _, b) | Eps(_, b, _):
            return 1 + term_size(b)
        case Extr(a, _):
            return 1 + term_size(a)
        case Inst(s, _, _, b) | Rewr(s, _, b):
            return 1 + term_size(s) + term_size(b)
    raise SyntaxError_(f"not a proof term: {t!r}")


def fresh_name(base: str, avoid) -> str:
    if base not in avoid:
        return base
    i = 1
    while f"{base}{i}" in avoid:
        i += 1
    return f"{base}{i}"


# ---------------------------------------------------------------------------
# Builders: construct binder nodes from named bodies


def lam(name: str, body: ProofTerm) -> Lam:
    return Lam(name, close_hyp(body, name))


def case_(scrutinee, left_name, left_body, right_name, right_body) -> Case:
    return Case(
        scrutinee,
        left_name,
        close_hyp(left_body, left_name),
        right_name,
        close_hyp(right_body, right_name),
    )


def gen(v: Var, body: ProofTerm) -> Gen:
    return Gen(v.name, v.sort, close_dvar_proof(body, v.name))


def eps(v: Var, body_template: ProofTerm, witness: DomainTerm) -> Eps:
    return Eps(v.name, close_dvar_proof(body_template, v.name), witness)


def inst(scrutinee, proof_name: str, v: Var, body: ProofTerm) -> Inst:
    return Inst(
        scrutinee,
        proof_name,
        v.name,
        close_dvar_proof(close_hyp(body, proof_name), v.name),
    )


def rewr(scrutinee, path_name: str, body: ProofTerm) -> Rewr:
    return Rewr(scrutinee, path_name, close_path(body, path_name))


def forall(v: Var, body: Formula) -> ForAll:
    return ForAll(v.name, v.sort, close_dvar_formula(body, v.name))


def exists(v: Var, body: Formula) -> Exists:
    return Exists(v.name, v.sort, close_dvar_formula(body, v.name))


# ---------------------------------------------------------------------------
# Contexts


@dataclass(frozen=True)
class PathHyp:
    """Identity hypothesis: the named reason has these endpoints at a sort."""

    sort: str
    left: DomainTerm
    right: DomainTerm


class Context:
    """Ordered declarations: domain variables, hypotheses, identity hypotheses.

    Extension returns a new context; the signature rides along so judgement
    checks have the equational theory in reach.
    """

    def __init__(self, sig: Signature, domain_vars=None, hyps=None, path_hyps=None):
        self.sig = sig
        self.domain_vars = dict(domain_vars or {})
        self.hyps = dict(hyps or {})
        self.path_hyps = dict(path_hyps or {})

    def _names(self):
        return set(self.domain_vars) | set(self.hyps) | set(self.path_hyps)

    def _require_fresh(self, name):
        if name in self._names():
            raise SyntaxError_(f"duplicate context name: {name}")

    def with_domain_var(self, name: str, sort: str) -> "Context":
        self._require_fresh(name)
        if sort not in self.sig.sorts:
            raise SortError(f"unknown sort {sort!r}")
        dv = dict(self.domain_vars)
        dv[name] = sort
        return Context(self.sig, dv, self.hyps, self.path_hyps)

    def with_hyp(self, name: str, formula: Formula) -> "Context":
        self._require_fresh(name)
        for v in formula_free_vars(formula):
            if v not in self.domain_vars:
                raise SyntaxError_(f"hypothesis {name} uses undeclared variable {v}")
        hs = dict(self.hyps)
        hs[name] = formula
        return Context(self.sig, self.domain_vars, hs, self.path_hyps)

    def with_path_hyp(self, name: str, ph: PathHyp) -> "Context":
        self._require_fresh(name)
        phs = dict(self.path_hyps)
        phs[name] = ph
        return Context(self.sig, self.domain_vars, self.hyps, phs)

    def var_sort(self, name: str):
        return self.domain_vars.get(name)

    def hyp(self, name: str):
        return self.hyps.get(name)

    def path_hyp(self, name: str):
        return self.path_hyps.get(name)

    def all_names(self):
        return self._names()

    def __repr__(self):
        parts = [f"{n}:{s}" for n, s in self.domain_vars.items()]
        parts += [f"{n}" for n in self.hyps]
        parts += [f"{n}=path" for n in self.path_hyps]
        return "Context(" + ", ".join(parts) + ")"
