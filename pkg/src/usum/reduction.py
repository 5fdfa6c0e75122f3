"""Beta-reduction: redex discovery, single steps, fuel-bounded
normalization with a strategy, and convertibility.

Reduction goes under binders; a binder is opened with a fresh name before
its body is rewritten and closed again afterwards, so terms stay locally
closed throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

from .syntax import (
    App, Case, Eps, Extr, Fst, Gen, IdIntro, Inl, Inr, Inst, Lam, Pair,
    ProofTerm, Rewr, Snd, Var, alpha_eq, close_dvar_proof, close_hyp,
    close_path, free_names, free_path_refs, fresh_name, instantiate_dvar_proof,
    instantiate_hyp, instantiate_path, open_hyp, open_path,
)

RULES = ("∧-β-l", "∧-β-r", "∨-β-l", "∨-β-r", "→-β", "∀-β", "∃-β", "Id-β")

DEFAULT_FUEL = 10_000

NORMAL_ORDER = "normal-order"
APPLICATIVE_ORDER = "applicative-order"


class StaleRedexError(Exception):
    """The term at the redex position no longer matches the rule."""


@dataclass(frozen=True)
class Redex:
    position: tuple
    rule: str


@dataclass(frozen=True)
class Trace:
    initial: ProofTerm
    steps: tuple  # of (Redex, ProofTerm) pairs
    terminal: ProofTerm
    exhausted: bool

    def __len__(self):
        return len(self.steps)


def root_rule(t: ProofTerm):
    """Beta rule contracting at the root, if the term is a redex there."""
    match t:
        case Fst(Pair()):
            return "∧-β-l"
        case Snd(Pair()):
            return "∧-β-r"
        case Case(Inl(), _, _, _, _):
            return "∨-β-l"
        case Case(Inr(), _, _, _, _):
            return "∨-β-r"
        case App(Lam(), _):
            return "→-β"
        case Extr(Gen(), _):
            return "∀-β"
        case Inst(Eps(), _, _, _):
            return "∃-β"
        case Rewr(IdIntro(), _, _):
            return "Id-β"
    return None


def _children(t):
    match t:
        case Pair(l, r) | App(l, r):
            return ((0, l), (1, r))
        case Fst(a) | Snd(a) | Inl(a, _) | Inr(a, _) | Extr(a, _):
            return ((0, a),)
        case Case(s, _, lb, _, rb):
            return ((0, s), (1, lb), (2, rb))
        case Lam(_, b) | Gen(_, _, b) | Eps(_, b, _):
            return ((0, b),)
        case Inst(s, _, _, b) | Rewr(s, _, b):
            return ((0, s), (1, b))
    return ()


def redexes(t: ProofTerm):
    """All redexes in outermost-leftmost (preorder) order; empty iff normal."""
    out = []

    def scan(u, pos):
        rule = root_rule(u)
        if rule is not None:
            out.append(Redex(pos, rule))
        for i, child in _children(u):
            scan(child, pos + (i,))

    scan(t, ())
    return out


def _contract(t: ProofTerm) -> ProofTerm:
    match t:
        case Fst(Pair(a, _)):
            return a
        case Snd(Pair(_, b)):
            return b
        case Case(Inl(a, _), _, lb, _, _):
            return instantiate_hyp(lb, a)
        case Case(Inr(b, _), _, _, _, rb):
            return instantiate_hyp(rb, b)
        case App(Lam(_, b), a):
            return instantiate_hyp(b, a)
        case Extr(Gen(_, _, f), s):
            return instantiate_dvar_proof(f, s)
        case Inst(Eps(_, f, s), _, _, d):
            return instantiate_hyp(
                instantiate_dvar_proof(d, s), instantiate_dvar_proof(f, s)
            )
        case Rewr(IdIntro(p, _, _), _, d):
            return instantiate_path(d, p)
    raise StaleRedexError(f"no redex at the root of {t!r}")


def step(t: ProofTerm, r: Redex) -> ProofTerm:
    """Contract exactly one redex, leaving every other subterm untouched."""
    hyps, dvars = free_names(t)
    avoid = set(hyps) | set(dvars) | set(free_path_refs(t))
    return _step_at(t, tuple(r.position), r.rule, avoid)


def _step_at(t, pos, rule, avoid):
    if not pos:
        if root_rule(t) != rule:
            raise StaleRedexError(f"expected {rule} at this position")
        return _contract(t)
    i, rest = pos[0], pos[1:]

    def under_hyp(hint, body):
        n = fresh_name(hint or "x", avoid)
        return close_hyp(_step_at(open_hyp(body, n), rest, rule, avoid | {n}), n)

    def under_dvar(hint, body):
        n = fresh_name(hint or "x", avoid)
        v = Var(n, "_")
        return close_dvar_proof(
            _step_at(instantiate_dvar_proof(body, v), rest, rule, avoid | {n}), n
        )

    def under_path(hint, body):
        n = fresh_name(hint or "t", avoid)
        return close_path(_step_at(open_path(body, n), rest, rule, avoid | {n}), n)

    match t:
        case Pair(l, r):
            if i == 0:
                return Pair(_step_at(l, rest, rule, avoid), r)
            if i == 1:
                return Pair(l, _step_at(r, rest, rule, avoid))
        case App(f, a):
            if i == 0:
                return App(_step_at(f, rest, rule, avoid), a)
            if i == 1:
                return App(f, _step_at(a, rest, rule, avoid))
        case Fst(a) if i == 0:
            return Fst(_step_at(a, rest, rule, avoid))
        case Snd(a) if i == 0:
            return Snd(_step_at(a, rest, rule, avoid))
        case Inl(a, ann) if i == 0:
            return Inl(_step_at(a, rest, rule, avoid), ann)
        case Inr(a, ann) if i == 0:
            return Inr(_step_at(a, rest, rule, avoid), ann)
        case Extr(a, s) if i == 0:
            return Extr(_step_at(a, rest, rule, avoid), s)
        case Case(s, lh, lb, rh, rb):
            if i == 0:
                return Case(_step_at(s, rest, rule, avoid), lh, lb, rh, rb)
            if i == 1:
                return Case(s, lh, under_hyp(lh, lb), rh, rb)
            if i == 2:
                return Case(s, lh, lb, rh, under_hyp(rh, rb))
        case Lam(h, b) if i == 0:
            return Lam(h, under_hyp(h, b))
        case Gen(h, srt, b) if i == 0:
            return Gen(h, srt, under_dvar(h, b))
        case Eps(h, b, w) if i == 0:
            return Eps(h, under_dvar(h, b), w)
        case Inst(s, gh, th, b):
            if i == 0:
                return Inst(_step_at(s, rest, rule, avoid), gh, th, b)
            if i == 1:
                n = fresh_name(gh or "g", avoid)
                m = fresh_name(th or "t", avoid | {n})
                v = Var(m, "_")
                opened = instantiate_dvar_proof(open_hyp(b, n), v)
                done = _step_at(opened, rest, rule, avoid | {n, m})
                return Inst(s, gh, th, close_dvar_proof(close_hyp(done, n), m))
        case Rewr(s, h, b):
            if i == 0:
                return Rewr(_step_at(s, rest, rule, avoid), h, b)
            if i == 1:
                return Rewr(s, h, under_path(h, b))
    raise StaleRedexError(f"no subterm at position {pos}")


def _pick(rs, strategy):
    if strategy in (NORMAL_ORDER, "normal"):
        return rs[0]
    if strategy in (APPLICATIVE_ORDER, "applicative"):
        innermost = [
            r
            for r in rs
            if not any(
                o.position != r.position
                and o.position[: len(r.position)] == r.position
                for o in rs
            )
        ]
        return min(innermost, key=lambda r: r.position)
    raise ValueError(f"unknown strategy: {strategy}")


def normalize(t: ProofTerm, strategy=NORMAL_ORDER, fuel=DEFAULT_FUEL) -> Trace:
    """Contract the strategy's redex until normal form or fuel runs out."""
    if fuel < 1:
        raise ValueError("fuel must be positive")
    steps = []
    current = t
    for _ in range(fuel):
        rs = redexes(current)
        if not rs:
            return Trace(t, tuple(steps), current, False)
        r = _pick(rs, strategy)
        current = step(current, r)
        steps.append((r, current))
    exhausted = bool(redexes(current))
    return Trace(t, tuple(steps), current, exhausted)


def conv(t1: ProofTerm, t2: ProofTerm, fuel=DEFAULT_FUEL):
    """True if both normalize (within fuel) to alpha-equal terms, False if
    both reach distinct normal forms, None when fuel ran out undecided."""
    a = normalize(t1, NORMAL_ORDER, fuel)
    b = normalize(t2, NORMAL_ORDER, fuel)
    if alpha_eq(a.terminal, b.terminal):
        return True
    if a.exhausted or b.exhausted:
        return None
    return False
