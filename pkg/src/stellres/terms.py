"""First-order terms and unification.

A term is a nested tuple: ("$", key) is a variable (key is any hashable,
usually a string) and (symbol, arg0, ..., argn) is an application of a
function symbol, with a constant being a 1-tuple. The symbol "$" is reserved
for variables and rejected as a function symbol.

solve() computes most general unifiers as flat idempotent substitutions and
reports failures as typed exceptions (Clash for incompatible applications,
OccursCheck for cyclic bindings).
"""

from __future__ import annotations

from typing import Iterable

from stellres import kernel

VAR = kernel.VAR

Term = tuple


class UnificationError(Exception):
    """A unification problem has no solution."""


class Clash(UnificationError):
    """Two applications with different heads or arities were equated."""

    def __init__(self, left: Term, right: Term):
        super().__init__(f"clash: {term_to_text(left)} vs {term_to_text(right)}")
        self.left = left
        self.right = right


class OccursCheck(UnificationError):
    """A variable was equated with a term properly containing it."""

    def __init__(self, key, term: Term):
        super().__init__(f"occurs check: {key} in {term_to_text(term)}")
        self.key = key
        self.term = term


def var(key) -> Term:
    return (VAR, key)


def app(symbol: str, *args: Term) -> Term:
    if symbol == VAR:
        raise ValueError("'$' is reserved for variables")
    return (symbol,) + args


def is_var(t: Term) -> bool:
    return t[0] == VAR


def is_app(t: Term) -> bool:
    return t[0] != VAR


def variables_of(t: Term) -> set:
    """Keys of the variables occurring in t."""
    out = set()
    stack = [t]
    while stack:
        cur = stack.pop()
        if cur[0] == VAR:
            out.add(cur[1])
        else:
            stack.extend(cur[1:])
    return out


def term_size(t: Term) -> int:
    size = 0
    stack = [t]
    while stack:
        cur = stack.pop()
        size += 1
        if cur[0] != VAR:
            stack.extend(cur[1:])
    return size


def term_depth(t: Term) -> int:
    if t[0] == VAR or len(t) == 1:
        return 0
    return 1 + max(term_depth(arg) for arg in t[1:])


def apply_substitution(subst: dict, t: Term) -> Term:
    """Apply a flat substitution (key -> term) homomorphically."""
    if t[0] == VAR:
        return subst.get(t[1], t)
    if len(t) == 1:
        return t
    return (t[0],) + tuple(apply_substitution(subst, arg) for arg in t[1:])


def rename_apart(t: Term, tag) -> Term:
    """Prefix every variable key with tag, making t disjoint from peers."""
    if t[0] == VAR:
        return (VAR, (tag, t[1]))
    if len(t) == 1:
        return t
    return (t[0],) + tuple(rename_apart(arg, tag) for arg in t[1:])


def matchable(t: Term, u: Term) -> bool:
    """Do t and u unify after their variables are renamed apart?"""
    return kernel.matchable(t, u)


def _diagnose(eqs) -> UnificationError:
    """Re-run a failed problem slowly to name the failure."""
    subst: dict = {}
    stack = [(t, u) for t, u in reversed(eqs)]
    while stack:
        a, b = stack.pop()
        a = kernel.walk(a, subst)
        b = kernel.walk(b, subst)
        if a is b:
            continue
        if a[0] == VAR:
            if b[0] == VAR:
                if a[1] != b[1]:
                    subst[a[1]] = b
                continue
            if kernel.occurs(a[1], b, subst):
                return OccursCheck(a[1], kernel.resolve(b, subst))
            subst[a[1]] = b
            continue
        if b[0] == VAR:
            if kernel.occurs(b[1], a, subst):
                return OccursCheck(b[1], kernel.resolve(a, subst))
            subst[b[1]] = a
            continue
        if a[0] != b[0] or len(a) != len(b):
            return Clash(kernel.resolve(a, subst), kernel.resolve(b, subst))
        stack.extend(zip(a[1:], b[1:]))
    raise AssertionError("diagnosis reached the end of a problem the kernel rejected")


def flatten(triangular: dict) -> dict:
    """Turn a triangular substitution into a flat idempotent one."""
    return {key: kernel.resolve((VAR, key), triangular) for key in triangular}


def solve(problem: Iterable[tuple[Term, Term]]) -> dict:
    """Most general unifier of a list of term pairs.

    Returns a flat idempotent substitution mapping variable keys to terms.
    Raises Clash or OccursCheck when the problem has no solution. Which of
    the two is raised for a problem exhibiting both failure kinds depends on
    equation order; the failure itself does not.
    """
    eqs = list(problem)
    triangular = kernel.solve_eqs(eqs)
    if triangular is None:
        raise _diagnose(eqs)
    return flatten(triangular)


def solvable(problem: Iterable[tuple[Term, Term]]) -> bool:
    return kernel.solve_eqs(list(problem)) is not None


def _key_to_text(key) -> str:
    if isinstance(key, str):
        return key
    return "?" + "_".join(_key_to_text(part) if not isinstance(part, (int, str)) else str(part) for part in key)


def term_to_text(t: Term) -> str:
    if t[0] == VAR:
        return _key_to_text(t[1])
    if len(t) == 1:
        return t[0]
    return t[0] + "(" + ", ".join(term_to_text(arg) for arg in t[1:]) + ")"
