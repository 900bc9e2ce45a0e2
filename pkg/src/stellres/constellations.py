"""Stars and constellations.

A ray is a pair (polarity, term) with polarity +1, -1 or 0. A polarised
ray's term must be an application; its head symbol is the ray's colour
(+a(f(x)) is (1, ("a", ("f", ("$", "x"))))). An unpolarised ray may be any
term, including a bare variable.

A star is a non-empty tuple of rays whose variables are local to it: every
operation that combines stars renames per star (or per diagram vertex), so
two stars spelling the same variable name never interact through it. A
constellation is a tuple of stars read as a multiset.

canonical_star computes a canonical representative of a star's equivalence
class under ray permutation and variable renaming, which is what makes
multiset comparison and deterministic output ordering possible.
"""

from __future__ import annotations

import itertools
from typing import Callable, Iterable

from stellres import terms
from stellres.terms import Term, VAR

Ray = tuple  # (polarity, Term)
Star = tuple  # tuple[Ray, ...]
Constellation = tuple  # tuple[Star, ...]

POS = 1
NEG = -1
NONE = 0

_PERMUTATION_CAP = 362880  # 9!


def ray(polarity: int, term: Term) -> Ray:
    if polarity not in (POS, NEG, NONE):
        raise ValueError(f"polarity must be +1, -1 or 0, got {polarity!r}")
    if polarity != NONE and term[0] == VAR:
        raise ValueError("a polarised ray needs an application term (its colour)")
    return (polarity, term)


def pos(term: Term) -> Ray:
    return ray(POS, term)


def neg(term: Term) -> Ray:
    return ray(NEG, term)


def unp(term: Term) -> Ray:
    return ray(NONE, term)


def ray_polarity(r: Ray) -> int:
    return r[0]


def ray_term(r: Ray) -> Term:
    return r[1]


def ray_colour(r: Ray):
    """Colour of a polarised ray; None for unpolarised rays."""
    return r[1][0] if r[0] != NONE else None


def ray_variables(r: Ray) -> set:
    return terms.variables_of(r[1])


def star(*rays: Ray) -> Star:
    if not rays:
        raise ValueError("a star holds at least one ray")
    for r in rays:
        ray(r[0], r[1])  # re-validate
    return tuple(rays)


def star_variables(s: Star) -> set:
    out: set = set()
    for r in s:
        out |= terms.variables_of(r[1])
    return out


def constellation(*stars: Star) -> Constellation:
    return tuple(star(*s) for s in stars)


def union(a: Constellation, b: Constellation) -> Constellation:
    """Multiset union: plain concatenation, duplicates kept."""
    return tuple(a) + tuple(b)


def instantiate_family(family: Callable[[int], Star], bound: int) -> Constellation:
    """First `bound` members of an infinite star family."""
    if bound < 0:
        raise ValueError("bound must be >= 0")
    return tuple(family(i) for i in range(bound))


def colourize(colour: str, polarity: int, sigma: Constellation) -> Constellation:
    """Repaint every ray with the given colour and polarity.

    An unpolarised ray's term is wrapped (t becomes colour(t)); a polarised
    ray's old colour head is replaced, its arguments kept.
    """
    if polarity not in (POS, NEG):
        raise ValueError("colourize needs polarity +1 or -1")
    out = []
    for s in sigma:
        new_rays = []
        for pol, term in s:
            if pol == NONE:
                new_rays.append((polarity, (colour, term)))
            else:
                new_rays.append((polarity, (colour,) + term[1:]))
        out.append(tuple(new_rays))
    return tuple(out)


def signature_of(sigma: Constellation) -> tuple[dict, set]:
    """(symbol -> arity) map and the set of colours used by polarised rays.

    Raises ValueError when one symbol is used at two arities.
    """
    arities: dict = {}
    colours: set = set()

    def scan(t: Term):
        if t[0] == VAR:
            return
        n = len(t) - 1
        prev = arities.setdefault(t[0], n)
        if prev != n:
            raise ValueError(f"symbol {t[0]!r} used with arities {prev} and {n}")
        for arg in t[1:]:
            scan(arg)

    for s in sigma:
        for pol, term in s:
            scan(term)
            if pol != NONE:
                colours.add(term[0])
    return arities, colours


def _serialise(t: Term, var_class: dict) -> tuple:
    if t[0] == VAR:
        return ("v", str(var_class[t[1]]))
    return ("a", t[0]) + tuple(_serialise(arg, var_class) for arg in t[1:])


def _var_paths(t: Term, path: tuple, acc: dict):
    if t[0] == VAR:
        acc.setdefault(t[1], []).append(path)
    else:
        for i, arg in enumerate(t[1:]):
            _var_paths(arg, path + (i,), acc)


def canonical_star(s: Star) -> Star:
    """Canonical representative under ray permutation and renaming.

    Exact: refines variable classes until stable, then searches the residual
    tied-ray permutations for the lexicographically least spelling. Raises
    RuntimeError on stars too symmetric to search (beyond any real workload).
    """
    rays = list(s)
    variables = sorted(star_variables(s), key=repr)
    var_class = {v: 0 for v in variables}

    per_ray_paths = []
    for r in rays:
        acc: dict = {}
        _var_paths(r[1], (), acc)
        per_ray_paths.append(acc)

    while True:
        ray_keys = [(r[0], _serialise(r[1], var_class)) for r in rays]
        signatures = {}
        for v in variables:
            sig = []
            for idx, acc in enumerate(per_ray_paths):
                for path in acc.get(v, ()):
                    sig.append((ray_keys[idx], path))
            signatures[v] = (var_class[v], tuple(sorted(sig)))
        ordered = sorted(set(signatures.values()))
        new_class = {v: ordered.index(signatures[v]) for v in variables}
        if new_class == var_class:
            break
        var_class = new_class

    ray_keys = [(r[0], _serialise(r[1], var_class)) for r in rays]
    order = sorted(range(len(rays)), key=lambda i: ray_keys[i])
    groups: list[list[int]] = []
    for i in order:
        if groups and ray_keys[groups[-1][-1]] == ray_keys[i]:
            groups[-1].append(i)
        else:
            groups.append([i])

    def arrangements(group: list[int]) -> list[tuple[int, ...]]:
        """Distinct orderings of the group's literal rays.

        Exchanging two literally equal rays leaves the candidate unchanged,
        so only multiset permutations of the literal values are explored.
        """
        pool: dict = {}
        for i in group:
            pool.setdefault(rays[i], []).append(i)
        values = sorted(pool, key=repr)
        counts = {v: len(pool[v]) for v in values}
        out: list[tuple[int, ...]] = []
        prefix: list[int] = []

        def rec():
            if len(prefix) == len(group):
                out.append(tuple(prefix))
                return
            for v in values:
                if counts[v]:
                    counts[v] -= 1
                    prefix.append(pool[v][counts[v]])
                    rec()
                    prefix.pop()
                    counts[v] += 1

        rec()
        return out

    total = 1
    for g in groups:
        size = 1
        for k in range(2, len(g) + 1):
            size *= k
        seen_literals: dict = {}
        for i in g:
            seen_literals[rays[i]] = seen_literals.get(rays[i], 0) + 1
        for count in seen_literals.values():
            for k in range(2, count + 1):
                size //= k
        total *= size
        if total > _PERMUTATION_CAP:
            raise RuntimeError("star too symmetric to canonicalise")

    def rename(sequence: Iterable[int]) -> Star:
        mapping: dict = {}

        def walk(t: Term) -> Term:
            if t[0] == VAR:
                if t[1] not in mapping:
                    mapping[t[1]] = (VAR, f"v{len(mapping)}")
                return mapping[t[1]]
            if len(t) == 1:
                return t
            return (t[0],) + tuple(walk(arg) for arg in t[1:])

        return tuple((rays[i][0], walk(rays[i][1])) for i in sequence)

    best: Star | None = None
    for choice in itertools.product(*(arrangements(g) for g in groups)):
        sequence = [i for g in choice for i in g]
        candidate = rename(sequence)
        if best is None or candidate < best:
            best = candidate
    assert best is not None
    return best


def alpha_equivalent(s1: Star, s2: Star) -> bool:
    """Star equality up to ray order and variable renaming."""
    if len(s1) != len(s2):
        return False
    return canonical_star(s1) == canonical_star(s2)


def canonical_constellation(sigma: Constellation) -> Constellation:
    """Canonicalise every star and sort: the multiset's normal spelling."""
    return tuple(sorted(canonical_star(s) for s in sigma))


def constellations_alpha_equal(a: Constellation, b: Constellation) -> bool:
    """Multiset equality of stars up to renaming."""
    return canonical_constellation(a) == canonical_constellation(b)
