"""Ray ordering, locations, and finite-witness type testing.

Rays are preordered by specialisation: a ray sits below another when a
substitution turns it into the other.  The location of a star or
constellation keeps only its most general rays, so two objects can
interact only when their locations share a common specialisation.  On
top of that sits a tests-as-types discipline: a type is presented by a
finite battery of test constellations together with a colour set, and a
candidate belongs when its joint execution with every test halts with a
finite output.  Verdicts are three-valued (yes / no / unknown) and
aggregate pessimistically, so a fuel-starved run never upgrades to yes.

The rotation and reassociation laws for execution are exposed as
checkers over concrete triples.  Both require the shared hypothesis
that the three locations have no common specialisation; the checkers
raise on a violated hypothesis and return None whenever some execution
fails to complete within fuel, since the laws only speak about finished
runs.
"""

from __future__ import annotations

from dataclasses import dataclass

from stellres import constellations as cons
from stellres import engine, kernel, parsing, terms
from stellres.terms import Term

Ray = tuple
Star = tuple
Constellation = tuple

YES = "yes"
NO = "no"
UNKNOWN = "unknown"


def _match_into(pattern: Term, target: Term, subst: dict) -> bool:
    """Bind pattern variables (only) so the pattern becomes the target."""
    if terms.is_var(pattern):
        key = pattern[1]
        if key in subst:
            return subst[key] == target
        subst[key] = target
        return True
    if terms.is_var(target):
        return False
    if pattern[0] != target[0] or len(pattern) != len(target):
        return False
    return all(_match_into(p, t, subst)
               for p, t in zip(pattern[1:], target[1:]))


def term_leq(t: Term, u: Term) -> bool:
    """Does some substitution send t to u?"""
    return _match_into(t, u, {})


def ray_leq(r1: Ray, r2: Ray) -> bool:
    """Specialisation preorder: r1 is at most as specific as r2.

    Polarities must be equal and a single substitution must send the
    term of r1 to the term of r2.  Equal colours come for free, since a
    substitution never rewrites the head symbol.
    """
    return r1[0] == r2[0] and _match_into(r1[1], r2[1], {})


def ray_equiv(r1: Ray, r2: Ray) -> bool:
    """Mutual specialisation, which makes the rays renamings of each other."""
    return ray_leq(r1, r2) and ray_leq(r2, r1)


def _canonical_ray(r: Ray) -> Ray:
    return cons.canonical_star((r,))[0]


def prefix_reduce(rays) -> frozenset:
    """Keep the most general rays, one representative per renaming class.

    A ray is dropped when some strictly more general ray is present.
    Survivors are renamed canonically, which also collapses rays that
    differ only by a renaming into a single element.
    """
    pool = list(dict.fromkeys(rays))
    kept = []
    for r in pool:
        if any(ray_leq(other, r) and not ray_leq(r, other) for other in pool):
            continue
        kept.append(r)
    return frozenset(_canonical_ray(r) for r in kept)


def location(x) -> frozenset:
    """Most general rays of a star or a constellation.

    For a star this prefix-reduces its ray multiset; for a constellation
    it prefix-reduces the union over all stars, which agrees with
    reducing the union of the per-star locations.
    """
    x = tuple(x)
    if not x:
        return frozenset()
    if isinstance(x[0][0], int):
        return prefix_reduce(x)
    return prefix_reduce([r for s in x for r in s])


def ucap(r, q) -> frozenset:
    """Common specialisations of two ray sets, prefix-reduced.

    Every joint instance of a ray from each side is an instance of the
    most general unifier of some pair, so unifying the pairs (variables
    renamed apart) and reducing yields the whole intersection.
    """
    joins = []
    for a in r:
        for b in q:
            if a[0] != b[0]:
                continue
            subst: dict = {}
            if kernel.unify_tagged(a[1], 0, b[1], 1, subst):
                joins.append((a[0], kernel.resolve_tagged(a[1], 0, subst)))
    return prefix_reduce(joins)


def disjoint(a, b) -> bool:
    """Can no ray of one location specialise jointly with the other's?"""
    return not ucap(location(a), location(b))


def _execution_verdict(sigma: Constellation, colours, fuel: int):
    result = engine.execute(sigma, colours, fuel=fuel)
    if result.status == engine.COMPLETE:
        return YES, result
    if result.status == engine.DIVERGENT:
        return NO, result
    return UNKNOWN, result


def orthogonal(s1: Constellation, s2: Constellation, colours,
               fuel: int = 64) -> str:
    """Does the joint execution of the two constellations halt?

    yes when the execution completes, no on a divergence certificate,
    unknown when fuel runs out first.  Symmetric in its two arguments.
    """
    verdict, _ = _execution_verdict(tuple(s1) + tuple(s2), colours, fuel)
    return verdict


@dataclass(frozen=True)
class TestType:
    """A type presented by the finite test battery that carves it out.

    tests holds finitely many test constellations; colours is the
    colour set every membership execution runs over.
    """

    tests: tuple
    colours: frozenset

    def __post_init__(self):
        object.__setattr__(self, "tests", tuple(tuple(t) for t in self.tests))
        object.__setattr__(self, "colours", frozenset(self.colours))


def in_test_type(candidate: Constellation, t: TestType,
                 fuel: int = 64) -> str:
    """Membership by testing: orthogonal to every test in the battery.

    Verdicts aggregate pessimistically: any no wins, otherwise any
    unknown wins, and an empty battery accepts every candidate.
    """
    verdicts = [orthogonal(candidate, test, t.colours, fuel)
                for test in t.tests]
    if NO in verdicts:
        return NO
    if UNKNOWN in verdicts:
        return UNKNOWN
    return YES


def type_check_report(candidate: Constellation, t: TestType, fuel: int = 64,
                      candidate_id: str = "candidate") -> dict:
    """JSON-ready record of a membership check, one entry per test.

    Each entry carries the test index, its verdict, and the fuel used;
    a no verdict also carries the engine's divergence certificate.
    """
    entries = []
    verdicts = []
    for index, test in enumerate(t.tests):
        verdict, result = _execution_verdict(
            tuple(candidate) + tuple(test), t.colours, fuel)
        verdicts.append(verdict)
        entry = {"test": index, "verdict": verdict, "fuel": fuel}
        if verdict == NO and result.divergence is not None:
            entry["certificate"] = result.divergence
        entries.append(entry)
    if NO in verdicts:
        overall = NO
    elif UNKNOWN in verdicts:
        overall = UNKNOWN
    else:
        overall = YES
    return {"candidate": candidate_id, "verdict": overall, "fuel": fuel,
            "tests": entries}


def _require_joint_empty(s1, s2, s3):
    meet = ucap(ucap(location(s1), location(s2)), location(s3))
    if meet:
        shared = ", ".join(sorted(parsing.ray_to_text(r) for r in meet))
        raise ValueError(
            "hypothesis violation: the three locations share common "
            "specialisations: " + shared)


def _side(x, y, z, colours, fuel):
    """(x orthogonal y) and (z orthogonal exec(x + y)), three-valued."""
    verdict, result = _execution_verdict(tuple(x) + tuple(y), colours, fuel)
    if verdict != YES:
        return verdict
    return orthogonal(z, result.output, colours, fuel)


def trefoil_check(s1: Constellation, s2: Constellation, s3: Constellation,
                  colours, fuel: int = 64):
    """Check the rotation law for orthogonality on one triple.

    The law states that (s2 orthogonal s3 and s1 orthogonal
    exec(s2 + s3)) holds exactly when (s1 orthogonal s2 and
    exec(s1 + s2) orthogonal s3), provided the three locations have no
    common specialisation.  Raises ValueError when that hypothesis
    fails.  Returns True when both sides agree, False when they differ,
    and None when fuel stops some run before a verdict.
    """
    _require_joint_empty(s1, s2, s3)
    left = _side(s2, s3, s1, colours, fuel)
    right = _side(s1, s2, s3, colours, fuel)
    if UNKNOWN in (left, right):
        return None
    return left == right


def assoc_exec_check(s1: Constellation, s2: Constellation,
                     s3: Constellation, colours, fuel: int = 64):
    """Check reassociation of execution on one triple.

    Compares exec(s1 + exec(s2 + s3)) with exec(exec(s1 + s2) + s3) up
    to renaming, provided the three locations have no common
    specialisation.  Raises ValueError when that hypothesis fails.
    Returns None unless all four executions complete within fuel.
    """
    _require_joint_empty(s1, s2, s3)
    inner_right = engine.execute(tuple(s2) + tuple(s3), colours, fuel=fuel)
    if inner_right.status != engine.COMPLETE:
        return None
    lhs = engine.execute(tuple(s1) + inner_right.output, colours, fuel=fuel)
    if lhs.status != engine.COMPLETE:
        return None
    inner_left = engine.execute(tuple(s1) + tuple(s2), colours, fuel=fuel)
    if inner_left.status != engine.COMPLETE:
        return None
    rhs = engine.execute(inner_left.output + tuple(s3), colours, fuel=fuel)
    if rhs.status != engine.COMPLETE:
        return None
    return cons.constellations_alpha_equal(lhs.output, rhs.output)
