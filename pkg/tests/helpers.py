"""Shared oracles and seeded generators for the test suite.

Everything here is implemented independently of the library code under
test: the unifier oracle walks plain substitution maps, the walk counter
multiplies adjacency matrices, the SLD prover enumerates derivations
directly, and the Turing interpreter steps configurations. Generators are
deterministic for a given random.Random instance.
"""

from __future__ import annotations

import itertools

from stellres import constellations as cons
from stellres import mll
from stellres import terms

SEED = 20250816


# ----------------------------------------------------- substitution oracle

def oracle_walk(t, theta):
    while terms.is_var(t) and t[1] in theta:
        t = theta[t[1]]
    return t


def oracle_occurs(key, t, theta):
    t = oracle_walk(t, theta)
    if terms.is_var(t):
        return t[1] == key
    return any(oracle_occurs(key, a, theta) for a in t[1:])


def oracle_unify(t, u, theta):
    """Robinson-style unification; returns an extended map or None."""
    t, u = oracle_walk(t, theta), oracle_walk(u, theta)
    if terms.is_var(t) and terms.is_var(u) and t[1] == u[1]:
        return theta
    if terms.is_var(t):
        if oracle_occurs(t[1], u, theta):
            return None
        out = dict(theta)
        out[t[1]] = u
        return out
    if terms.is_var(u):
        return oracle_unify(u, t, theta)
    if t[0] != u[0] or len(t) != len(u):
        return None
    for a, b in zip(t[1:], u[1:]):
        theta = oracle_unify(a, b, theta)
        if theta is None:
            return None
    return theta


def oracle_resolve(t, theta):
    t = oracle_walk(t, theta)
    if terms.is_var(t):
        return t
    return (t[0],) + tuple(oracle_resolve(a, theta) for a in t[1:])


def apply_ground(t, theta):
    """Plain simultaneous substitution, no walking."""
    if terms.is_var(t):
        return theta.get(t[1], t)
    return (t[0],) + tuple(apply_ground(a, theta) for a in t[1:])


def unify_family():
    """All 45 terms of depth <= 3 over unary f, g, constant a, vars X, Y."""
    atoms = [("a",), terms.var("X"), terms.var("Y")]
    out = list(atoms)
    layer = list(atoms)
    for _ in range(3):
        layer = [(f, t) for f in ("f", "g") for t in layer]
        out.extend(layer)
    return out


def brute_unifiable(t, u, family):
    """Exhaustive substitution search over the closed term family."""
    vs = sorted(terms.variables_of(t) | terms.variables_of(u))
    if not vs:
        return t == u
    for combo in itertools.product(family, repeat=len(vs)):
        theta = dict(zip(vs, combo))
        if apply_ground(t, theta) == apply_ground(u, theta):
            return True
    return False


# ------------------------------------------------------ walk-count oracle

def walk_dp(arcs, verts, max_len):
    """Walks with exactly k arcs for k = 1..max_len via matrix powers."""
    idx = {v: i for i, v in enumerate(verts)}
    n = len(verts)
    adj = [[0] * n for _ in range(n)]
    for _name, s, t in arcs:
        adj[idx[s]][idx[t]] += 1
    counts = []
    power = [row[:] for row in adj]
    for _ in range(max_len):
        counts.append(sum(map(sum, power)))
        power = [
            [sum(power[i][k] * adj[k][j] for k in range(n)) for j in range(n)]
            for i in range(n)]
    return counts


def all_digraphs(verts, max_arcs):
    """Every labelled digraph over verts with at most max_arcs arcs,
    self-loops included, arcs named e0, e1, ..."""
    pairs = [(s, t) for s in verts for t in verts]
    for k in range(max_arcs + 1):
        for combo in itertools.combinations(pairs, k):
            yield [(f"e{i}", s, t) for i, (s, t) in enumerate(combo)]


# -------------------------------------------------------------- SLD oracle

def first_occurrence_vars(t):
    if terms.is_var(t):
        return [t[1]]
    out = []
    for a in t[1:]:
        for v in first_occurrence_vars(a):
            if v not in out:
                out.append(v)
    return out


def _rename_clause(head, body, n):
    def ren(t):
        if terms.is_var(t):
            return terms.var(f"{t[1]}#{n}")
        return (t[0],) + tuple(ren(a) for a in t[1:])

    return ren(head), [ren(b) for b in body]


def sld_answers(clauses, query, max_depth=40):
    """All SLD derivations of the query, one ans(...) term per derivation.

    Clauses use the same (sign, atom) convention as encode_clauses; the
    answer variables are the query variables in first-occurrence order.
    """
    rules = []
    for cl in clauses:
        heads = [a for sg, a in cl if sg == 1]
        bodies = [a for sg, a in cl if sg == -1]
        rules.append((heads[0], bodies))
    qvars = []
    for goal in query:
        for v in first_occurrence_vars(goal):
            if v not in qvars:
                qvars.append(v)
    answers = []
    counter = [0]

    def prove(goals, theta, depth):
        if depth > max_depth:
            raise RuntimeError("derivation depth exceeded")
        if not goals:
            answers.append(("ans",) + tuple(
                oracle_resolve(terms.var(v), theta) for v in qvars))
            return
        goal, rest = goals[0], goals[1:]
        for head, body in rules:
            counter[0] += 1
            h, bs = _rename_clause(head, body, counter[0])
            theta2 = oracle_unify(goal, h, theta)
            if theta2 is not None:
                prove(bs + rest, theta2, depth + 1)

    prove(list(query), {}, 0)
    return answers


def canon_term(t):
    """Alpha-canonical form of a bare term, for order-free comparison."""
    return cons.canonical_star(((cons.NONE, t),))[0][1]


# --------------------------------------------------- Turing-machine oracle

def interpreter_rows(tm, input_word, width, max_steps):
    """Configuration rows from direct simulation, head tokens h:state:sym,
    plain cells s:sym; stops on a missing rule or when the head would
    leave the window."""
    tape = list(input_word) + [tm.blank] * (width - len(input_word))
    head, state = 0, tm.start

    def row():
        return tuple(
            (f"h:{state}:{sym}" if i == head else f"s:{sym}")
            for i, sym in enumerate(tape))

    rows = [row()]
    for _ in range(max_steps):
        key = (state, tape[head])
        if key not in tm.transitions:
            break
        state2, sym2, move = tm.transitions[key]
        tape[head] = sym2
        head2 = head + (1 if move == "R" else -1)
        if head2 < 0 or head2 >= width:
            break
        head, state = head2, state2
        rows.append(row())
    return rows


TM_TEXTS = {
    "increment": "q0 1 -> q0 1 R\nq0 _ -> halt 1 L\n",
    "flip": "q0 0 -> q0 1 R\nq0 1 -> q0 0 R\nq0 _ -> halt _ L\n",
    "zigzag": ("q0 a -> q1 b R\nq1 a -> q0 a R\nq1 _ -> q2 a L\n"
               "q2 b -> q2 b L\nq2 a -> halt a R\n"),
}

TM_WORDS = {"increment": "11", "flip": "0110", "zigzag": "aaa"}


# ------------------------------------------- proof-structure enumeration

def _skeletons(n_leaves):
    if n_leaves == 1:
        return [None]
    out = []
    for k in range(1, n_leaves):
        for left in _skeletons(k):
            for right in _skeletons(n_leaves - k):
                for op in (mll.TENSOR, mll.PAR):
                    out.append((op, left, right))
    return out


def _leaf_count(sk):
    if sk is None:
        return 1
    return _leaf_count(sk[1]) + _leaf_count(sk[2])


def _fill(sk, it):
    if sk is None:
        return next(it)
    return (sk[0], _fill(sk[1], it), _fill(sk[2], it))


def _partitions(total, max_part, parts=()):
    if total == 0:
        yield parts
        return
    for p in range(min(total, max_part), 0, -1):
        yield from _partitions(total - p, p, parts + (p,))


def _pairings(items):
    if not items:
        yield ()
        return
    first = items[0]
    rest = items[1:]
    for k, _other in enumerate(rest):
        for sub in _pairings(rest[:k] + rest[k + 1:]):
            yield ((first, rest[k]),) + sub


def enumerate_structures(max_connectives=3, max_axioms=3):
    """Every cut-free proof-structure with the given resource bounds.

    Yields each distinct forest of connective skeletons once, with all
    perfect dual pairings of its atom slots and both orientations per
    axiom.
    """
    for n_ax in range(1, max_axioms + 1):
        n_leaves = 2 * n_ax
        for part in _partitions(n_leaves, n_leaves):
            n_conn = sum(p - 1 for p in part)
            if n_conn > max_connectives:
                continue
            pools = [_skeletons(p) for p in part]
            seen_forests = set()
            for combo in itertools.product(*pools):
                key = tuple(sorted(map(repr, combo)))
                if key in seen_forests:
                    continue
                seen_forests.add(key)
                slots = []
                for t, sk in enumerate(combo):
                    slots.extend((t, idx) for idx in range(_leaf_count(sk)))
                for pairing in _pairings(tuple(range(len(slots)))):
                    orientations = itertools.product(
                        (False, True), repeat=len(pairing))
                    for orient in orientations:
                        assign = {}
                        for k, ((a, b), flip) in enumerate(
                                zip(pairing, orient)):
                            assign[a] = mll.atom(k, flip)
                            assign[b] = mll.atom(k, not flip)
                        conclusions = []
                        pos = 0
                        for sk in combo:
                            n = _leaf_count(sk)
                            it = iter(assign[pos + i] for i in range(n))
                            conclusions.append(_fill(sk, it))
                            pos += n
                        paths = []
                        for t, f in enumerate(conclusions):
                            for path, _leaf in mll.leaves_of(f):
                                paths.append((("conc", t), path))
                        axioms = [(paths[a], paths[b]) for a, b in pairing]
                        yield mll.make_structure(conclusions, (), axioms)


# ------------------------------------------------- seeded case generators

def random_flat_argument(rng):
    """Colour-carried argument: mostly variables and constants."""
    if rng.random() < 0.55:
        return terms.var(rng.choice("XY"))
    if rng.random() < 0.6:
        return (rng.choice(("a", "b")),)
    return (rng.choice(("f", "g")), terms.var(rng.choice("XY")))


def random_deep_term(rng, depth=2):
    if depth == 0 or rng.random() < 0.4:
        if rng.random() < 0.5:
            return terms.var(rng.choice("XY"))
        return (rng.choice(("a", "b")),)
    sym = rng.choice(("f", "g", "h"))
    if sym == "h":
        return ("h", random_deep_term(rng, depth - 1),
                random_deep_term(rng, depth - 1))
    return (sym, random_deep_term(rng, depth - 1))


def random_confluence_case(rng):
    """A constellation of at most 5 stars and 3 rays per star with terms
    of depth <= 2, plus a random disjoint split of its colours."""
    palette = ["p", "q", "r", "s", "u", "w"]
    stars = []
    for _ in range(rng.randint(1, 5)):
        rays = []
        for _ in range(rng.randint(1, 3)):
            roll = rng.random()
            if roll < 0.3:
                rays.append((cons.NONE, random_deep_term(rng)))
            else:
                pol = cons.POS if roll < 0.65 else cons.NEG
                rays.append((pol, (rng.choice(palette),
                                   random_flat_argument(rng))))
        stars.append(tuple(rays))
    sigma = tuple(stars)
    present = sorted({r[1][0] for s in stars for r in s
                      if r[0] != cons.NONE})
    rng.shuffle(present)
    cut = rng.randint(0, len(present))
    return sigma, frozenset(present[:cut]), frozenset(present[cut:])


def random_member_constellation(rng, index):
    """Acyclic pipeline over a private namespace, sometimes a solvable
    loop; members for distinct indices occupy disjoint locations."""
    a = f"a{index}"
    b = f"b{index}"
    out = f"r{index}"
    fun = f"s{index}"
    const = (f"k{index}",)

    def random_term(depth):
        if depth <= 0 or rng.random() < 0.35:
            return terms.var(rng.choice("XYZ")) if rng.random() < 0.6 else const
        return (fun, random_term(depth - 1))

    if rng.random() < 0.1:
        v = terms.var("X")
        return ((cons.pos((a, v)), cons.neg((a, v)), cons.unp((out, v))),)

    source = (cons.pos((a, random_term(2))),)
    middle = (cons.neg((a, random_term(2))), cons.pos((b, random_term(2))))
    sink = (cons.neg((b, random_term(2))), cons.unp((out, random_term(2))))
    stars = [source, middle, sink]
    rng.shuffle(stars)
    return tuple(stars[:rng.randint(1, 3)])


def random_program(rng):
    """A layered definite program (facts p, rules q over p) with a query
    whose SLD tree is finite."""
    consts = ["a", "b", "c", "d"]
    clauses = []
    arity = {"p": rng.randint(1, 2)}
    for _ in range(rng.randint(2, 4)):
        args = tuple((rng.choice(consts),) for _ in range(arity["p"]))
        clauses.append(((1, ("p",) + args),))
    arity["q"] = rng.randint(1, 2)
    vnames = ["X", "Y", "Z"]
    for _ in range(rng.randint(1, 2)):
        body = []
        pool = []
        for _ in range(rng.randint(1, 2)):
            args = []
            for _k in range(arity["p"]):
                if pool and rng.random() < 0.5:
                    args.append(terms.var(rng.choice(pool)))
                else:
                    v = vnames[len(set(pool))] if len(set(pool)) < 3 else "X"
                    pool.append(v)
                    args.append(terms.var(v))
            body.append(("p",) + tuple(args))
        head_args = tuple(
            terms.var(rng.choice(pool)) for _ in range(arity["q"]))
        clauses.append(
            ((1, ("q",) + head_args),) + tuple((-1, b) for b in body))
    top = rng.choice(["q", "p"])
    qargs = []
    for k in range(arity[top]):
        if rng.random() < 0.3:
            qargs.append((rng.choice(consts),))
        else:
            qargs.append(terms.var(f"Q{k}"))
    query = ((top,) + tuple(qargs),)
    return tuple(clauses), query
