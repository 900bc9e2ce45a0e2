"""Multiplicative proof structures as constellations.

Formulas are atoms X_i / X_i^ (dual) combined with tensor and par. A proof
structure is a forest of formula trees (conclusions plus cut pairs) together
with a perfect pairing of its atom leaves into dual axiom links.

Every conclusion root k owns the unary address symbol p{k} and every cut
side owns k{j}; the atom at path d1..dm under a root C is addressed by the
term C(d1(...dm(x)...)). The vehicle packs each axiom into one binary star
over the two linked addresses with a shared variable.

Cut elimination is present twice: as the syntactic rewrite reduce_cut and as
plain execution of the vehicle against the cut stars (exec_structure); the
two agree on proof nets up to renaming.

Correctness is present twice as well: dr_correct / mix_correct inspect the
switched correction graphs directly, and stellar_correct runs the vehicle
against an ordeal constellation per switching. The ordeal wraps internal
node addresses with the reserved terminator g so parent and child test rays
match exactly and nothing else; a par star consumes only its switched child,
and the expected output is the single star of all conclusion addresses plus
one surviving +c ray per par (the unswitched side). With cuts present the
cut-side roots expose their bare address so the −c cut stars consume them;
that arrangement also creates spurious self-matches, so stellar_correct is
only reliable on cut-free structures and says so in its docstring.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

from stellres import constellations as cons
from stellres import engine
from stellres import terms
from stellres.constellations import Constellation, Star, NONE, POS, NEG

ATOM = "atom"
TENSOR = "tensor"
PAR = "par"

TEST_COLOUR = "t"
COMPUTE_COLOUR = "c"
TERMINATOR = "g"

PROOF_NET = "proof_net"
NOT_PROOF_NET = "not_proof_net"
UNKNOWN = "unknown"


class StructureError(ValueError):
    """Raised when a proof structure or derivation is ill-formed."""


class ReduceError(Exception):
    """Raised when cut reduction cannot proceed (no redex, vicious circle)."""


class ReconstructError(Exception):
    """Raised by reconstruct_proof_net; kind is one of not_proof_like,
    address_mismatch, cyclic."""

    def __init__(self, kind: str, message: str):
        super().__init__(message)
        self.kind = kind


# ---------------------------------------------------------------- formulas

def atom(index: int, dual: bool = False):
    if index < 0:
        raise StructureError("atom index must be non-negative")
    return (ATOM, index, dual)


def tensor(a, b):
    return (TENSOR, a, b)


def par(a, b):
    return (PAR, a, b)


def dual(f):
    if f[0] == ATOM:
        return (ATOM, f[1], not f[2])
    if f[0] == TENSOR:
        return (PAR, dual(f[1]), dual(f[2]))
    return (TENSOR, dual(f[1]), dual(f[2]))


def formula_to_text(f) -> str:
    if f[0] == ATOM:
        return f"X{f[1]}" + ("^" if f[2] else "")
    op = "*" if f[0] == TENSOR else "@"
    return f"({formula_to_text(f[1])} {op} {formula_to_text(f[2])})"


def parse_formula(text: str):
    """X1, X1^ (dual), * (tensor), @ (par), parentheses; ^ after ) dualises."""
    tokens = []
    i = 0
    while i < len(text):
        ch = text[i]
        if ch.isspace():
            i += 1
        elif ch in "()*@^":
            tokens.append(ch)
            i += 1
        elif ch == "X":
            j = i + 1
            while j < len(text) and text[j].isdigit():
                j += 1
            if j == i + 1:
                raise StructureError(f"expected digits after X at {i}")
            tokens.append(("X", int(text[i + 1:j])))
            i = j
        else:
            raise StructureError(f"unexpected character {ch!r} at {i}")

    pos = 0

    def peek():
        return tokens[pos] if pos < len(tokens) else None

    def primary():
        nonlocal pos
        tok = peek()
        if tok == "(":
            pos += 1
            f = expr()
            if peek() != ")":
                raise StructureError("expected )")
            pos += 1
        elif isinstance(tok, tuple):
            pos += 1
            f = atom(tok[1])
        else:
            raise StructureError(f"unexpected token {tok!r}")
        while peek() == "^":
            pos += 1
            f = dual(f)
        return f

    def expr():
        nonlocal pos
        f = primary()
        while peek() in ("*", "@"):
            op = peek()
            pos += 1
            g = primary()
            f = tensor(f, g) if op == "*" else par(f, g)
        return f

    f = expr()
    if pos != len(tokens):
        raise StructureError("trailing input in formula")
    return f


def subformula(f, path):
    for step in path:
        if f[0] == ATOM:
            raise StructureError(f"path {path} descends below an atom")
        f = f[1] if step == "l" else f[2]
    return f


def leaves_of(f, prefix=()):
    """All (path, atom formula) pairs of a formula tree."""
    if f[0] == ATOM:
        return [(prefix, f)]
    return leaves_of(f[1], prefix + ("l",)) + leaves_of(f[2], prefix + ("r",))


def internal_nodes(f, prefix=()):
    """All (path, kind) pairs for tensor/par nodes."""
    if f[0] == ATOM:
        return []
    return ([(prefix, f[0])]
            + internal_nodes(f[1], prefix + ("l",))
            + internal_nodes(f[2], prefix + ("r",)))


# ----------------------------------------------------------- structures

@dataclass(frozen=True)
class ProofStructure:
    """Conclusion formulas, cut formula pairs, and the axiom leaf pairing.

    Axiom endpoints are (root, path) with root ("conc", k) or ("cut", c,
    side); paths are tuples of "l"/"r". The constructor does not validate;
    use make_structure.
    """

    conclusions: tuple
    cuts: tuple
    axioms: tuple

    def roots(self):
        out = [(("conc", k), f) for k, f in enumerate(self.conclusions)]
        for c, (left, right) in enumerate(self.cuts):
            out.append((("cut", c, 0), left))
            out.append((("cut", c, 1), right))
        return out

    def formula_at(self, root):
        if root[0] == "conc":
            return self.conclusions[root[1]]
        return self.cuts[root[1]][root[2]]


def root_symbol(root) -> str:
    if root[0] == "conc":
        return f"p{root[1]}"
    return f"k{2 * root[1] + root[2]}"


def make_structure(conclusions, cuts=(), axioms=()) -> ProofStructure:
    """Validate and freeze a proof structure.

    Checks cut duality, that every axiom endpoint is an atom leaf, that the
    pairing is perfect (each leaf in exactly one axiom), and that paired
    atoms are dual.
    """
    conclusions = tuple(conclusions)
    cuts = tuple((left, right) for left, right in cuts)
    normalised = []
    for (r1, p1), (r2, p2) in axioms:
        a = (tuple(r1), tuple(p1))
        b = (tuple(r2), tuple(p2))
        normalised.append((a, b) if a <= b else (b, a))
    axioms = tuple(sorted(normalised))
    s = ProofStructure(conclusions, cuts, axioms)

    for left, right in cuts:
        if dual(left) != right:
            raise StructureError(
                f"cut pair is not dual: {formula_to_text(left)} vs "
                f"{formula_to_text(right)}")

    expected = {}
    for root, f in s.roots():
        for path, leaf in leaves_of(f):
            expected[(root, path)] = leaf
    seen = set()
    for end_a, end_b in axioms:
        for end in (end_a, end_b):
            if end not in expected:
                raise StructureError(f"axiom endpoint {end} is not an atom leaf")
            if end in seen:
                raise StructureError(f"leaf {end} is in two axioms")
            seen.add(end)
        if dual(expected[end_a]) != expected[end_b]:
            raise StructureError(
                f"axiom pairs non-dual atoms at {end_a} and {end_b}")
    missing = set(expected) - seen
    if missing:
        raise StructureError(f"leaves not covered by any axiom: {sorted(missing)}")
    return s


# ----------------------------------------------------------- derivations

def build_structure(derivation) -> ProofStructure:
    """Interpret a sequent derivation as a proof structure.

    Derivations are nested tuples:
      ("ax", i)                axiom on atom i: conclusions X_i, X_i^
      ("tensor", d, i, e, j)   conclusion i of d joined with j of e
      ("par", d, i, j)         conclusions i and j of d joined
      ("cut", d, i, e, j)      conclusion i of d cut against j of e
    Combined conclusions keep their order, minus the consumed ones, with the
    new formula appended last.
    """
    counter = itertools.count()

    def rec(d):
        if not isinstance(d, tuple) or not d:
            raise StructureError(f"ill-formed derivation node: {d!r}")
        rule = d[0]
        if rule == "ax":
            if len(d) != 2:
                raise StructureError("ax takes one atom index")
            i = d[1]
            a, b = next(counter), next(counter)
            return ([(ATOM, i, False, a), (ATOM, i, True, b)], [], [{a, b}])
        if rule == "tensor" or rule == "cut":
            if len(d) != 5:
                raise StructureError(f"{rule} takes (d, i, e, j)")
            _, left, i, right, j = d
            lc, lcuts, lax = rec(left)
            rc, rcuts, rax = rec(right)
            if not (0 <= i < len(lc)) or not (0 <= j < len(rc)):
                raise StructureError(f"{rule} index out of range")
            a = lc[i]
            b = rc[j]
            rest = lc[:i] + lc[i + 1:] + rc[:j] + rc[j + 1:]
            cuts = lcuts + rcuts
            if rule == "tensor":
                return (rest + [(TENSOR, a, b)], cuts, lax + rax)
            if strip(a) != dual(strip(b)):
                raise StructureError(
                    f"cut on non-dual conclusions: {formula_to_text(strip(a))}"
                    f" vs {formula_to_text(strip(b))}")
            return (rest, cuts + [(a, b)], lax + rax)
        if rule == "par":
            if len(d) != 4:
                raise StructureError("par takes (d, i, j)")
            _, inner, i, j = d
            ic, icuts, iax = rec(inner)
            if i == j or not (0 <= i < len(ic)) or not (0 <= j < len(ic)):
                raise StructureError("par indices out of range or equal")
            a, b = ic[i], ic[j]
            rest = [f for k, f in enumerate(ic) if k != i and k != j]
            return (rest + [(PAR, a, b)], icuts, iax)
        raise StructureError(f"unknown rule {rule!r}")

    def strip(tree):
        if tree[0] == ATOM:
            return (ATOM, tree[1], tree[2])
        return (tree[0], strip(tree[1]), strip(tree[2]))

    def leaf_positions(tree, prefix=()):
        if tree[0] == ATOM:
            return [(prefix, tree[3])]
        return (leaf_positions(tree[1], prefix + ("l",))
                + leaf_positions(tree[2], prefix + ("r",)))

    concs, cuts, pairs = rec(derivation)
    position_of = {}
    for k, tree in enumerate(concs):
        for path, leaf_id in leaf_positions(tree):
            position_of[leaf_id] = (("conc", k), path)
    for c, (lt, rt) in enumerate(cuts):
        for path, leaf_id in leaf_positions(lt):
            position_of[leaf_id] = (("cut", c, 0), path)
        for path, leaf_id in leaf_positions(rt):
            position_of[leaf_id] = (("cut", c, 1), path)
    axioms = [tuple(sorted(position_of[x] for x in pair)) for pair in pairs]
    return make_structure(
        [strip(t) for t in concs],
        [(strip(l), strip(r)) for l, r in cuts],
        axioms)


def parse_derivation(text: str):
    """S-expression derivations: (ax 1), (tensor D i E j), (par D i j),
    (cut D i E j). Atom indices and conclusion indices are integers."""
    tokens = text.replace("(", " ( ").replace(")", " ) ").split()
    pos = 0

    def rec():
        nonlocal pos
        if pos >= len(tokens):
            raise StructureError("unexpected end of derivation")
        tok = tokens[pos]
        if tok != "(":
            raise StructureError(f"expected ( at token {pos}, got {tok!r}")
        pos += 1
        head = tokens[pos]
        pos += 1
        items = [head]
        while pos < len(tokens) and tokens[pos] != ")":
            if tokens[pos] == "(":
                items.append(rec())
            else:
                items.append(int(tokens[pos]))
                pos += 1
        if pos >= len(tokens):
            raise StructureError("missing )")
        pos += 1
        return tuple(items)

    d = rec()
    if pos != len(tokens):
        raise StructureError("trailing input after derivation")
    return d


# ------------------------------------------------------------- addresses

_X = terms.var("x")


def _wrap(path, core):
    t = core
    for step in reversed(path):
        t = (step, t)
    return t


def address_of(s: ProofStructure, root, path, core=_X):
    """p{k}(d1(...dm(core)...)) for the node at path under the root."""
    subformula(s.formula_at(root), path)
    return (root_symbol(root), _wrap(path, core))


def sharp_addresses(s: ProofStructure):
    """Unpolarised address rays of all conclusion atom occurrences."""
    out = []
    for k, f in enumerate(s.conclusions):
        for path, _leaf in leaves_of(f):
            out.append((NONE, address_of(s, ("conc", k), path)))
    return out


def vehicle(s: ProofStructure) -> Constellation:
    """One binary star per axiom over its two addresses, variable shared."""
    stars = []
    for (r1, p1), (r2, p2) in s.axioms:
        stars.append((
            (NONE, address_of(s, r1, p1)),
            (NONE, address_of(s, r2, p2)),
        ))
    return tuple(stars)


def cut_constellation(s: ProofStructure) -> Constellation:
    """One binary star per cut over the bare addresses of its two sides."""
    stars = []
    for c in range(len(s.cuts)):
        stars.append((
            (NONE, (root_symbol(("cut", c, 0)), _X)),
            (NONE, (root_symbol(("cut", c, 1)), _X)),
        ))
    return tuple(stars)


def exec_structure(s: ProofStructure, fuel: int = 64) -> engine.ExecutionResult:
    """Run the structure: +c vehicle against −c cut stars, tree-like."""
    sigma = cons.union(
        cons.colourize(COMPUTE_COLOUR, POS, vehicle(s)),
        cons.colourize(COMPUTE_COLOUR, NEG, cut_constellation(s)))
    return engine.execute(sigma, colours={COMPUTE_COLOUR}, fuel=fuel,
                          tree_only=True)


def decolourize(sigma: Constellation) -> Constellation:
    """Strip polarity and unary colour heads, inverse of colourize on
    constellations of formerly unpolarised rays."""
    out = []
    for star in sigma:
        rays = []
        for pol, term in star:
            if pol == NONE:
                rays.append((pol, term))
            elif len(term) == 2:
                rays.append((NONE, term[1]))
            else:
                raise ValueError(
                    "cannot decolourize a ray with a non-unary colour")
        out.append(tuple(rays))
    return tuple(out)


# ------------------------------------------------------------- reduction

def reduce_cut(s: ProofStructure, index: int = 0) -> ProofStructure:
    """One cut-elimination step.

    Atomic cut: both sides are axiom-linked atoms; the two axioms fuse into
    one linking their outer endpoints. A cut whose two sides are linked by
    the same axiom is a vicious circle and raises ReduceError. Connective
    cut: tensor against par splits into the two child cuts, appended last.
    """
    if not s.cuts:
        raise ReduceError("no redex: structure is cut-free")
    if not (0 <= index < len(s.cuts)):
        raise ReduceError(f"no cut at index {index}")
    left, right = s.cuts[index]
    left_root = ("cut", index, 0)
    right_root = ("cut", index, 1)

    def renumber(root, removed, added_pairs):
        """Map old cut indices past the removed one; conclusions unchanged."""
        if root[0] == "conc":
            return root
        c = root[1]
        if c == removed:
            raise AssertionError("endpoint of the reduced cut not rewired")
        new_c = c - 1 if c > removed else c
        return ("cut", new_c, root[2])

    if left[0] == ATOM:
        partner = {}
        for end_a, end_b in s.axioms:
            partner[end_a] = end_b
            partner[end_b] = end_a
        q = partner[(left_root, ())]
        p = partner[(right_root, ())]
        if q == (right_root, ()):
            raise ReduceError("vicious circle: cut on a single axiom")
        new_axioms = []
        for end_a, end_b in s.axioms:
            ends = {end_a, end_b}
            if (left_root, ()) in ends or (right_root, ()) in ends:
                continue
            new_axioms.append((end_a, end_b))
        new_axioms.append((p, q))
        cuts = s.cuts[:index] + s.cuts[index + 1:]
        remapped = [
            ((renumber(r1, index, 0), p1), (renumber(r2, index, 0), p2))
            for (r1, p1), (r2, p2) in new_axioms]
        return make_structure(s.conclusions, cuts, remapped)

    # connective cut: pair children left-left and right-right
    new_cuts = list(s.cuts[:index] + s.cuts[index + 1:])
    first = len(new_cuts)
    new_cuts.append((left[1], right[1]))
    new_cuts.append((left[2], right[2]))

    def rewire(root, path):
        if root == left_root:
            side = 0
        elif root == right_root:
            side = 1
        else:
            return renumber(root, index, 2), path
        if not path:
            raise AssertionError("connective cut root cannot be a leaf")
        new_c = first if path[0] == "l" else first + 1
        return ("cut", new_c, side), path[1:]

    remapped = [
        (rewire(r1, p1), rewire(r2, p2))
        for (r1, p1), (r2, p2) in s.axioms]
    return make_structure(s.conclusions, new_cuts, remapped)


def normal_form(s: ProofStructure, max_steps: int = 10000) -> ProofStructure:
    """Reduce cuts until none remain; propagates vicious-circle errors."""
    steps = 0
    while s.cuts:
        s = reduce_cut(s, 0)
        steps += 1
        if steps > max_steps:
            raise ReduceError("cut reduction did not terminate in max_steps")
    return s


# ------------------------------------------------------------ correctness

def switchings(s: ProofStructure):
    """All total maps from par node positions to 'l'/'r'."""
    pars = []
    for root, f in s.roots():
        for path, kind in internal_nodes(f):
            if kind == PAR:
                pars.append((root, path))
    for choice in itertools.product("lr", repeat=len(pars)):
        yield dict(zip(pars, choice))


def correction_graph(s: ProofStructure, switching):
    """(vertices, edges) of the switched graph.

    Vertices are (root, path) formula nodes; tensors keep both child edges,
    pars keep only the switched child, cuts bridge their two roots, axioms
    bridge their leaves.
    """
    vertices = []
    edges = []
    for root, f in s.roots():
        vertices.append((root, ()))
        for path, kind in internal_nodes(f):
            for step in ("l", "r"):
                if kind == PAR and switching[(root, path)] != step:
                    continue
                edges.append(((root, path), (root, path + (step,))))
        for path, _leaf in leaves_of(f):
            if path:
                vertices.append((root, path))
        for path, _kind in internal_nodes(f):
            if path:
                vertices.append((root, path))
    for c in range(len(s.cuts)):
        edges.append(((("cut", c, 0), ()), (("cut", c, 1), ())))
    for end_a, end_b in s.axioms:
        edges.append((end_a, end_b))
    return tuple(sorted(set(vertices))), tuple(sorted(edges))


def _acyclic_connected(vertices, edges):
    index = {v: i for i, v in enumerate(vertices)}
    parent = list(range(len(vertices)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    acyclic = True
    for a, b in edges:
        ra, rb = find(index[a]), find(index[b])
        if ra == rb:
            acyclic = False
        else:
            parent[ra] = rb
    components = len({find(i) for i in range(len(vertices))})
    return acyclic, components <= 1


def dr_correct(s: ProofStructure) -> bool:
    """Every switched correction graph is a tree."""
    for sw in switchings(s):
        acyclic, connected = _acyclic_connected(*correction_graph(s, sw))
        if not (acyclic and connected):
            return False
    return True


def mix_correct(s: ProofStructure) -> bool:
    """Every switched correction graph is acyclic (forests allowed)."""
    for sw in switchings(s):
        acyclic, _connected = _acyclic_connected(*correction_graph(s, sw))
        if not acyclic:
            return False
    return True


# ----------------------------------------------------------------- ordeal

def _q_address(s, root, path):
    return address_of(s, root, path, (TERMINATOR, _X))


def ordeal(s: ProofStructure, switching) -> Constellation:
    """The test constellation for one switching.

    Per atom leaf: [−t.addr, +c.q]; per tensor: both children consumed, own
    q emitted; per par: switched child consumed, own q emitted; per
    conclusion: [p{k}(x), −c.q(root)]. Every q address wraps the terminator
    g innermost so only parent/child pairs match; a per-cut handshake star
    consumes the root q of both cut sides the same way, which keeps bare
    addresses out of the test and cut roots from matching anything else.
    """
    stars = []
    for root, f in s.roots():

        def emission(path, root=root):
            return (POS, (COMPUTE_COLOUR, _q_address(s, root, path)))

        for path, _leaf in leaves_of(f):
            stars.append((
                (NEG, (TEST_COLOUR, address_of(s, root, path))),
                emission(path),
            ))
        for path, kind in internal_nodes(f):
            if kind == TENSOR:
                stars.append((
                    (NEG, (COMPUTE_COLOUR, _q_address(s, root, path + ("l",)))),
                    (NEG, (COMPUTE_COLOUR, _q_address(s, root, path + ("r",)))),
                    emission(path),
                ))
            else:
                side = switching[(root, path)]
                stars.append((
                    (NEG, (COMPUTE_COLOUR, _q_address(s, root, path + (side,)))),
                    emission(path),
                ))
        if root[0] == "conc":
            stars.append((
                (NONE, (root_symbol(root), _X)),
                (NEG, (COMPUTE_COLOUR, _q_address(s, root, ()))),
            ))
    for c in range(len(s.cuts)):
        stars.append((
            (NEG, (COMPUTE_COLOUR, _q_address(s, ("cut", c, 0), ()))),
            (NEG, (COMPUTE_COLOUR, _q_address(s, ("cut", c, 1), ()))),
        ))
    return tuple(stars)


def expected_test_output(s: ProofStructure, switching) -> Star:
    """The single star a passing test run contracts to: one unpolarised
    address ray per conclusion plus one +c ray per par (its unswitched
    child's q address), all sharing one variable."""
    rays = [(NONE, (root_symbol(("conc", k)), _X))
            for k in range(len(s.conclusions))]
    for root, f in s.roots():
        for path, kind in internal_nodes(f):
            if kind == PAR:
                side = switching[(root, path)]
                other = "r" if side == "l" else "l"
                rays.append(
                    (POS, (COMPUTE_COLOUR, _q_address(s, root, path + (other,)))))
    return tuple(rays)


def test_constellation(s: ProofStructure, switching) -> Constellation:
    return cons.union(
        cons.colourize(TEST_COLOUR, POS, vehicle(s)),
        ordeal(s, switching))


def switching_tests(s: ProofStructure, fuel: int = 64):
    """Run every switching test once; (correctness verdict, normalisation).

    The correctness verdict is proof_net / not_proof_net / unknown: a
    switching passes when its tree-like execution completes with exactly
    the expected single star; a divergence certificate or a wrong output
    refuses definitively; fuel exhaustion leaves unknown. The normalisation
    verdict ignores outputs: True when every switching execution completes,
    False on any divergence certificate, None when fuel intervenes.
    """
    sigma_vehicle = cons.colourize(TEST_COLOUR, POS, vehicle(s))
    verdict = PROOF_NET
    normalising = True
    for sw in switchings(s):
        sigma = cons.union(sigma_vehicle, ordeal(s, sw))
        result = engine.execute(
            sigma, colours={TEST_COLOUR, COMPUTE_COLOUR}, fuel=fuel,
            tree_only=True)
        if result.status == engine.DIVERGENT:
            return NOT_PROOF_NET, False
        if result.status == engine.FUEL_EXHAUSTED:
            if verdict == PROOF_NET:
                verdict = UNKNOWN
            normalising = None
            continue
        expected = expected_test_output(s, sw)
        if len(result.output) != 1 or not cons.alpha_equivalent(
                result.output[0], expected):
            verdict = NOT_PROOF_NET
    return verdict, normalising


def switching_label(switching) -> dict:
    """Render a switching as a {node: choice} dict with stable string keys."""
    out = {}
    for (root, path), choice in sorted(switching.items()):
        key = root_symbol(root) + ("." + ".".join(path) if path else "")
        out[key] = choice
    return out


def switching_report(s: ProofStructure, fuel: int = 64) -> dict:
    """Per-switching test outcomes plus the aggregate verdicts.

    Unlike switching_tests this runs every switching even after a
    refusal, so callers get one entry per switching with its status,
    whether the output matched the expected test star, the raw output
    stars, and a divergence certificate when there is one.
    """
    sigma_vehicle = cons.colourize(TEST_COLOUR, POS, vehicle(s))
    entries = []
    verdict = PROOF_NET
    normalising = True
    for sw in switchings(s):
        sigma = cons.union(sigma_vehicle, ordeal(s, sw))
        result = engine.execute(
            sigma, colours={TEST_COLOUR, COMPUTE_COLOUR}, fuel=fuel,
            tree_only=True)
        entry = {"switching": switching_label(sw), "status": result.status,
                 "output": result.output}
        if result.status == engine.DIVERGENT:
            entry["passed"] = False
            entry["certificate"] = result.divergence
            verdict = NOT_PROOF_NET
            normalising = False
        elif result.status == engine.FUEL_EXHAUSTED:
            entry["passed"] = None
            if verdict == PROOF_NET:
                verdict = UNKNOWN
            if normalising is True:
                normalising = None
        else:
            expected = expected_test_output(s, sw)
            passed = len(result.output) == 1 and cons.alpha_equivalent(
                result.output[0], expected)
            entry["passed"] = passed
            if not passed:
                verdict = NOT_PROOF_NET
        entries.append(entry)
    return {"verdict": verdict, "normalising": normalising,
            "switchings": entries}


def stellar_correct(s: ProofStructure, fuel: int = 64) -> str:
    """proof_net / not_proof_net / unknown by running every switching test."""
    verdict, _normalising = switching_tests(s, fuel)
    return verdict


def test_strongly_normalising(s: ProofStructure, fuel: int = 64):
    """The strong-normalisation half of the switching tests: True when every
    switching's test execution completes, False on any divergence
    certificate, None when fuel runs out first."""
    _verdict, normalising = switching_tests(s, fuel)
    return normalising


def dynamics_check(s: ProofStructure, fuel: int = 64):
    """Compare execution against syntactic cut elimination.

    Requires dr_correct; returns True/False on completed runs, None when the
    execution exhausts fuel.
    """
    if not dr_correct(s):
        raise StructureError("dynamics_check requires a proof net")
    result = exec_structure(s, fuel)
    if result.status == engine.FUEL_EXHAUSTED:
        return None
    reduced = cons.colourize(COMPUTE_COLOUR, POS, vehicle(normal_form(s)))
    return cons.constellations_alpha_equal(result.output, reduced)


# ------------------------------------------------------- reconstruction

def _ray_address(term, n_conclusions):
    """(conclusion index, path, variable key) of an address term."""
    if terms.is_var(term) or len(term) != 2:
        raise ReconstructError("not_proof_like", f"ray is not an address: {term}")
    sym = term[0]
    if not sym.startswith("p"):
        raise ReconstructError("not_proof_like", f"unknown root symbol {sym}")
    try:
        k = int(sym[1:])
    except ValueError:
        raise ReconstructError("not_proof_like", f"unknown root symbol {sym}")
    if not (0 <= k < n_conclusions):
        raise ReconstructError(
            "address_mismatch", f"address {sym} beyond the conclusion list")
    path = []
    inner = term[1]
    while not terms.is_var(inner):
        if len(inner) != 2 or inner[0] not in ("l", "r"):
            raise ReconstructError(
                "address_mismatch", f"address path has a stray symbol: {inner}")
        path.append(inner[0])
        inner = inner[1]
    return k, tuple(path), inner[1]


def reconstruct_proof_net(sig: Constellation, conclusions) -> ProofStructure:
    """Read a binary-star constellation as the axiom set of the conclusions.

    Raises ReconstructError(kind) with kind not_proof_like (shape violation),
    address_mismatch (addresses that do not name dual atom leaves exactly
    once each), or cyclic (the pairing is not MIX-correct).
    """
    conclusions = tuple(conclusions)
    leaf_atoms = {}
    for k, f in enumerate(conclusions):
        for path, leaf in leaves_of(f):
            leaf_atoms[(k, path)] = leaf

    axioms = []
    used = set()
    for star in sig:
        if len(star) != 2:
            raise ReconstructError(
                "not_proof_like", f"star of arity {len(star)} is not an axiom")
        if any(pol != NONE for pol, _ in star):
            raise ReconstructError("not_proof_like", "axiom rays are polarised")
        (k1, path1, v1) = _ray_address(star[0][1], len(conclusions))
        (k2, path2, v2) = _ray_address(star[1][1], len(conclusions))
        if v1 != v2:
            raise ReconstructError(
                "not_proof_like", "axiom star does not share its variable")
        for key in ((k1, path1), (k2, path2)):
            if key not in leaf_atoms:
                raise ReconstructError(
                    "address_mismatch", f"no atom at conclusion {key[0]} "
                    f"path {'.'.join(key[1]) or 'root'}")
            if key in used:
                raise ReconstructError(
                    "address_mismatch", f"leaf {key} paired twice")
            used.add(key)
        if dual(leaf_atoms[(k1, path1)]) != leaf_atoms[(k2, path2)]:
            raise ReconstructError(
                "address_mismatch", "axiom star pairs non-dual atoms")
        axioms.append(((("conc", k1), path1), (("conc", k2), path2)))
    missing = set(leaf_atoms) - used
    if missing:
        raise ReconstructError(
            "address_mismatch", f"unpaired atom leaves: {sorted(missing)}")
    s = make_structure(conclusions, (), axioms)
    if not mix_correct(s):
        raise ReconstructError("cyclic", "the pairing induces a switched cycle")
    return s


def is_proof_like(sig: Constellation, addresses) -> bool:
    """Binary unpolarised stars whose location equals the address set."""
    from stellres import realisability
    for star in sig:
        if len(star) != 2:
            return False
    have = {cons.canonical_star((r,)) for r in realisability.location(sig)}
    want = {cons.canonical_star((r,))
            for r in realisability.prefix_reduce(tuple(addresses))}
    return have == want


# ------------------------------------------------------------ generation

def random_derivation(rng, max_rules: int = 5, atom_count: int = 3):
    """A random derivation with at most max_rules rule applications."""

    def _conclusions(d):
        return build_structure(d).conclusions

    def rules_in(d):
        if d[0] == "ax":
            return 1
        if d[0] == "par":
            return 1 + rules_in(d[1])
        return 1 + rules_in(d[1]) + rules_in(d[3])

    def eta_pair(f):
        """A derivation of the two-conclusion sequent f, dual(f), built by
        unfolding f connective by connective."""
        if f[0] == ATOM:
            return ("ax", f[1])
        da = eta_pair(f[1])
        db = eta_pair(f[2])
        if f[0] == TENSOR:
            ia = _conclusions(da).index(f[1])
            ib = _conclusions(db).index(f[2])
        else:
            ia = _conclusions(da).index(dual(f[1]))
            ib = _conclusions(db).index(dual(f[2]))
        # both subderivations are binary, so the leftovers sit at 0 and 1
        return ("par", ("tensor", da, ia, db, ib), 0, 1)

    d = ("ax", rng.randrange(atom_count))
    budget = max_rules - 1
    while budget > 0:
        concs = _conclusions(d)
        choice = rng.random()
        if choice < 0.35 and len(concs) >= 2:
            i, j = rng.sample(range(len(concs)), 2)
            d = ("par", d, i, j)
            budget -= 1
        elif choice < 0.7:
            e = ("ax", rng.randrange(atom_count))
            i = rng.randrange(len(concs))
            d = ("tensor", d, i, e, rng.randrange(2))
            budget -= 2
        else:
            i = rng.randrange(len(concs))
            target = dual(concs[i])
            e = eta_pair(target)
            ce = _conclusions(e)
            j = ce.index(target)
            extra = rules_in(e)
            if extra + 1 > budget:
                budget -= 1
                continue
            d = ("cut", d, i, e, j)
            budget -= 1 + extra
    return d


# ---------------------------------------------------------------- export

def structure_to_text(s: ProofStructure) -> str:
    lines = []
    for k, f in enumerate(s.conclusions):
        lines.append(f"conclusion {k}: {formula_to_text(f)}")
    for c, (left, right) in enumerate(s.cuts):
        lines.append(
            f"cut {c}: {formula_to_text(left)} | {formula_to_text(right)}")

    def endpoint(root, path):
        return root_symbol(root) + "." + (".".join(path) if path else "e")

    for (r1, p1), (r2, p2) in s.axioms:
        lines.append(f"ax: {endpoint(r1, p1)} ~ {endpoint(r2, p2)}")
    return "\n".join(lines)


def _parse_endpoint(text: str):
    parts = text.strip().split(".")
    sym = parts[0]
    path = tuple(p for p in parts[1:] if p != "e")
    if any(p not in ("l", "r") for p in path):
        raise StructureError(f"axiom path steps must be l or r: {text!r}")
    if sym.startswith("p") and sym[1:].isdigit():
        root = ("conc", int(sym[1:]))
    elif sym.startswith("k") and sym[1:].isdigit():
        j = int(sym[1:])
        root = ("cut", j // 2, j % 2)
    else:
        raise StructureError(f"bad axiom endpoint root {sym!r}")
    return (root, path)


def parse_structure(text: str) -> ProofStructure:
    """Inverse of structure_to_text.

    Lines are `conclusion K: FORMULA`, `cut C: FORMULA | FORMULA`, and
    `ax: END ~ END` with END a root symbol (pK or kJ) followed by a dot
    path of l/r steps, or .e for the root itself.  Blank lines and #
    comments are skipped; indices must be dense from zero.
    """
    conclusions: dict = {}
    cuts: dict = {}
    axioms = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        head, sep, rest = line.partition(":")
        if not sep:
            raise StructureError(f"expected `kind: body` line: {line!r}")
        parts = head.split()
        if parts[0] == "conclusion" and len(parts) == 2:
            conclusions[int(parts[1])] = parse_formula(rest)
        elif parts[0] == "cut" and len(parts) == 2:
            left, bar, right = rest.partition("|")
            if not bar:
                raise StructureError(f"cut line needs `left | right`: {line!r}")
            cuts[int(parts[1])] = (parse_formula(left), parse_formula(right))
        elif parts[0] == "ax" and len(parts) == 1:
            one, tilde, two = rest.partition("~")
            if not tilde:
                raise StructureError(f"ax line needs `end ~ end`: {line!r}")
            axioms.append((_parse_endpoint(one), _parse_endpoint(two)))
        else:
            raise StructureError(f"unknown structure line kind: {line!r}")
    try:
        conc = [conclusions[i] for i in range(len(conclusions))]
        cut_list = [cuts[i] for i in range(len(cuts))]
    except KeyError as missing:
        raise StructureError(f"indices must be dense from zero, missing {missing}")
    return make_structure(conc, cut_list, axioms)


def correction_graph_to_dot(s: ProofStructure, switching) -> str:
    vertices, edges = correction_graph(s, switching)
    name = {v: f"n{i}" for i, v in enumerate(vertices)}
    lines = ["graph correction {", "  node [shape=ellipse];"]
    for v in vertices:
        root, path = v
        label = root_symbol(root) + ("." + ".".join(path) if path else "")
        f = subformula(s.formula_at(root), path)
        lines.append(f'  {name[v]} [label="{label}: {formula_to_text(f)}"];')
    for a, b in edges:
        lines.append(f"  {name[a]} -- {name[b]};")
    lines.append("}")
    return "\n".join(lines)
