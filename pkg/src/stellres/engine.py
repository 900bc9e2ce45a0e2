"""Diagram construction and execution.

The engine connects dual rays of a constellation into diagrams and evaluates
the correct saturated ones:

* the unification graph has one vertex per star occurrence and one edge per
  pair of dual ray slots (opposite polarity, same active colour, matchable
  underlying terms); loops and parallel edges are kept;
* a diagram is a connected multigraph of vertices labelled with star
  occurrences, every edge mapped to a unification-graph edge, no vertex using
  one ray slot twice; several vertices may share one occurrence (copies);
* a diagram is saturated when no unused polarised slot of any vertex has any
  partner in the unification graph (non-extendability, the same test in tree
  and general mode, since a partnered free slot always admits a fresh pendant
  copy);
* a diagram is correct when it has at least one free ray slot and its edge
  equations (per-vertex renamed) are solvable; its actualisation is the star
  of its resolved free rays;
* execution is the multiset of actualisations of all correct saturated
  diagrams up to isomorphism, reported with a status:
  - complete: the bounded search provably exhausted the diagram space,
  - fuel_exhausted: solvable extendable diagrams of the size bound remain,
  - divergent: a certificate proves the space is infinite — a slot-respecting
    cycle whose closed diagram is solvable, so its unrollings give correct
    diagrams of every size. The certificate is attached to the result.

Strong normalisation is the operational reading: yes when the search
completes, no when a divergence certificate exists, unknown on fuel.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

from stellres import kernel
from stellres import constellations as cons
from stellres import terms
from stellres.constellations import Constellation, Star, NONE

COMPLETE = "complete"
FUEL_EXHAUSTED = "fuel_exhausted"
DIVERGENT = "divergent"

_STATUS_RANK = {COMPLETE: 0, FUEL_EXHAUSTED: 1, DIVERGENT: 2}


def dual(r1, r2, colours) -> bool:
    """Opposite polarity, same active colour, matchable underlying terms."""
    p1, t1 = r1
    p2, t2 = r2
    if p1 == NONE or p2 == NONE or p1 == p2:
        return False
    if t1[0] != t2[0] or t1[0] not in colours:
        return False
    return kernel.matchable(t1, t2)


@dataclass(frozen=True)
class UnificationGraph:
    sigma: Constellation
    colours: frozenset
    edges: tuple  # ((occ_a, slot_a, occ_b, slot_b), ...) with (a, sa) <= (b, sb)

    def adjacency(self) -> dict:
        adj: dict = {}
        for eid, (a, sa, b, sb) in enumerate(self.edges):
            adj.setdefault((a, sa), []).append((eid, b, sb))
            adj.setdefault((b, sb), []).append((eid, a, sa))
        return adj

    def partnered_slots(self) -> dict:
        out: dict = {}
        for a, sa, b, sb in self.edges:
            out.setdefault(a, set()).add(sa)
            out.setdefault(b, set()).add(sb)
        return out


def unification_graph(sigma: Constellation, colours=None) -> UnificationGraph:
    """All dual-ray slot pairs of sigma over the active colours."""
    if colours is None:
        _, colours = cons.signature_of(sigma)
    colours = frozenset(colours)
    buckets: dict = {}
    for occ, s in enumerate(sigma):
        for slot, (pol, term) in enumerate(s):
            if pol != NONE and term[0] in colours:
                buckets.setdefault((term[0], pol), []).append((occ, slot, term))
    edges = []
    for (colour, pol), plus_side in buckets.items():
        if pol != cons.POS:
            continue
        minus_side = buckets.get((colour, cons.NEG), [])
        for occ_a, slot_a, term_a in plus_side:
            for occ_b, slot_b, term_b in minus_side:
                if kernel.matchable(term_a, term_b):
                    if (occ_a, slot_a) <= (occ_b, slot_b):
                        edges.append((occ_a, slot_a, occ_b, slot_b))
                    else:
                        edges.append((occ_b, slot_b, occ_a, slot_a))
    return UnificationGraph(tuple(sigma), colours, tuple(sorted(edges)))


@dataclass(frozen=True)
class Diagram:
    """A connected multigraph over star occurrences.

    stars maps vertex index to star occurrence; edges are
    (u, slot_u, v, slot_v) with (u, slot_u) <= (v, slot_v).
    """

    stars: tuple
    edges: tuple

    def size(self) -> int:
        return len(self.stars)

    def used_slots(self) -> dict:
        used: dict = {}
        for u, su, v, sv in self.edges:
            used.setdefault(u, set()).add(su)
            used.setdefault(v, set()).add(sv)
        return used

    def free_slots(self, sigma: Constellation) -> list:
        used = self.used_slots()
        out = []
        for vertex, occ in enumerate(self.stars):
            for slot in range(len(sigma[occ])):
                if slot not in used.get(vertex, ()):
                    out.append((vertex, slot))
        return out

    def is_tree(self) -> bool:
        if len(self.edges) != len(self.stars) - 1:
            return False
        return not any(u == v for u, _, v, _ in self.edges)


def underlying_problem(diagram: Diagram, sigma: Constellation) -> list:
    """One equation per edge, star variables renamed per diagram vertex."""
    eqs = []
    for u, su, v, sv in diagram.edges:
        t = terms.rename_apart(sigma[diagram.stars[u]][su][1], u)
        w = terms.rename_apart(sigma[diagram.stars[v]][sv][1], v)
        eqs.append((t, w))
    return eqs


def _tagged_eqs(diagram: Diagram, sigma: Constellation):
    for u, su, v, sv in diagram.edges:
        yield (sigma[diagram.stars[u]][su][1], u,
               sigma[diagram.stars[v]][sv][1], v)


def is_correct(diagram: Diagram, sigma: Constellation) -> bool:
    """Free rays present and the underlying problem solvable."""
    if not diagram.free_slots(sigma):
        return False
    return kernel.solve_tagged_eqs(list(_tagged_eqs(diagram, sigma))) is not None


def actualise(diagram: Diagram, sigma: Constellation) -> Star:
    """Star of the diagram's resolved free rays (source order)."""
    subst = kernel.solve_tagged_eqs(list(_tagged_eqs(diagram, sigma)))
    if subst is None:
        raise ValueError("diagram is not correct: unsolvable underlying problem")
    free = diagram.free_slots(sigma)
    if not free:
        raise ValueError("diagram is not correct: no free rays")
    rays = []
    for vertex, slot in free:
        pol, term = sigma[diagram.stars[vertex]][slot]
        rays.append((pol, kernel.resolve_tagged(term, vertex, subst)))
    return tuple(rays)


def _edge_key(u, su, v, sv):
    return (u, su, v, sv) if (u, su) <= (v, sv) else (v, sv, u, su)


def _certificate(stars, edges, order):
    position = {v: i for i, v in enumerate(order)}
    labels = tuple(stars[v] for v in order)
    mapped = tuple(sorted(
        _edge_key(position[u], su, position[v], sv) for u, su, v, sv in edges))
    return (labels, mapped)


def _refine(stars, edges, colour):
    n = len(stars)
    incident = [[] for _ in range(n)]
    for u, su, v, sv in edges:
        incident[u].append((su, v, sv))
        incident[v].append((sv, u, su))
    while True:
        signatures = []
        for v in range(n):
            sig = tuple(sorted((s, colour[w], sw) for s, w, sw in incident[v]))
            signatures.append((colour[v], sig))
        ordered = {sig: i for i, sig in enumerate(sorted(set(signatures)))}
        new = [ordered[signatures[v]] for v in range(n)]
        if new == colour:
            return colour
        colour = new


def canonical_diagram_key(stars, edges):
    """Canonical form of a diagram up to label-preserving isomorphism.

    Vertices may only be exchanged when they map to the same star occurrence
    (the homomorphism is part of the diagram's identity), so the refinement
    is seeded with the occurrence labels.
    """
    n = len(stars)
    base = {occ: i for i, occ in enumerate(sorted(set(stars)))}
    colour = _refine(stars, edges, [base[occ] for occ in stars])

    def classes_of(col):
        by: dict = {}
        for v in range(n):
            by.setdefault(col[v], []).append(v)
        return by

    best = [None]

    def descend(col):
        by = classes_of(col)
        target = None
        for c in sorted(by):
            if len(by[c]) > 1:
                target = by[c]
                break
        if target is None:
            order = sorted(range(n), key=lambda v: col[v])
            cert = _certificate(stars, edges, order)
            if best[0] is None or cert < best[0]:
                best[0] = cert
            return
        for v in target:
            branched = [(c, 0) if w == v else (c, 1) for w, c in enumerate(col)]
            compress = {val: i for i, val in enumerate(sorted(set(branched)))}
            descend(_refine(stars, edges, [compress[val] for val in branched]))

    descend(colour)
    return best[0]


class _Node:
    __slots__ = ("stars", "edges", "used", "subst", "key")

    def __init__(self, stars, edges, used, subst, key):
        self.stars = stars
        self.edges = edges
        self.used = used
        self.subst = subst
        self.key = key

    def diagram(self) -> Diagram:
        return Diagram(self.stars, tuple(sorted(self.edges)))


def _component_is_plain_tree(occs, edges, slot_use):
    if len(edges) != len(occs) - 1:
        return False
    if any(a == b for a, _, b, _ in edges):
        return False
    return all(count <= 1 for count in slot_use.values())


def _solve_component_tree(sigma, occs, edges):
    """The unique saturated diagram of a unique-slot tree component."""
    index = {occ: i for i, occ in enumerate(occs)}
    mapped = tuple(sorted(
        _edge_key(index[a], sa, index[b], sb) for a, sa, b, sb in edges))
    diagram = Diagram(tuple(occs), mapped)
    subst = kernel.solve_tagged_eqs(list(_tagged_eqs(diagram, sigma)))
    return diagram, subst


def _expansions(node, sigma, adjacency, partnered_by_occ, fuel, tree_only):
    """(new_stars, new_edges, new_used, equation) candidates."""
    out = []
    size = len(node.stars)
    for vertex, occ in enumerate(node.stars):
        used_here = node.used.get(vertex, ())
        for slot in partnered_by_occ.get(occ, ()):
            if slot in used_here:
                continue
            for _eid, occ2, slot2 in adjacency.get((occ, slot), ()):
                if size < fuel:
                    new_vertex = size
                    edge = _edge_key(vertex, slot, new_vertex, slot2)
                    out.append((node.stars + (occ2,), edge,
                                (vertex, slot, new_vertex, slot2)))
                if tree_only:
                    continue
                for other, other_occ in enumerate(node.stars):
                    if other_occ != occ2:
                        continue
                    if other == vertex and slot2 == slot:
                        continue
                    if slot2 in node.used.get(other, ()):
                        continue
                    edge = _edge_key(vertex, slot, other, slot2)
                    if edge in node.edges:
                        continue
                    out.append((node.stars, edge,
                                (vertex, slot, other, slot2)))
    return out


def _component_bfs(sigma, component_occs, adjacency, partnered_by_occ,
                   fuel, tree_only, prune, node_budget, collect_all):
    """Breadth-first enumeration over one unification-graph component.

    Returns (saturated nodes, correct nodes if collect_all, complete flag,
    max explored size). Unsolvable branches are cut eagerly; dedup is by
    canonical diagram key.
    """
    seen = set()
    queue = deque()
    saturated = []
    correct_all = []
    open_at_fuel = False
    max_size = 0
    budget = node_budget

    for occ in component_occs:
        stars = (occ,)
        key = canonical_diagram_key(stars, ())
        if key in seen:
            continue
        seen.add(key)
        node = _Node(stars, frozenset(), {}, {}, key)
        if prune is None or prune(node.diagram(), node.subst):
            queue.append(node)

    while queue:
        node = queue.popleft()
        budget -= 1
        if budget < 0:
            # the search space is too large to settle; report the bound hit
            open_at_fuel = True
            break
        size = len(node.stars)
        max_size = max(max_size, size)

        is_saturated = True
        for vertex, occ in enumerate(node.stars):
            used_here = node.used.get(vertex, ())
            for slot in partnered_by_occ.get(occ, ()):
                if slot not in used_here:
                    is_saturated = False
                    break
            if not is_saturated:
                break

        has_free = any(
            len(node.used.get(vertex, ())) < len(sigma[occ])
            for vertex, occ in enumerate(node.stars))
        if collect_all and has_free:
            correct_all.append(node)
        if is_saturated:
            saturated.append(node)
            continue
        if size >= fuel:
            # a solvable non-saturated diagram at the size bound is open:
            # a pendant extension exists in the unbounded space
            open_at_fuel = True
        candidates = _expansions(node, sigma, adjacency, partnered_by_occ,
                                 fuel, tree_only)
        for new_stars, edge, eq in candidates:
            # canonicalisation dominates the cost, so charge per candidate
            budget -= 1
            if budget < 0:
                open_at_fuel = True
                break
            new_edges = node.edges | {edge}
            key = canonical_diagram_key(new_stars, new_edges)
            if key in seen:
                continue
            seen.add(key)
            subst = dict(node.subst)
            term_a = sigma[new_stars[eq[0]]][eq[1]][1]
            term_b = sigma[new_stars[eq[2]]][eq[3]][1]
            if not kernel.unify_tagged(term_a, eq[0], term_b, eq[2], subst):
                continue
            used = {v: set(s) for v, s in node.used.items()}
            used.setdefault(eq[0], set()).add(eq[1])
            used.setdefault(eq[2], set()).add(eq[3])
            new_node = _Node(new_stars, new_edges, used, subst, key)
            if prune is not None and not prune(new_node.diagram(), subst):
                continue
            queue.append(new_node)
        if budget < 0:
            break

    return saturated, correct_all, not open_at_fuel, max_size


def _components(n_occs, edges):
    parent = list(range(n_occs))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for a, _, b, _ in edges:
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb
    groups: dict = {}
    for occ in range(n_occs):
        groups.setdefault(find(occ), []).append(occ)
    return [sorted(g) for g in groups.values()]


def _alpha_exact(t, u) -> bool:
    """Variable-bijective equality of two terms."""
    fwd: dict = {}
    bwd: dict = {}
    stack = [(t, u)]
    while stack:
        a, b = stack.pop()
        avar = a[0] == kernel.VAR
        bvar = b[0] == kernel.VAR
        if avar != bvar:
            return False
        if avar:
            if fwd.setdefault(a[1], b[1]) != b[1]:
                return False
            if bwd.setdefault(b[1], a[1]) != a[1]:
                return False
            continue
        if a[0] != b[0] or len(a) != len(b):
            return False
        stack.extend(zip(a[1:], b[1:]))
    return True


def _loop_certificate(sigma, edges, occs):
    occ_set = set(occs)
    for eid, (a, sa, b, sb) in enumerate(edges):
        if a != b or a not in occ_set:
            continue
        term_a = sigma[a][sa][1]
        term_b = sigma[b][sb][1]
        if kernel.unify_tagged(term_a, 0, term_b, 0, {}):
            return {
                "edges": [eid],
                "occurrences": [a],
                "exact": _alpha_exact(term_a, term_b),
            }
    return None


def _cycle_certificate(sigma, edges, occs, max_len=None, max_paths=20000):
    """A slot-respecting simple cycle whose closed diagram is solvable."""
    loop = _loop_certificate(sigma, edges, occs)
    if loop is not None:
        return loop
    occ_set = set(occs)
    if max_len is None:
        # a simple cycle visits each occurrence at most once
        max_len = len(occ_set)
    adj: dict = {}
    for eid, (a, sa, b, sb) in enumerate(edges):
        if a not in occ_set or a == b:
            continue
        adj.setdefault(a, []).append((eid, sa, b, sb))
        adj.setdefault(b, []).append((eid, sb, a, sa))
    budget = max_paths
    for start in occs:
        stack = [(start, None, (start,), (), ())]
        while stack:
            budget -= 1
            if budget < 0:
                return None
            occ, entry_slot, path, eids, steps = stack.pop()
            for eid, own_slot, nxt, nxt_slot in adj.get(occ, ()):
                if own_slot == entry_slot or eid in eids:
                    continue
                if nxt == start and len(path) >= 2:
                    first_eid, first_slot = steps[0][0], steps[0][1]
                    if nxt_slot == first_slot or eid == first_eid:
                        continue
                    cycle_steps = steps + ((eid, own_slot, nxt, nxt_slot),)
                    vertex_of = {o: i for i, o in enumerate(path)}
                    subst: dict = {}
                    ok = True
                    prev = start
                    for step_eid, step_own, step_next, step_next_slot in cycle_steps:
                        u = vertex_of[prev]
                        v = vertex_of.get(step_next, 0 if step_next == start else None)
                        term_u = sigma[prev][step_own][1]
                        term_v = sigma[step_next][step_next_slot][1]
                        if not kernel.unify_tagged(term_u, u, term_v, v, subst):
                            ok = False
                            break
                        prev = step_next
                    if ok:
                        exact = all(
                            _alpha_exact(sigma[p][so][1], sigma[nx][ns][1])
                            for p, (eidd, so, nx, ns) in zip(
                                path + (start,), cycle_steps))
                        return {
                            "edges": [s[0] for s in cycle_steps],
                            "occurrences": list(path),
                            "exact": exact,
                        }
                    continue
                if nxt in path or nxt < start:
                    continue
                if len(path) >= max_len:
                    continue
                stack.append((nxt, nxt_slot, path + (nxt,),
                              eids + (eid,),
                              steps + ((eid, own_slot, nxt, nxt_slot),)))
    return None


@dataclass(frozen=True)
class ExecutionResult:
    output: Constellation
    status: str
    diagram_count: int
    max_diagram_size_reached: int
    saturated: tuple = ()
    actualisations: tuple = ()
    divergence: dict | None = None


def saturated_diagrams(sigma: Constellation, colours=None, fuel: int = 64,
                       tree_only: bool = False, node_budget: int = 150_000):
    """All correct saturated diagrams up to iso, with an exactness status.

    Returns (list of (Diagram, actualised Star) pairs, status, max size,
    divergence certificate or None). Unique-slot tree components are
    contracted whole in one pass; everything else is explored breadth-first
    with canonical-form deduplication and eager unsolvability pruning.
    """
    if fuel < 1:
        raise ValueError("fuel must be >= 1")
    sigma = tuple(sigma)
    ug = unification_graph(sigma, colours)
    adjacency = ug.adjacency()
    partnered = ug.partnered_slots()
    partnered_by_occ = {occ: tuple(sorted(slots)) for occ, slots in partnered.items()}
    slot_use: dict = {}
    for a, sa, b, sb in ug.edges:
        slot_use[(a, sa)] = slot_use.get((a, sa), 0) + 1
        slot_use[(b, sb)] = slot_use.get((b, sb), 0) + 1

    found = []
    status = COMPLETE
    certificate = None
    max_size = 0

    for component in _components(len(sigma), ug.edges):
        occ_set = set(component)
        comp_edges = [(eid, e) for eid, e in enumerate(ug.edges) if e[0] in occ_set]
        plain_edges = [e for _, e in comp_edges]

        if len(component) == 1 and not plain_edges:
            occ = component[0]
            diagram = Diagram((occ,), ())
            found.append((diagram, tuple(sigma[occ])))
            max_size = max(max_size, 1)
            continue

        comp_slot_use = {k: v for k, v in slot_use.items() if k[0] in occ_set}
        if (_component_is_plain_tree(component, plain_edges, comp_slot_use)
                and len(component) <= fuel):
            diagram, subst = _solve_component_tree(sigma, component, plain_edges)
            max_size = max(max_size, len(component))
            if subst is not None:
                free = diagram.free_slots(sigma)
                if free:
                    rays = []
                    for vertex, slot in free:
                        pol, term = sigma[diagram.stars[vertex]][slot]
                        rays.append((pol, kernel.resolve_tagged(term, vertex, subst)))
                    found.append((diagram, tuple(rays)))
            continue

        # a solvable closed cycle in the component proves an unbounded family
        # of solvable diagrams, so detect it before attempting enumeration
        cert = _cycle_certificate(sigma, ug.edges, component)
        if cert is not None:
            status = DIVERGENT
            if certificate is None:
                certificate = cert
            continue

        saturated, _, complete, size = _component_bfs(
            sigma, component, adjacency, partnered_by_occ,
            fuel, tree_only, None, node_budget, False)
        max_size = max(max_size, size)
        for node in saturated:
            diagram = node.diagram()
            free = diagram.free_slots(sigma)
            if not free:
                continue
            rays = []
            for vertex, slot in free:
                pol, term = sigma[diagram.stars[vertex]][slot]
                rays.append((pol, kernel.resolve_tagged(term, vertex, node.subst)))
            found.append((diagram, tuple(rays)))
        if not complete and _STATUS_RANK[status] < _STATUS_RANK[FUEL_EXHAUSTED]:
            status = FUEL_EXHAUSTED

    return found, status, max_size, certificate


def execute(sigma: Constellation, colours=None, fuel: int = 64,
            tree_only: bool = False, node_budget: int = 150_000) -> ExecutionResult:
    """Run sigma: canonical multiset of actualised correct saturated diagrams."""
    found, status, max_size, certificate = saturated_diagrams(
        sigma, colours, fuel, tree_only, node_budget)
    triples = sorted(
        ((cons.canonical_star(star), star, diagram) for diagram, star in found),
        key=lambda p: p[0])
    return ExecutionResult(
        output=tuple(p[0] for p in triples),
        status=status,
        diagram_count=len(triples),
        max_diagram_size_reached=max_size,
        saturated=tuple(p[2] for p in triples),
        actualisations=tuple(p[1] for p in triples),
        divergence=certificate,
    )


def enumerate_diagrams(sigma: Constellation, colours=None, fuel: int = 8,
                       tree_only: bool = False, prune=None,
                       node_budget: int = 150_000):
    """All correct diagrams (not only saturated) up to iso, within fuel.

    prune(diagram, subst) -> bool is consulted on every solvable candidate;
    rejected diagrams are not expanded further, so monotone window conditions
    (coordinate spans, placement injectivity) cut the search space. Statuses
    are not meaningful under a prune; this returns only the diagrams.
    """
    sigma = tuple(sigma)
    ug = unification_graph(sigma, colours)
    adjacency = ug.adjacency()
    partnered_by_occ = {occ: tuple(sorted(slots))
                        for occ, slots in ug.partnered_slots().items()}
    out = []
    for component in _components(len(sigma), ug.edges):
        _, correct, _, _ = _component_bfs(
            sigma, component, adjacency, partnered_by_occ,
            fuel, tree_only, prune, node_budget, True)
        for node in correct:
            out.append((node.diagram(), dict(node.subst)))
    return out


def is_strongly_normalising(sigma: Constellation, colours=None, fuel: int = 64,
                            tree_only: bool = False):
    """True when the search completes, False on a divergence certificate,
    None when fuel ran out without a verdict."""
    result = execute(sigma, colours, fuel, tree_only)
    if result.status == COMPLETE:
        return True
    if result.status == DIVERGENT:
        return False
    return None


def church_rosser_check(sigma: Constellation, colours_a, colours_b,
                        fuel: int = 64, tree_only: bool = False,
                        node_budget: int = 150_000):
    """Compare joint execution with both sequential orders.

    True: outputs agree and no run exhausted its fuel (divergent runs compare
    their bounded truncations, which is exact at equal fuel). None: some run
    exhausted fuel, or outputs differ under a divergence where truncation
    artefacts are possible. False: all runs completed and outputs differ.
    """
    colours_a = frozenset(colours_a)
    colours_b = frozenset(colours_b)
    if colours_a & colours_b:
        raise ValueError("colour sets must be disjoint")
    joint = execute(sigma, colours_a | colours_b, fuel, tree_only, node_budget)
    first_a = execute(sigma, colours_a, fuel, tree_only, node_budget)
    then_b = execute(first_a.output, colours_b, fuel, tree_only, node_budget)
    first_b = execute(sigma, colours_b, fuel, tree_only, node_budget)
    then_a = execute(first_b.output, colours_a, fuel, tree_only, node_budget)
    statuses = [joint.status, first_a.status, then_b.status,
                first_b.status, then_a.status]
    outputs_equal = (joint.output == then_b.output == then_a.output)
    if any(status == FUEL_EXHAUSTED for status in statuses):
        return None
    if outputs_equal:
        return True
    if all(status == COMPLETE for status in statuses):
        return False
    return None


def ugraph_to_dot(ug: UnificationGraph) -> str:
    from stellres import parsing
    lines = ["graph unification {", "  node [shape=box];"]
    for occ, star in enumerate(ug.sigma):
        label = parsing.star_to_text(star).replace('"', r'\"')
        lines.append(f'  s{occ} [label="{occ}: {label}"];')
    for a, sa, b, sb in ug.edges:
        colour = ug.sigma[a][sa][1][0]
        lines.append(f'  s{a} -- s{b} [label="{sa}:{sb} {colour}"];')
    lines.append("}")
    return "\n".join(lines)


def diagram_to_dot(diagram: Diagram, sigma: Constellation) -> str:
    from stellres import parsing
    lines = ["graph diagram {", "  node [shape=box];"]
    for vertex, occ in enumerate(diagram.stars):
        label = parsing.star_to_text(sigma[occ]).replace('"', r'\"')
        lines.append(f'  v{vertex} [label="v{vertex}->s{occ}: {label}"];')
    for u, su, v, sv in diagram.edges:
        lines.append(f'  v{u} -- v{v} [label="{su}:{sv}"];')
    lines.append("}")
    return "\n".join(lines)


def execution_to_json(result: ExecutionResult) -> dict:
    from stellres import parsing
    return {
        "status": result.status,
        "diagram_count": result.diagram_count,
        "max_diagram_size_reached": result.max_diagram_size_reached,
        "output": parsing.constellation_to_json(result.output),
        "diagrams": [
            {"stars": list(d.stars),
             "edges": [list(e) for e in d.edges]}
            for d in result.saturated],
        "divergence": result.divergence,
    }
