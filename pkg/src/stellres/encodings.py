"""Encodings of familiar computation models as constellations.

Directed hypergraphs become one star per edge (sources negative, targets
positive under the edge's own symbol), so tree diagrams of the digraph case
are exactly walks. First-order clauses become stars with one ray per
literal; a query star carries an unpolarised ans(...) ray that survives
resolution. Wang tiles become four-ray stars whose outgoing rays carry the
coordinates of the target cell, so adjacency unifies exactly when abutting
edge colours match. Turing machines compile to Wang tile sets whose rows
simulate machine steps. Temperature-τ tile assemblies add per-cell relay
stars that measure bonded strength by unification slack.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field

from stellres import engine
from stellres import terms
from stellres.constellations import Constellation, Star, NONE, POS, NEG
from stellres.terms import var, app

_X = var("x")
_Y = var("y")


def _numeral(n: int):
    t = ("0",)
    for _ in range(n):
        t = ("s", t)
    return t


def _peel(t):
    """(depth, base) of a chain s(s(...(base)))."""
    depth = 0
    while not terms.is_var(t) and t[0] == "s" and len(t) == 2:
        depth += 1
        t = t[1]
    return depth, t


# ------------------------------------------------------------ hypergraphs

def encode_hypergraph(edges) -> Constellation:
    """One star per directed hyperedge.

    edges: iterable of (name, sources, targets) with vertex names as
    colours; each source v contributes −v(x), each target w contributes
    +w(name(x)). Vertex and edge names must not collide.
    """
    edges = [(name, tuple(srcs), tuple(tgts)) for name, srcs, tgts in edges]
    vertex_names = {v for _, srcs, tgts in edges for v in srcs + tgts}
    edge_names = [name for name, _, _ in edges]
    if len(set(edge_names)) != len(edge_names):
        raise ValueError("duplicate edge name")
    clash = vertex_names & set(edge_names)
    if clash:
        raise ValueError(f"names used for both vertices and edges: {sorted(clash)}")
    stars = []
    for name, srcs, tgts in edges:
        rays = [(NEG, (v, _X)) for v in srcs]
        rays += [(POS, (w, (name, _X))) for w in tgts]
        stars.append(tuple(rays))
    return tuple(stars)


def encode_digraph(arcs) -> Constellation:
    """Arcs as (name, source vertex, target vertex)."""
    return encode_hypergraph(
        (name, (src,), (tgt,)) for name, src, tgt in arcs)


def count_walks(arcs, max_len: int):
    """Number of walks with k arcs for k = 1..max_len, as a list."""
    arcs = list(arcs)
    counts = []
    current = {i: 1 for i in range(len(arcs))}
    follows = {
        i: [j for j, (_, src2, _) in enumerate(arcs) if src2 == arcs[i][2]]
        for i in range(len(arcs))}
    for _k in range(max_len):
        counts.append(sum(current.values()))
        nxt = {i: 0 for i in range(len(arcs))}
        for i, n in current.items():
            for j in follows[i]:
                nxt[j] += n
        current = nxt
    return counts


# ------------------------------------------------------------------ flows

def encode_wiring(flows) -> Constellation:
    """Each flow t ⇀ u becomes the star [+t, −u].

    Both terms must be applications and must use exactly the same variables.
    """
    stars = []
    for t, u in flows:
        if not terms.is_app(t) or not terms.is_app(u):
            raise ValueError("flow sides must be applications")
        if terms.variables_of(t) != terms.variables_of(u):
            raise ValueError(
                f"flow sides use different variables: {t} vs {u}")
        stars.append(((POS, t), (NEG, u)))
    return tuple(stars)


# ---------------------------------------------------------------- clauses

def encode_clauses(clauses, query=None) -> Constellation:
    """Clauses as stars of signed atoms; the query gains an ans(...) ray.

    clauses: iterable of clauses, each an iterable of (sign, atom) with
    sign +1 for positive literals and -1 for negative ones. query: an
    iterable of goal atoms, encoded negative plus one unpolarised
    ans(v1...vk) ray over the goal variables in order of first occurrence.
    """
    stars = []
    for clause in clauses:
        rays = []
        for sign, atom in clause:
            if not terms.is_app(atom):
                raise ValueError("clause literals must be applications")
            rays.append((POS if sign > 0 else NEG, atom))
        if not rays:
            raise ValueError("empty clause")
        stars.append(tuple(rays))
    if query is not None:
        goals = tuple(query)
        rays = [(NEG, g) for g in goals]
        seen = []
        for g in goals:
            for key in _vars_in_order(g):
                if key not in seen:
                    seen.append(key)
        rays.append((NONE, ("ans",) + tuple((terms.VAR, k) for k in seen)))
        stars.append(tuple(rays))
    return tuple(stars)


def _vars_in_order(t):
    if terms.is_var(t):
        return [t[1]]
    out = []
    for arg in t[1:]:
        for key in _vars_in_order(arg):
            if key not in out:
                out.append(key)
    return out


def answer_terms(output: Constellation):
    """ans instances of fully resolved single-query stars, as a list."""
    out = []
    for star in output:
        if len(star) != 1:
            continue
        pol, term = star[0]
        if pol == NONE and terms.is_app(term) and term[0] == "ans":
            out.append(term)
    return out


def parse_program(text: str):
    """Horn program: `h.` facts, `h :- b1, b2.` rules, `?- g1, g2.` query.

    Atom syntax follows the constellation term grammar. Returns
    (clauses, query) for encode_clauses.
    """
    from stellres import parsing

    clauses = []
    query = None
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        if not line.endswith("."):
            raise ValueError(f"clause must end with a period: {line!r}")
        line = line[:-1].strip()
        if line.startswith("?-"):
            if query is not None:
                raise ValueError("more than one query")
            goals = _split_atoms(line[2:])
            query = tuple(parsing.parse_term(g) for g in goals)
            continue
        if ":-" in line:
            head_text, body_text = line.split(":-", 1)
            head = parsing.parse_term(head_text.strip())
            body = [parsing.parse_term(b) for b in _split_atoms(body_text)]
        else:
            head = parsing.parse_term(line)
            body = []
        clause = [(1, head)] + [(-1, b) for b in body]
        clauses.append(tuple(clause))
    return tuple(clauses), query


def _split_atoms(text: str):
    parts = []
    depth = 0
    current = []
    for ch in text:
        if ch == "(":
            depth += 1
        elif ch == ")":
            depth -= 1
        if ch == "," and depth == 0:
            parts.append("".join(current).strip())
            current = []
        else:
            current.append(ch)
    tail = "".join(current).strip()
    if tail:
        parts.append(tail)
    return [p for p in parts if p]


# ------------------------------------------------------------- Wang tiles

@dataclass(frozen=True)
class WangTile:
    west: str
    east: str
    south: str
    north: str


@dataclass(frozen=True)
class WangTileSet:
    tiles: tuple

    def __post_init__(self):
        object.__setattr__(self, "tiles", tuple(
            t if isinstance(t, WangTile) else WangTile(*t) for t in self.tiles))


def encode_wang(tileset: WangTileSet) -> Constellation:
    """Four rays per tile over colours h (horizontal) and v (vertical).

    Incoming rays carry the tile's own cell (x, y); outgoing rays carry the
    target cell, east (s(x), y) and north (x, s(y)), so an adjacency unifies
    exactly when the abutting edge colours are equal.
    """
    stars = []
    for tile in WangTileSet(tuple(tileset.tiles)).tiles:
        sx = ("s", _X)
        sy = ("s", _Y)
        stars.append((
            (NEG, ("h", (tile.west, _X), _X, _Y)),
            (NEG, ("v", (tile.south, _Y), _X, _Y)),
            (POS, ("h", (tile.east, sx), sx, _Y)),
            (POS, ("v", (tile.north, sy), _X, sy)),
        ))
    return tuple(stars)


WEST_SLOT, SOUTH_SLOT, EAST_SLOT, NORTH_SLOT = 0, 1, 2, 3


def wang_placements(diagram: engine.Diagram, subst):
    """Cell of each diagram vertex, normalised so the minimum is (0, 0).

    Returns {vertex: (col, row)} or None when the coordinates do not share
    one base per axis (which cannot happen for connected diagrams).
    """
    from stellres import kernel

    coords = {}
    bases_x = set()
    bases_y = set()
    for vertex in range(len(diagram.stars)):
        rx = kernel.resolve_tagged(_X, vertex, subst)
        ry = kernel.resolve_tagged(_Y, vertex, subst)
        dx, bx = _peel(rx)
        dy, by = _peel(ry)
        coords[vertex] = (dx, dy)
        bases_x.add(bx)
        bases_y.add(by)
    if len(bases_x) != 1 or len(bases_y) != 1:
        return None
    min_x = min(c for c, _ in coords.values())
    min_y = min(r for _, r in coords.values())
    return {v: (c - min_x, r - min_y) for v, (c, r) in coords.items()}


def wang_faithful(diagram: engine.Diagram, placements) -> bool:
    """Injective placements with every geometric adjacency realised."""
    if placements is None:
        return False
    cells = {}
    for vertex, cell in placements.items():
        if cell in cells:
            return False
        cells[cell] = vertex
    edges = set()
    for a, sa, b, sb in diagram.edges:
        edges.add((a, sa, b, sb))
        edges.add((b, sb, a, sa))
    for (col, row), vertex in cells.items():
        east = cells.get((col + 1, row))
        if east is not None and (vertex, EAST_SLOT, east, WEST_SLOT) not in edges:
            return False
        north = cells.get((col, row + 1))
        if north is not None and (vertex, NORTH_SLOT, north, SOUTH_SLOT) not in edges:
            return False
    return True


def wang_window_prune(tileset: WangTileSet, width: int, height: int,
                      max_missing: int = 3):
    """Prune callback for faithful-tiling searches.

    Keeps diagrams that fit a width x height window, place at most one
    tile per cell, have colour-compatible tiles on every geometric
    adjacency, and lack at most max_missing adjacency edges. All four
    conditions persist under extension along at least one construction
    order (a pendant step leaves at most three of the new cell's bonds
    open, and closing them first restores zero), so every faithful
    diagram stays reachable.
    """
    tiles = tileset.tiles

    def prune(diagram, subst):
        placements = wang_placements(diagram, subst)
        if placements is None:
            return False
        cols = [c for c, _ in placements.values()]
        rows = [r for _, r in placements.values()]
        if (max(cols) - min(cols) >= width
                or max(rows) - min(rows) >= height):
            return False
        cells = {}
        for vertex, cell in placements.items():
            if cell in cells:
                return False
            cells[cell] = vertex
        edges = set()
        for a, sa, b, sb in diagram.edges:
            edges.add((a, sa, b, sb))
            edges.add((b, sb, a, sa))
        missing = 0
        for (col, row), vertex in cells.items():
            east = cells.get((col + 1, row))
            if east is not None:
                t, u = diagram.stars[vertex], diagram.stars[east]
                if tiles[t].east != tiles[u].west:
                    return False
                if (vertex, EAST_SLOT, east, WEST_SLOT) not in edges:
                    missing += 1
            north = cells.get((col, row + 1))
            if north is not None:
                t, u = diagram.stars[vertex], diagram.stars[north]
                if tiles[t].north != tiles[u].south:
                    return False
                if (vertex, NORTH_SLOT, north, SOUTH_SLOT) not in edges:
                    missing += 1
        return missing <= max_missing

    return prune


def wang_tilings(tileset: WangTileSet, width: int, height: int, fuel: int = 9):
    """Connected valid partial tilings reachable as faithful diagrams.

    Returns a set of frozensets {(col, row, tile index)} normalised to the
    origin.
    """
    sigma = encode_wang(tileset)
    results = engine.enumerate_diagrams(
        sigma, fuel=fuel, tree_only=False,
        prune=wang_window_prune(tileset, width, height),
        node_budget=2_000_000)
    tilings = set()
    for diagram, subst in results:
        placements = wang_placements(diagram, subst)
        if not wang_faithful(diagram, placements):
            continue
        tilings.add(frozenset(
            (col, row, diagram.stars[v]) for v, (col, row) in placements.items()))
    return tilings


def brute_force_tilings(tileset: WangTileSet, width: int, height: int):
    """All connected valid nonempty partial tilings of the window, as
    origin-normalised frozensets {(col, row, tile index)}."""
    tiles = tileset.tiles
    cells = [(c, r) for c in range(width) for r in range(height)]
    tilings = set()

    def compatible(assign):
        for (c, r), t in assign.items():
            east = assign.get((c + 1, r))
            if east is not None and tiles[t].east != tiles[east].west:
                return False
            north = assign.get((c, r + 1))
            if north is not None and tiles[t].north != tiles[north].south:
                return False
        return True

    def connected(keys):
        keys = set(keys)
        if not keys:
            return False
        stack = [next(iter(keys))]
        seen = {stack[0]}
        while stack:
            c, r = stack.pop()
            for nb in ((c + 1, r), (c - 1, r), (c, r + 1), (c, r - 1)):
                if nb in keys and nb not in seen:
                    seen.add(nb)
                    stack.append(nb)
        return seen == keys

    for n in range(1, len(cells) + 1):
        for subset in itertools.combinations(cells, n):
            if not connected(subset):
                continue
            for choice in itertools.product(range(len(tiles)), repeat=n):
                assign = dict(zip(subset, choice))
                if not compatible(assign):
                    continue
                min_c = min(c for c, _ in subset)
                min_r = min(r for _, r in subset)
                tilings.add(frozenset(
                    (c - min_c, r - min_r, t) for (c, r), t in assign.items()))
    return tilings


def wang_rectangle_diagram(tile_grid):
    """The intended diagram of a full rectangle of tiles.

    tile_grid[row][col] is a tile index; every geometric adjacency is
    wired. Returns (diagram, vertex_of) with vertex_of[(col, row)].
    """
    height = len(tile_grid)
    width = len(tile_grid[0])
    vertex_of = {}
    occs = []
    for row in range(height):
        if len(tile_grid[row]) != width:
            raise ValueError("ragged tile grid")
        for col in range(width):
            vertex_of[(col, row)] = len(occs)
            occs.append(tile_grid[row][col])
    edges = []
    for (col, row), vertex in vertex_of.items():
        if (col + 1, row) in vertex_of:
            edges.append(engine._edge_key(
                vertex, EAST_SLOT, vertex_of[(col + 1, row)], WEST_SLOT))
        if (col, row + 1) in vertex_of:
            edges.append(engine._edge_key(
                vertex, NORTH_SLOT, vertex_of[(col, row + 1)], SOUTH_SLOT))
    return engine.Diagram(tuple(occs), tuple(sorted(edges))), vertex_of


def parse_tiles(text: str):
    """Tile lines `W E S N` or `W E S N ws es ss ns` (glue strengths)."""
    tiles = []
    strengths = []
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) == 4:
            tiles.append(WangTile(*parts))
            strengths.append((1, 1, 1, 1))
        elif len(parts) == 8:
            tiles.append(WangTile(*parts[:4]))
            strengths.append(tuple(int(p) for p in parts[4:]))
        else:
            raise ValueError(f"tile line needs 4 or 8 fields: {line!r}")
    return WangTileSet(tuple(tiles)), tuple(strengths)


# -------------------------------------------------------- Turing machines

@dataclass(frozen=True)
class TuringMachine:
    """Deterministic one-tape machine; halting is the absence of a rule."""

    transitions: dict
    start: str
    blank: str = "_"

    def alphabet(self):
        syms = {self.blank}
        for (q, a), (q2, b, move) in self.transitions.items():
            syms.add(a)
            syms.add(b)
        return sorted(syms)

    def step(self, tape, head, state):
        """One machine step on a fixed-width tape; None when halted or the
        head would leave the tape."""
        rule = self.transitions.get((state, tape[head]))
        if rule is None:
            return None
        state2, write, move = rule
        tape = tape[:head] + (write,) + tape[head + 1:]
        head2 = head + (1 if move == "R" else -1)
        if not (0 <= head2 < len(tape)):
            return None
        return tape, head2, state2

    def run(self, input_word, width: int, max_steps: int):
        """Configurations (tape, head, state) from step 0, inclusive."""
        tape = tuple(input_word) + (self.blank,) * (width - len(input_word))
        if len(tape) != width:
            raise ValueError("input longer than the tape width")
        configs = [(tape, 0, self.start)]
        for _ in range(max_steps):
            nxt = self.step(*configs[-1])
            if nxt is None:
                break
            configs.append(nxt)
        return configs


QUIET = "#"


def _sym_colour(a: str) -> str:
    return f"s:{a}"


def _head_colour(q: str, a: str) -> str:
    return f"h:{q}:{a}"


def _signal_colour(direction: str, q: str) -> str:
    return f"{direction}:{q}"


def compile_turing(tm: TuringMachine) -> WangTileSet:
    """Wang tiles whose rows are successive machine configurations.

    Vertical colours carry cell contents (s:a) or the head (h:q:a);
    horizontal colours are quiet (#) or a travelling state signal. A halted
    configuration admits no next row because no tile matches the head
    colour.
    """
    tiles = []
    alphabet = tm.alphabet()
    for a in alphabet:
        tiles.append(WangTile(QUIET, QUIET, _sym_colour(a), _sym_colour(a)))
    for (q, a), (q2, b, move) in tm.transitions.items():
        if move == "R":
            tiles.append(WangTile(
                QUIET, _signal_colour("R", q2), _head_colour(q, a), _sym_colour(b)))
        else:
            tiles.append(WangTile(
                _signal_colour("L", q2), QUIET, _head_colour(q, a), _sym_colour(b)))
    arriving = {q2 for (q2, _b, _m) in tm.transitions.values()}
    for q in sorted(arriving):
        for c in alphabet:
            tiles.append(WangTile(
                _signal_colour("R", q), QUIET, _sym_colour(c), _head_colour(q, c)))
            tiles.append(WangTile(
                QUIET, _signal_colour("L", q), _sym_colour(c), _head_colour(q, c)))
    return WangTileSet(tuple(tiles))


def config_row(tm: TuringMachine, config):
    """Vertical colours of a configuration."""
    tape, head, state = config
    return tuple(
        _head_colour(state, a) if i == head else _sym_colour(a)
        for i, a in enumerate(tape))


def step_row(tileset: WangTileSet, row):
    """All next rows: pick per cell a tile whose south matches, with
    horizontally matching colours and quiet ends; returns north rows."""
    tiles = tileset.tiles
    width = len(row)
    results = []

    def extend(i, west, chosen):
        if i == width:
            if west == QUIET:
                results.append(tuple(tiles[t].north for t in chosen))
            return
        for t, tile in enumerate(tiles):
            if tile.south != row[i] or tile.west != west:
                continue
            extend(i + 1, tile.east, chosen + [t])

    extend(0, QUIET, [])
    return results


def run_rows(tm: TuringMachine, input_word, width: int, max_steps: int):
    """Row sequence produced by tiling, starting from the input row."""
    tileset = compile_turing(tm)
    tape = tuple(input_word) + (tm.blank,) * (width - len(input_word))
    rows = [config_row(tm, (tape, 0, tm.start))]
    for _ in range(max_steps):
        nxt = step_row(tileset, rows[-1])
        if not nxt:
            break
        if len(nxt) > 1:
            raise ValueError("tiling is not deterministic")
        rows.append(nxt[0])
    return rows


def parse_tm_text(text: str) -> TuringMachine:
    """Rule lines `state sym -> state2 sym2 L|R`; the first line names the
    start state; the blank symbol is `_`."""
    transitions = {}
    start = None
    for raw_line in text.splitlines():
        line = raw_line.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if len(parts) != 6 or parts[2] != "->" or parts[5] not in ("L", "R"):
            raise ValueError(f"bad rule line: {line!r}")
        q, a, _, q2, b, move = parts
        if (q, a) in transitions:
            raise ValueError(f"duplicate rule for {q} {a}")
        transitions[(q, a)] = (q2, b, move)
        if start is None:
            start = q
    if start is None:
        raise ValueError("no rules")
    return TuringMachine(transitions, start)


# -------------------------------------------------- temperature assemblies

@dataclass(frozen=True)
class AssemblyTile:
    """Glue names and strengths per side, west/east/south/north."""

    west: str
    east: str
    south: str
    north: str
    strengths: tuple = (1, 1, 1, 1)


@dataclass(frozen=True)
class AssemblySystem:
    tiles: tuple
    temperature: int


def _glue(name: str, payload, strength_term):
    return ("G", (name, payload), strength_term)


def encode_atam(system: AssemblySystem, paper_verbatim: bool = False) -> Constellation:
    """Tile stars plus relay stars that measure bonded strength.

    Each tile binds through four channels: vp/hp deliver the south/west
    bonds into the tile at its own cell, vm/hm carry its north/east offers
    to the next cell. One relay star per cell and per composition
    a+b+c+d = temperature measures the four bond strengths with unification
    slack (s^k(y) against s^strength(0) accepts any k <= strength), so a
    cell is coverable exactly when its total bonded strength reaches the
    temperature. Six plugs close assembly boundaries: zero-strength feeds
    for missing south/west neighbours and free caps for dangling channels.

    paper_verbatim=True reproduces a historical display of this encoding,
    kept for side-by-side comparison; its plug list is unbalanced and its
    relay arities are mixed, so it computes nothing useful.
    """
    if paper_verbatim:
        return _encode_atam_verbatim(system)
    tau = system.temperature
    if tau < 0:
        raise ValueError("temperature must be non-negative")
    z, w = var("x"), var("y")
    sz = ("s", z)
    sw = ("s", w)
    stars = []
    for tile in system.tiles:
        ws, es, ss, ns = tile.strengths
        u1, u2, u3, u4 = var("u1"), var("u2"), var("u3"), var("u4")
        stars.append((
            (NEG, ("hp", _glue(tile.west, u1, _numeral(ws)), z, w)),
            (NEG, ("vp", _glue(tile.south, u2, _numeral(ss)), z, w)),
            (POS, ("hm", _glue(tile.east, u3, _numeral(es)), sz, w)),
            (POS, ("vm", _glue(tile.north, u4, _numeral(ns)), z, sw)),
        ))
    def slack(strength, key):
        t = var(key)
        for _ in range(strength):
            t = ("s", t)
        return t
    for comp in itertools.product(range(tau + 1), repeat=4):
        if sum(comp) != tau:
            continue
        a, b, c, d = comp
        # each pair shares its payload and measured count but takes a
        # fresh slack variable per ray, so a zero-strength plug on one
        # side never contradicts the tile's declared strength on the other
        stars.append((
            (NEG, ("vm", _glue_free("x1", slack(a, "y1")), z, w)),
            (POS, ("vp", _glue_free("x1", slack(a, "y1b")), z, w)),
            (NEG, ("hm", _glue_free("x2", slack(b, "y2")), z, w)),
            (POS, ("hp", _glue_free("x2", slack(b, "y2b")), z, w)),
            (NEG, ("vm", _glue_free("x3", slack(c, "y3")), z, sw)),
            (POS, ("vm", _glue_free("x3", slack(c, "y3b")), z, sw)),
            (NEG, ("hm", _glue_free("x4", slack(d, "y4")), sz, w)),
            (POS, ("hm", _glue_free("x4", slack(d, "y4b")), sz, w)),
        ))
    zero = ("0",)
    stars.append(((POS, ("vm", ("G", var("c"), zero), z, w)),))
    stars.append(((POS, ("hm", ("G", var("c"), zero), z, w)),))
    for channel in ("vp", "hp", "vm", "hm"):
        stars.append(((NEG, (channel, var("c"), z, w)),))
    return tuple(stars)


def _glue_free(payload_key: str, strength_term):
    return ("G", var(payload_key), strength_term)


def _encode_atam_verbatim(system: AssemblySystem) -> Constellation:
    """The historical display: tile rays carry their own cell coordinates on
    outgoing rays, the relay star mixes unary and ternary channels, and the
    plug list repeats one feed while omitting another."""
    tau = system.temperature
    z, w = var("x"), var("y")
    sz = ("s", z)
    sw = ("s", w)
    stars = []
    for tile in system.tiles:
        ws, es, ss, ns = tile.strengths
        stars.append((
            (NEG, ("hp", _glue(tile.west, var("u1"), _numeral(ws)), z, w)),
            (NEG, ("vp", _glue(tile.south, var("u2"), _numeral(ss)), z, w)),
            (POS, ("hm", _glue(tile.east, var("u3"), _numeral(es)), z, w)),
            (POS, ("vm", _glue(tile.north, var("u4"), _numeral(ns)), z, w)),
        ))
    def slack(strength, key):
        t = var(key)
        for _ in range(strength):
            t = ("s", t)
        return t
    for comp in itertools.product(range(tau + 1), repeat=4):
        if sum(comp) != tau:
            continue
        a, b, c, d = comp
        stars.append((
            (NEG, ("vm", _glue_free("x1", slack(a, "y1")), z, w)),
            (POS, ("vp", _glue_free("x1", slack(a, "y1")), z, w)),
            (NEG, ("hm", _glue_free("x2", slack(b, "y2")), z, w)),
            (POS, ("hp", _glue_free("x2", slack(b, "y2")), z, w)),
            (NEG, ("vm", ("G", var("x3"), slack(c, "y3"), z, sw))),
            (POS, ("vm", ("G", var("x3"), slack(c, "y3"), z, sw))),
            (NEG, ("hm", ("G", var("x4"), slack(d, "y4"), sz, w))),
            (POS, ("hm", ("G", var("x4"), slack(d, "y4"), sz, w))),
        ))
    stars.append(((NEG, ("vp", var("x"))),))
    stars.append(((POS, ("vm", var("x"))),))
    stars.append(((NEG, ("hp", var("x"))),))
    stars.append(((POS, ("vm", var("x"))),))
    return tuple(stars)


def _bond(tiles, placements, cell, side):
    """Strength of the matched bond on one side of a placed cell, or None.

    A bond needs equal glue names and equal declared strengths on both
    sides (glues are identified by name together with strength).
    """
    c, r = cell
    t = tiles[placements[cell]]
    if side == "w":
        other = placements.get((c - 1, r))
        mine, theirs = (t.west, t.strengths[0]), None
        if other is not None:
            theirs = (tiles[other].east, tiles[other].strengths[1])
    elif side == "e":
        other = placements.get((c + 1, r))
        mine, theirs = (t.east, t.strengths[1]), None
        if other is not None:
            theirs = (tiles[other].west, tiles[other].strengths[0])
    elif side == "s":
        other = placements.get((c, r - 1))
        mine, theirs = (t.south, t.strengths[2]), None
        if other is not None:
            theirs = (tiles[other].north, tiles[other].strengths[3])
    else:
        other = placements.get((c, r + 1))
        mine, theirs = (t.north, t.strengths[3]), None
        if other is not None:
            theirs = (tiles[other].south, tiles[other].strengths[2])
    if theirs is None or mine != theirs:
        return None
    return mine[1]


def stable_assembly(system: AssemblySystem, placements) -> bool:
    """Direct check: every tile's total matched-bond strength reaches the
    temperature. placements: {(col, row): tile index}."""
    tiles = system.tiles
    for cell in placements:
        total = sum(
            _bond(tiles, placements, cell, side) or 0
            for side in ("w", "e", "s", "n"))
        if total < system.temperature:
            return False
    return True


def assembly_diagram(system: AssemblySystem, placements):
    """The intended diagram for a placement set: one tile and one relay
    vertex per cell, bonds wired through both endpoint relays, missing or
    mismatched sides plugged at strength zero and capped.

    Returns (sigma, diagram) where sigma is the encoding. The diagram's
    underlying problem is solvable exactly when a composition summing to
    the temperature fits under every tile's actual bond strengths, i.e.
    when the placement set is stable (compositions are chosen greedily,
    which suffices because slack only ever loosens an equation).
    """
    sigma = list(encode_atam(system))
    tiles = system.tiles
    tau = system.temperature
    n_tiles = len(tiles)
    comp_values = [comp for comp in itertools.product(range(tau + 1), repeat=4)
                   if sum(comp) == tau]
    comps = list(range(n_tiles, n_tiles + len(comp_values)))
    plug_v = len(sigma) - 6
    plug_h = len(sigma) - 5
    caps = {"vp": len(sigma) - 4, "hp": len(sigma) - 3,
            "vm": len(sigma) - 2, "hm": len(sigma) - 1}

    cells = sorted(placements)

    # composition per cell: a=south, b=west, c=north, d=east; cut each
    # component to its bond budget, then top up in order to reach tau
    chosen = {}
    for cell in cells:
        budget = [
            _bond(tiles, placements, cell, "s") or 0,
            _bond(tiles, placements, cell, "w") or 0,
            _bond(tiles, placements, cell, "n") or 0,
            _bond(tiles, placements, cell, "e") or 0,
        ]
        comp = [0, 0, 0, 0]
        left = tau
        for i in range(4):
            comp[i] = min(budget[i], left)
            left -= comp[i]
        if left > 0:
            # unstable cell: no fitting composition exists; pick one that
            # provably fails (some component exceeds its bond budget)
            comp[0] += left
        chosen[cell] = comps[comp_values.index(tuple(comp))]

    occs = []
    tile_vertex = {}
    relay_vertex = {}
    for cell in cells:
        tile_vertex[cell] = len(occs)
        occs.append(placements[cell])
        relay_vertex[cell] = len(occs)
        occs.append(chosen[cell])

    edges = []
    TILE_W, TILE_S, TILE_E, TILE_N = 0, 1, 2, 3
    (R_VM_IN, R_VP, R_HM_IN, R_HP,
     R_VM_TAP, R_VM_FWD, R_HM_TAP, R_HM_FWD) = range(8)

    def add_edge(va, sa, vb, sb):
        edges.append(engine._edge_key(va, sa, vb, sb))

    def fresh(occ):
        occs.append(occ)
        return len(occs) - 1

    for cell in cells:
        c, r = cell
        tv = tile_vertex[cell]
        rv = relay_vertex[cell]
        # the tile always receives its south/west sides from its own relay
        add_edge(rv, R_VP, tv, TILE_S)
        add_edge(rv, R_HP, tv, TILE_W)
        # south/west inputs: fed by the neighbour relay when bonded
        # (wired from the neighbour's side below), zero-plugged otherwise
        if _bond(tiles, placements, cell, "s") is None:
            add_edge(fresh(plug_v), 0, rv, R_VM_IN)
        if _bond(tiles, placements, cell, "w") is None:
            add_edge(fresh(plug_h), 0, rv, R_HM_IN)
        # north/east offers: through the relay tap and forward to the
        # neighbour when bonded; otherwise cap the offer directly and
        # zero-plug the tap so the measured strength is forced to zero
        if _bond(tiles, placements, cell, "n") is not None:
            add_edge(tv, TILE_N, rv, R_VM_TAP)
            add_edge(rv, R_VM_FWD, relay_vertex[(c, r + 1)], R_VM_IN)
        else:
            add_edge(tv, TILE_N, fresh(caps["vm"]), 0)
            add_edge(fresh(plug_v), 0, rv, R_VM_TAP)
            add_edge(rv, R_VM_FWD, fresh(caps["vm"]), 0)
        if _bond(tiles, placements, cell, "e") is not None:
            add_edge(tv, TILE_E, rv, R_HM_TAP)
            add_edge(rv, R_HM_FWD, relay_vertex[(c + 1, r)], R_HM_IN)
        else:
            add_edge(tv, TILE_E, fresh(caps["hm"]), 0)
            add_edge(fresh(plug_h), 0, rv, R_HM_TAP)
            add_edge(rv, R_HM_FWD, fresh(caps["hm"]), 0)

    diagram = engine.Diagram(tuple(occs), tuple(sorted(edges)))
    return tuple(sigma), diagram


def assembly_solvable(system: AssemblySystem, placements) -> bool:
    """Whether the intended diagram of the placements is solvable."""
    from stellres import kernel

    sigma, diagram = assembly_diagram(system, placements)
    eqs = list(engine._tagged_eqs(diagram, sigma))
    return kernel.solve_tagged_eqs(eqs) is not None
