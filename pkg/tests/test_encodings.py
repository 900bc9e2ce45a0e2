"""Encodings: graphs, clauses, flows, tiles, machines, assemblies."""

import random

from collections import Counter
from itertools import combinations

import pytest

import helpers
from stellres import encodings as enc
from stellres import engine
from stellres import parsing

THREE_CYCLE = [("e1", "a", "b"), ("e2", "b", "c"), ("e3", "c", "a")]

CHECKER = enc.WangTileSet((("r", "g", "r", "g"), ("g", "r", "g", "r")))
MONO = enc.WangTileSet((("r", "r", "r", "r"),))


class TestGraphs:
    def test_digraph_stars(self):
        sig = enc.encode_digraph(THREE_CYCLE[:2])
        expected = parsing.parse_constellation(
            "[-a(X), +b(e1(X))]\n[-b(X), +c(e2(X))]")
        from stellres import constellations as cons
        assert cons.constellations_alpha_equal(sig, expected)

    def test_hyperedge_star(self):
        sig = enc.encode_hypergraph([("h", ("a", "b"), ("c",))])
        expected = parsing.parse_constellation("[-a(X), -b(X), +c(h(X))]")
        from stellres import constellations as cons
        assert cons.constellations_alpha_equal(sig, expected)

    def test_name_collisions_rejected(self):
        with pytest.raises(ValueError):
            enc.encode_digraph([("e", "a", "b"), ("e", "b", "a")])
        with pytest.raises(ValueError):
            enc.encode_digraph([("a", "a", "b")])

    def test_three_cycle_walk_counts(self):
        assert enc.count_walks(THREE_CYCLE, 4) == [3, 3, 3, 3]

    def test_count_walks_matches_matrix_powers(self):
        rng = random.Random(helpers.SEED)
        verts = ["a", "b", "c", "d"]
        for _ in range(20):
            pairs = [(s, t) for s in verts for t in verts]
            rng.shuffle(pairs)
            arcs = [(f"e{i}", s, t)
                    for i, (s, t) in enumerate(pairs[:rng.randint(0, 6)])]
            assert enc.count_walks(arcs, 4) == helpers.walk_dp(arcs, verts, 4)

    def test_tree_diagrams_are_walks(self):
        sig = enc.encode_digraph(THREE_CYCLE)
        diagrams = engine.enumerate_diagrams(sig, fuel=4, tree_only=True)
        by_size = Counter(d.size() for d, _subst in diagrams)
        assert [by_size[k] for k in range(1, 5)] == [3, 3, 3, 3]


class TestFlows:
    def test_flow_star(self):
        t = parsing.parse_term("f(X)")
        u = parsing.parse_term("g(X)")
        assert enc.encode_wiring([(t, u)]) == (((enc.POS, t), (enc.NEG, u)),)

    def test_flow_sides_must_share_variables(self):
        with pytest.raises(ValueError):
            enc.encode_wiring([(parsing.parse_term("f(X)"),
                                parsing.parse_term("g(Y)"))])

    def test_flow_sides_must_be_applications(self):
        with pytest.raises(ValueError):
            enc.encode_wiring([(("$", "X"), parsing.parse_term("g(X)"))])

    def test_composition_through_execution(self):
        """f ⇀ g composed with g ⇀ h behaves as f ⇀ h on a constant."""
        flows = enc.encode_wiring([
            (parsing.parse_term("f(X)"), parsing.parse_term("g(X)")),
        ])
        probe = parsing.parse_constellation("[-f(a), out(a)]\n[+g(a)]")
        from stellres import constellations as cons
        result = engine.execute(cons.union(flows, probe), fuel=8)
        assert result.status == engine.COMPLETE
        assert cons.constellations_alpha_equal(
            result.output, parsing.parse_constellation("[out(a)]"))


class TestClauses:
    def test_single_answer(self):
        clauses, query = enc.parse_program(
            "likes(alice, bob).\n"
            "knows(X) :- likes(alice, X).\n"
            "?- knows(W).\n")
        sig = enc.encode_clauses(clauses, query=query)
        result = engine.execute(sig, fuel=16)
        assert result.status == engine.COMPLETE
        assert enc.answer_terms(result.output) == [("ans", ("bob",))]

    def test_duplicate_derivations_keep_multiplicity(self):
        clauses, query = enc.parse_program(
            "p(a).\nq(a).\nr(X) :- p(X).\nr(X) :- q(X).\n?- r(X).\n")
        result = engine.execute(enc.encode_clauses(clauses, query=query),
                                fuel=16)
        answers = Counter(enc.answer_terms(result.output))
        assert answers == Counter({("ans", ("a",)): 2})
        assert answers == Counter(helpers.sld_answers(clauses, query))

    def test_conjunctive_query(self):
        clauses, query = enc.parse_program(
            "p(a).\np(b).\nq(b).\n?- p(X), q(X).\n")
        result = engine.execute(enc.encode_clauses(clauses, query=query),
                                fuel=16)
        assert enc.answer_terms(result.output) == [("ans", ("b",))]

    def test_parse_program_errors(self):
        with pytest.raises(ValueError):
            enc.parse_program("p(a)\n")
        with pytest.raises(ValueError):
            enc.parse_program("?- p(X).\n?- p(Y).\n")

    def test_seeded_programs_match_sld(self):
        rng = random.Random(helpers.SEED)
        for _ in range(10):
            clauses, query = helpers.random_program(rng)
            sig = enc.encode_clauses(clauses, query=query)
            result = engine.execute(sig, fuel=24)
            assert result.status == engine.COMPLETE
            got = Counter(helpers.canon_term(t)
                          for t in enc.answer_terms(result.output))
            want = Counter(helpers.canon_term(t)
                           for t in helpers.sld_answers(clauses, query))
            assert got == want


class TestWangTiles:
    def test_checkerboard_counts(self):
        assert len(enc.brute_force_tilings(CHECKER, 2, 2)) == 16
        assert len(enc.wang_tilings(CHECKER, 2, 2)) == 16

    def test_monochrome_counts(self):
        assert len(enc.brute_force_tilings(MONO, 2, 2)) == 8
        assert len(enc.wang_tilings(MONO, 2, 2)) == 8

    def test_tilings_agree_on_a_seeded_set(self):
        rng = random.Random(helpers.SEED + 7)
        colours = ["r", "g", "b"]
        tiles = tuple(tuple(rng.choice(colours) for _ in range(4))
                      for _ in range(3))
        tileset = enc.WangTileSet(tiles)
        brute = enc.brute_force_tilings(tileset, 2, 2)
        diagram = enc.wang_tilings(tileset, 2, 2, fuel=4)
        assert set(brute) == set(diagram)

    def test_parse_tiles_round_trip(self):
        tileset, strengths = enc.parse_tiles("r g r g\ng r g r\n")
        assert tileset == CHECKER
        assert strengths == ((1, 1, 1, 1), (1, 1, 1, 1))

    def test_parse_tiles_with_strengths(self):
        tileset, strengths = enc.parse_tiles("r g r g 2 1 1 2\n")
        assert tileset.tiles[0] == enc.WangTile("r", "g", "r", "g")
        assert strengths == ((2, 1, 1, 2),)

    def test_parse_tiles_field_count(self):
        with pytest.raises(ValueError):
            enc.parse_tiles("r g r\n")


class TestTuringMachines:
    def test_parse_tm(self):
        tm = enc.parse_tm_text(helpers.TM_TEXTS["increment"])
        assert tm.start == "q0"
        assert tm.blank == "_"
        assert tm.transitions[("q0", "1")] == ("q0", "1", "R")

    def test_parse_tm_errors(self):
        with pytest.raises(ValueError):
            enc.parse_tm_text("q0 1 q0 1 R\n")
        with pytest.raises(ValueError):
            enc.parse_tm_text("q0 1 -> q0 1 R\nq0 1 -> q1 0 L\n")

    def test_tileset_sizes(self):
        inc = enc.compile_turing(enc.parse_tm_text(helpers.TM_TEXTS["increment"]))
        flip = enc.compile_turing(enc.parse_tm_text(helpers.TM_TEXTS["flip"]))
        assert len(inc.tiles) == 12
        assert len(flip.tiles) == 18

    def test_increment_history(self):
        tm = enc.parse_tm_text(helpers.TM_TEXTS["increment"])
        rows = enc.run_rows(tm, "11", width=6, max_steps=10)
        assert [" ".join(r) for r in rows] == [
            "h:q0:1 s:1 s:_ s:_ s:_ s:_",
            "s:1 h:q0:1 s:_ s:_ s:_ s:_",
            "s:1 s:1 h:q0:_ s:_ s:_ s:_",
            "s:1 h:halt:1 s:1 s:_ s:_ s:_",
        ]

    def test_histories_match_direct_interpreter(self):
        for name in ("increment", "flip", "zigzag"):
            tm = enc.parse_tm_text(helpers.TM_TEXTS[name])
            word = helpers.TM_WORDS[name]
            width = len(word) + 11
            got = enc.run_rows(tm, word, width=width, max_steps=10)
            assert got == helpers.interpreter_rows(tm, word, width, 10)

    def test_machine_tileset_agrees_with_brute_force(self):
        tm = enc.parse_tm_text(helpers.TM_TEXTS["flip"])
        tileset = enc.compile_turing(tm)
        brute = enc.brute_force_tilings(tileset, 2, 2)
        diagram = enc.wang_tilings(tileset, 2, 2, fuel=4)
        assert set(brute) == set(diagram)
        assert len(brute) == 1482


class TestAssemblies:
    TILE = enc.AssemblyTile("g", "g", "g", "g", (1, 1, 1, 1))

    def test_cooperation_at_temperature_two(self):
        system = enc.AssemblySystem((self.TILE,), 2)
        domino = {(0, 0): 0, (1, 0): 0}
        corner = {(0, 0): 0, (1, 0): 0, (1, 1): 0}
        block = {(0, 0): 0, (1, 0): 0, (0, 1): 0, (1, 1): 0}
        assert enc.stable_assembly(system, domino) is False
        assert enc.stable_assembly(system, corner) is False
        assert enc.stable_assembly(system, block) is True

    def test_solver_matches_direct_check_exhaustively(self):
        system = enc.AssemblySystem((self.TILE,), 2)
        cells = [(x, y) for x in range(4) for y in range(2)]
        for r in range(1, len(cells) + 1):
            for sub in combinations(cells, r):
                placements = {c: 0 for c in sub}
                assert (enc.assembly_solvable(system, placements)
                        == enc.stable_assembly(system, placements))

    def test_temperature_one_needs_one_neighbour_each(self):
        system = enc.AssemblySystem((self.TILE,), 1)
        cells = [(0, 0), (1, 0), (0, 1), (1, 1)]
        for r in range(1, 5):
            for sub in combinations(cells, r):
                placements = {c: 0 for c in sub}
                neighboured = all(
                    any((cx + dx, cy + dy) in placements
                        for dx, dy in ((1, 0), (-1, 0), (0, 1), (0, -1)))
                    for cx, cy in placements)
                assert enc.stable_assembly(system, placements) == neighboured
                assert enc.assembly_solvable(system, placements) == neighboured

    def test_encoding_star_counts(self):
        system = enc.AssemblySystem((self.TILE,), 1)
        assert len(enc.encode_atam(system)) == 11
        assert len(enc.encode_atam(system, paper_verbatim=True)) == 9
