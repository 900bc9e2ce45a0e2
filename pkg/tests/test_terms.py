"""Term construction, substitution, and unification behaviour."""

import random

import pytest

import helpers
from stellres import terms


class TestConstruction:
    def test_var_shape(self):
        assert terms.var("X") == ("$", "X")
        assert terms.is_var(terms.var("X"))
        assert not terms.is_app(terms.var("X"))

    def test_app_shape(self):
        t = terms.app("f", terms.var("X"), ("a",))
        assert t == ("f", ("$", "X"), ("a",))
        assert terms.is_app(t)

    def test_constant_is_unary_tuple(self):
        assert terms.app("a") == ("a",)
        assert terms.is_app(("a",))

    def test_var_symbol_reserved(self):
        with pytest.raises(ValueError):
            terms.app("$", terms.var("X"))

    def test_variables_of(self):
        t = ("f", ("$", "X"), ("g", ("$", "Y"), ("$", "X")))
        assert terms.variables_of(t) == {"X", "Y"}
        assert terms.variables_of(("a",)) == set()

    def test_size_and_depth(self):
        t = ("f", ("g", ("a",)), ("$", "X"))
        assert terms.term_size(t) == 4
        assert terms.term_depth(t) == 2
        assert terms.term_depth(("$", "X")) == 0
        assert terms.term_depth(("a",)) == 0


class TestSubstitution:
    def test_apply_flat(self):
        theta = {"X": ("a",)}
        t = ("f", ("$", "X"), ("$", "Y"))
        assert terms.apply_substitution(theta, t) == ("f", ("a",), ("$", "Y"))

    def test_apply_does_not_iterate(self):
        theta = {"X": ("$", "Y"), "Y": ("a",)}
        assert terms.apply_substitution(theta, ("$", "X")) == ("$", "Y")

    def test_rename_apart_disjoint(self):
        t = ("f", ("$", "X"))
        left = terms.rename_apart(t, 0)
        right = terms.rename_apart(t, 1)
        assert terms.variables_of(left).isdisjoint(terms.variables_of(right))


class TestSolve:
    def test_simple_binding(self):
        theta = terms.solve([(terms.var("X"), ("a",))])
        assert theta == {"X": ("a",)}

    def test_flat_idempotent_output(self):
        theta = terms.solve([
            (terms.var("X"), ("f", terms.var("Y"))),
            (terms.var("Y"), ("a",)),
        ])
        for key, value in theta.items():
            assert terms.apply_substitution(theta, value) == value
        assert theta["X"] == ("f", ("a",))

    def test_clash(self):
        with pytest.raises(terms.Clash):
            terms.solve([(("f", ("a",)), ("g", ("a",)))])

    def test_arity_clash(self):
        with pytest.raises(terms.Clash):
            terms.solve([(("f", ("a",)), ("f", ("a",), ("a",)))])

    def test_occurs_check(self):
        with pytest.raises(terms.OccursCheck):
            terms.solve([(terms.var("X"), ("f", terms.var("X")))])

    def test_failures_are_unification_errors(self):
        with pytest.raises(terms.UnificationError):
            terms.solve([(("a",), ("b",))])

    def test_mgu_unifies_both_sides(self):
        t = ("f", terms.var("X"), ("g", terms.var("Y")))
        u = ("f", ("g", ("a",)), terms.var("X"))
        theta = terms.solve([(t, u)])
        assert (terms.apply_substitution(theta, t)
                == terms.apply_substitution(theta, u))

    def test_solvable(self):
        assert terms.solvable([(terms.var("X"), ("a",))])
        assert not terms.solvable([(("a",), ("b",))])


class TestMatchable:
    def test_shared_names_do_not_block(self):
        t = ("f", terms.var("X"))
        u = ("f", ("g", terms.var("X")))
        assert terms.matchable(t, u)

    def test_clash_is_not_matchable(self):
        assert not terms.matchable(("a",), ("b",))


def _random_term(rng, depth):
    if depth == 0 or rng.random() < 0.3:
        if rng.random() < 0.5:
            return terms.var(rng.choice("XYZ"))
        return (rng.choice("abc"),)
    sym = rng.choice(("f", "g", "h"))
    if sym == "h":
        return ("h", _random_term(rng, depth - 1), _random_term(rng, depth - 1))
    return (sym, _random_term(rng, depth - 1))


def test_solve_agrees_with_oracle_on_random_pairs():
    """Seeded random pairs: solvability matches the independent unifier,
    and when both succeed each mgu is an instance of the other."""
    rng = random.Random(helpers.SEED)
    for _ in range(500):
        t = _random_term(rng, 3)
        u = _random_term(rng, 3)
        oracle = helpers.oracle_unify(t, u, {})
        if oracle is None:
            assert not terms.solvable([(t, u)])
            continue
        theta = terms.solve([(t, u)])
        mine_t = terms.apply_substitution(theta, t)
        oracle_t = helpers.oracle_resolve(t, oracle)
        assert mine_t == terms.apply_substitution(theta, u)
        assert oracle_t == helpers.oracle_resolve(u, oracle)
        # each result is an instance of the other, so both are most general
        assert terms.matchable(mine_t, oracle_t)
        assert terms.matchable(oracle_t, mine_t)
