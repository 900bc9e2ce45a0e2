"""Stars, constellations, canonical forms, and colour operations."""

import pytest

from stellres import constellations as cons
from stellres import terms


X = terms.var("X")
Y = terms.var("Y")


class TestRayAccessors:
    def test_polarity_constructors(self):
        assert cons.pos(("a", X)) == (cons.POS, ("a", X))
        assert cons.neg(("a", X)) == (cons.NEG, ("a", X))
        assert cons.unp(("f", X)) == (cons.NONE, ("f", X))

    def test_ray_colour(self):
        assert cons.ray_colour(cons.pos(("a", X))) == "a"
        assert cons.ray_colour(cons.neg(("b", X))) == "b"
        assert cons.ray_colour(cons.unp(("f", X))) is None

    def test_ray_term_and_polarity(self):
        r = cons.neg(("a", X))
        assert cons.ray_polarity(r) == cons.NEG
        assert cons.ray_term(r) == ("a", X)

    def test_variable_collection(self):
        s = (cons.pos(("a", X)), cons.unp(("f", Y, X)))
        assert cons.ray_variables(s[0]) == {"X"}
        assert cons.star_variables(s) == {"X", "Y"}


class TestSignature:
    def test_symbols_and_colours(self):
        sigma = (
            (cons.pos(("a", ("f", X))),),
            (cons.neg(("a", Y)), cons.unp(("g", ("k",)))),
        )
        arities, colours = cons.signature_of(sigma)
        assert arities["f"] == 1
        assert arities["k"] == 0
        assert colours == {"a"}

    def test_arity_conflict_rejected(self):
        sigma = (
            (cons.unp(("f", X)),),
            (cons.unp(("f", X, Y)),),
        )
        with pytest.raises(ValueError):
            cons.signature_of(sigma)


class TestCanonicalForms:
    def test_canonical_star_ignores_ray_order(self):
        a = (cons.pos(("a", X)), cons.unp(("f", Y)))
        b = (cons.unp(("f", Y)), cons.pos(("a", X)))
        assert cons.canonical_star(a) == cons.canonical_star(b)

    def test_canonical_star_ignores_names(self):
        a = (cons.pos(("a", X)), cons.unp(("f", X)))
        b = (cons.pos(("a", Y)), cons.unp(("f", Y)))
        assert cons.canonical_star(a) == cons.canonical_star(b)

    def test_canonical_star_keeps_sharing_distinctions(self):
        shared = (cons.pos(("a", X)), cons.unp(("f", X)))
        split = (cons.pos(("a", X)), cons.unp(("f", Y)))
        assert cons.canonical_star(shared) != cons.canonical_star(split)

    def test_canonical_star_keeps_multiplicity(self):
        once = (cons.unp(("f", X)),)
        twice = (cons.unp(("f", X)), cons.unp(("f", X)))
        assert len(cons.canonical_star(twice)) == 2
        assert cons.canonical_star(once) != cons.canonical_star(twice)

    def test_alpha_equivalent(self):
        a = (cons.pos(("a", ("f", X))),)
        b = (cons.pos(("a", ("f", Y))),)
        assert cons.alpha_equivalent(a, b)
        assert not cons.alpha_equivalent(a, (cons.pos(("a", X)),))

    def test_constellations_alpha_equal_ignores_star_order(self):
        s1 = (cons.pos(("a", X)),)
        s2 = (cons.unp(("f", Y)),)
        assert cons.constellations_alpha_equal((s1, s2), (s2, s1))

    def test_constellations_alpha_equal_is_multiset(self):
        s1 = (cons.unp(("f", X)),)
        assert not cons.constellations_alpha_equal((s1, s1), (s1,))

    def test_canonical_constellation_idempotent(self):
        sigma = (
            (cons.pos(("a", X)), cons.neg(("b", ("f", X)))),
            (cons.unp(("g", Y)),),
        )
        canon = cons.canonical_constellation(sigma)
        assert cons.canonical_constellation(canon) == canon


class TestColourize:
    def test_wraps_every_ray(self):
        sigma = ((cons.unp(("f", X)), cons.unp(("g", Y))),)
        painted = cons.colourize("t", cons.POS, sigma)
        assert painted == (((cons.POS, ("t", ("f", X))),
                            (cons.POS, ("t", ("g", Y)))),)

    def test_union_keeps_duplicates(self):
        s = ((cons.unp(("f", X)),),)
        assert cons.union(s, s) == s + s


class TestFamilies:
    def test_instantiate_family(self):
        family = lambda n: (cons.unp(("f", ("a",) if n == 0 else ("b",))),)
        sigma = cons.instantiate_family(family, 2)
        assert len(sigma) == 2
        assert sigma[0] == (cons.unp(("f", ("a",))),)

    def test_negative_bound_rejected(self):
        with pytest.raises(ValueError):
            cons.instantiate_family(lambda n: (cons.unp(("f", X)),), -1)
