import itertools

import pytest

from dgpa.catalog import two_generator
from dgpa.core import Alphabet, Element
from dgpa.presentation import (Presentation, TruncationParams, WindowError, canonical_relations,
                               graded_dimension, is_zero_mod_ideal, normal_form)

T6 = TruncationParams(6, 0, 8)


def gc_monomial_count(degrees, d):
    """Sorted monomials of degree d, odd generators at most once (brute force)."""
    n = 0
    caps = [1 if g % 2 else d // max(g, 1) for g in degrees]
    for exps in itertools.product(*[range(c + 1) for c in caps]):
        if sum(e * g for e, g in zip(exps, degrees)) == d:
            n += 1
    return n


def two_gen_presentation():
    return two_generator(0, 1, 1).presentation


def test_free_algebra_basis():
    alph = Alphabet.of([("x", 1)])
    tab = Presentation(alph, (), False).table(TruncationParams(3, 0, 8))
    assert tab.basis == {0: [()], 1: [(0,)], 2: [(0, 0)], 3: [(0, 0, 0)]}


def test_two_generator_basis_one_word_per_degree():
    p = two_gen_presentation()
    tab = p.table(T6)
    for d in range(7):
        assert len(tab.basis[d]) == 1
        (w,) = tab.basis[d]
        assert w == (0,) * (d % 2) + (1,) * (d // 2)
    assert graded_dimension(p, T6).as_tuple() == tuple(gc_monomial_count((1, 2), d)
                                                      for d in range(7))
    assert graded_dimension(p, T6).exact


def test_odd_square_vanishes_in_graded_commutative_algebra():
    p = Presentation(Alphabet.of([("x", 1)]), (), True)
    assert graded_dimension(p, TruncationParams(4, 0, 8)).as_tuple() == (1, 1, 0, 0, 0)


def test_normal_form_examples():
    p = two_gen_presentation()
    a = p.alphabet
    x1, x2 = Element.gen(a, "x1"), Element.gen(a, "x2")
    assert normal_form(p, x2 * x1, T6) == x1 * x2
    assert normal_form(p, x1 * x1 * x2, T6).is_zero()
    e = x1 * x2 + 3 * (x2 * x2)
    assert normal_form(p, normal_form(p, e, T6), T6) == normal_form(p, e, T6)


def test_ideal_membership():
    p = two_gen_presentation()
    a = p.alphabet
    x1, x2 = Element.gen(a, "x1"), Element.gen(a, "x2")
    assert is_zero_mod_ideal(p, x1 * x1, T6)
    assert not is_zero_mod_ideal(p, x1 * x2, T6)
    assert is_zero_mod_ideal(p, Element.zero(a), T6)


def test_dimensions_of_simple_algebras():
    k = Presentation(Alphabet.of([]), (), True)
    assert graded_dimension(k, T6).as_tuple() == (1, 0, 0, 0, 0, 0, 0)
    poly = Presentation(Alphabet.of([("x", 2)]), (), True)
    assert graded_dimension(poly, T6).as_tuple() == (1, 0, 1, 0, 1, 0, 1)


@pytest.mark.parametrize("degrees", [(1, 2), (1, 1, 2), (2, 3), (1, 3, 4)])
def test_free_graded_commutative_matches_monomial_count(degrees):
    p = Presentation(Alphabet.of([(f"g{i}", d) for i, d in enumerate(degrees)]), (), True)
    got = graded_dimension(p, T6).as_tuple()
    assert got == tuple(gc_monomial_count(degrees, d) for d in range(7))


def test_degree_zero_generators_give_upper_bounds():
    p = Presentation(Alphabet.of([("x", 0), ("y", 0)]), (), True)
    g = graded_dimension(p, TruncationParams(0, 0, 3))
    assert not g.exact and g.flag == "upper-bound"
    # sorted monomials of length <= 3 in two commuting letters
    assert g.dims[0] == 10


def test_longer_word_cap_never_increases_dims():
    a = Alphabet.of([("x", 1), ("y", 1)])
    x, y = Element.gen(a, "x"), Element.gen(a, "y")
    p = Presentation(a, (x * y - y * x,), False)
    prev = None
    for L in (2, 3, 5, 8):
        g = graded_dimension(p, TruncationParams(4, 0, L)).dims
        if prev:
            assert all(g[d] <= prev[d] for d in g)
        prev = g
    assert prev == {0: 1, 1: 2, 2: 3, 3: 4, 4: 5}


def test_inhomogeneous_relations_rejected():
    a = Alphabet.of([("x1", 1), ("x2", 2)])
    with pytest.raises(ValueError):
        Presentation(a, (Element.gen(a, "x1") + Element.gen(a, "x2"),), True)


def test_out_of_window_reduction_raises():
    p = two_gen_presentation()
    x2 = Element.gen(p.alphabet, "x2")
    with pytest.raises(WindowError):
        normal_form(p, x2 * x2 * x2 * x2, T6)


def test_canonical_relations_are_deterministic():
    p = two_gen_presentation()
    a = canonical_relations(p, T6)
    b = canonical_relations(Presentation(p.alphabet, tuple(reversed(p.relations)), True), T6)
    assert [str(e) for e in a] == [str(e) for e in b]
