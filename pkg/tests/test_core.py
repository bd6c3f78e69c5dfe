from fractions import Fraction

import pytest

from dgpa.core import (Alphabet, Element, as_scalar, degree_of, format_element, gc_normalize,
                       is_homogeneous, koszul_sign, sort_word)

ALPH = Alphabet.of([("x1", 1), ("x2", 2)])
x1 = Element.gen(ALPH, "x1")
x2 = Element.gen(ALPH, "x2")


def test_mul_is_concatenation():
    assert (x1 * x2).terms == {(0, 1): 1}


def test_add_cancels_to_empty_term_map():
    assert (x1 * x2 + (-1) * (x1 * x2)).terms == {}
    assert (x1 * x2 - x1 * x2).is_zero()


def test_rational_product():
    # (2/3 x1)(3 x2 x1) = 2 x1 x2 x1, by hand
    e = Fraction(2, 3) * x1 * (3 * (x2 * x1))
    assert e.terms == {(0, 1, 0): Fraction(2)}


def test_scalars_are_normalized():
    assert as_scalar("6/4") == Fraction(3, 2)
    assert as_scalar(0) == Fraction(0, 1)
    c = Fraction(1, 6) + Fraction(1, 3)
    assert (c.numerator, c.denominator) == (1, 2)


def test_zero_coefficients_are_dropped():
    e = Element(ALPH, {(0,): 0, (1,): 2})
    assert e.terms == {(1,): 2}
    assert Element(ALPH, e.terms) == e


@pytest.mark.parametrize("degrees,perm,sign", [
    ((1, 1), (1, 0), -1),
    ((2, 3), (1, 0), 1),
    ((1, 1, 1), (1, 2, 0), 1),      # abc -> cab: two adjacent odd swaps
    ((1, 2, 1), (2, 1, 0), -1),
    ((1, 1, 1, 1), (3, 2, 1, 0), 1),
])
def test_koszul_sign_examples(degrees, perm, sign):
    assert koszul_sign(degrees, perm) == sign


def test_koszul_sign_rejects_bad_permutation():
    with pytest.raises(ValueError):
        koszul_sign((1, 1), (0, 0))


def test_degree_of():
    assert degree_of(x1) == 1
    assert degree_of(x1 + x2) == "mixed"
    assert degree_of(Element.zero(ALPH)) == "zero"
    assert degree_of(x1 * x2) == 3
    assert is_homogeneous(x1 * x2, 3)


def test_sort_word_signs():
    degs = (1, 1, 2)
    assert sort_word((1, 0), degs) == (-1, (0, 1))
    assert sort_word((2, 0), degs) == (1, (0, 2))
    assert sort_word((0, 2, 0), degs) == (0, ())


def test_gc_normalize_kills_commutators():
    degs = ALPH.degrees
    assert gc_normalize({(0, 1): 1, (1, 0): -1}, degs) == {}
    assert gc_normalize({(0, 0): 5}, degs) == {}


def test_display_syntax():
    e = Fraction(-1, 2) * (x1 * x2) + 3 * x2
    assert format_element(e) == "-1/2 * x1.x2 + 3 * x2"
    assert format_element(Element.one(ALPH)) == "1 * 1"
    assert format_element(Element.zero(ALPH)) == "0"


def test_distinct_alphabets_do_not_mix():
    other = Alphabet.of([("x1", 1)])
    with pytest.raises(ValueError):
        x1 + Element.gen(other, "x1")
