"""Seeded property tests: each runs at least 200 derandomized cases."""
import math
from fractions import Fraction

from hypothesis import given, settings
from hypothesis import strategies as st

from dgpa.catalog import two_generator
from dgpa.core import Element, format_element, gc_normalize, koszul_sign, sort_word
from dgpa.dg_poisson import apply_d, check_axioms, check_dg_algebra, verify
from dgpa.envelope import env_presented
from dgpa.homology import cohomology
from dgpa.io import parse_element, parse_presentation, serialize_presentation
from dgpa.lie import check_lie, semidirect
from dgpa.modules import (check_envelope_module, check_module_axioms, from_envelope,
                          regular_module, same_tables, to_envelope)
from dgpa.presentation import TruncationParams, normal_form
from dgpa.samples import random_dg_lie, random_dgpa

CASES = settings(max_examples=200, derandomize=True, deadline=None)
seeds = st.integers(0, 10 ** 6)
T4 = TruncationParams(4, 0, 6)
T8 = TruncationParams(8, 0, 10)
TWO = two_generator(0, 1, 1)
ALPH = TWO.alphabet

scalars = st.fractions(min_value=-5, max_value=5, max_denominator=6)
words = st.lists(st.integers(0, 1), max_size=4).map(tuple)


@st.composite
def elements(draw, alph=ALPH, letters=words):
    terms = draw(st.dictionaries(letters, scalars, max_size=4))
    return Element(alph, terms)


@st.composite
def signed_permutations(draw):
    n = draw(st.integers(0, 6))
    degs = draw(st.lists(st.integers(-3, 4), min_size=n, max_size=n))
    p = draw(st.permutations(range(n)))
    q = draw(st.permutations(range(n)))
    return degs, list(p), list(q)


def bubble_sign(degrees, perm):
    """Reorder by adjacent swaps, one Koszul factor per swap."""
    items = [(perm[i], degrees[i]) for i in range(len(degrees))]
    sign = 1
    for i in range(len(items)):
        for j in range(len(items) - 1 - i):
            if items[j][0] > items[j + 1][0]:
                if items[j][1] % 2 and items[j + 1][1] % 2:
                    sign = -sign
                items[j], items[j + 1] = items[j + 1], items[j]
    return sign


@CASES
@given(signed_permutations())
def test_koszul_sign_matches_adjacent_swaps_and_composes(data):
    degs, p, q = data
    assert koszul_sign(degs, p) == bubble_sign(degs, p)
    moved = [0] * len(degs)
    for i, d in enumerate(degs):
        moved[p[i]] = d
    both = [q[p[i]] for i in range(len(degs))]
    assert koszul_sign(degs, both) == koszul_sign(degs, p) * koszul_sign(moved, q)


@CASES
@given(st.lists(st.integers(0, 2), max_size=6))
def test_sort_word_agrees_with_koszul_sign(w):
    degs = (1, 2, 1)
    sign, out = sort_word(tuple(w), degs)
    letters = [degs[g] for g in w]
    order = sorted(range(len(w)), key=lambda k: (w[k], k))
    if any(w.count(g) > 1 for g in (0, 2)):
        assert sign == 0
        return
    perm = [0] * len(w)
    for pos, k in enumerate(order):
        perm[k] = pos
    assert out == tuple(sorted(w))
    assert sign == koszul_sign(letters, perm)
    assert gc_normalize({tuple(w): 1}, degs) == {out: sign}


@CASES
@given(elements(), elements(), scalars, scalars)
def test_normal_form_is_idempotent_and_linear(e, f, a, b):
    p = TWO.presentation
    ne, nf_ = normal_form(p, e, T8), normal_form(p, f, T8)
    assert normal_form(p, ne, T8) == ne
    assert normal_form(p, a * e + b * f, T8) == a * ne + b * nf_


@CASES
@given(words, words, st.sampled_from([0, 1]))
def test_ideal_is_two_sided(u, v, k):
    p = TWO.presentation
    r = p.relations[k]
    e = Element.word(ALPH, u) * r * Element.word(ALPH, v)
    assert normal_form(p, e, T8).is_zero()


@CASES
@given(elements(), elements())
def test_coefficients_stay_reduced(e, f):
    for c in (e * f + f).terms.values():
        assert isinstance(c, Fraction) and c != 0
        assert math.gcd(c.numerator, c.denominator) == 1


@CASES
@given(elements())
def test_display_syntax_round_trip(e):
    assert parse_element(format_element(e), ALPH) == e


@CASES
@given(seeds)
def test_random_samples_satisfy_the_axioms(seed):
    rep = check_axioms(random_dgpa(seed), T4)
    assert rep.ok, rep.failed()


@CASES
@given(seeds)
def test_doubled_lie_algebra_is_lie(seed):
    L = random_dg_lie(seed)
    assert check_lie(L).ok
    assert check_lie(semidirect(L)).ok


@CASES
@given(seeds)
def test_envelope_of_random_sample_is_dg(seed):
    t = TruncationParams(3, 0, 5)
    assert check_dg_algebra(env_presented(verify(random_dgpa(seed), t)), t).ok


@CASES
@given(seeds)
def test_serializer_round_trip(seed):
    A = random_dgpa(seed)
    text = serialize_presentation(A)
    B = parse_presentation(text)
    assert B == A and serialize_presentation(B) == text


@CASES
@given(seeds, st.data())
def test_cohomology_classes_ignore_coboundaries(seed, data):
    A = random_dgpa(seed)
    r = cohomology(A, T4)
    tab = A.table(T4)
    for d, reps in r.representatives.items():
        lower = tab.basis.get(d - 1, [])
        for k, rep in enumerate(reps):
            shift = Element.zero(A.alphabet)
            for w in lower:
                shift = shift + data.draw(scalars) * apply_d(A, Element.word(A.alphabet, w), T4)
            assert r.coordinates(d, rep + shift) == {k: 1}


@CASES
@given(seeds)
def test_regular_modules_transport_and_return(seed):
    t = TruncationParams(3, 0, 5)
    A = verify(random_dgpa(seed), t)
    M = regular_module(A, 3, t)
    assert check_module_axioms(A, M, t).ok
    EM = to_envelope(A, M, t)
    assert check_envelope_module(EM).ok
    assert same_tables(from_envelope(A, EM, t), M)

