import json
from fractions import Fraction
from pathlib import Path

import pytest

from dgpa.catalog import two_generator, xy_lie
from dgpa.core import Alphabet, Element
from dgpa.dg_poisson import DGAlgebra, DGPAlgebra, check_axioms, check_dg_algebra, verify
from dgpa.envelope import env_presented
from dgpa.io import (ParseError, lie_document, load_algebra, parse_element, parse_input,
                     parse_lie, parse_map, parse_module, parse_presentation, parse_scalar,
                     serialize_presentation)
from dgpa.lie import check_lie, semidirect
from dgpa.modules import check_module_axioms
from dgpa.presentation import TruncationParams, graded_dimension

FIX = Path(__file__).resolve().parent.parent / "fixtures"
T5 = TruncationParams(5, 0, 8)
ALPH = Alphabet.of([("x1", 1), ("x2", 2)])


def test_two_generator_document():
    doc = parse_input(str(FIX / "two_generator.json"))
    assert doc.generators == [("x1", 1), ("x2", 2)]
    assert doc.parameters == {"lambda": 1, "mu": 0, "p": 1}
    A = load_algebra(str(FIX / "two_generator.json"), {"lambda": Fraction(0), "mu": Fraction(1)})
    assert isinstance(A, DGPAlgebra) and A == two_generator(0, 1, 1)
    assert check_axioms(A, T5).ok


def test_empty_document_is_ground_field():
    A = load_algebra({})
    assert graded_dimension(A.presentation, T5).as_tuple() == (1, 0, 0, 0, 0, 0)


def test_non_commutative_document_is_a_dg_algebra():
    A = load_algebra({"generators": [{"name": "u", "degree": 1}], "graded_commutative": False})
    assert isinstance(A, DGAlgebra)
    assert graded_dimension(A.presentation, TruncationParams(3, 0, 4)).as_tuple() == (1, 1, 1, 1)


@pytest.mark.parametrize("doc,needle", [
    ({"generators": [{"name": "x1", "degree": 1}, {"name": "x2", "degree": 2}],
      "relations": ["x1 + x2"]}, "relation 1 'x1 + x2' is not homogeneous"),
    ({"generators": [], "colour": 1}, "unknown keys ['colour']"),
    ({"generators": [{"name": "x1", "degree": 1}], "differential": {"x1": "x1"}},
     "must be homogeneous of degree 2"),
    ({"generators": [{"name": "x", "degree": "1"}]}, "must be an integer"),
    ({"generators": [{"name": "x"}, {"name": "x"}]}, "duplicate"),
    ({"generators": [{"name": "x"}], "parameters": {"x": "1"}}, "clashes"),
    ({"parameters": {"c": "1/0"}}, "zero denominator"),
])
def test_rejected_documents(doc, needle):
    with pytest.raises(ParseError) as err:
        load_algebra(doc)
    assert needle in str(err.value)


@pytest.mark.parametrize("text,pos", [
    ("x1 + * x2", 5), ("x1 . ", 5), ("x3", 0), ("x1 $ x2", 3), ("(x1", 3),
])
def test_syntax_errors_carry_positions(text, pos):
    with pytest.raises(ParseError) as err:
        parse_element(text, ALPH)
    assert err.value.pos == pos and f"position {pos}" in str(err.value)


def test_expression_syntax():
    x1, x2 = Element.gen(ALPH, "x1"), Element.gen(ALPH, "x2")
    assert parse_element("-1/2 * x1.x2 + 3 * x2", ALPH) == Fraction(-1, 2) * (x1 * x2) + 3 * x2
    assert parse_element("c * (x1 + x1)", ALPH, {"c": Fraction(3)}) == 6 * x1
    assert parse_scalar("6/4") == Fraction(3, 2)
    with pytest.raises(ParseError):
        parse_scalar("1.5")


def test_bad_json_reports_position():
    with pytest.raises(ParseError) as err:
        load_algebra('{"generators": [}')
    assert err.value.pos >= 0


@pytest.mark.parametrize("build", [
    lambda: two_generator(0, 1, 1),
    lambda: two_generator(1, 0, 1),
    lambda: env_presented(verify(two_generator(0, 1, 1), T5)),
    lambda: env_presented(verify(two_generator(0, 1, 1), T5)).presentation,
])
def test_serialize_parse_round_trip(build):
    obj = build()
    text = serialize_presentation(obj)
    again = serialize_presentation(parse_presentation(text))
    assert again == text


def test_serialized_envelope_is_still_dg():
    E = env_presented(verify(two_generator(0, 1, 1), T5))
    back = parse_presentation(serialize_presentation(E))
    assert isinstance(back, DGAlgebra)
    assert check_dg_algebra(back, T5).ok


def test_lie_documents():
    L = parse_lie(str(FIX / "lie_xy.json"))
    assert L == xy_lie()
    S = semidirect(L)
    back = parse_lie(json.dumps(lie_document(S)))
    assert back.brackets == S.brackets and back.alphabet == S.alphabet
    assert check_lie(back).ok
    with pytest.raises(ParseError):
        parse_lie({"basis": [{"name": "x", "degree": 0}], "bracket": {"x,z": "x"}})


def test_module_documents():
    A = verify(two_generator(0, 1, 1), TruncationParams(4, 0, 8))
    t = TruncationParams(4, 0, 8)
    M = parse_module(str(FIX / "module_regular.json"), A, t)
    assert M.dim == 5 and M.label == "A_le4"
    assert check_module_axioms(A, M, t).ok
    N = parse_module(str(FIX / "module_trivial.json"), A, t)
    assert check_module_axioms(A, N, t).ok
    with pytest.raises(ParseError):
        parse_module({"basis": [{"name": "v", "degree": 0}], "action": {"x1,v": "v"}}, A, t)


def test_map_syntax():
    img = parse_map("x1 = 2 * x1; x2=x2", ALPH, ALPH)
    assert img == {0: 2 * Element.gen(ALPH, "x1"), 1: Element.gen(ALPH, "x2")}
    with pytest.raises(ParseError):
        parse_map("x9=x1", ALPH, ALPH)
    with pytest.raises(ParseError):
        parse_map("x1", ALPH, ALPH)
