import json
import re

from dgpa.catalog import two_generator
from dgpa.compare import FAILED, ISO, MAP_ONLY, canonical_match, compare_presentations
from dgpa.constructions import exterior_line, tensor_product
from dgpa.core import Element
from dgpa.dg_poisson import verify
from dgpa.envelope import env_presented
from dgpa.io import load_algebra, parse_map, presentation_document
from dgpa.maps import AlgebraMapData
from dgpa.presentation import TruncationParams

T5 = TruncationParams(5, 0, 8)


def renamed(A, names):
    text = json.dumps(presentation_document(A))
    for old, new in names.items():
        text = re.sub(rf"\b{old}\b", new, text)
    return load_algebra(text)


def test_identity_is_iso_with_and_without_inverse():
    E = env_presented(verify(two_generator(0, 1, 1), T5))
    f = AlgebraMapData.identity(E)
    assert compare_presentations(E, E, f, None, T5).verdict == ISO
    rep = compare_presentations(E, E, f, f, T5)
    assert rep.verdict == ISO
    names = [c.name for c in rep.checks.checks]
    assert "backward_after_forward" in names and "bijective_in_window" not in names


def test_renaming_generators_keeps_the_verdict():
    A = two_generator(0, 1, 1)
    B = renamed(A, {"x1": "a", "x2": "b"})
    f = AlgebraMapData(A, B, parse_map("x1=a; x2=b", A.alphabet, B.alphabet))
    g = AlgebraMapData(B, A, parse_map("a=x1; b=x2", B.alphabet, A.alphabet))
    assert compare_presentations(A, B, f, g, T5).verdict == ISO


def test_inclusion_is_map_only():
    A = two_generator(0, 0, 0)
    B = tensor_product(A, exterior_line("x3"))
    f = AlgebraMapData(A, B, parse_map("x1=x1; x2=x2", A.alphabet, B.alphabet))
    rep = compare_presentations(A, B, f, None, T5)
    assert rep.verdict == MAP_ONLY
    assert "dims_equal" in rep.checks.failed()


def test_non_dg_map_fails():
    A = two_generator(0, 1, 1)
    a = A.alphabet
    f = AlgebraMapData(A, A, {0: 2 * Element.gen(a, "x1"), 1: Element.gen(a, "x2")})
    rep = compare_presentations(A, A, f, None, T5)
    assert rep.verdict == FAILED
    assert rep.as_dict()["verdict"] == FAILED


def test_canonical_match_is_order_independent():
    A = two_generator(0, 1, 1)
    doc = presentation_document(A)
    doc["relations"] = list(reversed(doc["relations"])) + ["2 * x1.x1"]
    assert canonical_match(A, load_algebra(doc), T5).ok
    doc["relations"].append("x2.x2")
    assert not canonical_match(A, load_algebra(doc), T5).ok
