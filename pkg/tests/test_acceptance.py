"""One test per acceptance criterion; each prints a pass/fail line."""
import inspect
import time

import pytest

import test_properties
from conftest import note_criterion
from dgpa.catalog import abelian_lie, two_generator, xy_lie
from dgpa.compare import ISO, canonical_differentials_match, canonical_match, compare_presentations
from dgpa.constructions import (exterior_line, ground_field, opposite, opposite_dga, tensor_dga,
                                tensor_product)
from dgpa.core import Element
from dgpa.dg_poisson import check_axioms, verify
from dgpa.envelope import (alpha_map, beta_map, env_basis, env_presented, identity_between,
                           interchange_check, smash_env, tensor_env_inverse, tensor_env_map,
                           truncate)
from dgpa.homology import cohomology
from dgpa.io import parse_element
from dgpa.lie import semidirect, symmetric_algebra, universal_env_lie
from dgpa.maps import AlgebraMapData, check_map
from dgpa.modules import (check_envelope_module, from_envelope, regular_module, same_tables,
                          to_envelope)
from dgpa.presentation import Presentation, TruncationParams, graded_dimension, is_zero_mod_ideal
from dgpa.samples import random_dgpa

LISTED = (
    "x1.x1",
    "y1.y1",
    "x1.x2 - x2.x1",
    "x1.y1 + y1.x1",
    "x2.y2 - y2.x2",
    "y1.y2 - y2.y1 - p * (x2.y1 + x1.y2)",
    "y1.x2 - x2.y1 - p * x1.x2",
    "y2.x1 - x1.y2 + p * x1.x2",
)


def test_criterion_1_two_generator_axioms(criterion):
    t = TruncationParams(8, 0, 10)
    start = time.perf_counter()
    passing = {p: check_axioms(two_generator(*p), t).ok for p in [(0, 1, 1), (0, 0, 2), (0, 1, 0)]}
    lam_one = check_axioms(two_generator(1, 0, 1), t)
    bad = check_axioms(two_generator(1, 1, 1), t).check("d_squared")
    elapsed = time.perf_counter() - start
    hit = [c for c in bad.counterexamples if c.inputs == ("d(d(x1))",)]
    parts = {f"{p} passes": ok for p, ok in passing.items()}
    parts["(1,0,1) passes"] = lam_one.ok
    parts["(1,1,1) fails d^2 = 0 with d^2(x1) = x1x2"] = (
        not bad.ok and bool(hit) and hit[0].got == "1 * x1.x2")
    parts["runtime < 5 s"] = elapsed < 5
    if lam_one.ok:
        criterion(1, "two-generator axioms", parts)
        return
    # (1,0,1) violates bracket Leibniz; that part is tracked by the xfail test below
    del parts["(1,0,1) passes"]
    assert all(parts.values()), parts
    assert lam_one.failed() == ["leibniz_bracket"]
    note_criterion(1, "criterion  1: FAIL two-generator axioms (failing: (1,0,1) passes; it breaks "
                      "d{a,b} = {da,b} + (-1)^|a| {a,db}, see the decisions ledger; the other "
                      "four parameter checks and the runtime bound pass)")


@pytest.mark.xfail(strict=True, reason="(1,0,1) breaks bracket Leibniz: d{x1,x2} = x2^2 != 0")
def test_criterion_1_lambda_one_parameters_pass():
    assert check_axioms(two_generator(1, 0, 1), TruncationParams(8, 0, 10)).ok


def test_criterion_2_envelope_relations(criterion):
    t = TruncationParams(6, 0, 8)
    parts = {}
    for lam, mu, p in [(0, 1, 1), (0, 0, 2), (0, 1, 0)]:
        E = env_presented(verify(two_generator(lam, mu, p), t))
        alph = E.presentation.alphabet
        params = {"lambda": lam, "mu": mu, "p": p}
        listed = [parse_element(s, alph, params) for s in LISTED]
        listed = [e for e in listed if not e.is_zero()]
        mine = Presentation(alph, tuple(listed), False)
        tag = f"({lam},{mu},{p})"
        parts[f"{tag} listed relations hold"] = all(
            is_zero_mod_ideal(E.presentation, e, t) for e in listed)
        parts[f"{tag} computed relations follow from the list"] = all(
            is_zero_mod_ideal(mine, e, t) for e in E.presentation.relations)
        want = {"y1": "lambda * y2", "y2": "mu * (x2.y1 + x1.y2)"}
        parts[f"{tag} differential on y"] = all(
            E.diff.image(alph.index(n)) == parse_element(s, alph, params)
            for n, s in want.items())
    criterion(2, "presented envelope relations and differential", parts)


def test_criterion_3_smash_envelope(criterion):
    t = TruncationParams(5, 0, 8)
    parts = {}
    cases = [("T(0,1,1)", two_generator(0, 1, 1))] + [(f"random{s}", random_dgpa(s))
                                                      for s in (0, 5)]
    for name, A in cases:
        A = verify(A, t)
        E, S = env_presented(A), smash_env(A, t)
        parts[f"{name} dims"] = (graded_dimension(E.presentation, t).as_tuple()
                                 == graded_dimension(S.presentation, t).as_tuple())
        parts[f"{name} alpha preserves relations"] = check_map(alpha_map(E, S), t,
                                                               bracket=False).ok
        parts[f"{name} iso"] = compare_presentations(E, S.dga, alpha_map(E, S), beta_map(S, E),
                                                     t).verdict == ISO
    criterion(3, "presented and smash-product envelopes agree", parts)


def test_criterion_4_tensor_envelope(criterion):
    t = TruncationParams(5, 0, 8)
    A = verify(two_generator(0, 1, 1), t)
    B = verify(exterior_line("x3"), t)
    EAB = env_presented(verify(tensor_product(A, B), t))
    EAxEB = tensor_dga(env_presented(A), env_presented(B))
    iso = compare_presentations(EAB, EAxEB, tensor_env_map(EAB, EAxEB, 2, 1),
                                tensor_env_inverse(EAxEB, EAB, 2, 1), t)
    signs = interchange_check(EAB, 2, 1, t)
    criterion(4, "envelope of a tensor product", {"verdict iso": iso.verdict == ISO,
                                                  "interchange signs": signs.ok})


def test_criterion_5_opposite_envelope(criterion):
    t = TruncationParams(6, 0, 8)
    A = verify(two_generator(0, 1, 1), t)
    X = env_presented(verify(opposite(A), t))
    Y = opposite_dga(env_presented(A))
    criterion(5, "envelope of the opposite algebra", {
        "canonical relations identical": canonical_match(X, Y, t).ok,
        "differentials identical": canonical_differentials_match(X, Y, t).ok})


def test_criterion_6_symmetric_vs_semidirect(criterion):
    parts = {}
    for name, L, t, exact in [("xy", xy_lie(), TruncationParams(0, 0, 6), False),
                              ("abelian_1_2", abelian_lie((1, 2)), TruncationParams(6, 0, 6), True)]:
        ES = env_presented(verify(symmetric_algebra(L), t))
        U = universal_env_lie(semidirect(L))
        n = 2 * L.dim
        ua, ea = U.presentation.alphabet, ES.presentation.alphabet
        fwd = AlgebraMapData(ES, U, {i: Element.word(ua, (i,)) for i in range(n)})
        bwd = AlgebraMapData(U, ES, {i: Element.word(ea, (i,)) for i in range(n)})
        iso = compare_presentations(ES, U, fwd, bwd, t)
        parts[f"{name} iso"] = iso.verdict == ISO
        # degree-0 generators make the length cap bind, so dims are upper bounds
        parts[f"{name} dims flag"] = iso.exact == exact
    criterion(6, "symmetric-algebra envelope vs enveloping algebra of L x L", parts)


def test_criterion_7_ground_field_and_coopposite(criterion):
    t = TruncationParams(5, 0, 8)
    E = env_basis(truncate(verify(ground_field(), t), t))
    parts = {
        "ground field dims": graded_dimension(E.presentation, t).as_tuple() == (1, 0, 0, 0, 0, 0),
        "h_1 = 0": is_zero_mod_ideal(E.presentation, E.presentation.gen("h_1"), t),
    }
    t = TruncationParams(4, 0, 8)
    A = verify(two_generator(0, 1, 1), t)
    Aop = verify(opposite(A), t)
    EA = env_presented(A)
    left = env_presented(verify(tensor_product(A, Aop), t))
    right = tensor_dga(EA, opposite_dga(EA))
    mid = tensor_dga(EA, env_presented(Aop))
    fwd = identity_between(mid, right).compose(tensor_env_map(left, mid, 2, 2))
    bwd = tensor_env_inverse(mid, left, 2, 2).compose(identity_between(right, mid))
    parts["A (x) A^op iso"] = compare_presentations(left, right, fwd, bwd, t).verdict == ISO
    criterion(7, "ground field envelope and A (x) A^op", parts)


def test_criterion_8_cohomology(criterion):
    t = TruncationParams(6, 0, 8)
    res = cohomology(two_generator(1, 0, 1), t)
    # d(x2^k) = 0 and d(x1 x2^k) = x2^(k+1): every positive degree cancels
    hand = tuple(1 - (d % 2) - (1 if d and d % 2 == 0 else 0) for d in range(6))
    criterion(8, "cohomology of the lambda = 1 algebra", {
        "dims": res.dims_tuple(list(range(6))) == hand == (1, 0, 0, 0, 0, 0),
        "exact": res.exact,
        "bracket zero": res.bracket_is_zero()})


def test_criterion_9_module_transport(criterion):
    t = TruncationParams(4, 0, 8)
    A = verify(two_generator(0, 1, 1), TruncationParams(6, 0, 8))
    M = regular_module(A, 4, t)
    parts = {}
    for kind in ("presented", "basis"):
        EM = to_envelope(A, M, t, kind)
        parts[f"{kind} relations annihilate"] = check_envelope_module(EM).ok
        parts[f"{kind} round trip"] = same_tables(M, from_envelope(A, EM, t))
    criterion(9, "regular module through the envelope and back", parts)


def test_criterion_10_property_suites(criterion):
    tests = [f for n, f in inspect.getmembers(test_properties) if n.startswith("test_")]
    start = time.perf_counter()
    parts = {"at least 200 cases each": test_properties.CASES.max_examples >= 200,
             "seeded": test_properties.CASES.derandomize}
    for f in tests:
        parts[f"{f.__name__} is a property test"] = hasattr(f, "hypothesis")
        f()
        parts[f.__name__] = True
    parts["under 2 min"] = time.perf_counter() - start < 120
    criterion(10, "seeded property suites", parts)
