import copy

import pytest

from dgpa.catalog import two_generator
from dgpa.constructions import exterior_line, ground_field
from dgpa.dg_poisson import verify
from dgpa.modules import (DGPModule, ModuleError, check_envelope_map, check_envelope_module,
                          check_module_axioms, check_module_map, from_envelope,
                          module_from_generators, regular_module, same_tables, tensor_module,
                          to_envelope, transport_module, zero_module)
from dgpa.presentation import TruncationParams

T4 = TruncationParams(4, 0, 8)


@pytest.fixture(scope="module")
def algebra():
    return verify(two_generator(0, 1, 1), T4)


@pytest.fixture(scope="module")
def regular(algebra):
    return regular_module(algebra, 4, T4)


def test_regular_module_passes(algebra, regular):
    assert regular.names == ("1", "x1", "x2", "x1_x2", "x2_x2")
    rep = check_module_axioms(algebra, regular, T4)
    assert rep.ok
    assert [c.name for c in rep.checks] == ["unit", "relations_act_trivially", "associativity",
                                            "ia", "ib", "ic", "ii", "dg_leibniz", "d_squared"]


def test_flipped_bracket_sign_breaks_first_bracket_axiom(algebra, regular):
    for key in sorted(regular.bracket_action):
        bad = copy.deepcopy(regular)
        bad.bracket_action[key] = {i: -c for i, c in bad.bracket_action[key].items()}
        assert "ia" in check_module_axioms(algebra, bad, T4).failed()


def test_regular_module_needs_bracket_compatible_differential():
    A = two_generator(1, 0, 1)
    assert check_module_axioms(A, regular_module(A, 4, T4), T4).failed() == ["ii"]


def test_trivial_module(algebra):
    # one basis vector in degree 0, everything of positive degree acts by zero
    M = module_from_generators(algebra, [("v", 0)], {}, {}, {}, T4)
    assert check_module_axioms(algebra, M, T4).ok


def test_zero_module(algebra):
    Z = zero_module()
    assert check_module_axioms(algebra, Z, T4).ok
    EM = to_envelope(algebra, Z, T4)
    assert check_envelope_module(EM).ok
    assert same_tables(from_envelope(algebra, EM, T4), Z)


@pytest.mark.parametrize("kind", ["presented", "basis"])
def test_transport_round_trip(algebra, regular, kind):
    EM = to_envelope(algebra, regular, T4, kind)
    assert check_envelope_module(EM).ok
    back = from_envelope(algebra, EM, T4)
    assert same_tables(back, regular)


def test_generated_module_matches_regular(algebra, regular):
    gens = {}
    brs = {}
    n = len(algebra.alphabet)
    for g in range(n):
        for i in range(regular.dim):
            v = regular.action.get(((g,), i))
            if v:
                gens[(g, i)] = v
            b = regular.bracket_action.get(((g,), i))
            if b:
                brs[(g, i)] = b
    basis = list(zip(regular.names, regular.degrees))
    M = module_from_generators(algebra, basis, gens, brs, regular.differential, T4)
    assert same_tables(M, regular)


@pytest.mark.parametrize("kind", ["presented", "basis"])
def test_module_maps_transport(algebra, regular, kind):
    EM = to_envelope(algebra, regular, T4, kind)
    scale = {i: {i: 3} for i in range(regular.dim)}
    assert check_module_map(algebra, regular, regular, scale, T4).ok
    assert check_envelope_map(EM, EM, scale).ok
    # projection onto the unit is not a module map on either side
    proj = {0: {0: 1}}
    assert not check_module_map(algebra, regular, regular, proj, T4).ok
    assert not check_envelope_map(EM, EM, proj).ok


def test_broken_envelope_module_detected(algebra, regular):
    EM = to_envelope(algebra, regular, T4)
    EM.generator_action[0] = {i: {j: 2 * c for j, c in v.items()}
                              for i, v in EM.generator_action[0].items()}
    assert not check_envelope_module(EM).ok


def test_module_differential_squared(algebra):
    M = DGPModule(("u", "v", "w"), (0, 1, 2), differential={0: {1: 1}, 1: {2: 1}})
    assert "d_squared" in check_module_axioms(algebra, M, T4).failed()


def test_checked_transport(algebra, regular):
    EM = transport_module(algebra, regular, "to_envelope", T4)
    back = transport_module(algebra, EM, "from_envelope", T4)
    assert same_tables(back, regular) and check_module_axioms(algebra, back, T4).ok
    bad = copy.deepcopy(regular)
    key = sorted(bad.bracket_action)[0]
    bad.bracket_action[key] = {i: -c for i, c in bad.bracket_action[key].items()}
    with pytest.raises(ModuleError) as err:
        transport_module(algebra, bad, "to_envelope", T4)
    assert "ia" in str(err.value)
    EM.generator_action[0] = {}
    with pytest.raises(ModuleError):
        transport_module(algebra, EM, "from_envelope", T4)
    with pytest.raises(ValueError):
        transport_module(algebra, regular, "sideways", T4)


T5 = TruncationParams(5, 0, 8)


@pytest.mark.parametrize("right,deg_m,deg_n", [
    (lambda: exterior_line("x3"), 3, 1),
    (lambda: two_generator(0, 0, 2), 3, 2),
])
def test_tensor_module_satisfies_axioms(right, deg_m, deg_n):
    A, B = verify(two_generator(0, 1, 1), T5), verify(right(), T5)
    M, N = regular_module(A, deg_m, T5), regular_module(B, deg_n, T5)
    AB, MN = tensor_module(A, M, B, N, T5)
    assert MN.dim == M.dim * N.dim and MN.bracket_action
    assert check_module_axioms(AB, MN, T5).ok
    key = sorted(MN.bracket_action)[0]
    bad = copy.deepcopy(MN)
    bad.bracket_action[key] = {i: -c for i, c in bad.bracket_action[key].items()}
    assert "ia" in check_module_axioms(AB, bad, T5).failed()


def test_tensor_with_trivial_module_keeps_tables():
    A = verify(two_generator(0, 1, 1), T4)
    M = regular_module(A, 3, T4)
    k = verify(ground_field(), T4)
    AK, MK = tensor_module(A, M, k, module_from_generators(k, [("v", 0)], {}, {}, {}, T4), T4)
    assert MK.names == tuple(f"{n}⊗v" for n in M.names)
    assert MK.action == M.action and MK.bracket_action == M.bracket_action
    assert MK.differential == M.differential
