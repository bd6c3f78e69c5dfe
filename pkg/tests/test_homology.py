import pytest

from dgpa.catalog import two_generator
from dgpa.constructions import ground_field, tensor_product
from dgpa.core import Alphabet, Element
from dgpa.dg_poisson import BracketSpec, DGPAlgebra, DifferentialSpec, apply_d, verify
from dgpa.homology import CohomologyError, cohomology
from dgpa.presentation import Presentation, TruncationParams

T6 = TruncationParams(6, 0, 8)
T8 = TruncationParams(8, 0, 10)


def hand_dims_lambda_one(D):
    """Basis x1^e x2^k, d(x2^k) = 0 and d(x1 x2^k) = x2^(k+1)."""
    dims = []
    for d in range(D):
        chains = 1
        rank_out = 1 if d % 2 else 0          # x1 x2^k maps onto x2^(k+1)
        rank_in = 1 if d % 2 == 0 and d > 0 else 0
        dims.append(chains - rank_out - rank_in)
    return tuple(dims)


def test_lambda_one_algebra_is_acyclic_above_degree_zero():
    r = cohomology(two_generator(1, 0, 1), T8)
    assert r.dims_tuple() == hand_dims_lambda_one(8) == (1, 0, 0, 0, 0, 0, 0, 0)
    assert r.bracket_is_zero()
    assert r.edges == [8]


def test_non_poisson_input_is_noted():
    r = cohomology(two_generator(1, 0, 1), T6)
    assert any("leibniz_bracket" in n for n in r.notes)


def test_trivial_differential_keeps_algebra_and_bracket():
    A = two_generator(0, 0, 2)
    r = cohomology(A, T8)
    assert r.dims_tuple() == (1,) * 8
    br = r.as_dict()["bracket"]
    # {x1, x2} = 2 x1 x2 descends unchanged
    assert br["{[1.0],[2.0]}"] == "2 * [3.0]"
    assert br["{[2.0],[1.0]}"] == "-2 * [3.0]"
    assert r.as_dict()["product"]["[1.0]*[2.0]"] == "1 * [3.0]"


def test_mu_one_algebra_classes():
    # d x2 = x1 x2 and d(x2^k) = k x1 x2^k: only 1 and x1 survive
    r = cohomology(two_generator(0, 1, 1), T8)
    assert r.dims_tuple() == (1, 1, 0, 0, 0, 0, 0, 0)
    assert [str(e) for e in r.representatives[1]] == ["1 * x1"]


def with_free_even():
    a = Alphabet.of([("z", 2)])
    Z = DGPAlgebra(Presentation(a, (), True), DifferentialSpec(a), BracketSpec(a))
    return verify(tensor_product(two_generator(0, 1, 1), Z), T6)


def test_class_does_not_depend_on_representative():
    A = with_free_even()
    r = cohomology(A, T6)
    a = A.alphabet
    x1, x2, z = (Element.gen(a, n) for n in ("x1", "x2", "z"))
    # x1 z is a cocycle in degree 3 and d(x2) = x1 x2 is a nonzero coboundary there
    base = r.coordinates(3, x1 * z)
    assert base
    shifted = x1 * z + 5 * apply_d(A, x2, T6)
    assert not apply_d(A, x2, T6).is_zero()
    assert r.coordinates(3, shifted) == base
    with pytest.raises(CohomologyError):
        r.coordinates(2, x2)


def test_dims_stable_as_window_grows():
    A = with_free_even()
    small = cohomology(A, TruncationParams(5, 0, 6)).dims
    big = cohomology(A, TruncationParams(7, 0, 9)).dims
    assert all(small[d] == big[d] for d in small)


def test_ground_field():
    assert cohomology(ground_field(), T6).dims_tuple() == (1, 0, 0, 0, 0, 0)


def test_non_dg_algebra_rejected():
    with pytest.raises(CohomologyError) as err:
        cohomology(two_generator(1, 1, 1), T6)
    assert "d_squared" in str(err.value)
