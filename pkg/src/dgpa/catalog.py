"""Small named algebras used by the demo, the scripts and the tests."""
from __future__ import annotations

from fractions import Fraction

from .dg_poisson import DGPAlgebra
from .io import build_dgpa, parse_input, parse_lie
from .lie import DGLieAlgebra


def two_generator_document(lam=1, mu=0, p=1) -> dict:
    """x1 odd of degree 1, x2 even of degree 2, d x1 = λ x2, d x2 = μ x1x2, {x1,x2} = p x1x2."""
    return {
        "label": "T",
        "generators": [{"name": "x1", "degree": 1}, {"name": "x2", "degree": 2}],
        "graded_commutative": True,
        "relations": ["x1.x1", "x1.x2 - x2.x1"],
        "differential": {"x1": "lambda * x2", "x2": "mu * x1.x2"},
        "bracket": {"x1,x2": "p * x1.x2"},
        "parameters": {"lambda": str(Fraction(lam)), "mu": str(Fraction(mu)),
                       "p": str(Fraction(p))},
    }


def two_generator(lam=1, mu=0, p=1) -> DGPAlgebra:
    return build_dgpa(parse_input(two_generator_document(lam, mu, p)))


def exterior_document(name: str = "x3") -> dict:
    return {"label": "ext", "generators": [{"name": name, "degree": 1}],
            "graded_commutative": True, "relations": [], "differential": {}, "bracket": {}}


def xy_lie() -> DGLieAlgebra:
    """The non-abelian 2-dimensional Lie algebra [x, y] = y in degree 0."""
    return parse_lie({"label": "xy", "basis": [{"name": "x", "degree": 0},
                                               {"name": "y", "degree": 0}],
                      "bracket": {"x,y": "y"}})


def abelian_lie(degrees=(1, 2)) -> DGLieAlgebra:
    return parse_lie({"label": "ab", "basis": [{"name": f"x{i + 1}", "degree": d}
                                               for i, d in enumerate(degrees)]})
