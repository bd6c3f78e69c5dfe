"""Seeded random DG Lie algebras and DGPAs that are valid by construction.

A sample is a direct sum of small valid pieces followed by a random
degree-preserving change of basis, so structure constants are dense but the
axioms still hold exactly.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from typing import List, Tuple

from .core import ONE, Alphabet
from .dg_poisson import DGPAlgebra
from .lie import DGLieAlgebra, symmetric_algebra, vadd


@dataclass(frozen=True)
class SampleConfig:
    max_dim: int = 3
    min_degree: int = 1
    max_degree: int = 2
    basis_changes: int = 3
    coefficient_range: int = 2


def _piece(rng: random.Random, cfg: SampleConfig, room: int):
    """(degrees, brackets, differential) of one valid piece with local ids."""
    lo, hi = cfg.min_degree, cfg.max_degree
    kinds = ["abelian"]
    if room >= 2 and hi - lo >= 1:
        kinds.append("acyclic")
    if room >= 3 and 2 * lo <= hi:
        kinds.append("heisenberg")
    if room >= 2 and lo <= 1 <= hi and hi >= 2:
        kinds.append("odd_square")
    if room >= 5 and 2 * lo + 1 <= hi:
        kinds.append("dg_bracket")
    kind = rng.choice(kinds)
    c = Fraction(rng.choice([1, 2, -1, Fraction(1, 2)]))
    if kind == "abelian":
        return [rng.randint(lo, hi)], {}, {}
    if kind == "acyclic":
        k = rng.randint(lo, hi - 1)
        return [k, k + 1], {}, {0: {1: c}}
    if kind == "heisenberg":
        i = rng.randint(lo, hi - lo)
        j = rng.randint(lo, hi - i)
        return [i, j, i + j], {(0, 1): {2: c}}, {}
    if kind == "odd_square":
        return [1, 2], {(0, 0): {1: c}}, {}
    i = lo
    j = rng.randint(lo, hi - i - 1)
    # a, b = da, c, e = [a, c], f = [b, c] = de
    return [i, i + 1, j, i + j, i + j + 1], {(0, 2): {3: c}, (1, 2): {4: c}}, {0: {1: ONE},
                                                                             3: {4: ONE}}


def elementary_change(L: DGLieAlgebra, a: int, b: int, c: Fraction) -> DGLieAlgebra:
    """New basis g_b = e_b + c e_a (same degree), other vectors unchanged."""
    if L.alphabet.degrees[a] != L.alphabet.degrees[b] or a == b:
        raise ValueError("elementary change needs two distinct basis vectors of one degree")

    def to_e(i):
        return {b: ONE, a: c} if i == b else {i: ONE}

    def to_g(v):
        v = dict(v)
        x = v.get(b)
        if x:
            vadd(v, {a: -c * x})
        return v

    n = L.dim
    br, d = {}, {}
    for i in range(n):
        for j in range(n):
            v = to_g(L.bracket(to_e(i), to_e(j)))
            if v:
                br[(i, j)] = v
        v = to_g(L.d(to_e(i)))
        if v:
            d[i] = v
    return DGLieAlgebra(L.alphabet, br, d, L.label)


def random_dg_lie(seed: int, cfg: SampleConfig = SampleConfig()) -> DGLieAlgebra:
    rng = random.Random(seed)
    target = rng.randint(1, cfg.max_dim)
    degs: List[int] = []
    br, d = {}, {}
    while len(degs) < target:
        pd, pb, pdiff = _piece(rng, cfg, target - len(degs))
        if len(degs) + len(pd) > cfg.max_dim:
            continue
        off = len(degs)
        degs += pd
        for (i, j), v in pb.items():
            br[(i + off, j + off)] = {k + off: x for k, x in v.items()}
        for i, v in pdiff.items():
            d[i + off] = {k + off: x for k, x in v.items()}
    # full antisymmetric table so the basis change sees every entry
    alph = Alphabet.of([(f"x{i + 1}", g) for i, g in enumerate(degs)])
    L = DGLieAlgebra(alph, br, d, label=f"L{seed}")
    for _ in range(cfg.basis_changes):
        by_deg = {}
        for i, g in enumerate(degs):
            by_deg.setdefault(g, []).append(i)
        groups = [ids for ids in by_deg.values() if len(ids) > 1]
        if not groups:
            break
        a, b = rng.sample(rng.choice(groups), 2)
        c = Fraction(rng.choice([k for k in range(-cfg.coefficient_range,
                                                  cfg.coefficient_range + 1) if k]))
        L = elementary_change(L, a, b, c)
    return L


def random_dgpa(seed: int, cfg: SampleConfig = SampleConfig()) -> DGPAlgebra:
    """SL for a random valid DG Lie algebra L; a DGPA by construction."""
    return symmetric_algebra(random_dg_lie(seed, cfg))


def sample_degrees(L: DGLieAlgebra) -> Tuple[int, ...]:
    return L.alphabet.degrees
