"""Finite-dimensional DG Lie algebras, L ⋊ L, U(L) and SL."""
from __future__ import annotations

from fractions import Fraction
from typing import Dict, Iterable, Mapping, Tuple

from .core import ONE, ZERO, Alphabet, Element, copy_names
from .dg_poisson import BracketSpec, DGAlgebra, DGPAlgebra, DifferentialSpec
from .presentation import Presentation
from .report import AxiomReport

Vector = Dict[int, Fraction]


def _sign(a, b):
    return -1 if a % 2 and b % 2 else 1


def vadd(acc: Vector, v: Mapping[int, Fraction], c=ONE) -> Vector:
    for k, x in v.items():
        y = acc.get(k, ZERO) + c * x
        if y:
            acc[k] = y
        else:
            acc.pop(k, None)
    return acc


def _clean(v: Mapping[int, object]) -> Vector:
    return {int(k): Fraction(c) for k, c in v.items() if Fraction(c)}


class DGLieAlgebra:
    """Structure constants [e_i, e_j] and differential matrix on a graded basis."""

    def __init__(self, alphabet: Alphabet, brackets: Mapping[Tuple[int, int], Mapping[int, object]] = None,
                 differential: Mapping[int, Mapping[int, object]] = None, label: str = ""):
        degs = alphabet.degrees
        table: Dict[Tuple[int, int], Vector] = {}
        for (i, j), v in (brackets or {}).items():
            v = _clean(v)
            for k in v:
                if degs[k] != degs[i] + degs[j]:
                    raise ValueError(
                        f"[{alphabet[i].name},{alphabet[j].name}] has a component of wrong degree")
            if v:
                table[(i, j)] = v
        for (i, j), v in list(table.items()):
            if (j, i) not in table:
                table[(j, i)] = {k: -_sign(degs[i], degs[j]) * c for k, c in v.items()}
        diff: Dict[int, Vector] = {}
        for i, v in (differential or {}).items():
            v = _clean(v)
            for k in v:
                if degs[k] != degs[i] + 1:
                    raise ValueError(f"d({alphabet[i].name}) has a component of wrong degree")
            if v:
                diff[i] = v
        self.alphabet = alphabet
        self.brackets = dict(sorted(table.items()))
        self.differential = dict(sorted(diff.items()))
        self.label = label

    @classmethod
    def build(cls, basis: Iterable[Tuple[str, int]], brackets=None, differential=None, label=""):
        """Name-based constructor: brackets {("x","y"): {"y": 1}}, differential {"x": {...}}."""
        alph = Alphabet.of(basis)
        idx = alph.index
        br = {(idx(a), idx(b)): {idx(k): c for k, c in v.items()}
              for (a, b), v in (brackets or {}).items()}
        d = {idx(a): {idx(k): c for k, c in v.items()} for a, v in (differential or {}).items()}
        return cls(alph, br, d, label)

    def __eq__(self, other):
        return isinstance(other, DGLieAlgebra) and self.alphabet == other.alphabet and \
            self.brackets == other.brackets and self.differential == other.differential

    def __hash__(self):
        return hash((self.alphabet, tuple(self.brackets), tuple(self.differential)))

    def __repr__(self):
        return f"DGLieAlgebra({self.label or self.alphabet!r})"

    @property
    def dim(self) -> int:
        return len(self.alphabet)

    def degree(self, v: Vector):
        degs = {self.alphabet.degrees[k] for k in v}
        return degs.pop() if len(degs) == 1 else (None if not degs else "mixed")

    def bracket(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, a in u.items():
            for j, b in v.items():
                w = self.brackets.get((i, j))
                if w:
                    vadd(out, w, a * b)
        return out

    def d(self, v: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, a in v.items():
            w = self.differential.get(i)
            if w:
                vadd(out, w, a)
        return out

    def basis_vector(self, i: int) -> Vector:
        return {i: ONE}

    def is_abelian(self) -> bool:
        return not self.brackets


def check_lie(L: DGLieAlgebra) -> AxiomReport:
    """Exact DG Lie axioms on all basis pairs and triples."""
    degs = L.alphabet.degrees
    names = L.alphabet.names
    n = L.dim
    rep = AxiomReport(None)
    e = L.basis_vector

    def show(v):
        if not v:
            return "0"
        return " + ".join(f"{c} * {names[k]}" for k, c in sorted(v.items(), reverse=True))

    chk = rep.new("antisymmetry")
    for i in range(n):
        for j in range(n):
            lhs = L.bracket(e(i), e(j))
            rhs = {k: -_sign(degs[i], degs[j]) * c for k, c in L.bracket(e(j), e(i)).items()}
            chk.record(None if lhs == rhs else ((names[i], names[j]), show(rhs), show(lhs)))

    chk = rep.new("jacobi")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                lhs = L.bracket(e(i), L.bracket(e(j), e(k)))
                rhs = vadd(dict(L.bracket(L.bracket(e(i), e(j)), e(k))),
                           L.bracket(e(j), L.bracket(e(i), e(k))), _sign(degs[i], degs[j]))
                chk.record(None if lhs == rhs else
                           ((names[i], names[j], names[k]), show(rhs), show(lhs)))

    chk = rep.new("d_squared")
    for i in range(n):
        got = L.d(L.d(e(i)))
        chk.record(None if not got else ((f"d(d({names[i]}))",), "0", show(got)))

    chk = rep.new("leibniz_bracket")
    for i in range(n):
        for j in range(n):
            lhs = L.d(L.bracket(e(i), e(j)))
            rhs = vadd(dict(L.bracket(L.d(e(i)), e(j))), L.bracket(e(i), L.d(e(j))),
                       -1 if degs[i] % 2 else 1)
            chk.record(None if lhs == rhs else ((names[i], names[j]), show(rhs), show(lhs)))
    return rep


def semidirect(L: DGLieAlgebra) -> DGLieAlgebra:
    """L ⋊ L on pairs (x1, x2), basis (e_i, 0) then (0, e_i).

    {(x1,x2),(y1,y2)} = ([x2,y1] - (-1)^{|x||y|}[y2,x1], [x2,y2]).
    """
    n = L.dim
    degs = L.alphabet.degrees
    names = L.alphabet.names
    second = copy_names(names)
    alph = Alphabet.of(list(zip(names, degs)) + list(zip(second, degs)))

    def split(i):
        return ({i: ONE}, {}) if i < n else ({}, {i - n: ONE})

    brackets = {}
    for a in range(2 * n):
        x1, x2 = split(a)
        da = degs[a % n]
        for b in range(2 * n):
            y1, y2 = split(b)
            db = degs[b % n]
            first = vadd(dict(L.bracket(x2, y1)), L.bracket(y2, x1), -_sign(da, db))
            sec = L.bracket(x2, y2)
            v = dict(first)
            for k, c in sec.items():
                v[k + n] = c
            if v:
                brackets[(a, b)] = v
    diff = {}
    for i, v in L.differential.items():
        diff[i] = dict(v)
        diff[i + n] = {k + n: c for k, c in v.items()}
    return DGLieAlgebra(alph, brackets, diff, label=f"{L.label or 'L'}⋊{L.label or 'L'}")


def _linear(alph: Alphabet, v: Mapping[int, Fraction]) -> Element:
    return Element._raw(alph, {(k,): c for k, c in v.items()})


def universal_env_lie(L: DGLieAlgebra) -> DGAlgebra:
    """U(L) = T(L)/(gh - (-1)^{|g||h|} hg - [g,h])."""
    alph = L.alphabet
    degs = alph.degrees
    rels = []
    for i in range(L.dim):
        for j in range(i, L.dim):
            terms = {}
            vadd_terms(terms, {(i, j): ONE})
            vadd_terms(terms, {(j, i): Fraction(-_sign(degs[i], degs[j]))})
            vadd_terms(terms, {(k,): -c for k, c in L.bracket({i: ONE}, {j: ONE}).items()})
            if terms:
                rels.append(Element._raw(alph, terms))
    p = Presentation(alph, tuple(rels), False, f"U({L.label or 'L'})")
    d = DifferentialSpec(alph, {i: _linear(alph, v) for i, v in L.differential.items()})
    return DGAlgebra(p, d)


def vadd_terms(acc, terms):
    for w, c in terms.items():
        y = acc.get(w, ZERO) + c
        if y:
            acc[w] = y
        else:
            acc.pop(w, None)
    return acc


def symmetric_algebra(L: DGLieAlgebra) -> DGPAlgebra:
    """SL with {a, b} = [a, b] on L."""
    alph = L.alphabet
    p = Presentation(alph, (), True, f"S({L.label or 'L'})")
    br = {}
    for (i, j), v in L.brackets.items():
        if i <= j:
            br[(i, j)] = _linear(alph, v)
    d = DifferentialSpec(alph, {i: _linear(alph, v) for i, v in L.differential.items()})
    return DGPAlgebra(p, d, BracketSpec(alph, br))
