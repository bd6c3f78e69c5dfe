"""Algebra maps given on generators, and their verification."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Mapping

from .core import ONE, Alphabet, Element, Terms, add_into, degree_of, format_element, mul_terms
from .presentation import Presentation, TruncationParams, as_noncommutative
from .report import AxiomReport


def _sign(a, b):
    return -1 if a % 2 and b % 2 else 1


def presentation_of(obj) -> Presentation:
    return obj if isinstance(obj, Presentation) else obj.presentation


def d_terms_of(obj, terms) -> Terms:
    if isinstance(obj, Presentation):
        return {}
    return obj.d_terms(terms)


def relations_to_check(source, target) -> tuple:
    """Source relations whose images must vanish.

    The graded commutativity of a commutative source is implicit in its
    presentation; it has to be checked explicitly against a noncommutative
    target.
    """
    p = presentation_of(source)
    q = presentation_of(target)
    if p.graded_commutative and not q.graded_commutative:
        return as_noncommutative(p).relations
    return p.relations


@dataclass(frozen=True)
class AlgebraMapData:
    source: object
    target: object
    images: Dict[int, Element]

    def __post_init__(self):
        src = self.source_alphabet
        tgt = self.target_alphabet
        clean = {}
        for i, e in self.images.items():
            if not 0 <= i < len(src):
                raise ValueError(f"map names unknown source generator id {i}")
            if e.alphabet != tgt:
                raise ValueError("generator image over the wrong generator list")
            d = degree_of(e)
            if d != "zero" and d != src[i].degree:
                raise ValueError(
                    f"image of {src[i].name} has degree {d}, expected {src[i].degree}")
            if e:
                clean[i] = e
        object.__setattr__(self, "images", dict(sorted(clean.items())))

    @property
    def source_alphabet(self) -> Alphabet:
        return presentation_of(self.source).alphabet

    @property
    def target_alphabet(self) -> Alphabet:
        return presentation_of(self.target).alphabet

    @classmethod
    def by_names(cls, source, target, images: Mapping[str, Element]):
        alph = presentation_of(source).alphabet
        return cls(source, target, {alph.index(k): v for k, v in images.items()})

    @classmethod
    def identity(cls, obj):
        alph = presentation_of(obj).alphabet
        return cls(obj, obj, {i: Element.word(alph, (i,)) for i in range(len(alph))})

    def image(self, i: int) -> Element:
        e = self.images.get(i)
        return e if e is not None else Element.zero(self.target_alphabet)

    def apply_terms(self, terms) -> Terms:
        """Image in the free algebra over the target generators."""
        out: Terms = {}
        cache = {}
        for w, c in terms.items():
            acc: Terms = {(): ONE}
            for i in w:
                img = cache.get(i)
                if img is None:
                    img = self.images[i].terms if i in self.images else {}
                    cache[i] = img
                acc = mul_terms(acc, img)
                if not acc:
                    break
            add_into(out, acc, c)
        return out

    def apply(self, e: Element, t: TruncationParams = None) -> Element:
        terms = self.apply_terms(e.terms)
        if t is not None:
            terms = presentation_of(self.target).table(t).reduce_terms(terms)
        return Element._raw(self.target_alphabet, terms)

    def compose(self, first: "AlgebraMapData") -> "AlgebraMapData":
        """self after first."""
        if first.target_alphabet != self.source_alphabet:
            raise ValueError("maps do not compose")
        imgs = {i: Element._raw(self.target_alphabet, self.apply_terms(e.terms))
                for i, e in first.images.items()}
        return AlgebraMapData(first.source, self.target, imgs)

    def describe(self) -> Dict[str, str]:
        src = self.source_alphabet
        return {src[i].name: format_element(self.image(i)) for i in range(len(src))}


def check_map(f: AlgebraMapData, t: TruncationParams, bracket: bool = None) -> AxiomReport:
    """Relations map to 0, d commutes with f on generators, optionally {,} too."""
    rep = AxiomReport(t)
    tgt = f.target
    tab = presentation_of(tgt).table(t)
    nf = tab.reduce_terms
    src_alph = f.source_alphabet
    tgt_alph = f.target_alphabet
    degs = src_alph.degrees

    def show(terms):
        return format_element(Element._raw(tgt_alph, dict(terms)))

    chk = rep.new("relations_preserved")
    for r in relations_to_check(f.source, tgt):
        if not t.contains(degree_of(r)):
            continue

        def g(r=r):
            got = nf(f.apply_terms(r.terms))
            if got:
                return (f"f({r})",), "0", show(got)
        chk.attempt(g)

    chk = rep.new("d_compatible")
    for i in range(len(src_alph)):
        if not t.contains(degs[i] + 1):
            continue

        def g(i=i):
            lhs = nf(d_terms_of(tgt, f.image(i).terms))
            rhs = nf(f.apply_terms(d_terms_of(f.source, {(i,): ONE})))
            if lhs != rhs:
                return (src_alph[i].name,), show(rhs), show(lhs)
        chk.attempt(g)

    if bracket is None:
        bracket = hasattr(f.source, "bracket") and hasattr(tgt, "bracket")
    if bracket:
        chk = rep.new("bracket_compatible")
        for i in range(len(src_alph)):
            for j in range(i, len(src_alph)):
                if not t.contains(degs[i] + degs[j]):
                    continue

                def g(i=i, j=j):
                    lhs = nf(tgt.bracket_terms(f.image(i).terms, f.image(j).terms))
                    rhs = nf(f.apply_terms(f.source.bracket_terms({(i,): ONE}, {(j,): ONE})))
                    if lhs != rhs:
                        return (src_alph[i].name, src_alph[j].name), show(rhs), show(lhs)
                chk.attempt(g)
    return rep


def maps_agree(f: AlgebraMapData, g: AlgebraMapData, t: TruncationParams) -> bool:
    """f and g agree on every generator modulo the target ideal."""
    nf = presentation_of(f.target).table(t).reduce_terms
    for i in range(len(f.source_alphabet)):
        a = f.image(i).terms
        b = g.image(i).terms
        diff = add_into(dict(a), b, Fraction(-1))
        if nf(diff):
            return False
    return True
