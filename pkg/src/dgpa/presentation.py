"""Presented graded algebras R/I with windowed normal forms.

Ideal membership is decided degree by degree: the span of the consequences
u*r*v of the relations inside a truncation window is row reduced against the
words of that degree. The surviving (non-pivot) words form the basis.
"""
from __future__ import annotations

import os
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Optional, Sequence, Tuple

from .core import (
    ONE,
    ZERO,
    Alphabet,
    Element,
    Terms,
    Word,
    add_into,
    degree_of,
    gc_normalize,
    mul_terms,
)
from .linalg import Echelon

DEFAULT_WORD_CAP = 250_000


class WindowError(ValueError):
    """An element left the truncation window."""


class WindowExplosion(RuntimeError):
    """Word enumeration exceeded the configured cap."""


def word_cap() -> int:
    raw = os.environ.get("DGPA_WORD_CAP")
    if raw:
        return int(raw)
    return DEFAULT_WORD_CAP


@dataclass(frozen=True)
class TruncationParams:
    max_degree: int = 6
    min_degree: int = 0
    max_word_length: int = 8

    def __post_init__(self):
        if self.min_degree > self.max_degree:
            raise ValueError("min_degree exceeds max_degree")
        if self.max_word_length < 1:
            raise ValueError("max_word_length must be at least 1")

    def degrees(self) -> range:
        return range(self.min_degree, self.max_degree + 1)

    def contains(self, degree: int) -> bool:
        return self.min_degree <= degree <= self.max_degree

    def as_dict(self) -> dict:
        return {
            "max_degree": self.max_degree,
            "min_degree": self.min_degree,
            "max_length": self.max_word_length,
        }


def _relation_sort_key(e: Element):
    words = e.sorted_words()
    return [e.alphabet.word_key(w) for w in words], [e.terms[w] for w in words]


@dataclass(frozen=True)
class Presentation:
    alphabet: Alphabet
    relations: Tuple[Element, ...] = ()
    graded_commutative: bool = False
    label: str = ""
    _cache: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        seen = set()
        rels = []
        for r in self.relations:
            if not isinstance(r, Element):
                raise TypeError("relations must be Elements")
            if r.alphabet != self.alphabet:
                raise ValueError(f"relation {r} is over a different generator list")
            d = degree_of(r)
            if d == "mixed":
                raise ValueError(f"relation '{r}' is not homogeneous")
            if d == "zero":
                raise ValueError("zero relation")
            if r not in seen:
                seen.add(r)
                rels.append(r)
        rels.sort(key=_relation_sort_key)
        object.__setattr__(self, "relations", tuple(rels))

    @property
    def generators(self):
        return self.alphabet.generators

    def element(self, terms) -> Element:
        return Element(self.alphabet, terms)

    def gen(self, name: str) -> Element:
        return Element.gen(self.alphabet, name)

    def table(self, t: TruncationParams, eliminate: bool = True) -> "NormalFormTable":
        key = (t, eliminate)
        tab = self._cache.get(key)
        if tab is None:
            tab = NormalFormTable(self, t, eliminate=eliminate)
            self._cache[key] = tab
        return tab

    def with_relations(self, relations, label=None) -> "Presentation":
        return Presentation(self.alphabet, tuple(relations), self.graded_commutative,
                            self.label if label is None else label)


def commutation_relations(alphabet: Alphabet, ids: Sequence[int] = None) -> List[Element]:
    """x_a x_b - (-1)^{|a||b|} x_b x_a for a < b, and x_a^2 for odd a."""
    ids = list(range(len(alphabet))) if ids is None else list(ids)
    degs = alphabet.degrees
    rels = []
    for i, a in enumerate(ids):
        if degs[a] % 2:
            rels.append(Element._raw(alphabet, {(a, a): ONE}))
        for b in ids[i + 1:]:
            s = -1 if degs[a] % 2 and degs[b] % 2 else 1
            rels.append(Element._raw(alphabet, {(a, b): ONE, (b, a): Fraction(-s)}))
    return rels


def as_noncommutative(p: Presentation) -> Presentation:
    """Same algebra with the graded commutativity relations made explicit."""
    if not p.graded_commutative:
        return p
    return Presentation(p.alphabet, tuple(p.relations) + tuple(commutation_relations(p.alphabet)),
                        False, p.label)


def substitute_terms(terms, subst: Dict[int, Terms]) -> Terms:
    if not subst:
        return dict(terms)
    out: Terms = {}
    for w, c in terms.items():
        if not any(i in subst for i in w):
            v = out.get(w, ZERO) + c
            if v:
                out[w] = v
            else:
                out.pop(w, None)
            continue
        acc: Terms = {(): c}
        for i in w:
            if i in subst:
                acc = mul_terms(acc, subst[i])
            else:
                acc = {u + (i,): v for u, v in acc.items()}
            if not acc:
                break
        add_into(out, acc)
    return out


def _enumerate(ids, degrees, lo, hi, max_len, commutative, cap):
    """All words over ids with degree in [lo, hi] and length <= max_len."""
    ids = sorted(ids)
    if not ids:
        return [()] if lo <= 0 <= hi else []
    dmin = min(0, min(degrees[i] for i in ids))
    dmax = max(0, max(degrees[i] for i in ids))
    out = []

    def rec(word, deg, start, after):
        if lo <= deg <= hi:
            out.append(word)
            if len(out) > cap:
                raise WindowExplosion(
                    f"more than {cap} words in window; raise DGPA_WORD_CAP or shrink the window")
        if len(word) >= max_len:
            return
        rem = max_len - len(word) - 1
        for k, i in enumerate(ids):
            if commutative:
                if k < start:
                    continue
                if k == after and degrees[i] % 2:
                    continue
            nd = deg + degrees[i]
            if nd + rem * dmin > hi or nd + rem * dmax < lo:
                continue
            rec(word + (i,), nd, k, k)

    rec((), 0, 0, -1)
    return out


class NormalFormTable:
    """Per-degree basis words plus a reduced echelon basis of the ideal."""

    def __init__(self, p: Presentation, t: TruncationParams, eliminate: bool = True):
        self.presentation = p
        self.params = t
        alph = p.alphabet
        degs = alph.degrees
        self.degrees = degs
        gc = p.graded_commutative
        self.graded_commutative = gc
        cap = word_cap()

        rels: List[Terms] = []
        for r in p.relations:
            terms = gc_normalize(r.terms, degs) if gc else dict(r.terms)
            if terms:
                rels.append(terms)
        self.substitution: Dict[int, Terms] = {}
        if eliminate:
            rels = self._eliminate(rels)
        active = [i for i in range(len(alph)) if i not in self.substitution]
        self.active = tuple(active)

        L = t.max_word_length
        positive = all(degs[i] > 0 for i in active)
        if positive and active:
            dpos = min(degs[i] for i in active)
            natural = t.max_degree // dpos
            self.length_capped = False
            enum_len = natural
            self.exact = L >= natural
        else:
            self.length_capped = bool(active)
            enum_len = L if active else 0
            self.exact = not active
        self.recursive = positive and self.exact

        rel_info = []
        for terms in rels:
            w0 = next(iter(terms))
            rel_info.append((terms, alph.word_degree(w0), max(len(w) for w in terms)))
        self._rel_info = rel_info

        if self.recursive:
            lo, hi = min(0, t.min_degree), t.max_degree
        else:
            emax = max((e for _, e, _ in rel_info), default=0)
            emin = min((e for _, e, _ in rel_info), default=0)
            lo = min(t.min_degree, t.min_degree - emax, 0)
            hi = max(t.max_degree, t.max_degree - emin)
        words = _enumerate(active, degs, lo, hi, enum_len, gc, cap)
        by_deg: Dict[int, List[Word]] = {}
        for w in words:
            by_deg.setdefault(alph.word_degree(w), []).append(w)
        keyf = _len_lex
        for d in by_deg:
            by_deg[d].sort(key=keyf)
        self._all_words = by_deg

        self.echelons: Dict[int, Echelon] = {}
        self.new_relations: Dict[int, List[Terms]] = {}
        if self.recursive:
            self._build_recursive(lo, hi)
        else:
            self._build_direct()
        self.basis: Dict[int, List[Word]] = {}
        for d in t.degrees():
            ech = self.echelons.get(d)
            ws = by_deg.get(d, [])
            self.basis[d] = [w for w in ws if ech is None or w not in ech.rows]

    # -- construction ------------------------------------------------------

    def _normalize_raw(self, terms: Terms) -> Terms:
        if self.substitution:
            terms = substitute_terms(terms, self.substitution)
        if self.graded_commutative:
            terms = gc_normalize(terms, self.degrees)
        return terms

    def _eliminate(self, rels: List[Terms]) -> List[Terms]:
        """Remove generators equal to a combination of smaller words."""
        subst = self.substitution
        while True:
            found = None
            for terms in rels:
                if not terms:
                    continue
                lw = max(terms, key=_len_lex)
                if len(lw) == 1:
                    found = (terms, lw)
                    break
            if found is None:
                break
            terms, lw = found
            g = lw[0]
            c = terms[lw]
            val = {w: -v / c for w, v in terms.items() if w != lw}
            new = {g: val}
            for k in list(subst):
                subst[k] = self._sub_norm(subst[k], new)
            subst[g] = val
            rels = [self._sub_norm(r, new) for r in rels]
            rels = [r for r in rels if r]
        return rels

    def _sub_norm(self, terms, new):
        out = substitute_terms(terms, new)
        if self.graded_commutative:
            out = gc_normalize(out, self.degrees)
        return out

    def _ech(self, d: int) -> Echelon:
        ech = self.echelons.get(d)
        if ech is None:
            ech = Echelon(_len_lex)
            self.echelons[d] = ech
        return ech

    def _finish_degree(self, d: int, decomposable: Echelon, rels_here: List[Terms]):
        fresh = Echelon(_len_lex)
        for r in rels_here:
            v = decomposable.reduce(r)
            if v:
                fresh.add(v)
        for row in fresh.vectors():
            decomposable.add(row)
        self.new_relations[d] = fresh.vectors()
        if len(decomposable):
            self.echelons[d] = decomposable

    def _build_recursive(self, lo: int, hi: int):
        degs = self.degrees
        gc = self.graded_commutative
        by_rel_deg: Dict[int, List[Terms]] = {}
        for terms, e, _ in self._rel_info:
            by_rel_deg.setdefault(e, []).append(terms)
        for d in range(lo, hi + 1):
            ech = Echelon(_len_lex)
            for g in self.active:
                prev = self.echelons.get(d - degs[g])
                if prev is None:
                    continue
                for row in list(prev.rows.values()):
                    if gc:
                        ech.add(gc_normalize({(g,) + w: c for w, c in row.items()}, degs))
                    else:
                        ech.add({(g,) + w: c for w, c in row.items()})
                        ech.add({w + (g,): c for w, c in row.items()})
            self._finish_degree(d, ech, by_rel_deg.get(d, []))

    def _build_direct(self):
        t = self.params
        L = t.max_word_length
        degs = self.degrees
        gc = self.graded_commutative
        capped = self.length_capped
        by_deg = self._all_words
        for d in t.degrees():
            ech = Echelon(_len_lex)
            here = []
            for terms, e, lr in self._rel_info:
                if e == d and (not capped or lr <= L):
                    here.append(terms)
                for du, us in by_deg.items():
                    dv = d - e - du
                    if gc:
                        if dv != 0:
                            continue
                        for u in us:
                            if not u or len(u) + lr > L:
                                continue
                            row = gc_normalize({u + w: c for w, c in terms.items()}, degs)
                            if row and (not capped or max(len(w) for w in row) <= L):
                                ech.add(row)
                        continue
                    vs = by_deg.get(dv)
                    if not vs:
                        continue
                    for u in us:
                        if len(u) + lr > L:
                            continue
                        room = L - lr - len(u)
                        for v in vs:
                            if len(v) > room:
                                break
                            if not u and not v:
                                continue
                            ech.add({u + w + v: c for w, c in terms.items()})
            self._finish_degree(d, ech, here)

    # -- queries -----------------------------------------------------------

    def _check_word(self, w: Word, d: int):
        t = self.params
        if not t.min_degree <= d <= t.max_degree:
            raise WindowError(f"degree {d} outside window [{t.min_degree}, {t.max_degree}]")
        if self.length_capped and len(w) > t.max_word_length:
            raise WindowError(f"word of length {len(w)} exceeds cap {t.max_word_length}")

    def reduce_terms(self, terms) -> Terms:
        terms = self._normalize_raw(terms)
        wd = self.presentation.alphabet.word_degree
        out: Terms = {}
        for w, c in terms.items():
            d = wd(w)
            self._check_word(w, d)
            ech = self.echelons.get(d)
            row = ech.rows.get(w) if ech is not None else None
            if row is None:
                v = out.get(w, ZERO) + c
                if v:
                    out[w] = v
                else:
                    out.pop(w, None)
            else:
                for k, rv in row.items():
                    if k == w:
                        continue
                    v = out.get(k, ZERO) - c * rv
                    if v:
                        out[k] = v
                    else:
                        out.pop(k, None)
        return out

    def normal_form(self, e: Element) -> Element:
        if e.alphabet != self.presentation.alphabet:
            raise ValueError("element is over a different generator list")
        return Element._raw(e.alphabet, self.reduce_terms(e.terms))

    def is_zero(self, e: Element) -> bool:
        return not self.reduce_terms(e.terms)

    def dims(self) -> Dict[int, int]:
        return {d: len(ws) for d, ws in self.basis.items()}

    def basis_elements(self, d: int) -> List[Element]:
        alph = self.presentation.alphabet
        return [Element._raw(alph, {w: ONE}) for w in self.basis.get(d, [])]

    def in_window(self, w: Word) -> bool:
        d = self.presentation.alphabet.word_degree(w)
        try:
            self._check_word(w, d)
        except WindowError:
            return False
        return True

    @property
    def flag(self) -> str:
        return "exact" if self.exact else "upper-bound"


def _len_lex(w: Word):
    return (len(w), w)


@dataclass(frozen=True)
class GradedDimension:
    dims: Dict[int, int]
    exact: bool

    @property
    def flag(self) -> str:
        return "exact" if self.exact else "upper-bound"

    def as_tuple(self, degrees: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
        ks = sorted(self.dims) if degrees is None else degrees
        return tuple(self.dims.get(k, 0) for k in ks)


def build_table(p: Presentation, t: TruncationParams) -> NormalFormTable:
    return p.table(t)


def normal_form(p: Presentation, e: Element, t: TruncationParams) -> Element:
    return p.table(t).normal_form(e)


def is_zero_mod_ideal(p: Presentation, e: Element, t: TruncationParams) -> bool:
    return p.table(t).is_zero(e)


def graded_dimension(p: Presentation, t: TruncationParams) -> GradedDimension:
    tab = p.table(t)
    return GradedDimension(tab.dims(), tab.exact)


def canonical_relations(p: Presentation, t: TruncationParams) -> List[Element]:
    """Minimal relations of the windowed ideal in reduced echelon form.

    In each degree these span the ideal modulo its decomposable part, reduced
    against it; the result depends only on the ideal, not on the listed
    relations.
    """
    tab = p.table(t, eliminate=False)
    out = []
    for d in t.degrees():
        for row in tab.new_relations.get(d, []):
            out.append(Element._raw(p.alphabet, dict(row)))
    return out
