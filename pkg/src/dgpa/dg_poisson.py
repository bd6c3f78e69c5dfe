"""Differentials and Poisson brackets on presentations, and the DGPA verifier."""
from __future__ import annotations

from dataclasses import dataclass, field, replace
from fractions import Fraction
from typing import Dict, Mapping, Optional, Tuple

from .core import (
    ONE,
    Alphabet,
    Element,
    Terms,
    Word,
    add_into,
    degree_of,
    format_element,
    gc_normalize,
    sort_word,
)
from .presentation import Presentation, TruncationParams
from .report import AxiomReport


def _sign(a: int, b: int) -> int:
    return -1 if a % 2 and b % 2 else 1


class UnverifiedError(ValueError):
    """A construction needs an input that passed check_axioms."""


class AxiomError(ValueError):
    def __init__(self, report: AxiomReport):
        self.report = report
        super().__init__("axioms fail: " + ", ".join(report.failed()))


class DifferentialSpec:
    """Images of the generators under d; missing generators map to 0."""

    def __init__(self, alphabet: Alphabet, images: Mapping[int, Element] = None):
        clean = {}
        for i, e in (images or {}).items():
            if not 0 <= i < len(alphabet):
                raise ValueError(f"differential names unknown generator id {i}")
            if e.alphabet != alphabet:
                raise ValueError("differential image over a different generator list")
            if e.is_zero():
                continue
            want = alphabet[i].degree + 1
            if degree_of(e) != want:
                raise ValueError(
                    f"d({alphabet[i].name}) = {e} must be homogeneous of degree {want}")
            clean[i] = e
        self.alphabet = alphabet
        self.images = dict(sorted(clean.items()))

    def image(self, i: int) -> Element:
        e = self.images.get(i)
        return e if e is not None else Element.zero(self.alphabet)

    def __eq__(self, other):
        return isinstance(other, DifferentialSpec) and self.alphabet == other.alphabet \
            and self.images == other.images

    def __hash__(self):
        return hash((self.alphabet, tuple(self.images.items())))

    def __repr__(self):
        inner = ", ".join(f"{self.alphabet[i].name}: {e}" for i, e in self.images.items())
        return f"DifferentialSpec({inner})"


class BracketSpec:
    """{x_a, x_b} for a <= b; the other order follows from antisymmetry."""

    def __init__(self, alphabet: Alphabet, images: Mapping[Tuple[int, int], Element] = None):
        degs = alphabet.degrees
        clean: Dict[Tuple[int, int], Element] = {}
        for (i, j), e in (images or {}).items():
            if e.alphabet != alphabet:
                raise ValueError("bracket image over a different generator list")
            if i > j:
                i, j = j, i
                e = e.scale(-_sign(degs[i], degs[j]))
            if e.is_zero():
                continue
            want = degs[i] + degs[j]
            if degree_of(e) != want:
                raise ValueError(
                    f"{{{alphabet[i].name},{alphabet[j].name}}} = {e} must have degree {want}")
            if (i, j) in clean and clean[(i, j)] != e:
                raise ValueError(
                    f"inconsistent values for {{{alphabet[i].name},{alphabet[j].name}}}")
            clean[(i, j)] = e
        self.alphabet = alphabet
        self.images = dict(sorted(clean.items()))

    def value(self, i: int, j: int) -> Element:
        if i <= j:
            e = self.images.get((i, j))
            return e if e is not None else Element.zero(self.alphabet)
        e = self.images.get((j, i))
        if e is None:
            return Element.zero(self.alphabet)
        degs = self.alphabet.degrees
        return e.scale(-_sign(degs[i], degs[j]))

    def negated(self) -> "BracketSpec":
        return BracketSpec(self.alphabet, {k: -v for k, v in self.images.items()})

    def __eq__(self, other):
        return isinstance(other, BracketSpec) and self.alphabet == other.alphabet \
            and self.images == other.images

    def __hash__(self):
        return hash((self.alphabet, tuple(self.images.items())))

    def __repr__(self):
        a = self.alphabet
        inner = ", ".join(f"{{{a[i].name},{a[j].name}}}: {e}" for (i, j), e in self.images.items())
        return f"BracketSpec({inner})"


@dataclass(frozen=True)
class DGAlgebra:
    """A presented graded algebra with a differential given on generators."""

    presentation: Presentation
    diff: DifferentialSpec
    _memo: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if self.diff.alphabet != self.presentation.alphabet:
            raise ValueError("differential and presentation use different generators")

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet

    @property
    def label(self) -> str:
        return self.presentation.label

    def d_word(self, w: Word) -> Terms:
        memo = self._memo.setdefault("d", {})
        hit = memo.get(w)
        if hit is not None:
            return hit
        degs = self.alphabet.degrees
        out: Terms = {}
        prefix_deg = 0
        for k, g in enumerate(w):
            img = self.diff.images.get(g)
            if img is not None:
                s = -1 if prefix_deg % 2 else 1
                left, right = w[:k], w[k + 1:]
                for u, c in img.terms.items():
                    add_into(out, {left + u + right: c * s})
            prefix_deg += degs[g]
        if self.presentation.graded_commutative:
            out = gc_normalize(out, degs)
        memo[w] = out
        return out

    def d_terms(self, terms: Mapping[Word, Fraction]) -> Terms:
        out: Terms = {}
        for w, c in terms.items():
            add_into(out, self.d_word(w), c)
        return out

    def table(self, t: TruncationParams):
        return self.presentation.table(t)


def _gc_word(w: Word, degs) -> Tuple[int, Word]:
    return sort_word(w, degs)


@dataclass(frozen=True)
class DGPAlgebra:
    presentation: Presentation
    diff: DifferentialSpec
    bracket: BracketSpec
    verified_window: Optional[TruncationParams] = field(default=None, compare=False)
    _memo: dict = field(default_factory=dict, compare=False, hash=False, repr=False)

    def __post_init__(self):
        if not self.presentation.graded_commutative:
            raise ValueError("a DGPA presentation must be graded commutative")
        a = self.presentation.alphabet
        if self.diff.alphabet != a or self.bracket.alphabet != a:
            raise ValueError("d, bracket and presentation use different generators")

    @property
    def alphabet(self) -> Alphabet:
        return self.presentation.alphabet

    @property
    def label(self) -> str:
        return self.presentation.label

    @property
    def verified(self) -> bool:
        return self.verified_window is not None

    @property
    def dga(self) -> DGAlgebra:
        dga = self._memo.get("dga")
        if dga is None:
            dga = DGAlgebra(self.presentation, self.diff)
            self._memo["dga"] = dga
        return dga

    def table(self, t: TruncationParams):
        return self.presentation.table(t)

    def with_label(self, label: str) -> "DGPAlgebra":
        p = self.presentation
        return DGPAlgebra(Presentation(p.alphabet, p.relations, True, label), self.diff,
                          self.bracket, self.verified_window)

    # free-level operations (in the free graded-commutative algebra R)

    def d_terms(self, terms) -> Terms:
        return self.dga.d_terms(terms)

    def bracket_words(self, u: Word, v: Word) -> Terms:
        """{u, v} in R for sorted words u, v."""
        if not u or not v:
            return {}
        memo = self._memo.setdefault("br", {})
        key = (u, v)
        hit = memo.get(key)
        if hit is not None:
            return hit
        degs = self.alphabet.degrees
        out: Terms = {}
        if len(v) > 1:
            g, rest = v[:1], v[1:]
            du = sum(degs[i] for i in u)
            for w, c in self.bracket_words(u, g).items():
                add_into(out, {w + rest: c})
            s = _sign(du, degs[g[0]])
            for w, c in self.bracket_words(u, rest).items():
                add_into(out, {g + w: s * c})
        elif len(u) == 1:
            out = dict(self.bracket.value(u[0], v[0]).terms)
        else:
            h, rest = u[:1], u[1:]
            drest = sum(degs[i] for i in rest)
            for w, c in self.bracket_words(rest, v).items():
                add_into(out, {h + w: c})
            s = _sign(drest, degs[v[0]])
            for w, c in self.bracket_words(h, v).items():
                add_into(out, {w + rest: s * c})
        out = gc_normalize(out, degs)
        memo[key] = out
        return out

    def bracket_terms(self, a, b) -> Terms:
        degs = self.alphabet.degrees
        a = gc_normalize(a, degs)
        b = gc_normalize(b, degs)
        out: Terms = {}
        for u, c in a.items():
            for v, c2 in b.items():
                add_into(out, self.bracket_words(u, v), c * c2)
        return out


def apply_d(A, e: Element, t: TruncationParams) -> Element:
    """d(e) by the graded Leibniz rule, in normal form."""
    tab = A.table(t)
    return Element._raw(e.alphabet, tab.reduce_terms(A.d_terms(e.terms)))


def apply_bracket(A: DGPAlgebra, e: Element, f: Element, t: TruncationParams) -> Element:
    tab = A.table(t)
    return Element._raw(e.alphabet, tab.reduce_terms(A.bracket_terms(e.terms, f.terms)))


def require_verified(A: DGPAlgebra):
    if not A.verified:
        raise UnverifiedError(
            f"{A.label or 'algebra'} has not been verified; run check_axioms/verify first")


def verify_report(A: DGPAlgebra, t: TruncationParams):
    """(report, A marked verified in window t, or None when a check fails)."""
    rep = check_axioms(A, t)
    return rep, (replace(A, verified_window=t, _memo=A._memo) if rep.ok else None)


def verify(A: DGPAlgebra, t: TruncationParams) -> DGPAlgebra:
    """Run check_axioms and return A marked as verified in window t."""
    rep, B = verify_report(A, t)
    if B is None:
        raise AxiomError(rep)
    return B


def _show(alph: Alphabet, terms) -> str:
    return format_element(Element._raw(alph, dict(terms)))


def _window_words(tab, t: TruncationParams, unit: bool = False):
    out = []
    for d in t.degrees():
        for w in tab.basis.get(d, []):
            if w or unit:
                out.append((w, d))
    return out


def check_axioms(A: DGPAlgebra, t: TruncationParams) -> AxiomReport:
    tab = A.table(t)
    alph = A.alphabet
    degs = alph.degrees
    nf = tab.reduce_terms
    rep = AxiomReport(t)
    words = _window_words(tab, t)
    lo, hi = t.min_degree, t.max_degree
    one = Fraction(1)

    def show(terms):
        return _show(alph, terms)

    def name(w):
        return alph.word_name(w)

    def br(a, b):
        return nf(A.bracket_terms(a, b))

    def dd(a):
        return nf(A.d_terms(a))

    def mul(a, b):
        out: Terms = {}
        for u, c in a.items():
            for v, c2 in b.items():
                add_into(out, {u + v: c * c2})
        return nf(out)

    def lincomb(*parts):
        out: Terms = {}
        for s, terms in parts:
            add_into(out, terms, Fraction(s))
        return out

    pairs = [(a, da, b, db) for a, da in words for b, db in words if lo <= da + db <= hi]

    chk = rep.new("antisymmetry")
    for a, da, b, db in pairs:
        def f(a=a, b=b, da=da, db=db):
            lhs = br({a: one}, {b: one})
            rhs = nf(lincomb((-_sign(da, db), br({b: one}, {a: one}))))
            if lhs != rhs:
                return (name(a), name(b)), show(rhs), show(lhs)
        chk.attempt(f)

    chk = rep.new("jacobi")
    for a, da, b, db in pairs:
        for c, dc in words:
            if not lo <= da + db + dc <= hi:
                continue

            def f(a=a, b=b, c=c, da=da, db=db):
                ea, eb, ec = {a: one}, {b: one}, {c: one}
                lhs = br(ea, br(eb, ec))
                rhs = nf(lincomb((1, br(br(ea, eb), ec)), (_sign(da, db), br(eb, br(ea, ec)))))
                if lhs != rhs:
                    return (name(a), name(b), name(c)), show(rhs), show(lhs)
            chk.attempt(f)

    chk = rep.new("bracket_on_relations")
    for r in A.presentation.relations:
        rt = gc_normalize(r.terms, degs)
        dr = degree_of(r)
        for g in range(len(alph)):
            if not lo <= dr + degs[g] <= hi:
                continue

            def f(g=g, rt=rt, r=r):
                got = br({(g,): one}, rt)
                if got:
                    return (alph[g].name, str(r)), "0", show(got)
            chk.attempt(f)

    chk = rep.new("biderivation")
    for a, da in words:
        for b, db, c, dc in pairs:
            if c < b or not lo <= da + db + dc <= hi:
                continue

            def f(a=a, b=b, c=c, da=da, db=db):
                ea, eb, ec = {a: one}, {b: one}, {c: one}
                lhs = br(ea, mul(eb, ec))
                rhs = nf(lincomb((1, mul(br(ea, eb), ec)), (_sign(da, db), mul(eb, br(ea, ec)))))
                if lhs != rhs:
                    return (name(a), name(b), name(c)), show(rhs), show(lhs)
            chk.attempt(f)

    chk = rep.new("graded_commutativity")
    for a, da, b, db in pairs:
        if b < a:
            continue

        def f(a=a, b=b, da=da, db=db):
            lhs = mul({a: one}, {b: one})
            rhs = nf(lincomb((_sign(da, db), mul({b: one}, {a: one}))))
            if lhs != rhs:
                return (name(a), name(b)), show(rhs), show(lhs)
        chk.attempt(f)

    chk = rep.new("leibniz_bracket")
    for a, da, b, db in pairs:
        if da + db + 1 > hi:
            continue

        def f(a=a, b=b, da=da):
            ea, eb = {a: one}, {b: one}
            lhs = dd(br(ea, eb))
            rhs = nf(lincomb((1, br(dd(ea), eb)), (-1 if da % 2 else 1, br(ea, dd(eb)))))
            if lhs != rhs:
                return (name(a), name(b)), show(rhs), show(lhs)
        chk.attempt(f)

    chk = rep.new("leibniz_product")
    for a, da, b, db in pairs:
        if b < a or da + db + 1 > hi:
            continue

        def f(a=a, b=b, da=da):
            ea, eb = {a: one}, {b: one}
            lhs = dd(mul(ea, eb))
            rhs = nf(lincomb((1, mul(dd(ea), eb)), (-1 if da % 2 else 1, mul(ea, dd(eb)))))
            if lhs != rhs:
                return (name(a), name(b)), show(rhs), show(lhs)
        chk.attempt(f)

    chk = rep.new("d_squared")
    for a, da in words:
        if da + 2 > hi:
            continue

        def f(a=a):
            got = dd(dd({a: one}))
            if got:
                return ("d(d(" + name(a) + "))",), "0", show(got)
        chk.attempt(f)

    chk = rep.new("d_on_relations")
    for r in A.presentation.relations:
        dr = degree_of(r)
        if not lo <= dr + 1 <= hi:
            continue

        def f(r=r):
            got = nf(A.d_terms(r.terms))
            if got:
                return ("d(" + str(r) + ")",), "0", show(got)
        chk.attempt(f)
    return rep


def check_dg_algebra(P: DGAlgebra, t: TruncationParams) -> AxiomReport:
    """d(relation) = 0 and d^2 = 0 on generators and basis words, mod the ideal."""
    tab = P.table(t)
    alph = P.alphabet
    nf = tab.reduce_terms
    rep = AxiomReport(t)
    lo, hi = t.min_degree, t.max_degree

    chk = rep.new("d_on_relations")
    for r in P.presentation.relations:
        dr = degree_of(r)
        if not lo <= dr + 1 <= hi:
            continue

        def f(r=r):
            got = nf(P.d_terms(r.terms))
            if got:
                return ("d(" + str(r) + ")",), "0", _show(alph, got)
        chk.attempt(f)

    chk = rep.new("d_squared")
    seen = set()
    targets = [((g,), alph[g].degree) for g in range(len(alph))]
    targets += _window_words(tab, t)
    for w, dw in targets:
        if w in seen or not lo <= dw + 2 <= hi:
            continue
        seen.add(w)

        def f(w=w):
            got = nf(P.d_terms(P.d_terms({w: ONE})))
            if got:
                return ("d(d(" + alph.word_name(w) + "))",), "0", _show(alph, got)
        chk.attempt(f)
    return rep
