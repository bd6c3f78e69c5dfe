"""Universal enveloping algebras A^e of a DGPA, built three ways.

env_presented works from generators and relations through the
anti-derivations psi_a. env_basis instantiates the defining relations on a
finite basis. smash_env builds A # U(A) modulo 1#(ab) = a#b + ± b#a.
"""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, List, Mapping, Sequence, Tuple

from .core import (ONE, Alphabet, Element, Terms, Word, add_into, copy_names,
                   embed, gc_normalize)
from .dg_poisson import AxiomError, DGAlgebra, DGPAlgebra, DifferentialSpec, require_verified
from .lie import vadd
from .maps import AlgebraMapData, check_map
from .presentation import Presentation, TruncationParams, as_noncommutative, commutation_relations
from .report import AxiomReport

Vector = Dict[int, Fraction]


def _sign(a, b):
    return -1 if a % 2 and b % 2 else 1


def word_tag(alph: Alphabet, w: Word) -> str:
    """Identifier-safe name of a monomial: x1_x2_x2, or 1 for the unit."""
    if not w:
        return "1"
    return "_".join(alph[i].name for i in w)


def _unique(names: Sequence[str], taken=()) -> List[str]:
    seen = set(taken)
    out = []
    for n in names:
        while n in seen:
            n += "'"
        seen.add(n)
        out.append(n)
    return out


# --- finite tables ----------------------------------------------------------

@dataclass(frozen=True)
class FiniteDGPA:
    """A finite-dimensional DGPA by structure tables on a homogeneous basis."""

    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    product: Dict[Tuple[int, int], Vector]
    bracket: Dict[Tuple[int, int], Vector]
    differential: Dict[int, Vector]
    unit: int = 0
    label: str = ""
    words: Tuple[Word, ...] = ()

    @property
    def dim(self) -> int:
        return len(self.names)

    def mul(self, u: Mapping[int, Fraction], v: Mapping[int, Fraction]) -> Vector:
        return _bilinear(self.product, u, v)

    def br(self, u, v) -> Vector:
        return _bilinear(self.bracket, u, v)

    def d(self, u) -> Vector:
        out: Vector = {}
        for i, c in u.items():
            w = self.differential.get(i)
            if w:
                vadd(out, w, c)
        return out


def _bilinear(table, u, v) -> Vector:
    out: Vector = {}
    for i, a in u.items():
        for j, b in v.items():
            w = table.get((i, j))
            if w:
                vadd(out, w, a * b)
    return out


def truncate(A: DGPAlgebra, t: TruncationParams) -> FiniteDGPA:
    """A / A_{>D} on the normal-form basis of degrees 0..D.

    Needs an exact table and nonnegative generator degrees, so that A_{>D}
    is a DG Poisson ideal and the tables are finite.
    """
    if any(g.degree <= 0 for g in A.alphabet):
        raise ValueError("truncation needs positively graded generators")
    t = TruncationParams(t.max_degree, 0, t.max_word_length)
    tab = A.table(t)
    if not tab.exact:
        raise ValueError("truncation needs an exact normal-form table; raise max_length")
    words = [w for d in t.degrees() for w in tab.basis.get(d, [])]
    index = {w: k for k, w in enumerate(words)}
    alph = A.alphabet
    degs = tuple(alph.word_degree(w) for w in words)
    D = t.max_degree

    def vec(terms) -> Vector:
        return {index[w]: c for w, c in terms.items()}

    def cut(terms):
        return {w: c for w, c in terms.items() if alph.word_degree(w) <= D}

    product, bracket, diff = {}, {}, {}
    for i, u in enumerate(words):
        if degs[i] + 1 <= D:
            v = vec(tab.reduce_terms(A.d_terms({u: ONE})))
            if v:
                diff[i] = v
        for j, w in enumerate(words):
            if degs[i] + degs[j] > D:
                continue
            p = vec(tab.reduce_terms(cut(gc_normalize({u + w: ONE}, alph.degrees))))
            if p:
                product[(i, j)] = p
            b = vec(tab.reduce_terms(A.bracket_terms({u: ONE}, {w: ONE})))
            if b:
                bracket[(i, j)] = b
    names = tuple(_unique([word_tag(alph, w) for w in words]))
    return FiniteDGPA(names, degs, product, bracket, diff, index[()], A.label, tuple(words))


def check_finite(F: FiniteDGPA) -> AxiomReport:
    """Exact DGPA axioms on all basis tuples of a finite table."""
    rep = AxiomReport(None)
    n = F.dim
    degs = F.degrees
    e = [{i: ONE} for i in range(n)]
    names = F.names

    def show(v):
        if not v:
            return "0"
        return " + ".join(f"{c} * {names[k]}" for k, c in sorted(v.items(), reverse=True))

    def lin(*parts):
        out: Vector = {}
        for s, v in parts:
            vadd(out, v, Fraction(s))
        return out

    def rec(chk, inputs, lhs, rhs):
        chk.record(None if lhs == rhs else (tuple(names[i] for i in inputs), show(rhs), show(lhs)))

    chk = rep.new("unit")
    for i in range(n):
        rec(chk, (i,), F.mul(e[F.unit], e[i]), e[i])
        rec(chk, (i,), F.mul(e[i], e[F.unit]), e[i])
    chk = rep.new("associativity")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                rec(chk, (i, j, k), F.mul(F.mul(e[i], e[j]), e[k]), F.mul(e[i], F.mul(e[j], e[k])))
    chk = rep.new("graded_commutativity")
    for i in range(n):
        for j in range(n):
            rec(chk, (i, j), F.mul(e[i], e[j]), lin((_sign(degs[i], degs[j]), F.mul(e[j], e[i]))))
    chk = rep.new("antisymmetry")
    for i in range(n):
        for j in range(n):
            rec(chk, (i, j), F.br(e[i], e[j]), lin((-_sign(degs[i], degs[j]), F.br(e[j], e[i]))))
    chk = rep.new("jacobi")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                rec(chk, (i, j, k), F.br(e[i], F.br(e[j], e[k])),
                    lin((1, F.br(F.br(e[i], e[j]), e[k])),
                        (_sign(degs[i], degs[j]), F.br(e[j], F.br(e[i], e[k])))))
    chk = rep.new("biderivation")
    for i in range(n):
        for j in range(n):
            for k in range(n):
                rec(chk, (i, j, k), F.br(e[i], F.mul(e[j], e[k])),
                    lin((1, F.mul(F.br(e[i], e[j]), e[k])),
                        (_sign(degs[i], degs[j]), F.mul(e[j], F.br(e[i], e[k])))))
    chk = rep.new("leibniz_bracket")
    for i in range(n):
        for j in range(n):
            rec(chk, (i, j), F.d(F.br(e[i], e[j])),
                lin((1, F.br(F.d(e[i]), e[j])), (-1 if degs[i] % 2 else 1, F.br(e[i], F.d(e[j])))))
    chk = rep.new("leibniz_product")
    for i in range(n):
        for j in range(n):
            rec(chk, (i, j), F.d(F.mul(e[i], e[j])),
                lin((1, F.mul(F.d(e[i]), e[j])), (-1 if degs[i] % 2 else 1, F.mul(e[i], F.d(e[j])))))
    chk = rep.new("d_squared")
    for i in range(n):
        rec(chk, (i,), F.d(F.d(e[i])), {})
    return rep


def env_basis(F: FiniteDGPA, require_valid: bool = True) -> DGAlgebra:
    """m_a, h_a for every basis element a, subject to

    m_{ab} = m_a m_b, h_{ab} = m_a h_b + ± m_b h_a, m_{{a,b}} = h_a m_b − ± m_b h_a,
    h_{{a,b}} = h_a h_b − ± h_b h_a and m_1 = 1, with ∂m_a = m_{da}, ∂h_a = h_{da}.
    """
    if require_valid:
        rep = check_finite(F)
        if not rep.ok:
            raise AxiomError(rep)
    n = F.dim
    m_names = _unique(["m_" + s for s in F.names])
    h_names = _unique(["h_" + s for s in F.names], m_names)
    alph = Alphabet.of(list(zip(m_names, F.degrees)) + list(zip(h_names, F.degrees)))
    degs = F.degrees

    def m_of(v) -> Terms:
        return {(k,): c for k, c in v.items()}

    def h_of(v) -> Terms:
        return {(n + k,): c for k, c in v.items()}

    rels = [Element._raw(alph, {(F.unit,): ONE, (): -ONE})]
    for a in range(n):
        for b in range(n):
            s = Fraction(_sign(degs[a], degs[b]))
            ab = F.mul({a: ONE}, {b: ONE})
            bab = F.br({a: ONE}, {b: ONE})
            fams = [
                add_into(m_of(ab), {(a, b): -ONE}),
                add_into(add_into(h_of(ab), {(a, n + b): -ONE}), {(b, n + a): -s}),
                add_into(add_into(m_of(bab), {(n + a, b): -ONE}), {(b, n + a): s}),
                add_into(add_into(h_of(bab), {(n + a, n + b): -ONE}), {(n + b, n + a): s}),
            ]
            for terms in fams:
                if terms:
                    rels.append(Element._raw(alph, terms))
    diff = {}
    for a, v in F.differential.items():
        diff[a] = Element._raw(alph, m_of(v))
        diff[n + a] = Element._raw(alph, h_of(v))
    p = Presentation(alph, tuple(rels), False, f"{F.label or 'A'}^e")
    return DGAlgebra(p, DifferentialSpec(alph, diff))


# --- anti-derivations -------------------------------------------------------

def psi_word(w: Word, alpha: int, degrees) -> Terms:
    """psi_alpha on a sorted word: drop one alpha, signed by moving it to the end."""
    out: Terms = {}
    if alpha not in w:
        return out
    total = [0] * (len(w) + 1)
    for k in range(len(w) - 1, -1, -1):
        total[k] = total[k + 1] + degrees[w[k]]
    for k, g in enumerate(w):
        if g != alpha:
            continue
        s = -1 if degrees[g] % 2 and total[k + 1] % 2 else 1
        add_into(out, {w[:k] + w[k + 1:]: Fraction(s)})
    return gc_normalize(out, degrees)


def psi_terms(terms, alpha: int, degrees) -> Terms:
    out: Terms = {}
    for w, c in gc_normalize(terms, degrees).items():
        add_into(out, psi_word(w, alpha, degrees), c)
    return out


def psi_antiderivation(R: Presentation, alpha: int, e: Element) -> Element:
    """psi_alpha(x_beta) = delta, psi(ab) = a psi(b) + (-1)^{|a||b|} b psi(a)."""
    if not R.graded_commutative:
        raise ValueError("psi is defined on graded-commutative presentations")
    return Element._raw(R.alphabet, psi_terms(e.terms, alpha, R.alphabet.degrees))


def env_alphabet(alph: Alphabet) -> Alphabet:
    ys = copy_names(alph.names)
    return Alphabet.of(list(zip(alph.names, alph.degrees)) + list(zip(ys, alph.degrees)))


def big_psi_terms(terms, alph: Alphabet) -> Terms:
    """Psi(f) = sum_a psi_a(f) y_a with y_a the generator n + a."""
    n = len(alph)
    degs = alph.degrees
    f = gc_normalize(terms, degs)
    out: Terms = {}
    for a in range(n):
        for w, c in psi_terms(f, a, degs).items():
            add_into(out, {w + (n + a,): c})
    return out


def big_psi(R: Presentation, e: Element, target: Alphabet = None) -> Element:
    target = target or env_alphabet(R.alphabet)
    return Element._raw(target, big_psi_terms(e.terms, R.alphabet))


def env_presented(A: DGPAlgebra, check: bool = True) -> DGAlgebra:
    """A^e on x_a, y_a with relations the commutation relations of R, I, Psi(I),

    y_a x_b − (−1)^{|x_a||x_b|} x_b y_a − {x_a, x_b} and
    y_a y_b − (−1)^{|x_a||x_b|} y_b y_a − Psi({x_a, x_b});
    ∂x_a = d x_a, ∂y_a = Psi(d x_a).
    """
    if check:
        require_verified(A)
    src = A.alphabet
    n = len(src)
    alph = env_alphabet(src)
    degs = src.degrees
    ident = list(range(n))
    rels = [embed(r, alph, ident) for r in commutation_relations(src)]
    for r in A.presentation.relations:
        rt = gc_normalize(r.terms, degs)
        if rt:
            rels.append(Element._raw(alph, dict(rt)))
        ps = big_psi_terms(rt, src)
        if ps:
            rels.append(Element._raw(alph, ps))
    for a in range(n):
        for b in range(n):
            s = Fraction(-_sign(degs[a], degs[b]))
            terms = add_into({(n + a, b): ONE}, {(b, n + a): s})
            add_into(terms, A.bracket.value(a, b).terms, -ONE)
            if terms:
                rels.append(Element._raw(alph, terms))
    for a in range(n):
        for b in range(a, n):
            s = Fraction(-_sign(degs[a], degs[b]))
            terms = add_into({(n + a, n + b): ONE}, {(n + b, n + a): s})
            add_into(terms, big_psi_terms(A.bracket.value(a, b).terms, src), -ONE)
            if terms:
                rels.append(Element._raw(alph, terms))
    diff = {}
    for a, img in A.diff.images.items():
        diff[a] = Element._raw(alph, gc_normalize(img.terms, degs))
        diff[n + a] = Element._raw(alph, big_psi_terms(img.terms, src))
    p = Presentation(alph, tuple(rels), False, f"{A.label or 'A'}^e")
    return DGAlgebra(p, DifferentialSpec(alph, diff))


# --- smash product ----------------------------------------------------------

@dataclass(frozen=True)
class SmashEnvelope:
    """A # U(A) / (1#(ab) − a#b − ± b#a) with its generator bookkeeping."""

    dga: DGAlgebra
    algebra: DGPAlgebra
    monomials: Tuple[Word, ...]
    window: TruncationParams

    @property
    def presentation(self):
        return self.dga.presentation

    def h_id(self, w: Word) -> int:
        return len(self.algebra.alphabet) + self.monomials.index(w)


def smash_env(A: DGPAlgebra, t: TruncationParams, check: bool = True) -> SmashEnvelope:
    """h-generators for the nonunit basis monomials of A in the window.

    h_1 is left out: the quotient relation for a = b = 1 reads h_1 = 2 h_1.
    """
    if check:
        require_verified(A)
    src = A.alphabet
    n = len(src)
    degs = src.degrees
    tab = A.table(TruncationParams(t.max_degree, min(0, t.min_degree), t.max_word_length))
    monos = [w for d in sorted(tab.basis) for w in tab.basis[d] if w]
    index = {w: k for k, w in enumerate(monos)}
    h_names = _unique(["h_" + word_tag(src, w) for w in monos], src.names)
    alph = Alphabet.of(list(zip(src.names, degs)) + [(h, src.word_degree(w))
                                                     for h, w in zip(h_names, monos)])
    D = t.max_degree
    nf = tab.reduce_terms

    def h_of(terms) -> Terms:
        out: Terms = {}
        for w, c in nf(terms).items():
            if w:
                add_into(out, {(n + index[w],): c})
        return out

    ident = list(range(n))
    rels = [embed(r, alph, ident) for r in as_noncommutative(A.presentation).relations]
    mdeg = [src.word_degree(w) for w in monos]
    for a, wa in enumerate(monos):
        for b, wb in enumerate(monos):
            if mdeg[a] + mdeg[b] > D:
                continue
            s = Fraction(_sign(mdeg[a], mdeg[b]))
            if a <= b:
                terms = add_into({(n + a, n + b): ONE}, {(n + b, n + a): -s})
                add_into(terms, h_of(A.bracket_terms({wa: ONE}, {wb: ONE})), -ONE)
                if terms:
                    rels.append(Element._raw(alph, terms))
                terms = h_of(gc_normalize({wa + wb: ONE}, degs))
                add_into(terms, {wa + (n + b,): -ONE})
                add_into(terms, {wb + (n + a,): -s})
                if terms:
                    rels.append(Element._raw(alph, terms))
        for g in range(n):
            if mdeg[a] + degs[g] > D:
                continue
            s = Fraction(_sign(mdeg[a], degs[g]))
            terms = add_into({(n + a, g): ONE}, {(g, n + a): -s})
            add_into(terms, nf(A.bracket_terms({wa: ONE}, {(g,): ONE})), -ONE)
            if terms:
                rels.append(Element._raw(alph, terms))
    diff = {}
    for g, img in A.diff.images.items():
        diff[g] = Element._raw(alph, gc_normalize(img.terms, degs))
    for a, wa in enumerate(monos):
        if mdeg[a] + 1 <= D:
            v = h_of(A.d_terms({wa: ONE}))
            if v:
                diff[n + a] = Element._raw(alph, v)
    p = Presentation(alph, tuple(rels), False, f"{A.label or 'A'}^E")
    return SmashEnvelope(DGAlgebra(p, DifferentialSpec(alph, diff)), A, tuple(monos), t)


def alpha_map(E: DGAlgebra, S: SmashEnvelope) -> AlgebraMapData:
    """x_a ↦ a#1, y_a ↦ 1#x_a from the presented envelope to the smash one."""
    src = S.algebra.alphabet
    n = len(src)
    tgt = S.presentation.alphabet
    imgs = {}
    for a in range(n):
        imgs[a] = Element.word(tgt, (a,))
        if (a,) in S.monomials:
            imgs[n + a] = Element.word(tgt, (S.h_id((a,)),))
    return AlgebraMapData(E, S.dga, imgs)


def beta_map(S: SmashEnvelope, E: DGAlgebra) -> AlgebraMapData:
    """a#1 ↦ x-word of a, 1#b ↦ Psi(b), from the smash envelope back."""
    src = S.algebra.alphabet
    n = len(src)
    tgt = E.presentation.alphabet
    imgs = {a: Element.word(tgt, (a,)) for a in range(n)}
    for k, w in enumerate(S.monomials):
        imgs[n + k] = Element._raw(tgt, big_psi_terms({w: ONE}, src))
    return AlgebraMapData(S.dga, E, imgs)


# --- functoriality and tensor maps -----------------------------------------

class MapError(ValueError):
    def __init__(self, report: AxiomReport):
        self.report = report
        super().__init__("not a DGPA map: " + ", ".join(report.failed()))


def env_functor_map(f: AlgebraMapData, t: TruncationParams, EA: DGAlgebra = None,
                    EB: DGAlgebra = None) -> AlgebraMapData:
    """f^e: x_a ↦ f(x_a), y_a ↦ Psi(f(x_a)) after checking f is a DGPA map."""
    rep = check_map(f, t, bracket=True)
    if not rep.ok:
        raise MapError(rep)
    A, B = f.source, f.target
    EA = EA or env_presented(A)
    EB = EB or env_presented(B)
    n = len(A.alphabet)
    tgt = EB.presentation.alphabet
    bdeg = B.alphabet.degrees
    imgs = {}
    for a in range(n):
        img = gc_normalize(f.image(a).terms, bdeg)
        imgs[a] = Element._raw(tgt, dict(img))
        imgs[n + a] = Element._raw(tgt, big_psi_terms(img, B.alphabet))
    return AlgebraMapData(EA, EB, imgs)


def tensor_env_map(EAB: DGAlgebra, EAxEB: DGAlgebra, na: int, nb: int) -> AlgebraMapData:
    """(A⊗B)^e → A^e ⊗ B^e sending x_{A,a} ↦ x_a ⊗ 1, y_{A,a} ↦ y_a ⊗ 1, likewise for B."""
    tgt = EAxEB.presentation.alphabet
    perm = tensor_env_permutation(na, nb)
    return AlgebraMapData(EAB, EAxEB, {i: Element.word(tgt, (j,)) for i, j in enumerate(perm)})


def tensor_env_inverse(EAxEB: DGAlgebra, EAB: DGAlgebra, na: int, nb: int) -> AlgebraMapData:
    tgt = EAB.presentation.alphabet
    perm = tensor_env_permutation(na, nb)
    return AlgebraMapData(EAxEB, EAB, {j: Element.word(tgt, (i,)) for i, j in enumerate(perm)})


def tensor_env_permutation(na: int, nb: int) -> List[int]:
    """Generator positions: (A⊗B)^e is [xA, xB, yA, yB], A^e⊗B^e is [xA, yA, xB, yB]."""
    perm = []
    perm += list(range(na))
    perm += [2 * na + j for j in range(nb)]
    perm += [na + i for i in range(na)]
    perm += [2 * na + nb + j for j in range(nb)]
    return perm


def interchange_check(EAB: DGAlgebra, na: int, nb: int, t: TruncationParams) -> AxiomReport:
    """f_A(u) f_B(v) = (-1)^{|u||v|} f_B(v) f_A(u) on generators u of A^e, v of B^e."""
    rep = AxiomReport(t)
    chk = rep.new("interchange_signs")
    alph = EAB.presentation.alphabet
    degs = alph.degrees
    nf = EAB.table(t).reduce_terms
    left = list(range(na)) + [na + nb + i for i in range(na)]
    right = [na + j for j in range(nb)] + [2 * na + nb + j for j in range(nb)]
    for u in left:
        for v in right:
            if not t.contains(degs[u] + degs[v]):
                continue

            def g(u=u, v=v):
                got = nf({(u, v): ONE, (v, u): Fraction(-_sign(degs[u], degs[v]))})
                if got:
                    return (alph[u].name, alph[v].name), "0", str(Element._raw(alph, got))
            chk.attempt(g)
    return rep


def identity_between(P, Q) -> AlgebraMapData:
    """The identity on generators between two presentations on one generator list."""
    a = P.presentation.alphabet
    if a != Q.presentation.alphabet:
        raise ValueError("identity map needs identical generator lists")
    return AlgebraMapData(P, Q, {i: Element.word(a, (i,)) for i in range(len(a))})
