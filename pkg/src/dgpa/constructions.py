"""Opposite algebras, tensor products and small standard algebras."""
from __future__ import annotations

from fractions import Fraction
from typing import List, Sequence, Tuple

from .core import ONE, Alphabet, Element, embed
from .dg_poisson import BracketSpec, DGAlgebra, DGPAlgebra, DifferentialSpec
from .maps import AlgebraMapData
from .presentation import Presentation, as_noncommutative


def _sign(a, b):
    return -1 if a % 2 and b % 2 else 1


def ground_field() -> DGPAlgebra:
    """The DGPA k: no generators, no relations."""
    alph = Alphabet.of([])
    return DGPAlgebra(Presentation(alph, (), True, "k"), DifferentialSpec(alph),
                      BracketSpec(alph))


def exterior_line(name: str = "e", degree: int = 1) -> DGPAlgebra:
    """k[e] with e odd, so e^2 = 0; trivial d and bracket."""
    if degree % 2 == 0:
        raise ValueError("the exterior line needs an odd generator")
    alph = Alphabet.of([(name, degree)])
    return DGPAlgebra(Presentation(alph, (), True, "ext"), DifferentialSpec(alph),
                      BracketSpec(alph))


def opposite(A: DGPAlgebra) -> DGPAlgebra:
    """{a,b}_op = (-1)^{|a||b|}{b,a} = -{a,b}; product and d unchanged."""
    return DGPAlgebra(A.presentation, A.diff, A.bracket.negated(), A.verified_window)


def joined_names(left: Sequence[str], right: Sequence[str]) -> Tuple[List[str], List[str]]:
    """Disjoint names for two generator lists; colliding names get l_/r_ prefixes."""
    clash = set(left) & set(right)
    taken = set(left) | set(right)
    out = []
    for names, pre in ((left, "l_"), (right, "r_")):
        res = []
        for n in names:
            if n in clash:
                c = pre + n
                while c in taken:
                    c += "'"
                taken.add(c)
                n = c
            res.append(n)
        out.append(res)
    return out[0], out[1]


def _joined_alphabet(a: Alphabet, b: Alphabet):
    ln, rn = joined_names(a.names, b.names)
    alph = Alphabet.of(list(zip(ln, a.degrees)) + list(zip(rn, b.degrees)))
    n = len(a)
    return alph, list(range(n)), [n + i for i in range(len(b))]


def _embed_diff(diff: DifferentialSpec, alph, mapping):
    return {mapping[i]: embed(e, alph, mapping) for i, e in diff.images.items()}


def tensor_product(A: DGPAlgebra, B: DGPAlgebra) -> DGPAlgebra:
    """A ⊗ B on the disjoint union of generators.

    Cross commutation is the graded commutativity of the presentation. d and
    {,} act factorwise on generators; {x_A, x_B} = 0.
    """
    alph, ma, mb = _joined_alphabet(A.alphabet, B.alphabet)
    rels = [embed(r, alph, ma) for r in A.presentation.relations]
    rels += [embed(r, alph, mb) for r in B.presentation.relations]
    label = f"({A.label or 'A'}⊗{B.label or 'B'})"
    p = Presentation(alph, tuple(rels), True, label)
    d = _embed_diff(A.diff, alph, ma)
    d.update(_embed_diff(B.diff, alph, mb))
    br = {}
    for (i, j), e in A.bracket.images.items():
        br[(ma[i], ma[j])] = embed(e, alph, ma)
    for (i, j), e in B.bracket.images.items():
        br[(mb[i], mb[j])] = embed(e, alph, mb)
    return DGPAlgebra(p, DifferentialSpec(alph, d), BracketSpec(alph, br))


def tensor_dga(P: DGAlgebra, Q: DGAlgebra) -> DGAlgebra:
    """P ⊗ Q as a DG algebra; generators of P and Q graded-commute."""
    alph, ma, mb = _joined_alphabet(P.alphabet, Q.alphabet)
    label = f"({P.label or 'P'}⊗{Q.label or 'Q'})"
    pp, qp = P.presentation, Q.presentation
    gc = pp.graded_commutative and qp.graded_commutative
    if not gc:
        pp, qp = as_noncommutative(pp), as_noncommutative(qp)
    rels = [embed(r, alph, ma) for r in pp.relations]
    rels += [embed(r, alph, mb) for r in qp.relations]
    if not gc:
        degs = alph.degrees
        for i in ma:
            for j in mb:
                rels.append(Element._raw(alph, {(i, j): ONE,
                                                (j, i): Fraction(-_sign(degs[i], degs[j]))}))
    d = _embed_diff(P.diff, alph, ma)
    d.update(_embed_diff(Q.diff, alph, mb))
    return DGAlgebra(Presentation(alph, tuple(rels), gc, label), DifferentialSpec(alph, d))


def reversal_sign(word, degrees) -> int:
    """Koszul sign of reversing a word."""
    k = sum(1 for i in word if degrees[i] % 2)
    return -1 if (k * (k - 1) // 2) % 2 else 1


def _reverse_element(e: Element) -> Element:
    degs = e.alphabet.degrees
    return Element._raw(e.alphabet, {tuple(reversed(w)): c * reversal_sign(w, degs)
                                     for w, c in e.terms.items()})


def opposite_dga(P: DGAlgebra) -> DGAlgebra:
    """P^op with a *op b = (-1)^{|a||b|} b a, presented on the same generators.

    A word of op-products equals the signed reversed word of P, so relations
    and differential images are rewritten by signed reversal.
    """
    label = f"{P.label or 'P'}^op"
    p = P.presentation
    if p.graded_commutative:
        return DGAlgebra(Presentation(p.alphabet, p.relations, True, label), P.diff)
    rels = tuple(_reverse_element(r) for r in p.relations)
    d = {i: _reverse_element(e) for i, e in P.diff.images.items()}
    return DGAlgebra(Presentation(p.alphabet, rels, False, label),
                     DifferentialSpec(p.alphabet, d))


def swap_map(AB, BA, n_first: int) -> AlgebraMapData:
    """Generator map AB -> BA: x ⊗ 1 ↦ 1 ⊗ x and 1 ⊗ y ↦ y ⊗ 1.

    On generators the sign (-1)^{|a||b|} is +1 since one side is the unit;
    the sign on products is enforced by the cross commutation relations.
    """
    src = AB.presentation.alphabet if hasattr(AB, "presentation") else AB.alphabet
    tgt = BA.presentation.alphabet if hasattr(BA, "presentation") else BA.alphabet
    n = len(src)
    n_second = n - n_first
    imgs = {}
    for i in range(n):
        j = i + n_second if i < n_first else i - n_first
        imgs[i] = Element.word(tgt, (j,))
    return AlgebraMapData(AB, BA, imgs)
