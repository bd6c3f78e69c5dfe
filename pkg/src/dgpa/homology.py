"""Cohomology H(A) = ker d / im d of a windowed DG (Poisson) algebra."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Tuple

from .core import ONE, Element, Terms, Word, add_into, format_element, format_scalar
from .dg_poisson import DGPAlgebra, check_axioms
from .linalg import Echelon, kernel_and_image
from .presentation import TruncationParams

DG_CHECKS = ("graded_commutativity", "leibniz_product", "d_squared", "d_on_relations")


class CohomologyError(ValueError):
    pass


@dataclass
class CohomologyResult:
    window: TruncationParams
    dims: Dict[int, int]
    edges: List[int]
    representatives: Dict[int, List[Element]]
    product: Dict[Tuple[int, int], Dict[int, Fraction]]
    bracket: Dict[Tuple[int, int], Dict[int, Fraction]]
    labels: List[Tuple[int, int]]
    exact: bool = True
    notes: List[str] = field(default_factory=list)
    quotients: Dict[int, "_Quotient"] = field(default_factory=dict, repr=False, compare=False)

    def coordinates(self, d: int, e: Element) -> Dict[int, Fraction]:
        """Class of a cocycle of degree d in the basis of H^d."""
        if d not in self.quotients:
            raise CohomologyError(f"degree {d} is outside the computed range")
        nf = self.quotients[d].reduce
        return self.quotients[d].coordinates(nf(e.terms))

    def dims_tuple(self, degrees=None) -> Tuple[int, ...]:
        ks = sorted(self.dims) if degrees is None else degrees
        return tuple(self.dims[k] for k in ks)

    def bracket_is_zero(self) -> bool:
        return not any(self.bracket.values())

    def _name(self, k):
        d, i = self.labels[k]
        return f"[{d}.{i}]"

    def _vec(self, v):
        if not v:
            return "0"
        return " + ".join(f"{format_scalar(c)} * {self._name(k)}" for k, c in sorted(v.items()))

    def as_dict(self) -> dict:
        return {
            "window": self.window.as_dict(),
            "dims": {str(d): n for d, n in sorted(self.dims.items())},
            "edges": {str(d): "edge, not computed" for d in self.edges},
            "exact": self.exact,
            "representatives": {
                str(d): [format_element(e) for e in reps]
                for d, reps in sorted(self.representatives.items())
            },
            "product": {f"{self._name(i)}*{self._name(j)}": self._vec(v)
                        for (i, j), v in sorted(self.product.items())},
            "bracket": {f"{{{self._name(i)},{self._name(j)}}}": self._vec(v)
                        for (i, j), v in sorted(self.bracket.items())},
            "notes": list(self.notes),
        }


class _Quotient:
    """ker/im in one degree with coordinates relative to chosen representatives."""

    def __init__(self, key, image: Echelon, kernel: List[Dict[Word, Fraction]], reduce=None):
        self.image = image
        self.reduce = reduce
        ech = Echelon(key)
        for row in image.rows.values():
            ech.add(row)
        reps = []
        for v in kernel:
            r = ech.reduce(v)
            if r:
                ech.add(r)
                reps.append(r)
        self.reps = reps
        tagged = Echelon(lambda c: (1, key(c[1])) if c[0] == "w" else (0, c[1]))
        for row in image.rows.values():
            tagged.add({("w", w): c for w, c in row.items()})
        for k, r in enumerate(reps):
            vec = {("w", w): c for w, c in r.items()}
            vec[("r", k)] = ONE
            tagged.add(vec)
        self.tagged = tagged

    def coordinates(self, v: Dict[Word, Fraction]) -> Dict[int, Fraction]:
        rest = self.tagged.reduce({("w", w): c for w, c in v.items()})
        if any(c[0] == "w" for c in rest):
            raise CohomologyError("element is not a cocycle")
        return {c[1]: -x for c, x in rest.items()}


def cohomology(A, t: TruncationParams) -> CohomologyResult:
    """H of the windowed complex; needs a valid DG part, reports Poisson failures."""
    notes = []
    if isinstance(A, DGPAlgebra) and not A.verified:
        rep = check_axioms(A, t)
        bad_dg = [n for n in rep.failed() if n in DG_CHECKS]
        if bad_dg:
            raise CohomologyError("not a DG algebra in the window: " + ", ".join(bad_dg))
        bad = rep.failed()
        if bad:
            notes.append("Poisson axioms fail (" + ", ".join(bad) + "); the induced bracket "
                         "table is computed but H is not certified Poisson")
    tab = A.table(t)
    alph = A.alphabet
    key = alph.word_key
    nonneg = all(g.degree >= 0 for g in alph)
    lo, hi = t.min_degree, t.max_degree

    def basis(d):
        return tab.basis.get(d, []) if lo <= d <= hi else []

    dims, edges, quots = {}, [], {}
    for d in t.degrees():
        if d == hi or (d == lo and not (nonneg and d <= 0)):
            edges.append(d)
            continue
        cols = {w: tab.reduce_terms(A.d_terms({w: ONE})) for w in basis(d)}
        kernel, _ = kernel_and_image(cols, key, key)
        image = Echelon(key)
        for w in basis(d - 1):
            v = tab.reduce_terms(A.d_terms({w: ONE}))
            if v:
                image.add(v)
        q = _Quotient(key, image, kernel, tab.reduce_terms)
        quots[d] = q
        dims[d] = len(q.reps)
    labels = [(d, i) for d in sorted(quots) for i in range(len(quots[d].reps))]
    index = {lab: k for k, lab in enumerate(labels)}
    reps = {d: [Element._raw(alph, dict(r)) for r in q.reps] for d, q in quots.items()}

    def mul(u, v) -> Terms:
        out: Terms = {}
        for a, x in u.items():
            for b, y in v.items():
                add_into(out, {a + b: x * y})
        return tab.reduce_terms(out)

    product, bracket = {}, {}
    has_bracket = isinstance(A, DGPAlgebra)
    for (d1, i1) in labels:
        for (d2, i2) in labels:
            d = d1 + d2
            if d not in quots:
                continue
            u = quots[d1].reps[i1]
            v = quots[d2].reps[i2]
            k1, k2 = index[(d1, i1)], index[(d2, i2)]
            c = quots[d].coordinates(mul(u, v))
            product[(k1, k2)] = {index[(d, i)]: x for i, x in c.items()}
            if has_bracket:
                try:
                    c = quots[d].coordinates(tab.reduce_terms(A.bracket_terms(u, v)))
                except CohomologyError:
                    notes.append(f"bracket of representatives {labels[k1]}, {labels[k2]} "
                                 "is not a cocycle")
                    continue
                bracket[(k1, k2)] = {index[(d, i)]: x for i, x in c.items()}
    if not tab.exact:
        notes.append("normal-form table is length-capped; dimensions are upper bounds")
    return CohomologyResult(t, dims, edges, reps, product, bracket, labels, tab.exact, notes,
                            quotients=quots)
