"""Finite DG Poisson modules and their transport to envelope modules."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

from .core import ONE, Terms, Word, add_into, gc_normalize
from .dg_poisson import DGAlgebra, DGPAlgebra
from .constructions import tensor_product
from .envelope import FiniteDGPA, big_psi_terms, env_basis, env_presented, truncate
from .lie import vadd
from .presentation import TruncationParams, as_noncommutative
from .report import AxiomReport

Vector = Dict[int, Fraction]


def _sign(a, b):
    return -1 if a % 2 and b % 2 else 1


def _show(v: Mapping[int, Fraction], names) -> str:
    if not v:
        return "0"
    return " + ".join(f"{c} * {names[k]}" for k, c in sorted(v.items(), reverse=True))


@dataclass
class DGPModule:
    """Finite module tables over the normal-form basis words of an algebra.

    action[(w, i)] = w·m_i and bracket_action[(w, i)] = {w, m_i}; missing
    entries are zero.
    """

    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    action: Dict[Tuple[Word, int], Vector] = field(default_factory=dict)
    bracket_action: Dict[Tuple[Word, int], Vector] = field(default_factory=dict)
    differential: Dict[int, Vector] = field(default_factory=dict)
    label: str = ""

    @property
    def dim(self) -> int:
        return len(self.names)

    def degree_range(self):
        if not self.degrees:
            return (0, -1)
        return (min(self.degrees), max(self.degrees))

    def tables(self):
        return (self.action, self.bracket_action, self.differential)

    def d(self, v: Mapping[int, Fraction]) -> Vector:
        out: Vector = {}
        for i, c in v.items():
            w = self.differential.get(i)
            if w:
                vadd(out, w, c)
        return out


class ModuleContext:
    """Evaluates algebra elements acting on a module, modulo the ideal of A."""

    def __init__(self, A: DGPAlgebra, M: DGPModule, t: TruncationParams):
        self.A = A
        self.M = M
        lo, hi = M.degree_range()
        span = max(hi - lo, 0)
        self.span = span
        self.t = TruncationParams(span, min(0, t.min_degree), t.max_word_length)
        self.tab = A.table(self.t)
        self.mdeg = M.degrees
        self.mrange = (lo, hi)

    def _terms(self, a: Terms, shift: int) -> Terms:
        """Keep the words that can act nontrivially on degree `shift`, then normal-form."""
        lo, hi = self.mrange
        wd = self.A.alphabet.word_degree
        keep = {w: c for w, c in a.items() if lo <= wd(w) + shift <= hi}
        return self.tab.reduce_terms(keep) if keep else {}

    def act(self, a: Terms, v: Mapping[int, Fraction]) -> Vector:
        return self._apply(self.M.action, a, v)

    def br(self, a: Terms, v: Mapping[int, Fraction]) -> Vector:
        return self._apply(self.M.bracket_action, a, v)

    def _apply(self, table, a, v) -> Vector:
        out: Vector = {}
        for i, c in v.items():
            for w, x in self._terms(a, self.mdeg[i]).items():
                r = table.get((w, i))
                if r:
                    vadd(out, r, c * x)
        return out

    def mul(self, a: Terms, b: Terms) -> Terms:
        out: Terms = {}
        for u, x in a.items():
            for w, y in b.items():
                add_into(out, {u + w: x * y})
        return gc_normalize(out, self.A.alphabet.degrees)

    def words(self) -> List[Tuple[Word, int]]:
        res = []
        for d in self.t.degrees():
            for w in self.tab.basis.get(d, []):
                res.append((w, d))
        return res


def check_module_axioms(A: DGPAlgebra, M: DGPModule, t: TruncationParams) -> AxiomReport:
    """Unit, associativity, (ia), (ib), (ic), (ii), DG Leibniz and ∂² = 0."""
    cx = ModuleContext(A, M, t)
    rep = AxiomReport(t)
    names = M.names
    alph = A.alphabet
    words = cx.words()
    e = [{i: ONE} for i in range(M.dim)]

    def wn(w):
        return alph.word_name(w)

    def show(v):
        return _show(v, names)

    def lin(*parts):
        out: Vector = {}
        for s, v in parts:
            vadd(out, v, Fraction(s))
        return out

    def rec(chk, inputs, lhs, rhs):
        chk.record(None if lhs == rhs else (inputs, show(rhs), show(lhs)))

    def dA(a):
        return A.d_terms(a)

    def brA(a, b):
        return A.bracket_terms(a, b)

    chk = rep.new("unit")
    for i in range(M.dim):
        rec(chk, ("1", names[i]), cx.act({(): ONE}, e[i]), e[i])
    chk = rep.new("relations_act_trivially")
    for r in A.presentation.relations:
        rt = gc_normalize(r.terms, alph.degrees)
        for i in range(M.dim):
            got = _word_action(cx, rt, e[i])
            rec(chk, (str(r), names[i]), got, {})
    chk = rep.new("associativity")
    ia = rep.new("ia")
    ib = rep.new("ib")
    ic = rep.new("ic")
    for a, da in words:
        for b, db in words:
            s = _sign(da, db)
            A1, B1 = {a: ONE}, {b: ONE}
            for i in range(M.dim):
                m = e[i]
                inp = (wn(a), wn(b), names[i])
                rec(chk, inp, cx.act(cx.mul(A1, B1), m), cx.act(A1, cx.act(B1, m)))
                rec(ia, inp, cx.br(A1, cx.act(B1, m)),
                    lin((1, cx.act(brA(A1, B1), m)), (s, cx.act(B1, cx.br(A1, m)))))
                rec(ib, inp, cx.br(cx.mul(A1, B1), m),
                    lin((1, cx.act(A1, cx.br(B1, m))), (s, cx.act(B1, cx.br(A1, m)))))
                rec(ic, inp, cx.br(A1, cx.br(B1, m)),
                    lin((1, cx.br(brA(A1, B1), m)), (s, cx.br(B1, cx.br(A1, m)))))
    ii = rep.new("ii")
    dg = rep.new("dg_leibniz")
    for a, da in words:
        A1 = {a: ONE}
        sa = -1 if da % 2 else 1
        for i in range(M.dim):
            m = e[i]
            inp = (wn(a), names[i])
            rec(ii, inp, M.d(cx.br(A1, m)), lin((1, cx.br(dA(A1), m)), (sa, cx.br(A1, M.d(m)))))
            rec(dg, inp, M.d(cx.act(A1, m)), lin((1, cx.act(dA(A1), m)), (sa, cx.act(A1, M.d(m)))))
    chk = rep.new("d_squared")
    for i in range(M.dim):
        rec(chk, (names[i],), M.d(M.d(e[i])), {})
    return rep


def _word_action(cx: ModuleContext, terms: Terms, v) -> Vector:
    """Act by each word letter by letter (rightmost first), no normal forms."""
    gens = {}
    out: Vector = {}
    for w, c in terms.items():
        cur: Vector = dict(v)
        for g in reversed(w):
            op = gens.get(g)
            if op is None:
                op = {i: cx.M.action.get(((g,), i), {}) for i in range(cx.M.dim)}
                gens[g] = op
            nxt: Vector = {}
            for i, x in cur.items():
                vadd(nxt, op[i], x)
            cur = nxt
            if not cur:
                break
        vadd(out, cur, c)
    return out


def regular_module(A: DGPAlgebra, max_degree: int, t: TruncationParams = None) -> DGPModule:
    """A / A_{>max_degree} as a module over A: a·m = am, {a, m} = {a, m}_A, ∂ = d."""
    t = t or TruncationParams(max_degree, 0, max(8, max_degree + 1))
    F = truncate(A, TruncationParams(max_degree, 0, t.max_word_length))
    tab = A.table(TruncationParams(max_degree, 0, t.max_word_length))
    words = [w for d in range(max_degree + 1) for w in tab.basis.get(d, [])]
    action, bracket = {}, {}
    for i, w in enumerate(words):
        for j in range(F.dim):
            p = F.product.get((i, j))
            if p:
                action[(w, j)] = dict(p)
            b = F.bracket.get((i, j))
            if b:
                bracket[(w, j)] = dict(b)
    return DGPModule(F.names, F.degrees, action, bracket,
                     {i: dict(v) for i, v in F.differential.items()}, label=f"{A.label or 'A'}")


def module_from_generators(A: DGPAlgebra, basis: Sequence[Tuple[str, int]],
                           gen_action: Mapping[Tuple[int, int], Vector],
                           gen_bracket: Mapping[Tuple[int, int], Vector],
                           differential: Mapping[int, Vector], t: TruncationParams,
                           label: str = "") -> DGPModule:
    """Extend generator actions to basis words: w·m letter by letter, {w, m} by (ib)."""
    names = tuple(n for n, _ in basis)
    degs = tuple(d for _, d in basis)
    M0 = DGPModule(names, degs, {((g,), i): dict(v) for (g, i), v in gen_action.items() if v},
                   {}, {i: dict(v) for i, v in differential.items() if v}, label)
    cx = ModuleContext(A, M0, t)
    adeg = A.alphabet.degrees
    action, bracket = {}, {}
    for w, dw in cx.words():
        for i in range(len(names)):
            v = _word_action(cx, {w: ONE}, {i: ONE})
            if v:
                action[(w, i)] = v
            b = _word_bracket(w, i, gen_action, gen_bracket, adeg, len(names))
            if b:
                bracket[(w, i)] = b
    return DGPModule(names, degs, action, bracket, dict(M0.differential), label)


def _word_bracket(w, i, gen_action, gen_bracket, adeg, n) -> Vector:
    """{g·rest, m} = g{rest, m} + (-1)^{|g||rest|} rest{g, m}."""
    if not w:
        return {}
    if len(w) == 1:
        return dict(gen_bracket.get((w[0], i), {}))
    g, rest = w[0], w[1:]
    drest = sum(adeg[k] for k in rest)
    out: Vector = {}
    for j, c in _word_bracket(rest, i, gen_action, gen_bracket, adeg, n).items():
        vadd(out, gen_action.get((g, j), {}), c)
    s = _sign(adeg[g], drest)
    for j, c in gen_bracket.get((g, i), {}).items():
        vadd(out, _letters(rest, j, gen_action), s * c)
    return out


def _letters(w, i, gen_action) -> Vector:
    cur: Vector = {i: ONE}
    for g in reversed(w):
        nxt: Vector = {}
        for j, c in cur.items():
            vadd(nxt, gen_action.get((g, j), {}), c)
        cur = nxt
    return cur


def tensor_module(A: DGPAlgebra, M: DGPModule, B: DGPAlgebra, N: DGPModule,
                  t: TruncationParams):
    """M ⊗ N over A ⊗ B; returns (A ⊗ B, module).

    (a⊗b)(m⊗n) = (-1)^{|b||m|} am ⊗ bn,
    {a⊗b, m⊗n} = (-1)^{|b||m|} (am ⊗ {b, n} + {a, m} ⊗ bn),
    ∂(m⊗n) = ∂m ⊗ n + (-1)^{|m|} m ⊗ ∂n.
    """
    T = tensor_product(A, B)
    na = len(A.alphabet)
    nd = N.dim
    names = tuple(f"{m}⊗{n}" for m in M.names for n in N.names)
    degs = tuple(dm + dn for dm in M.degrees for dn in N.degrees)

    def pair(u: Vector, v: Vector) -> Vector:
        return {i * nd + j: x * y for i, x in u.items() for j, y in v.items()}

    diff: Dict[int, Vector] = {}
    for i in range(M.dim):
        for j in range(nd):
            v = pair(M.d({i: ONE}), {j: ONE})
            vadd(v, pair({i: ONE}, N.d({j: ONE})), _sign(M.degrees[i], 1))
            if v:
                diff[i * nd + j] = v
    cm, cn = ModuleContext(A, M, t), ModuleContext(B, N, t)
    cx = ModuleContext(T, DGPModule(names, degs, {}, {}, diff), t)
    bdeg = B.alphabet.word_degree
    action, bracket = {}, {}
    for w, _ in cx.words():
        wa = tuple(g for g in w if g < na)
        wb = tuple(g - na for g in w if g >= na)
        if w != wa + tuple(g + na for g in wb):
            raise ValueError(f"basis word {w} of A ⊗ B is not of the form a·b")
        a, b = {wa: ONE}, {wb: ONE}
        for i in range(M.dim):
            s = _sign(bdeg(wb), M.degrees[i])
            am, ma = cm.act(a, {i: ONE}), cm.br(a, {i: ONE})
            for j in range(nd):
                bn = cn.act(b, {j: ONE})
                v = {k: s * c for k, c in pair(am, bn).items()}
                if v:
                    action[(w, i * nd + j)] = v
                br = pair(am, cn.br(b, {j: ONE}))
                vadd(br, pair(ma, bn))
                br = {k: s * c for k, c in br.items() if c}
                if br:
                    bracket[(w, i * nd + j)] = br
    return T, DGPModule(names, degs, action, bracket, diff, f"{M.label or 'M'}⊗{N.label or 'N'}")


# --- envelope modules -------------------------------------------------------

@dataclass
class EnvelopeModule:
    """A DG module over a presented envelope: one matrix per generator."""

    envelope: DGAlgebra
    names: Tuple[str, ...]
    degrees: Tuple[int, ...]
    generator_action: Dict[int, Dict[int, Vector]]
    differential: Dict[int, Vector]
    kind: str = "presented"
    finite: Optional[FiniteDGPA] = None

    def act_word(self, w: Word, v: Mapping[int, Fraction]) -> Vector:
        cur: Vector = dict(v)
        for g in reversed(w):
            op = self.generator_action.get(g, {})
            nxt: Vector = {}
            for i, x in cur.items():
                r = op.get(i)
                if r:
                    vadd(nxt, r, x)
            cur = nxt
            if not cur:
                break
        return cur

    def act(self, terms, v) -> Vector:
        out: Vector = {}
        for w, c in terms.items():
            vadd(out, self.act_word(w, v), c)
        return out

    def d(self, v) -> Vector:
        out: Vector = {}
        for i, c in v.items():
            r = self.differential.get(i)
            if r:
                vadd(out, r, c)
        return out


def _env_words(A: DGPAlgebra, M: DGPModule, kind: str, t: TruncationParams):
    if kind == "presented":
        return env_presented(A, check=False), None
    if kind == "basis":
        span = max(M.degree_range()[1] - M.degree_range()[0], 0)
        F = truncate(A, TruncationParams(span, 0, t.max_word_length))
        return env_basis(F, require_valid=False), F
    raise ValueError(f"unknown envelope kind {kind!r}")


def to_envelope(A: DGPAlgebra, M: DGPModule, t: TruncationParams,
                kind: str = "presented") -> EnvelopeModule:
    """x_a (or m_a) acts by a·m, y_a (or h_a) acts by {a, m}."""
    cx = ModuleContext(A, M, t)
    E, F = _env_words(A, M, kind, t)
    n = len(A.alphabet)
    ops: Dict[int, Dict[int, Vector]] = {}
    if kind == "presented":
        for g in range(n):
            ops[g] = {i: cx.act({(g,): ONE}, {i: ONE}) for i in range(M.dim)}
            ops[n + g] = {i: cx.br({(g,): ONE}, {i: ONE}) for i in range(M.dim)}
    else:
        k = F.dim
        for j, w in enumerate(F.words):
            ops[j] = {i: cx.act({w: ONE}, {i: ONE}) for i in range(M.dim)}
            ops[k + j] = {i: cx.br({w: ONE}, {i: ONE}) for i in range(M.dim)}
    ops = {g: {i: v for i, v in op.items() if v} for g, op in ops.items()}
    return EnvelopeModule(E, M.names, M.degrees, ops, dict(M.differential), kind, F)


def check_envelope_module(EM: EnvelopeModule) -> AxiomReport:
    """Every envelope relation kills every basis vector; ∂ is compatible; ∂² = 0."""
    rep = AxiomReport(None)
    names = EM.names
    E = EM.envelope
    alph = E.presentation.alphabet
    e = [{i: ONE} for i in range(len(names))]
    chk = rep.new("relations_annihilate")
    for r in as_noncommutative(E.presentation).relations:
        for i in range(len(names)):
            got = EM.act(r.terms, e[i])
            chk.record(None if not got else ((str(r), names[i]), "0", _show(got, names)))
    chk = rep.new("d_compatible")
    for g in range(len(alph)):
        sg = -1 if alph[g].degree % 2 else 1
        for i in range(len(names)):
            lhs = EM.d(EM.act_word((g,), e[i]))
            rhs = EM.act(E.diff.image(g).terms, e[i])
            vadd(rhs, EM.act_word((g,), EM.d(e[i])), sg)
            chk.record(None if lhs == rhs else
                       ((alph[g].name, names[i]), _show(rhs, names), _show(lhs, names)))
    chk = rep.new("d_squared")
    for i in range(len(names)):
        got = EM.d(EM.d(e[i]))
        chk.record(None if not got else ((names[i],), "0", _show(got, names)))
    return rep


def from_envelope(A: DGPAlgebra, EM: EnvelopeModule, t: TruncationParams) -> DGPModule:
    """a·m := m_a m and {a, m} := h_a m on the normal-form basis words of A."""
    names, degs = EM.names, EM.degrees
    M0 = DGPModule(names, degs, {}, {}, dict(EM.differential))
    cx = ModuleContext(A, M0, t)
    src = A.alphabet
    action, bracket = {}, {}
    words = cx.words()
    if EM.kind == "basis":
        index = {w: j for j, w in enumerate(EM.finite.words)}
        k = len(index)
    for w, dw in words:
        for i in range(len(names)):
            if EM.kind == "presented":
                v = EM.act_word(w, {i: ONE})
                b = EM.act(big_psi_terms({w: ONE}, src), {i: ONE})
            else:
                j = index[w]
                v = EM.act_word((j,), {i: ONE})
                b = EM.act_word((k + j,), {i: ONE})
            if v:
                action[(w, i)] = v
            if b:
                bracket[(w, i)] = b
    return DGPModule(names, degs, action, bracket, dict(EM.differential))


class ModuleError(ValueError):
    def __init__(self, what: str, report: AxiomReport):
        self.report = report
        first = next(c for c in report.checks if not c.ok)
        ce = first.counterexamples[0] if first.counterexamples else None
        detail = f" (first: {first.name} on {', '.join(ce.inputs)})" if ce else ""
        super().__init__(f"{what} fail: " + ", ".join(report.failed()) + detail)


def transport_module(A: DGPAlgebra, M, direction: str, t: TruncationParams,
                     kind: str = "presented"):
    """Checked transport: a DGPModule to its envelope module, or an envelope module back."""
    if direction == "to_envelope":
        rep = check_module_axioms(A, M, t)
        if not rep.ok:
            raise ModuleError("module axioms", rep)
        return to_envelope(A, M, t, kind)
    if direction == "from_envelope":
        rep = check_envelope_module(M)
        if not rep.ok:
            raise ModuleError("envelope relations", rep)
        return from_envelope(A, M, t)
    raise ValueError(f"unknown direction {direction!r}")


def same_tables(M: DGPModule, N: DGPModule) -> bool:
    return M.names == N.names and M.degrees == N.degrees and M.tables() == N.tables()


def check_module_map(A: DGPAlgebra, M: DGPModule, N: DGPModule,
                     f: Mapping[int, Vector], t: TruncationParams) -> AxiomReport:
    """f(a m) = a f(m), f({a, m}) = {a, f(m)}, f ∂ = ∂ f on basis tuples."""
    cm, cn = ModuleContext(A, M, t), ModuleContext(A, N, t)
    rep = AxiomReport(t)

    def fv(v):
        out: Vector = {}
        for i, c in v.items():
            vadd(out, f.get(i, {}), c)
        return out

    names = N.names
    act, brk, dd = rep.new("action"), rep.new("bracket"), rep.new("differential")
    words = cm.words()
    for i in range(M.dim):
        m = {i: ONE}
        lhs, rhs = fv(M.d(m)), N.d(fv(m))
        dd.record(None if lhs == rhs else ((M.names[i],), _show(rhs, names), _show(lhs, names)))
        for w, _ in words:
            a = {w: ONE}
            for chk, op, opn in ((act, cm.act, cn.act), (brk, cm.br, cn.br)):
                lhs, rhs = fv(op(a, m)), opn(a, fv(m))
                chk.record(None if lhs == rhs else
                           ((A.alphabet.word_name(w), M.names[i]), _show(rhs, names),
                            _show(lhs, names)))
    return rep


def check_envelope_map(EM: EnvelopeModule, EN: EnvelopeModule, f: Mapping[int, Vector]) -> AxiomReport:
    """f commutes with every envelope generator and with ∂."""
    rep = AxiomReport(None)
    chk = rep.new("envelope_linear")
    alph = EM.envelope.presentation.alphabet

    def fv(v):
        out: Vector = {}
        for i, c in v.items():
            vadd(out, f.get(i, {}), c)
        return out

    for i in range(len(EM.names)):
        m = {i: ONE}
        for g in range(len(alph)):
            lhs, rhs = fv(EM.act_word((g,), m)), EN.act_word((g,), fv(m))
            chk.record(None if lhs == rhs else
                       ((alph[g].name, EM.names[i]), _show(rhs, EN.names), _show(lhs, EN.names)))
        lhs, rhs = fv(EM.d(m)), EN.d(fv(m))
        chk.record(None if lhs == rhs else
                   (("d", EM.names[i]), _show(rhs, EN.names), _show(lhs, EN.names)))
    return rep


def zero_module() -> DGPModule:
    return DGPModule((), (), label="0")
