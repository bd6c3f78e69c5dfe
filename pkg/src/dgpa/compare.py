"""Windowed isomorphism certificates between presented DG algebras."""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Dict, List, Optional

from .core import ONE, Element, add_into, format_element
from .linalg import Echelon
from .maps import AlgebraMapData, check_map, presentation_of
from .presentation import (TruncationParams, canonical_relations, graded_dimension)
from .report import AxiomReport, CheckResult

ISO = "iso-up-to-window"
MAP_ONLY = "map-only"
FAILED = "failed"


@dataclass
class IsoReport:
    window: TruncationParams
    forward: Dict[str, str]
    backward: Optional[Dict[str, str]]
    checks: AxiomReport
    dims_source: Dict[int, int]
    dims_target: Dict[int, int]
    exact: bool
    verdict: str = FAILED
    notes: List[str] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return self.verdict == ISO

    def as_dict(self) -> dict:
        return {
            "window": self.window.as_dict(),
            "verdict": self.verdict,
            "forward": self.forward,
            "backward": self.backward,
            "dims_source": {str(k): v for k, v in sorted(self.dims_source.items())},
            "dims_target": {str(k): v for k, v in sorted(self.dims_target.items())},
            "dims": "exact" if self.exact else "upper-bound",
            "checks": [c.as_dict() for c in self.checks.checks],
            "notes": list(self.notes),
        }

    def summary(self) -> str:
        lines = [f"verdict: {self.verdict} (window {self.window.as_dict()})"]
        flag = "exact" if self.exact else "upper bounds"
        lines.append(f"dims source {_fmt_dims(self.dims_source)}")
        lines.append(f"dims target {_fmt_dims(self.dims_target)} ({flag})")
        lines.append(self.checks.summary())
        lines.extend(self.notes)
        return "\n".join(lines)


def _fmt_dims(d):
    return "(" + ", ".join(str(d[k]) for k in sorted(d)) + ")"


def _roundtrip(first: AlgebraMapData, second: AlgebraMapData, t: TruncationParams,
               name: str) -> CheckResult:
    """second ∘ first is the identity on the generators of first's source."""
    chk = CheckResult(name)
    src = first.source_alphabet
    nf = presentation_of(first.source).table(t).reduce_terms
    for i in range(len(src)):
        if not t.contains(src[i].degree):
            continue

        def g(i=i):
            back = second.apply_terms(first.image(i).terms)
            diff = add_into(dict(back), {(i,): ONE}, -ONE)
            got = nf(diff)
            if got:
                return (src[i].name,), src[i].name, format_element(Element._raw(src, nf(back)))
        chk.attempt(g)
    return chk


def _rank_check(f: AlgebraMapData, t: TruncationParams) -> CheckResult:
    """The images of the source basis span the target in each window degree."""
    chk = CheckResult("bijective_in_window")
    stab = presentation_of(f.source).table(t)
    ttab = presentation_of(f.target).table(t)
    tgt = f.target_alphabet
    for d in t.degrees():
        sb = stab.basis.get(d, [])
        tb = ttab.basis.get(d, [])

        def g(d=d, sb=sb, tb=tb):
            ech = Echelon(tgt.word_key)
            for w in sb:
                v = ttab.reduce_terms(f.apply_terms({w: ONE}))
                if v:
                    ech.add(v)
            if ech.rank() != len(tb) or len(sb) != len(tb):
                return (f"degree {d}",), f"rank {len(tb)} = {len(sb)}", f"rank {ech.rank()}"
        chk.attempt(g)
    return chk


def compare_presentations(P, Q, fwd: AlgebraMapData, bwd: AlgebraMapData = None,
                          t: TruncationParams = None) -> IsoReport:
    t = t or TruncationParams()
    checks = AxiomReport(t)
    rep_f = check_map(fwd, t, bracket=False)
    checks.extend(rep_f, prefix="forward_")
    if bwd is not None:
        checks.extend(check_map(bwd, t, bracket=False), prefix="backward_")
    gp = graded_dimension(presentation_of(P), t)
    gq = graded_dimension(presentation_of(Q), t)
    dims = CheckResult("dims_equal")
    for d in t.degrees():
        a, b = gp.dims.get(d, 0), gq.dims.get(d, 0)
        dims.record(None if a == b else ((f"degree {d}",), str(a), str(b)))
    checks.checks.append(dims)
    if bwd is not None:
        checks.checks.append(_roundtrip(fwd, bwd, t, "backward_after_forward"))
        checks.checks.append(_roundtrip(bwd, fwd, t, "forward_after_backward"))
    else:
        checks.checks.append(_rank_check(fwd, t))
    rep = IsoReport(t, fwd.describe(), bwd.describe() if bwd else None, checks,
                    gp.dims, gq.dims, gp.exact and gq.exact)
    if checks.ok:
        rep.verdict = ISO
    elif rep_f.ok:
        rep.verdict = MAP_ONLY
    else:
        rep.verdict = FAILED
    if not rep.exact:
        rep.notes.append("dimensions are upper bounds: words are capped at "
                         f"length {t.max_word_length}")
    skipped = sum(c.skipped for c in checks.checks)
    if skipped:
        rep.notes.append(f"{skipped} evaluations left the window and were skipped")
    return rep


def canonical_match(P, Q, t: TruncationParams) -> CheckResult:
    """Identical canonical relation sets on one generator list."""
    chk = CheckResult("canonical_relations_identical")
    p, q = presentation_of(P), presentation_of(Q)
    if p.alphabet != q.alphabet:
        chk.fail(("generators",), str(p.alphabet), str(q.alphabet))
        return chk
    a = [format_element(r) for r in canonical_relations(p, t)]
    b = [format_element(r) for r in canonical_relations(q, t)]
    for x in sorted(set(a) | set(b)):
        if x in a and x in b:
            chk.record(None)
        elif x in a:
            chk.fail((x,), "present in both", "missing on the right")
        else:
            chk.fail((x,), "present in both", "missing on the left")
    if len(a) != len(b):
        chk.fail(("count",), str(len(a)), str(len(b)))
    return chk


def canonical_differentials_match(P, Q, t: TruncationParams) -> CheckResult:
    """d of every generator agrees modulo the (common) ideal."""
    chk = CheckResult("differentials_identical")
    alph = presentation_of(P).alphabet
    nf = presentation_of(P).table(t).reduce_terms
    nq = presentation_of(Q).table(t).reduce_terms
    for i in range(len(alph)):
        if not t.contains(alph[i].degree + 1):
            continue

        def g(i=i):
            a = nf(dict(P.diff.image(i).terms))
            b = nq(dict(Q.diff.image(i).terms))
            if a != b:
                return (f"d({alph[i].name})",), format_element(Element._raw(alph, a)), \
                    format_element(Element._raw(alph, b))
        chk.attempt(g)
    return chk
