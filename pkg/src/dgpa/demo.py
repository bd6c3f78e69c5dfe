"""Replays of the worked examples and structural isomorphisms, one record each.

Every replay fixes its own window and returns exact check records; the CLI
``demo`` command, the scripts and the tests all share them.
"""
from __future__ import annotations

from dataclasses import dataclass, field
from typing import Callable, Dict, List

from .catalog import abelian_lie, two_generator, xy_lie
from .compare import ISO, canonical_differentials_match, canonical_match, compare_presentations
from .constructions import exterior_line, ground_field, opposite, opposite_dga, tensor_dga, \
    tensor_product
from .core import Element
from .dg_poisson import check_axioms, check_dg_algebra, verify
from .envelope import (alpha_map, beta_map, env_basis, env_presented, identity_between,
                       interchange_check, smash_env, tensor_env_inverse, tensor_env_map, truncate)
from .homology import cohomology
from .io import parse_element
from .lie import check_lie, semidirect, symmetric_algebra, universal_env_lie
from .maps import AlgebraMapData, check_map
from .modules import check_envelope_module, from_envelope, regular_module, same_tables, \
    to_envelope
from .presentation import Presentation, TruncationParams, graded_dimension
from .report import CheckResult
from .samples import random_dgpa

VALID_PARAMETERS = ((0, 1, 1), (0, 0, 2), (0, 1, 0))
RANDOM_SEEDS = (0, 5)

# relations of the presented envelope of T(λ, μ, p), written by hand
LISTED_ENVELOPE_RELATIONS = (
    "x1.x1",
    "y1.y1",
    "x1.x2 - x2.x1",
    "x1.y1 + y1.x1",
    "x2.y2 - y2.x2",
    "y1.y2 - y2.y1 - p * (x2.y1 + x1.y2)",
    "y1.x2 - x2.y1 - p * x1.x2",
    "y2.x1 - x1.y2 + p * x1.x2",
)


@dataclass
class Replay:
    name: str
    window: TruncationParams
    checks: List[CheckResult] = field(default_factory=list)
    output: Dict[str, object] = field(default_factory=dict)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def check(self, name: str) -> CheckResult:
        c = CheckResult(name)
        self.checks.append(c)
        return c

    def expect(self, name: str, expected, got):
        self.check(name).record(None if expected == got else ((name,), str(expected), str(got)))


def _params(lam, mu, p):
    return f"({lam},{mu},{p})"


def replay_axioms(t: TruncationParams = TruncationParams(8, 0, 10)) -> Replay:
    """T(λ, μ, p) is a DGPA exactly when λμ = 0 and λp = 0."""
    r = Replay("two_generator_axioms", t)
    valid = r.check("valid_parameters_pass")
    for lam, mu, p in VALID_PARAMETERS:
        rep = check_axioms(two_generator(lam, mu, p), t)
        r.output[_params(lam, mu, p)] = rep.failed()
        valid.record(None if rep.ok else ((_params(lam, mu, p),), "all pass",
                                          ", ".join(rep.failed())))
    rep = check_axioms(two_generator(1, 1, 1), t)
    r.output["(1,1,1)"] = rep.failed()
    ds = rep.check("d_squared")
    chk = r.check("d_squared_fails_on_x1")
    hit = [ce for ce in ds.counterexamples if ce.inputs == ("d(d(x1))",)]
    chk.record(None if hit and hit[0].got == "1 * x1.x2" else
               (("(1,1,1)",), "d^2(x1) = 1 * x1.x2", str([c.as_dict() for c in ds.counterexamples])))
    rep = check_axioms(two_generator(1, 0, 1), t)
    r.output["(1,0,1)"] = rep.failed()
    chk = r.check("bracket_leibniz_needs_lambda_p_zero")
    chk.record(None if rep.failed() == ["leibniz_bracket"] else
               (("(1,0,1)",), "only leibniz_bracket fails", ", ".join(rep.failed()) or "none"))
    return r


def replay_envelope_relations(t: TruncationParams = TruncationParams(6, 0, 8),
                              lam=0, mu=1, p=1) -> Replay:
    r = Replay("presented_envelope", t)
    A = verify(two_generator(lam, mu, p), t)
    E = env_presented(A)
    alph = E.presentation.alphabet
    params = {"p": p, "mu": mu, "lambda": lam}
    pairs = [(s, parse_element(s, alph, params)) for s in LISTED_ENVELOPE_RELATIONS]
    pairs = [(s, e) for s, e in pairs if not e.is_zero()]
    listed = [e for _, e in pairs]
    tab = E.table(t)
    chk = r.check("listed_relations_hold")
    for s, e in pairs:
        chk.record(None if tab.is_zero(e) else ((s,), "0", str(tab.normal_form(e))))
    other = Presentation(alph, tuple(listed), False).table(t)
    chk = r.check("computed_relations_follow")
    for e in E.presentation.relations:
        chk.record(None if other.is_zero(e) else ((str(e),), "0", str(other.normal_form(e))))
    chk = r.check("differential_on_y")
    for name, text in (("y1", "lambda * y2"), ("y2", "mu * (x2.y1 + x1.y2)")):
        want = parse_element(text, alph, params)
        got = E.diff.image(alph.index(name))
        chk.record(None if got == want else ((f"d({name})",), str(want), str(got)))
    chk = r.check("differential_on_x")
    for name, text in (("x1", "lambda * x2"), ("x2", "mu * x1.x2")):
        want = tab.normal_form(parse_element(text, alph, params))
        got = tab.normal_form(E.diff.image(alph.index(name)))
        chk.record(None if got == want else ((f"d({name})",), str(want), str(got)))
    r.checks.extend(check_dg_algebra(E, t).checks)
    r.output["relations"] = [str(e) for e in E.presentation.relations]
    r.output["dims"] = graded_dimension(E.presentation, t).as_tuple()
    return r


def replay_smash(t: TruncationParams = TruncationParams(5, 0, 8)) -> Replay:
    """Presented and smash-product envelopes have equal windowed dimensions."""
    r = Replay("smash_envelope", t)
    cases = [("T(0,1,1)", two_generator(0, 1, 1))]
    cases += [(f"random{s}", random_dgpa(s)) for s in RANDOM_SEEDS]
    for name, A in cases:
        A = verify(A, t)
        E = env_presented(A)
        S = smash_env(A, t)
        ge = graded_dimension(E.presentation, t)
        gs = graded_dimension(S.presentation, t)
        r.expect(f"{name}_dims_equal", ge.as_tuple(), gs.as_tuple())
        rep = check_map(alpha_map(E, S), t, bracket=False)
        for c in rep.checks:
            c.name = f"{name}_alpha_{c.name}"
            r.checks.append(c)
        iso = compare_presentations(E, S.dga, alpha_map(E, S), beta_map(S, E), t)
        r.expect(f"{name}_verdict", ISO, iso.verdict)
        r.output[name] = {"dims": ge.as_tuple(), "exact": ge.exact and gs.exact}
    return r


def replay_tensor(t: TruncationParams = TruncationParams(5, 0, 8)) -> Replay:
    r = Replay("tensor_envelope", t)
    A = verify(two_generator(0, 1, 1), t)
    B = verify(exterior_line("x3"), t)
    EAB = env_presented(verify(tensor_product(A, B), t))
    EAxEB = tensor_dga(env_presented(A), env_presented(B))
    na, nb = len(A.alphabet), len(B.alphabet)
    iso = compare_presentations(EAB, EAxEB, tensor_env_map(EAB, EAxEB, na, nb),
                                tensor_env_inverse(EAxEB, EAB, na, nb), t)
    r.expect("verdict", ISO, iso.verdict)
    r.checks.extend(iso.checks.checks)
    r.checks.extend(interchange_check(EAB, na, nb, t).checks)
    r.output["dims"] = iso.as_dict()["dims_source"]
    return r


def replay_opposite(t: TruncationParams = TruncationParams(6, 0, 8)) -> Replay:
    r = Replay("opposite_envelope", t)
    A = verify(two_generator(0, 1, 1), t)
    X = env_presented(verify(opposite(A), t))
    Y = opposite_dga(env_presented(A))
    r.checks.append(canonical_match(X, Y, t))
    r.checks.append(canonical_differentials_match(X, Y, t))
    return r


def _semi_case(r: Replay, name, L, t):
    for c in check_lie(semidirect(L)).checks:
        c.name = f"{name}_semidirect_{c.name}"
        r.checks.append(c)
    SL = verify(symmetric_algebra(L), t)
    ES = env_presented(SL)
    U = universal_env_lie(semidirect(L))
    n = 2 * L.dim
    ua, ea = U.presentation.alphabet, ES.presentation.alphabet
    fwd = AlgebraMapData(ES, U, {i: Element.word(ua, (i,)) for i in range(n)})
    bwd = AlgebraMapData(U, ES, {i: Element.word(ea, (i,)) for i in range(n)})
    iso = compare_presentations(ES, U, fwd, bwd, t)
    r.expect(f"{name}_verdict", ISO, iso.verdict)
    r.output[name] = {"dims": iso.as_dict()["dims_source"], "exact": iso.exact}


def replay_semidirect(t_zero: TruncationParams = TruncationParams(0, 0, 6),
                      t_graded: TruncationParams = TruncationParams(6, 0, 6)) -> Replay:
    r = Replay("symmetric_vs_semidirect", t_graded)
    _semi_case(r, "xy", xy_lie(), t_zero)
    _semi_case(r, "abelian_1_2", abelian_lie((1, 2)), t_graded)
    return r


def replay_ground_field(t: TruncationParams = TruncationParams(5, 0, 8)) -> Replay:
    r = Replay("ground_field_envelope", t)
    k = verify(ground_field(), t)
    E = env_basis(truncate(k, t))
    g = graded_dimension(E.presentation, t)
    r.expect("dims", (1,) + (0,) * t.max_degree, g.as_tuple())
    r.expect("h_1_is_zero", True, E.table(t).is_zero(E.presentation.gen("h_1")))
    return r


def replay_coopposite(t: TruncationParams = TruncationParams(4, 0, 8)) -> Replay:
    r = Replay("coopposite_envelope", t)
    A = verify(two_generator(0, 1, 1), t)
    Aop = verify(opposite(A), t)
    E = env_presented(A)
    left = env_presented(verify(tensor_product(A, Aop), t))
    right = tensor_dga(E, opposite_dga(E))
    mid = tensor_dga(E, env_presented(Aop))
    n = len(A.alphabet)
    fwd = identity_between(mid, right).compose(tensor_env_map(left, mid, n, n))
    bwd = tensor_env_inverse(mid, left, n, n).compose(identity_between(right, mid))
    iso = compare_presentations(left, right, fwd, bwd, t)
    r.expect("verdict", ISO, iso.verdict)
    r.checks.extend(iso.checks.checks)
    return r


def replay_cohomology(t: TruncationParams = TruncationParams(6, 0, 8)) -> Replay:
    r = Replay("cohomology", t)
    res = cohomology(two_generator(1, 0, 1), t)
    r.expect("dims", (1, 0, 0, 0, 0, 0), res.dims_tuple(list(range(6))))
    r.expect("bracket_zero", True, res.bracket_is_zero())
    r.output = res.as_dict()
    return r


def replay_transport(t: TruncationParams = TruncationParams(4, 0, 8)) -> Replay:
    r = Replay("module_transport", t)
    A = verify(two_generator(0, 1, 1), TruncationParams(6, 0, 8))
    M = regular_module(A, 4, t)
    for kind in ("presented", "basis"):
        EM = to_envelope(A, M, t, kind)
        for c in check_envelope_module(EM).checks:
            c.name = f"{kind}_{c.name}"
            r.checks.append(c)
        r.expect(f"{kind}_round_trip", True, same_tables(M, from_envelope(A, EM, t)))
    r.output["module_dim"] = M.dim
    return r


REPLAYS: Dict[str, Callable[[], Replay]] = {
    "two_generator_axioms": replay_axioms,
    "presented_envelope": replay_envelope_relations,
    "smash_envelope": replay_smash,
    "tensor_envelope": replay_tensor,
    "opposite_envelope": replay_opposite,
    "symmetric_vs_semidirect": replay_semidirect,
    "ground_field_envelope": replay_ground_field,
    "coopposite_envelope": replay_coopposite,
    "cohomology": replay_cohomology,
    "module_transport": replay_transport,
}


def run_all(names=None) -> List[Replay]:
    unknown = [n for n in names or () if n not in REPLAYS]
    if unknown:
        raise ValueError(f"unknown replay {unknown[0]!r}; choose from {', '.join(REPLAYS)}")
    return [REPLAYS[n]() for n in (names or REPLAYS)]
