"""Command line front end: batch verification runs with JSON reports.

Exit status is 0 when every check passes, 1 when one fails and 2 on input
errors. Reports carry no timestamps, so equal inputs give equal bytes.
"""
from __future__ import annotations

import argparse
import json
import os
import sys
from typing import Dict, List, Optional

from .compare import ISO, compare_presentations
from .constructions import opposite, opposite_dga, tensor_dga, tensor_product
from .demo import run_all
from .dg_poisson import (DGPAlgebra, UnverifiedError, check_axioms, check_dg_algebra,
                         verify_report)
from .envelope import alpha_map, check_finite, env_basis, env_presented, smash_env, truncate
from .homology import DG_CHECKS, CohomologyError, cohomology
from .io import (ParseError, lie_document, load_algebra, parse_lie, parse_map,
                 parse_module, parse_scalar, presentation_document, serialize_presentation)
from .lie import check_lie, semidirect, symmetric_algebra, universal_env_lie
from .maps import AlgebraMapData, check_map
from .modules import (check_envelope_module, check_module_axioms, from_envelope, same_tables,
                      to_envelope)
from .presentation import TruncationParams, WindowError, WindowExplosion, graded_dimension
from .report import AxiomReport, CheckResult


class InputError(ValueError):
    pass


class Run:
    """Checks and output collected by one subcommand."""

    def __init__(self, args):
        self.args = args
        self.window = TruncationParams(args.max_degree, 0, args.max_length)
        self.checks: List[CheckResult] = []
        self.output: Dict[str, object] = {}
        self.emitted = None
        self._overrides = dict(args.set or {})
        self._used = set()

    def add(self, rep: AxiomReport, prefix: str = ""):
        for c in rep.checks:
            if prefix:
                c.name = prefix + c.name
            self.checks.append(c)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def _params_for(self, source) -> dict:
        declared = set(_raw(source).get("parameters", None) or {})
        own = {k: v for k, v in self._overrides.items() if k in declared}
        self._used.update(own)
        return own

    def algebra(self, source):
        return load_algebra(_text(source), self._params_for(_text(source)))

    def dgpa(self, source) -> DGPAlgebra:
        A = self.algebra(source)
        if not isinstance(A, DGPAlgebra):
            raise InputError(f"{source}: a DG Poisson algebra document is required "
                             "(graded_commutative true)")
        return A

    def lie(self, source):
        text = _text(source)
        return parse_lie(text, self._params_for(text))

    def module(self, source, A):
        text = _text(source)
        return parse_module(text, A, self.window, self._params_for(text))

    def finish_parameters(self):
        unused = sorted(set(self._overrides) - self._used)
        if unused:
            raise InputError(f"--set names parameters no input declares: {', '.join(unused)}")

    def verified(self, A: DGPAlgebra, prefix: str = "") -> Optional[DGPAlgebra]:
        rep, B = verify_report(A, self.window)
        self.add(rep, prefix)
        return B

    def report(self) -> dict:
        return {
            "command": " ".join(self.args.argv),
            "window": _window(self.window),
            "checks": [c.as_dict() for c in self.checks],
            "output": self.output,
            "ok": self.ok,
        }


def _window(t: TruncationParams) -> dict:
    return {"max_degree": t.max_degree, "max_length": t.max_word_length}


def _text(source: str) -> str:
    if source.lstrip().startswith("{"):
        return source
    try:
        with open(source, encoding="utf-8") as fh:
            return fh.read()
    except OSError as exc:
        raise InputError(f"cannot read {source}: {exc.strerror}") from None


def _raw(text: str) -> dict:
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", "", exc.pos) from None
    if not isinstance(data, dict):
        raise ParseError("input document must be a JSON object")
    return data


def _dims(obj, t) -> dict:
    g = graded_dimension(obj.presentation, t)
    return {"dims": {str(k): v for k, v in sorted(g.dims.items())}, "dims_flag": g.flag}


def _describe(run: Run, obj):
    run.output["presentation"] = presentation_document(obj)
    run.output.update(_dims(obj, run.window))
    run.emitted = obj


# --- subcommands ------------------------------------------------------------

def cmd_check(run: Run):
    A = run.algebra(run.args.input)
    run.add(check_axioms(A, run.window) if isinstance(A, DGPAlgebra)
            else check_dg_algebra(A, run.window))
    run.output["label"] = A.label
    run.output.update(_dims(A, run.window))


def cmd_env(run: Run):
    A = run.verified(run.dgpa(run.args.input))
    if A is None:
        run.output["error"] = "input fails the DGPA axioms in the window; no envelope built"
        return
    E = env_presented(A)
    run.add(check_dg_algebra(E, run.window), "envelope_")
    _describe(run, E)


def cmd_env_smash(run: Run):
    A = run.verified(run.dgpa(run.args.input))
    if A is None:
        run.output["error"] = "input fails the DGPA axioms in the window; no envelope built"
        return
    S = smash_env(A, run.window)
    run.add(check_dg_algebra(S.dga, run.window), "envelope_")
    run.add(check_map(alpha_map(env_presented(A), S), run.window, bracket=False), "alpha_")
    _describe(run, S.dga)


def cmd_env_basis(run: Run):
    A = run.dgpa(run.args.input)
    F = truncate(A, run.window)
    rep = check_finite(F)
    run.add(rep, "table_")
    if not rep.ok:
        run.output["error"] = "the truncated table fails the DGPA axioms; no envelope built"
        return
    E = env_basis(F)
    run.add(check_dg_algebra(E, run.window), "envelope_")
    _describe(run, E)


def cmd_tensor(run: Run):
    A, B = run.algebra(run.args.left), run.algebra(run.args.right)
    if isinstance(A, DGPAlgebra) and isinstance(B, DGPAlgebra):
        run.add(check_axioms(A, run.window), "left_")
        run.add(check_axioms(B, run.window), "right_")
        T = tensor_product(A, B)
        run.add(check_axioms(T, run.window))
    else:
        A, B = (X.dga if isinstance(X, DGPAlgebra) else X for X in (A, B))
        T = tensor_dga(A, B)
        run.add(check_dg_algebra(T, run.window))
    _describe(run, T)


def cmd_op(run: Run):
    A = run.algebra(run.args.input)
    if isinstance(A, DGPAlgebra):
        B = opposite(A)
        run.add(check_axioms(B, run.window))
    else:
        B = opposite_dga(A)
        run.add(check_dg_algebra(B, run.window))
    _describe(run, B)


def cmd_sym_lie(run: Run):
    L = run.lie(run.args.input)
    run.add(check_lie(L), "lie_")
    S = symmetric_algebra(L)
    run.add(check_axioms(S, run.window))
    _describe(run, S)


def cmd_u_lie(run: Run):
    L = run.lie(run.args.input)
    run.add(check_lie(L), "lie_")
    U = universal_env_lie(L)
    run.add(check_dg_algebra(U, run.window))
    _describe(run, U)


def cmd_semidirect(run: Run):
    L = run.lie(run.args.input)
    run.add(check_lie(L), "input_")
    S = semidirect(L)
    run.add(check_lie(S))
    run.output["lie_algebra"] = lie_document(S)
    run.emitted = run.output["lie_algebra"]


def cmd_cohomology(run: Run):
    A = run.algebra(run.args.input)
    rep = check_axioms(A, run.window) if isinstance(A, DGPAlgebra) else \
        check_dg_algebra(A, run.window)
    run.add(AxiomReport(run.window, [c for c in rep.checks if c.name in DG_CHECKS]))
    if not run.ok:
        run.output["error"] = "not a DG algebra in the window; cohomology not computed"
        return
    res = cohomology(A, run.window)
    run.output.update(res.as_dict())
    run.output.pop("window", None)


def cmd_compare(run: Run):
    P, Q = run.algebra(run.args.left), run.algebra(run.args.right)
    fwd = AlgebraMapData(P, Q, parse_map(_map_text(run.args.map), P.alphabet, Q.alphabet))
    bwd = None
    if run.args.inverse:
        bwd = AlgebraMapData(Q, P, parse_map(_map_text(run.args.inverse), Q.alphabet, P.alphabet))
    iso = compare_presentations(P, Q, fwd, bwd, run.window)
    run.checks.extend(iso.checks.checks)
    verdict = CheckResult("verdict")
    verdict.record(None if iso.verdict == ISO else (("verdict",), ISO, iso.verdict))
    run.checks.append(verdict)
    out = iso.as_dict()
    out.pop("window")
    out.pop("checks")
    run.output.update(out)


def _map_text(arg: str) -> str:
    if "=" not in arg and os.path.exists(arg):
        with open(arg, encoding="utf-8") as fh:
            return fh.read().replace("\n", ";")
    return arg


def cmd_module_check(run: Run):
    A = run.dgpa(run.args.algebra)
    M = run.module(run.args.module, A)
    run.add(check_module_axioms(A, M, run.window))
    run.output.update({"label": M.label, "basis": list(M.names), "degrees": list(M.degrees)})


def cmd_transport(run: Run):
    A = run.dgpa(run.args.algebra)
    M = run.module(run.args.module, A)
    kinds = ("presented", "basis") if run.args.kind == "both" else (run.args.kind,)
    for kind in kinds:
        EM = to_envelope(A, M, run.window, kind)
        run.add(check_envelope_module(EM), f"{kind}_")
        rt = CheckResult(f"{kind}_round_trip")
        rt.record(None if same_tables(M, from_envelope(A, EM, run.window)) else
                  ((M.label or "M",), "identical tables", "tables differ"))
        run.checks.append(rt)
        run.output[kind] = {"envelope_generators": list(EM.envelope.presentation.alphabet.names),
                            "module_dim": len(EM.names)}


def cmd_demo(run: Run):
    for r in run_all(run.args.only or None):
        for c in r.checks:
            c.name = f"{r.name}.{c.name}"
            run.checks.append(c)
        run.output[r.name] = {"window": _window(r.window), "ok": r.ok, "output": r.output}


# --- argument handling ------------------------------------------------------

def _set_pair(text: str):
    if "=" not in text:
        raise argparse.ArgumentTypeError("--set expects name=p/q")
    name, value = text.split("=", 1)
    try:
        return name.strip(), parse_scalar(value)
    except ParseError as exc:
        raise argparse.ArgumentTypeError(str(exc)) from None


class _Parser(argparse.ArgumentParser):
    def error(self, message):
        raise InputError(f"{self.prog}: {message}")


def build_parser() -> argparse.ArgumentParser:
    common = argparse.ArgumentParser(add_help=False)
    common.add_argument("--max-degree", type=int, default=6)
    common.add_argument("--max-length", type=int, default=8)
    common.add_argument("--set", type=_set_pair, action="append", metavar="NAME=P/Q",
                        help="override a named rational parameter")
    common.add_argument("--json", action="store_true", help="print the JSON report")
    common.add_argument("--out", metavar="FILE", help="write the JSON report to FILE")
    common.add_argument("--emit", metavar="FILE",
                        help="write the produced algebra as an input document")
    p = _Parser(prog="dgpa", description="Exact windowed checks for DG Poisson algebras.")
    sub = p.add_subparsers(dest="command", parser_class=_Parser)
    sub.required = True

    def one(name, fn, help_text, arg="input"):
        s = sub.add_parser(name, parents=[common], help=help_text)
        s.add_argument(arg)
        s.set_defaults(fn=fn)
        return s

    one("check", cmd_check, "verify the axioms of an algebra document")
    one("env", cmd_env, "presented universal enveloping algebra")
    one("env-smash", cmd_env_smash, "smash-product envelope in the window")
    one("env-basis", cmd_env_basis, "envelope of the finite truncated table")
    one("op", cmd_op, "opposite algebra")
    one("sym-lie", cmd_sym_lie, "symmetric algebra of a DG Lie algebra")
    one("u-lie", cmd_u_lie, "universal enveloping algebra of a DG Lie algebra")
    one("semidirect", cmd_semidirect, "the doubled Lie algebra L x L")
    one("cohomology", cmd_cohomology, "cohomology with induced product and bracket")
    s = sub.add_parser("tensor", parents=[common], help="tensor product of two algebras")
    s.add_argument("left")
    s.add_argument("right")
    s.set_defaults(fn=cmd_tensor)
    s = sub.add_parser("compare", parents=[common], help="certify a generator map")
    s.add_argument("left")
    s.add_argument("right")
    s.add_argument("--map", required=True, help="'a=expr; b=expr' or a file of such lines")
    s.add_argument("--inverse", help="backward map in the same format")
    s.set_defaults(fn=cmd_compare)
    for name, fn, help_text in (("module-check", cmd_module_check, "DGP module axioms"),
                                ("transport", cmd_transport, "module to envelope and back")):
        s = sub.add_parser(name, parents=[common], help=help_text)
        s.add_argument("algebra")
        s.add_argument("module")
        s.set_defaults(fn=fn)
        if name == "transport":
            s.add_argument("--kind", choices=("presented", "basis", "both"), default="both")
    s = sub.add_parser("demo", parents=[common], help="replay the worked examples")
    s.add_argument("--only", action="append", help="run only the named replay")
    s.set_defaults(fn=cmd_demo)
    return p


def dumps(report: dict) -> str:
    return json.dumps(report, indent=2, ensure_ascii=False) + "\n"


def _human(report: dict) -> str:
    lines = [f"dgpa {report['command']}",
             f"window: max_degree {report['window']['max_degree']}, "
             f"max_length {report['window']['max_length']}"]
    if "error" in report:
        lines.append(f"error: {report['error']}")
    for c in report["checks"]:
        extra = f" ({c['skipped']} skipped)" if c["skipped"] else ""
        lines.append(f"{c['status'].upper():5} {c['name']}: {c['checked']} checked{extra}")
        for ce in c["counterexamples"]:
            lines.append(f"      inputs {', '.join(ce['inputs'])}: expected {ce['expected']}, "
                         f"got {ce['got']}")
    if report["output"]:
        lines.append(json.dumps(report["output"], indent=2, ensure_ascii=False))
    lines.append("ok" if report["ok"] else "FAILED")
    return "\n".join(lines) + "\n"


def run_command(argv: List[str]):
    """(report, exit status) for one invocation."""
    report, status, _, _ = _execute(argv)
    return report, status


def _execute(argv: List[str]):
    argv = list(argv)
    args = None
    try:
        args = build_parser().parse_args(argv)
        args.argv = argv
        run = Run(args)
        args.fn(run)
        run.finish_parameters()
    except (InputError, ParseError, UnverifiedError, CohomologyError, WindowError,
            WindowExplosion, ValueError) as exc:
        window = None
        if args is not None:
            window = {"max_degree": args.max_degree, "max_length": args.max_length}
        return {"command": " ".join(argv), "window": window, "checks": [], "output": {},
                "ok": False, "error": str(exc)}, 2, args, None
    rep = run.report()
    return rep, (0 if rep["ok"] else 1), args, run.emitted


def main(argv=None) -> int:
    argv = sys.argv[1:] if argv is None else argv
    report, status, args, emitted = _execute(argv)
    text = dumps(report)
    if args is not None and args.out:
        with open(args.out, "w", encoding="utf-8") as fh:
            fh.write(text)
    if args is not None and args.emit and emitted is not None:
        with open(args.emit, "w", encoding="utf-8") as fh:
            fh.write(dumps(emitted) if isinstance(emitted, dict)
                     else serialize_presentation(emitted))
    if args is None or args.json:
        sys.stdout.write(text)
    else:
        sys.stdout.write(_human(report))
    return status


if __name__ == "__main__":
    sys.exit(main())
