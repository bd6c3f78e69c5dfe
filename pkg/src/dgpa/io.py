"""Expression parsing, JSON input documents and canonical serialization.

Expressions use the display syntax ``c * g1.g2 + ...``; additionally ``-``,
parentheses and integer powers ``x^2`` are accepted when parsing.
"""
from __future__ import annotations

import json
import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Dict, List, Mapping, Tuple, Union

from .core import (ONE, Alphabet, Element, Terms, add_into, degree_of, format_element,
                   format_scalar, mul_terms)
from .dg_poisson import BracketSpec, DGAlgebra, DGPAlgebra, DifferentialSpec
from .lie import DGLieAlgebra
from .modules import module_from_generators, regular_module
from .presentation import Presentation


class ParseError(ValueError):
    def __init__(self, message: str, text: str = "", pos: int = -1, where: str = ""):
        self.pos = pos
        self.text = text
        loc = f" at position {pos}" if pos >= 0 else ""
        ctx = f" in {where}" if where else ""
        snippet = f": {text!r}" if text else ""
        super().__init__(f"{message}{loc}{ctx}{snippet}")


_TOKEN = re.compile(r"\s*(?:(?P<num>\d+)|(?P<name>[A-Za-z_][A-Za-z0-9_']*)|(?P<sym>[-+*/^().]))")
NAME_RE = re.compile(r"[A-Za-z_][A-Za-z0-9_']*\Z")


def _tokenize(text: str):
    pos = 0
    out = []
    n = len(text)
    while pos < n:
        if text[pos:].strip() == "":
            break
        m = _TOKEN.match(text, pos)
        if not m:
            while text[pos].isspace():
                pos += 1
            raise ParseError(f"unexpected character {text[pos]!r}", text, pos)
        start = m.start(m.lastgroup)
        out.append((m.lastgroup, m.group(m.lastgroup), start))
        pos = m.end()
    out.append(("end", "", n))
    return out


class _Parser:
    def __init__(self, text, alphabet: Alphabet, params: Mapping[str, Fraction], where=""):
        self.text = text
        self.alph = alphabet
        self.params = params
        self.where = where
        self.toks = _tokenize(text)
        self.i = 0

    def err(self, msg, pos=None):
        if pos is None:
            pos = self.toks[self.i][2]
        raise ParseError(msg, self.text, pos, self.where)

    def peek(self):
        return self.toks[self.i]

    def take(self):
        tok = self.toks[self.i]
        self.i += 1
        return tok

    def parse(self) -> Terms:
        if self.peek()[0] == "end":
            self.err("empty expression")
        val = self.expr()
        if self.peek()[0] != "end":
            self.err(f"unexpected {self.peek()[1]!r}")
        return val

    def expr(self) -> Terms:
        acc = self.term()
        while self.peek()[1] in ("+", "-") and self.peek()[0] == "sym":
            op = self.take()[1]
            rhs = self.term()
            add_into(acc, rhs, ONE if op == "+" else -ONE)
        return acc

    def term(self) -> Terms:
        acc = self.unary()
        while self.peek()[0] == "sym" and self.peek()[1] == "*":
            self.take()
            acc = mul_terms(acc, self.unary())
        return acc

    def unary(self) -> Terms:
        tok = self.peek()
        if tok[0] == "sym" and tok[1] in ("-", "+"):
            self.take()
            val = self.unary()
            return {w: -c for w, c in val.items()} if tok[1] == "-" else val
        return self.power()

    def power(self) -> Terms:
        base = self.atom()
        if self.peek()[0] == "sym" and self.peek()[1] == "^":
            self.take()
            tok = self.take()
            if tok[0] != "num":
                self.err("exponent must be a nonnegative integer", tok[2])
            out: Terms = {(): ONE}
            for _ in range(int(tok[1])):
                out = mul_terms(out, base)
            return out
        return base

    def atom(self) -> Terms:
        kind, val, pos = self.take()
        if kind == "num":
            c = Fraction(int(val))
            if self.peek()[0] == "sym" and self.peek()[1] == "/":
                self.take()
                kind2, val2, pos2 = self.take()
                if kind2 != "num":
                    self.err("expected denominator", pos2)
                if int(val2) == 0:
                    self.err("zero denominator", pos2)
                c = c / int(val2)
            return {(): c} if c else {}
        if kind == "name":
            if val in self.params and not (self.peek()[0] == "sym" and self.peek()[1] == "."):
                c = self.params[val]
                return {(): c} if c else {}
            letters = [self._letter(val, pos)]
            while self.peek()[0] == "sym" and self.peek()[1] == ".":
                self.take()
                k2, v2, p2 = self.take()
                if k2 == "num" and v2 == "1":
                    continue
                if k2 != "name":
                    self.err("expected generator name after '.'", p2)
                letters.append(self._letter(v2, p2))
            return {tuple(letters): ONE}
        if kind == "sym" and val == "(":
            inner = self.expr()
            k, v, p = self.take()
            if v != ")":
                self.err("expected ')'", p)
            return inner
        if kind == "end":
            self.err("unexpected end of expression", pos)
        self.err(f"unexpected {val!r}", pos)

    def _letter(self, name, pos):
        if name not in self.alph:
            self.err(f"unknown name {name!r}", pos)
        return self.alph.index(name)


def parse_element(text: str, alphabet: Alphabet, params: Mapping[str, Fraction] = None,
                  where: str = "") -> Element:
    terms = _Parser(text, alphabet, params or {}, where).parse()
    return Element(alphabet, terms)


def parse_scalar(text) -> Fraction:
    if isinstance(text, int) and not isinstance(text, bool):
        return Fraction(text)
    if not isinstance(text, str):
        raise ParseError(f"parameter value must be a string 'p/q', got {text!r}")
    s = text.strip()
    if not re.fullmatch(r"[-+]?\d+(/\d+)?", s):
        raise ParseError("malformed rational", s)
    if s.endswith("/0"):
        raise ParseError("zero denominator", s)
    return Fraction(s)


# --- documents --------------------------------------------------------------

ALGEBRA_KEYS = {"label", "generators", "graded_commutative", "relations", "differential",
                "bracket", "parameters"}
MODULE_KEYS = {"label", "basis", "action", "bracket_action", "differential", "regular",
               "parameters"}


@dataclass
class InputDocument:
    generators: List[Tuple[str, int]]
    graded_commutative: bool = True
    relations: List[str] = field(default_factory=list)
    differential: Dict[str, str] = field(default_factory=dict)
    bracket: Dict[str, str] = field(default_factory=dict)
    parameters: Dict[str, Fraction] = field(default_factory=dict)
    label: str = ""

    def alphabet(self) -> Alphabet:
        return Alphabet.of(self.generators)

    def with_parameters(self, overrides: Mapping[str, Fraction]) -> "InputDocument":
        params = _apply_overrides(self.parameters, overrides)
        return InputDocument(self.generators, self.graded_commutative, self.relations,
                             self.differential, self.bracket, params, self.label)


def _load(source) -> dict:
    if isinstance(source, dict):
        return source
    text = source
    if not text.lstrip().startswith("{"):
        with open(source, encoding="utf-8") as fh:
            text = fh.read()
    try:
        data = json.loads(text)
    except json.JSONDecodeError as exc:
        raise ParseError(f"invalid JSON: {exc.msg}", "", exc.pos) from None
    if not isinstance(data, dict):
        raise ParseError("input document must be a JSON object")
    return data


def _parse_entries(entries, what: str) -> List[Tuple[str, int]]:
    if not isinstance(entries, list):
        raise ParseError(f"{what} list must be an array")
    out = []
    for g in entries:
        if not isinstance(g, dict) or set(g) - {"name", "degree"} or "name" not in g:
            raise ParseError(f"malformed {what} entry {g!r}")
        name = g["name"]
        if not isinstance(name, str) or not NAME_RE.match(name):
            raise ParseError(f"invalid {what} name {name!r}")
        deg = g.get("degree", 0)
        if not isinstance(deg, int) or isinstance(deg, bool):
            raise ParseError(f"degree of {name!r} must be an integer")
        out.append((name, deg))
    names = [n for n, _ in out]
    if len(set(names)) != len(names):
        raise ParseError(f"duplicate {what} names")
    return out


def _parse_parameters(data: dict, names) -> Dict[str, Fraction]:
    params = {}
    raw = data.get("parameters", {})
    if not isinstance(raw, dict):
        raise ParseError("parameters must map names to 'p/q' strings")
    for k, v in raw.items():
        if not NAME_RE.match(k):
            raise ParseError(f"invalid parameter name {k!r}")
        if k in names:
            raise ParseError(f"parameter {k!r} clashes with a generator name")
        params[k] = parse_scalar(v)
    return params


def _apply_overrides(params: Dict[str, Fraction], overrides) -> Dict[str, Fraction]:
    params = dict(params)
    for k, v in (overrides or {}).items():
        if k not in params:
            raise ParseError(f"--set names unknown parameter {k!r}")
        params[k] = v
    return params


def parse_input(source) -> InputDocument:
    """Parse an algebra document from a path, JSON text or a dict."""
    data = _load(source)
    unknown = set(data) - ALGEBRA_KEYS
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    gens = _parse_entries(data.get("generators", []), "generator")
    params = _parse_parameters(data, [n for n, _ in gens])
    gc = data.get("graded_commutative", True)
    if not isinstance(gc, bool):
        raise ParseError("graded_commutative must be true or false")
    rels = data.get("relations", [])
    if not isinstance(rels, list) or not all(isinstance(r, str) for r in rels):
        raise ParseError("relations must be a list of expression strings")
    for key in ("differential", "bracket"):
        val = data.get(key, {})
        if not isinstance(val, dict) or not all(isinstance(v, str) for v in val.values()):
            raise ParseError(f"{key} must map names to expression strings")
    label = data.get("label", "")
    if not isinstance(label, str):
        raise ParseError("label must be a string")
    return InputDocument(gens, gc, list(rels), dict(data.get("differential", {})),
                         dict(data.get("bracket", {})), params, label)


def build_presentation(doc: InputDocument) -> Presentation:
    alph = doc.alphabet()
    rels = []
    for k, text in enumerate(doc.relations):
        e = parse_element(text, alph, doc.parameters, where=f"relation {k + 1}")
        if e.is_zero():
            continue
        if degree_of(e) == "mixed":
            raise ParseError(f"relation {k + 1} '{text}' is not homogeneous")
        rels.append(e)
    return Presentation(alph, tuple(rels), doc.graded_commutative, doc.label)


def _build_diff(doc: InputDocument, alph: Alphabet) -> DifferentialSpec:
    images = {}
    for name, text in doc.differential.items():
        if name not in alph:
            raise ParseError(f"differential names unknown generator {name!r}")
        images[alph.index(name)] = parse_element(text, alph, doc.parameters, where=f"d({name})")
    try:
        return DifferentialSpec(alph, images)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def _build_bracket(doc: InputDocument, alph: Alphabet) -> BracketSpec:
    images = {}
    for key, text in doc.bracket.items():
        parts = [s.strip() for s in key.split(",")]
        if len(parts) != 2 or not all(p in alph for p in parts):
            raise ParseError(f"bracket key {key!r} must name two generators as 'a,b'")
        i, j = alph.index(parts[0]), alph.index(parts[1])
        e = parse_element(text, alph, doc.parameters, where=f"{{{key}}}")
        if (i, j) in images or (j, i) in images:
            raise ParseError(f"bracket pair {key!r} given twice")
        images[(i, j)] = e
    try:
        return BracketSpec(alph, images)
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def build_dga(doc: InputDocument) -> DGAlgebra:
    if doc.bracket:
        raise ParseError("a DG algebra document cannot carry a bracket")
    p = build_presentation(doc)
    return DGAlgebra(p, _build_diff(doc, p.alphabet))


def build_dgpa(doc: InputDocument) -> DGPAlgebra:
    if not doc.graded_commutative:
        raise ParseError("a DGPA document must be graded_commutative")
    p = build_presentation(doc)
    return DGPAlgebra(p, _build_diff(doc, p.alphabet), _build_bracket(doc, p.alphabet))


def load_dgpa(source, overrides: Mapping[str, Fraction] = None) -> DGPAlgebra:
    doc = parse_input(source)
    if overrides:
        doc = doc.with_parameters(overrides)
    return build_dgpa(doc)


# --- serialization ----------------------------------------------------------

def presentation_document(obj) -> dict:
    """Canonical JSON-ready dict for a Presentation, DGAlgebra or DGPAlgebra."""
    if isinstance(obj, Presentation):
        p, diff, bracket = obj, None, None
    else:
        p, diff = obj.presentation, obj.diff
        bracket = getattr(obj, "bracket", None)
    alph = p.alphabet
    doc = {}
    if p.label:
        doc["label"] = p.label
    doc["generators"] = [{"name": g.name, "degree": g.degree} for g in alph]
    doc["graded_commutative"] = p.graded_commutative
    doc["relations"] = [format_element(r) for r in p.relations]
    if diff is not None:
        doc["differential"] = {alph[i].name: format_element(e) for i, e in diff.images.items()}
    if bracket is not None:
        doc["bracket"] = {f"{alph[i].name},{alph[j].name}": format_element(e)
                          for (i, j), e in bracket.images.items()}
    return doc


def serialize_presentation(obj) -> str:
    return json.dumps(presentation_document(obj), indent=2, ensure_ascii=False) + "\n"


def parse_presentation(text) -> Union[Presentation, DGAlgebra, DGPAlgebra]:
    """Inverse of serialize_presentation."""
    data = _load(text)
    doc = parse_input(data)
    if "bracket" in data:
        return build_dgpa(doc)
    if "differential" in data:
        return build_dga(doc)
    return build_presentation(doc)


def parse_map(text: str, source: Alphabet, target: Alphabet,
              params: Mapping[str, Fraction] = None) -> Dict[int, Element]:
    """'a=expr; b=expr' into generator images (unlisted generators map to 0)."""
    images = {}
    for chunk in text.split(";"):
        chunk = chunk.strip()
        if not chunk:
            continue
        if "=" not in chunk:
            raise ParseError("map entries must look like name=expression", chunk)
        name, expr = chunk.split("=", 1)
        name = name.strip()
        if name not in source:
            raise ParseError(f"map names unknown source generator {name!r}")
        images[source.index(name)] = parse_element(expr, target, params, where=f"image of {name}")
    return images


def format_vector(vec: Mapping[int, Fraction], names) -> str:
    if not vec:
        return "0"
    return " + ".join(f"{format_scalar(vec[i])} * {names[i]}" for i in sorted(vec, reverse=True))


def load_algebra(source, overrides: Mapping[str, Fraction] = None):
    """A DGPAlgebra for graded-commutative documents, else a DGAlgebra."""
    doc = parse_input(source)
    if overrides:
        doc = doc.with_parameters(overrides)
    return build_dgpa(doc) if doc.graded_commutative else build_dga(doc)


# --- DG Lie algebra and module documents ------------------------------------

LIE_KEYS = {"label", "basis", "bracket", "differential", "parameters"}


def _linear(text: str, alph: Alphabet, params, where: str) -> Dict[int, Fraction]:
    e = parse_element(text, alph, params, where=where)
    out = {}
    for w, c in e.terms.items():
        if len(w) != 1:
            raise ParseError(f"{where} must be a linear combination of basis names", text)
        out[w[0]] = c
    return out


def _pair(key: str, left: Alphabet, right: Alphabet, what: str) -> Tuple[int, int]:
    parts = [s.strip() for s in key.split(",")]
    if len(parts) != 2 or parts[0] not in left or parts[1] not in right:
        raise ParseError(f"{what} key {key!r} must look like 'a,b' with known names")
    return left.index(parts[0]), right.index(parts[1])


def _string_map(data: dict, key: str) -> Dict[str, str]:
    val = data.get(key, {})
    if not isinstance(val, dict) or not all(isinstance(v, str) for v in val.values()):
        raise ParseError(f"{key} must map names to expression strings")
    return val


def parse_lie(source, overrides: Mapping[str, Fraction] = None):
    """A DG Lie algebra document: basis, bracket "a,b" -> linear expression, differential."""
    data = _load(source)
    unknown = set(data) - LIE_KEYS
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    basis = _parse_entries(data.get("basis", []), "basis")
    alph = Alphabet.of(basis)
    params = _apply_overrides(_parse_parameters(data, alph.names), overrides)
    br = {}
    for key, text in _string_map(data, "bracket").items():
        i, j = _pair(key, alph, alph, "bracket")
        if (i, j) in br or (j, i) in br:
            raise ParseError(f"bracket pair {key!r} given twice")
        br[(i, j)] = _linear(text, alph, params, f"[{key}]")
    d = {}
    for name, text in _string_map(data, "differential").items():
        if name not in alph:
            raise ParseError(f"differential names unknown basis element {name!r}")
        d[alph.index(name)] = _linear(text, alph, params, f"d({name})")
    label = data.get("label", "")
    try:
        return DGLieAlgebra(alph, br, d, label if isinstance(label, str) else "")
    except ValueError as exc:
        raise ParseError(str(exc)) from None


def lie_document(L) -> dict:
    alph = L.alphabet
    names = alph.names
    doc = {}
    if L.label:
        doc["label"] = L.label
    doc["basis"] = [{"name": g.name, "degree": g.degree} for g in alph]
    doc["bracket"] = {f"{names[i]},{names[j]}": format_vector(v, names)
                      for (i, j), v in L.brackets.items() if i <= j}
    doc["differential"] = {names[i]: format_vector(v, names) for i, v in L.differential.items()}
    return doc


def parse_module(source, A: DGPAlgebra, t, overrides: Mapping[str, Fraction] = None):
    """A module document over A.

    Either {"regular": N} for A truncated above degree N, or a basis with
    generator actions "gen,m" -> expression, bracket actions and a differential.
    """
    data = _load(source)
    unknown = set(data) - MODULE_KEYS
    if unknown:
        raise ParseError(f"unknown keys {sorted(unknown)}")
    label = data.get("label", "")
    if "regular" in data:
        n = data["regular"]
        if set(data) - {"regular", "label"}:
            raise ParseError("a regular module document takes only 'regular' and 'label'")
        if not isinstance(n, int) or isinstance(n, bool) or n < 0:
            raise ParseError("regular must be a nonnegative integer degree")
        M = regular_module(A, n, t)
        if isinstance(label, str) and label:
            M.label = label
        return M
    basis = _parse_entries(data.get("basis", []), "basis")
    malph = Alphabet.of(basis)
    params = _apply_overrides(_parse_parameters(data, malph.names), overrides)
    alph = A.alphabet
    tables = []
    for key in ("action", "bracket_action"):
        tab = {}
        for k, text in _string_map(data, key).items():
            g, i = _pair(k, alph, malph, key)
            v = _linear(text, malph, params, f"{key} {k}")
            for j in v:
                if malph.degrees[j] != alph.degrees[g] + malph.degrees[i]:
                    raise ParseError(f"{key} {k!r} has a component of wrong degree")
            tab[(g, i)] = v
        tables.append(tab)
    d = {}
    for name, text in _string_map(data, "differential").items():
        if name not in malph:
            raise ParseError(f"differential names unknown basis element {name!r}")
        v = _linear(text, malph, params, f"d({name})")
        if any(malph.degrees[j] != malph.degrees[malph.index(name)] + 1 for j in v):
            raise ParseError(f"d({name}) has a component of wrong degree")
        d[malph.index(name)] = v
    return module_from_generators(A, basis, tables[0], tables[1], d, t,
                                  label if isinstance(label, str) else "")
