"""Exact scalars, graded generators, words and free-algebra arithmetic."""
from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Dict, Iterable, Mapping, Sequence, Tuple

Scalar = Fraction
Word = Tuple[int, ...]
Terms = Dict[Word, Fraction]

ZERO = Fraction(0)
ONE = Fraction(1)


def as_scalar(value) -> Fraction:
    """Coerce ints, strings like '3/4' and Fractions to an exact scalar.

    Floats are refused, they would smuggle rounding into exact identities.
    """
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool) or isinstance(value, float):
        raise TypeError(f"refusing inexact scalar {value!r}")
    if isinstance(value, (int, str)):
        return Fraction(value)
    raise TypeError(f"cannot interpret {value!r} as a rational scalar")


def format_scalar(c: Fraction) -> str:
    if c.denominator == 1:
        return str(c.numerator)
    return f"{c.numerator}/{c.denominator}"


@dataclass(frozen=True)
class Generator:
    id: int
    name: str
    degree: int


class Alphabet:
    """An ordered list of graded generators; ids are positions."""

    __slots__ = ("generators", "degrees", "_index", "_hash")

    def __init__(self, generators: Iterable[Generator]):
        gens = tuple(generators)
        index = {}
        for pos, g in enumerate(gens):
            if g.id != pos:
                raise ValueError(f"generator {g.name!r} has id {g.id}, expected {pos}")
            if not g.name:
                raise ValueError("generator names must be nonempty")
            if g.name in index:
                raise ValueError(f"duplicate generator name {g.name!r}")
            index[g.name] = pos
        self.generators = gens
        self.degrees = tuple(g.degree for g in gens)
        self._index = index
        self._hash = hash(gens)

    @classmethod
    def of(cls, entries: Iterable[Tuple[str, int]]) -> "Alphabet":
        return cls(Generator(i, name, int(deg)) for i, (name, deg) in enumerate(entries))

    def __len__(self):
        return len(self.generators)

    def __iter__(self):
        return iter(self.generators)

    def __getitem__(self, i) -> Generator:
        return self.generators[i]

    def __eq__(self, other):
        if self is other:
            return True
        return isinstance(other, Alphabet) and self.generators == other.generators

    def __hash__(self):
        return self._hash

    def __repr__(self):
        inner = ", ".join(f"{g.name}:{g.degree}" for g in self.generators)
        return f"Alphabet({inner})"

    @property
    def names(self) -> Tuple[str, ...]:
        return tuple(g.name for g in self.generators)

    def index(self, name: str) -> int:
        try:
            return self._index[name]
        except KeyError:
            raise KeyError(f"unknown generator {name!r}") from None

    def __contains__(self, name) -> bool:
        return name in self._index

    def word_degree(self, word: Word) -> int:
        degs = self.degrees
        return sum(degs[i] for i in word)

    def word_name(self, word: Word) -> str:
        if not word:
            return "1"
        return ".".join(self.generators[i].name for i in word)

    def word_key(self, word: Word):
        """Sort key of the canonical deglex order."""
        return (self.word_degree(word), len(word), word)


# --- raw term-map helpers (dicts Word -> Fraction), used by the engine ---

def add_into(acc: Terms, terms: Mapping[Word, Fraction], scale: Fraction = ONE) -> Terms:
    for w, c in terms.items():
        v = acc.get(w, ZERO) + scale * c
        if v:
            acc[w] = v
        else:
            acc.pop(w, None)
    return acc


def mul_terms(a: Mapping[Word, Fraction], b: Mapping[Word, Fraction]) -> Terms:
    out: Terms = {}
    for w1, c1 in a.items():
        for w2, c2 in b.items():
            w = w1 + w2
            v = out.get(w, ZERO) + c1 * c2
            if v:
                out[w] = v
            else:
                out.pop(w, None)
    return out


def scale_terms(terms: Mapping[Word, Fraction], c: Fraction) -> Terms:
    if not c:
        return {}
    return {w: c * v for w, v in terms.items()}


def koszul_sign(degrees: Sequence[int], permutation: Sequence[int]) -> int:
    """Sign of moving item i to position permutation[i].

    Every pair i < j whose order is inverted contributes |d_i||d_j|.
    """
    n = len(degrees)
    if len(permutation) != n:
        raise ValueError("permutation length does not match degree sequence")
    if sorted(permutation) != list(range(n)):
        raise ValueError("not a permutation of positions")
    k = 0
    for i in range(n):
        if degrees[i] % 2 == 0:
            continue
        for j in range(i + 1, n):
            if degrees[j] % 2 and permutation[i] > permutation[j]:
                k += 1
    return -1 if k % 2 else 1


def sort_word(word: Word, degrees: Sequence[int]) -> Tuple[int, Word]:
    """Sorted form of a word in the free graded-commutative algebra.

    Returns (sign, sorted word); sign is 0 if an odd generator repeats.
    """
    seen_odd = set()
    inv = 0
    n = len(word)
    for i in range(n):
        a = word[i]
        if degrees[a] % 2:
            if a in seen_odd:
                return 0, ()
            seen_odd.add(a)
            for j in range(i + 1, n):
                b = word[j]
                if b < a and degrees[b] % 2:
                    inv += 1
    return (-1 if inv % 2 else 1), tuple(sorted(word))


def gc_normalize(terms: Mapping[Word, Fraction], degrees: Sequence[int]) -> Terms:
    out: Terms = {}
    for w, c in terms.items():
        s, sw = sort_word(w, degrees)
        if s:
            v = out.get(sw, ZERO) + s * c
            if v:
                out[sw] = v
            else:
                out.pop(sw, None)
    return out


class Element:
    """A finite linear combination of words over an alphabet."""

    __slots__ = ("alphabet", "terms", "_hash")

    def __init__(self, alphabet: Alphabet, terms: Mapping[Word, object] = None):
        clean: Terms = {}
        if terms:
            n = len(alphabet)
            for w, c in terms.items():
                w = tuple(w)
                for i in w:
                    if not 0 <= i < n:
                        raise ValueError(f"letter {i} outside alphabet of size {n}")
                c = as_scalar(c)
                if c:
                    clean[w] = clean.get(w, ZERO) + c
                    if not clean[w]:
                        del clean[w]
        self.alphabet = alphabet
        self.terms = clean
        self._hash = None

    @classmethod
    def _raw(cls, alphabet: Alphabet, terms: Terms) -> "Element":
        e = cls.__new__(cls)
        e.alphabet = alphabet
        e.terms = terms
        e._hash = None
        return e

    @classmethod
    def zero(cls, alphabet: Alphabet) -> "Element":
        return cls._raw(alphabet, {})

    @classmethod
    def one(cls, alphabet: Alphabet, c=1) -> "Element":
        return cls(alphabet, {(): c})

    @classmethod
    def word(cls, alphabet: Alphabet, word: Iterable[int], c=1) -> "Element":
        return cls(alphabet, {tuple(word): c})

    @classmethod
    def gen(cls, alphabet: Alphabet, name: str, c=1) -> "Element":
        return cls(alphabet, {(alphabet.index(name),): c})

    def _check(self, other: "Element"):
        if not isinstance(other, Element):
            raise TypeError(f"expected Element, got {type(other).__name__}")
        if self.alphabet != other.alphabet:
            raise ValueError("elements live over different generator lists")

    def __add__(self, other):
        self._check(other)
        return Element._raw(self.alphabet, add_into(dict(self.terms), other.terms))

    def __sub__(self, other):
        self._check(other)
        return Element._raw(self.alphabet, add_into(dict(self.terms), other.terms, -ONE))

    def __neg__(self):
        return Element._raw(self.alphabet, {w: -c for w, c in self.terms.items()})

    def scale(self, c) -> "Element":
        return Element._raw(self.alphabet, scale_terms(self.terms, as_scalar(c)))

    def __mul__(self, other):
        if isinstance(other, Element):
            self._check(other)
            return Element._raw(self.alphabet, mul_terms(self.terms, other.terms))
        return self.scale(other)

    def __rmul__(self, other):
        if isinstance(other, Element):
            return other.__mul__(self)
        return self.scale(other)

    def __eq__(self, other):
        if not isinstance(other, Element):
            return NotImplemented
        return self.alphabet == other.alphabet and self.terms == other.terms

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.alphabet, frozenset(self.terms.items())))
        return self._hash

    def __bool__(self):
        return bool(self.terms)

    def is_zero(self) -> bool:
        return not self.terms

    def coefficient(self, word: Iterable[int]) -> Fraction:
        return self.terms.get(tuple(word), ZERO)

    def sorted_words(self, descending: bool = True):
        return sorted(self.terms, key=self.alphabet.word_key, reverse=descending)

    def leading_word(self) -> Word:
        if not self.terms:
            raise ValueError("zero element has no leading word")
        return max(self.terms, key=self.alphabet.word_key)

    def max_length(self) -> int:
        return max((len(w) for w in self.terms), default=0)

    def __str__(self):
        return format_element(self)

    def __repr__(self):
        return f"Element({format_element(self)!r})"


def format_element(e: Element) -> str:
    if not e.terms:
        return "0"
    return " + ".join(
        f"{format_scalar(e.terms[w])} * {e.alphabet.word_name(w)}" for w in e.sorted_words()
    )


def degree_of(e: Element):
    """Integer degree of a homogeneous element, 'zero' for 0, 'mixed' otherwise."""
    if not e.terms:
        return "zero"
    degs = {e.alphabet.word_degree(w) for w in e.terms}
    if len(degs) == 1:
        return degs.pop()
    return "mixed"


def is_homogeneous(e: Element, degree: int = None) -> bool:
    d = degree_of(e)
    if d == "zero":
        return True
    if d == "mixed":
        return False
    return degree is None or d == degree


def embed(e: Element, target: Alphabet, mapping: Sequence[int]) -> Element:
    """Rename letters of e through mapping (old id -> new id)."""
    return Element._raw(target, {tuple(mapping[i] for i in w): c for w, c in e.terms.items()})


def copy_names(names: Sequence[str], taken: Iterable[str] = ()) -> Tuple[str, ...]:
    """Names for a second copy of a generator list (x1 -> y1, otherwise h_name)."""
    names = tuple(names)
    taken = set(taken) | set(names)
    if names and all(n.startswith("x") for n in names):
        cand = tuple("y" + n[1:] for n in names)
        if not taken & set(cand) and len(set(cand)) == len(cand):
            return cand
    out = []
    for n in names:
        c = "h_" + n
        while c in taken:
            c += "'"
        taken.add(c)
        out.append(c)
    return tuple(out)
