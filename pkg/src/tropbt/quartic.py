"""Quartic input model, parsing, and the S3 symmetry of the degree-4 simplex.

A quartic is recorded by the tropical data of its 15 coefficients: an exact
rational valuation, the sign of the initial form and (optionally) the
magnitude of the initial form.  The symmetric group on three letters acts on
the lattice points of the simplex, on sign tables and on the tropical plane.
"""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Iterable, Mapping

from .errors import (
    DuplicateEntry,
    MalformedRational,
    MissingEntry,
    PointOutsideSimplex,
    SignNotPlusMinus,
)

DEGREE = 4
LATTICE_POINTS: tuple[tuple[int, int], ...] = tuple(
    (i, j) for j in range(DEGREE + 1) for i in range(DEGREE + 1 - j)
)
CORNERS = ((0, 0), (DEGREE, 0), (0, DEGREE))

_MINUS_CHARS = {"-", "−", "–"}


def parse_rational(text: str) -> Fraction:
    """Parse ``"p/q"`` or an integer into a Fraction; decimals are refused."""
    s = str(text).strip().replace("−", "-")
    if not re.fullmatch(r"[+-]?\d+(/[+-]?\d+)?", s):
        raise MalformedRational(f"not a rational: {text!r}")
    try:
        return Fraction(s)
    except ZeroDivisionError as exc:
        raise MalformedRational(f"zero denominator: {text!r}") from exc


def format_rational(x: Fraction | int) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_sign(text) -> int:
    if isinstance(text, int) and text in (1, -1):
        return text
    s = str(text).strip()
    if s in ("+", "+1", "1"):
        return 1
    if s in _MINUS_CHARS or s in ("-1", "−1"):
        return -1
    raise SignNotPlusMinus(f"sign must be + or -: {text!r}")


@dataclass(frozen=True)
class CoeffEntry:
    i: int
    j: int
    val: Fraction
    sign: int
    lead: Fraction = Fraction(1)

    def __post_init__(self):
        if self.i < 0 or self.j < 0 or self.i + self.j > DEGREE:
            raise PointOutsideSimplex(f"({self.i},{self.j}) is outside the simplex")
        if self.sign not in (1, -1):
            raise SignNotPlusMinus(f"sign must be +1 or -1, got {self.sign!r}")
        if self.lead <= 0:
            raise MalformedRational(f"lead must be positive, got {self.lead}")

    @property
    def point(self) -> tuple[int, int]:
        return (self.i, self.j)

    @property
    def initial(self) -> Fraction:
        """Signed initial form of the coefficient."""
        return self.sign * self.lead


@dataclass(frozen=True)
class QuarticSpec:
    entries: tuple[CoeffEntry, ...]
    _index: dict = field(init=False, repr=False, compare=False)

    def __post_init__(self):
        index = {}
        for e in self.entries:
            if e.point in index:
                raise DuplicateEntry(f"lattice point {e.point} listed twice")
            index[e.point] = e
        for p in LATTICE_POINTS:
            if p not in index:
                raise MissingEntry(f"lattice point {p} missing")
        ordered = tuple(index[p] for p in LATTICE_POINTS)
        object.__setattr__(self, "entries", ordered)
        object.__setattr__(self, "_index", index)

    def __getitem__(self, p: tuple[int, int]) -> CoeffEntry:
        return self._index[tuple(p)]

    def heights(self) -> dict[tuple[int, int], Fraction]:
        return {e.point: e.val for e in self.entries}

    def signs(self) -> dict[tuple[int, int], int]:
        return {e.point: e.sign for e in self.entries}

    def with_signs(self, signs: Mapping[tuple[int, int], int]) -> "QuarticSpec":
        return QuarticSpec(tuple(
            CoeffEntry(e.i, e.j, e.val, signs.get(e.point, e.sign), e.lead) for e in self.entries
        ))

    def with_heights(self, heights: Mapping[tuple[int, int], Fraction]) -> "QuarticSpec":
        return QuarticSpec(tuple(
            CoeffEntry(e.i, e.j, Fraction(heights.get(e.point, e.val)), e.sign, e.lead)
            for e in self.entries
        ))

    @classmethod
    def from_data(cls, heights: Mapping, signs: Mapping | None = None,
                  leads: Mapping | None = None) -> "QuarticSpec":
        signs = signs or {}
        leads = leads or {}
        return cls(tuple(
            CoeffEntry(p[0], p[1], Fraction(heights[p]), signs.get(p, 1), Fraction(leads.get(p, 1)))
            for p in heights
        ))


_FIELD_RE = re.compile(r"([A-Za-z_]+)\s*[=:]\s*([^\s,;]+)")


def parse_spec(text: str) -> QuarticSpec:
    """Parse the line-oriented coefficient document.

    Each non-empty line (``#`` starts a comment) is one record of
    ``key=value`` fields, for example ``i=2 j=1 val=29 sign=- lead=5``.
    Field order and whitespace are irrelevant.
    """
    entries = []
    for raw in text.splitlines():
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        fields = {k.lower(): v for k, v in _FIELD_RE.findall(line)}
        for key in ("i", "j", "val", "sign"):
            if key not in fields:
                raise MissingEntry(f"record {raw!r} lacks field {key!r}")
        try:
            i, j = int(fields["i"]), int(fields["j"])
        except ValueError as exc:
            raise MalformedRational(f"bad lattice index in {raw!r}") from exc
        entries.append(CoeffEntry(
            i, j, parse_rational(fields["val"]), parse_sign(fields["sign"]),
            parse_rational(fields.get("lead", "1")),
        ))
    return QuarticSpec(tuple(entries))


def format_spec(spec: QuarticSpec) -> str:
    lines = []
    for e in spec.entries:
        sign = "+" if e.sign > 0 else "-"
        lines.append(f"i={e.i} j={e.j} val={format_rational(e.val)} sign={sign} lead={format_rational(e.lead)}")
    return "\n".join(lines) + "\n"


# --- the S3 action ---------------------------------------------------------

_WORDS = ("id", "t0", "t1", "t0t1", "t1t0", "t0t1t0")
_PRETTY = {"id": "id", "t0": "τ0", "t1": "τ1", "t0t1": "τ0τ1", "t1t0": "τ1τ0", "t0t1t0": "τ0τ1τ0"}
_GEN_PLANE = {"t0": ((0, 1), (1, 0)), "t1": ((-1, 0), (-1, 1))}


def _matmul(a, b):
    return tuple(tuple(sum(a[r][k] * b[k][c] for k in range(2)) for c in range(2)) for r in range(2))


def _word_letters(word: str) -> list[str]:
    if word in ("id", ""):
        return []
    letters = re.findall(r"t[01]", word)
    if "".join(letters) != word:
        raise ValueError(f"bad S3 word {word!r}")
    return letters


def _word_matrix(word: str):
    m = ((1, 0), (0, 1))
    for letter in _word_letters(word):
        m = _matmul(_GEN_PLANE[letter], m)
    return m


_MATRIX_TO_WORD = {_word_matrix(w): w for w in _WORDS}


@dataclass(frozen=True, order=False)
class S3Element:
    """One of the six symmetries, stored by its canonical word.

    Words list generators in the order they are applied: ``t1t0`` applies
    τ1 first and then τ0.
    """

    word: str

    def __post_init__(self):
        w = self.word.replace("τ", "t").replace("∘", "").replace(" ", "")
        canon = _MATRIX_TO_WORD[_word_matrix(w)]
        object.__setattr__(self, "word", canon)

    @property
    def matrix(self):
        return _word_matrix(self.word)

    @property
    def rank(self) -> int:
        return _WORDS.index(self.word)

    def __mul__(self, other: "S3Element") -> "S3Element":
        return S3Element(_MATRIX_TO_WORD[_matmul(self.matrix, other.matrix)])

    def inverse(self) -> "S3Element":
        for w in _WORDS:
            if (self * S3Element(w)).word == "id":
                return S3Element(w)
        raise AssertionError("unreachable")

    def __lt__(self, other: "S3Element") -> bool:
        return self.rank < other.rank

    def __str__(self) -> str:
        return _PRETTY[self.word]


IDENTITY = S3Element("id")
TAU0 = S3Element("t0")
TAU1 = S3Element("t1")
S3_ELEMENTS: tuple[S3Element, ...] = tuple(S3Element(w) for w in _WORDS)


def apply_s3_direction(sigma: S3Element, d: tuple) -> tuple:
    """Linear part of the plane action (the action fixes the origin)."""
    m = sigma.matrix
    return (m[0][0] * d[0] + m[0][1] * d[1], m[1][0] * d[0] + m[1][1] * d[1])


def apply_s3_plane(sigma: S3Element, v: tuple) -> tuple:
    return apply_s3_direction(sigma, v)


def _lattice_generator(letter: str, p, degree: int):
    i, j = p
    if letter == "t0":
        return (j, i)
    return (degree - i - j, j)


def apply_s3_lattice(sigma: S3Element, p: tuple[int, int], degree: int = DEGREE) -> tuple[int, int]:
    """Lattice action on the simplex of the given side length.

    ``degree=1`` acts on the coefficients of a line, where (1,0), (0,1) and
    (0,0) stand for the variables x, y and z.
    """
    i, j = p
    if i < 0 or j < 0 or i + j > degree:
        raise PointOutsideSimplex(f"{p} is outside the simplex")
    q = (i, j)
    for letter in _word_letters(sigma.word):
        q = _lattice_generator(letter, q, degree)
    return q


def apply_s3_signs(sigma: S3Element, s: Mapping[tuple[int, int], int]) -> dict[tuple[int, int], int]:
    inv = sigma.inverse()
    return {p: s[apply_s3_lattice(inv, p)] for p in LATTICE_POINTS}


def apply_s3_spec(sigma: S3Element, spec: QuarticSpec) -> QuarticSpec:
    """Transport every coefficient datum along the lattice action."""
    return QuarticSpec(tuple(
        CoeffEntry(*apply_s3_lattice(sigma, e.point), e.val, e.sign, e.lead) for e in spec.entries
    ))


def iter_words() -> Iterable[str]:
    return iter(_WORDS)
