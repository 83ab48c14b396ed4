"""Fundamental value types: alphabets, codes, messages, compositions,
alphabet subsets, and the two column operators (type and union).

Conventions used throughout the toolkit:
  * codeword indices are 1-based in every external interface;
  * multisets are canonically represented as sorted tuples;
  * subsets as sorted tuples of distinct symbols;
  * a composition is a length-q tuple of counts summing to s.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from math import comb
from typing import Iterable, Iterator, Sequence


class InvalidSymbolError(ValueError):
    """A word contains a symbol outside the alphabet 0..q-1."""


class InvalidParametersError(ValueError):
    """Operation parameters are out of their stated range."""


@dataclass(frozen=True)
class Alphabet:
    """The standard q-ary alphabet {0, 1, ..., q-1}."""

    q: int

    def __post_init__(self):
        if self.q < 2:
            raise InvalidParametersError(f"alphabet size must be >= 2, got {self.q}")

    @property
    def symbols(self) -> range:
        return range(self.q)


@dataclass(frozen=True)
class Code:
    """A q-ary code of length N and size t.

    ``entries`` is stored row-major: entries[i][j] is the symbol of codeword
    j+1 at row i+1 (both 1-based externally).
    """

    q: int
    entries: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        if self.q < 2:
            raise InvalidParametersError(f"alphabet size must be >= 2, got {self.q}")
        if not self.entries or not self.entries[0]:
            raise InvalidParametersError("code must have N >= 1 rows and t >= 1 columns")
        t = len(self.entries[0])
        for row in self.entries:
            if len(row) != t:
                raise InvalidParametersError("ragged code matrix")
            for a in row:
                if not 0 <= a < self.q:
                    raise InvalidSymbolError(f"symbol {a} outside alphabet of size {self.q}")

    @property
    def N(self) -> int:
        return len(self.entries)

    @property
    def t(self) -> int:
        return len(self.entries[0])

    def column(self, j: int) -> tuple[int, ...]:
        """Codeword j, 1-based."""
        if not 1 <= j <= self.t:
            raise InvalidParametersError(f"codeword index {j} outside 1..{self.t}")
        return tuple(row[j - 1] for row in self.entries)

    def columns(self) -> list[tuple[int, ...]]:
        return [self.column(j) for j in range(1, self.t + 1)]

    @classmethod
    def from_columns(cls, q: int, columns: Sequence[Sequence[int]]) -> "Code":
        if not columns:
            raise InvalidParametersError("at least one codeword required")
        n = len(columns[0])
        entries = tuple(tuple(col[i] for col in columns) for i in range(n))
        return cls(q, entries)


@dataclass(frozen=True)
class Message:
    """An s-subset of codeword indices, stored sorted and 1-based."""

    indices: tuple[int, ...]

    def __post_init__(self):
        idx = self.indices
        if not idx:
            raise InvalidParametersError("message must be nonempty")
        if any(i < 1 for i in idx) or list(idx) != sorted(set(idx)):
            raise InvalidParametersError(f"message indices must be distinct, sorted, >= 1: {idx}")

    @property
    def s(self) -> int:
        return len(self.indices)

    def __iter__(self) -> Iterator[int]:
        return iter(self.indices)


@dataclass(frozen=True)
class Composition:
    """A type: counts of each alphabet symbol in an s-word."""

    counts: tuple[int, ...]

    def __post_init__(self):
        if any(c < 0 for c in self.counts):
            raise InvalidParametersError(f"negative count in composition {self.counts}")

    @property
    def q(self) -> int:
        return len(self.counts)

    @property
    def s(self) -> int:
        return sum(self.counts)

    def support(self) -> tuple[int, ...]:
        return tuple(a for a, c in enumerate(self.counts) if c > 0)


@dataclass(frozen=True)
class AlphabetSubset:
    """A subset of the alphabet, canonically a sorted tuple of members."""

    members: tuple[int, ...]
    q: int = field(default=0)

    def __post_init__(self):
        m = self.members
        if list(m) != sorted(set(m)):
            raise InvalidParametersError(f"subset members must be distinct and sorted: {m}")
        if self.q and any(a >= self.q for a in m):
            raise InvalidSymbolError(f"subset {m} outside alphabet of size {self.q}")


def _check_word(word: Sequence[int], q: int) -> None:
    for a in word:
        if not 0 <= a < q:
            raise InvalidSymbolError(f"symbol {a} outside alphabet of size {q}")


def type_of(word: Sequence[int], q: int) -> Composition:
    """The type of a word: per-symbol occurrence counts."""
    _check_word(word, q)
    counts = [0] * q
    for a in word:
        counts[a] += 1
    return Composition(tuple(counts))


def union_of(word: Sequence[int], q: int) -> AlphabetSubset:
    """The set of distinct symbols occurring in a word."""
    _check_word(word, q)
    return AlphabetSubset(tuple(sorted(set(word))), q)


def column_multiset(code: Code, message: Message, row: int) -> tuple[int, ...]:
    """The s-collection of signals at one row: {x_row(e_1), ..., x_row(e_s)},
    canonically sorted. ``row`` is 1-based."""
    if not 1 <= row <= code.N:
        raise InvalidParametersError(f"row {row} outside 1..{code.N}")
    if any(j > code.t for j in message):
        raise InvalidParametersError(f"message {message.indices} outside 1..{code.t}")
    r = code.entries[row - 1]
    return tuple(sorted(r[j - 1] for j in message))


def enumerate_messages(t: int, s: int) -> Iterator[Message]:
    """All C(t,s) messages in lexicographic order."""
    if not 1 <= s <= t:
        raise InvalidParametersError(f"need 1 <= s <= t, got s={s}, t={t}")
    for combo in itertools.combinations(range(1, t + 1), s):
        yield Message(combo)


def message_count(t: int, s: int) -> int:
    return comb(t, s)


def compositions(s: int, q: int) -> Iterator[Composition]:
    """All C(q+s-1, s) compositions of weight s over q symbols,
    in lexicographic order of the count vector."""
    if s < 0 or q < 1:
        raise InvalidParametersError(f"bad composition parameters s={s}, q={q}")

    def rec(remaining: int, slots: int) -> Iterator[tuple[int, ...]]:
        if slots == 1:
            yield (remaining,)
            return
        for c in range(remaining + 1):
            for rest in rec(remaining - c, slots - 1):
                yield (c,) + rest

    for counts in rec(s, q):
        yield Composition(counts)


# --- code matrix file format -------------------------------------------------
# line 1: "q N t"; then N lines of t whitespace-separated symbols.
# Lines starting with '#' are comments. Parsing is strict.


class CodeFileError(ValueError):
    """Malformed code matrix file."""


def parse_code(text: str) -> Code:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise CodeFileError("empty code file")
    header = lines[0].split()
    if len(header) != 3:
        raise CodeFileError(f"header must be 'q N t', got {lines[0]!r}")
    try:
        q, n, t = (int(x) for x in header)
    except ValueError as exc:
        raise CodeFileError(f"non-integer header {lines[0]!r}") from exc
    if len(lines) - 1 != n:
        raise CodeFileError(f"expected {n} rows, found {len(lines) - 1}")
    rows = []
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != t:
            raise CodeFileError(f"expected {t} symbols per row, got {len(parts)} in {ln!r}")
        try:
            row = tuple(int(x) for x in parts)
        except ValueError as exc:
            raise CodeFileError(f"non-integer symbol in {ln!r}") from exc
        for a in row:
            if not 0 <= a < q:
                raise CodeFileError(f"symbol {a} outside alphabet of size {q}")
        rows.append(row)
    return Code(q, tuple(rows))


def format_code(code: Code) -> str:
    out = [f"{code.q} {code.N} {code.t}"]
    for row in code.entries:
        out.append(" ".join(str(a) for a in row))
    return "\n".join(out) + "\n"


def load_code(path) -> Code:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_code(fh.read())


def save_code(code: Code, path) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_code(code))
