"""Symmetric multiple-access channel models.

A symmetric MAC is a deterministic function of the multiset of the s input
symbols, so every channel here is keyed by composition: the table needs only
C(q+s-1, s) entries. Output symbols carry the channel kind as a tag so that
outputs of different channels never compare equal accidentally.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass
from math import comb
from typing import Sequence

from .core import (
    Code,
    Composition,
    InvalidParametersError,
    Message,
    column_multiset,
    compositions,
    type_of,
)

KIND_A = "A"
KIND_B = "B"
KIND_ERASURE = "eras"
KIND_THRESHOLD = "thr"
KIND_DISJUNCTIVE = "disj"
KIND_CUSTOM = "custom"

ERASURE_MARK = "*"


class NotSymmetricError(ValueError):
    """A raw channel table violates permutation invariance."""

    def __init__(self, word_a, word_b, out_a, out_b):
        self.witness = (word_a, word_b)
        self.outputs = (out_a, out_b)
        super().__init__(
            f"words {word_a} and {word_b} have equal type but outputs {out_a!r} != {out_b!r}"
        )


@dataclass(frozen=True)
class OutputSymbol:
    """A channel output value tagged with the channel kind.

    ``value`` is hashable and canonical: a sorted tuple of symbols for the
    A-MAC, a count tuple for the B-MAC, an int or '*' for the scalar channels,
    an opaque string label for custom channels.
    """

    kind: str
    value: object

    def label(self) -> str:
        if self.kind == KIND_A:
            return "{" + ",".join(str(a) for a in self.value) + "}"
        if self.kind == KIND_B:
            return "(" + ",".join(str(c) for c in self.value) + ")"
        return str(self.value)


@dataclass(frozen=True)
class OutputWord:
    symbols: tuple[OutputSymbol, ...]

    @property
    def N(self) -> int:
        return len(self.symbols)

    def labels(self) -> list[str]:
        return [z.label() for z in self.symbols]


class ChannelSpec:
    """A symmetric f-MAC: a map from weight-s compositions over A_q to outputs.

    Built-in kinds are rule-evaluated with a table memoized at construction;
    custom channels are materialized tables validated for totality.
    """

    def __init__(self, kind: str, q: int, s: int, threshold: int | None = None,
                 table: dict[tuple[int, ...], OutputSymbol] | None = None):
        if q < 2:
            raise InvalidParametersError(f"alphabet size must be >= 2, got {q}")
        if s < 1:
            raise InvalidParametersError(f"user count must be >= 1, got {s}")
        if kind in (KIND_THRESHOLD, KIND_DISJUNCTIVE) and q != 2:
            raise InvalidParametersError(f"{kind} channel requires q=2, got q={q}")
        if kind == KIND_THRESHOLD:
            if threshold is None or not 1 <= threshold <= s:
                raise InvalidParametersError(f"threshold must satisfy 1 <= l <= s, got {threshold}")
        elif threshold is not None:
            raise InvalidParametersError("threshold parameter only valid for thr channel")
        if kind == KIND_CUSTOM:
            if table is None:
                raise InvalidParametersError("custom channel requires a table")
            need = {c.counts for c in compositions(s, q)}
            have = set(table)
            if have != need:
                missing = sorted(need - have)
                extra = sorted(have - need)
                raise InvalidParametersError(
                    f"custom table not total on compositions: missing {missing}, extra {extra}"
                )
        elif kind not in (KIND_A, KIND_B, KIND_ERASURE, KIND_THRESHOLD, KIND_DISJUNCTIVE):
            raise InvalidParametersError(f"unknown channel kind {kind!r}")
        self.kind = kind
        self.q = q
        self.s = s
        self.threshold = threshold
        # memoized: compositions at desk scale are few
        if kind == KIND_CUSTOM:
            self._table = dict(table)
        else:
            self._table = {
                c.counts: self._rule(c) for c in compositions(s, q)
            }

    def _rule(self, comp: Composition) -> OutputSymbol:
        counts = comp.counts
        if self.kind == KIND_A:
            return OutputSymbol(KIND_A, comp.support())
        if self.kind == KIND_B:
            return OutputSymbol(KIND_B, counts)
        if self.kind == KIND_ERASURE:
            support = comp.support()
            if len(support) == 1:
                return OutputSymbol(KIND_ERASURE, support[0])
            return OutputSymbol(KIND_ERASURE, ERASURE_MARK)
        if self.kind == KIND_THRESHOLD:
            return OutputSymbol(KIND_THRESHOLD, 1 if counts[1] >= self.threshold else 0)
        if self.kind == KIND_DISJUNCTIVE:
            return OutputSymbol(KIND_DISJUNCTIVE, 0 if counts[1] == 0 else 1)
        raise AssertionError(self.kind)

    def __repr__(self):
        extra = f", l={self.threshold}" if self.threshold is not None else ""
        return f"ChannelSpec({self.kind}, q={self.q}, s={self.s}{extra})"

    def name(self) -> str:
        if self.kind == KIND_THRESHOLD:
            return f"thr:{self.threshold}"
        return self.kind


def eval_channel(channel: ChannelSpec, comp: Composition) -> OutputSymbol:
    """Channel output for one composition of weight s."""
    if comp.q != channel.q:
        raise InvalidParametersError(
            f"composition alphabet {comp.q} != channel alphabet {channel.q}")
    if comp.s != channel.s:
        raise InvalidParametersError(
            f"composition weight {comp.s} != channel user count {channel.s}")
    return channel._table[comp.counts]


def output_word(channel: ChannelSpec, code: Code, message: Message) -> OutputWord:
    """The N-symbol channel output for a message through a code."""
    if code.q != channel.q:
        raise InvalidParametersError(f"code alphabet {code.q} != channel alphabet {channel.q}")
    if message.s != channel.s:
        raise InvalidParametersError(f"message size {message.s} != channel user count {channel.s}")
    symbols = []
    for i in range(1, code.N + 1):
        word = column_multiset(code, message, i)
        symbols.append(eval_channel(channel, type_of(word, code.q)))
    return OutputWord(tuple(symbols))


def output_alphabet_size(kind: str, s: int, q: int, threshold: int | None = None) -> int:
    """Cardinality of the output alphabet of a built-in channel."""
    if kind == KIND_A:
        return sum(comb(q, k) for k in range(1, min(s, q) + 1))
    if kind == KIND_B:
        return comb(q + s - 1, s)
    if kind == KIND_ERASURE:
        return q + 1
    if kind == KIND_THRESHOLD:
        if q != 2 or threshold is None or not 1 <= threshold <= s:
            raise InvalidParametersError("threshold channel needs q=2 and 1 <= l <= s")
        return 2
    if kind == KIND_DISJUNCTIVE:
        if q != 2:
            raise InvalidParametersError("disjunctive channel needs q=2")
        return 2
    raise InvalidParametersError(f"unknown channel kind {kind!r}")


def validate_symmetric(table: dict, s: int, q: int) -> ChannelSpec:
    """Build a custom ChannelSpec from a raw table.

    The table may be keyed by s-words (tuples over A_q) or directly by
    compositions (count tuples of length q summing to s). Word-keyed tables
    are checked for permutation invariance; a violating pair is reported.
    """
    keys = [tuple(k) for k in table]
    is_word_table = all(len(k) == s and all(0 <= a < q for a in k) for k in keys)
    is_comp_table = all(len(k) == q and sum(k) == s and all(c >= 0 for c in k) for k in keys)
    if is_word_table and is_comp_table:
        # ambiguous only when q == s; a total word table has q^s entries,
        # a composition table has C(q+s-1, s) < q^s
        is_word_table = len(keys) > comb(q + s - 1, s)
    if not (is_word_table or is_comp_table):
        raise InvalidParametersError("table keys are neither s-words nor compositions")

    comp_table: dict[tuple[int, ...], OutputSymbol] = {}
    comp_witness: dict[tuple[int, ...], tuple] = {}
    for key in sorted(keys):
        raw = table[key]
        out = raw if isinstance(raw, OutputSymbol) else OutputSymbol(KIND_CUSTOM, raw)
        counts = type_of(key, q).counts if is_word_table else key
        if counts in comp_table:
            if comp_table[counts] != out:
                raise NotSymmetricError(comp_witness[counts], key,
                                        comp_table[counts].value, out.value)
        else:
            comp_table[counts] = out
            comp_witness[counts] = key
    return ChannelSpec(KIND_CUSTOM, q, s, table=comp_table)


def make_channel(name: str, s: int, q: int) -> ChannelSpec:
    """Parse a channel name: A | B | eras | thr:L | disj."""
    if name == KIND_A:
        return ChannelSpec(KIND_A, q, s)
    if name == KIND_B:
        return ChannelSpec(KIND_B, q, s)
    if name == KIND_ERASURE:
        return ChannelSpec(KIND_ERASURE, q, s)
    if name == KIND_DISJUNCTIVE:
        return ChannelSpec(KIND_DISJUNCTIVE, q, s)
    if name.startswith(KIND_THRESHOLD + ":"):
        return ChannelSpec(KIND_THRESHOLD, q, s, threshold=int(name.split(":", 1)[1]))
    raise InvalidParametersError(f"unknown channel name {name!r}")


# --- custom channel file format ---------------------------------------------
# line 1: "q s |Z|"; then one line per composition:
#   q count integers, the token "->", an opaque output label.
# Every composition of weight s must appear exactly once.


class ChannelFileError(ValueError):
    """Malformed custom channel file."""


def parse_channel(text: str) -> ChannelSpec:
    lines = [ln.strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln and not ln.startswith("#")]
    if not lines:
        raise ChannelFileError("empty channel file")
    header = lines[0].split()
    if len(header) != 3:
        raise ChannelFileError(f"header must be 'q s |Z|', got {lines[0]!r}")
    try:
        q, s, zsize = (int(x) for x in header)
    except ValueError as exc:
        raise ChannelFileError(f"non-integer header {lines[0]!r}") from exc
    table: dict[tuple[int, ...], OutputSymbol] = {}
    for ln in lines[1:]:
        parts = ln.split()
        if len(parts) != q + 2 or parts[q] != "->":
            raise ChannelFileError(f"expected '{q} counts -> label', got {ln!r}")
        try:
            counts = tuple(int(x) for x in parts[:q])
        except ValueError as exc:
            raise ChannelFileError(f"non-integer count in {ln!r}") from exc
        if sum(counts) != s or any(c < 0 for c in counts):
            raise ChannelFileError(f"counts {counts} are not a weight-{s} composition")
        if counts in table:
            raise ChannelFileError(f"duplicate composition {counts}")
        table[counts] = OutputSymbol(KIND_CUSTOM, parts[q + 1])
    spec = ChannelSpec(KIND_CUSTOM, q, s, table=table)
    labels = {z.value for z in table.values()}
    if len(labels) != zsize:
        raise ChannelFileError(f"header says |Z|={zsize} but table uses {len(labels)} labels")
    return spec


def load_channel(path) -> ChannelSpec:
    with open(path, "r", encoding="utf-8") as fh:
        return parse_channel(fh.read())
