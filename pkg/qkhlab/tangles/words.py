"""
Tangle diagrams encoded as Morse words: a left-to-right sequence of cups,
caps and crossings acting on horizontal strands numbered from the bottom.
"""
from __future__ import annotations
from typing import Any
from collections.abc import Sequence

from dataclasses import dataclass
from enum import Enum


class SliceKind(Enum):
    CUP = "cup"
    CAP = "cap"
    POS = "pos"
    NEG = "neg"

    @property
    def is_crossing(self) -> bool:
        return self in (SliceKind.POS, SliceKind.NEG)


# smoothing of a crossing slice: strands pass straight, or cap followed by cup
IDENTITY_SMOOTHING = "id"
CAPCUP_SMOOTHING = "cc"


@dataclass(frozen=True)
class Slice:
    """
    One elementary event at strand position `position` (1-based, counted
    from the bottom among the strands present just before the slice).
    """
    kind: SliceKind
    position: int

    def to_json(self) -> list[Any]:
        return [self.kind.value, self.position]

    def smoothing(self, bit: int) -> str:
        """
        Local picture of a crossing at resolution `bit`. The 0-resolution of
        a positive crossing is the oriented (identity) smoothing; a negative
        crossing is the other way round.
        """
        if self.kind is SliceKind.POS:
            return IDENTITY_SMOOTHING if bit == 0 else CAPCUP_SMOOTHING
        if self.kind is SliceKind.NEG:
            return CAPCUP_SMOOTHING if bit == 0 else IDENTITY_SMOOTHING
        raise TangleException(f"{self.kind.value} slice has no resolutions")


@dataclass(frozen=True)
class TangleWord:
    """
    An (n_left, n_right)-tangle diagram as a Morse word.

    :param n_left: number of left endpoints.
    :param n_right: number of right endpoints.
    :param slices: the elementary events, left to right.
    """
    n_left: int
    n_right: int
    slices: tuple[Slice, ...] = ()

    @classmethod
    def identity(cls, n: int) -> TangleWord:
        return cls(n, n, ())

    @classmethod
    def from_pairs(cls, n_left: int, n_right: int,
                   pairs: Sequence[Sequence[Any]]) -> TangleWord:
        try:
            slices = tuple(Slice(SliceKind(str(kind).lower()), int(position))
                           for kind, position in pairs)
        except (ValueError, TypeError) as e:
            raise TangleException(f"malformed slice list {list(pairs)!r}") from e
        return cls(n_left, n_right, slices)

    @property
    def crossings(self) -> list[int]:
        """Slice indices of the crossings, in order of appearance."""
        return [t for t, s in enumerate(self.slices) if s.kind.is_crossing]

    @property
    def crossing_count(self) -> int:
        return len(self.crossings)

    @property
    def n_plus(self) -> int:
        return sum(1 for s in self.slices if s.kind is SliceKind.POS)

    @property
    def n_minus(self) -> int:
        return sum(1 for s in self.slices if s.kind is SliceKind.NEG)

    @property
    def is_planar(self) -> bool:
        return self.crossing_count == 0

    def strand_counts(self) -> list[int]:
        """Strand count before each slice, followed by the final count."""
        counts = [self.n_left]
        for s in self.slices:
            delta = 2 if s.kind is SliceKind.CUP else -2 if s.kind is SliceKind.CAP else 0
            counts.append(counts[-1] + delta)
        return counts

    def concat(self, other: TangleWord) -> TangleWord:
        """`self` followed by `other` (self on the left)."""
        if self.n_right != other.n_left:
            raise TangleException(f"cannot glue a ({self.n_left},{self.n_right}) word "
                                  f"to a ({other.n_left},{other.n_right}) word")
        return TangleWord(self.n_left, other.n_right, self.slices + other.slices)

    def to_json(self) -> dict[str, Any]:
        return {"n_left": self.n_left,
                "n_right": self.n_right,
                "slices": [s.to_json() for s in self.slices]}

    @classmethod
    def from_json(cls, data: dict[str, Any]) -> TangleWord:
        try:
            word = cls.from_pairs(int(data["n_left"]), int(data["n_right"]), data.get("slices", []))
        except (KeyError, TypeError, ValueError) as e:
            raise TangleException(f"malformed tangle {data!r}") from e
        validate(word)
        return word


def validate(word: TangleWord) -> None:
    """
    Check strand counts slice by slice.

    :param word: the word to check.
    :raises TangleException: naming the first offending slice.
    """
    if word.n_left < 0 or word.n_right < 0:
        raise TangleException("endpoint counts must be nonnegative")
    if (word.n_left - word.n_right) % 2:
        raise TangleException(f"endpoint counts {word.n_left} and {word.n_right} "
                              "have different parity")
    count = word.n_left
    for t, s in enumerate(word.slices):
        if s.kind is SliceKind.CUP:
            if not 1 <= s.position <= count + 1:
                raise TangleException(f"slice {t}: cup at {s.position} on {count} strands")
            count += 2
        else:
            if not 1 <= s.position <= count - 1:
                raise TangleException(f"slice {t}: {s.kind.value} at {s.position} "
                                      f"on {count} strands")
            if s.kind is SliceKind.CAP:
                count -= 2
    if count != word.n_right:
        raise TangleException(f"word ends with {count} strands, expected {word.n_right}")


def check_vertex(word: TangleWord, bits: Sequence[int]) -> tuple[int, ...]:
    bits = tuple(int(b) for b in bits)
    if len(bits) != word.crossing_count or any(b not in (0, 1) for b in bits):
        raise TangleException(f"resolution {bits} does not fit {word.crossing_count} crossings")
    return bits


def resolve(word: TangleWord, bits: Sequence[int]) -> TangleWord:
    """
    Crossing-free word of the resolution `bits`: identity smoothings are
    dropped and cap-cup smoothings become CAP(i) then CUP(i).
    """
    bits = check_vertex(word, bits)
    slices: list[Slice] = []
    crossing = 0
    for s in word.slices:
        if not s.kind.is_crossing:
            slices.append(s)
            continue
        if s.smoothing(bits[crossing]) == CAPCUP_SMOOTHING:
            slices.extend((Slice(SliceKind.CAP, s.position), Slice(SliceKind.CUP, s.position)))
        crossing += 1
    return TangleWord(word.n_left, word.n_right, tuple(slices))


def pad(word: TangleWord, below: int, above: int) -> TangleWord:
    """Add `below` straight strands under the word and `above` over it."""
    if below < 0 or above < 0:
        raise TangleException(f"cannot add {below} strands below and {above} above")
    return TangleWord(word.n_left + below + above,
                      word.n_right + below + above,
                      tuple(Slice(s.kind, s.position + below) for s in word.slices))


def add_strands(word: TangleWord, k: int) -> TangleWord:
    """
    The (2n,2n) word obtained from an (n,n) word by adding n-k strands
    below and k strands above.
    """
    if word.n_left != word.n_right:
        raise TangleException("adding strands needs an (n,n) word")
    n = word.n_left
    if not 0 <= k <= n:
        raise TangleException(f"k={k} out of range for n={n}")
    return pad(word, n - k, k)


def dump_tangle(word: TangleWord) -> dict[str, Any]:
    """Normalized JSON form of a validated word."""
    validate(word)
    return word.to_json()


class TangleException(Exception):
    """Errors related to tangle words and their resolutions"""


class TangleFileException(TangleException):
    """Errors related to reading tangle files"""


class NonEdgeError(TangleException):
    """Raised when two cube vertices are not joined by an edge"""
