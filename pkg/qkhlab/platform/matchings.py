"""
Crossingless matchings with platforms, grading shifts and the boundary
bookkeeping of platform bimodules.
"""
from __future__ import annotations
from typing import Any
from collections.abc import Iterator

from dataclasses import dataclass
from functools import lru_cache


@dataclass(frozen=True, order=True)
class PlatformMatching:
    """
    Crossingless matching of the points 1..2n (bottom to top) with no pair
    inside the bottom n-k points and none inside the top k points.
    """
    n: int
    k: int
    pairs: tuple[tuple[int, int], ...]

    def __post_init__(self) -> None:
        points = sorted(p for pair in self.pairs for p in pair)
        if points != list(range(1, 2 * self.n + 1)):
            raise PlatformException(f"{self.pairs} is not a perfect matching of {2 * self.n} points")
        for i, j in self.pairs:
            if i >= j:
                raise PlatformException(f"pair {(i, j)} is not ordered")
            for p, q in self.pairs:
                if i < p < j < q:
                    raise PlatformException(f"pairs {(i, j)} and {(p, q)} cross")
            if j <= self.n - self.k:
                raise PlatformException(f"pair {(i, j)} lies inside the bottom platform")
            if i > 2 * self.n - self.k:
                raise PlatformException(f"pair {(i, j)} lies inside the top platform")

    @property
    def bottom_block(self) -> range:
        return range(1, self.n - self.k + 1)

    @property
    def top_block(self) -> range:
        return range(2 * self.n - self.k + 1, 2 * self.n + 1)

    def partner(self, point: int) -> int:
        for i, j in self.pairs:
            if point == i:
                return j
            if point == j:
                return i
        raise PlatformException(f"point {point} is not matched")

    def to_json(self) -> list[list[int]]:
        return [list(pair) for pair in self.pairs]

    def __str__(self) -> str:
        return "".join(f"({i},{j})" for i, j in self.pairs)


def _crossingless(points: tuple[int, ...]) -> Iterator[tuple[tuple[int, int], ...]]:
    if not points:
        yield ()
        return
    first = points[0]
    for at in range(1, len(points), 2):
        inside, outside = points[1:at], points[at + 1:]
        for inner in _crossingless(inside):
            for outer in _crossingless(outside):
                yield ((first, points[at]),) + inner + outer


@lru_cache(maxsize=None)
def enumerate_matchings(n: int, k: int) -> tuple[PlatformMatching, ...]:
    """
    All elements of B^{n,k} in a fixed order (sorted by their pairs).

    :param n: half the number of points.
    :param k: size of the top platform.
    :raises PlatformException: if k is outside [0, n].
    """
    if n < 0 or not 0 <= k <= n:
        raise PlatformException(f"k={k} out of range for n={n}")
    found = []
    for pairs in _crossingless(tuple(range(1, 2 * n + 1))):
        pairs = tuple(sorted(pairs))
        if any(j <= n - k or i > 2 * n - k for i, j in pairs):
            continue
        found.append(PlatformMatching(n, k, pairs))
    return tuple(sorted(found))


def check_parity(n: int, m: int) -> None:
    if n < 0 or m < 0 or (n - m) % 2:
        raise PlatformException(f"boundary counts {n} and {m} have different parity")


def shift_s(n: int, m: int) -> int:
    """Grading shift s(n,m) = -n - max(0, (n-m)/2) of an (n,m) platform bimodule."""
    check_parity(n, m)
    return -n - max(0, (n - m) // 2)


def k_range(n: int, m: int) -> range:
    """Weights k for which an (n,m) tangle has a platform bimodule."""
    check_parity(n, m)
    return range(max(0, (n - m) // 2), min(n, (n + m) // 2) + 1)


def right_weight(n: int, m: int, k: int) -> int:
    """h(k) = k + (m-n)/2, the right platform weight."""
    if k not in k_range(n, m):
        raise PlatformException(f"k={k} out of range for an ({n},{m}) tangle")
    return k + (m - n) // 2


@dataclass(frozen=True)
class GluingCount:
    """
    Cobordism counts for gluing a (p,n) tangle to an (n,m) tangle.

    :param saddles: one per arc of the middle matching plus one per extra
                    closure arc present on both sides.
    :param removals: closure circles removed after the saddles.
    """
    p: int
    n: int
    m: int
    saddles: int
    removals: int

    @property
    def degree(self) -> int:
        """Quantum degree of the gluing map before grading shifts."""
        return -(self.saddles + self.removals)

    @property
    def source_shift(self) -> int:
        return shift_s(self.p, self.n) + shift_s(self.n, self.m)

    @property
    def target_shift(self) -> int:
        return shift_s(self.p, self.m)

    @property
    def balanced(self) -> bool:
        return self.source_shift + self.saddles + self.removals == self.target_shift

    def to_json(self) -> dict[str, Any]:
        return {"p": self.p, "n": self.n, "m": self.m,
                "saddles": self.saddles, "removals": self.removals,
                "degree": self.degree, "source_shift": self.source_shift,
                "target_shift": self.target_shift, "balanced": self.balanced}


def gluing_count(p: int, n: int, m: int) -> GluingCount:
    check_parity(p, n)
    check_parity(n, m)
    saddles = n + min(max((p - n) // 2, 0), max((m - n) // 2, 0))
    removals = min(max((n - p) // 2, 0), max((n - m) // 2, 0))
    return GluingCount(p, n, m, saddles, removals)


class PlatformException(Exception):
    """Errors related to platform matchings, algebras and bimodules"""
