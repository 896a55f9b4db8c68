"""
Closed diagrams a T b-bar of a planar tangle capped off by platform
matchings, and the type of each of their circles.

The tangle is padded to T-hat with straight strands below and above; those
strands form the bottom and top platforms. Extra nested arcs close up the
side with fewer endpoints.
"""
from __future__ import annotations
from typing import Any
from collections.abc import Iterator, Sequence

from dataclasses import dataclass
from enum import Enum
from functools import cached_property
from itertools import product

from qkhlab.tangles import (Edge,
                            PlanarDiagram,
                            Point,
                            TangleWord,
                            WordDiagram,
                            pad,
                            word_diagram)
from qkhlab.platform.frobenius import Labels, ONE, X
from qkhlab.platform.matchings import (PlatformMatching,
                                       PlatformException,
                                       check_parity,
                                       right_weight)


class CircleType(Enum):
    TYPE_I = "I"
    TYPE_II = "II"
    TYPE_III = "III"


@dataclass(frozen=True)
class ClosureShape:
    """
    Boundary bookkeeping of an (n,m) tangle at left weight k.

    :param below: straight strands added under the tangle.
    :param above: straight strands added over the tangle.
    :param left_extra: extra closure arcs on the left side.
    :param right_extra: extra closure arcs on the right side.
    """
    n: int
    m: int
    k: int
    h: int
    below: int
    above: int
    left_extra: int
    right_extra: int

    @property
    def left_points(self) -> int:
        return self.n + self.below + self.above

    @property
    def right_points(self) -> int:
        return self.m + self.below + self.above


def closure_shape(n: int, m: int, k: int) -> ClosureShape:
    check_parity(n, m)
    h = right_weight(n, m, k)
    width = max(n, m)
    above = max(k, h)
    return ClosureShape(n, m, k, h, width - above, above,
                        max((m - n) // 2, 0), max((n - m) // 2, 0))


def _arc_edges(points: Sequence[Point], matching: PlatformMatching, extra: int) -> list[Edge]:
    total = len(points)
    edges = [Edge.plain(points[j - 1], points[total - j]) for j in range(1, extra + 1)]
    edges.extend(Edge.plain(points[i + extra - 1], points[j + extra - 1]) for i, j in matching.pairs)
    return edges


def retag(edge: Edge, part: str) -> Edge:
    return edge.relabel(lambda p: (part,) + p[1:])


@dataclass(frozen=True)
class Closure:
    """
    The closed diagram a T-hat b-bar at one cube vertex of T.

    Circles are indexed in the order of `diagram.circles`.
    """
    word: TangleWord
    bits: tuple[int, ...]
    a: PlatformMatching
    b: PlatformMatching
    shape: ClosureShape
    layout: WordDiagram

    @cached_property
    def diagram(self) -> PlanarDiagram:
        arcs = (_arc_edges(self.layout.left, self.a, self.shape.left_extra)
                + _arc_edges(self.layout.right, self.b, self.shape.right_extra))
        return PlanarDiagram.from_edges(self.layout.diagram.edges + tuple(arcs))

    @property
    def part(self) -> str:
        return self.layout.part

    def left_arc(self, i: int, j: int) -> Edge:
        """Edge of the arc (i,j) of a, in a's own numbering."""
        e = self.shape.left_extra
        return Edge.plain(self.layout.left[i + e - 1], self.layout.left[j + e - 1])

    def right_arc(self, i: int, j: int) -> Edge:
        """Edge of the arc (i,j) of b-bar, in b's own numbering."""
        e = self.shape.right_extra
        return Edge.plain(self.layout.right[i + e - 1], self.layout.right[j + e - 1])

    def extra_arc(self, side: str, j: int) -> Edge:
        """The j-th extra closure arc on the 'left' or 'right' side, 1 outermost."""
        points = self.layout.left if side == "left" else self.layout.right
        return Edge.plain(points[j - 1], points[len(points) - j])

    def left_point(self, i: int) -> Point:
        return self.layout.left[i + self.shape.left_extra - 1]

    def right_point(self, i: int) -> Point:
        return self.layout.right[i + self.shape.right_extra - 1]

    def platform_hits(self, circle: frozenset[Point]) -> tuple[int, int]:
        """Number of bottom and of top platform strands on a circle."""
        shape = self.shape
        bottom = sum(1 for p in self.layout.left[:shape.below] if p in circle)
        top = sum(1 for p in self.layout.left[shape.n + shape.below:] if p in circle)
        return bottom, top

    @cached_property
    def types(self) -> tuple[CircleType, ...]:
        found = []
        for circle in self.diagram.circles:
            hits = self.platform_hits(circle)
            if max(hits) >= 2:
                found.append(CircleType.TYPE_III)
            elif sum(hits):
                found.append(CircleType.TYPE_II)
            else:
                found.append(CircleType.TYPE_I)
        return tuple(found)

    @property
    def admissible(self) -> bool:
        return CircleType.TYPE_III not in self.types

    def allows(self, labels: Labels) -> bool:
        """Whether a labeling survives the quotient by the platform ideal."""
        return self.admissible and all(label == ONE for label, kind in zip(labels, self.types)
                                       if kind is CircleType.TYPE_II)

    def generators(self) -> Iterator[Labels]:
        """Surviving labelings in lexicographic order."""
        if not self.admissible:
            return
        free = [(ONE, X) if kind is CircleType.TYPE_I else (ONE,) for kind in self.types]
        yield from product(*free)

    @staticmethod
    def chi(labels: Labels) -> int:
        return sum(1 if label == ONE else -1 for label in labels)

    def circle_containing(self, p: Point) -> int:
        return self.diagram.circle_index(p)

    def to_json(self) -> dict[str, Any]:
        return {"a": self.a.to_json(), "b": self.b.to_json(),
                "types": [kind.value for kind in self.types]}


def build_closure(word: TangleWord,
                  a: PlatformMatching,
                  b: PlatformMatching,
                  bits: Sequence[int] = (),
                  part: str = "T") -> Closure:
    """
    Cap off `word` at the cube vertex `bits` with a on the left and b-bar
    on the right.

    :raises PlatformException: if the matchings do not fit the boundary.
    """
    n, m = word.n_left, word.n_right
    if a.n != n or b.n != m:
        raise PlatformException(f"matchings on {2 * a.n} and {2 * b.n} points do not fit "
                                f"a ({n},{m}) tangle")
    shape = closure_shape(n, m, a.k)
    if b.k != shape.h:
        raise PlatformException(f"right matching has weight {b.k}, expected {shape.h}")
    hat = pad(word, shape.below, shape.above)
    layout = word_diagram(hat, tuple(bits), part)
    return Closure(word, tuple(layout.bits), a, b, shape, layout)


def classify_circles(a: PlatformMatching,
                     word: TangleWord,
                     b: PlatformMatching) -> tuple[CircleType, ...]:
    """Types of the circles of a W b-bar for a crossing-free word W."""
    if not word.is_planar:
        raise PlatformException("classify_circles needs a crossing-free word")
    return build_closure(word, a, b).types
