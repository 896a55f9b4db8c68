"""
Annular closures of (n,n) words, circle tracing with seam data, cube
edges and the cube sign assignment.

The closure joins the right endpoint p to the left endpoint p by an edge
that runs around the puncture and crosses the seam. Position 1 is closest
to the puncture.
"""
from __future__ import annotations
from typing import Any, Optional
from collections.abc import Sequence

from dataclasses import dataclass
from enum import Enum
import logging

from qkhlab.tangles.diagram import (Circle,
                                    Edge,
                                    PlanarDiagram,
                                    Point,
                                    SEAM,
                                    WordDiagram,
                                    flip_edges,
                                    word_diagram)
from qkhlab.tangles.words import (TangleWord,
                                  TangleException,
                                  NonEdgeError,
                                  check_vertex)


_log = logging.getLogger("qkhlab.tangles")


class SaddleKind(Enum):
    MERGE = "merge"
    SPLIT = "split"


@dataclass(frozen=True)
class AnnularCircle:
    """
    One circle of a closure.

    :param id: the circle's smallest point, stable across cube edges that
               do not touch it.
    :param seam_passages: number of times it runs through the seam.
    :param winding: signed seam count along the canonical traversal.
    :param nesting: rank among essential circles from the puncture
                    outwards (1-based), None for trivial circles.
    :param seam_position: smallest strand position where it crosses the
                          seam, None if it never does.
    """
    id: Point
    seam_passages: int
    winding: int
    nesting: Optional[int]
    seam_position: Optional[int]

    @property
    def essential(self) -> bool:
        return self.winding != 0

    @property
    def seam_crossing(self) -> bool:
        return self.seam_passages > 0

    def to_json(self) -> dict[str, Any]:
        return {"id": list(self.id),
                "essential": self.essential,
                "seam_passages": self.seam_passages,
                "nesting": self.nesting}


@dataclass(frozen=True)
class AnnularConfig:
    """Circles of the annular closure of a word at one cube vertex."""
    word: TangleWord
    bits: tuple[int, ...]
    layout: WordDiagram
    diagram: PlanarDiagram
    circles: tuple[AnnularCircle, ...]

    @property
    def essential(self) -> list[AnnularCircle]:
        return sorted((c for c in self.circles if c.essential), key=lambda c: c.nesting)

    @property
    def trivial(self) -> list[AnnularCircle]:
        return [c for c in self.circles if not c.essential]

    def circle_containing(self, p: Point) -> AnnularCircle:
        return self.circles[self.diagram.circle_index(p)]

    def to_json(self) -> dict[str, Any]:
        return {"bits": list(self.bits), "circles": [c.to_json() for c in self.circles]}


def closure_diagram(layout: WordDiagram) -> PlanarDiagram:
    """Add the seam edges R_p -> L_p to the diagram of an (n,n) word."""
    if len(layout.left) != len(layout.right):
        raise TangleException("annular closure needs an (n,n) word")
    seams = [Edge.seam(r, l) for l, r in zip(layout.left, layout.right)]
    return PlanarDiagram.from_edges(layout.diagram.edges + tuple(seams))


def describe_circles(diagram: PlanarDiagram) -> tuple[AnnularCircle, ...]:
    raw = []
    for circle in diagram.circles:
        steps = diagram.walk(circle)
        seam_positions = [edge.head[4] for _, edge, _ in steps if edge.tag == SEAM]
        raw.append((circle, len(seam_positions), diagram.winding(circle),
                    min(seam_positions) if seam_positions else None))
    essential = sorted((entry for entry in raw if entry[2] != 0), key=lambda e: e[3])
    rank = {entry[0]: i + 1 for i, entry in enumerate(essential)}
    return tuple(AnnularCircle(min(circle), passages, winding, rank.get(circle), position)
                 for circle, passages, winding, position in raw)


def closure_config(word: TangleWord, bits: Sequence[int] = ()) -> AnnularConfig:
    """Closure of the resolution of `word` at the cube vertex `bits`."""
    vertex = check_vertex(word, bits)
    layout = word_diagram(word, vertex)
    diagram = closure_diagram(layout)
    return AnnularConfig(word, vertex, layout, diagram, describe_circles(diagram))


def trace_closure(word: TangleWord) -> AnnularConfig:
    """
    Circles of the annular closure of a crossing-free (n,n) word.

    :param word: planar word with n_left == n_right.
    :return: the circle configuration.
    """
    if not word.is_planar:
        raise TangleException("trace_closure needs a crossing-free word; resolve it first")
    config = closure_config(word, ())
    _log.debug("closure of %s: %d circles, %d essential", word.to_json(),
               len(config.circles), len(config.essential))
    return config


@dataclass(frozen=True)
class SaddleData:
    """
    The saddle cobordism on a cube edge v -> w.

    Circle ids refer to the closures at v and w. The saddle arc joins the
    two removed edges; `arc_inside` tells whether it lies on the puncture
    side of the circle holding the first removed edge (inside it, for a
    trivial circle).
    """
    source: tuple[int, ...]
    target: tuple[int, ...]
    kind: SaddleKind
    source_circles: tuple[Point, ...]
    target_circles: tuple[Point, ...]
    crossing: int
    removed: tuple[Edge, Edge]
    added: tuple[Edge, Edge]
    arc_inside: bool
    seam_local: bool = False

    def to_json(self) -> dict[str, Any]:
        return {"source": list(self.source), "target": list(self.target),
                "kind": self.kind.value, "crossing": self.crossing,
                "arc_inside": self.arc_inside,
                "source_circles": [list(c) for c in self.source_circles],
                "target_circles": [list(c) for c in self.target_circles]}


def edge_index(v: Sequence[int], w: Sequence[int]) -> int:
    """Coordinate where v and w differ, if v <=_1 w."""
    if len(v) != len(w):
        raise NonEdgeError(f"{tuple(v)} and {tuple(w)} have different lengths")
    diff = [j for j, (a, b) in enumerate(zip(v, w)) if a != b]
    if len(diff) != 1 or v[diff[0]] != 0:
        raise NonEdgeError(f"{tuple(v)} -> {tuple(w)} is not a cube edge")
    return diff[0]


def edge_saddle(word: TangleWord, v: Sequence[int], w: Sequence[int],
                source: Optional[AnnularConfig] = None,
                target: Optional[AnnularConfig] = None) -> SaddleData:
    """
    Classify the saddle between the closures at v and w.

    :param source: closure at v if already computed.
    :param target: closure at w if already computed.
    """
    j = edge_index(v, w)
    source = source or closure_config(word, v)
    target = target or closure_config(word, w)
    removed, added = flip_edges(source.layout, j)
    before = sorted({source.circle_containing(e.head).id for e in removed})
    after = sorted({target.circle_containing(e.head).id for e in added})
    if len(before) == 2 and len(after) == 1:
        kind = SaddleKind.MERGE
    elif len(before) == 1 and len(after) == 2:
        kind = SaddleKind.SPLIT
    else:
        raise TangleException(f"saddle at crossing {j} is neither a merge nor a split")
    inside = arc_inside(source, j, source.diagram.circle_of(removed[0].head))
    return SaddleData(tuple(v), tuple(w), kind, tuple(before), tuple(after), j,
                      removed, added, inside)


def sign_assignment(v: Sequence[int], w: Sequence[int]) -> int:
    """(-1) to the number of 1s before the coordinate where v and w differ."""
    j = edge_index(v, w)
    return -1 if sum(v[:j]) % 2 else 1


def orientation(config: AnnularConfig, circle: Circle) -> int:
    """
    +1 if the canonical traversal of `circle` runs counterclockwise in the
    annulus, with angle growing left to right along the word and radius
    growing with strand position; -1 otherwise.

    The sign is that of the integral of r^2 dtheta along the traversal,
    which is exact for the piecewise linear curve through the points.
    """
    layout = config.layout
    gap = layout.width
    total = 0
    for start, edge, end in config.diagram.walk(circle):
        if edge.tag == SEAM:
            r = edge.head[4]
            total += (3 * gap * r * r) * (1 if start == edge.head else -1)
            continue
        x1, y1 = layout.coordinates(start)
        x2, y2 = layout.coordinates(end)
        total += (x2 - x1) * (y1 * y1 + y1 * y2 + y2 * y2)
    if total == 0:
        raise TangleException("degenerate circle with zero signed area")
    return 1 if total > 0 else -1


def arc_inside(config: AnnularConfig, crossing: int, circle: Circle) -> bool:
    """
    Whether the saddle arc at `crossing` lies on the puncture side of
    `circle` (inside it, for a trivial circle): the outward radial ray
    from the arc midpoint meets the circle an odd number of times.
    """
    site = config.layout.sites[crossing]
    x_in = 3 * site.slice_index + 1
    hits = 0
    for start, edge, end in config.diagram.walk(circle):
        if edge.tag == SEAM:
            continue
        (x1, y1), (x2, y2) = config.layout.coordinates(start), config.layout.coordinates(end)
        if {x1, x2} == {x_in, x_in + 1} and min(y1, y2) > site.position:
            hits += 1
    return hits % 2 == 1
