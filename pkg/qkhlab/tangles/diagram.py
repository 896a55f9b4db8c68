"""
Planar diagrams as edge multigraphs over labelled points.

Every point of a closed diagram has degree two and the circles are the
connected components. Points are 5-tuples (part, kind, slice, side,
position) so that points from different pieces of a glued picture sort
together.
"""
from __future__ import annotations
from typing import Optional
from collections.abc import Callable, Iterable, Sequence

from dataclasses import dataclass, field
from functools import cached_property

from qkhlab.tangles.words import (CAPCUP_SMOOTHING,
                                  IDENTITY_SMOOTHING,
                                  SliceKind,
                                  TangleWord,
                                  TangleException,
                                  check_vertex)

Point = tuple[str, str, int, int, int]
Circle = frozenset[Point]

PLAIN = "plain"
SEAM = "seam"


@dataclass(frozen=True, order=True)
class Edge:
    """
    An edge between two points. Seam edges are oriented: walking from
    `head` to `tail` crosses the seam in the positive direction.
    """
    head: Point
    tail: Point
    tag: str = PLAIN

    @classmethod
    def plain(cls, p: Point, q: Point) -> Edge:
        return cls(min(p, q), max(p, q), PLAIN)

    @classmethod
    def seam(cls, start: Point, end: Point) -> Edge:
        return cls(start, end, SEAM)

    def other(self, p: Point) -> Point:
        return self.tail if p == self.head else self.head

    def relabel(self, fn: Callable[[Point], Point]) -> Edge:
        if self.tag == SEAM:
            return Edge.seam(fn(self.head), fn(self.tail))
        return Edge.plain(fn(self.head), fn(self.tail))


def point(part: str, kind: str, t: int = 0, side: int = 0, position: int = 0) -> Point:
    return (part, kind, t, side, position)


def left_point(part: str, position: int) -> Point:
    return (part, "L", 0, 0, position)


def right_point(part: str, position: int) -> Point:
    return (part, "R", 0, 0, position)


@dataclass(frozen=True)
class PlanarDiagram:
    """Immutable multigraph of edges; repeated edges are kept apart by value."""
    edges: tuple[Edge, ...] = ()

    @classmethod
    def from_edges(cls, edges: Iterable[Edge]) -> PlanarDiagram:
        return cls(tuple(sorted(edges)))

    @cached_property
    def _incidence(self) -> dict[Point, list[int]]:
        incidence: dict[Point, list[int]] = {}
        for index, edge in enumerate(self.edges):
            incidence.setdefault(edge.head, []).append(index)
            incidence.setdefault(edge.tail, []).append(index)
        return incidence

    @property
    def points(self) -> list[Point]:
        return sorted(self._incidence)

    def degree(self, p: Point) -> int:
        return len(self._incidence.get(p, ()))

    @cached_property
    def components(self) -> tuple[Circle, ...]:
        seen: set[Point] = set()
        found = []
        for start in sorted(self._incidence):
            if start in seen:
                continue
            stack, component = [start], set()
            while stack:
                p = stack.pop()
                if p in component:
                    continue
                component.add(p)
                for index in self._incidence[p]:
                    stack.append(self.edges[index].other(p))
            seen |= component
            found.append(frozenset(component))
        return tuple(sorted(found, key=min))

    @cached_property
    def circles(self) -> tuple[Circle, ...]:
        """Closed components, ordered by their smallest point."""
        return tuple(c for c in self.components if all(self.degree(p) == 2 for p in c))

    @cached_property
    def _circle_index(self) -> dict[Point, int]:
        return {p: i for i, circle in enumerate(self.circles) for p in circle}

    def circle_index(self, p: Point) -> int:
        try:
            return self._circle_index[p]
        except KeyError as e:
            raise TangleException(f"point {p} lies on no circle") from e

    def circle_of(self, p: Point) -> Circle:
        return self.circles[self.circle_index(p)]

    def walk(self, circle: Circle) -> list[tuple[Point, Edge, Point]]:
        """
        Traverse a circle once as (from, edge, to) steps, starting at its
        smallest point and leaving along its smallest incident edge.
        """
        start = min(circle)
        first = min(self._incidence[start], key=lambda i: (self.edges[i], i))
        steps = []
        current, index = start, first
        while True:
            edge = self.edges[index]
            nxt = edge.other(current)
            steps.append((current, edge, nxt))
            if nxt == start:
                break
            choices = [i for i in self._incidence[nxt] if i != index]
            if not choices:
                raise TangleException(f"open component through {nxt}")
            current, index = nxt, choices[0]
        return steps

    def winding(self, circle: Circle) -> int:
        """Signed count of seam passages along the canonical traversal."""
        total = 0
        for start, edge, _ in self.walk(circle):
            if edge.tag == SEAM:
                total += 1 if start == edge.head else -1
        return total

    def seam_passages(self, circle: Circle) -> int:
        return sum(1 for _, edge, _ in self.walk(circle) if edge.tag == SEAM)

    def is_essential(self, circle: Circle) -> bool:
        return self.winding(circle) != 0

    def surgery(self, remove: Sequence[Edge], add: Sequence[Edge]) -> PlanarDiagram:
        edges = list(self.edges)
        for edge in remove:
            try:
                edges.remove(edge)
            except ValueError as e:
                raise TangleException(f"edge {edge} is not in the diagram") from e
        return PlanarDiagram.from_edges(edges + list(add))

    def union(self, other: PlanarDiagram) -> PlanarDiagram:
        return PlanarDiagram.from_edges(self.edges + other.edges)

    def relabel(self, fn: Callable[[Point], Point]) -> PlanarDiagram:
        return PlanarDiagram.from_edges(edge.relabel(fn) for edge in self.edges)

    def with_part(self, part: str) -> PlanarDiagram:
        return self.relabel(lambda p: (part,) + p[1:])


@dataclass(frozen=True)
class CrossingSite:
    """Corner points of a crossing slice; `lo`/`hi` are positions i and i+1."""
    slice_index: int
    position: int
    in_lo: Point
    in_hi: Point
    out_lo: Point
    out_hi: Point

    def edges(self, smoothing: str) -> tuple[Edge, Edge]:
        if smoothing == IDENTITY_SMOOTHING:
            return Edge.plain(self.in_lo, self.out_lo), Edge.plain(self.in_hi, self.out_hi)
        return Edge.plain(self.in_lo, self.in_hi), Edge.plain(self.out_lo, self.out_hi)


@dataclass(frozen=True)
class WordDiagram:
    """
    Diagram of a (possibly partially resolved) word with its boundary
    points and crossing sites. Every strand gets an in-point and an
    out-point at every slice, so the polyline through the points is an
    embedding of the diagram.
    """
    word: TangleWord
    bits: tuple[int, ...]
    part: str
    diagram: PlanarDiagram
    left: tuple[Point, ...]
    right: tuple[Point, ...]
    sites: tuple[CrossingSite, ...] = field(default=())

    @property
    def width(self) -> int:
        return 3 * len(self.word.slices) + 1

    def coordinates(self, p: Point) -> tuple[int, int]:
        """Integer (x, y) of a point of this word; y is the strand position."""
        _, kind, t, side, position = p
        if kind == "L":
            return 0, position
        if kind == "R":
            return self.width, position
        return 3 * t + 1 + side, position


def word_diagram(word: TangleWord,
                 bits: Optional[Sequence[int]] = None,
                 part: str = "T") -> WordDiagram:
    """
    Build the diagram of `word` at the cube vertex `bits` (planar words
    take the empty vertex).

    :param word: a validated word.
    :param bits: resolution of each crossing, in order of appearance.
    :param part: tag used as the first component of every point.
    """
    vertex = check_vertex(word, bits if bits is not None else [0] * word.crossing_count)
    left = tuple(left_point(part, p) for p in range(1, word.n_left + 1))
    ends = list(left)
    edges: list[Edge] = []
    sites = []
    crossing = 0
    for t, s in enumerate(word.slices):
        count = len(ends)
        ins = [point(part, "p", t, 0, j) for j in range(1, count + 1)]
        for end, p in zip(ends, ins):
            edges.append(Edge.plain(end, p))
        i = s.position
        if s.kind is SliceKind.CUP:
            outs = [point(part, "p", t, 1, j) for j in range(1, count + 3)]
            for j in range(1, count + 1):
                edges.append(Edge.plain(ins[j - 1], outs[j - 1 if j < i else j + 1]))
            edges.append(Edge.plain(outs[i - 1], outs[i]))
        elif s.kind is SliceKind.CAP:
            outs = [point(part, "p", t, 1, j) for j in range(1, count - 1)]
            for j in range(1, count + 1):
                if j < i:
                    edges.append(Edge.plain(ins[j - 1], outs[j - 1]))
                elif j > i + 1:
                    edges.append(Edge.plain(ins[j - 1], outs[j - 3]))
            edges.append(Edge.plain(ins[i - 1], ins[i]))
        else:
            outs = [point(part, "p", t, 1, j) for j in range(1, count + 1)]
            for j in range(1, count + 1):
                if j not in (i, i + 1):
                    edges.append(Edge.plain(ins[j - 1], outs[j - 1]))
            site = CrossingSite(t, i, ins[i - 1], ins[i], outs[i - 1], outs[i])
            edges.extend(site.edges(s.smoothing(vertex[crossing])))
            sites.append(site)
            crossing += 1
        ends = outs
    right = tuple(right_point(part, p) for p in range(1, len(ends) + 1))
    for end, p in zip(ends, right):
        edges.append(Edge.plain(end, p))
    return WordDiagram(word, vertex, part, PlanarDiagram.from_edges(edges), left, right, tuple(sites))


def smoothing_at(word: TangleWord, site_index: int, bit: int) -> str:
    s = word.slices[word.crossings[site_index]]
    return s.smoothing(bit)


def flip_edges(word_diagram_: WordDiagram, site_index: int) -> tuple[tuple[Edge, Edge], tuple[Edge, Edge]]:
    """Edges removed and added when the given crossing goes from 0 to 1."""
    site = word_diagram_.sites[site_index]
    before = smoothing_at(word_diagram_.word, site_index, 0)
    after = CAPCUP_SMOOTHING if before == IDENTITY_SMOOTHING else IDENTITY_SMOOTHING
    return site.edges(before), site.edges(after)
