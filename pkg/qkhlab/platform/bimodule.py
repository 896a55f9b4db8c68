"""
Chen-Khovanov bimodules of planar tangles (and of cube vertices of
tangles with crossings), with the platform algebras acting on both sides.

A basis element is labelled (a, b, labels): indices of the left and right
matchings and a 0/1 label per circle of the closure a T b-bar.
"""
from __future__ import annotations
from typing import Any, Optional
from collections.abc import Callable, Mapping, Sequence

from dataclasses import dataclass, field, replace
from functools import cached_property
import logging

from qkhlab.groupring import BasisElement, CyclicGroup, GroupRingElem, GRMatrix
from qkhlab.tangles import Edge, PlanarDiagram, Point, TangleWord, flip_edges
from qkhlab.platform.closures import Closure, build_closure, retag
from qkhlab.platform.frobenius import Labels, ONE, khovanov_saddle
from qkhlab.platform.matchings import (PlatformMatching,
                                       PlatformException,
                                       enumerate_matchings,
                                       right_weight,
                                       shift_s)

GenLabel = tuple[int, int, Labels]
IntVector = dict[GenLabel, int]

_log = logging.getLogger("qkhlab.platform")


def _tagged(p: Point, part: str) -> Point:
    return (part,) + p[1:]


def transport(diagram: PlanarDiagram,
              vector: Mapping[Labels, int],
              target: Closure,
              locate: str | Callable[[Point], Optional[Point]],
              drop: bool = False) -> dict[Labels, int]:
    """
    Move labelings of `diagram` onto the circles of `target` and project
    to the quotient.

    :param locate: sends a point of `diagram` to the point of `target` it
                   stands for, or to None; a string keeps the points
                   tagged with it.
    :param drop: remove circles with no point in `target`; a term survives
                 only if all of them carry 1.
    :raises PlatformException: if the circles do not correspond.
    """
    if isinstance(locate, str):
        part = locate
        locate = lambda p: _tagged(p, target.part) if p[0] == part else None
    image: list[Optional[int]] = []
    for circle in diagram.circles:
        mine = next((q for q in map(locate, sorted(circle)) if q is not None), None)
        if mine is None and not drop:
            raise PlatformException("glued circle carries no point of the target")
        image.append(None if mine is None else target.circle_containing(mine))
    size = len(target.diagram.circles)
    if sorted(i for i in image if i is not None) != list(range(size)):
        raise PlatformException(f"glued diagram has {len(image)} circles, "
                                f"target closure {size}")
    result: dict[Labels, int] = {}
    for labels, coeff in vector.items():
        if any(new is None and label != ONE for label, new in zip(labels, image)):
            continue
        moved = [0] * size
        for label, new in zip(labels, image):
            if new is not None:
                moved[new] = label
        moved = tuple(moved)
        if target.allows(moved):
            result[moved] = result.get(moved, 0) + coeff
    return {key: value for key, value in result.items() if value}


def glue_saddles(first: Closure,
                 second: Closure,
                 arcs: Sequence[tuple[int, int]],
                 first_labels: Labels,
                 second_labels: Labels) -> tuple[PlanarDiagram, dict[Labels, int]]:
    """
    Place `first` (tagged "x") to the left of `second` (tagged "y") and do
    one saddle per arc, joining the right arcs of `first` to the left arcs
    of `second`.
    """
    diagram = first.diagram.with_part("x").union(second.diagram.with_part("y"))
    vector = {tuple(first_labels) + tuple(second_labels): 1}
    for i, j in arcs:
        remove = (retag(first.right_arc(i, j), "x"), retag(second.left_arc(i, j), "y"))
        add = tuple(Edge.plain(_tagged(first.right_point(p), "x"), _tagged(second.left_point(p), "y"))
                    for p in (i, j))
        diagram, vector = khovanov_saddle(diagram, vector, remove, add)
        if not vector:
            break
    return diagram, vector


@dataclass(frozen=True, eq=False)
class CKBimodule:
    """
    The bimodule FCK^k of a tangle word at one cube vertex, over the
    platform algebras of weight k on the left and h(k) on the right.

    :param word: the tangle word; crossings are resolved by `bits`.
    :param k: left platform weight.
    :param bits: cube vertex (empty for planar words).
    :param left_twist: the left action is scaled by q^(-left_twist*|alpha|).
    """
    word: TangleWord
    k: int
    bits: tuple[int, ...] = ()
    left_twist: int = 0
    _closures: dict[tuple[int, int], Closure] = field(default_factory=dict, repr=False)

    @property
    def n(self) -> int:
        return self.word.n_left

    @property
    def m(self) -> int:
        return self.word.n_right

    @property
    def h(self) -> int:
        return right_weight(self.n, self.m, self.k)

    @property
    def shift(self) -> int:
        return shift_s(self.n, self.m)

    @property
    def left_matchings(self) -> tuple[PlatformMatching, ...]:
        return enumerate_matchings(self.n, self.k)

    @property
    def right_matchings(self) -> tuple[PlatformMatching, ...]:
        return enumerate_matchings(self.m, self.h)

    def closure(self, a: int, b: int) -> Closure:
        key = (a, b)
        if key not in self._closures:
            self._closures[key] = build_closure(self.word, self.left_matchings[a],
                                                self.right_matchings[b], self.bits)
        return self._closures[key]

    @cached_property
    def basis(self) -> tuple[BasisElement, ...]:
        found = []
        for a in range(len(self.left_matchings)):
            for b in range(len(self.right_matchings)):
                for labels in self.closure(a, b).generators():
                    found.append(BasisElement((a, b, labels), Closure.chi(labels) + self.shift))
        _log.debug("bimodule of %d slices at %s, k=%d: rank %d",
                   len(self.word.slices), self.bits, self.k, len(found))
        return tuple(found)

    @cached_property
    def index(self) -> dict[GenLabel, int]:
        return {element.label: i for i, element in enumerate(self.basis)}

    def summand(self, a: int, b: int) -> list[BasisElement]:
        return [e for e in self.basis if e.label[:2] == (a, b)]

    @cached_property
    def left_algebra(self) -> CKBimodule:
        if self.word.is_planar and self.word == TangleWord.identity(self.n) and not self.left_twist:
            return self
        return CKBimodule(TangleWord.identity(self.n), self.k)

    @cached_property
    def right_algebra(self) -> CKBimodule:
        if self.word.is_planar and self.word == TangleWord.identity(self.m) and not self.left_twist:
            return self
        return CKBimodule(TangleWord.identity(self.m), self.h)

    def degree(self, label: GenLabel) -> int:
        return self.basis[self.index[label]].qdeg

    def left_action(self, x: GenLabel, y: GenLabel) -> IntVector:
        """x * y for x in the left platform algebra, as an integer vector."""
        a, c, x_labels = x
        c2, b, y_labels = y
        if c != c2:
            return {}
        first = self.left_algebra.closure(a, c)
        diagram, vector = glue_saddles(first, self.closure(c, b), first.b.pairs,
                                       x_labels, y_labels)
        if not vector:
            return {}
        moved = transport(diagram, vector, self.closure(a, b), "y")
        return {(a, b, labels): coeff for labels, coeff in moved.items()}

    def right_action(self, y: GenLabel, x: GenLabel) -> IntVector:
        """y * x for x in the right platform algebra."""
        a, c, y_labels = y
        c2, b, x_labels = x
        if c != c2:
            return {}
        second = self.right_algebra.closure(c, b)
        diagram, vector = glue_saddles(self.closure(a, c), second, second.a.pairs,
                                       y_labels, x_labels)
        if not vector:
            return {}
        moved = transport(diagram, vector, self.closure(a, b), "x")
        return {(a, b, labels): coeff for labels, coeff in moved.items()}

    def left_action_weight(self, x: GenLabel) -> int:
        """q-exponent the twist attaches to the left action of x."""
        if not self.left_twist:
            return 0
        return self.left_twist * self.left_algebra.degree(x)

    def twisted(self, power: int = 1) -> CKBimodule:
        """The bimodule with its left action twisted by q^(-power*|alpha|)."""
        return replace(self, left_twist=self.left_twist + power, _closures=self._closures)

    def left_matrix(self, x: GenLabel, group: CyclicGroup) -> GRMatrix:
        """Left multiplication by x as a matrix over Z[G], twist included."""
        return self._action_matrix(group, lambda y: self.left_action(x, y),
                                   -self.left_action_weight(x))

    def right_matrix(self, x: GenLabel, group: CyclicGroup) -> GRMatrix:
        return self._action_matrix(group, lambda y: self.right_action(y, x), 0)

    def _action_matrix(self, group: CyclicGroup, act, exponent: int) -> GRMatrix:
        entries = {}
        for j, element in enumerate(self.basis):
            for label, coeff in act(element.label).items():
                entries[(self.index[label], j)] = GroupRingElem.monomial(group, exponent, coeff)
        return GRMatrix.build(group, self.basis, self.basis, entries)

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "m": self.m, "k": self.k, "h": self.h,
                "bits": list(self.bits),
                "left_matchings": [a.to_json() for a in self.left_matchings],
                "right_matchings": [b.to_json() for b in self.right_matchings],
                "basis": [e.to_json() for e in self.basis]}


def build_ck_bimodule(word: TangleWord, k: int, bits: Optional[Sequence[int]] = None) -> CKBimodule:
    """
    :param word: a tangle word; planar unless `bits` picks a cube vertex.
    :param k: left platform weight.
    :raises PlatformException: if k is outside the allowed range.
    """
    right_weight(word.n_left, word.n_right, k)
    if bits is None:
        if not word.is_planar:
            raise PlatformException("a word with crossings needs a cube vertex")
        bits = ()
    return CKBimodule(word, k, tuple(bits))


def saddle_map(source: CKBimodule, target: CKBimodule, crossing: int) -> dict[GenLabel, IntVector]:
    """
    The bimodule map of the saddle flipping `crossing` from 0 to 1, on
    every basis element of `source`.
    """
    if source.word != target.word or source.k != target.k:
        raise PlatformException("saddle map between bimodules of different tangles")
    images: dict[GenLabel, IntVector] = {}
    for element in source.basis:
        a, b, labels = element.label
        closure = source.closure(a, b)
        remove, add = flip_edges(closure.layout, crossing)
        diagram, vector = khovanov_saddle(closure.diagram, {labels: 1}, remove, add)
        moved = transport(diagram, vector, target.closure(a, b), closure.part) if vector else {}
        images[element.label] = {(a, b, image): coeff for image, coeff in moved.items()}
    return images
