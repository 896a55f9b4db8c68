"""
The gluing isomorphism FCK(T1) (x)_Plat FCK(T2) -> FCK(T1 T2) for a
(p,n) word followed by an (n,m) word, computed on explicit bases.

The map is the minimal cobordism a T1 b-bar + b T2 c-bar -> a T1T2 c-bar:
one saddle per arc of b, one per pair of extra closure arcs facing each
other across the seam, then the circles made only of padding strands and
extra arcs are removed.
"""
from __future__ import annotations
from typing import Any, Optional
from collections.abc import Sequence

from dataclasses import dataclass
from functools import cached_property
from itertools import product
import logging

from qkhlab.groupring import (BasisElement,
                              Cokernel,
                              CyclicGroup,
                              GroupRingElem,
                              GroupRingException,
                              GRMatrix,
                              cokernel,
                              invert_matrix)
from qkhlab.tangles import Edge, PlanarDiagram, Point, TangleWord
from qkhlab.platform.bimodule import (CKBimodule,
                                      GenLabel,
                                      IntVector,
                                      build_ck_bimodule,
                                      glue_saddles,
                                      transport)
from qkhlab.platform.closures import Closure, retag
from qkhlab.platform.frobenius import Labels, khovanov_saddle
from qkhlab.platform.matchings import GluingCount, PlatformException, gluing_count

_log = logging.getLogger("qkhlab.platform")

_Z = CyclicGroup.trivial()


def minimal_cobordism(first: Closure,
                      second: Closure,
                      first_labels: Labels,
                      second_labels: Labels) -> tuple[PlanarDiagram, dict[Labels, int]]:
    """
    Saddles joining a T1 b-bar (tagged "x") to b T2 c-bar (tagged "y"):
    the arcs of b, then the innermost extra arcs of both sides in pairs.
    """
    diagram, vector = glue_saddles(first, second, first.b.pairs, first_labels, second_labels)
    outer, inner = first.shape.right_extra, second.shape.left_extra
    for r in range(min(outer, inner)):
        if not vector:
            break
        x = retag(first.extra_arc("right", outer - r), "x")
        y = retag(second.extra_arc("left", inner - r), "y")
        add = (Edge.plain(x.head, y.head), Edge.plain(x.tail, y.tail))
        diagram, vector = khovanov_saddle(diagram, vector, (x, y), add)
    return diagram, vector


def _chain_locator(first: Closure, second: Closure, glued: Closure):
    """
    Points of the glued pieces on the closure of the concatenated word.
    Strand positions move by the difference in padding below; points that
    fall outside the glued closure belong to circles that get removed.
    """
    slices = len(first.layout.word.slices)
    dx = glued.shape.below - first.shape.below
    dy = glued.shape.below - second.shape.below
    points = set(glued.diagram.points)

    def locate(p: Point) -> Optional[Point]:
        part, kind, t, side, position = p
        if part == "x" and kind != "R":
            q = (glued.part, kind, t, side, position + dx)
        elif part == "y" and kind == "p":
            q = (glued.part, kind, t + slices, side, position + dy)
        elif part == "y" and kind == "R":
            q = (glued.part, kind, t, side, position + dy)
        else:
            return None
        return q if q in points else None
    return locate


@dataclass(frozen=True, eq=False)
class Gluing:
    """
    Glued bimodules with the tensor product over the middle platform
    algebra presented by its surviving generators.
    """
    first: CKBimodule
    second: CKBimodule
    glued: CKBimodule

    @property
    def count(self) -> GluingCount:
        return gluing_count(self.first.n, self.first.m, self.second.m)

    @cached_property
    def generators(self) -> tuple[tuple[GenLabel, GenLabel], ...]:
        return tuple((x.label, y.label) for x, y in product(self.first.basis, self.second.basis)
                     if x.label[1] == y.label[0])

    def relations(self) -> list[dict[tuple[GenLabel, GenLabel], GroupRingElem]]:
        """(x alpha) (x) y - x (x) (alpha y) over the middle algebra basis."""
        algebra = self.first.right_algebra
        found = []
        for x, alpha, y in product(self.first.basis, algebra.basis, self.second.basis):
            if alpha.label[0] != x.label[1] or alpha.label[1] != y.label[0]:
                continue
            relation: dict[tuple[GenLabel, GenLabel], GroupRingElem] = {}
            for x2, coeff in self.first.right_action(x.label, alpha.label).items():
                _add(relation, (x2, y.label), coeff)
            for y2, coeff in self.second.left_action(alpha.label, y.label).items():
                _add(relation, (x.label, y2), -coeff)
            if relation:
                found.append(relation)
        return found

    @cached_property
    def quotient(self) -> Cokernel:
        return cokernel(_Z, self.generators, self.relations())

    def glue(self, x: GenLabel, y: GenLabel) -> IntVector:
        """Image of x (x) y in the bimodule of the concatenated word."""
        a, b, x_labels = x
        b2, c, y_labels = y
        if b != b2:
            return {}
        first, second, glued = self.first.closure(a, b), self.second.closure(b, c), self.glued.closure(a, c)
        diagram, vector = minimal_cobordism(first, second, x_labels, y_labels)
        if not vector:
            return {}
        moved = transport(diagram, vector, glued, _chain_locator(first, second, glued), drop=True)
        return {(a, c, labels): coeff for labels, coeff in moved.items()}

    def glue_vector(self, vector: dict[tuple[GenLabel, GenLabel], int]) -> IntVector:
        result: IntVector = {}
        for (x, y), coeff in vector.items():
            for z, value in self.glue(x, y).items():
                result[z] = result.get(z, 0) + coeff * value
        return {key: value for key, value in result.items() if value}


@dataclass(frozen=True, eq=False)
class GluingIso:
    """
    :param matrix: columns are the surviving tensor generators, rows the
                   basis of the glued bimodule.
    """
    gluing: Gluing
    sources: tuple[BasisElement, ...]
    matrix: GRMatrix
    invertible: bool
    degree_preserving: bool

    @property
    def count(self) -> GluingCount:
        return self.gluing.count

    @property
    def ok(self) -> bool:
        return self.invertible and self.degree_preserving

    def to_json(self) -> dict[str, Any]:
        return {"count": self.count.to_json(),
                "rank": len(self.sources),
                "invertible": self.invertible,
                "degree_preserving": self.degree_preserving}


def _add(vector: dict, key, coeff: int) -> None:
    total = vector[key] + coeff if key in vector else GroupRingElem.monomial(_Z, 0, coeff)
    if total:
        vector[key] = total
    else:
        vector.pop(key, None)


def build_gluing(first: TangleWord,
                 second: TangleWord,
                 k: int,
                 bits: Sequence[int] = (),
                 second_bits: Sequence[int] = ()) -> Gluing:
    """
    The second word is taken at the right weight of the first.

    :raises PlatformException: if the boundaries do not match or a weight
                               is out of range.
    """
    if first.n_right != second.n_left:
        raise PlatformException(f"cannot glue a ({first.n_left},{first.n_right}) word "
                                f"to a ({second.n_left},{second.n_right}) word")
    first_module = build_ck_bimodule(first, k, bits)
    return Gluing(first_module,
                  build_ck_bimodule(second, first_module.h, second_bits),
                  build_ck_bimodule(first.concat(second), k, tuple(bits) + tuple(second_bits)))


def gluing_iso(first: TangleWord,
               second: TangleWord,
               k: int,
               bits: Sequence[int] = (),
               second_bits: Sequence[int] = ()) -> GluingIso:
    """
    Basis-level gluing map, certified invertible over Z and
    degree-preserving after the grading shifts.
    """
    gluing = build_gluing(first, second, k, bits, second_bits)
    quotient = gluing.quotient
    if not quotient.is_free:
        raise PlatformException(f"tensor product has {len(quotient.residual)} relations "
                                f"without a unit pivot")
    glued = gluing.glued
    degree = {}
    sources = []
    entries = {}
    for col, (x, y) in enumerate(quotient.survivors):
        qdeg = gluing.first.degree(x) + gluing.second.degree(y)
        sources.append(BasisElement((x, y), qdeg))
        for z, coeff in gluing.glue(x, y).items():
            entries[(glued.index[z], col)] = GroupRingElem.monomial(_Z, 0, coeff)
            degree[(glued.index[z], col)] = glued.degree(z) == qdeg
    matrix = GRMatrix.build(_Z, glued.basis, sources, entries)
    invertible = len(sources) == len(glued.basis)
    if invertible:
        try:
            invert_matrix(matrix)
        except GroupRingException:
            invertible = False
    preserving = all(degree.values())
    _log.info("gluing: rank %d -> %d, invertible=%s, degree preserving=%s",
              len(sources), len(glued.basis), invertible, preserving)
    return GluingIso(gluing, tuple(sources), matrix, invertible, preserving)
