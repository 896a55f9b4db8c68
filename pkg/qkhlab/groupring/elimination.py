"""
Unit-pivot elimination over Z[G]: cokernels of relation lists and
inverses of square matrices whose pivots can be chosen among the units
+-q^k.
"""
from __future__ import annotations
from typing import Hashable
from collections.abc import Iterable, Mapping, Sequence

from dataclasses import dataclass, field
import logging

from qkhlab.groupring.group import CyclicGroup, GroupRingElem, GroupRingException
from qkhlab.groupring.matrix import GRMatrix

Vector = dict[Hashable, GroupRingElem]

_log = logging.getLogger("qkhlab.groupring")


def add_into(target: Vector, source: Mapping[Hashable, GroupRingElem],
             scalar: GroupRingElem | int = 1) -> None:
    """target += scalar * source, dropping zeros."""
    for key, value in source.items():
        term = value * scalar
        total = target[key] + term if key in target else term
        if total:
            target[key] = total
        else:
            target.pop(key, None)


@dataclass
class Cokernel:
    """
    Quotient of the free module on `generators` by a list of relations.

    `expressions[g]` writes every generator as a combination of the
    survivors modulo the relations. `residual` holds the relations left
    without a unit pivot; the quotient is free on the survivors only when
    it is empty.
    """
    group: CyclicGroup
    generators: tuple[Hashable, ...]
    survivors: tuple[Hashable, ...]
    expressions: dict[Hashable, Vector]
    residual: list[Vector] = field(default_factory=list)

    @property
    def is_free(self) -> bool:
        return not self.residual

    def express(self, vector: Mapping[Hashable, GroupRingElem]) -> Vector:
        """Class of `vector` written in the survivors."""
        result: Vector = {}
        for g, coeff in vector.items():
            add_into(result, self.expressions[g], coeff)
        return result


def _substitute(relation: Vector, solved: Mapping[Hashable, Vector]) -> Vector:
    result: Vector = {}
    for g, coeff in relation.items():
        if g in solved:
            add_into(result, solved[g], coeff)
        else:
            add_into(result, {g: coeff})
    return result


def cokernel(group: CyclicGroup,
             generators: Sequence[Hashable],
             relations: Iterable[Mapping[Hashable, GroupRingElem]]) -> Cokernel:
    """
    Eliminate generators with unit pivots until no relation has one.

    Pivots are taken at the latest generator (in the given order) carrying
    a unit coefficient, so earlier generators tend to survive.

    :param generators: ordered generators.
    :param relations: vectors declared zero in the quotient.
    """
    order = {g: i for i, g in enumerate(generators)}
    solved: dict[Hashable, Vector] = {}
    pending = [dict(r) for r in relations]
    while pending:
        progress = False
        stuck = []
        for relation in pending:
            relation = _substitute(relation, solved)
            if not relation:
                continue
            units = [g for g, c in relation.items() if c.unit_monomial() is not None]
            if not units:
                stuck.append(relation)
                continue
            pivot = max(units, key=order.__getitem__)
            inverse = -relation.pop(pivot).inverse()
            expression = {g: c * inverse for g, c in relation.items()}
            for other, value in solved.items():
                if pivot in value:
                    coeff = value.pop(pivot)
                    add_into(value, expression, coeff)
            solved[pivot] = expression
            progress = True
        pending = stuck
        if not progress:
            break
    survivors = tuple(g for g in generators if g not in solved)
    one = GroupRingElem.one(group)
    expressions = {g: dict(solved[g]) if g in solved else {g: one} for g in generators}
    _log.debug("cokernel: %d generators, %d pivots, %d residual relations",
               len(generators), len(solved), len(pending))
    return Cokernel(group, tuple(generators), survivors, expressions, pending)


def invert_matrix(matrix: GRMatrix) -> GRMatrix:
    """
    Inverse of a square matrix by Gauss-Jordan elimination with unit pivots.

    :raises GroupRingException: if some column offers no unit pivot.
    """
    size, width = matrix.shape
    if size != width:
        raise GroupRingException(f"cannot invert a {size}x{width} matrix")
    group = matrix.group
    one = GroupRingElem.one(group)
    rows: list[Vector] = [{} for _ in range(size)]
    for (i, j), value in matrix.entries.items():
        rows[i][j] = value
    inverse: list[Vector] = [{i: one} for i in range(size)]
    for col in range(size):
        pivot = next((r for r in range(col, size)
                      if col in rows[r] and rows[r][col].unit_monomial() is not None), None)
        if pivot is None:
            raise GroupRingException(f"no unit pivot in column {col} "
                                     f"({matrix.cols[col].label!r})")
        rows[col], rows[pivot] = rows[pivot], rows[col]
        inverse[col], inverse[pivot] = inverse[pivot], inverse[col]
        scale = rows[col][col].inverse()
        rows[col] = {j: v * scale for j, v in rows[col].items()}
        inverse[col] = {j: v * scale for j, v in inverse[col].items()}
        for r in range(size):
            if r != col and col in rows[r]:
                factor = -rows[r][col]
                add_into(rows[r], rows[col], factor)
                add_into(inverse[r], inverse[col], factor)
    return GRMatrix.build(group, matrix.cols, matrix.rows,
                          {(i, j): value for i, row in enumerate(inverse) for j, value in row.items()})
