"""
The free G-Burnside category on orbit data: free G-sets are stored by a
transversal, correspondences by their elements over the transversal with
a relative exponent in Z, reduced to G only when linearized.
"""
from __future__ import annotations
from typing import Any, Hashable
from collections.abc import Mapping

from collections import Counter
from dataclasses import dataclass
from functools import cached_property

from qkhlab.groupring import BasisElement, CyclicGroup, GroupRingElem, GRMatrix, label_to_json

_LAURENT = CyclicGroup.infinite()


@dataclass(frozen=True)
class GSet:
    """transversal x G with G acting freely on the second factor."""
    transversal: tuple[BasisElement, ...]

    @cached_property
    def labels(self) -> frozenset:
        return frozenset(e.label for e in self.transversal)

    def __len__(self) -> int:
        return len(self.transversal)

    def to_json(self) -> list:
        return [e.to_json() for e in self.transversal]


@dataclass(frozen=True)
class CorrElement:
    """
    One orbit of elements of a correspondence: the element over (source, 0)
    lies over (target, exponent). `tag` tells parallel elements apart.
    """
    source: Hashable
    target: Hashable
    exponent: int
    tag: Hashable = "o"

    @property
    def key(self) -> tuple[Hashable, Hashable, int]:
        return self.source, self.target, self.exponent

    def to_json(self) -> dict[str, Any]:
        return {"source": label_to_json(self.source), "target": label_to_json(self.target),
                "exponent": self.exponent, "tag": label_to_json(self.tag)}


@dataclass(frozen=True, eq=False)
class Correspondence:
    """
    A span source <- A -> target of free G-sets.

    :raises BurnsideException: if two elements coincide as tagged records or
                               an element leaves the two transversals.
    """
    source: GSet
    target: GSet
    elements: tuple[CorrElement, ...]

    def __post_init__(self) -> None:
        repeated = [e for e, n in Counter(self.elements).items() if n > 1]
        if repeated:
            raise BurnsideException(f"correspondence repeats the element {repeated[0]}")
        for e in self.elements:
            if e.source not in self.source.labels or e.target not in self.target.labels:
                raise BurnsideException(f"element {e} does not lie over the two G-sets")

    @classmethod
    def identity(cls, gset: GSet) -> Correspondence:
        return cls(gset, gset, tuple(CorrElement(e.label, e.label, 0, "1") for e in gset.transversal))

    def over(self, source: Hashable) -> tuple[CorrElement, ...]:
        return tuple(e for e in self.elements if e.source == source)

    def counts(self) -> Counter:
        return Counter(e.key for e in self.elements)

    def to_json(self) -> dict[str, Any]:
        return {"size": len(self.elements), "elements": [e.to_json() for e in self.elements]}


def compose(second: Correspondence, first: Correspondence) -> Correspondence:
    """
    `second` after `first`: pairs over a common middle label, exponents
    added, tagged by both factors.

    :raises BurnsideException: if the middle G-sets differ.
    """
    if first.target.labels != second.source.labels:
        raise BurnsideException("correspondences do not compose: middle G-sets differ")
    by_source: dict[Hashable, list[CorrElement]] = {}
    for b in second.elements:
        by_source.setdefault(b.source, []).append(b)
    elements = tuple(CorrElement(a.source, b.target, a.exponent + b.exponent,
                                 (b.source, b.tag, a.tag))
                     for a in first.elements for b in by_source.get(a.target, ()))
    return Correspondence(first.source, second.target, elements)


def linearize(correspondence: Correspondence, group: CyclicGroup = _LAURENT) -> GRMatrix:
    """Entry (y, x) is the sum of q^exponent over elements from x to y."""
    rows, cols = correspondence.target.transversal, correspondence.source.transversal
    row = {e.label: i for i, e in enumerate(rows)}
    col = {e.label: j for j, e in enumerate(cols)}
    return GRMatrix.build(group, rows, cols,
                          [((row[e.target], col[e.source]), GroupRingElem.monomial(group, e.exponent))
                           for e in correspondence.elements])


@dataclass(frozen=True, eq=False)
class TwoMorphism:
    """
    A bijection between the elements of two parallel correspondences
    preserving source, target and exponent.

    :raises BurnsideException: if `mapping` is not such a bijection.
    """
    source: Correspondence
    target: Correspondence
    mapping: Mapping[CorrElement, CorrElement]

    def __post_init__(self) -> None:
        if set(self.mapping) != set(self.source.elements):
            raise BurnsideException("two-morphism is not defined on every element")
        if Counter(self.mapping.values()) != Counter(self.target.elements):
            raise BurnsideException("two-morphism is not a bijection onto the target")
        for a, b in self.mapping.items():
            if a.key != b.key:
                raise BurnsideException(f"two-morphism sends {a} to {b} across different keys")

    def __call__(self, element: CorrElement) -> CorrElement:
        return self.mapping[element]

    def inverse(self) -> TwoMorphism:
        return TwoMorphism(self.target, self.source, {b: a for a, b in self.mapping.items()})


class BurnsideException(Exception):
    """Errors related to Burnside correspondences"""
