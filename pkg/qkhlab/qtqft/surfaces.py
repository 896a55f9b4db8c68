"""
Evaluation of closed surfaces in the quantum annulus.
"""
from __future__ import annotations
from typing import Any

from dataclasses import dataclass

from qkhlab.groupring import CyclicGroup, GroupRingElem
from qkhlab.qtqft.labels import QTQFTException, V_MINUS, V_PLUS

_LAURENT = CyclicGroup.infinite()


@dataclass(frozen=True)
class ClosedSurface:
    """
    :param winding: how many times the surface wraps the membrane.
    :param offset: the exponent l of the membrane bookkeeping.
    """
    genus: int
    dots: int = 0
    winding: int = 0
    offset: int = 0

    def __post_init__(self) -> None:
        if min(self.genus, self.dots, self.winding) < 0:
            raise QTQFTException(f"negative data in {self}")

    def to_json(self) -> dict[str, Any]:
        return {"genus": self.genus, "dots": self.dots,
                "winding": self.winding, "offset": self.offset}


def eval_closed(surface: ClosedSurface, group: CyclicGroup = _LAURENT) -> GroupRingElem:
    """Value of a closed component; only the dotted sphere and the undotted torus survive."""
    if surface.genus == 0:
        if surface.dots == 1:
            return GroupRingElem.monomial(group, surface.offset)
        return GroupRingElem.zero(group)
    if surface.genus == 1 and surface.dots == 0:
        return GroupRingElem.from_mapping(group, [(surface.offset, 1),
                                                  (surface.offset + 2 * surface.winding, 1)])
    return GroupRingElem.zero(group)


def bundt_coevaluation() -> dict[tuple[int, int], GroupRingElem]:
    """The annulus created around the puncture: inner label first."""
    return {(V_PLUS, V_MINUS): GroupRingElem.one(_LAURENT),
            (V_MINUS, V_PLUS): GroupRingElem.monomial(_LAURENT, -1)}


def evaluation_merge(inner: int, outer: int) -> GroupRingElem:
    """Pairing of two nested essential circles capped off across the membrane."""
    if inner == V_PLUS and outer == V_MINUS:
        return GroupRingElem.monomial(_LAURENT, 1)
    if inner == V_MINUS and outer == V_PLUS:
        return GroupRingElem.one(_LAURENT)
    return GroupRingElem.zero(_LAURENT)


def bundt_torus() -> GroupRingElem:
    """Coevaluation followed by evaluation: the torus wrapping the puncture once."""
    total = GroupRingElem.zero(_LAURENT)
    for (inner, outer), coeff in bundt_coevaluation().items():
        total = total + coeff * evaluation_merge(inner, outer)
    return total


def torus_offset() -> int:
    """The offset l for which the bundt torus equals eval_closed(torus with w=1)."""
    return min(bundt_torus().as_dict())
