"""
Generators of the annular TQFT on a closure: one label per circle, 1/X
on trivial circles and v+/v- on essential ones.
"""
from __future__ import annotations
from typing import Any
from collections.abc import Sequence

from dataclasses import dataclass
from itertools import product

from qkhlab.groupring import BasisElement
from qkhlab.tangles import AnnularConfig
from qkhlab.platform import Labels, ONE, X

V_PLUS = ONE
V_MINUS = X


@dataclass(frozen=True)
class QLabeling:
    """
    A labelling of the circles of a closure, in the order of
    `config.circles`.
    """
    labels: Labels
    qdeg: int
    adeg: int

    def names(self, config: AnnularConfig) -> list[str]:
        return label_names(config, self.labels)

    def to_json(self, config: AnnularConfig) -> dict[str, Any]:
        return {"labels": self.names(config), "qdeg": self.qdeg, "adeg": self.adeg}


def label_names(config: AnnularConfig, labels: Sequence[int]) -> list[str]:
    names = []
    for circle, label in zip(config.circles, labels):
        if circle.essential:
            names.append("v+" if label == V_PLUS else "v-")
        else:
            names.append("1" if label == ONE else "X")
    return names


def labeling(config: AnnularConfig, labels: Sequence[int]) -> QLabeling:
    """
    :raises QTQFTException: if the labels do not fit the circles.
    """
    if len(labels) != len(config.circles) or any(label not in (ONE, X) for label in labels):
        raise QTQFTException(f"labels {tuple(labels)} do not fit {len(config.circles)} circles")
    qdeg = adeg = 0
    for circle, label in zip(config.circles, labels):
        step = 1 if label == ONE else -1
        if circle.essential:
            adeg += step
        else:
            qdeg += step
    return QLabeling(tuple(labels), qdeg, adeg)


def gen_basis(config: AnnularConfig) -> tuple[BasisElement, ...]:
    """
    All 2^#circles labelings in lexicographic order, as basis elements
    labelled by their label tuples.
    """
    found = []
    for labels in product((ONE, X), repeat=len(config.circles)):
        q = labeling(config, labels)
        found.append(BasisElement(q.labels, q.qdeg, q.adeg))
    return tuple(found)


def basis_in_degree(config: AnnularConfig, adeg: int) -> tuple[BasisElement, ...]:
    return tuple(e for e in gen_basis(config) if e.adeg == adeg)


class QTQFTException(Exception):
    """Errors related to the quantum annular TQFT"""
