"""
Khovanov's Frobenius algebra Z[X]/X^2 acting on labelled circles of a
planar diagram, and its annular degree-preserving part.

Labels are 0 for "1" (v+ on an essential circle) and 1 for "X" (v-).
"""
from __future__ import annotations
from typing import Optional
from collections.abc import Mapping, Sequence

from dataclasses import dataclass

from qkhlab.groupring import CyclicGroup, GroupRingElem
from qkhlab.tangles import Edge, PlanarDiagram, SEAM
from qkhlab.platform.matchings import PlatformException

Labels = tuple[int, ...]

ONE = 0
X = 1

_LAURENT = CyclicGroup.infinite()


def merge_label(first: int, second: int) -> Optional[int]:
    """1*1 = 1, 1*X = X*1 = X, X*X = 0 (None)."""
    if first == X and second == X:
        return None
    return X if X in (first, second) else ONE


def split_labels(label: int) -> list[tuple[int, int]]:
    """Comultiplication: 1 -> 1(x)X + X(x)1, X -> X(x)X."""
    if label == ONE:
        return [(ONE, X), (X, ONE)]
    return [(X, X)]


@dataclass(frozen=True)
class Surgery:
    """
    Circle bookkeeping of one saddle.

    :param before: indices of the circles touched, in the old diagram.
    :param after: indices of the circles produced, in the new diagram.
    :param carry: old index -> new index for untouched circles.
    """
    source: PlanarDiagram
    target: PlanarDiagram
    before: tuple[int, ...]
    after: tuple[int, ...]
    carry: Mapping[int, int]

    @property
    def is_merge(self) -> bool:
        return len(self.before) == 2 and len(self.after) == 1

    @property
    def is_split(self) -> bool:
        return len(self.before) == 1 and len(self.after) == 2

    def relabel(self, labels: Labels, produced: Sequence[int]) -> Labels:
        new = [ONE] * len(self.target.circles)
        for old, index in self.carry.items():
            new[index] = labels[old]
        for index, label in zip(self.after, produced):
            new[index] = label
        return tuple(new)


def surgery(diagram: PlanarDiagram, remove: Sequence[Edge], add: Sequence[Edge]) -> Surgery:
    """Perform a saddle that swaps the edges `remove` for `add`."""
    before = tuple(sorted({diagram.circle_index(e.head) for e in remove}))
    target = diagram.surgery(remove, add)
    after = tuple(sorted({target.circle_index(e.head) for e in add}))
    position = {circle: j for j, circle in enumerate(target.circles)}
    carry = {i: position[c] for i, c in enumerate(diagram.circles)
             if i not in before and c in position}
    step = Surgery(diagram, target, before, after, carry)
    if not (step.is_merge or step.is_split):
        raise PlatformException(f"saddle touching circles {before} produced {after}")
    return step


def khovanov_terms(step: Surgery, labels: Labels) -> list[Labels]:
    """Images of one generator under the Khovanov saddle map (all coefficients 1)."""
    if step.is_merge:
        first, second = (labels[i] for i in step.before)
        merged = merge_label(first, second)
        return [] if merged is None else [step.relabel(labels, (merged,))]
    return [step.relabel(labels, pair) for pair in split_labels(labels[step.before[0]])]


def annular_degree(diagram: PlanarDiagram, labels: Labels) -> int:
    """Sum over essential circles of +1 for v+ and -1 for v-."""
    return sum(1 if label == ONE else -1
               for circle, label in zip(diagram.circles, labels)
               if diagram.is_essential(circle))


def nesting_order(diagram: PlanarDiagram, indices: Sequence[int]) -> list[int]:
    """Essential circles among `indices`, from the puncture outwards."""
    def seam_position(index: int) -> int:
        steps = diagram.walk(diagram.circles[index])
        return min(edge.head[4] for _, edge, _ in steps if edge.tag == SEAM)
    return sorted((i for i in indices if diagram.is_essential(diagram.circles[i])),
                  key=seam_position)


def annular_terms(step: Surgery, labels: Labels, weighted: bool = False) -> list[tuple[Labels, int]]:
    """
    Images under the annular saddle: Khovanov terms that keep the annular
    degree. With `weighted`, a trivial circle splitting into two essential
    circles sends 1 to v+(inner)v-(outer) + q^-1 v-(inner)v+(outer).

    :return: (labels, q-exponent) pairs.
    """
    degree = annular_degree(step.source, labels)
    bundt = (weighted and step.is_split
             and not step.source.is_essential(step.source.circles[step.before[0]])
             and len(nesting_order(step.target, step.after)) == 2)
    inner = nesting_order(step.target, step.after)[0] if bundt else None
    found = []
    for image in khovanov_terms(step, labels):
        if annular_degree(step.target, image) != degree:
            continue
        exponent = -1 if bundt and image[inner] == X else 0
        found.append((image, exponent))
    return found


def khovanov_saddle(diagram: PlanarDiagram,
                    vector: Mapping[Labels, int],
                    remove: Sequence[Edge],
                    add: Sequence[Edge]) -> tuple[PlanarDiagram, dict[Labels, int]]:
    """Apply a Khovanov saddle to an integer combination of labelings."""
    step = surgery(diagram, remove, add)
    result: dict[Labels, int] = {}
    for labels, coeff in vector.items():
        for image in khovanov_terms(step, labels):
            result[image] = result.get(image, 0) + coeff
    return step.target, {key: value for key, value in result.items() if value}


def annular_saddle(diagram: PlanarDiagram,
                   vector: Mapping[Labels, GroupRingElem],
                   remove: Sequence[Edge],
                   add: Sequence[Edge],
                   weighted: bool = False) -> tuple[PlanarDiagram, dict[Labels, GroupRingElem]]:
    """Apply an annular saddle to a Laurent combination of labelings."""
    step = surgery(diagram, remove, add)
    result: dict[Labels, GroupRingElem] = {}
    for labels, coeff in vector.items():
        for image, exponent in annular_terms(step, labels, weighted):
            term = coeff.shift(exponent)
            result[image] = result[image] + term if image in result else term
    return step.target, {key: value for key, value in result.items() if value}


def laurent(exponent: int = 0, coeff: int = 1) -> GroupRingElem:
    return GroupRingElem.monomial(_LAURENT, exponent, coeff)
