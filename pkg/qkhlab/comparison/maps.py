"""
The comparison map from Hochschild chains of the Chen-Khovanov complex
to the quantum annular complex of the closure.

On a diagonal summand M(a,a) the map is C_a after A_a: A_a wraps every
arc of a around the puncture (the multisaddle from T-hat a a-bar to the
annular closure of T-hat), and C_a keeps the labelings with v- on the
strands added below the word and v+ on those above, read on the closure
of the word. Hochschild chains of positive degree map to zero.
"""
from __future__ import annotations
from typing import Any
from collections.abc import Sequence

from dataclasses import dataclass
from itertools import product
import logging

from qkhlab.groupring import (BasisElement,
                              ChainMapZG,
                              CyclicGroup,
                              GradedComplexZG,
                              GRMatrix,
                              GroupRingElem)
from qkhlab.tangles import Edge, PlanarDiagram, TangleWord, closure_config
from qkhlab.platform import CKBimodule, Closure, ONE, X, build_ck_complex, surgery
from qkhlab.qtqft import gen_basis, identify_basis, qakc, restrict_to_word, wrap_closure, wrap_order
from qkhlab.hochschild import qch_total

_LAURENT = CyclicGroup.infinite()

_log = logging.getLogger("qkhlab.comparison")


def wrapped_diagram(closure: Closure) -> PlanarDiagram:
    """The annular closure of T-hat reached from T-hat a a-bar by the wrapping saddles."""
    diagram = closure.diagram
    for i, j in wrap_order(closure.a.pairs):
        remove = (closure.left_arc(i, j), closure.right_arc(i, j))
        add = (Edge.seam(closure.right_point(i), closure.left_point(i)),
               Edge.seam(closure.right_point(j), closure.left_point(j)))
        diagram = surgery(diagram, remove, add).target
    return diagram


def _labelings(diagram: PlanarDiagram) -> tuple[BasisElement, ...]:
    return tuple(BasisElement(labels, sum(1 if label == ONE else -1 for label in labels))
                 for labels in product((ONE, X), repeat=len(diagram.circles)))


def _module(word: TangleWord, k: int, v: Sequence[int]) -> CKBimodule:
    return CKBimodule(word, k, tuple(v))


def a_map(word: TangleWord, k: int, a: int, v: Sequence[int] = (),
          weighted: bool = True) -> GRMatrix:
    """
    A_a on the diagonal summand M_v(a,a), into the labelings of the
    wrapped diagram, over Z[q, q^-1].

    :param weighted: with False every bundt split has coefficient 1 (the
                     classical map).
    """
    module = _module(word, k, v)
    closure = module.closure(a, a)
    cols = tuple(module.summand(a, a))
    rows = _labelings(wrapped_diagram(closure))
    index = {e.label: i for i, e in enumerate(rows)}
    entries = []
    for col, element in enumerate(cols):
        _, vector = wrap_closure(closure, element.label[2], weighted)
        for labels, value in vector.items():
            entries.append(((index[labels], col), value))
    return GRMatrix.build(_LAURENT, rows, cols, entries)


def c_map(word: TangleWord, k: int, a: int, v: Sequence[int] = ()) -> GRMatrix:
    """
    C_a from the labelings of the wrapped diagram to the generators of
    the closure of the word.

    :raises BasisIdentificationError: if the circles do not correspond.
    """
    closure = _module(word, k, v).closure(a, a)
    diagram = wrapped_diagram(closure)
    config = closure_config(word, v)
    rows = gen_basis(config)
    cols = _labelings(diagram)
    index = {e.label: i for i, e in enumerate(rows)}
    one = GroupRingElem.one(_LAURENT)
    entries = []
    for col, element in enumerate(cols):
        for labels, value in restrict_to_word(closure, diagram, {element.label: one}, config).items():
            entries.append(((index[labels], col), value))
    return GRMatrix.build(_LAURENT, rows, cols, entries)


@dataclass(frozen=True, eq=False)
class XiMap:
    """
    The comparison chain map with the Hochschild window it was built in.
    Homology of its cone is exact in total degrees up to `lowest + window`.
    Hochschild chains sit in adeg 0 and every block lands in adeg
    `adeg` = n - 2k, so the map moves adeg uniformly by that amount.
    """
    word: TangleWord
    k: int
    window: int
    lowest: int
    chain_map: ChainMapZG

    @property
    def source(self) -> GradedComplexZG:
        return self.chain_map.source

    @property
    def target(self) -> GradedComplexZG:
        return self.chain_map.target

    @property
    def adeg(self) -> int:
        return self.word.n_left - 2 * self.k

    def certified_degrees(self) -> list[int]:
        """Cone degrees whose homology the truncated source computes correctly."""
        cone = set(self.chain_map.degrees()) | {i + 1 for i in self.source.degrees()}
        return sorted(i for i in cone if i <= self.lowest + self.window)

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "adeg": self.adeg, "window": self.window,
                "source_ranks": {str(i): len(self.source.basis(i)) for i in self.source.degrees()},
                "target_ranks": {str(i): len(self.target.basis(i)) for i in self.target.degrees()}}


def build_xi(word: TangleWord, k: int, window: int = 2, workers: int = 1) -> XiMap:
    """
    Xi from the Hochschild total complex of the CK complex of `word` at
    weight k to the quantum annular complex in annular degree n - 2k.
    Degree-zero chains go to their qHH_0 images, the rest to zero.

    :raises ComparisonException: for a negative window.
    :raises QTQFTException: for words that are not (n,n).
    """
    if window < 0:
        raise ComparisonException(f"Hochschild window must be nonnegative, got {window}")
    complex_ = build_ck_complex(word, k, workers)
    source = qch_total(complex_, window)
    target = qakc(word, annular_degree=word.n_left - 2 * k, method="oracle", workers=workers)
    components = {}
    for t in source.degrees():
        rows = target.basis(t)
        index = {e.label: i for i, e in enumerate(rows)}
        entries = []
        for col, element in enumerate(source.basis(t)):
            v, chain = element.label
            if len(chain) != 1:
                continue
            for labels, value in identify_basis(word, k, v).images.get(chain[0], {}).items():
                entries.append(((index[(v, labels)], col), value))
        components[t] = GRMatrix.build(_LAURENT, rows, source.basis(t), entries)
    lowest = min(complex_.hdeg(v) for v in complex_.vertices)
    _log.info("Xi for k=%d with window %d: %d nonzero components", k, window,
              sum(1 for m in components.values() if not m.is_zero()))
    return XiMap(word, k, window, lowest, ChainMapZG(source, target, components))


class ComparisonException(Exception):
    """Errors related to the comparison map"""
