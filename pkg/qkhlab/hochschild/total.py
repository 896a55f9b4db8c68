"""
Hochschild chains of a complex of bimodules, and qHH in a window.
"""
from __future__ import annotations
from typing import Optional, Union

import logging

from qkhlab.groupring import (BasisElement,
                              CyclicGroup,
                              GradedComplexZG,
                              GroupRingElem,
                              GRMatrix,
                              HomologySummary,
                              homology)
from qkhlab.tangles import sign_assignment
from qkhlab.platform import CKBimodule, CKComplex
from qkhlab.hochschild.chains import QCHComplex, HochschildException

_LAURENT = CyclicGroup.infinite()

_log = logging.getLogger("qkhlab.hochschild")


def qch_total(complex_: CKComplex, maxdeg: int, quantum: bool = True) -> GradedComplexZG:
    """
    Total complex of qCH_j(A; M_i) for j <= maxdeg over Z[q, q^-1], with
    D = d_M + (-1)^i d_H on the summand at CK degree i, in total degree i + j.
    """
    if maxdeg < 0:
        raise HochschildException(f"Hochschild window must be nonnegative, got {maxdeg}")
    pieces = {v: QCHComplex(module, maxdeg, quantum) for v, module in complex_.vertices.items()}
    chains: dict[int, list[BasisElement]] = {}
    position: dict[tuple, int] = {}
    for v in sorted(pieces):
        p, shift = complex_.hdeg(v), complex_.qshift(v)
        for n, basis in sorted(pieces[v].chains.items()):
            for element in basis:
                found = chains.setdefault(p + n, [])
                position[(v, element.label)] = len(found)
                found.append(BasisElement((v, element.label), element.qdeg + shift, 0, p + n))

    entries: dict[int, list] = {}

    def add(t: int, source: tuple, target: tuple, value: GroupRingElem) -> None:
        entries.setdefault(t, []).append(((position[target], position[source]), value))

    for v, piece in pieces.items():
        p = complex_.hdeg(v)
        for n in range(1, maxdeg + 1):
            for element in piece.chains.get(n, ()):
                for image, value in piece.boundary(element.label).items():
                    add(p + n, (v, element.label), (v, image), -value if p % 2 else value)
    for (v, w), images in complex_.edges.items():
        p, sign = complex_.hdeg(v), sign_assignment(v, w)
        for n, basis in pieces[v].chains.items():
            for element in basis:
                m, alphas = element.label[0], element.label[1:]
                for image, coeff in images.get(m, {}).items():
                    add(p + n, (v, element.label), (w, (image,) + alphas),
                        GroupRingElem.monomial(_LAURENT, 0, sign * coeff))

    frozen = {t: tuple(basis) for t, basis in chains.items()}
    differentials = {t: GRMatrix.build(_LAURENT, frozen[t - 1], frozen[t], found)
                     for t, found in entries.items() if t - 1 in frozen}
    _log.info("Hochschild total complex up to degree %d: ranks %s", maxdeg,
              {t: len(b) for t, b in sorted(frozen.items())})
    return GradedComplexZG(_LAURENT, frozen, differentials)


def window_for(source: Union[CKBimodule, CKComplex], i: int) -> int:
    """Hochschild degrees needed for H_i to be exact after truncation."""
    if isinstance(source, CKComplex):
        lowest = min(source.hdeg(v) for v in source.vertices)
        return max(i + 1 - lowest, 0)
    return i + 1


def qhh(source: Union[CKBimodule, CKComplex],
        i: int,
        group: CyclicGroup = CyclicGroup.trivial(),
        window: Optional[int] = None) -> HomologySummary:
    """
    qHH_i of a bimodule (or total degree i of a complex of bimodules), over
    a finite quotient Z[G] of Z[q, q^-1].

    :param window: Hochschild truncation; `window_for` when omitted. A
                   smaller window is refused since H_i would be wrong.
    :raises HochschildException: if the window is too small.
    :raises UnsupportedHomologyError: if G is infinite.
    """
    needed = window_for(source, i)
    window = needed if window is None else window
    if window < needed:
        raise HochschildException(f"H_{i} needs Hochschild degrees up to {needed}, window {window}")
    if isinstance(source, CKComplex):
        complex_ = qch_total(source, window).reduce(group)
    else:
        if i < 0:
            raise HochschildException("Hochschild homology of a bimodule lives in degrees >= 0")
        complex_ = QCHComplex(source, window).to_graded(group)
    return homology(complex_, i)
