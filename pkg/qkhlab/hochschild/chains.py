"""
Hochschild-Mitchell chains of a platform algebra with coefficients in a
Chen-Khovanov bimodule, with and without the quantum twist on the last
face map.

A chain of degree n is m (x) alpha_1 (x) ... (x) alpha_n with m in M(a_n, a_0)
and alpha_i in A(a_(i-1), a_i); only composable tuples are kept.
"""
from __future__ import annotations
from typing import Any, Optional
from collections.abc import Mapping

from dataclasses import dataclass, field
from functools import cached_property
import logging

from qkhlab.groupring import (BasisElement,
                              Cokernel,
                              CyclicGroup,
                              GradedComplexZG,
                              GroupRingElem,
                              GRMatrix,
                              cokernel)
from qkhlab.platform import CKBimodule, GenLabel, IntVector

Chain = tuple[GenLabel, ...]

_LAURENT = CyclicGroup.infinite()

_log = logging.getLogger("qkhlab.hochschild")


def twist_bimodule(module: CKBimodule, power: int = 1) -> CKBimodule:
    """The bimodule with the left action precomposed with a -> q^(-power*|a|) a."""
    return module.twisted(power)


@dataclass(frozen=True, eq=False)
class QCHComplex:
    """
    Hochschild chains of `module` over its right platform algebra up to
    degree `maxdeg`.

    :param quantum: whether the last face map carries q^(-|alpha_n|).
    """
    module: CKBimodule
    maxdeg: int
    quantum: bool = True
    _products: dict = field(default_factory=dict, repr=False)

    @property
    def algebra(self) -> CKBimodule:
        return self.module.right_algebra

    @cached_property
    def chains(self) -> dict[int, tuple[BasisElement, ...]]:
        algebra = self.algebra.basis
        found: dict[int, list[BasisElement]] = {}
        for m in self.module.basis:
            start, end = m.label[0], m.label[1]
            paths = [((m.label,), end, m.qdeg)]
            for n in range(self.maxdeg + 1):
                found.setdefault(n, []).extend(BasisElement(chain, qdeg, 0, n)
                                               for chain, last, qdeg in paths if last == start)
                if n == self.maxdeg:
                    break
                paths = [(chain + (alpha.label,), alpha.label[1], qdeg + alpha.qdeg)
                         for chain, last, qdeg in paths
                         for alpha in algebra if alpha.label[0] == last]
        _log.debug("Hochschild chains up to %d: ranks %s", self.maxdeg,
                   {n: len(b) for n, b in found.items()})
        return {n: tuple(sorted(basis, key=lambda e: e.label)) for n, basis in found.items()}

    def _multiply(self, x: GenLabel, y: GenLabel) -> IntVector:
        key = (x, y)
        if key not in self._products:
            self._products[key] = self.algebra.left_action(x, y)
        return self._products[key]

    def last_face_exponent(self, alpha: GenLabel) -> int:
        exponent = -self.module.left_action_weight(alpha)
        if self.quantum:
            exponent -= self.algebra.degree(alpha)
        return exponent

    def boundary(self, chain: Chain) -> dict[Chain, GroupRingElem]:
        """The alternating sum of face maps on one basis chain."""
        m, alphas = chain[0], chain[1:]
        n = len(alphas)
        result: dict[Chain, GroupRingElem] = {}

        def add(key: Chain, exponent: int, coeff: int) -> None:
            term = GroupRingElem.monomial(_LAURENT, exponent, coeff)
            total = result[key] + term if key in result else term
            if total:
                result[key] = total
            else:
                result.pop(key, None)

        for image, coeff in self.module.right_action(m, alphas[0]).items():
            add((image,) + alphas[1:], 0, coeff)
        for i in range(1, n):
            for image, coeff in self._multiply(alphas[i - 1], alphas[i]).items():
                add((m,) + alphas[:i - 1] + (image,) + alphas[i + 1:], 0, (-1) ** i * coeff)
        exponent = self.last_face_exponent(alphas[-1])
        for image, coeff in self.module.left_action(alphas[-1], m).items():
            add((image,) + alphas[:-1], exponent, (-1) ** n * coeff)
        return result

    def differential(self, n: int) -> GRMatrix:
        """The boundary from degree n to n-1 over Z[q, q^-1]."""
        cols = self.chains.get(n, ())
        rows = self.chains.get(n - 1, ())
        if n < 1:
            return GRMatrix.zero(_LAURENT, rows, cols)
        index = {e.label: i for i, e in enumerate(rows)}
        entries = []
        for col, element in enumerate(cols):
            for key, value in self.boundary(element.label).items():
                entries.append(((index[key], col), value))
        return GRMatrix.build(_LAURENT, rows, cols, entries)

    def to_graded(self, group: CyclicGroup = _LAURENT) -> GradedComplexZG:
        differentials = {n: self.differential(n).reduce(group)
                         for n in range(1, self.maxdeg + 1)}
        return GradedComplexZG(group, self.chains, differentials)

    def to_json(self) -> dict[str, Any]:
        return {"k": self.module.k, "maxdeg": self.maxdeg, "quantum": self.quantum,
                "ranks": {str(n): len(b) for n, b in sorted(self.chains.items())}}


def qch(module: CKBimodule, maxdeg: int) -> QCHComplex:
    """
    :raises HochschildException: if maxdeg is negative or the bimodule
                                 does not have the same algebra on both sides.
    """
    _check(module, maxdeg)
    return QCHComplex(module, maxdeg, True)


def ch(module: CKBimodule, maxdeg: int) -> QCHComplex:
    """Hochschild chains with the untwisted last face map (q = 1 convention)."""
    _check(module, maxdeg)
    return QCHComplex(module, maxdeg, False)


def _check(module: CKBimodule, maxdeg: int) -> None:
    if maxdeg < 0:
        raise HochschildException(f"Hochschild window must be nonnegative, got {maxdeg}")
    if (module.n, module.k) != (module.m, module.h):
        raise HochschildException(f"a ({module.n},{module.m}) bimodule at k={module.k} is not "
                                  f"a bimodule over one platform algebra")


def trace_relations(module: CKBimodule) -> list[tuple[IntVector, IntVector, int]]:
    """
    (m alpha, alpha m, e) for every degree-one chain m (x) alpha, read as
    [m alpha] = q^e [alpha m] with e = -|alpha| (plus any twist of the
    module); trivial ones are dropped.
    """
    complex_ = qch(module, 1)
    found = []
    for element in complex_.chains.get(1, ()):
        m, alpha = element.label
        right = module.right_action(m, alpha)
        left = module.left_action(alpha, m)
        exponent = complex_.last_face_exponent(alpha)
        if right == left and not exponent:
            continue
        if right or left:
            found.append((right, left, exponent))
    return found


def hh0_quotient(module: CKBimodule, quantum: bool = True) -> Cokernel:
    """qHH_0 (or HH_0) as the cokernel of the first boundary over Z[q, q^-1]."""
    complex_ = QCHComplex(module, 1, quantum)
    generators = [e.label[0] for e in complex_.chains.get(0, ())]
    relations = []
    for column in complex_.differential(1).columns().values():
        relations.append({complex_.chains[0][row].label[0]: value for row, value in column.items()})
    return cokernel(_LAURENT, generators, relations)


def qhh0_map(source: CKBimodule,
             target: CKBimodule,
             images: Mapping[GenLabel, IntVector],
             check: bool = True) -> GRMatrix:
    """
    The map induced on qHH_0 by a bimodule map, in the survivor bases of
    the two cokernels.

    :param images: the map on the basis of `source`.
    :raises HochschildException: if the map does not intertwine the actions
                                 or qHH_0 is not free.
    """
    if check:
        defect = intertwining_defect(source, target, images)
        if defect is not None:
            raise HochschildException(f"map does not commute with the action at {defect}")
    before, after = hh0_quotient(source), hh0_quotient(target)
    if not (before.is_free and after.is_free):
        raise HochschildException("qHH_0 has relations without a unit pivot")
    rows = tuple(BasisElement(g, target.degree(g)) for g in after.survivors)
    cols = tuple(BasisElement(g, source.degree(g)) for g in before.survivors)
    index = {g: i for i, g in enumerate(after.survivors)}
    entries = []
    for col, g in enumerate(before.survivors):
        vector = {h: GroupRingElem.monomial(_LAURENT, 0, c) for h, c in images.get(g, {}).items()}
        for h, value in after.express(vector).items():
            entries.append(((index[h], col), value))
    return GRMatrix.build(_LAURENT, rows, cols, entries)


def intertwining_defect(source: CKBimodule,
                        target: CKBimodule,
                        images: Mapping[GenLabel, IntVector]) -> Optional[tuple[GenLabel, GenLabel]]:
    """First (m, alpha) where f(m alpha) != f(m) alpha or f(alpha m) != alpha f(m)."""
    def apply(vector: IntVector) -> IntVector:
        result: IntVector = {}
        for g, c in vector.items():
            for h, d in images.get(g, {}).items():
                result[h] = result.get(h, 0) + c * d
        return {h: c for h, c in result.items() if c}

    def act(vector: IntVector, action) -> IntVector:
        result: IntVector = {}
        for g, c in vector.items():
            for h, d in action(g).items():
                result[h] = result.get(h, 0) + c * d
        return {h: c for h, c in result.items() if c}

    for m in source.basis:
        image = images.get(m.label, {})
        for alpha in source.right_algebra.basis:
            right = apply(source.right_action(m.label, alpha.label))
            if right != act(image, lambda h: target.right_action(h, alpha.label)):
                return m.label, alpha.label
        for alpha in source.left_algebra.basis:
            left = apply(source.left_action(alpha.label, m.label))
            if left != act(image, lambda h: target.left_action(alpha.label, h)):
                return m.label, alpha.label
    return None


class HochschildException(Exception):
    """Errors related to Hochschild complexes"""
