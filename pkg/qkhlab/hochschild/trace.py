"""
The swap x (x) y -> q^(-|y|) y (x) x between M (x)_A N and N (x)_A M,
and the map it induces on qHH_0.
"""
from __future__ import annotations
from typing import Any
from collections.abc import Mapping

from dataclasses import dataclass
from functools import cached_property
import logging

from qkhlab.groupring import (BasisElement,
                              Cokernel,
                              CyclicGroup,
                              GroupRingElem,
                              GRMatrix,
                              add_into,
                              cokernel)
from qkhlab.platform import CKBimodule, GenLabel
from qkhlab.hochschild.chains import HochschildException

Pair = tuple[GenLabel, GenLabel]
PairVector = dict[Pair, GroupRingElem]

_LAURENT = CyclicGroup.infinite()

_log = logging.getLogger("qkhlab.hochschild")


def _check_pair(first: CKBimodule, second: CKBimodule) -> None:
    if (first.m, first.h) != (second.n, second.k) or (second.m, second.h) != (first.n, first.k):
        raise HochschildException("the bimodules do not tensor into a cycle: "
                                  f"({first.n},{first.k})->({first.m},{first.h}) and "
                                  f"({second.n},{second.k})->({second.m},{second.h})")


def trace_tau(first: CKBimodule, second: CKBimodule,
              vector: Mapping[Pair, GroupRingElem]) -> PairVector:
    """
    x (x) y -> q^(-|y|) y (x) x, extended linearly.

    :raises HochschildException: on a pair that is not a basis element of
                                 the diagonal of M (x) N.
    """
    _check_pair(first, second)
    result: PairVector = {}
    for (x, y), coeff in vector.items():
        if x not in first.index or y not in second.index or x[1] != y[0] or y[1] != x[0]:
            raise HochschildException(f"{(x, y)} is not a diagonal basis pair")
        add_into(result, {(y, x): coeff.shift(-second.degree(y))})
    return result


@dataclass(frozen=True, eq=False)
class TensorTrace:
    """
    qHH_0 of M (x)_A N presented on the diagonal pairs x (x) y: the tensor
    relations xa (x) y = x (x) ay and the trace relations
    x (x) ya = q^(-|a|) ax (x) y.
    """
    first: CKBimodule
    second: CKBimodule

    def __post_init__(self) -> None:
        _check_pair(self.first, self.second)

    def degree(self, pair: Pair) -> int:
        return self.first.degree(pair[0]) + self.second.degree(pair[1])

    @cached_property
    def generators(self) -> tuple[Pair, ...]:
        return tuple((x.label, y.label) for x in self.first.basis for y in self.second.basis
                     if x.label[1] == y.label[0] and y.label[1] == x.label[0])

    @cached_property
    def relations(self) -> list[PairVector]:
        found: list[PairVector] = []
        for x in self.first.basis:
            for y in self.second.basis:
                for alpha in self.first.right_algebra.basis:
                    relation: PairVector = {}
                    for left, c in self.first.right_action(x.label, alpha.label).items():
                        add_into(relation, {(left, y.label): GroupRingElem.monomial(_LAURENT, 0, c)})
                    for right, c in self.second.left_action(alpha.label, y.label).items():
                        add_into(relation, {(x.label, right): GroupRingElem.monomial(_LAURENT, 0, -c)})
                    if relation:
                        found.append(relation)
                for alpha in self.second.right_algebra.basis:
                    relation = {}
                    exponent = -self.second.right_algebra.degree(alpha.label)
                    for right, c in self.second.right_action(y.label, alpha.label).items():
                        add_into(relation, {(x.label, right): GroupRingElem.monomial(_LAURENT, 0, c)})
                    for left, c in self.first.left_action(alpha.label, x.label).items():
                        add_into(relation, {(left, y.label): GroupRingElem.monomial(_LAURENT, exponent, -c)})
                    if relation:
                        found.append(relation)
        return [r for r in found if all(pair in self.generator_set for pair in r)]

    @cached_property
    def generator_set(self) -> frozenset[Pair]:
        return frozenset(self.generators)

    @cached_property
    def quotient(self) -> Cokernel:
        return cokernel(_LAURENT, self.generators, self.relations)

    @property
    def basis(self) -> tuple[BasisElement, ...]:
        return tuple(BasisElement(pair, self.degree(pair)) for pair in self.quotient.survivors)


@dataclass(frozen=True)
class TraceSwap:
    """tau' in the survivor bases, and whether every relation maps to zero."""
    matrix: GRMatrix
    well_defined: bool

    def to_json(self) -> dict[str, Any]:
        return {"well_defined": self.well_defined, "matrix": self.matrix.to_json()}


def trace_tau_prime(first: CKBimodule, second: CKBimodule) -> TraceSwap:
    """
    The map qHH_0(M (x) N) -> qHH_0(N (x) M) induced by `trace_tau`.

    :raises HochschildException: if either quotient is not free.
    """
    source, target = TensorTrace(first, second), TensorTrace(second, first)
    if not (source.quotient.is_free and target.quotient.is_free):
        raise HochschildException("qHH_0 of the tensor product is not free")
    well_defined = all(not target.quotient.express(trace_tau(first, second, relation))
                       for relation in source.relations)
    rows, cols = target.basis, source.basis
    index = {e.label: i for i, e in enumerate(rows)}
    entries = []
    for col, element in enumerate(cols):
        image = trace_tau(first, second, {element.label: GroupRingElem.one(_LAURENT)})
        for pair, value in target.quotient.express(image).items():
            entries.append(((index[pair], col), value))
    _log.debug("trace swap on %d classes, well defined: %s", len(cols), well_defined)
    return TraceSwap(GRMatrix.build(_LAURENT, rows, cols, entries), well_defined)
