"""
Platform algebras Plat^{n,k}: the bimodule of the identity tangle with its
left action read as multiplication.
"""
from __future__ import annotations
from typing import Any, Optional
from collections.abc import Iterable

from dataclasses import dataclass
from functools import cached_property
from itertools import product
import logging

from qkhlab.groupring import BasisElement
from qkhlab.tangles import TangleWord
from qkhlab.platform.bimodule import CKBimodule, GenLabel, IntVector
from qkhlab.platform.frobenius import ONE
from qkhlab.platform.matchings import PlatformMatching, PlatformException

_log = logging.getLogger("qkhlab.platform")


@dataclass(frozen=True, eq=False)
class PlatformAlgebra:
    """
    Basis elements are (a, b, labels) for the closure a b-bar; e_a is the
    all-ones labelling of a a-bar.
    """
    n: int
    k: int
    module: CKBimodule

    @property
    def basis(self) -> tuple[BasisElement, ...]:
        return self.module.basis

    @property
    def matchings(self) -> tuple[PlatformMatching, ...]:
        return self.module.left_matchings

    @cached_property
    def idempotents(self) -> tuple[GenLabel, ...]:
        found = []
        for a in range(len(self.matchings)):
            circles = len(self.module.closure(a, a).diagram.circles)
            found.append((a, a, (ONE,) * circles))
        return tuple(found)

    def multiply(self, x: GenLabel, y: GenLabel) -> IntVector:
        return self.module.left_action(x, y)

    def multiply_vectors(self, x: IntVector, y: IntVector) -> IntVector:
        result: IntVector = {}
        for (u, s), (v, t) in product(x.items(), y.items()):
            for label, coeff in self.multiply(u, v).items():
                result[label] = result.get(label, 0) + s * t * coeff
        return {key: value for key, value in result.items() if value}

    @property
    def unit(self) -> IntVector:
        return {e: 1 for e in self.idempotents}

    @cached_property
    def table(self) -> dict[tuple[GenLabel, GenLabel], IntVector]:
        """Nonzero products of basis elements."""
        found = {}
        for x, y in product(self.basis, repeat=2):
            value = self.multiply(x.label, y.label)
            if value:
                found[(x.label, y.label)] = value
        _log.debug("Plat^{%d,%d}: rank %d, %d nonzero products",
                   self.n, self.k, len(self.basis), len(found))
        return found

    def associativity_defect(self, triples: Optional[Iterable[tuple[GenLabel, GenLabel, GenLabel]]] = None
                             ) -> Optional[tuple[GenLabel, GenLabel, GenLabel]]:
        """First triple with (xy)z != x(yz), or None."""
        if triples is None:
            labels = [e.label for e in self.basis]
            triples = product(labels, repeat=3)
        for x, y, z in triples:
            left = self.multiply_vectors(self.multiply(x, y), {z: 1})
            right = self.multiply_vectors({x: 1}, self.multiply(y, z))
            if left != right:
                return x, y, z
        return None

    def unit_defect(self) -> Optional[GenLabel]:
        """First basis element on which the unit fails to act trivially."""
        for element in self.basis:
            single = {element.label: 1}
            if (self.multiply_vectors(self.unit, single) != single
                    or self.multiply_vectors(single, self.unit) != single):
                return element.label
        return None

    def degree_defect(self) -> Optional[tuple[GenLabel, GenLabel]]:
        """First product that does not add quantum degrees."""
        degree = self.module.degree
        for (x, y), value in self.table.items():
            if any(degree(z) != degree(x) + degree(y) for z in value):
                return x, y
        return None

    def to_json(self) -> dict[str, Any]:
        return {"n": self.n, "k": self.k,
                "idempotents": [self.matchings[a].to_json() for a, _, _ in self.idempotents],
                "basis": [e.to_json() for e in self.basis],
                "products": [{"x": list(x[:2]) + [list(x[2])], "y": list(y[:2]) + [list(y[2])],
                              "value": [[list(z[:2]) + [list(z[2])], c] for z, c in value.items()]}
                             for (x, y), value in self.table.items()]}


def build_platform_algebra(n: int, k: int) -> PlatformAlgebra:
    """
    :raises PlatformException: if k is outside [0, n].
    """
    if n < 0 or not 0 <= k <= n:
        raise PlatformException(f"k={k} out of range for n={n}")
    return PlatformAlgebra(n, k, CKBimodule(TangleWord.identity(n), k))
