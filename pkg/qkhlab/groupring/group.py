"""
Exact elements of the group ring Z[G] for a cyclic group G = <q>.
"""
from __future__ import annotations
from typing import Any, Optional, Union
from collections.abc import Iterable, Mapping

from dataclasses import dataclass


_INFINITE_TAG = "Z"


@dataclass(frozen=True)
class CyclicGroup:
    """
    Cyclic group with designated generator q.

    :param order: the order r of the group, or None for the
                  infinite cyclic group.
    """
    order: Optional[int] = None

    def __post_init__(self) -> None:
        if self.order is not None and self.order < 1:
            raise GroupRingException(f"cyclic group order must be positive, got {self.order}")

    @classmethod
    def infinite(cls) -> CyclicGroup:
        return cls(None)

    @classmethod
    def trivial(cls) -> CyclicGroup:
        return cls(1)

    @property
    def is_finite(self) -> bool:
        return self.order is not None

    def normalize(self, exponent: int) -> int:
        if self.order is None:
            return exponent
        return exponent % self.order

    def to_json(self) -> Union[int, str]:
        return _INFINITE_TAG if self.order is None else self.order

    @classmethod
    def from_json(cls, value: Any) -> CyclicGroup:
        if value == _INFINITE_TAG or value is None:
            return cls.infinite()
        try:
            return cls(int(value))
        except (TypeError, ValueError) as e:
            raise GroupRingException(f"invalid group specification {value!r}") from e

    def __str__(self) -> str:
        return "Z" if self.order is None else f"Z/{self.order}"


@dataclass(frozen=True)
class GroupRingElem:
    """
    Element of Z[G] stored as sorted (exponent, coefficient) pairs.
    Zero coefficients are never stored and exponents are normalized
    into [0, r) for finite groups.
    """
    group: CyclicGroup
    terms: tuple[tuple[int, int], ...] = ()

    @classmethod
    def from_mapping(cls, group: CyclicGroup,
                     terms: Mapping[int, int] | Iterable[tuple[int, int]]) -> GroupRingElem:
        collected: dict[int, int] = {}
        items = terms.items() if isinstance(terms, Mapping) else terms
        for exponent, coeff in items:
            if not coeff:
                continue
            exponent = group.normalize(exponent)
            collected[exponent] = collected.get(exponent, 0) + coeff
        return cls(group, tuple(sorted((e, c) for e, c in collected.items() if c)))

    @classmethod
    def zero(cls, group: CyclicGroup) -> GroupRingElem:
        return cls(group, ())

    @classmethod
    def one(cls, group: CyclicGroup) -> GroupRingElem:
        return cls(group, ((0, 1),))

    @classmethod
    def monomial(cls, group: CyclicGroup, exponent: int, coeff: int = 1) -> GroupRingElem:
        if not coeff:
            return cls(group, ())
        return cls(group, ((group.normalize(exponent), coeff),))

    def _check(self, other: GroupRingElem) -> None:
        if self.group != other.group:
            raise GroupMismatchError(f"cannot combine elements of {self.group} and {other.group}")

    def _coerce(self, other: Union[GroupRingElem, int]) -> GroupRingElem:
        if isinstance(other, int):
            return GroupRingElem.monomial(self.group, 0, other)
        self._check(other)
        return other

    def as_dict(self) -> dict[int, int]:
        return dict(self.terms)

    def __add__(self, other: Union[GroupRingElem, int]) -> GroupRingElem:
        other = self._coerce(other)
        merged = self.as_dict()
        for exponent, coeff in other.terms:
            merged[exponent] = merged.get(exponent, 0) + coeff
        return GroupRingElem.from_mapping(self.group, merged)

    __radd__ = __add__

    def __neg__(self) -> GroupRingElem:
        return GroupRingElem(self.group, tuple((e, -c) for e, c in self.terms))

    def __sub__(self, other: Union[GroupRingElem, int]) -> GroupRingElem:
        return self + (-self._coerce(other))

    def __rsub__(self, other: Union[GroupRingElem, int]) -> GroupRingElem:
        return self._coerce(other) - self

    def __mul__(self, other: Union[GroupRingElem, int]) -> GroupRingElem:
        if isinstance(other, int):
            return GroupRingElem.from_mapping(self.group, {e: c * other for e, c in self.terms})
        self._check(other)
        product: dict[int, int] = {}
        for e1, c1 in self.terms:
            for e2, c2 in other.terms:
                exponent = self.group.normalize(e1 + e2)
                product[exponent] = product.get(exponent, 0) + c1 * c2
        return GroupRingElem.from_mapping(self.group, product)

    __rmul__ = __mul__

    def __bool__(self) -> bool:
        return bool(self.terms)

    @property
    def is_zero(self) -> bool:
        return not self.terms

    def shift(self, k: int) -> GroupRingElem:
        """Multiply by q^k."""
        return GroupRingElem.from_mapping(self.group, [(e + k, c) for e, c in self.terms])

    def unit_monomial(self) -> Optional[tuple[int, int]]:
        """
        Return (sign, exponent) if the element is a unit ±q^k, else None.
        """
        if len(self.terms) == 1 and self.terms[0][1] in (1, -1):
            exponent, coeff = self.terms[0]
            return coeff, exponent
        return None

    def inverse(self) -> GroupRingElem:
        unit = self.unit_monomial()
        if unit is None:
            raise GroupRingException(f"{self} is not a unit of Z[{self.group}]")
        sign, exponent = unit
        return GroupRingElem.monomial(self.group, -exponent, sign)

    def specialize_q1(self) -> int:
        return sum(c for _, c in self.terms)

    def reduce(self, group: CyclicGroup) -> GroupRingElem:
        """Push the element along Z -> G (exponents taken mod the new order)."""
        return GroupRingElem.from_mapping(group, self.terms)

    def is_nonnegative(self) -> bool:
        return all(c > 0 for _, c in self.terms)

    def exponents(self) -> list[int]:
        """Exponents repeated by coefficient (only meaningful for nonnegative elements)."""
        return [e for e, c in self.terms for _ in range(c)]

    def to_json(self) -> dict[str, Any]:
        return {"group": self.group.to_json(),
                "terms": [[e, c] for e, c in self.terms]}

    @classmethod
    def from_json(cls, data: Mapping[str, Any]) -> GroupRingElem:
        try:
            group = CyclicGroup.from_json(data["group"])
            return cls.from_mapping(group, [(int(e), int(c)) for e, c in data["terms"]])
        except (KeyError, TypeError, ValueError) as e:
            raise GroupRingException(f"malformed group ring element {data!r}") from e

    def __str__(self) -> str:
        if not self.terms:
            return "0"
        parts = []
        for exponent, coeff in self.terms:
            if exponent == 0:
                parts.append(str(coeff))
                continue
            power = "q" if exponent == 1 else f"q^{exponent}"
            if coeff == 1:
                parts.append(power)
            elif coeff == -1:
                parts.append(f"-{power}")
            else:
                parts.append(f"{coeff}{power}")
        return " + ".join(parts).replace("+ -", "- ")


def gr_add(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    return a + b


def gr_mul(a: GroupRingElem, b: GroupRingElem) -> GroupRingElem:
    return a * b


def gr_neg(a: GroupRingElem) -> GroupRingElem:
    return -a


class GroupRingException(Exception):
    """Errors related to group ring arithmetic and homology"""


class GroupMismatchError(GroupRingException):
    """Raised when elements over different groups are combined"""


class UnsupportedHomologyError(GroupRingException):
    """Raised when homology is requested over the infinite cyclic group"""
