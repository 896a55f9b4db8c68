"""
Bigraded bases and sparse matrices over Z[G].
"""
from __future__ import annotations
from typing import Any, Hashable, Optional
from collections.abc import Iterable, Mapping, Sequence

from dataclasses import dataclass, field

from qkhlab.groupring.group import (CyclicGroup,
                                    GroupRingElem,
                                    GroupRingException,
                                    GroupMismatchError,
                                    UnsupportedHomologyError)


@dataclass(frozen=True)
class BasisElement:
    """
    Designated basis element of a free bigraded Z[G]-module.

    :param label: hashable identifier, unique within a basis.
    :param qdeg: quantum grading.
    :param adeg: annular grading (0 when unused).
    :param hdeg: homological grading (0 when unused).
    """
    label: Hashable
    qdeg: int = 0
    adeg: int = 0
    hdeg: int = 0

    def with_hdeg(self, hdeg: int) -> BasisElement:
        return BasisElement(self.label, self.qdeg, self.adeg, hdeg)

    def shifted(self, qshift: int = 0, hdeg: Optional[int] = None) -> BasisElement:
        return BasisElement(self.label, self.qdeg + qshift, self.adeg,
                            self.hdeg if hdeg is None else hdeg)

    def to_json(self) -> dict[str, Any]:
        return {"label": label_to_json(self.label),
                "qdeg": self.qdeg, "adeg": self.adeg, "hdeg": self.hdeg}


def label_to_json(label: Any) -> Any:
    """Turn nested tuples/frozensets into lists so labels serialize deterministically."""
    if isinstance(label, (tuple, list)):
        return [label_to_json(part) for part in label]
    if isinstance(label, frozenset):
        return sorted((label_to_json(part) for part in label), key=repr)
    return label


@dataclass(frozen=True, eq=False)
class GRMatrix:
    """
    Sparse matrix over Z[G] from the span of `cols` to the span of `rows`.
    Entry (i, j) is the coefficient of rows[i] in the image of cols[j].
    """
    group: CyclicGroup
    rows: tuple[BasisElement, ...]
    cols: tuple[BasisElement, ...]
    entries: Mapping[tuple[int, int], GroupRingElem] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for (i, j), value in self.entries.items():
            if not (0 <= i < len(self.rows) and 0 <= j < len(self.cols)):
                raise GroupRingException(f"entry ({i}, {j}) outside a "
                                         f"{len(self.rows)}x{len(self.cols)} matrix")
            if value.group != self.group:
                raise GroupMismatchError(f"entry ({i}, {j}) lives over {value.group}, "
                                         f"matrix over {self.group}")

    @classmethod
    def build(cls, group: CyclicGroup,
              rows: Sequence[BasisElement],
              cols: Sequence[BasisElement],
              entries: Mapping[tuple[int, int], GroupRingElem]
              | Iterable[tuple[tuple[int, int], GroupRingElem]]) -> GRMatrix:
        """Constructor that sums repeated positions and drops zeros."""
        collected: dict[tuple[int, int], GroupRingElem] = {}
        items = entries.items() if isinstance(entries, Mapping) else entries
        for key, value in items:
            if key in collected:
                collected[key] = collected[key] + value
            else:
                collected[key] = value
        return cls(group, tuple(rows), tuple(cols),
                   {key: value for key, value in collected.items() if value})

    @classmethod
    def zero(cls, group: CyclicGroup,
             rows: Sequence[BasisElement],
             cols: Sequence[BasisElement]) -> GRMatrix:
        return cls(group, tuple(rows), tuple(cols), {})

    @classmethod
    def identity(cls, group: CyclicGroup, basis: Sequence[BasisElement]) -> GRMatrix:
        one = GroupRingElem.one(group)
        return cls(group, tuple(basis), tuple(basis), {(i, i): one for i in range(len(basis))})

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.rows), len(self.cols)

    def entry(self, i: int, j: int) -> GroupRingElem:
        return self.entries.get((i, j), GroupRingElem.zero(self.group))

    def columns(self) -> dict[int, dict[int, GroupRingElem]]:
        by_col: dict[int, dict[int, GroupRingElem]] = {}
        for (i, j), value in self.entries.items():
            by_col.setdefault(j, {})[i] = value
        return by_col

    def is_zero(self) -> bool:
        return not self.entries

    def nonzero_entries(self) -> list[tuple[int, int, GroupRingElem]]:
        return [(i, j, self.entries[(i, j)]) for i, j in sorted(self.entries)]

    def _check_same_shape(self, other: GRMatrix) -> None:
        if self.group != other.group:
            raise GroupMismatchError(f"matrices over {self.group} and {other.group}")
        if self.shape != other.shape:
            raise GroupRingException(f"shape mismatch {self.shape} vs {other.shape}")

    def __add__(self, other: GRMatrix) -> GRMatrix:
        self._check_same_shape(other)
        return GRMatrix.build(self.group, self.rows, self.cols,
                              list(self.entries.items()) + list(other.entries.items()))

    def __neg__(self) -> GRMatrix:
        return GRMatrix(self.group, self.rows, self.cols,
                        {key: -value for key, value in self.entries.items()})

    def __sub__(self, other: GRMatrix) -> GRMatrix:
        return self + (-other)

    def scale(self, scalar: GroupRingElem | int) -> GRMatrix:
        return GRMatrix.build(self.group, self.rows, self.cols,
                              [(key, value * scalar) for key, value in self.entries.items()])

    def __matmul__(self, other: GRMatrix) -> GRMatrix:
        """Composition: (self @ other) applies `other` first."""
        if self.group != other.group:
            raise GroupMismatchError(f"matrices over {self.group} and {other.group}")
        if len(self.cols) != len(other.rows):
            raise GroupRingException(f"cannot compose {self.shape} after {other.shape}")
        mine = self.columns()
        product: dict[tuple[int, int], GroupRingElem] = {}
        for (k, j), right in other.entries.items():
            for i, left in mine.get(k, {}).items():
                key = (i, j)
                term = left * right
                product[key] = product[key] + term if key in product else term
        return GRMatrix(self.group, self.rows, other.cols,
                        {key: value for key, value in product.items() if value})

    def equals(self, other: GRMatrix) -> bool:
        return (self.group == other.group
                and self.shape == other.shape
                and dict(self.entries) == dict(other.entries))

    def __eq__(self, other: object) -> bool:
        if not isinstance(other, GRMatrix):
            return NotImplemented
        return self.equals(other)

    def first_difference(self, other: GRMatrix) -> Optional[tuple[int, int]]:
        """Smallest position where the two matrices disagree, if any."""
        self._check_same_shape(other)
        for key in sorted(set(self.entries) | set(other.entries)):
            if self.entry(*key) != other.entry(*key):
                return key
        return None

    def reduce(self, group: CyclicGroup) -> GRMatrix:
        return GRMatrix.build(group, self.rows, self.cols,
                              [(key, value.reduce(group)) for key, value in self.entries.items()])

    def restrict(self, row_idx: Sequence[int], col_idx: Sequence[int]) -> GRMatrix:
        """Submatrix on the given row and column positions (in that order)."""
        row_pos = {old: new for new, old in enumerate(row_idx)}
        col_pos = {old: new for new, old in enumerate(col_idx)}
        return GRMatrix(self.group,
                        tuple(self.rows[i] for i in row_idx),
                        tuple(self.cols[j] for j in col_idx),
                        {(row_pos[i], col_pos[j]): value
                         for (i, j), value in self.entries.items()
                         if i in row_pos and j in col_pos})

    def to_json(self) -> dict[str, Any]:
        return {"group": self.group.to_json(),
                "rows": [row.to_json() for row in self.rows],
                "cols": [col.to_json() for col in self.cols],
                "entries": [[i, j, [[e, c] for e, c in value.terms]]
                            for i, j, value in self.nonzero_entries()]}


def restrict_scalars(matrix: GRMatrix) -> list[list[int]]:
    """
    Expand a Z[G]-matrix to a Z-matrix: each basis element becomes the r
    generators q^0 x, ..., q^{r-1} x and q^k acts as a cyclic shift.
    """
    r = _finite_order(matrix.group)
    m, n = matrix.shape
    dense = [[0] * (n * r) for _ in range(m * r)]
    for (i, j), value in matrix.entries.items():
        for exponent, coeff in value.terms:
            for s in range(r):
                dense[i * r + (s + exponent) % r][j * r + s] += coeff
    return dense


def restrict_scalars_sparse(matrix: GRMatrix) -> list[dict[int, int]]:
    """Same expansion as `restrict_scalars`, returned as sparse rows."""
    r = _finite_order(matrix.group)
    m, _ = matrix.shape
    rows: list[dict[int, int]] = [{} for _ in range(m * r)]
    for (i, j), value in matrix.entries.items():
        for exponent, coeff in value.terms:
            for s in range(r):
                row = rows[i * r + (s + exponent) % r]
                col = j * r + s
                total = row.get(col, 0) + coeff
                if total:
                    row[col] = total
                else:
                    row.pop(col, None)
    return rows


def _finite_order(group: CyclicGroup) -> int:
    if not group.is_finite:
        raise UnsupportedHomologyError("restriction of scalars needs a finite cyclic group")
    assert group.order is not None
    return group.order
