"""
Chain complexes of free graded Z[G]-modules, chain maps, cones and homology.
"""
from __future__ import annotations
from typing import Any, Optional, Union
from collections.abc import Iterable, Mapping, Sequence

from dataclasses import dataclass, field
from multiprocessing import Pool
import logging

from qkhlab.groupring.group import (CyclicGroup,
                                    GroupRingElem,
                                    GroupRingException,
                                    GroupMismatchError)
from qkhlab.groupring.matrix import (BasisElement,
                                     GRMatrix,
                                     restrict_scalars,
                                     restrict_scalars_sparse,
                                     _finite_order)
from qkhlab.groupring.snf import diagonal, invariant_factors, smith_form_with_inverses


_log = logging.getLogger("qkhlab.groupring")

GradingKey = tuple[int, int]


@dataclass(frozen=True, eq=False)
class GradedComplexZG:
    """
    Chain complex of free Z[G]-modules with designated bases.

    `differentials[i]` maps the span of `chains[i]` to the span of
    `chains[i - 1]`; missing degrees are zero.
    """
    group: CyclicGroup
    chains: Mapping[int, tuple[BasisElement, ...]]
    differentials: Mapping[int, GRMatrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        for i, matrix in self.differentials.items():
            if matrix.group != self.group:
                raise GroupMismatchError(f"differential d_{i} lives over {matrix.group}, "
                                         f"complex over {self.group}")
            if matrix.cols != self.basis(i) or matrix.rows != self.basis(i - 1):
                raise GroupRingException(f"differential d_{i} does not match the bases "
                                         f"of degrees {i} and {i - 1}")

    def basis(self, i: int) -> tuple[BasisElement, ...]:
        return tuple(self.chains.get(i, ()))

    def differential(self, i: int) -> GRMatrix:
        if i in self.differentials:
            return self.differentials[i]
        return GRMatrix.zero(self.group, self.basis(i - 1), self.basis(i))

    def degrees(self) -> list[int]:
        return sorted(i for i, basis in self.chains.items() if basis)

    def rank(self) -> int:
        return sum(len(basis) for basis in self.chains.values())

    def d_squared_defect(self) -> Optional[int]:
        """First degree i with d_{i-1} d_i != 0, or None."""
        for i in self.degrees():
            if not (self.differential(i - 1) @ self.differential(i)).is_zero():
                return i
        return None

    def grading_defect(self) -> Optional[tuple[int, int, int]]:
        """First entry (i, row, col) of a differential joining different (qdeg, adeg)."""
        for i in sorted(self.differentials):
            matrix = self.differentials[i]
            for row, col, _ in matrix.nonzero_entries():
                if _key(matrix.rows[row]) != _key(matrix.cols[col]):
                    return i, row, col
        return None

    def verify(self) -> None:
        defect = self.d_squared_defect()
        if defect is not None:
            raise GroupRingException(f"d o d is nonzero starting in degree {defect}")
        grading = self.grading_defect()
        if grading is not None:
            i, row, col = grading
            raise GroupRingException(f"d_{i} entry ({row}, {col}) does not preserve "
                                     f"(qdeg, adeg)")

    def reduce(self, group: CyclicGroup) -> GradedComplexZG:
        return GradedComplexZG(group, dict(self.chains),
                               {i: m.reduce(group) for i, m in self.differentials.items()})

    def specialize_q1(self) -> GradedComplexZG:
        """The complex over Z obtained by q -> 1 (Z[1] = Z)."""
        return self.reduce(CyclicGroup.trivial())

    def shifted(self, qshift: int = 0, hshift: int = 0) -> GradedComplexZG:
        """Grading shift: qdeg += qshift and degree i moves to i + hshift."""
        chains = {i + hshift: tuple(b.shifted(qshift, b.hdeg + hshift) for b in basis)
                  for i, basis in self.chains.items()}
        differentials = {i + hshift: GRMatrix(self.group, chains.get(i + hshift - 1, ()),
                                              chains[i + hshift], m.entries)
                         for i, m in self.differentials.items()}
        return GradedComplexZG(self.group, chains, differentials)

    def to_json(self) -> dict[str, Any]:
        return {"group": self.group.to_json(),
                "chains": {str(i): [b.to_json() for b in self.basis(i)] for i in self.degrees()},
                "differentials": {str(i): self.differentials[i].to_json()
                                  for i in sorted(self.differentials)
                                  if not self.differentials[i].is_zero()}}


@dataclass(frozen=True, eq=False)
class ChainMapZG:
    """Degree-preserving chain map; `components[i]` maps source_i to target_i."""
    source: GradedComplexZG
    target: GradedComplexZG
    components: Mapping[int, GRMatrix] = field(default_factory=dict)

    def __post_init__(self) -> None:
        if self.source.group != self.target.group:
            raise GroupMismatchError("chain map between complexes over different groups")
        for i, matrix in self.components.items():
            if matrix.cols != self.source.basis(i) or matrix.rows != self.target.basis(i):
                raise GroupRingException(f"chain map component f_{i} does not match the bases")

    def component(self, i: int) -> GRMatrix:
        if i in self.components:
            return self.components[i]
        return GRMatrix.zero(self.source.group, self.target.basis(i), self.source.basis(i))

    def degrees(self) -> list[int]:
        return sorted(set(self.source.degrees()) | set(self.target.degrees()))

    def chain_map_defect(self) -> Optional[int]:
        """First degree i with d f_i != f_{i-1} d, or None."""
        for i in self.degrees():
            left = self.target.differential(i) @ self.component(i)
            right = self.component(i - 1) @ self.source.differential(i)
            if left != right:
                return i
        return None

    def compose(self, other: ChainMapZG) -> ChainMapZG:
        """self after other."""
        degrees = set(self.components) | set(other.components)
        return ChainMapZG(other.source, self.target,
                          {i: self.component(i) @ other.component(i) for i in sorted(degrees)})


@dataclass(frozen=True)
class HomologyGroup:
    """
    One graded piece of homology as an abelian group, with the q-action
    on the free generators when it was requested.
    """
    free_rank: int
    torsion: tuple[int, ...] = ()
    q_action: Optional[tuple[tuple[int, ...], ...]] = None

    def is_zero(self) -> bool:
        return self.free_rank == 0 and not self.torsion

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"free_rank": self.free_rank, "torsion": list(self.torsion)}
        if self.q_action is not None:
            data["q_action"] = [list(row) for row in self.q_action]
        return data


@dataclass(frozen=True)
class HomologySummary:
    """H_i of a complex split by (qdeg, adeg); free ranks are over Z."""
    group: CyclicGroup
    hdeg: int
    pieces: Mapping[GradingKey, HomologyGroup] = field(default_factory=dict)

    def is_zero(self) -> bool:
        return all(piece.is_zero() for piece in self.pieces.values())

    def total_rank(self) -> int:
        return sum(piece.free_rank for piece in self.pieces.values())

    def nonzero(self) -> dict[GradingKey, HomologyGroup]:
        return {key: self.pieces[key] for key in sorted(self.pieces)
                if not self.pieces[key].is_zero()}

    def to_json(self) -> dict[str, Any]:
        return {"group": self.group.to_json(),
                "hdeg": self.hdeg,
                "pieces": [{"qdeg": q, "adeg": a, **piece.to_json()}
                           for (q, a), piece in self.nonzero().items()]}


def _key(element: BasisElement) -> GradingKey:
    return element.qdeg, element.adeg


def _blocks(basis: Sequence[BasisElement]) -> dict[GradingKey, list[int]]:
    blocks: dict[GradingKey, list[int]] = {}
    for index, element in enumerate(basis):
        blocks.setdefault(_key(element), []).append(index)
    return blocks


def homology(complex_: GradedComplexZG, i: int, with_q_action: bool = False) -> HomologySummary:
    """
    H_i of a complex over Z[G] for finite G, by restriction of scalars.

    :param complex_: the complex.
    :param i: homological degree.
    :param with_q_action: also compute the matrix of q on free generators.
    :return: the graded pieces of H_i.
    """
    r = _finite_order(complex_.group)
    basis = complex_.basis(i)
    outgoing = complex_.differential(i)
    incoming = complex_.differential(i + 1)
    lower = _blocks(complex_.basis(i - 1))
    upper = _blocks(complex_.basis(i + 1))

    for matrix, degree in ((outgoing, i), (incoming, i + 1)):
        for row, col, _ in matrix.nonzero_entries():
            if _key(matrix.rows[row]) != _key(matrix.cols[col]):
                raise GroupRingException(f"d_{degree} entry ({row}, {col}) "
                                         f"does not preserve (qdeg, adeg)")

    pieces: dict[GradingKey, HomologyGroup] = {}
    for key, indices in sorted(_blocks(basis).items()):
        out_block = outgoing.restrict(lower.get(key, []), indices)
        in_block = incoming.restrict(indices, upper.get(key, []))
        if with_q_action:
            piece = _piece_with_action(out_block, in_block, r)
        else:
            rank_out, _ = invariant_factors(restrict_scalars_sparse(out_block))
            rank_in, torsion = invariant_factors(restrict_scalars_sparse(in_block))
            piece = HomologyGroup(len(indices) * r - rank_out - rank_in, tuple(torsion))
        pieces[key] = piece
    _log.debug("H_%d over %s: %d generators in %d blocks", i, complex_.group,
               len(basis), len(pieces))
    return HomologySummary(complex_.group, i, pieces)


def _piece_with_action(out_block: GRMatrix, in_block: GRMatrix, r: int) -> HomologyGroup:
    n = len(out_block.cols) * r
    if out_block.rows:
        d, _, v, _, v_inv = smith_form_with_inverses(restrict_scalars(out_block))
        rank_out = sum(1 for value in diagonal(d) if value)
    else:
        v = v_inv = [[int(a == b) for b in range(n)] for a in range(n)]
        rank_out = 0
    k = n - rank_out
    if k == 0:
        return HomologyGroup(0, (), ())

    def kernel_coordinates(chain: Sequence[int]) -> list[int]:
        return [sum(v_inv[row][t] * chain[t] for t in range(n) if chain[t])
                for row in range(rank_out, n)]

    image = restrict_scalars(in_block)
    image_cols = len(in_block.cols) * r
    coords = [kernel_coordinates([image[t][c] for t in range(n)]) for c in range(image_cols)]
    if image_cols:
        x = [[coords[c][row] for c in range(image_cols)] for row in range(k)]
        d2, u2, _, u2_inv, _ = smith_form_with_inverses(x)
        factors = [abs(value) for value in diagonal(d2) if value]
    else:
        u2 = u2_inv = [[int(a == b) for b in range(k)] for a in range(k)]
        factors = []
    rank_in = len(factors)
    free = k - rank_in

    def chain_of(column: int) -> list[int]:
        weights = [u2_inv[t][column] for t in range(k)]
        return [sum(v[row][rank_out + t] * weights[t] for t in range(k) if weights[t])
                for row in range(n)]

    def q_times(chain: Sequence[int]) -> list[int]:
        moved = [0] * n
        for index, value in enumerate(chain):
            block, s = divmod(index, r)
            moved[block * r + (s + 1) % r] = value
        return moved

    action = [[0] * free for _ in range(free)]
    for j in range(free):
        image_coords = kernel_coordinates(q_times(chain_of(rank_in + j)))
        y = [sum(u2[row][t] * image_coords[t] for t in range(k)) for row in range(k)]
        for out in range(free):
            action[out][j] = y[rank_in + out]
    return HomologyGroup(free, tuple(f for f in factors if f > 1),
                         tuple(tuple(row) for row in action))


def _homology_task(complex_: GradedComplexZG, i: int, with_q_action: bool) -> HomologySummary:
    return homology(complex_, i, with_q_action)


def homology_all(complex_: GradedComplexZG,
                 with_q_action: bool = False,
                 workers: int = 1) -> dict[int, HomologySummary]:
    """
    Homology in every degree where the complex is nonzero. Degrees are
    independent, so with `workers > 1` they are computed in a process pool.
    """
    _finite_order(complex_.group)
    degrees = complex_.degrees()
    if workers > 1 and len(degrees) > 1:
        with Pool(min(workers, len(degrees))) as executor:
            results = executor.starmap(_homology_task,
                                       [(complex_, i, with_q_action) for i in degrees])
    else:
        results = [homology(complex_, i, with_q_action) for i in degrees]
    return dict(zip(degrees, results))


def block_matrix(group: CyclicGroup,
                 rows: Sequence[Sequence[BasisElement]],
                 cols: Sequence[Sequence[BasisElement]],
                 blocks: Mapping[tuple[int, int], GRMatrix]) -> GRMatrix:
    """Assemble a matrix from blocks indexed by (row part, column part)."""
    row_offsets = [sum(len(part) for part in rows[:k]) for k in range(len(rows))]
    col_offsets = [sum(len(part) for part in cols[:k]) for k in range(len(cols))]
    entries: dict[tuple[int, int], GroupRingElem] = {}
    for (a, b), matrix in blocks.items():
        for (i, j), value in matrix.entries.items():
            entries[(row_offsets[a] + i, col_offsets[b] + j)] = value
    return GRMatrix(group,
                    tuple(e for part in rows for e in part),
                    tuple(e for part in cols for e in part),
                    entries)


def mapping_cone(f: ChainMapZG) -> GradedComplexZG:
    """
    Cone(f)_i = target_i + source_{i-1} with differential
    [[d_target, f], [0, -d_source]].
    """
    group = f.source.group
    degrees = set(f.target.degrees()) | {i + 1 for i in f.source.degrees()}

    def tagged(tag: str, basis: Sequence[BasisElement], hdeg: int) -> tuple[BasisElement, ...]:
        return tuple(BasisElement((tag, b.label), b.qdeg, b.adeg, hdeg) for b in basis)

    parts = {i: (tagged("target", f.target.basis(i), i), tagged("source", f.source.basis(i - 1), i))
             for i in range(min(degrees, default=0) - 1, max(degrees, default=0) + 2)}
    chains = {i: parts[i][0] + parts[i][1] for i in parts}
    differentials: dict[int, GRMatrix] = {}
    for i in sorted(degrees):
        blocks = {(0, 0): f.target.differential(i),
                  (0, 1): f.component(i - 1),
                  (1, 1): -f.source.differential(i - 1)}
        differentials[i] = block_matrix(group, parts[i - 1], parts[i], blocks)
    return GradedComplexZG(group, chains, differentials)


def identity_map(complex_: GradedComplexZG) -> ChainMapZG:
    return ChainMapZG(complex_, complex_,
                      {i: GRMatrix.identity(complex_.group, complex_.basis(i))
                       for i in complex_.degrees()})


def specialize_q1(value: Union[GroupRingElem, GRMatrix, GradedComplexZG]
                  ) -> Union[int, list[list[int]], GradedComplexZG]:
    """Substitute q -> 1 in an element, a matrix or a complex."""
    if isinstance(value, GroupRingElem):
        return value.specialize_q1()
    if isinstance(value, GRMatrix):
        return restrict_scalars(value.reduce(CyclicGroup.trivial()))
    if isinstance(value, GradedComplexZG):
        return value.specialize_q1()
    raise GroupRingException(f"cannot specialize {type(value).__name__}")


def poincare_polynomial(summaries: Iterable[HomologySummary]) -> str:
    """
    Free ranks as a Laurent polynomial in t (hdeg), q (qdeg) and a (adeg),
    with torsion appended as bracketed factors, in sorted term order.
    """
    terms = []
    for summary in sorted(summaries, key=lambda s: s.hdeg):
        for (qdeg, adeg), piece in summary.nonzero().items():
            monomial = f"t^{summary.hdeg} q^{qdeg} a^{adeg}"
            if piece.free_rank:
                terms.append(f"{piece.free_rank} {monomial}")
            for factor in piece.torsion:
                terms.append(f"[Z/{factor}] {monomial}")
    return " + ".join(terms) if terms else "0"
