"""
Cube-of-resolutions complexes of annular closures: the quantum annular
complex over Z[G], its classical specialization built from F_A, and the
Khovanov complex of the closure viewed in the plane.
"""
from __future__ import annotations
from typing import Any, Optional
from collections.abc import Callable, Sequence

from dataclasses import dataclass
from itertools import product
from multiprocessing import Pool
import logging

from qkhlab.groupring import (BasisElement, CyclicGroup, GradedComplexZG, GRMatrix, HomologySummary,
                              homology_all)
from qkhlab.tangles import TangleWord, closure_config, edge_index, flip_edges, sign_assignment
from qkhlab.platform import ONE
from qkhlab.qtqft.labels import QTQFTException, gen_basis
from qkhlab.qtqft.saddles import (ExponentTable,
                                  annular_saddle_matrix,
                                  classical_saddle_matrix,
                                  cube_edges,
                                  saddle_matrix_fast,
                                  saddle_matrix_oracle)

Vertex = tuple[int, ...]

_LAURENT = CyclicGroup.infinite()

_log = logging.getLogger("qkhlab.qtqft")


def _cube_complex(word: TangleWord,
                  group: CyclicGroup,
                  vertex_basis: Callable[[Vertex], tuple[BasisElement, ...]],
                  edge_matrix: Callable[[Vertex, Vertex], GRMatrix],
                  annular_degree: Optional[int] = None) -> GradedComplexZG:
    """
    Put the basis of each vertex v in hdeg N_- - |v| with qdeg shifted by
    -hdeg + N_+ - N_-, and sum the signed edge matrices into differentials.
    """
    n_plus, n_minus = word.n_plus, word.n_minus
    chains: dict[int, list[BasisElement]] = {}
    position: dict[tuple[Vertex, tuple], int] = {}
    for v in product((0, 1), repeat=word.crossing_count):
        i = n_minus - sum(v)
        shift = -i + n_plus - n_minus
        for element in vertex_basis(v):
            if annular_degree is not None and element.adeg != annular_degree:
                continue
            basis = chains.setdefault(i, [])
            position[(v, element.label)] = len(basis)
            basis.append(BasisElement((v, element.label), element.qdeg + shift, element.adeg, i))
    entries: dict[int, list] = {}
    for v, w in cube_edges(word):
        i = n_minus - sum(v)
        sign = sign_assignment(v, w)
        matrix = edge_matrix(v, w)
        for (row, col), value in matrix.entries.items():
            source = (v, matrix.cols[col].label)
            target = (w, matrix.rows[row].label)
            if source in position and target in position:
                entries.setdefault(i, []).append(((position[target], position[source]),
                                                  (value * sign).reduce(group)))
    frozen = {i: tuple(basis) for i, basis in chains.items()}
    differentials = {i: GRMatrix.build(group, frozen[i - 1], frozen[i], found)
                     for i, found in entries.items() if i - 1 in frozen}
    return GradedComplexZG(group, frozen, differentials)


def _oracle_task(word: TangleWord, v: Vertex, w: Vertex) -> GRMatrix:
    return saddle_matrix_oracle(word, v, w)


def qakc(word: TangleWord,
         group: CyclicGroup = _LAURENT,
         table: Optional[ExponentTable] = None,
         annular_degree: Optional[int] = None,
         method: str = "fast",
         workers: int = 1) -> GradedComplexZG:
    """
    The quantum annular complex of the closure of an (n,n) word.

    :param table: exponent table to read and fill; a fresh one by default.
    :param annular_degree: keep only this annular degree.
    :param method: "fast" for table-driven edge maps, "oracle" for the
                   qHH_0 maps on every edge.
    :param workers: oracle maps of different edges are computed in a
                    process pool when above 1.
    """
    if word.n_left != word.n_right:
        raise QTQFTException("the annular closure needs an (n,n) word")
    if method not in ("fast", "oracle"):
        raise QTQFTException(f"unknown edge-map method {method!r}")
    table = table if table is not None else ExponentTable()
    oracles: dict[tuple[Vertex, Vertex], GRMatrix] = {}
    edges = cube_edges(word)
    if workers > 1 and len(edges) > 1:
        with Pool(min(workers, len(edges))) as executor:
            found = executor.starmap(_oracle_task, [(word, v, w) for v, w in edges])
        oracles = dict(zip(edges, found))

    def edge_matrix(v: Vertex, w: Vertex) -> GRMatrix:
        if method == "oracle":
            found = oracles.get((v, w))
            return found if found is not None else saddle_matrix_oracle(word, v, w)
        return saddle_matrix_fast(word, v, w, table, oracles.get((v, w)))

    complex_ = _cube_complex(word, group, lambda v: gen_basis(closure_config(word, v)),
                             edge_matrix, annular_degree)
    _log.info("quantum annular complex: %d vertices, ranks %s, table %s",
              2 ** word.crossing_count,
              {i: len(b) for i, b in sorted(complex_.chains.items())}, table.to_json())
    return complex_


def akc(word: TangleWord, annular_degree: Optional[int] = None) -> GradedComplexZG:
    """The annular Khovanov complex over Z, with F_A on every edge."""
    if word.n_left != word.n_right:
        raise QTQFTException("the annular closure needs an (n,n) word")
    z = CyclicGroup.trivial()
    return _cube_complex(word, z, lambda v: gen_basis(closure_config(word, v)),
                         lambda v, w: annular_saddle_matrix(word, v, w, z), annular_degree)


def _planar_basis(word: TangleWord, v: Sequence[int]) -> tuple[BasisElement, ...]:
    """Generators of the closure with every circle read as a trivial one."""
    return tuple(BasisElement(e.label, sum(1 if label == ONE else -1 for label in e.label))
                 for e in gen_basis(closure_config(word, v)))


def kc(word: TangleWord) -> GradedComplexZG:
    """
    The Khovanov complex over Z of the closure of `word` drawn in the
    plane (a (0,0) word is its own closure).
    """
    if word.n_left != word.n_right:
        raise QTQFTException("the closure needs an (n,n) word")
    z = CyclicGroup.trivial()

    def edge_matrix(v: Vertex, w: Vertex) -> GRMatrix:
        source, target = closure_config(word, v), closure_config(word, w)
        removed, added = flip_edges(source.layout, edge_index(v, w))
        return classical_saddle_matrix(source.diagram, target.diagram, removed, added,
                                       _planar_basis(word, v), _planar_basis(word, w), z,
                                       annular=False)

    return _cube_complex(word, z, lambda v: _planar_basis(word, v), edge_matrix)


@dataclass(frozen=True)
class RotationCheck:
    """Homology of two closures related by moving a piece across the seam."""
    before: dict[int, HomologySummary]
    after: dict[int, HomologySummary]

    @property
    def ok(self) -> bool:
        return self.to_json()["before"] == self.to_json()["after"]

    def to_json(self) -> dict[str, Any]:
        return {"before": {str(i): s.to_json() for i, s in sorted(self.before.items())},
                "after": {str(i): s.to_json() for i, s in sorted(self.after.items())}}


def verify_rotation(first: TangleWord, second: TangleWord, group: CyclicGroup) -> RotationCheck:
    """
    Compare qaKh of the closures of `first second` and `second first`.
    Moving `second` across the seam is an isotopy of annular links, so
    the bigraded homology has to agree.

    :raises UnsupportedHomologyError: if G is infinite.
    """
    if (first.n_right, first.n_left) != (second.n_left, second.n_right):
        raise QTQFTException(f"a ({first.n_left},{first.n_right}) word and a "
                             f"({second.n_left},{second.n_right}) word do not close up")
    before = homology_all(qakc(first.concat(second), group))
    after = homology_all(qakc(second.concat(first), group))
    _log.info("rotation across the seam: degrees %s and %s", sorted(before), sorted(after))
    return RotationCheck(before, after)
