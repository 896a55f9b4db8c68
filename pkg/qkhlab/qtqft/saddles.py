"""
Edge maps of the annular TQFTs on cube edges of a word: the classical
F_A and F_Kh saddles, the qHH_0 oracle, and the fast path that reads
q-exponents from a table filled by the oracle.
"""
from __future__ import annotations
from typing import Any, Hashable, Optional
from collections.abc import Sequence

from dataclasses import dataclass, field
from functools import cache
from itertools import product
import logging

from qkhlab.groupring import BasisElement, CyclicGroup, GroupRingElem, GRMatrix
from qkhlab.tangles import (AnnularConfig,
                            PlanarDiagram,
                            SaddleData,
                            TangleWord,
                            closure_config,
                            edge_index,
                            edge_saddle,
                            flip_edges)
from qkhlab.platform import (GenLabel,
                             IntVector,
                             Labels,
                             annular_terms,
                             khovanov_terms,
                             saddle_map,
                             surgery)
from qkhlab.qtqft.labels import QTQFTException, gen_basis
from qkhlab.qtqft.identification import identify_basis

_LAURENT = CyclicGroup.infinite()

_log = logging.getLogger("qkhlab.qtqft")


def saddle_images(source: PlanarDiagram,
                  target: PlanarDiagram,
                  remove,
                  add,
                  labels: Labels,
                  annular: bool = True) -> list[Labels]:
    """
    Classical images of one labelling, with the circles of the surgered
    diagram read in the order of `target`.
    """
    step = surgery(source, remove, add)
    if annular:
        images = [image for image, _ in annular_terms(step, labels)]
    else:
        images = khovanov_terms(step, labels)
    order = [target.circle_index(min(circle)) for circle in step.target.circles]
    moved = []
    for image in images:
        relabelled = [0] * len(order)
        for old, new in enumerate(order):
            relabelled[new] = image[old]
        moved.append(tuple(relabelled))
    return moved


def classical_saddle_matrix(source: PlanarDiagram,
                            target: PlanarDiagram,
                            remove,
                            add,
                            cols: Sequence[BasisElement],
                            rows: Sequence[BasisElement],
                            group: CyclicGroup,
                            annular: bool = True) -> GRMatrix:
    """F_A (or F_Kh with `annular=False`) of one saddle, over Z[G]."""
    index = {e.label: i for i, e in enumerate(rows)}
    entries = []
    for col, element in enumerate(cols):
        for image in saddle_images(source, target, remove, add, element.label, annular):
            if image in index:
                entries.append(((index[image], col), GroupRingElem.one(group)))
    return GRMatrix.build(group, rows, cols, entries)


def annular_saddle_matrix(word: TangleWord, v: Sequence[int], w: Sequence[int],
                          group: CyclicGroup = _LAURENT) -> GRMatrix:
    """The classical F_A matrix of the cube edge v -> w."""
    source, target = closure_config(word, v), closure_config(word, w)
    removed, added = flip_edges(source.layout, edge_index(v, w))
    return classical_saddle_matrix(source.diagram, target.diagram, removed, added,
                                   gen_basis(source), gen_basis(target), group)


@cache
def _bimodule_saddle(word: TangleWord, k: int, v: tuple[int, ...],
                     w: tuple[int, ...]) -> dict[GenLabel, IntVector]:
    source = identify_basis(word, k, v).module
    target = identify_basis(word, k, w).module
    return saddle_map(source, target, edge_index(v, w))


def saddle_matrix_oracle(word: TangleWord, v: Sequence[int], w: Sequence[int]) -> GRMatrix:
    """
    The map induced on qHH_0 by the saddle v -> w (the identity when
    v == w), in the generator bases of the two closures, over Z[q, q^-1].

    :raises BasisIdentificationError: if qHH_0 cannot be identified.
    """
    v, w = tuple(v), tuple(w)
    if v != w:
        edge_index(v, w)
    cols = gen_basis(closure_config(word, v))
    rows = gen_basis(closure_config(word, w))
    index = {e.label: i for i, e in enumerate(rows)}
    entries = []
    for k in range(word.n_left + 1):
        source = identify_basis(word, k, v)
        target = identify_basis(word, k, w)
        images = _bimodule_saddle(word, k, v, w) if v != w else None
        for col, element in enumerate(cols):
            if element.adeg != source.adeg:
                continue
            chain = source.lift(element.label)
            if images is not None:
                moved: dict[GenLabel, GroupRingElem] = {}
                for g, coeff in chain.items():
                    for h, n in images[g].items():
                        term = coeff * n
                        moved[h] = moved[h] + term if h in moved else term
                chain = moved
            for y, value in target.project(chain).items():
                entries.append(((index[y], col), value))
    return GRMatrix.build(_LAURENT, rows, cols, entries)


def _circle_signature(config: AnnularConfig, index: int) -> tuple:
    circle = config.circles[index]
    return circle.essential, circle.nesting, circle.seam_passages


def local_key(source: AnnularConfig,
              target: AnnularConfig,
              data: SaddleData,
              labels: Labels,
              image: Labels) -> Hashable:
    """
    What an entry's exponent may depend on: the saddle kind, the circles
    it touches with their labels, and the labels of the other circles
    crossing the seam.
    """
    ids = {c.id: i for i, c in enumerate(source.circles)}
    before = [ids[c] for c in data.source_circles]
    after_ids = {c.id: i for i, c in enumerate(target.circles)}
    after = [after_ids[c] for c in data.target_circles]
    touched = tuple((_circle_signature(source, i), labels[i]) for i in before)
    produced = tuple((_circle_signature(target, i), image[i]) for i in after)
    others = sorted((c.seam_position, c.essential, labels[i])
                    for i, c in enumerate(source.circles)
                    if c.seam_crossing and i not in before)
    return data.kind.value, touched, produced, tuple(others)


@dataclass
class ExponentTable:
    """
    Write-once exponents of fast-path entries, keyed by `local_key`. A key
    maps to the exponents of its entry, repeated by coefficient.
    """
    entries: dict[Hashable, tuple[int, ...]] = field(default_factory=dict)
    hits: int = 0
    misses: int = 0

    def lookup(self, key: Hashable) -> Optional[tuple[int, ...]]:
        found = self.entries.get(key)
        if found is None:
            self.misses += 1
        else:
            self.hits += 1
        return found

    def record(self, key: Hashable, exponents: tuple[int, ...]) -> None:
        """
        :raises ExponentTableError: if the key already holds other exponents.
        """
        known = self.entries.get(key)
        if known is not None and known != exponents:
            raise ExponentTableError(f"exponents {exponents} conflict with {known} for {key}")
        self.entries[key] = exponents

    def merge(self, other: ExponentTable) -> None:
        for key, exponents in other.entries.items():
            self.record(key, exponents)
        self.hits += other.hits
        self.misses += other.misses

    def to_json(self) -> dict[str, Any]:
        return {"size": len(self.entries), "hits": self.hits, "misses": self.misses}


def saddle_matrix_fast(word: TangleWord,
                       v: Sequence[int],
                       w: Sequence[int],
                       table: Optional[ExponentTable] = None,
                       oracle: Optional[GRMatrix] = None) -> GRMatrix:
    """
    The quantum saddle on the classical F_A support, each entry's
    exponents read from `table`. A missing key is filled from the oracle
    (computed on demand unless `oracle` is given).

    :raises ExponentTableError: if the oracle entry is not a sum of
                                monomials specializing to the classical entry.
    """
    table = table if table is not None else ExponentTable()
    source, target = closure_config(word, v), closure_config(word, w)
    data = edge_saddle(word, v, w, source, target)
    cols, rows = gen_basis(source), gen_basis(target)
    index = {e.label: i for i, e in enumerate(rows)}
    entries = []
    for col, element in enumerate(cols):
        for image in saddle_images(source.diagram, target.diagram, data.removed, data.added,
                                   element.label):
            row = index[image]
            key = local_key(source, target, data, element.label, image)
            exponents = table.lookup(key)
            if exponents is None:
                if oracle is None:
                    oracle = saddle_matrix_oracle(word, v, w)
                value = oracle.entry(row, col)
                if not value.is_nonnegative() or value.specialize_q1() != 1:
                    raise ExponentTableError(f"oracle entry {value} at {tuple(v)} -> {tuple(w)}, "
                                             f"column {element.label} is not a q-lift of 1")
                exponents = tuple(value.exponents())
                table.record(key, exponents)
            entries.append(((row, col), GroupRingElem.from_mapping(_LAURENT,
                                                                   [(e, 1) for e in exponents])))
    _log.debug("fast saddle %s -> %s: %d entries, table size %d",
               tuple(v), tuple(w), len(entries), len(table.entries))
    return GRMatrix.build(_LAURENT, rows, cols, entries)


@dataclass(frozen=True)
class OracleAgreement:
    edges: int
    mismatches: tuple[tuple[tuple[int, ...], tuple[int, ...]], ...]

    @property
    def ok(self) -> bool:
        return not self.mismatches

    def to_json(self) -> dict[str, Any]:
        return {"edges": self.edges, "ok": self.ok,
                "mismatches": [[list(v), list(w)] for v, w in self.mismatches]}


def cube_edges(word: TangleWord) -> list[tuple[tuple[int, ...], tuple[int, ...]]]:
    found = []
    for v in product((0, 1), repeat=word.crossing_count):
        for j, bit in enumerate(v):
            if not bit:
                found.append((v, v[:j] + (1,) + v[j + 1:]))
    return found


def verify_oracle_agreement(word: TangleWord, table: Optional[ExponentTable] = None) -> OracleAgreement:
    """Compare the fast path with the oracle on every cube edge of `word`."""
    table = table if table is not None else ExponentTable()
    mismatches = []
    edges = cube_edges(word)
    for v, w in edges:
        oracle = saddle_matrix_oracle(word, v, w)
        if saddle_matrix_fast(word, v, w, table, oracle) != oracle:
            mismatches.append((v, w))
    _log.info("oracle agreement: %d edges, %d mismatches", len(edges), len(mismatches))
    return OracleAgreement(len(edges), tuple(mismatches))


class ExponentTableError(QTQFTException):
    """Raised when the fast-path exponent table meets a conflicting entry"""
