"""
Chain complexes of Chen-Khovanov bimodules: the cube of resolutions of a
tangle word with every vertex replaced by its bimodule and every edge by
its signed saddle map.
"""
from __future__ import annotations
from typing import Any, Hashable, Optional

from dataclasses import dataclass
from functools import cached_property
from itertools import product
from multiprocessing import Pool
import logging

from qkhlab.groupring import BasisElement, CyclicGroup, GradedComplexZG, GroupRingElem, GRMatrix
from qkhlab.tangles import TangleWord, sign_assignment
from qkhlab.platform.bimodule import CKBimodule, GenLabel, IntVector, saddle_map
from qkhlab.platform.matchings import PlatformException, right_weight

Vertex = tuple[int, ...]

_log = logging.getLogger("qkhlab.platform")


def _vertex_edges(word: TangleWord, k: int, v: Vertex) -> list[tuple[Vertex, int, dict[GenLabel, IntVector]]]:
    source = CKBimodule(word, k, v)
    found = []
    for j, bit in enumerate(v):
        if bit:
            continue
        w = v[:j] + (1,) + v[j + 1:]
        found.append((w, j, saddle_map(source, CKBimodule(word, k, w), j)))
    return found


@dataclass(frozen=True, eq=False)
class CKComplex:
    """
    :param edges: (v, w) -> saddle images of the basis of the bimodule at v.
    """
    word: TangleWord
    k: int
    vertices: dict[Vertex, CKBimodule]
    edges: dict[tuple[Vertex, Vertex], dict[GenLabel, IntVector]]

    @property
    def n_plus(self) -> int:
        return self.word.n_plus

    @property
    def n_minus(self) -> int:
        return self.word.n_minus

    def hdeg(self, v: Vertex) -> int:
        return self.n_minus - sum(v)

    def qshift(self, v: Vertex) -> int:
        return -self.hdeg(v) + self.n_plus - self.n_minus

    @cached_property
    def chains(self) -> dict[int, tuple[BasisElement, ...]]:
        found: dict[int, list[BasisElement]] = {}
        for v in sorted(self.vertices):
            i = self.hdeg(v)
            found.setdefault(i, []).extend(
                BasisElement((v, e.label), e.qdeg + self.qshift(v), 0, i)
                for e in self.vertices[v].basis)
        return {i: tuple(basis) for i, basis in found.items()}

    def differential(self, i: int) -> dict[Hashable, dict[Hashable, int]]:
        """d_i on the labels of degree i, as integer vectors in degree i-1."""
        images: dict[Hashable, dict[Hashable, int]] = {}
        for (v, w), maps in self.edges.items():
            if self.hdeg(v) != i:
                continue
            sign = sign_assignment(v, w)
            for label, vector in maps.items():
                target = images.setdefault((v, label), {})
                for image, coeff in vector.items():
                    key = (w, image)
                    target[key] = target.get(key, 0) + sign * coeff
        return images

    def to_graded(self, group: Optional[CyclicGroup] = None) -> GradedComplexZG:
        """Scalar extension to Z[G] (the trivial group by default)."""
        group = group or CyclicGroup.trivial()
        chains = self.chains
        differentials = {}
        for i in chains:
            if i - 1 not in chains:
                continue
            rows = {e.label: r for r, e in enumerate(chains[i - 1])}
            images = self.differential(i)
            entries = {}
            for col, element in enumerate(chains[i]):
                for key, coeff in images.get(element.label, {}).items():
                    if coeff:
                        entries[(rows[key], col)] = GroupRingElem.monomial(group, 0, coeff)
            differentials[i] = GRMatrix.build(group, chains[i - 1], chains[i], entries)
        return GradedComplexZG(group, chains, differentials)

    def verify(self) -> None:
        """
        :raises PlatformException: if d^2 != 0 or d breaks the quantum grading.
        """
        graded = self.to_graded()
        defect = graded.d_squared_defect()
        if defect is not None:
            raise PlatformException(f"d^2 != 0 out of hdeg {defect}")
        grading = graded.grading_defect()
        if grading is not None:
            raise PlatformException(f"differential breaks the quantum grading at {grading}")

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "n_plus": self.n_plus, "n_minus": self.n_minus,
                "ranks": {str(i): len(basis) for i, basis in sorted(self.chains.items())}}


def build_ck_complex(word: TangleWord, k: int, workers: int = 1) -> CKComplex:
    """
    Build the complex over all cube vertices of `word`. Edges out of
    different vertices are independent, so with `workers > 1` they are
    computed in a process pool.
    """
    right_weight(word.n_left, word.n_right, k)
    cube = list(product((0, 1), repeat=word.crossing_count))
    if workers > 1 and len(cube) > 1:
        with Pool(min(workers, len(cube))) as executor:
            results = executor.starmap(_vertex_edges, [(word, k, v) for v in cube])
    else:
        results = [_vertex_edges(word, k, v) for v in cube]
    vertices = {v: CKBimodule(word, k, v) for v in cube}
    edges = {(v, w): images for v, found in zip(cube, results) for w, _, images in found}
    _log.info("CK complex: %d vertices, %d edges, k=%d", len(cube), len(edges), k)
    return CKComplex(word, k, vertices, edges)
