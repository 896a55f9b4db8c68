"""
The normative identification of qHH_0 of a cube-vertex bimodule with the
span of the annular generators of the closure.

Degree-zero Hochschild chains are the diagonal summands M(a,a); the trace
relations [m alpha] = q^(-|alpha|) [alpha m] cut them down to qHH_0. The
map to generators wraps every platform arc around the puncture (the only
q-weight being the bundt split) and keeps the terms whose added strands
carry v- below the word and v+ above it. When these seed images break a
trace relation, the classical images are lifted to q-monomials with a
union-find over the exponents. Seed monomials that disagree inside one
connected set are an error, never a vote.
"""
from __future__ import annotations
from typing import Any, Hashable, Optional
from collections.abc import Mapping, Sequence

from dataclasses import dataclass
from functools import cache
import logging

from qkhlab.groupring import (BasisElement,
                              Cokernel,
                              CyclicGroup,
                              GroupRingElem,
                              GroupRingException,
                              GRMatrix,
                              add_into,
                              cokernel,
                              invert_matrix)
from qkhlab.tangles import (AnnularConfig,
                            Edge,
                            PlanarDiagram,
                            TangleException,
                            TangleWord,
                            closure_config)
from qkhlab.platform import (CKBimodule,
                             Closure,
                             GenLabel,
                             IntVector,
                             Labels,
                             ONE,
                             X,
                             annular_saddle,
                             laurent)
from qkhlab.hochschild import trace_relations
from qkhlab.qtqft.labels import QTQFTException, basis_in_degree

LaurentVector = dict[Labels, GroupRingElem]
Relation = tuple[IntVector, IntVector, int]

_LAURENT = CyclicGroup.infinite()

_log = logging.getLogger("qkhlab.qtqft")


def wrap_order(pairs: Sequence[tuple[int, int]]) -> list[tuple[int, int]]:
    """Arcs of a matching, enclosing arcs before the arcs they enclose."""
    return sorted(pairs, key=lambda arc: (arc[0] - arc[1], arc[0]))


def wrap_closure(closure: Closure, labels: Labels,
                 weighted: bool = True) -> tuple[PlanarDiagram, LaurentVector]:
    """
    Saddle every arc of a against the same arc of a-bar around the
    puncture, turning a T-hat a-bar into the annular closure of T-hat.
    """
    diagram = closure.diagram
    vector: LaurentVector = {tuple(labels): laurent()}
    for i, j in wrap_order(closure.a.pairs):
        remove = (closure.left_arc(i, j), closure.right_arc(i, j))
        add = (Edge.seam(closure.right_point(i), closure.left_point(i)),
               Edge.seam(closure.right_point(j), closure.left_point(j)))
        diagram, vector = annular_saddle(diagram, vector, remove, add, weighted)
        if not vector:
            break
    return diagram, vector


def restrict_to_word(closure: Closure,
                     diagram: PlanarDiagram,
                     vector: Mapping[Labels, GroupRingElem],
                     config: AnnularConfig) -> LaurentVector:
    """
    Keep the terms with v- on the strands added below the word and v+ on
    those added above it, and read the remaining labels on the closure of
    the word itself.

    :raises BasisIdentificationError: if the circles do not correspond.
    """
    shape = closure.shape
    required: dict[int, int] = {}
    for p in range(1, shape.n + shape.below + shape.above + 1):
        if p <= shape.below:
            required[diagram.circle_index(closure.left_point(p))] = X
        elif p > shape.n + shape.below:
            required[diagram.circle_index(closure.left_point(p))] = ONE
    image: dict[int, int] = {}
    for index, circle in enumerate(diagram.circles):
        if index in required:
            continue
        part, kind, t, side, position = min(circle)
        moved = (config.layout.part, kind, t, side, position - shape.below)
        try:
            image[index] = config.diagram.circle_index(moved)
        except TangleException as e:
            raise BasisIdentificationError(f"point {moved} of the wrapped closure is not on "
                                           f"the closure of the word") from e
    if sorted(image.values()) != list(range(len(config.circles))):
        raise BasisIdentificationError(f"wrapped closure has {len(image)} word circles, "
                                       f"the closure {len(config.circles)}")
    result: LaurentVector = {}
    for labels, coeff in vector.items():
        if any(labels[i] != label for i, label in required.items()):
            continue
        moved_labels = [ONE] * len(config.circles)
        for old, new in image.items():
            moved_labels[new] = labels[old]
        add_into(result, {tuple(moved_labels): coeff})
    return result


class _OffsetForest:
    """Union-find keeping l(x) - l(parent(x)) on every node."""

    def __init__(self, nodes):
        self.parent = {x: x for x in nodes}
        self.offset = {x: 0 for x in nodes}

    def find(self, x) -> tuple[Hashable, int]:
        y = self.parent[x]
        if y == x:
            return x, 0
        root, above = self.find(y)
        self.parent[x] = root
        self.offset[x] += above
        return root, self.offset[x]

    def union(self, x, y, difference: int) -> None:
        """Record l(x) - l(y) = difference."""
        rx, ox = self.find(x)
        ry, oy = self.find(y)
        if rx == ry:
            if ox - oy != difference:
                raise BasisIdentificationError(f"trace relations force both {ox - oy} and "
                                               f"{difference} between {x} and {y}")
            return
        self.parent[rx] = ry
        self.offset[rx] = difference + oy - ox


def _apply(images: Mapping[GenLabel, LaurentVector], vector: Mapping[GenLabel, int]) -> LaurentVector:
    result: LaurentVector = {}
    for g, coeff in vector.items():
        add_into(result, images.get(g, {}), coeff)
    return result


def _relation_defect(images: Mapping[GenLabel, LaurentVector],
                     relations: Sequence[Relation]) -> Optional[Relation]:
    for relation in relations:
        right, left, exponent = relation
        difference = _apply(images, right)
        add_into(difference, _apply(images, left), -laurent(exponent))
        if difference:
            return relation
    return None


def lift_exponents(seed: Mapping[GenLabel, LaurentVector],
                   relations: Sequence[Relation]) -> dict[GenLabel, LaurentVector]:
    """
    Lift the q = 1 images of `seed` to monomials n q^l that satisfy the
    single-term trace relations. Each connected set of exponents is pinned
    by the seed monomials in it, which must agree; a set with none starts
    at 0.

    :raises BasisIdentificationError: if the relations or the seed
                                      monomials contradict each other.
    """
    classical = {g: {y: c.specialize_q1() for y, c in vector.items() if c.specialize_q1()}
                 for g, vector in seed.items()}
    nodes = [(g, y) for g, vector in classical.items() for y in vector]
    forest = _OffsetForest(nodes)
    deferred = 0
    for right, left, exponent in relations:
        columns: dict[Labels, tuple[list, list]] = {}
        for g, coeff in right.items():
            for y, n in classical.get(g, {}).items():
                columns.setdefault(y, ([], []))[0].append(((g, y), coeff * n))
        for g, coeff in left.items():
            for y, n in classical.get(g, {}).items():
                columns.setdefault(y, ([], []))[1].append(((g, y), coeff * n))
        for y, (rs, ls) in columns.items():
            if sum(c for _, c in rs) != sum(c for _, c in ls):
                raise BasisIdentificationError(f"classical images break a trace relation at {y}")
            if len(rs) == 1:
                for node, _ in ls:
                    forest.union(rs[0][0], node, exponent)
            elif len(ls) == 1:
                for node, _ in rs:
                    forest.union(node, ls[0][0], exponent)
            elif rs or ls:
                deferred += 1
    gauge: dict[Hashable, int] = {}
    for node in nodes:
        g, y = node
        root, offset = forest.find(node)
        unit = seed[g][y].terms
        if len(unit) != 1 or unit[0][1] != classical[g][y]:
            continue
        pinned = gauge.setdefault(root, unit[0][0] - offset)
        if pinned != unit[0][0] - offset:
            raise BasisIdentificationError(f"seed exponents of {g} at {y} disagree by "
                                           f"{unit[0][0] - offset - pinned} with the trace relations")
    images: dict[GenLabel, LaurentVector] = {g: {} for g in seed}
    for node in nodes:
        g, y = node
        root, offset = forest.find(node)
        images[g][y] = laurent(gauge.get(root, 0) + offset, classical[g][y])
    _log.debug("exponent lift: %d nodes, %d components, %d deferred relations",
               len(nodes), len(gauge), deferred)
    return images


@dataclass(frozen=True, eq=False)
class BasisIdentification:
    """
    qHH_0 of the bimodule at one cube vertex, with the generators of the
    closure in annular degree n - 2k as its basis.

    :param images: the q-graded image of every diagonal generator.
    :param inverse: columns write each closure generator in the survivors
                    of the trace-relation cokernel.
    """
    module: CKBimodule
    config: AnnularConfig
    basis: tuple[BasisElement, ...]
    images: dict[GenLabel, LaurentVector]
    quotient: Cokernel
    inverse: GRMatrix
    seeded: bool

    @property
    def k(self) -> int:
        return self.module.k

    @property
    def adeg(self) -> int:
        return self.module.n - 2 * self.module.k

    @property
    def generators(self) -> tuple[GenLabel, ...]:
        return tuple(self.quotient.generators)

    def project(self, vector: Mapping[GenLabel, GroupRingElem | int]) -> LaurentVector:
        """Image in the closure generators of a combination of diagonal generators."""
        result: LaurentVector = {}
        for g, coeff in vector.items():
            add_into(result, self.images.get(g, {}), coeff)
        return result

    def lift(self, labels: Labels) -> dict[GenLabel, GroupRingElem]:
        """A diagonal chain whose class maps to the closure generator `labels`."""
        col = next((j for j, e in enumerate(self.basis) if e.label == labels), None)
        if col is None:
            raise QTQFTException(f"{labels} is not a generator in annular degree {self.adeg}")
        return {self.inverse.rows[i].label: value
                for (i, j), value in self.inverse.entries.items() if j == col}

    def to_json(self) -> dict[str, Any]:
        return {"k": self.k, "bits": list(self.module.bits), "adeg": self.adeg,
                "rank": len(self.basis), "seeded": self.seeded,
                "images": [{"generator": [g[0], g[1], list(g[2])],
                            "image": [[list(y), c.to_json()] for y, c in vector.items()]}
                           for g, vector in self.images.items() if vector]}


def _check_word(word: TangleWord) -> None:
    if word.n_left != word.n_right:
        raise QTQFTException(f"annular closure needs an (n,n) word, got "
                             f"({word.n_left},{word.n_right})")


@cache
def identify_basis(word: TangleWord, k: int, bits: tuple[int, ...] = ()) -> BasisIdentification:
    """
    :raises QTQFTException: for words that are not (n,n).
    :raises BasisIdentificationError: if qHH_0 is not free on a basis
                                      matching the closure generators.
    """
    _check_word(word)
    module = CKBimodule(word, k, tuple(bits))
    config = closure_config(word, bits)
    generators = tuple(e.label for e in module.basis if e.label[0] == e.label[1])
    seed = {}
    for g in generators:
        closure = module.closure(g[0], g[1])
        diagram, vector = wrap_closure(closure, g[2])
        seed[g] = restrict_to_word(closure, diagram, vector, config) if vector else {}
    relations = trace_relations(module)
    seeded = _relation_defect(seed, relations) is None
    images = seed if seeded else lift_exponents(seed, relations)
    defect = _relation_defect(images, relations)
    if defect is not None:
        raise BasisIdentificationError(f"no monomial lift satisfies the trace relation "
                                       f"{defect[0]} ~ q^{defect[2]} {defect[1]}")
    relation_vectors = []
    for right, left, exponent in relations:
        vector = {g: laurent(0, c) for g, c in right.items()}
        add_into(vector, {g: laurent(exponent, c) for g, c in left.items()}, -1)
        if vector:
            relation_vectors.append(vector)
    quotient = cokernel(_LAURENT, generators, relation_vectors)
    if not quotient.is_free:
        raise BasisIdentificationError(f"qHH_0 at {bits}, k={k} has {len(quotient.residual)} "
                                       f"relations without a unit pivot")
    adeg = word.n_left - 2 * k
    basis = basis_in_degree(config, adeg)
    index = {e.label: i for i, e in enumerate(basis)}
    entries = {}
    sources = []
    for col, g in enumerate(quotient.survivors):
        sources.append(BasisElement(g, module.degree(g)))
        for y, value in images[g].items():
            if y not in index:
                raise BasisIdentificationError(f"image of {g} leaves annular degree {adeg}")
            entries[(index[y], col)] = value
    matrix = GRMatrix.build(_LAURENT, basis, sources, entries)
    try:
        inverse = invert_matrix(matrix)
    except GroupRingException as e:
        raise BasisIdentificationError(f"qHH_0 at {bits}, k={k}: {len(sources)} survivors do "
                                       f"not map onto {len(basis)} generators") from e
    _log.debug("qHH_0 at %s, k=%d: %d diagonal generators, rank %d, seed %s",
               bits, k, len(generators), len(basis), "kept" if seeded else "lifted")
    return BasisIdentification(module, config, basis, images, quotient, inverse, seeded)


class BasisIdentificationError(QTQFTException):
    """Raised when qHH_0 cannot be matched with the closure generators"""
