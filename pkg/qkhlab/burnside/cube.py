"""
The quantum Burnside cube of an annular closure: one free G-set of
generators per vertex, one correspondence per edge whose linearization is
the quantum saddle, and the two-morphisms on square faces.
"""
from __future__ import annotations
from typing import Any, Optional
from collections.abc import Callable, Collection

from dataclasses import dataclass, field
from itertools import product
import logging

from qkhlab.groupring import CyclicGroup, GRMatrix
from qkhlab.tangles import Point, TangleWord, closure_config, edge_saddle, orientation, sign_assignment
from qkhlab.qtqft import ExponentTable, cube_edges, gen_basis, saddle_matrix_fast, saddle_matrix_oracle
from qkhlab.burnside.correspondences import (BurnsideException,
                                             Correspondence,
                                             CorrElement,
                                             GSet,
                                             TwoMorphism,
                                             compose,
                                             linearize)

Vertex = tuple[int, ...]
Face = tuple[Vertex, int, int]
Path = tuple[CorrElement, ...]

_LAURENT = CyclicGroup.infinite()

_log = logging.getLogger("qkhlab.burnside")


def _raise(v: Vertex, i: int) -> Vertex:
    return v[:i] + (1,) + v[i + 1:]


def _tags(count: int) -> tuple[str, ...]:
    return ("o", "w") if count == 2 else tuple(str(i) for i in range(count))


def edge_correspondence(source: GSet, target: GSet, matrix: GRMatrix) -> Correspondence:
    """
    One element per monomial of every entry; the two monomials of a
    wrapped torus entry are tagged o and w.

    :raises BurnsideException: on an entry with a negative coefficient.
    """
    elements = []
    for (row, col), value in sorted(matrix.entries.items()):
        if not value.is_nonnegative():
            raise BurnsideException(f"entry {value} at ({row}, {col}) is not a sum of monomials")
        exponents = value.exponents()
        for exponent, tag in zip(exponents, _tags(len(exponents))):
            elements.append(CorrElement(matrix.cols[col].label, matrix.rows[row].label, exponent, tag))
    return Correspondence(source, target, tuple(elements))


@dataclass(frozen=True, eq=False)
class BurnsideCube:
    """
    :param matrices: the quantum saddle each edge correspondence lifts.
    """
    word: TangleWord
    vertices: dict[Vertex, GSet]
    edges: dict[tuple[Vertex, Vertex], Correspondence]
    matrices: dict[tuple[Vertex, Vertex], GRMatrix]
    _faces: dict = field(default_factory=dict, repr=False)

    @property
    def dimension(self) -> int:
        return self.word.crossing_count

    def faces(self) -> list[Face]:
        found = []
        for v in self.vertices:
            free = [i for i, bit in enumerate(v) if not bit]
            found.extend((v, i, j) for a, i in enumerate(free) for j in free[a + 1:])
        return sorted(found)

    def subcubes(self) -> list[tuple[Vertex, int, int, int]]:
        found = []
        for v in self.vertices:
            free = [i for i, bit in enumerate(v) if not bit]
            found.extend((v, free[a], free[b], free[c]) for a in range(len(free))
                         for b in range(a + 1, len(free)) for c in range(b + 1, len(free)))
        return sorted(found)

    def composite(self, v: Vertex, first: int, second: int) -> Correspondence:
        """The edge via coordinate `first` followed by the edge via `second`."""
        u = _raise(v, first)
        w = _raise(u, second)
        return compose(self.edges[(u, w)], self.edges[(v, u)])

    def ladybug_faces(self) -> list[Face]:
        """Faces whose composite holds two elements with one source, target and exponent."""
        return [f for f in self.faces() if any(n > 1 for n in self.composite(*f).counts().values())]

    def to_json(self) -> dict[str, Any]:
        return {"dimension": self.dimension,
                "vertices": {"".join(map(str, v)) or "-": len(s) for v, s in sorted(self.vertices.items())},
                "edges": len(self.edges),
                "elements": sum(len(c.elements) for c in self.edges.values())}


def burnside_cube(word: TangleWord,
                  table: Optional[ExponentTable] = None,
                  method: str = "fast") -> BurnsideCube:
    """
    :param method: "fast" reads edge exponents from `table`, "oracle"
                   computes every edge from qHH_0.
    :raises BurnsideException: for an unknown method or a non-positive edge.
    """
    if method not in ("fast", "oracle"):
        raise BurnsideException(f"unknown edge-map method {method!r}")
    table = table if table is not None else ExponentTable()
    vertices = {v: GSet(gen_basis(closure_config(word, v)))
                for v in product((0, 1), repeat=word.crossing_count)}
    edges, matrices = {}, {}
    for v, w in cube_edges(word):
        if method == "oracle":
            matrix = saddle_matrix_oracle(word, v, w)
        else:
            matrix = saddle_matrix_fast(word, v, w, table)
        matrices[(v, w)] = matrix
        edges[(v, w)] = edge_correspondence(vertices[v], vertices[w], matrix)
    _log.info("Burnside cube: %d vertices, %d edges, %d elements", len(vertices), len(edges),
              sum(len(c.elements) for c in edges.values()))
    return BurnsideCube(word, vertices, edges, matrices)


def _paths(cube: BurnsideCube, v: Vertex, first: int, second: int) -> list[Path]:
    u = _raise(v, first)
    w = _raise(u, second)
    later = cube.edges[(u, w)]
    return [(a, b) for a in cube.edges[(v, u)].elements for b in later.elements if b.source == a.target]


def _key(path: Path) -> tuple:
    return path[0].source, path[-1].target, sum(e.exponent for e in path)


def ladybug_point(cube: BurnsideCube, v: Vertex, i: int, j: int) -> Optional[Point]:
    """
    On a ladybug circle at v, the first point after an endpoint of the
    first arc going counterclockwise towards an endpoint of the second.
    The first arc is the one on the puncture side of the circle (inside
    it, for a trivial circle); the lower crossing when both arcs lie on
    the same side. None if the two arcs do not alternate on one circle.
    """
    config = closure_config(cube.word, v)
    arcs = {c: edge_saddle(cube.word, v, _raise(v, c), source=config) for c in (i, j)}
    owner = {e: c for c, data in arcs.items() for e in data.removed}
    circle = config.diagram.circle_of(arcs[i].removed[0].head)
    if any(config.diagram.circle_of(e.head) != circle for e in owner):
        return None
    hits = [(owner[edge], start, end) for start, edge, end in config.diagram.walk(circle) if edge in owner]
    counterclockwise = orientation(config, circle) > 0
    if not counterclockwise:
        hits = [(c, end, start) for c, start, end in reversed(hits)]
    if len(hits) != 4 or any(hits[k][0] == hits[k - 1][0] for k in range(4)):
        return None
    if arcs[i].arc_inside != arcs[j].arc_inside:
        first = i if arcs[i].arc_inside else j
    else:
        first = min(i, j)
    return next(after for c, _, after in hits if c == first)


def _marker(cube: BurnsideCube, v: Vertex, i: int, j: int) -> Callable[[Path, Vertex], int]:
    """Reads the label, at a middle vertex, of the circle through the ladybug point."""
    point = ladybug_point(cube, v, i, j)

    def read(path: Path, middle: Vertex) -> int:
        if point is None:
            return 0
        return path[0].target[closure_config(cube.word, middle).diagram.circle_index(point)]
    return read


def face_bijection(cube: BurnsideCube, v: Vertex, i: int, j: int,
                   flip: bool = False) -> dict[Path, Path]:
    """
    Paths through v + e_i to paths through v + e_j with the same source,
    target and exponent. Where two paths share all three, the pair is
    matched so that the circle through the ladybug point carries the same
    label in both middles (the left pair); `flip` takes the other pair.

    :raises BurnsideException: if the two composites differ as multisets.
    """
    key = (v, i, j, flip)
    if key in cube._faces:
        return cube._faces[key]
    before, after = _paths(cube, v, i, j), _paths(cube, v, j, i)
    groups: dict[tuple, tuple[list[Path], list[Path]]] = {}
    for path in before:
        groups.setdefault(_key(path), ([], []))[0].append(path)
    for path in after:
        groups.setdefault(_key(path), ([], []))[1].append(path)
    mapping: dict[Path, Path] = {}
    read = None
    for (source, target, exponent), (left, right) in sorted(groups.items(), key=repr):
        if len(left) != len(right):
            raise BurnsideException(f"face {v} ({i}, {j}): {len(left)} against {len(right)} "
                                    f"elements from {source} to {target} at q^{exponent}")
        if len(left) == 1:
            mapping[left[0]] = right[0]
            continue
        read = read or _marker(cube, v, i, j)
        left = sorted(left, key=lambda p: read(p, _raise(v, i)))
        right = sorted(right, key=lambda p: read(p, _raise(v, j)), reverse=flip)
        mapping.update(zip(left, right))
    cube._faces[key] = mapping
    return mapping


def face_two_iso(cube: BurnsideCube, v: Vertex, i: int, j: int, flip: bool = False) -> TwoMorphism:
    """The two-morphism on the square at v spanned by coordinates i < j."""
    mapping = face_bijection(cube, v, i, j, flip)

    def element(path: Path) -> CorrElement:
        a, b = path
        return CorrElement(a.source, b.target, a.exponent + b.exponent, (b.source, b.tag, a.tag))

    return TwoMorphism(cube.composite(v, i, j), cube.composite(v, j, i),
                       {element(p): element(q) for p, q in mapping.items()})


def _signed_face(cube: BurnsideCube, v: Vertex, i: int, j: int, group: CyclicGroup) -> GRMatrix:
    """Sum of the two signed composites around the face; zero when the face anticommutes."""
    total = None
    for first, second in ((i, j), (j, i)):
        u = _raise(v, first)
        w = _raise(u, second)
        sign = sign_assignment(v, u) * sign_assignment(u, w)
        path = (cube.matrices[(u, w)] @ cube.matrices[(v, u)]).scale(sign)
        total = path if total is None else total + path
    return total.reduce(group)


def _hexagon_defect(cube: BurnsideCube, v: Vertex, coords: tuple[int, int, int],
                    flipped: Collection[Face]) -> Optional[Path]:
    """Go once around the six orders of the three steps; the first path not sent home."""
    def bijection(base: Vertex, x: int, y: int) -> dict[Path, Path]:
        if x < y:
            return face_bijection(cube, base, x, y, (base, x, y) in flipped)
        forward = face_bijection(cube, base, y, x, (base, y, x) in flipped)
        return {b: a for a, b in forward.items()}

    start = coords
    paths = []
    for a in cube.edges[(v, _raise(v, start[0]))].elements:
        u = _raise(v, start[0])
        for b in cube.edges[(u, _raise(u, start[1]))].elements:
            if b.source != a.target:
                continue
            t = _raise(u, start[1])
            for c in cube.edges[(t, _raise(t, start[2]))].elements:
                if c.source == b.target:
                    paths.append((a, b, c))
    for path in paths:
        order, current = list(start), path
        for step in range(6):
            pos = step % 2
            base = v if pos == 0 else _raise(v, order[0])
            pair = current[pos:pos + 2]
            moved = bijection(base, order[pos], order[pos + 1])[pair]
            current = current[:pos] + moved + current[pos + 2:]
            order[pos], order[pos + 1] = order[pos + 1], order[pos]
        if current != path:
            return path
    return None


@dataclass(frozen=True)
class CoherenceReport:
    edges: int
    edges_match: bool
    faces: int
    faces_ok: bool
    ladybug_faces: int
    hexagons: int
    hexagons_ok: bool
    anticommute: bool = True
    failures: tuple[str, ...] = ()

    @property
    def ok(self) -> bool:
        return self.edges_match and self.faces_ok and self.hexagons_ok and self.anticommute

    def to_json(self) -> dict[str, Any]:
        return {"ok": self.ok, "edges_match_linearization": self.edges_match,
                "faces_ok": self.faces_ok, "hexagons_ok": self.hexagons_ok,
                "signed_faces_anticommute": self.anticommute,
                "counts": {"edges": self.edges, "faces": self.faces,
                           "ladybug_faces": self.ladybug_faces, "hexagons": self.hexagons},
                "failures": list(self.failures)}


def verify_coherence(cube: BurnsideCube,
                     group: CyclicGroup = _LAURENT,
                     flipped: Collection[Face] = ()) -> CoherenceReport:
    """
    Linearized edges against their saddles over Z[G], a two-morphism on
    every face, and the hexagon of every three-dimensional subcube.

    :param flipped: faces whose ambiguous pairs take the other matching.
    """
    failures = []
    edges_match = True
    for edge, correspondence in cube.edges.items():
        if linearize(correspondence, group) != cube.matrices[edge].reduce(group):
            edges_match = False
            failures.append(f"edge {edge} does not linearize to its saddle")
    faces_ok, ladybugs = True, 0
    for v, i, j in cube.faces():
        try:
            face_two_iso(cube, v, i, j, (v, i, j) in flipped)
        except BurnsideException as e:
            faces_ok = False
            failures.append(str(e))
            continue
        if any(n > 1 for n in cube.composite(v, i, j).counts().values()):
            ladybugs += 1
    anticommute = True
    for v, i, j in cube.faces():
        if not _signed_face(cube, v, i, j, group).is_zero():
            anticommute = False
            failures.append(f"signed face {v} ({i}, {j}) does not anticommute")
    hexagons_ok = True
    subcubes = cube.subcubes() if faces_ok else []
    for v, i, j, k in subcubes:
        defect = _hexagon_defect(cube, v, (i, j, k), flipped)
        if defect is not None:
            hexagons_ok = False
            failures.append(f"hexagon at {v} ({i}, {j}, {k}) moves {defect}")
    _log.info("coherence: %d edges, %d faces (%d ambiguous), %d hexagons, %d failures",
              len(cube.edges), len(cube.faces()), ladybugs, len(subcubes), len(failures))
    return CoherenceReport(len(cube.edges), edges_match, len(cube.faces()), faces_ok,
                           ladybugs, len(subcubes), hexagons_ok, anticommute, tuple(failures))
