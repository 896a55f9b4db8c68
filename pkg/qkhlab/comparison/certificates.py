"""
Exact checks on the comparison map, each returning a JSON-ready
certificate instead of raising on failure.
"""
from __future__ import annotations
from typing import Any, Optional
from collections.abc import Iterable, Sequence

from dataclasses import dataclass, field
import logging

from qkhlab.groupring import (BasisElement,
                              ChainMapZG,
                              CyclicGroup,
                              GradedComplexZG,
                              GroupRingElem,
                              GroupRingException,
                              GRMatrix,
                              add_into,
                              homology,
                              invert_matrix,
                              mapping_cone)
from qkhlab.tangles import AnnularConfig, Edge, Point, TangleWord, closure_config
from qkhlab.platform import (CKBimodule, Closure, GenLabel, Labels, annular_saddle, build_gluing,
                             laurent, retag, right_weight)
from qkhlab.qtqft import identify_basis, restrict_to_word, wrap_order
from qkhlab.hochschild import TensorTrace, qch, trace_tau_prime
from qkhlab.comparison.maps import a_map, c_map

LaurentVector = dict[Labels, GroupRingElem]

_LAURENT = CyclicGroup.infinite()

_log = logging.getLogger("qkhlab.comparison")


@dataclass(frozen=True)
class Certificate:
    """
    :param failure: where the first check failed, if one did.
    """
    name: str
    ok: bool
    checked: int = 0
    failure: Optional[dict[str, Any]] = None
    details: dict[str, Any] = field(default_factory=dict)

    def to_json(self) -> dict[str, Any]:
        data: dict[str, Any] = {"check": self.name, "ok": self.ok, "checked": self.checked}
        if self.failure is not None:
            data["failure"] = self.failure
        data.update(self.details)
        return data


def verify_chain_map(f: ChainMapZG) -> Certificate:
    """d f_i == f_(i-1) d in every degree, entry by entry."""
    degrees = f.degrees()
    for i in degrees:
        left = f.target.differential(i) @ f.component(i)
        right = f.component(i - 1) @ f.source.differential(i)
        position = left.first_difference(right)
        if position is not None:
            row, col = position
            _log.warning("chain map fails in degree %d at entry %s", i, position)
            return Certificate("chain_map", False, len(degrees),
                               {"hdeg": i, "row": row, "col": col,
                                "left": str(left.entry(row, col)),
                                "right": str(right.entry(row, col))})
    return Certificate("chain_map", True, len(degrees))


def _regrade(cone: GradedComplexZG, adeg_shift: int) -> GradedComplexZG:
    """
    Same cone with the source generators moved by `adeg_shift` in adeg and
    every generator at qdeg 0.
    """
    def moved(e: BasisElement) -> BasisElement:
        return BasisElement(e.label, 0, e.adeg + (adeg_shift if e.label[0] == "source" else 0), e.hdeg)

    chains = {i: tuple(moved(e) for e in basis) for i, basis in cone.chains.items()}
    differentials = {i: GRMatrix(m.group, chains.get(i - 1, ()), chains.get(i, ()), m.entries)
                     for i, m in cone.differentials.items()}
    return GradedComplexZG(cone.group, chains, differentials)


def adeg_defect(f: ChainMapZG, adeg_shift: int) -> Optional[tuple[int, int, int]]:
    """First nonzero entry (i, row, col) of f that does not move adeg by `adeg_shift`."""
    for i, matrix in sorted(f.components.items()):
        for (row, col), value in sorted(matrix.entries.items()):
            if value and matrix.rows[row].adeg != matrix.cols[col].adeg + adeg_shift:
                return i, row, col
    return None


def verify_quasi_iso(f: ChainMapZG,
                     group: CyclicGroup,
                     degrees: Optional[Iterable[int]] = None,
                     adeg_shift: int = 0) -> Certificate:
    """
    The cone of f, reduced to Z[G], has zero homology in `degrees` (all
    of its degrees by default). f has to move adeg by exactly `adeg_shift`;
    qdeg is not tracked since the bundt split weights entries by q^-1.

    :raises UnsupportedHomologyError: if G is infinite.
    """
    defect = adeg_defect(f, adeg_shift)
    if defect is not None:
        i, row, col = defect
        return Certificate("cone_acyclic", False, 0, {"adeg_shift": adeg_shift, "hdeg": i,
                                                      "row": row, "col": col},
                           {"group": group.to_json()})
    cone = _regrade(mapping_cone(f).reduce(group), adeg_shift)
    degrees = sorted(cone.degrees() if degrees is None else degrees)
    nonzero = {}
    for i in degrees:
        summary = homology(cone, i)
        if not summary.is_zero():
            nonzero[str(i)] = summary.to_json()
    _log.info("cone over %s: %d degrees, %d with homology", group, len(degrees), len(nonzero))
    failure = {"homology": nonzero} if nonzero else None
    return Certificate("cone_acyclic", not nonzero, len(degrees), failure,
                       {"group": group.to_json(), "degrees": degrees})


def _piece(closure: Closure, part: str):
    def point(p: Point) -> Point:
        return (part,) + p[1:]

    def arc(edge: Edge) -> Edge:
        return retag(edge, part)
    return closure, point, arc


def _evaluate_surface(module_closure: Closure,
                      algebra_closure: Closure,
                      labels: Labels,
                      module_first: bool,
                      config: AnnularConfig) -> LaurentVector:
    """
    F_{A_q} of the surface that joins a module closure and an algebra
    closure in the plane along one matching and around the puncture along
    the other, read on the closure generators of the word.

    :param labels: module labels followed by algebra labels.
    """
    module = _piece(module_closure, module_closure.part)
    algebra = _piece(algebra_closure, "y")
    left, right = (module, algebra) if module_first else (algebra, module)
    (lc, lp, la), (rc, rp, ra) = left, right
    diagram = module_closure.diagram.union(algebra_closure.diagram.with_part("y"))
    vector = {tuple(labels): laurent()}
    for i, j in lc.b.pairs:
        remove = (la(lc.right_arc(i, j)), ra(rc.left_arc(i, j)))
        add = tuple(Edge.plain(lp(lc.right_point(p)), rp(rc.left_point(p))) for p in (i, j))
        diagram, vector = annular_saddle(diagram, vector, remove, add, True)
        if not vector:
            return {}
    for i, j in wrap_order(rc.b.pairs):
        remove = (ra(rc.right_arc(i, j)), la(lc.left_arc(i, j)))
        add = tuple(Edge.seam(rp(rc.right_point(p)), lp(lc.left_point(p))) for p in (i, j))
        diagram, vector = annular_saddle(diagram, vector, remove, add, True)
        if not vector:
            return {}
    return restrict_to_word(module_closure, diagram, vector, config)


def deformed_faces(word: TangleWord,
                   k: int,
                   m: GenLabel,
                   x: GenLabel,
                   bits: Sequence[int] = ()) -> tuple[LaurentVector, LaurentVector]:
    """
    Both faces of the degree-one chain m (x) x evaluated on the closure
    generators straight from the surfaces: m x wrapped around the
    puncture, and q^(-<x>) times x m wrapped the other way.
    """
    module = CKBimodule(word, k, tuple(bits))
    algebra = module.right_algebra
    config = closure_config(word, tuple(bits))
    module_closure = module.closure(m[0], m[1])
    algebra_closure = algebra.closure(x[0], x[1])
    labels = tuple(m[2]) + tuple(x[2])
    zeroth = _evaluate_surface(module_closure, algebra_closure, labels, True, config)
    exponent = qch(module, 1).last_face_exponent(x)
    last = {y: value.shift(exponent) for y, value in
            _evaluate_surface(module_closure, algebra_closure, labels, False, config).items()}
    return zeroth, last


def verify_deformed_face(word: TangleWord,
                         k: int,
                         bits: Sequence[int] = (),
                         instances: Optional[Iterable[tuple[GenLabel, GenLabel]]] = None) -> Certificate:
    """
    On degree-one chains m (x) x, the surface that carries x across the
    seam evaluates to the twisted last face: F(m x) == q^(-<x>) F(x m),
    both sides computed by annular saddles on the glued closures.

    :param instances: (m, x) pairs to check; every composable pair by default.
    """
    bits = tuple(bits)
    if instances is None:
        module = CKBimodule(word, k, bits)
        instances = [tuple(e.label) for e in qch(module, 1).chains.get(1, ())]
    checked = 0
    for m, x in instances:
        zeroth, last = deformed_faces(word, k, m, x, bits)
        checked += 1
        if zeroth != last:
            return Certificate("deformed_face", False, checked,
                               {"m": list(m[:2]), "x": list(x[:2])})
    return Certificate("deformed_face", True, checked)


def _wrapped_images(word: TangleWord, k: int, bits: tuple[int, ...]) -> dict[GenLabel, dict]:
    """C_a A_a on every diagonal generator."""
    module = CKBimodule(word, k, bits)
    images: dict[GenLabel, dict] = {}
    for a in range(len(module.left_matchings)):
        matrix = c_map(word, k, a, bits) @ a_map(word, k, a, bits)
        for col, element in enumerate(matrix.cols):
            images[element.label] = {matrix.rows[row].label: value
                                     for (row, j), value in matrix.entries.items() if j == col}
    return images


def verify_a_trace(word: TangleWord, k: int, bits: Sequence[int] = ()) -> Certificate:
    """
    C A (x y) == q^(-<y>) C A (y x) for x in M(a,b) and y in the platform
    algebra from b to a, over all such pairs.
    """
    bits = tuple(bits)
    module = CKBimodule(word, k, bits)
    images = _wrapped_images(word, k, bits)
    algebra = module.right_algebra

    def image(vector) -> dict:
        result: dict = {}
        for g, coeff in vector.items():
            add_into(result, images.get(g, {}), coeff)
        return result

    checked = 0
    for x in module.basis:
        for y in algebra.basis:
            if y.label[0] != x.label[1] or y.label[1] != x.label[0]:
                continue
            checked += 1
            left = image(module.right_action(x.label, y.label))
            right = {z: value.shift(-algebra.degree(y.label))
                     for z, value in image(module.left_action(y.label, x.label)).items()}
            if left != right:
                return Certificate("a_trace", False, checked,
                                   {"x": list(x.label[:2]), "y": list(y.label[:2])})
    return Certificate("a_trace", True, checked)


def _pair_images(first: TangleWord, second: TangleWord, k: int,
                 trace: TensorTrace) -> GRMatrix:
    """Xi on qHH_0 of FCK(first) (x) FCK(second), through the gluing map."""
    gluing = build_gluing(first, second, k)
    ident = identify_basis(gluing.glued.word, k)
    rows = ident.basis
    index = {e.label: i for i, e in enumerate(rows)}
    entries = []
    for col, element in enumerate(trace.basis):
        glued = gluing.glue(*element.label)
        for labels, value in ident.project(glued).items():
            entries.append(((index[labels], col), value))
    return GRMatrix.build(_LAURENT, rows, trace.basis, entries)


def _is_monomial_permutation(matrix: GRMatrix) -> bool:
    rows, cols = matrix.shape
    if rows != cols:
        return False
    used_rows, used_cols = set(), set()
    for (i, j), value in matrix.entries.items():
        if value.unit_monomial() is None or i in used_rows or j in used_cols:
            return False
        used_rows.add(i)
        used_cols.add(j)
    return len(used_cols) == cols


def seam_rotation(first: TangleWord, second: TangleWord, k: int) -> GRMatrix:
    """
    Label transport along the isotopy that moves `second` across the seam,
    from the closure generators of `first second` at weight k to those of
    `second first` at the right weight of `first`. No saddle happens, so
    every entry is 1.
    """
    source = identify_basis(first.concat(second), k)
    target = identify_basis(second.concat(first), right_weight(first.n_left, first.n_right, k))
    shift, total = len(second.slices), len(first.slices) + len(second.slices)

    def rotate(circle) -> Point:
        inner = [p for p in sorted(circle) if p[1] == "p"]
        if not inner:
            return min(circle)
        part, kind, t, side, position = inner[0]
        return part, kind, (t + shift) % total, side, position

    image = [target.config.diagram.circle_index(rotate(circle))
             for circle in source.config.diagram.circles]
    index = {e.label: i for i, e in enumerate(target.basis)}
    entries = []
    for col, element in enumerate(source.basis):
        moved = [0] * len(image)
        for old, new in enumerate(image):
            moved[new] = element.label[old]
        entries.append(((index[tuple(moved)], col), laurent()))
    return GRMatrix.build(_LAURENT, target.basis, source.basis, entries)


def verify_trace_square(first: TangleWord, second: TangleWord, k: int) -> Certificate:
    """
    Xi of `first second` followed by the seam rotation agrees with the
    trace swap followed by Xi of `second first`, on qHH_0 of the two
    tensor products. The rotation is compared exactly at q = 1; the
    q-exponents of sigma = Xi tau' Xi^-1 are reported per generator.

    :param first: an (n,m) planar word.
    :param second: an (m,n) planar word.
    """
    one = CKBimodule(first, k)
    two = CKBimodule(second, one.h)
    swap = trace_tau_prime(one, two)
    if not swap.well_defined:
        return Certificate("trace_square", False, 0, {"reason": "trace swap is not well defined"})
    before = _pair_images(first, second, k, TensorTrace(one, two))
    after = _pair_images(second, first, one.h, TensorTrace(two, one))
    try:
        sigma = after @ swap.matrix @ invert_matrix(before)
    except GroupRingException as e:
        return Certificate("trace_square", False, 0, {"reason": str(e)})
    rotation = seam_rotation(first, second, k)
    trivial = CyclicGroup.trivial()
    position = sigma.reduce(trivial).first_difference(rotation.reduce(trivial))
    ok = position is None and _is_monomial_permutation(sigma)
    exponents = {str(list(sigma.cols[j].label)): value.terms[0][0]
                 for (i, j), value in sigma.entries.items() if len(value.terms) == 1}
    return Certificate("trace_square", ok, len(sigma.cols),
                       None if ok else {"entry": None if position is None else list(position),
                                        "sigma": sigma.to_json()},
                       {"seam_exponents": exponents})
