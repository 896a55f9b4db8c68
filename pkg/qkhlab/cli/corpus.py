"""
The acceptance sweep behind `qkh-lab corpus`. Each check is a plain
function returning result rows, so independent checks can be fanned out
to a process pool.
"""
from __future__ import annotations
from typing import Any, Callable, Optional
from collections.abc import Sequence

from itertools import product
from multiprocessing import Pool
import logging

from qkhlab.groupring import CyclicGroup, GroupRingElem, homology_all
from qkhlab.tangles import TangleWord
from qkhlab.platform import CKBimodule, enumerate_matchings, gluing_count, gluing_iso, k_range, shift_s
from qkhlab.qtqft import (ClosedSurface, ExponentTable, akc, bundt_torus, eval_closed, qakc,
                          torus_offset, verify_oracle_agreement, saddle_matrix_fast, annular_saddle_matrix,
                          cube_edges, verify_rotation)
from qkhlab.hochschild import ch, hh0_quotient, qch, qhh, twist_bimodule
from qkhlab.comparison import (build_xi, verify_a_trace, verify_chain_map, verify_deformed_face, verify_quasi_iso,
                               verify_trace_square)
from qkhlab.burnside import burnside_cube, verify_coherence

Row = dict[str, Any]

_log = logging.getLogger("qkhlab.cli")

_WORDS: dict[str, tuple[int, int, tuple]] = {
    "identity_1": (1, 1, ()),
    "identity_2": (2, 2, ()),
    "identity_3": (3, 3, ()),
    "kink": (1, 1, (("cup", 2), ("pos", 1), ("cap", 2))),
    "kink_neg": (1, 1, (("cup", 2), ("neg", 1), ("cap", 2))),
    "crossing_pos": (2, 2, (("pos", 1),)),
    "crossing_neg": (2, 2, (("neg", 1),)),
    "hopf": (2, 2, (("pos", 1), ("pos", 1))),
    "double_kink": (1, 1, (("cup", 2), ("pos", 1), ("cap", 2), ("cup", 2), ("neg", 1), ("cap", 2))),
    "unknot": (0, 0, (("cup", 1), ("cap", 1))),
    "cup_13": (1, 3, (("cup", 2),)),
    "cap_31": (3, 1, (("cap", 2),)),
    "cup_35": (3, 5, (("cup", 4),)),
    "capcup": (2, 2, (("cap", 1), ("cup", 1))),
    "kink_tail": (3, 1, (("pos", 1), ("cap", 2))),
    "ladybug": (0, 0, (("cup", 1), ("cup", 1), ("pos", 2), ("pos", 1), ("cap", 2), ("cap", 1))),
    "ladybug_braid": (0, 0, (("cup", 1), ("cup", 1), ("pos", 1), ("pos", 2), ("pos", 1), ("cap", 2), ("cap", 1))),
}

XI_CORPUS = ("identity_1", "identity_2", "identity_3", "kink", "kink_neg", "crossing_pos",
             "crossing_neg", "hopf")


def word(name: str) -> TangleWord:
    n_left, n_right, pairs = _WORDS[name]
    return TangleWord.from_pairs(n_left, n_right, pairs)


def _vertices(w: TangleWord) -> list[tuple[int, ...]]:
    return list(product((0, 1), repeat=w.crossing_count))


def _row(check: str, instance: str, ok: bool, details: Optional[dict[str, Any]] = None) -> Row:
    row: Row = {"check": check, "instance": instance, "ok": bool(ok)}
    if details:
        row["details"] = details
    return row


def check_chain_map() -> list[Row]:
    rows = []
    for name in XI_CORPUS:
        w = word(name)
        for k in k_range(w.n_left, w.n_right):
            certificate = verify_chain_map(build_xi(w, k).chain_map)
            rows.append(_row("chain_map", f"{name} k={k}", certificate.ok, certificate.to_json()))
    return rows


def check_quasi_iso() -> list[Row]:
    rows = []
    for name in XI_CORPUS:
        w = word(name)
        for k in k_range(w.n_left, w.n_right):
            xi = build_xi(w, k)
            for order in (3, 5):
                certificate = verify_quasi_iso(xi.chain_map, CyclicGroup(order), xi.certified_degrees(), xi.adeg)
                rows.append(_row("cone_acyclic", f"{name} k={k} G=Z/{order}", certificate.ok,
                                 certificate.to_json()))
    return rows


def check_higher_vanishing() -> list[Row]:
    rows = []
    group = CyclicGroup(3)
    for name in ("identity_1", "identity_2", "kink", "crossing_pos", "crossing_neg", "hopf"):
        w = word(name)
        if w.n_left > 2:
            continue
        for v in _vertices(w):
            for k in k_range(w.n_left, w.n_right):
                module = CKBimodule(w, k, v)
                zero = all(qhh(module, i, group).is_zero() for i in (1, 2))
                rows.append(_row("higher_qhh_vanishes", f"{name} v={v} k={k}", zero))
    return rows


def check_rank_law() -> list[Row]:
    rows = []
    for n in range(1, 4):
        total = 0
        for k in range(n + 1):
            quotient = hh0_quotient(CKBimodule(TangleWord.identity(n), k))
            rank = len(quotient.survivors)
            total += rank
            rows.append(_row("qhh0_rank", f"n={n} k={k}",
                             quotient.is_free and rank == len(enumerate_matchings(n, k)), {"rank": rank}))
        rows.append(_row("qhh0_rank", f"n={n}", total == 2 ** n, {"rank": total}))
    return rows


def check_specialization() -> list[Row]:
    rows = []
    trivial = CyclicGroup.trivial()
    for name in ("unknot", "identity_1", "hopf"):
        w = word(name)
        quantum = {i: s.to_json() for i, s in homology_all(qakc(w, trivial)).items()}
        classical = {i: s.to_json() for i, s in homology_all(akc(w)).items()}
        rows.append(_row("q1_specialization", name, quantum == classical))
    return rows


def check_degree_arithmetic() -> list[Row]:
    rows = [_row("shift_s", "(3,1)(1,3) vs (3,3)",
                 (shift_s(3, 1) + shift_s(1, 3), shift_s(3, 3)) == (-5, -3)),
            _row("shift_s", "(1,3)(3,5) vs (1,5)",
                 (shift_s(1, 3) + shift_s(3, 5), shift_s(1, 5)) == (-4, -1))]
    balanced = all(gluing_count(p, n, m).balanced
                   for p, n, m in product(range(7), repeat=3) if not (p - n) % 2 and not (n - m) % 2)
    rows.append(_row("gluing_count_balanced", "p, n, m < 7", balanced))
    for first, second in (("identity_1", "identity_1"), ("identity_2", "identity_2"), ("cup_13", "cap_31"),
                          ("cap_31", "cup_13"), ("cup_13", "cup_35"), ("kink", "cup_13")):
        w = word(first)
        for k in k_range(w.n_left, w.n_right):
            iso = gluing_iso(w, word(second), k)
            rows.append(_row("gluing_iso", f"{first} {second} k={k}", iso.ok, iso.to_json()))
    return rows


def check_oracle_agreement() -> list[Row]:
    rows = []
    table = ExponentTable()
    trivial = CyclicGroup.trivial()
    for name in ("kink", "kink_neg", "crossing_pos", "crossing_neg", "hopf", "double_kink"):
        w = word(name)
        agreement = verify_oracle_agreement(w, table)
        classical = all(saddle_matrix_fast(w, v, u, table).reduce(trivial)
                        == annular_saddle_matrix(w, v, u, trivial) for v, u in cube_edges(w))
        rows.append(_row("oracle_agreement", name, agreement.ok and classical, agreement.to_json()))
    return rows


def check_twist() -> list[Row]:
    rows = []
    for name in ("identity_1", "identity_2", "crossing_pos"):
        w = word(name)
        for v in _vertices(w):
            for k in k_range(w.n_left, w.n_right):
                module = CKBimodule(w, k, v)
                quantum, classical = qch(module, 2), ch(twist_bimodule(module), 2)
                same = all(quantum.chains[i] == classical.chains[i]
                           and quantum.differential(i) == classical.differential(i) for i in (1, 2))
                rows.append(_row("twist_identity", f"{name} v={v} k={k}", same))
    return rows


def check_burnside() -> list[Row]:
    rows = []
    for name in ("kink", "crossing_pos", "hopf", "double_kink", "ladybug", "ladybug_braid"):
        report = verify_coherence(burnside_cube(word(name)))
        rows.append(_row("burnside_coherence", name, report.ok, report.to_json()))
    cube = burnside_cube(word("ladybug_braid"))
    for face in cube.ladybug_faces():
        report = verify_coherence(cube, flipped=[face])
        rows.append(_row("flipped_ladybug", f"ladybug_braid {face}", not report.hexagons_ok,
                         {"failures": list(report.failures)}))
    return rows


def check_surfaces() -> list[Row]:
    one = GroupRingElem.one(CyclicGroup.infinite())
    torus = eval_closed(ClosedSurface(1, winding=1, offset=2))
    return [_row("sphere", "undotted", not eval_closed(ClosedSurface(0))),
            _row("sphere", "one dot", eval_closed(ClosedSurface(0, dots=1)) == one),
            _row("sphere", "two dots", not eval_closed(ClosedSurface(0, dots=2))),
            _row("torus", "w=1 l=2", torus.exponents() == [2, 4]),
            _row("bundt_torus", "w=1", bundt_torus() == eval_closed(
                ClosedSurface(1, winding=1, offset=torus_offset())))]


def check_identities() -> list[Row]:
    rows = []
    for name in ("identity_1", "identity_2", "crossing_pos"):
        w = word(name)
        for v in _vertices(w):
            for k in k_range(w.n_left, w.n_right):
                face = verify_deformed_face(w, k, v)
                trace = verify_a_trace(w, k, v)
                rows.append(_row("deformed_face", f"{name} v={v} k={k}", face.ok, face.to_json()))
                rows.append(_row("a_trace", f"{name} v={v} k={k}", trace.ok, trace.to_json()))
    for first, second in (("capcup", "identity_2"), ("cup_13", "cap_31")):
        w = word(first)
        for k in k_range(w.n_left, w.n_right):
            square = verify_trace_square(w, word(second), k)
            rows.append(_row("trace_square", f"{first} {second} k={k}", square.ok, square.to_json()))
    return rows



def check_rotation() -> list[Row]:
    rows = []
    for first, second in (("cup_13", "cap_31"), ("cup_13", "kink_tail")):
        check = verify_rotation(word(first), word(second), CyclicGroup(3))
        rows.append(_row("seam_rotation", f"{first} {second} G=Z/3", check.ok))
    return rows

CHECKS: dict[str, Callable[[], list[Row]]] = {
    "chain_map": check_chain_map,
    "cone_acyclic": check_quasi_iso,
    "higher_vanishing": check_higher_vanishing,
    "rank_law": check_rank_law,
    "specialization": check_specialization,
    "degree_arithmetic": check_degree_arithmetic,
    "oracle_agreement": check_oracle_agreement,
    "twist": check_twist,
    "burnside": check_burnside,
    "surfaces": check_surfaces,
    "identities": check_identities,
    "rotation": check_rotation,
}


def _run_check(name: str) -> list[Row]:
    _log.info("corpus: running %s", name)
    return CHECKS[name]()


def run_corpus(only: Optional[Sequence[str]] = None, workers: int = 1) -> dict[str, Any]:
    """
    Rows come back in CHECKS order whatever the pool width.

    :raises KeyError: for an unknown check name.
    """
    names = list(CHECKS) if only is None else list(only)
    unknown = [name for name in names if name not in CHECKS]
    if unknown:
        raise KeyError(f"unknown checks: {', '.join(unknown)}")
    if workers > 1 and len(names) > 1:
        with Pool(min(workers, len(names))) as executor:
            results = executor.map(_run_check, names)
    else:
        results = [_run_check(name) for name in names]
    rows = [row for found in results for row in found]
    summary = {name: {"rows": len(found), "failed": sum(1 for row in found if not row["ok"])}
               for name, found in zip(names, results)}
    return {"ok": all(row["ok"] for row in rows), "summary": summary, "rows": rows}
