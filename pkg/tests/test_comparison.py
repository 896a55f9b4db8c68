import unittest
from pathlib import Path

from qkhlab.groupring import ChainMapZG, CyclicGroup, GroupRingElem, GRMatrix
from qkhlab.tangles import TangleWord, load_tangle
from qkhlab.qtqft import V_PLUS, identify_basis
from qkhlab.platform import k_range
from qkhlab.hochschild import qch
from qkhlab.comparison import (a_map, adeg_defect, c_map, build_xi, verify_chain_map, verify_quasi_iso,
                               verify_deformed_face, verify_a_trace, verify_trace_square, deformed_faces,
                               seam_rotation)

FIXTURES = Path(__file__).parent / "fixtures"

Z = CyclicGroup.infinite()


def q(exponent, coeff=1):
    return GroupRingElem.monomial(Z, exponent, coeff)


def column(matrix, col):
    return {matrix.rows[i].label: value for (i, j), value in matrix.entries.items() if j == col}


class TestLocalMaps(unittest.TestCase):
    def test_wrap_then_restrict_is_identification(self):
        word = TangleWord.identity(2)
        ident = identify_basis(word, 1)
        self.assertTrue(ident.seeded)
        for a in (0, 1):
            matrix = c_map(word, 1, a) @ a_map(word, 1, a)
            for col, element in enumerate(matrix.cols):
                self.assertEqual(column(matrix, col), ident.images[element.label])

    def test_classical_wrap(self):
        word = TangleWord.identity(2)
        trivial = CyclicGroup.trivial()
        for a in (0, 1):
            self.assertEqual(a_map(word, 1, a).reduce(trivial),
                             a_map(word, 1, a, weighted=False).reduce(trivial))

    def test_single_strand(self):
        matrix = c_map(TangleWord.identity(1), 0, 0) @ a_map(TangleWord.identity(1), 0, 0)
        self.assertEqual(column(matrix, 0), {(V_PLUS,): q(-1)})


class TestXi(unittest.TestCase):
    def setUp(self):
        self.kink = load_tangle(FIXTURES / "kink.json")

    def test_single_strand(self):
        xi = build_xi(TangleWord.identity(1), 0)
        self.assertEqual(dict(xi.chain_map.component(0).entries), {(0, 0): q(-1)})
        self.assertTrue(verify_chain_map(xi.chain_map).ok)
        self.assertTrue(verify_quasi_iso(xi.chain_map, CyclicGroup(3), xi.certified_degrees(), xi.adeg).ok)

    def test_vanishes_above_degree_zero(self):
        xi = build_xi(self.kink, 0).chain_map
        for t in xi.source.degrees():
            for (_, col), _ in xi.component(t).entries.items():
                v, chain = xi.source.basis(t)[col].label
                self.assertEqual(len(chain), 1)

    def test_kink(self):
        for k in (0, 1):
            xi = build_xi(self.kink, k)
            self.assertTrue(verify_chain_map(xi.chain_map).ok)
            certificate = verify_quasi_iso(xi.chain_map, CyclicGroup(5), xi.certified_degrees(), xi.adeg)
            self.assertTrue(certificate.ok, certificate.to_json())

    def test_perturbed_map_fails(self):
        f = build_xi(self.kink, 0).chain_map
        found = None
        for t in f.source.degrees():
            hit_rows = {j for (j, _) in f.source.differential(t + 1).entries}
            hit_cols = {j for (_, j) in f.target.differential(t).entries}
            if not f.target.basis(t):
                continue
            for c in range(len(f.source.basis(t))):
                for r in range(len(f.target.basis(t))):
                    if c in hit_rows or r in hit_cols:
                        found = (t, r, c)
                        break
                if found:
                    break
            if found:
                break
        self.assertIsNotNone(found)
        t, r, c = found
        component = f.component(t)
        changed = GRMatrix.build(Z, component.rows, component.cols,
                                 list(component.entries.items()) + [((r, c), q(0))])
        perturbed = ChainMapZG(f.source, f.target, {**f.components, t: changed})
        certificate = verify_chain_map(perturbed)
        self.assertFalse(certificate.ok)
        self.assertIn(certificate.failure["hdeg"], (t, t + 1))

    def test_adeg_shift(self):
        xi = build_xi(TangleWord.identity(1), 0)
        self.assertEqual(xi.adeg, 1)
        self.assertIsNone(adeg_defect(xi.chain_map, xi.adeg))
        self.assertIsNotNone(adeg_defect(xi.chain_map, 0))
        certificate = verify_quasi_iso(xi.chain_map, CyclicGroup(3), xi.certified_degrees())
        self.assertFalse(certificate.ok)
        self.assertEqual(certificate.failure["adeg_shift"], 0)

    def test_crossings_in_negative_degrees(self):
        words = {"kink": self.kink,
                 "crossing_pos": TangleWord.from_pairs(2, 2, [("pos", 1)]),
                 "hopf": load_tangle(FIXTURES / "hopf.json")}
        for name, word in words.items():
            for k in k_range(word.n_left, word.n_right):
                with self.subTest(word=name, k=k):
                    xi = build_xi(word, k)
                    self.assertTrue(verify_chain_map(xi.chain_map).ok)
                    self.assertIsNone(adeg_defect(xi.chain_map, xi.adeg))

    def test_zero_map(self):
        f = build_xi(TangleWord.identity(1), 0).chain_map
        zero = ChainMapZG(f.source, f.target, {})
        self.assertTrue(verify_chain_map(zero).ok)
        self.assertFalse(verify_quasi_iso(zero, CyclicGroup(3), [0]).ok)


class TestIdentities(unittest.TestCase):
    def test_deformed_face(self):
        certificate = verify_deformed_face(TangleWord.identity(2), 1)
        self.assertTrue(certificate.ok)
        self.assertGreater(certificate.checked, 0)

    def test_faces_match_the_identification(self):
        word = TangleWord.identity(2)
        ident = identify_basis(word, 1)
        chains = qch(ident.module, 1).chains.get(1, ())
        self.assertGreater(len(chains), 0)
        for element in chains:
            m, x = element.label
            zeroth, last = deformed_faces(word, 1, m, x)
            self.assertEqual(zeroth, ident.project(ident.module.right_action(m, x)))
            self.assertEqual(zeroth, last)

    def test_a_trace(self):
        self.assertTrue(verify_a_trace(TangleWord.identity(2), 1).ok)
        self.assertTrue(verify_a_trace(TangleWord.identity(1), 0).ok)

    def test_trace_square_identity(self):
        certificate = verify_trace_square(TangleWord.identity(1), TangleWord.identity(1), 0)
        self.assertTrue(certificate.ok)
        self.assertEqual(certificate.checked, 1)

    def test_trace_square_through_a_cap(self):
        capcup = load_tangle(FIXTURES / "capcup.json")
        certificate = verify_trace_square(capcup, TangleWord.identity(2), 1)
        self.assertTrue(certificate.ok)
        self.assertGreater(certificate.checked, 0)

    def test_trace_square_unequal_boundaries(self):
        cup = TangleWord.from_pairs(1, 3, [("cup", 2)])
        cap = TangleWord.from_pairs(3, 1, [("cap", 2)])
        for k in k_range(1, 3):
            with self.subTest(k=k):
                self.assertTrue(verify_trace_square(cup, cap, k).ok)

    def test_seam_rotation_moves_slices(self):
        cup = TangleWord.from_pairs(1, 3, [("cup", 2)])
        cap = TangleWord.from_pairs(3, 1, [("cap", 2)])
        rotation = seam_rotation(cup, cap, 0)
        self.assertEqual(rotation.shape[0], rotation.shape[1])
        self.assertEqual(len(rotation.entries), rotation.shape[1])


if __name__ == "__main__":
    unittest.main()
