import unittest
from collections import Counter
from pathlib import Path

from qkhlab.groupring import BasisElement, CyclicGroup, GroupRingElem
from qkhlab.tangles import TangleWord, closure_config, load_tangle
from qkhlab.qtqft import annular_saddle_matrix, saddle_matrix_oracle
from qkhlab.burnside import (BurnsideException, CorrElement, Correspondence, GSet, TwoMorphism,
                             burnside_cube, compose, face_bijection, face_two_iso, ladybug_point, linearize,
                             verify_coherence)

FIXTURES = Path(__file__).parent / "fixtures"

Z = CyclicGroup.infinite()

X = GSet((BasisElement("x"),))
Y = GSet((BasisElement("y0"), BasisElement("y1")))
W = GSet((BasisElement("w"),))


def q(exponent, coeff=1):
    return GroupRingElem.monomial(Z, exponent, coeff)


class TestCorrespondences(unittest.TestCase):
    def setUp(self):
        self.first = Correspondence(X, Y, (CorrElement("x", "y0", 2), CorrElement("x", "y1", -1)))
        self.second = Correspondence(Y, W, (CorrElement("y0", "w", 3), CorrElement("y1", "w", 1, "o"),
                                            CorrElement("y1", "w", 1, "w")))

    def test_exponents_add(self):
        single = Correspondence(Y, W, (CorrElement("y0", "w", 3),))
        composite = compose(single, self.first)
        self.assertEqual([e.key for e in composite.elements], [("x", "w", 5)])

    def test_identity(self):
        composite = compose(Correspondence.identity(Y), self.first)
        self.assertEqual(composite.counts(), self.first.counts())

    def test_linearize(self):
        self.assertEqual(dict(linearize(self.second).entries), {(0, 0): q(3), (0, 1): q(1, 2)})
        empty = Correspondence(X, Y, ())
        self.assertTrue(linearize(empty).is_zero())

    def test_linearize_composite(self):
        self.assertEqual(linearize(compose(self.second, self.first)),
                         linearize(self.second) @ linearize(self.first))
        self.assertEqual(dict(linearize(compose(self.second, self.first)).entries), {(0, 0): q(0, 2) + q(5)})

    def test_reduced_exponents(self):
        matrix = linearize(self.first, CyclicGroup(3))
        self.assertEqual(matrix.entry(1, 0), GroupRingElem.monomial(CyclicGroup(3), 2))

    def test_repeated_element(self):
        with self.assertRaises(BurnsideException):
            Correspondence(X, Y, (CorrElement("x", "y0", 0), CorrElement("x", "y0", 0)))

    def test_foreign_element(self):
        with self.assertRaises(BurnsideException):
            Correspondence(X, Y, (CorrElement("x", "w", 0),))

    def test_mismatched_middle(self):
        with self.assertRaises(BurnsideException):
            compose(self.first, self.first)

    def test_two_morphism(self):
        swap = TwoMorphism(self.second, self.second,
                           {e: CorrElement(e.source, e.target, e.exponent, {"o": "w", "w": "o"}[e.tag])
                            if e.source == "y1" else e for e in self.second.elements})
        self.assertEqual(swap.inverse()(swap(self.second.elements[1])), self.second.elements[1])
        with self.assertRaises(BurnsideException):
            TwoMorphism(self.first, self.first, {self.first.elements[0]: self.first.elements[1],
                                                 self.first.elements[1]: self.first.elements[0]})


class TestCube(unittest.TestCase):
    def setUp(self):
        self.kink = load_tangle(FIXTURES / "kink.json")
        self.double = load_tangle(FIXTURES / "double_kink.json")

    def test_kink_edges(self):
        cube = burnside_cube(self.kink)
        edge = cube.edges[((0,), (1,))]
        self.assertEqual(len(edge.elements), 2)
        self.assertEqual(linearize(edge), saddle_matrix_oracle(self.kink, (0,), (1,)))
        trivial = CyclicGroup.trivial()
        self.assertEqual(linearize(edge, trivial), annular_saddle_matrix(self.kink, (0,), (1,), trivial))

    def test_oracle_method(self):
        fast = burnside_cube(self.kink)
        oracle = burnside_cube(self.kink, method="oracle")
        self.assertEqual(fast.edges[((0,), (1,))].counts(), oracle.edges[((0,), (1,))].counts())
        with self.assertRaises(BurnsideException):
            burnside_cube(self.kink, method="guess")

    def test_crossingless_is_vacuous(self):
        report = verify_coherence(burnside_cube(TangleWord.identity(1)))
        self.assertTrue(report.ok)
        self.assertEqual((report.edges, report.faces, report.hexagons), (0, 0, 0))

    def test_double_kink_face(self):
        cube = burnside_cube(self.double)
        self.assertEqual(cube.faces(), [((0, 0), 0, 1)])
        iso = face_two_iso(cube, (0, 0), 0, 1)
        self.assertEqual(len(iso.mapping), len(cube.composite((0, 0), 0, 1).elements))
        report = verify_coherence(cube)
        self.assertTrue(report.ok, report.to_json())
        self.assertTrue(report.anticommute)
        self.assertEqual((report.edges, report.faces, report.hexagons), (4, 1, 0))
        self.assertTrue(verify_coherence(cube, CyclicGroup(4)).edges_match)


class TestLadybug(unittest.TestCase):
    def setUp(self):
        self.single = burnside_cube(load_tangle(FIXTURES / "ladybug.json"))
        self.braid = burnside_cube(load_tangle(FIXTURES / "ladybug_braid.json"))

    def test_single_face(self):
        face = ((0, 0), 0, 1)
        self.assertEqual(self.single.ladybug_faces(), [face])
        self.assertIsNotNone(ladybug_point(self.single, *face))
        report = verify_coherence(self.single)
        self.assertTrue(report.ok, report.to_json())
        self.assertEqual((report.edges, report.faces, report.ladybug_faces, report.hexagons), (4, 1, 1, 0))

    def test_pairs_share_the_marked_circle(self):
        v, i, j = self.single.ladybug_faces()[0]
        point = ladybug_point(self.single, v, i, j)
        before = closure_config(self.single.word, (1, 0)).diagram.circle_index(point)
        after = closure_config(self.single.word, (0, 1)).diagram.circle_index(point)
        keys = Counter((p[0].source, p[1].target, p[0].exponent + p[1].exponent)
                       for p in face_bijection(self.single, v, i, j))
        shared = 0
        for left, right in face_bijection(self.single, v, i, j).items():
            if keys[(left[0].source, left[1].target, left[0].exponent + left[1].exponent)] > 1:
                shared += 1
                self.assertEqual(left[0].target[before], right[0].target[after])
        self.assertGreater(shared, 0)

    def test_braid_hexagons(self):
        faces = self.braid.ladybug_faces()
        self.assertEqual(len(faces), 2)
        report = verify_coherence(self.braid)
        self.assertTrue(report.ok, report.to_json())
        self.assertEqual(report.ladybug_faces, 2)

    def test_flipped_ladybug_breaks_a_hexagon(self):
        for face in self.braid.ladybug_faces():
            report = verify_coherence(self.braid, flipped=[face])
            self.assertFalse(report.hexagons_ok)
            self.assertFalse(report.ok)
            self.assertTrue(report.faces_ok)


if __name__ == "__main__":
    unittest.main()
