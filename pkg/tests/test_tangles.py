import io
import unittest
from pathlib import Path

from qkhlab.tangles import (SliceKind, TangleWord, TangleException, TangleFileException,
                            NonEdgeError, TangleParser, load_tangle, dump_tangle, validate,
                            resolve, add_strands, trace_closure, closure_config, edge_saddle,
                            sign_assignment, SaddleKind, orientation, arc_inside)

FIXTURES = Path(__file__).parent / "fixtures"


class TestWords(unittest.TestCase):
    def setUp(self):
        self.kink = load_tangle(FIXTURES / "kink.json")
        self.crossing = TangleWord.from_pairs(2, 2, [("pos", 1)])

    def test_kink_counts(self):
        self.assertEqual(self.kink.strand_counts(), [1, 3, 3, 1])
        self.assertEqual(self.kink.crossings, [1])
        self.assertEqual((self.kink.n_plus, self.kink.n_minus), (1, 0))

    def test_validate_names_slice(self):
        with self.assertRaisesRegex(TangleException, "slice 0"):
            validate(TangleWord.from_pairs(1, 1, [("cap", 1)]))

    def test_validate_parity(self):
        with self.assertRaises(TangleException):
            validate(TangleWord(1, 2, ()))

    def test_resolve_positive_crossing(self):
        self.assertEqual(resolve(self.crossing, (0,)).slices, ())
        kinds = [s.kind for s in resolve(self.crossing, (1,)).slices]
        self.assertEqual(kinds, [SliceKind.CAP, SliceKind.CUP])

    def test_resolve_negative_crossing(self):
        negative = TangleWord.from_pairs(2, 2, [("neg", 1)])
        self.assertEqual(len(resolve(negative, (0,)).slices), 2)
        self.assertEqual(resolve(negative, (1,)).slices, ())

    def test_resolve_rejects_bad_vertex(self):
        with self.assertRaises(TangleException):
            resolve(self.crossing, (0, 1))

    def test_add_strands(self):
        padded = add_strands(self.crossing, 1)
        self.assertEqual((padded.n_left, padded.n_right), (4, 4))
        self.assertEqual(padded.slices[0].position, 2)

    def test_dump(self):
        self.assertEqual(dump_tangle(self.kink),
                         {"n_left": 1, "n_right": 1,
                          "slices": [["cup", 2], ["pos", 1], ["cap", 2]]})


class TestParser(unittest.TestCase):
    def parse(self, text):
        return TangleParser().parse(handle=io.StringIO(text))

    def test_parse_handle(self):
        word = self.parse('{"n_left": 2, "n_right": 2, "slices": [["POS", 1]]}')
        self.assertEqual(word.crossing_count, 1)

    def test_invalid_json(self):
        with self.assertRaises(TangleFileException):
            self.parse("{not json")

    def test_unknown_key(self):
        with self.assertRaisesRegex(TangleFileException, "unrecognized"):
            self.parse('{"n_left": 0, "n_right": 0, "slices": [], "name": "x"}')

    def test_unknown_kind(self):
        with self.assertRaisesRegex(TangleFileException, "slice 0"):
            self.parse('{"n_left": 2, "n_right": 2, "slices": [["twist", 1]]}')

    def test_broken_fixture(self):
        with self.assertRaisesRegex(TangleFileException, "slice 0"):
            load_tangle(FIXTURES / "broken.json")

    def test_missing_file(self):
        with self.assertRaises(TangleFileException):
            load_tangle(FIXTURES / "missing.json")


class TestAnnular(unittest.TestCase):
    def test_identity_one(self):
        config = trace_closure(TangleWord.identity(1))
        self.assertEqual(len(config.circles), 1)
        self.assertTrue(config.circles[0].essential)
        self.assertEqual(config.circles[0].nesting, 1)

    def test_free_circle_is_trivial(self):
        config = trace_closure(TangleWord.from_pairs(0, 0, [("cup", 1), ("cap", 1)]))
        self.assertEqual(len(config.circles), 1)
        self.assertFalse(config.circles[0].essential)
        self.assertIsNone(config.circles[0].nesting)
        self.assertEqual(config.circles[0].seam_passages, 0)

    def test_nesting_ranks(self):
        config = trace_closure(TangleWord.identity(3))
        self.assertEqual([c.nesting for c in config.circles], [1, 2, 3])

    def test_capcup_crosses_seam_twice(self):
        config = trace_closure(load_tangle(FIXTURES / "capcup.json"))
        self.assertEqual(len(config.circles), 1)
        circle = config.circles[0]
        self.assertFalse(circle.essential)
        self.assertEqual(circle.seam_passages, 2)

    def test_added_strands(self):
        config = trace_closure(add_strands(TangleWord.identity(2), 1))
        self.assertEqual(len(config.essential), 4)

    def test_trace_rejects_crossings(self):
        with self.assertRaises(TangleException):
            trace_closure(TangleWord.from_pairs(2, 2, [("pos", 1)]))

    def test_kink_resolutions(self):
        kink = load_tangle(FIXTURES / "kink.json")
        zero = closure_config(kink, (0,))
        self.assertEqual((len(zero.essential), len(zero.trivial)), (1, 1))
        one = closure_config(kink, (1,))
        self.assertEqual((len(one.essential), len(one.trivial)), (1, 0))


class TestCubeEdges(unittest.TestCase):
    def setUp(self):
        self.positive = TangleWord.from_pairs(2, 2, [("pos", 1)])
        self.negative = TangleWord.from_pairs(2, 2, [("neg", 1)])

    def test_positive_crossing_merges(self):
        saddle = edge_saddle(self.positive, (0,), (1,))
        self.assertIs(saddle.kind, SaddleKind.MERGE)
        self.assertEqual(len(saddle.source_circles), 2)
        self.assertFalse(saddle.seam_local)

    def test_negative_crossing_splits(self):
        saddle = edge_saddle(self.negative, (0,), (1,))
        self.assertIs(saddle.kind, SaddleKind.SPLIT)
        self.assertEqual(len(saddle.target_circles), 2)

    def test_kink_merge(self):
        saddle = edge_saddle(load_tangle(FIXTURES / "kink.json"), (0,), (1,))
        self.assertIs(saddle.kind, SaddleKind.MERGE)

    def test_non_edge(self):
        hopf = load_tangle(FIXTURES / "hopf.json")
        with self.assertRaises(NonEdgeError):
            edge_saddle(hopf, (0, 0), (1, 1))
        with self.assertRaises(NonEdgeError):
            edge_saddle(hopf, (1, 0), (0, 0))

    def test_signs(self):
        self.assertEqual(sign_assignment((0, 0), (1, 0)), 1)
        self.assertEqual(sign_assignment((0, 0), (0, 1)), 1)
        self.assertEqual(sign_assignment((1, 0), (1, 1)), -1)
        self.assertEqual(sign_assignment((0, 1), (1, 1)), 1)

    def test_square_anticommutes(self):
        product_a = sign_assignment((0, 0), (1, 0)) * sign_assignment((1, 0), (1, 1))
        product_b = sign_assignment((0, 0), (0, 1)) * sign_assignment((0, 1), (1, 1))
        self.assertEqual(product_a, -product_b)


class TestGeometry(unittest.TestCase):
    def test_orientation_sign(self):
        config = trace_closure(TangleWord.identity(1))
        self.assertEqual(orientation(config, config.diagram.circles[0]), 1)
        free = trace_closure(TangleWord.from_pairs(0, 0, [("cup", 1), ("cap", 1)]))
        self.assertEqual(orientation(free, free.diagram.circles[0]), 1)

    def test_arc_between_essential_circles(self):
        config = closure_config(TangleWord.from_pairs(2, 2, [("pos", 1)]), (0,))
        inner, outer = config.diagram.circles
        self.assertFalse(arc_inside(config, 0, inner))
        self.assertTrue(arc_inside(config, 0, outer))
        self.assertFalse(edge_saddle(config.word, (0,), (1,)).arc_inside)


if __name__ == "__main__":
    unittest.main()
