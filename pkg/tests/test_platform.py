import unittest
from itertools import product
from pathlib import Path

from qkhlab.tangles import TangleWord, load_tangle
from qkhlab.platform import (CircleType, PlatformException,
                             enumerate_matchings, shift_s, k_range, gluing_count, classify_circles,
                             build_platform_algebra, build_ck_bimodule, build_ck_complex, gluing_iso,
                             merge_label, split_labels, ONE, X)

FIXTURES = Path(__file__).parent / "fixtures"

E_C = (0, 0, (0, 0))
E_D = (1, 1, (0, 0))
X_D = (1, 1, (0, 1))
ALPHA = (0, 1, (0,))
BETA = (1, 0, (0,))

CUP_13 = TangleWord.from_pairs(1, 3, [("cup", 2)])
CAP_31 = TangleWord.from_pairs(3, 1, [("cap", 2)])


class TestMatchings(unittest.TestCase):
    def test_counts(self):
        self.assertEqual(len(enumerate_matchings(1, 0)), 1)
        self.assertEqual(len(enumerate_matchings(1, 1)), 1)
        self.assertEqual(len(enumerate_matchings(2, 1)), 2)
        self.assertEqual(len(enumerate_matchings(3, 1)), 3)

    def test_counts_sum_to_power_of_two(self):
        for n in range(7):
            total = sum(len(enumerate_matchings(n, k)) for k in range(n + 1))
            self.assertEqual(total, 2 ** n)

    def test_order(self):
        pairs = [a.pairs for a in enumerate_matchings(2, 1)]
        self.assertEqual(pairs, [((1, 2), (3, 4)), ((1, 4), (2, 3))])

    def test_k_out_of_range(self):
        with self.assertRaises(PlatformException):
            enumerate_matchings(2, 3)

    def test_shifts(self):
        self.assertEqual(shift_s(1, 3) + shift_s(3, 1), -5)
        self.assertEqual(shift_s(3, 3), -3)
        self.assertEqual(shift_s(1, 3) + shift_s(3, 5), -4)
        self.assertEqual(shift_s(1, 5), -1)
        self.assertEqual(shift_s(2, 2), -2)
        with self.assertRaises(PlatformException):
            shift_s(1, 2)

    def test_k_range(self):
        self.assertEqual(list(k_range(1, 3)), [0, 1])
        self.assertEqual(list(k_range(3, 1)), [1, 2])

    def test_gluing_counts(self):
        first = gluing_count(3, 1, 3)
        self.assertEqual((first.saddles, first.removals, first.degree), (2, 0, -2))
        self.assertEqual((first.source_shift, first.target_shift), (-5, -3))
        self.assertTrue(first.balanced)
        second = gluing_count(1, 3, 5)
        self.assertEqual((second.saddles, second.removals, second.degree), (3, 0, -3))
        self.assertEqual((second.source_shift, second.target_shift), (-4, -1))
        self.assertTrue(second.balanced)
        third = gluing_count(1, 3, 1)
        self.assertEqual((third.saddles, third.removals), (3, 1))
        self.assertTrue(third.balanced)

    def test_gluing_counts_balance(self):
        for p, n, m in product(range(7), repeat=3):
            if (p - n) % 2 or (n - m) % 2:
                continue
            self.assertTrue(gluing_count(p, n, m).balanced, (p, n, m))


class TestFrobenius(unittest.TestCase):
    def test_rules(self):
        self.assertEqual(merge_label(ONE, ONE), ONE)
        self.assertEqual(merge_label(ONE, X), X)
        self.assertIsNone(merge_label(X, X))
        self.assertEqual(split_labels(ONE), [(ONE, X), (X, ONE)])
        self.assertEqual(split_labels(X), [(X, X)])


class TestClosures(unittest.TestCase):
    def test_single_strand_is_type_two(self):
        a = enumerate_matchings(1, 0)[0]
        self.assertEqual(classify_circles(a, TangleWord.identity(1), a), (CircleType.TYPE_II,))

    def test_free_circle_is_type_one(self):
        d = enumerate_matchings(2, 1)[1]
        types = classify_circles(d, TangleWord.identity(2), d)
        self.assertEqual(types, (CircleType.TYPE_II, CircleType.TYPE_I))

    def test_double_bottom_hit(self):
        a = enumerate_matchings(2, 0)[0]
        types = classify_circles(a, load_tangle(FIXTURES / "capcup.json"), a)
        self.assertIn(CircleType.TYPE_III, types)

    def test_rejects_crossings(self):
        a = enumerate_matchings(2, 1)[0]
        with self.assertRaises(PlatformException):
            classify_circles(a, TangleWord.from_pairs(2, 2, [("pos", 1)]), a)

    def test_rejects_wrong_weight(self):
        with self.assertRaises(PlatformException):
            classify_circles(enumerate_matchings(2, 1)[0], TangleWord.identity(2),
                             enumerate_matchings(2, 0)[0])


class TestAlgebra(unittest.TestCase):
    def setUp(self):
        self.algebra = build_platform_algebra(2, 1)

    def test_small_ranks(self):
        self.assertEqual(len(build_platform_algebra(1, 0).basis), 1)
        self.assertEqual(len(build_platform_algebra(1, 1).basis), 1)

    def test_basis(self):
        labels = {e.label for e in self.algebra.basis}
        self.assertEqual(labels, {E_C, E_D, X_D, ALPHA, BETA})
        self.assertEqual(self.algebra.idempotents, (E_C, E_D))

    def test_degrees(self):
        degrees = {e.label: e.qdeg for e in self.algebra.basis}
        self.assertEqual(degrees, {E_C: 0, E_D: 0, X_D: -2, ALPHA: -1, BETA: -1})

    def test_products(self):
        self.assertEqual(self.algebra.multiply(BETA, ALPHA), {X_D: 1})
        self.assertEqual(self.algebra.multiply(ALPHA, BETA), {})
        self.assertEqual(self.algebra.multiply(E_C, ALPHA), {ALPHA: 1})
        self.assertEqual(self.algebra.multiply(ALPHA, E_D), {ALPHA: 1})
        self.assertEqual(self.algebra.multiply(E_D, ALPHA), {})
        self.assertEqual(self.algebra.multiply(X_D, X_D), {})

    def test_associative_and_unital(self):
        for n, k in [(1, 0), (1, 1), (2, 0), (2, 1), (2, 2)]:
            algebra = build_platform_algebra(n, k)
            self.assertIsNone(algebra.associativity_defect(), (n, k))
            self.assertIsNone(algebra.unit_defect(), (n, k))
            self.assertIsNone(algebra.degree_defect(), (n, k))

    def test_degrees_nonpositive(self):
        algebra = build_platform_algebra(3, 1)
        self.assertTrue(all(e.qdeg <= 0 for e in algebra.basis))


class TestBimodule(unittest.TestCase):
    def setUp(self):
        self.capcup = build_ck_bimodule(load_tangle(FIXTURES / "capcup.json"), 1)

    def test_identity_matches_algebra(self):
        module = build_ck_bimodule(TangleWord.identity(2), 1)
        algebra = build_platform_algebra(2, 1)
        self.assertEqual(module.basis, algebra.basis)

    def test_capcup_rank(self):
        self.assertEqual(len(self.capcup.basis), 9)
        self.assertEqual(len(self.capcup.summand(1, 1)), 4)

    def test_idempotents_act_by_summand(self):
        for element in self.capcup.basis:
            a, b, _ = element.label
            for e in (E_C, E_D):
                expected = {element.label: 1} if e[0] == a else {}
                self.assertEqual(self.capcup.left_action(e, element.label), expected)
                expected = {element.label: 1} if e[0] == b else {}
                self.assertEqual(self.capcup.right_action(element.label, e), expected)

    def test_actions_commute(self):
        algebra = [e.label for e in build_platform_algebra(2, 1).basis]
        module = self.capcup
        for x, m, y in product(algebra, [e.label for e in module.basis], algebra):
            first = {}
            for z, c in module.left_action(x, m).items():
                for w, d in module.right_action(z, y).items():
                    first[w] = first.get(w, 0) + c * d
            second = {}
            for z, c in module.right_action(m, y).items():
                for w, d in module.left_action(x, z).items():
                    second[w] = second.get(w, 0) + c * d
            self.assertEqual({k: v for k, v in first.items() if v},
                             {k: v for k, v in second.items() if v}, (x, m, y))

    def test_k_out_of_range(self):
        with self.assertRaises(PlatformException):
            build_ck_bimodule(TangleWord.identity(1), 2)

    def test_crossings_need_vertex(self):
        with self.assertRaises(PlatformException):
            build_ck_bimodule(load_tangle(FIXTURES / "hopf.json"), 1)


class TestComplex(unittest.TestCase):
    def test_planar_word_sits_in_degree_zero(self):
        complex_ = build_ck_complex(load_tangle(FIXTURES / "capcup.json"), 1)
        self.assertEqual(list(complex_.chains), [0])
        self.assertEqual(len(complex_.chains[0]), 9)

    def test_kink(self):
        complex_ = build_ck_complex(load_tangle(FIXTURES / "kink.json"), 0)
        ranks = {i: len(basis) for i, basis in complex_.chains.items()}
        self.assertEqual(ranks, {0: 2, -1: 1})
        graded = complex_.to_graded()
        self.assertFalse(graded.differential(0).is_zero())
        complex_.verify()

    def test_hopf_squares_to_zero(self):
        complex_ = build_ck_complex(load_tangle(FIXTURES / "hopf.json"), 1)
        self.assertEqual(sorted(complex_.chains), [-2, -1, 0])
        complex_.verify()


class TestGluing(unittest.TestCase):
    def test_identity_strands(self):
        iso = gluing_iso(TangleWord.identity(1), TangleWord.identity(1), 0)
        self.assertTrue(iso.ok)
        self.assertEqual(len(iso.sources), 1)
        self.assertEqual(iso.count.saddles, 1)

    def test_algebra_with_itself(self):
        iso = gluing_iso(TangleWord.identity(2), TangleWord.identity(2), 1)
        self.assertTrue(iso.ok)
        self.assertEqual(len(iso.sources), 5)

    def test_capcup_with_identity(self):
        iso = gluing_iso(load_tangle(FIXTURES / "capcup.json"), TangleWord.identity(2), 1)
        self.assertTrue(iso.invertible)
        self.assertTrue(iso.degree_preserving)
        self.assertEqual(len(iso.sources), 9)

    def test_boundary_mismatch(self):
        with self.assertRaises(PlatformException):
            gluing_iso(TangleWord.identity(1), TangleWord.identity(2), 0)

    def test_cup_then_cap(self):
        iso = gluing_iso(CUP_13, CAP_31, 0)
        self.assertTrue(iso.ok)
        self.assertEqual((iso.count.saddles, iso.count.removals), (3, 1))
        self.assertEqual(len(iso.sources), 2)

    def test_cap_then_cup(self):
        for k in k_range(3, 1):
            with self.subTest(k=k):
                iso = gluing_iso(CAP_31, CUP_13, k)
                self.assertTrue(iso.ok)
                self.assertEqual(iso.count.degree, -2)
                self.assertEqual(iso.count.source_shift - iso.count.degree, iso.count.target_shift)

    def test_cup_then_cup(self):
        cup_35 = TangleWord.from_pairs(3, 5, [("cup", 4)])
        for k in k_range(1, 3):
            with self.subTest(k=k):
                iso = gluing_iso(CUP_13, cup_35, k)
                self.assertTrue(iso.ok)
                self.assertEqual(iso.count.degree, -3)
                self.assertEqual(iso.gluing.second.k, k + 1)

    def test_crossings_before_a_cup(self):
        kink = load_tangle(FIXTURES / "kink.json")
        for bits, k in product((0, 1), k_range(1, 1)):
            with self.subTest(bits=bits, k=k):
                self.assertTrue(gluing_iso(kink, CUP_13, k, (bits,)).ok)


if __name__ == "__main__":
    unittest.main()
