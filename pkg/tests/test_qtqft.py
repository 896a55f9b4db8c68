import unittest
from pathlib import Path

from qkhlab.groupring import CyclicGroup, GroupRingElem, GRMatrix, homology_all
from qkhlab.tangles import TangleWord, load_tangle, closure_config
from qkhlab.qtqft import (QTQFTException, ClosedSurface, ExponentTable, V_MINUS, V_PLUS,
                          gen_basis, eval_closed, bundt_torus, torus_offset, identify_basis,
                          saddle_matrix_oracle, saddle_matrix_fast, annular_saddle_matrix,
                          verify_oracle_agreement, qakc, akc, kc, lift_exponents, verify_rotation,
                          BasisIdentificationError)

FIXTURES = Path(__file__).parent / "fixtures"

Z = CyclicGroup.infinite()

E_C = (0, 0, (0, 0))
E_D = (1, 1, (0, 0))
X_D = (1, 1, (0, 1))


def q(exponent, coeff=1):
    return GroupRingElem.monomial(Z, exponent, coeff)


class TestLabels(unittest.TestCase):
    def test_essential_circle(self):
        basis = gen_basis(closure_config(TangleWord.identity(1)))
        self.assertEqual([(e.label, e.qdeg, e.adeg) for e in basis],
                         [((V_PLUS,), 0, 1), ((V_MINUS,), 0, -1)])

    def test_trivial_circle(self):
        basis = gen_basis(closure_config(load_tangle(FIXTURES / "unknot.json")))
        self.assertEqual([(e.qdeg, e.adeg) for e in basis], [(1, 0), (-1, 0)])

    def test_two_circles(self):
        basis = gen_basis(closure_config(TangleWord.identity(2)))
        self.assertEqual(len(basis), 4)
        self.assertEqual([e.adeg for e in basis], [2, 0, 0, -2])


class TestSurfaces(unittest.TestCase):
    def test_spheres(self):
        self.assertEqual(eval_closed(ClosedSurface(0)), GroupRingElem.zero(Z))
        self.assertEqual(eval_closed(ClosedSurface(0, dots=1, offset=3)), q(3))
        self.assertEqual(eval_closed(ClosedSurface(0, dots=2)), GroupRingElem.zero(Z))

    def test_tori(self):
        self.assertEqual(eval_closed(ClosedSurface(1, winding=1)), q(0) + q(2))
        self.assertEqual(eval_closed(ClosedSurface(1, winding=0, offset=4)), q(4, 2))
        self.assertEqual(eval_closed(ClosedSurface(2)), GroupRingElem.zero(Z))

    def test_bundt_torus(self):
        self.assertEqual(torus_offset(), -1)
        self.assertEqual(bundt_torus(),
                         eval_closed(ClosedSurface(1, winding=1, offset=torus_offset())))

    def test_negative_data(self):
        with self.assertRaises(QTQFTException):
            ClosedSurface(-1)


class TestIdentification(unittest.TestCase):
    def test_single_strand(self):
        bottom = identify_basis(TangleWord.identity(1), 0)
        self.assertEqual(bottom.images, {(0, 0, (0,)): {(V_PLUS,): q(-1)}})
        top = identify_basis(TangleWord.identity(1), 1)
        self.assertEqual(top.images, {(0, 0, (0,)): {(V_MINUS,): q(-1)}})

    def test_two_strands_middle_weight(self):
        ident = identify_basis(TangleWord.identity(2), 1)
        self.assertEqual(ident.quotient.survivors, (E_C, E_D))
        self.assertEqual(ident.images[E_C], {(V_PLUS, V_MINUS): q(-2)})
        self.assertEqual(ident.images[E_D], {(V_PLUS, V_MINUS): q(-1), (V_MINUS, V_PLUS): q(-2)})
        self.assertEqual(ident.images[X_D], {})
        self.assertEqual(len(ident.basis), 2)
        self.assertTrue(ident.seeded)

    def test_lift_inverts_projection(self):
        ident = identify_basis(TangleWord.identity(2), 1)
        for element in ident.basis:
            self.assertEqual(ident.project(ident.lift(element.label)), {element.label: q(0)})

    def test_rejects_unequal_boundary(self):
        with self.assertRaises(QTQFTException):
            identify_basis(TangleWord.from_pairs(1, 3, [("cup", 2)]), 0)

    def test_lift_follows_relations(self):
        first, second, y = (0, 0, (0,)), (1, 1, (0,)), (V_PLUS,)
        seed = {first: {y: q(0)}, second: {y: q(0) + q(1)}}
        images = lift_exponents(seed, [({first: 2}, {second: 1}, 1)])
        self.assertEqual(images, {first: {y: q(0)}, second: {y: q(-1, 2)}})

    def test_lift_rejects_disagreeing_seed(self):
        first, second, y = (0, 0, (0,)), (1, 1, (0,)), (V_PLUS,)
        seed = {first: {y: q(0)}, second: {y: q(5)}}
        with self.assertRaises(BasisIdentificationError):
            lift_exponents(seed, [({first: 1}, {second: 1}, 0)])


class TestSaddles(unittest.TestCase):
    def setUp(self):
        self.kink = load_tangle(FIXTURES / "kink.json")

    def test_oracle_identity(self):
        word = TangleWord.identity(1)
        basis = gen_basis(closure_config(word))
        self.assertEqual(saddle_matrix_oracle(word, (), ()), GRMatrix.identity(Z, basis))

    def test_kink_oracle(self):
        oracle = saddle_matrix_oracle(self.kink, (0,), (1,))
        self.assertEqual(dict(oracle.entries), {(0, 0): q(0), (1, 2): q(0)})

    def test_oracle_specializes_to_annular_map(self):
        oracle = saddle_matrix_oracle(self.kink, (0,), (1,))
        self.assertEqual(oracle.reduce(CyclicGroup.trivial()),
                         annular_saddle_matrix(self.kink, (0,), (1,), CyclicGroup.trivial()))

    def test_fast_path_fills_table(self):
        table = ExponentTable()
        fast = saddle_matrix_fast(self.kink, (0,), (1,), table)
        self.assertEqual(fast, saddle_matrix_oracle(self.kink, (0,), (1,)))
        self.assertEqual(table.misses, 2)
        saddle_matrix_fast(self.kink, (0,), (1,), table)
        self.assertEqual(table.hits, 2)

    def test_agreement(self):
        self.assertTrue(verify_oracle_agreement(self.kink).ok)
        self.assertTrue(verify_oracle_agreement(load_tangle(FIXTURES / "double_kink.json")).ok)

    def test_split_into_essential_circles(self):
        word = load_tangle(FIXTURES / "crossing_neg.json")
        matrix = annular_saddle_matrix(word, (0,), (1,), CyclicGroup.trivial())
        one = GroupRingElem.one(CyclicGroup.trivial())
        self.assertEqual(dict(matrix.entries), {(1, 0): one, (2, 0): one})


class TestComplexes(unittest.TestCase):
    def setUp(self):
        self.trivial = CyclicGroup.trivial()

    def test_essential_unknot(self):
        complex_ = qakc(TangleWord.identity(1), self.trivial)
        self.assertEqual(complex_.degrees(), [0])
        summary = homology_all(complex_)[0]
        self.assertEqual({key: piece.free_rank for key, piece in summary.nonzero().items()},
                         {(0, -1): 1, (0, 1): 1})

    def test_kink_homology(self):
        complex_ = qakc(load_tangle(FIXTURES / "kink.json"), self.trivial)
        self.assertEqual({i: len(b) for i, b in complex_.chains.items()}, {0: 4, -1: 2})
        complex_.verify()
        homology = homology_all(complex_)
        self.assertTrue(homology[-1].is_zero())
        self.assertEqual({key: piece.free_rank for key, piece in homology[0].nonzero().items()},
                         {(0, -1): 1, (0, 1): 1})

    def test_annular_degree_summand(self):
        complex_ = qakc(load_tangle(FIXTURES / "kink.json"), self.trivial, annular_degree=1)
        self.assertEqual({i: len(b) for i, b in complex_.chains.items()}, {0: 2, -1: 1})

    def test_double_kink_squares_to_zero(self):
        word = load_tangle(FIXTURES / "double_kink.json")
        self.assertIsNone(qakc(word).d_squared_defect())
        self.assertIsNone(qakc(word, CyclicGroup(5), method="oracle").d_squared_defect())

    def test_specialization_matches_annular_complex(self):
        word = load_tangle(FIXTURES / "double_kink.json")
        quantum = qakc(word).specialize_q1()
        classical = akc(word)
        for i in classical.degrees():
            self.assertEqual(quantum.differential(i), classical.differential(i))

    def test_disk_unknot(self):
        summary = homology_all(kc(load_tangle(FIXTURES / "unknot.json")))[0]
        self.assertEqual({key: piece.free_rank for key, piece in summary.nonzero().items()},
                         {(-1, 0): 1, (1, 0): 1})

    def test_unknown_method(self):
        with self.assertRaises(QTQFTException):
            qakc(TangleWord.identity(1), method="guess")

    def test_rotation_across_the_seam(self):
        cup = TangleWord.from_pairs(1, 3, [("cup", 2)])
        cap = TangleWord.from_pairs(3, 1, [("cap", 2)])
        check = verify_rotation(cup, cap, CyclicGroup(3))
        self.assertTrue(check.ok)
        self.assertEqual(sorted(check.before), [0])
        with self.assertRaises(QTQFTException):
            verify_rotation(cup, cup, CyclicGroup(3))


if __name__ == "__main__":
    unittest.main()
