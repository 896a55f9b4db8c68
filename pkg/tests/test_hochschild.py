import unittest
from pathlib import Path

from qkhlab.groupring import CyclicGroup, GroupRingElem, GRMatrix
from qkhlab.tangles import TangleWord, load_tangle
from qkhlab.platform import CKBimodule, build_ck_complex
from qkhlab.hochschild import (HochschildException, TensorTrace, qch, ch, qch_total, qhh, hh0_quotient,
                               qhh0_map, twist_bimodule, trace_tau, trace_tau_prime, window_for)

FIXTURES = Path(__file__).parent / "fixtures"

Z = CyclicGroup.infinite()

E_C = (0, 0, (0, 0))
E_D = (1, 1, (0, 0))


def q(exponent, coeff=1):
    return GroupRingElem.monomial(Z, exponent, coeff)


class TestChains(unittest.TestCase):
    def setUp(self):
        self.module = CKBimodule(TangleWord.identity(2), 1)

    def test_degree_zero_is_diagonal(self):
        diagonal = [e.label for e in self.module.basis if e.label[0] == e.label[1]]
        chains = qch(self.module, 0).chains[0]
        self.assertEqual(sorted(e.label[0] for e in chains), sorted(diagonal))

    def test_chains_are_composable(self):
        for element in qch(self.module, 2).chains[2]:
            m, first, second = element.label
            self.assertEqual(m[1], first[0])
            self.assertEqual(first[1], second[0])
            self.assertEqual(second[1], m[0])

    def test_squares_to_zero(self):
        self.assertIsNone(qch(self.module, 3).to_graded().d_squared_defect())
        self.assertIsNone(ch(self.module, 3).to_graded().d_squared_defect())

    def test_twist_is_quantum_chains(self):
        quantum = qch(self.module, 2)
        twisted = ch(twist_bimodule(self.module), 2)
        self.assertEqual(quantum.chains, twisted.chains)
        for n in (1, 2):
            self.assertEqual(quantum.differential(n), twisted.differential(n))

    def test_double_twist_restores_actions(self):
        restored = twist_bimodule(twist_bimodule(self.module), -1)
        for alpha in self.module.left_algebra.basis:
            self.assertEqual(restored.left_action_weight(alpha.label), 0)

    def test_specialization_is_classical(self):
        trivial = CyclicGroup.trivial()
        quantum = qch(self.module, 2).to_graded().specialize_q1()
        classical = ch(self.module, 2).to_graded(trivial)
        for n in (1, 2):
            self.assertEqual(quantum.differential(n), classical.differential(n))

    def test_negative_window(self):
        with self.assertRaises(HochschildException):
            qch(self.module, -1)


class TestDegreeZero(unittest.TestCase):
    def test_single_strand(self):
        for k in (0, 1):
            quotient = hh0_quotient(CKBimodule(TangleWord.identity(1), k))
            self.assertTrue(quotient.is_free)
            self.assertEqual(len(quotient.survivors), 1)

    def test_two_strands_middle_weight(self):
        quotient = hh0_quotient(CKBimodule(TangleWord.identity(2), 1))
        self.assertTrue(quotient.is_free)
        self.assertEqual(quotient.survivors, (E_C, E_D))

    def test_homology_matches_quotient(self):
        module = CKBimodule(TangleWord.identity(2), 1)
        self.assertEqual(qhh(module, 0).total_rank(), 2)

    def test_truncation(self):
        module = CKBimodule(TangleWord.identity(2), 1)
        self.assertEqual(window_for(module, 0), 1)
        self.assertEqual(qhh(module, 0, window=1).total_rank(), qhh(module, 0, window=2).total_rank())
        with self.assertRaises(HochschildException):
            qhh(module, 1, window=1)

    def test_identity_map(self):
        module = CKBimodule(TangleWord.identity(2), 1)
        matrix = qhh0_map(module, module, {e.label: {e.label: 1} for e in module.basis})
        self.assertEqual(matrix, GRMatrix.identity(Z, matrix.rows))

    def test_rejects_non_module_map(self):
        module = CKBimodule(TangleWord.identity(2), 1)
        with self.assertRaises(HochschildException):
            qhh0_map(module, module, {E_C: {E_D: 1}})


class TestTotal(unittest.TestCase):
    def test_crossing_free(self):
        word = TangleWord.identity(2)
        total = qch_total(build_ck_complex(word, 1), 2)
        single = qch(CKBimodule(word, 1), 2)
        self.assertEqual({t: len(b) for t, b in total.chains.items()},
                         {n: len(b) for n, b in single.chains.items()})
        self.assertEqual(total.differential(1).entries, single.differential(1).entries)

    def test_one_crossing_squares_to_zero(self):
        complex_ = build_ck_complex(load_tangle(FIXTURES / "kink.json"), 0)
        self.assertIsNone(qch_total(complex_, 2).d_squared_defect())


class TestTrace(unittest.TestCase):
    def setUp(self):
        self.module = CKBimodule(TangleWord.identity(2), 1)

    def test_tau_squared(self):
        for x, y in TensorTrace(self.module, self.module).generators:
            vector = {(x, y): q(0)}
            twice = trace_tau(self.module, self.module, trace_tau(self.module, self.module, vector))
            degree = self.module.degree(x) + self.module.degree(y)
            self.assertEqual(twice, {(x, y): q(-degree)})

    def test_tau_at_one_is_swap(self):
        for x, y in TensorTrace(self.module, self.module).generators:
            image = trace_tau(self.module, self.module, {(x, y): q(0)})
            self.assertEqual(list(image), [(y, x)])
            self.assertEqual(image[(y, x)].specialize_q1(), 1)

    def test_tau_rejects_off_diagonal(self):
        with self.assertRaises(HochschildException):
            trace_tau(self.module, self.module, {(E_C, E_D): q(0)})

    def test_tau_prime(self):
        swap = trace_tau_prime(self.module, self.module)
        self.assertTrue(swap.well_defined)
        basis = swap.matrix.cols
        expected = GRMatrix.build(Z, basis, basis,
                                  {(i, i): q(-e.qdeg) for i, e in enumerate(basis)})
        self.assertEqual(swap.matrix @ swap.matrix, expected)


if __name__ == "__main__":
    unittest.main()
