import unittest

from qkhlab.groupring import (CyclicGroup, GroupRingElem, BasisElement, GRMatrix,
                              GradedComplexZG, GroupMismatchError, UnsupportedHomologyError,
                              smith_normal_form, invariant_factors, restrict_scalars,
                              homology, homology_all, mapping_cone, identity_map,
                              specialize_q1, poincare_polynomial)


def matmul(a, b):
    return [[sum(a[i][k] * b[k][j] for k in range(len(b))) for j in range(len(b[0]))]
            for i in range(len(a))]


class TestGroupRing(unittest.TestCase):
    def setUp(self):
        self.z = CyclicGroup.infinite()
        self.z4 = CyclicGroup(4)

    def q(self, group, exponent, coeff=1):
        return GroupRingElem.monomial(group, exponent, coeff)

    def test_monomial_product(self):
        self.assertEqual(self.q(self.z, 2) * self.q(self.z, 3), self.q(self.z, 5))

    def test_exponent_reduction(self):
        self.assertEqual(self.q(self.z4, 2) * self.q(self.z4, 3), self.q(self.z4, 1))

    def test_expand_and_collect(self):
        one = GroupRingElem.one(self.z)
        product = (one + self.q(self.z, 1)) * (one - self.q(self.z, 1))
        self.assertEqual(product.terms, ((0, 1), (2, -1)))

    def test_group_mismatch(self):
        with self.assertRaises(GroupMismatchError):
            self.q(self.z, 1) + self.q(self.z4, 1)

    def test_specialize(self):
        self.assertEqual(specialize_q1(1 + self.q(self.z, -1)), 2)
        self.assertEqual(specialize_q1(self.q(self.z, 5)), 1)

    def test_unit_inverse(self):
        unit = self.q(self.z4, 3, -1)
        self.assertEqual(unit * unit.inverse(), GroupRingElem.one(self.z4))

    def test_json(self):
        element = GroupRingElem.from_mapping(self.z, {-1: 2, 3: -1})
        self.assertEqual(element.to_json(), {"group": "Z", "terms": [[-1, 2], [3, -1]]})


class TestSmithNormalForm(unittest.TestCase):
    def check(self, matrix):
        d, u, v = smith_normal_form(matrix)
        self.assertEqual(matmul(matmul(u, matrix), v), d)
        diag = [d[i][i] for i in range(min(len(d), len(d[0])))]
        for i in range(len(d)):
            for j in range(len(d[0])):
                if i != j:
                    self.assertEqual(d[i][j], 0)
        nonzero = [x for x in diag if x]
        for a, b in zip(nonzero, nonzero[1:]):
            self.assertEqual(b % a, 0)
        return diag

    def test_coprime_diagonal(self):
        self.assertEqual(self.check([[2, 0], [0, 3]]), [1, 6])

    def test_zero_and_identity(self):
        self.assertEqual(self.check([[0, 0], [0, 0]]), [0, 0])
        self.assertEqual(self.check([[1, 0], [0, 1]]), [1, 1])

    def test_generic_matrices(self):
        for matrix in ([[4, 6, 2], [8, 12, 10]],
                       [[2, 4, 4], [-6, 6, 12], [10, -4, -16]],
                       [[0, 3], [5, 0], [7, 1]]):
            self.check(matrix)

    def test_known_invariants(self):
        self.assertEqual(self.check([[2, 4, 4], [-6, 6, 12], [10, -4, -16]]), [2, 6, 12])

    def test_sparse_invariant_factors(self):
        self.assertEqual(invariant_factors([{0: 2}]), (1, [2]))
        self.assertEqual(invariant_factors([{0: 1, 1: 2}, {0: 3, 1: 4}]), (2, [2]))
        self.assertEqual(invariant_factors([{}, {}]), (0, []))


class TestRestrictScalars(unittest.TestCase):
    def setUp(self):
        self.g = CyclicGroup(2)
        self.x = BasisElement("x")

    def test_generator(self):
        m = GRMatrix.build(self.g, [self.x], [self.x], {(0, 0): GroupRingElem.monomial(self.g, 1)})
        self.assertEqual(restrict_scalars(m), [[0, 1], [1, 0]])

    def test_one_plus_q(self):
        m = GRMatrix.build(self.g, [self.x], [self.x],
                           {(0, 0): GroupRingElem.from_mapping(self.g, {0: 1, 1: 1})})
        self.assertEqual(restrict_scalars(m), [[1, 1], [1, 1]])

    def test_identity(self):
        basis = [BasisElement("a"), BasisElement("b")]
        self.assertEqual(restrict_scalars(GRMatrix.identity(self.g, basis)),
                         [[int(i == j) for j in range(4)] for i in range(4)])

    def test_composition(self):
        g = CyclicGroup(3)
        basis = [BasisElement(k) for k in range(2)]
        a = GRMatrix.build(g, basis, basis, {(0, 0): GroupRingElem.from_mapping(g, {1: 2}),
                                             (0, 1): GroupRingElem.from_mapping(g, {0: 1, 2: -1}),
                                             (1, 1): GroupRingElem.monomial(g, 2)})
        b = GRMatrix.build(g, basis, basis, {(1, 0): GroupRingElem.from_mapping(g, {0: 3, 1: 1}),
                                             (0, 1): GroupRingElem.monomial(g, 1, -1)})
        self.assertEqual(restrict_scalars(a @ b), matmul(restrict_scalars(a), restrict_scalars(b)))

    def test_infinite_group(self):
        z = CyclicGroup.infinite()
        with self.assertRaises(UnsupportedHomologyError):
            restrict_scalars(GRMatrix.identity(z, [self.x]))


class TestHomology(unittest.TestCase):
    def setUp(self):
        self.g = CyclicGroup(2)
        self.x = BasisElement("x", hdeg=1)
        self.y = BasisElement("y", hdeg=0)
        d = GRMatrix.build(self.g, [self.y], [self.x],
                           {(0, 0): GroupRingElem.from_mapping(self.g, {0: 1, 1: -1})})
        self.complex = GradedComplexZG(self.g, {1: (self.x,), 0: (self.y,)}, {1: d})

    def test_one_minus_q(self):
        h0 = homology(self.complex, 0, with_q_action=True)
        h1 = homology(self.complex, 1, with_q_action=True)
        self.assertEqual(h0.pieces[(0, 0)].free_rank, 1)
        self.assertEqual(h1.pieces[(0, 0)].free_rank, 1)
        self.assertEqual(h0.pieces[(0, 0)].torsion, ())
        self.assertEqual(h0.pieces[(0, 0)].q_action, ((1,),))
        self.assertEqual(h1.pieces[(0, 0)].q_action, ((1,),))

    def test_zero_differential(self):
        g = CyclicGroup(3)
        basis = tuple(BasisElement(k, qdeg=k % 2) for k in range(3))
        summary = homology(GradedComplexZG(g, {0: basis}), 0)
        self.assertEqual(summary.total_rank(), 9)

    def test_torsion(self):
        g = CyclicGroup.trivial()
        d = GRMatrix.build(g, [self.y], [self.x], {(0, 0): GroupRingElem.monomial(g, 0, 2)})
        complex_ = GradedComplexZG(g, {1: (self.x,), 0: (self.y,)}, {1: d})
        self.assertEqual(homology(complex_, 0).pieces[(0, 0)].torsion, (2,))
        self.assertTrue(homology(complex_, 1).is_zero())

    def test_cone_of_identity_is_acyclic(self):
        cone = mapping_cone(identity_map(self.complex))
        self.assertIsNone(cone.d_squared_defect())
        for summary in homology_all(cone, with_q_action=True).values():
            self.assertTrue(summary.is_zero())

    def test_d_squared_defect(self):
        z = BasisElement("z", hdeg=2)
        one = GroupRingElem.one(self.g)
        bad = GradedComplexZG(self.g, {2: (z,), 1: (self.x,), 0: (self.y,)},
                              {2: GRMatrix.build(self.g, [self.x], [z], {(0, 0): one}),
                               1: GRMatrix.build(self.g, [self.y], [self.x], {(0, 0): one})})
        self.assertEqual(bad.d_squared_defect(), 2)

    def test_specialized_complex(self):
        specialized = specialize_q1(self.complex)
        self.assertTrue(specialized.differential(1).is_zero())
        self.assertEqual(homology(specialized, 0).total_rank(), 1)

    def test_infinite_group_homology(self):
        z = CyclicGroup.infinite()
        with self.assertRaises(UnsupportedHomologyError):
            homology(GradedComplexZG(z, {0: (self.y,)}), 0)

    def test_poincare_polynomial(self):
        summaries = homology_all(self.complex).values()
        self.assertEqual(poincare_polynomial(summaries), "1 t^0 q^0 a^0 + 1 t^1 q^0 a^0")


if __name__ == "__main__":
    unittest.main()
