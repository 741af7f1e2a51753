from fractions import Fraction

from django.test import SimpleTestCase

from eckardt_lattices import cubic_pair, linalg
from eckardt_lattices.exceptions import NotARoot, ZeroVector
from eckardt_lattices.lattice import determinant, is_even, preserves_form, signature
from eckardt_lattices.quadforms import form_on_generators, value_distribution


class LatticeMTest(SimpleTestCase):
    def test_gram_and_inverse(self):
        M = cubic_pair.build_M()
        self.assertEqual(determinant(M), 64)
        self.assertEqual(signature(M), (7, 0, 0))
        self.assertFalse(is_even(M))
        inverse = linalg.inverse(M.matrix)
        self.assertEqual(inverse[0], [4] + [Fraction(-3, 2)] * 6)
        self.assertEqual(inverse[1][1], 1)
        self.assertEqual(inverse[1][2], Fraction(1, 2))

    def test_h2(self):
        M = cubic_pair.build_M()
        h2 = cubic_pair.h2_vector(M)
        self.assertEqual(h2.norm(), 3)
        self.assertEqual(h2.dot(M.basis_vector("F0")), 3)
        for label in M.labels[1:]:
            self.assertEqual(h2.dot(M.basis_vector(label)), 1)

    def test_discriminant_group(self):
        M = cubic_pair.build_M()
        form = form_on_generators(M, cubic_pair.dual_F_generators(M))
        self.assertEqual(form.orders, (2,) * 6)
        for i in range(6):
            for j in range(6):
                self.assertEqual(form.bilinear[i][j], 0 if i == j else Fraction(1, 2))

    def test_isotropy_and_cosets(self):
        result = cubic_pair.verify_isotropy_of_AM()
        self.assertTrue(result["passed"])
        self.assertEqual(result["isotropic"], 64)

    def test_primitive_part_is_e6_scaled(self):
        complement = cubic_pair.primitive_part_h2()
        self.assertEqual(determinant(complement.lattice), 192)
        self.assertTrue(is_even(complement.lattice))

    def test_s_beta(self):
        result = cubic_pair.verify_s_beta_matrices()
        self.assertTrue(result["passed"])
        self.assertEqual(result["s_beta_1_F0"], "2F0-F1-F2-F3")
        self.assertTrue(cubic_pair.verify_change_of_basis()["passed"])

    def test_s_beta_matrices_are_involutions(self):
        M = cubic_pair.build_M()
        matrices = cubic_pair.s_beta_matrices()
        self.assertEqual(len(matrices), 6)
        for matrix in matrices:
            self.assertTrue(preserves_form(M, matrix))
            self.assertEqual(linalg.mat_mul(matrix, matrix), linalg.identity(7))

    def test_s_beta_group(self):
        self.assertEqual(cubic_pair.s_beta_group_orders(), {"all": 51840, "transpositions": 720})

    def test_no_boundary_class(self):
        with_f0, with_fi = cubic_pair.admissible_pairings()
        self.assertEqual(with_f0, [0, 1, 2])
        self.assertEqual(with_fi, [0, 1])
        self.assertTrue(cubic_pair.h_infinity_avoidance()["passed"])


class LatticeTTest(SimpleTestCase):
    def test_invariants(self):
        invariants = cubic_pair.t_invariants()
        self.assertTrue(cubic_pair.t_invariants_pass(invariants))
        self.assertEqual(value_distribution(cubic_pair.t_form()), {0: 28, 1: 36})

    def test_invariant_match_with_v_cubed(self):
        result = cubic_pair.sigma_o16_invariant_match()
        self.assertTrue(result["passed"])
        self.assertTrue(result["isometric_to_v3"])
        self.assertEqual(result["signature"][:2], [14, 2])

    def test_gluing(self):
        result = cubic_pair.verify_Lambda()
        self.assertTrue(result["passed"])
        self.assertEqual(result["signature"], [21, 2, 0])
        data = cubic_pair.realize_Lambda()
        self.assertEqual(data.h2_image.norm(), 3)

    def test_weyl_action(self):
        result = cubic_pair.verify_weyl_action()
        self.assertEqual(result["full_order"], 51840)
        self.assertEqual(result["generated_order"], 51840)
        self.assertTrue(result["preserve_q"])

    def test_e6_quotient(self):
        self.assertTrue(cubic_pair.verify_e6_quotient()["passed"])


class VectorTypeTest(SimpleTestCase):
    def setUp(self):
        self.T = cubic_pair.build_T()

    def test_examples(self):
        nodal = cubic_pair.classify_vector(self.T.combination(e1=1, f1=1))
        self.assertEqual(nodal.label, cubic_pair.NODAL)
        self.assertEqual(nodal.v_hat, (0,) * 6)
        tangential = cubic_pair.classify_vector(self.T.combination(a1=1, a3=1))
        self.assertEqual(tangential.label, cubic_pair.TANGENTIAL)
        self.assertEqual(tangential.divisibility, 2)
        self.assertEqual(tangential.q_value, 1)
        other = cubic_pair.classify_vector(self.T.combination(e1=2))
        self.assertEqual(other.label, cubic_pair.OTHER)
        self.assertFalse(other.primitive)

    def test_zero_vector(self):
        with self.assertRaises(ZeroVector):
            cubic_pair.classify_vector(self.T.vector([0] * 16))

    def test_census(self):
        self.assertEqual(len(cubic_pair.tangential_representatives()), 36)
        result = cubic_pair.type2_orbit_census()
        self.assertTrue(result["passed"])
        self.assertEqual(result["orbit_size"], 36)

    def test_eichler_spot_check_is_seeded(self):
        first = cubic_pair.eichler_spot_check(seed=7, count=10)
        second = cubic_pair.eichler_spot_check(seed=7, count=10)
        self.assertEqual(first, second)
        self.assertEqual(first["failures"], 0)
        self.assertEqual(first["tangential_failures"], 0)


class BorcherdsTest(SimpleTestCase):
    def test_embedding(self):
        result = cubic_pair.verify_T_embedding()
        self.assertTrue(result["passed"])
        self.assertEqual(result["complement_roots"], 72)

    def test_witness_roots(self):
        nodal = cubic_pair.classify_root_delta(cubic_pair.nodal_witness_root())
        self.assertEqual(nodal.saturation_roots, 74)
        self.assertEqual(nodal.coefficient, Fraction(1, 2))
        tangential = cubic_pair.classify_root_delta(cubic_pair.tangential_witness_root())
        self.assertEqual(tangential.saturation_roots, 88)
        self.assertEqual(tangential.coefficient, 8)
        self.assertEqual(tangential.label, cubic_pair.TANGENTIAL)

    def test_not_a_root(self):
        II = cubic_pair.embed_T_in_II262().ambient
        with self.assertRaises(NotARoot):
            cubic_pair.classify_root_delta(II.vector([1] + [0] * 27))
        with self.assertRaises(NotARoot):
            cubic_pair.classify_root_delta(II.vector(cubic_pair.d4_complement_basis(0)[0]))

    def test_relation(self):
        report = cubic_pair.borcherds_relation()
        self.assertEqual(report.weight, 48)
        self.assertEqual(report.plus_relation, (1, 2))
        self.assertEqual(report.tangential_classes, 9)

    def test_tangential_classes_share_the_coefficient(self):
        coefficients = cubic_pair.tangential_class_coefficients()
        self.assertEqual(len(coefficients), 9)
        self.assertEqual(set(coefficients.values()), {8})
        representatives = {cubic_pair.classify_vector(v).v_hat for v in cubic_pair.tangential_representatives()}
        self.assertLessEqual(set(coefficients), representatives)

    def test_picard_rank(self):
        result = cubic_pair.bruinier_sum_check()
        self.assertEqual(result["value"], "21")
        self.assertEqual(result["picard_rank"], 22)
