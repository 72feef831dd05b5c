from fractions import Fraction

from django.test import SimpleTestCase, override_settings

from qlab.errors import LimitExceeded, OutOfRange, UnsupportedScale
from qlab.exact import QuarterInt, RATIONALS
from qlab.hypercube import (
    CubeContext, build_Aq, build_Aq_tensor, check_aq_forms, check_hamming_recurrence, check_kp_identity,
    check_tensor_generators, coproduct_generators, cube_context, hamming_distance_matrices, krawtchouk,
    krawtchouk_matrix, reversal_images, reversal_operator,
)
from qlab.matrices import Operator
from qlab.reports import PASS, SKIP


def all_pass(checks):
    return all(c.status == PASS for c in checks)


class WeightedCubeTests(SimpleTestCase):
    def test_entry_weights(self):
        A = build_Aq(CubeContext(2, 2))
        ring = A.ring
        # rows and columns are indexed by the bit strings 00, 01, 10, 11
        self.assertEqual(A.entry(0, 2), ring.power(-1))
        self.assertEqual(A.entry(1, 3), ring.power(1))
        self.assertEqual(A.row_labels, ("00", "01", "10", "11"))

    def test_one_dimension_is_sigma_x(self):
        ctx = CubeContext(1, 3)
        sigma_x = Operator.from_int(RATIONALS, [[0, 1], [1, 0]]).over(ctx.ring)
        self.assertEqual(build_Aq(ctx), sigma_x)
        self.assertEqual(build_Aq_tensor(ctx), sigma_x)

    def test_flat_scale_is_hypercube_adjacency(self):
        for n in (1, 3):
            ctx = CubeContext(n, 2, QuarterInt(0))
            adjacency = hamming_distance_matrices(n)[1].over(ctx.ring)
            self.assertEqual(build_Aq(ctx), adjacency)
            self.assertEqual(build_Aq_tensor(ctx), adjacency)

    def test_forms_agree(self):
        for n in range(1, 7):
            for q in (2, 3):
                for scale in (1, Fraction(-1, 2), Fraction(1, 4)):
                    self.assertTrue(all_pass(check_aq_forms(cube_context(n, q, scale))), (n, q, scale))

    def test_scale_must_be_a_quarter(self):
        with self.assertRaises(UnsupportedScale):
            cube_context(2, 2, Fraction(1, 3))

    def test_half_k_needs_even_quarters(self):
        with self.assertRaises(UnsupportedScale):
            coproduct_generators(cube_context(2, 2, Fraction(1, 4)))

    def test_tensor_generators(self):
        for n in (1, 2, 3, 4):
            for scale in (1, Fraction(-1, 2)):
                checks = check_tensor_generators(cube_context(n, 2, scale))
                self.assertTrue(all_pass(checks), (n, scale, [(c.name, c.status) for c in checks]))

    def test_tensor_generators_at_flat_scale_skip_the_bracket(self):
        checks = check_tensor_generators(cube_context(2, 3, 0))
        self.assertEqual([c.status for c in checks if c.name.startswith("[X+, X-]")], [SKIP])

    def test_reversal_is_an_involution(self):
        self.assertEqual(reversal_images(3), [0, 4, 2, 6, 1, 5, 3, 7])
        pi = reversal_operator(CubeContext(3, 2))
        self.assertEqual(pi @ pi, Operator.identity(pi.ring, 8))


class HammingTests(SimpleTestCase):
    def test_recurrence(self):
        for n in range(1, 6):
            self.assertTrue(all_pass(check_hamming_recurrence(n)), n)

    def test_one_dimension(self):
        A = hamming_distance_matrices(1)
        self.assertEqual(A[1] @ A[1], A[0])

    def test_krawtchouk_expansion(self):
        for n in range(1, 6):
            self.assertTrue(all_pass(check_kp_identity(n)), n)

    def test_krawtchouk_values(self):
        self.assertEqual(krawtchouk(0, 3, Fraction(1, 2), 4), 1)
        # K_1(x; 1/2, N) = 1 - 2x/N
        self.assertEqual(krawtchouk(1, 1, Fraction(1, 2), 4), Fraction(1, 2))
        with self.assertRaises(OutOfRange):
            krawtchouk(5, 0, Fraction(1, 2), 4)

    def test_krawtchouk_of_zero_index_is_identity(self):
        A = hamming_distance_matrices(2)
        X = A[1]
        self.assertEqual(krawtchouk_matrix(0, X, Fraction(1, 2), 2), A[0])

    @override_settings(QLAB_HAMMING_LIMIT=3)
    def test_limit(self):
        with self.assertRaises(LimitExceeded):
            hamming_distance_matrices(4)

    def test_empty_cube_has_no_scheme(self):
        with self.assertRaises(OutOfRange):
            hamming_distance_matrices(0)
        with self.assertRaises(OutOfRange):
            check_hamming_recurrence(0)
        with self.assertRaises(OutOfRange):
            check_kp_identity(0)

    def test_corrupted_matrix_fails(self):
        A = hamming_distance_matrices(3)
        broken = list(A)
        broken[2] = A[3]
        self.assertFalse(all_pass(check_hamming_recurrence(3, broken)))
