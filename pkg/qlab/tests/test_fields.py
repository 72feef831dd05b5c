from django.test import SimpleTestCase, override_settings

from qlab.errors import NotPrimePower, OutOfRange
from qlab.fields import Field, abs_trace, field_new, is_square


class FieldTests(SimpleTestCase):
    def test_prime_field(self):
        F = field_new(5)
        self.assertEqual(F.p, 5)
        self.assertIsNone(F.modulus)
        self.assertEqual(F.mul[2, 3], 1)
        self.assertEqual(F.inv[2], 3)

    def test_four_elements(self):
        F = field_new(4)
        # alpha = x under the modulus x^2 + x + 1, so alpha^2 = alpha + 1
        self.assertEqual(F.mul[2, 2], 3)
        self.assertEqual(F.add[2, 1], 3)
        self.assertEqual((F.p, F.m), (2, 2))

    def test_not_a_prime_power(self):
        with self.assertRaises(NotPrimePower):
            field_new(6)
        with self.assertRaises(NotPrimePower):
            Field(1)

    @override_settings(QLAB_FIELD_LIMIT=16)
    def test_field_cap(self):
        with self.assertRaises(OutOfRange):
            Field(27)

    def test_tables_are_cached(self):
        self.assertIs(field_new(9), field_new(9))

    def test_axioms_hold_on_small_fields(self):
        for q in (2, 3, 4, 5, 7, 8, 9, 16):
            field_new(q).check_axioms()

    def test_frobenius_is_additive(self):
        F = field_new(8)
        for a in range(8):
            for b in range(8):
                self.assertEqual(F.frobenius(F.add_list[a][b]), F.add_list[F.frobenius(a)][F.frobenius(b)])


class SquareAndTraceTests(SimpleTestCase):
    def test_squares_in_f3(self):
        F = field_new(3)
        self.assertFalse(is_square(2, F))
        self.assertTrue(is_square(1, F))
        self.assertTrue(is_square(0, F))

    def test_every_element_of_f4_is_a_square(self):
        F = field_new(4)
        self.assertTrue(all(is_square(a, F) for a in range(4)))

    def test_absolute_trace(self):
        F = field_new(4)
        self.assertEqual(abs_trace(1, F), 0)
        self.assertEqual(abs_trace(2, F), 1)
        self.assertEqual(abs_trace(2, field_new(5)), 2)

    def test_half_of_an_odd_field_is_square(self):
        for q in (3, 5, 7, 9, 25, 27):
            F = field_new(q)
            self.assertEqual(sum(is_square(a, F) for a in range(q)), (q + 1) // 2, q)

    def test_absolute_trace_is_linear_and_onto(self):
        for q in (2, 4, 8, 9, 27):
            F = field_new(q)
            p = F.p
            for a in range(q):
                for b in range(q):
                    self.assertEqual(abs_trace(F.add_list[a][b], F), (abs_trace(a, F) + abs_trace(b, F)) % p)
                # 0..p-1 is the prime subfield in the integer representation
                for c in range(p):
                    self.assertEqual(abs_trace(F.mul_list[c][a], F), c * abs_trace(a, F) % p)
            self.assertEqual({abs_trace(a, F) for a in range(q)}, set(range(p)), q)
