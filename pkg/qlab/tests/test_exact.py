import random
from fractions import Fraction

from django.test import SimpleTestCase

from qlab.errors import BaseMismatch, DivisionByZero, InvalidBase, OutOfRange
from qlab.exact import (
    ExactScalar, QuarterInt, gaussian_binomial, qbracket_gauss, qbracket_sym, ring_for, scalar_inv, scalar_mul,
    scalar_new,
)


class QuarterIntTests(SimpleTestCase):
    def test_of_accepts_quarters(self):
        self.assertEqual(QuarterInt.of(Fraction(-1, 2)), QuarterInt(-2))
        self.assertEqual(QuarterInt.of(1), QuarterInt(4))

    def test_of_rejects_thirds(self):
        with self.assertRaises(OutOfRange):
            QuarterInt.of(Fraction(1, 3))


class ExactScalarTests(SimpleTestCase):
    def test_zero_exponent_is_one(self):
        self.assertEqual(scalar_new(2, 0), 1)

    def test_square_root_of_two(self):
        root = scalar_new(2, Fraction(1, 2))
        self.assertEqual(root.serialize(), "0|0|1|0")
        self.assertAlmostEqual(float(root), 1.41421356, places=8)
        self.assertEqual(root * root, 2)

    def test_reduced_basis_for_square_base(self):
        value = scalar_new(4, Fraction(1, 4))
        self.assertEqual(value.ring.degree, 2)
        self.assertEqual(value * value, 2)
        self.assertAlmostEqual(float(value), 2 ** 0.5)

    def test_fourth_power_base_is_rational(self):
        self.assertEqual(scalar_new(16, Fraction(1, 4)), 2)

    def test_s_times_s_cubed_is_q(self):
        s = scalar_new(3, Fraction(1, 4))
        self.assertEqual(s * s ** 3, 3)

    def test_difference_of_squares(self):
        s = scalar_new(2, Fraction(1, 4))
        self.assertEqual((1 + s) * (1 - s), 1 - s * s)

    def test_inverse(self):
        half = scalar_new(5, Fraction(1, 2))
        self.assertEqual(half.inverse(), scalar_new(5, Fraction(-1, 2)))
        self.assertEqual(half * half.inverse(), 1)
        sqrt2 = scalar_new(2, Fraction(1, 2))
        self.assertEqual((1 + sqrt2).inverse(), sqrt2 - 1)

    def test_module_level_helpers(self):
        a = scalar_new(3, Fraction(3, 4))
        b = scalar_new(3, Fraction(-1, 4))
        self.assertEqual(scalar_mul(a, b), scalar_new(3, Fraction(1, 2)))
        self.assertEqual(scalar_inv(a), scalar_new(3, Fraction(-3, 4)))

    def test_inverse_of_zero(self):
        with self.assertRaises(DivisionByZero):
            ExactScalar.rational(ring_for(2), 0).inverse()

    def test_field_axioms_on_random_triples(self):
        rng = random.Random(4)

        def draw(ring):
            return ExactScalar(ring, [Fraction(rng.randint(-9, 9), rng.randint(1, 5)) for _ in range(ring.degree)])

        for q in (2, 3, 4, 5, 16):
            ring = ring_for(q)
            for _ in range(20):
                a, b, c = draw(ring), draw(ring), draw(ring)
                self.assertEqual((a + b) + c, a + (b + c))
                self.assertEqual((a * b) * c, a * (b * c))
                self.assertEqual(a + b, b + a)
                self.assertEqual(a * b, b * a)
                self.assertEqual(a * (b + c), a * b + a * c)
                self.assertEqual(a - a, 0)
                self.assertEqual(a * 1, a)
                if a:
                    self.assertEqual(a * a.inverse(), 1)

    def test_exponents_add(self):
        quarters = [Fraction(k, 4) for k in range(-32, 33)]
        for q in (2, 3, 4):
            for a in quarters:
                for b in quarters:
                    self.assertEqual(scalar_new(q, a) * scalar_new(q, b), scalar_new(q, a + b), (q, a, b))

    def test_mixed_bases(self):
        with self.assertRaises(BaseMismatch):
            scalar_new(2, 1) + scalar_new(3, 1)

    def test_invalid_base(self):
        with self.assertRaises(InvalidBase):
            scalar_new(1, 1)

    def test_parse_inverts_serialize(self):
        value = scalar_new(3, Fraction(3, 4)) * Fraction(2, 7) + 5
        self.assertEqual(ExactScalar.parse(3, value.serialize()), value)
        self.assertEqual(ExactScalar.parse(2, "1|0|0|0"), 1)

    def test_parse_rational_ring(self):
        self.assertEqual(ExactScalar.parse(1, "3/2|0|0|0"), Fraction(3, 2))
        self.assertEqual(ExactScalar.parse(16, "0|1|0|0"), 2)
        with self.assertRaises(OutOfRange):
            ExactScalar.parse(1, "0|1|0|0")

    def test_float_is_a_homomorphism(self):
        s = scalar_new(7, Fraction(1, 4))
        a = 3 + s * 2 - s ** 3
        b = Fraction(1, 2) - s * s
        self.assertAlmostEqual(float(a * b), float(a) * float(b), places=10)
        self.assertAlmostEqual(float(a + b), float(a) + float(b), places=10)


class QCombinatoricsTests(SimpleTestCase):
    def test_gaussian_binomial(self):
        self.assertEqual(gaussian_binomial(2, 1, 2), 3)
        self.assertEqual(gaussian_binomial(4, 2, 2), 35)
        self.assertEqual(gaussian_binomial(5, 0, 3), 1)
        self.assertEqual(gaussian_binomial(3, 1, 3), 13)

    def test_gaussian_binomial_range(self):
        with self.assertRaises(OutOfRange):
            gaussian_binomial(2, 3, 2)

    def test_symmetric_bracket(self):
        p = scalar_new(4, Fraction(1, 2))
        self.assertEqual(qbracket_sym(1, p), 1)
        self.assertEqual(qbracket_sym(0, p), 0)
        self.assertEqual(qbracket_sym(2, p), Fraction(5, 2))

    def test_gaussian_bracket(self):
        self.assertEqual(qbracket_gauss(2, 2), 3)
        self.assertEqual(qbracket_gauss(0, 5), 0)
        self.assertEqual(qbracket_gauss(3, 3), 13)
