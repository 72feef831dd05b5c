from fractions import Fraction

from django.test import SimpleTestCase

from qlab.errors import LimitExceeded
from qlab.exact import RATIONALS
from qlab.fields import field_new
from qlab.lattice import build_RLKE
from qlab.matrices import Operator
from qlab.quotient import (
    ZetaMap, build_zeta, check_action_formulas, check_quotient_identity, check_submodule_closure,
    check_zeta_structure, coefficient_operator, preimage_exponent, raising_exponent,
)
from qlab.reports import PASS

CASES = ((1, 2), (2, 2), (3, 2), (2, 3), (3, 3), (4, 2))


def failing(checks):
    return [c.name for c in checks if c.status != PASS]


def corrupted(zeta):
    """zeta with the first nonzero entry of column (0, 1, ...) zeroed."""
    Z = zeta.matrix
    j = zeta.column_index((0, 1) + (0,) * (len(zeta.profiles[0]) - 2))
    i = next(i for i in range(Z.shape[0]) if Z.entry(i, j))
    hole = Operator.from_entries(Z.ring, Z.shape, [(i, j, Z.entry(i, j))], Z.row_labels, Z.col_labels)
    return ZetaMap(Z - hole, zeta.lattice, zeta.profiles)


class ZetaTests(SimpleTestCase):
    def test_one_dimension_is_identity(self):
        zeta = build_zeta(1, field_new(2))
        self.assertEqual(zeta.matrix, Operator.identity(RATIONALS, 2).over(zeta.ring))
        self.assertEqual(zeta.matrix.col_labels, ("0", "1"))

    def test_column_entries(self):
        zeta = build_zeta(2, field_new(2))
        Z = zeta.matrix
        j = zeta.column_index((0, 1))
        column = [Z.entry(i, j) for i in range(Z.shape[0]) if Z.entry(i, j)]
        self.assertEqual(column, [zeta.ring.power(Fraction(-1, 2))] * 2)

    def test_preimage_exponent(self):
        self.assertEqual(preimage_exponent((0, 1, 0, 1, 1), 3), 5)
        self.assertEqual(preimage_exponent((1, 1), 2), 0)

    def test_limit(self):
        with self.assertRaises(LimitExceeded):
            build_zeta(3, field_new(2), limit=15)

    def test_structure(self):
        for n, q in CASES:
            self.assertEqual(failing(check_zeta_structure(n, field_new(q))), [], (n, q))


class ActionFormulaTests(SimpleTestCase):
    def test_raising_coefficients_in_two_dimensions(self):
        zeta = build_zeta(2, field_new(2))
        B = coefficient_operator(zeta)
        start = zeta.column_index((0, 0))
        self.assertEqual(B.entry(zeta.column_index((1, 0)), start), 1)
        self.assertEqual(B.entry(zeta.column_index((0, 1)), start), zeta.ring.power(Fraction(1, 2)))

    def test_raising_exponent(self):
        self.assertEqual(raising_exponent((0,), 1).numerator, 0)
        self.assertEqual(raising_exponent((1, 0, 1), 2).as_fraction(), Fraction(1, 2))

    def test_one_dimension(self):
        zeta = build_zeta(1, field_new(3))
        ops = build_RLKE(zeta.lattice)
        self.assertEqual(ops.R @ zeta.matrix, zeta.matrix @ coefficient_operator(zeta))
        self.assertEqual(coefficient_operator(zeta).entry(1, 0), 1)

    def test_formulas(self):
        for n, q in CASES:
            self.assertEqual(failing(check_action_formulas(n, field_new(q))), [], (n, q))

    def test_closure(self):
        for n, q in CASES:
            self.assertEqual(failing(check_submodule_closure(n, field_new(q))), [], (n, q))

    def test_closure_fails_for_corrupted_zeta(self):
        F = field_new(2)
        zeta = corrupted(build_zeta(2, F))
        self.assertIn("(I - zeta zeta^T) R zeta = 0", failing(check_submodule_closure(2, F, zeta)))


class QuotientIdentityTests(SimpleTestCase):
    def test_identity(self):
        for n, q in CASES:
            self.assertEqual(failing(check_quotient_identity(n, field_new(q))), [], (n, q))

    def test_identity_needs_the_reversal(self):
        checks = check_quotient_identity(2, field_new(2), reverse=False)
        self.assertEqual(len(failing(checks)), 1)
        self.assertNotEqual(checks[0].residual, "0")

    def test_identity_fails_for_corrupted_zeta(self):
        F = field_new(2)
        self.assertEqual(len(failing(check_quotient_identity(2, F, corrupted(build_zeta(2, F))))), 1)
