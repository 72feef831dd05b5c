from fractions import Fraction

import numpy as np
from django.test import SimpleTestCase, override_settings

from qlab.dualpolar import dual_polar_graph
from qlab.errors import AxiomViolation, NonRationalEigenvalue
from qlab.exact import RATIONALS
from qlab.fields import field_new
from qlab.hypercube import hamming_distance_matrices
from qlab.matrices import Operator
from qlab.reports import FAIL, PASS, SKIP
from qlab.schemes import (
    SchemeData, check_idempotents, check_krein_nonnegative, check_P_and_Q_polynomial,
    check_terwilliger_dimension, dual_adjacency, q_polynomial_order, rational_roots, scheme_summary,
    spectrum_check, verify_axioms,
)


def hamming(n):
    return SchemeData(hamming_distance_matrices(n), f"H({n},2)")


def dual_polar(d, q):
    return SchemeData(dual_polar_graph(d, field_new(q)).matrices, f"C_{d}({q})")


def from_arrays(arrays):
    return [Operator.from_int(RATIONALS, np.asarray(a, dtype=np.int64)) for a in arrays]


def rook_scheme():
    """K_2 x K_3 with classes: same row, same column, neither."""
    cells = [(r, c) for r in range(2) for c in range(3)]
    arrays = [np.zeros((6, 6), dtype=np.int64) for _ in range(4)]
    for x, (r, c) in enumerate(cells):
        for y, (s, t) in enumerate(cells):
            arrays[(r != s) * 2 + (c != t) if (r, c) != (s, t) else 0][x, y] = 1
    return SchemeData(from_arrays(arrays), "K_2 x K_3")


def failing(checks):
    return [c.name for c in checks if c.status == FAIL]


class AxiomTests(SimpleTestCase):
    def test_hamming_schemes(self):
        for n in range(1, 6):
            checks, p = verify_axioms(hamming_distance_matrices(n))
            self.assertEqual(failing(checks), [], n)
            # p_11^0 is the valency
            self.assertEqual(p[1][1][0], n)

    def test_repeated_class(self):
        A = hamming_distance_matrices(2)
        with self.assertRaises(AxiomViolation) as raised:
            verify_axioms([A[0], A[1], A[1]])
        self.assertEqual(raised.exception.axiom, "sum A_i = J")

    def test_directed_cycle_is_not_symmetric(self):
        shift = np.roll(np.eye(3, dtype=np.int64), 1, axis=1)
        with self.assertRaises(AxiomViolation) as raised:
            verify_axioms(from_arrays([np.eye(3), shift, shift.T]))
        self.assertEqual(raised.exception.axiom, "symmetry")

    def test_path_is_not_closed(self):
        path = [[0, 1, 0], [1, 0, 1], [0, 1, 0]]
        far = [[0, 0, 1], [0, 0, 0], [1, 0, 0]]
        with self.assertRaises(AxiomViolation) as raised:
            verify_axioms(from_arrays([np.eye(3), path, far]))
        self.assertEqual(raised.exception.axiom, "closure")

    def test_entries_must_be_zero_or_one(self):
        with self.assertRaises(AxiomViolation):
            verify_axioms(from_arrays([np.eye(2), [[0, 2], [2, 0]]]))

    def test_rook_scheme_is_a_scheme(self):
        self.assertEqual(failing(rook_scheme().axioms[0]), [])


class EigenvalueTests(SimpleTestCase):
    def test_hamming(self):
        self.assertEqual(hamming(3).eigenvalues, [3, 1, -1, -3])

    def test_dual_polar(self):
        S = dual_polar(2, 2)
        self.assertEqual(S.eigenvalues, [6, 1, -3])
        self.assertEqual(S.multiplicities, [1, 9, 5])

    def test_triangle(self):
        S = dual_polar(1, 2)
        self.assertEqual(S.eigenvalues, [2, -1])
        self.assertEqual(S.multiplicities, [1, 2])

    def test_rational_roots(self):
        self.assertEqual(rational_roots([[0, 1], [1, 0]]), [1, -1])
        self.assertEqual(rational_roots([[Fraction(1, 2), 0], [0, Fraction(1, 2)]]), [Fraction(1, 2)])
        with self.assertRaises(NonRationalEigenvalue):
            rational_roots([[0, 2], [1, 0]])

    def test_generator_must_separate_the_classes(self):
        with self.assertRaises(NonRationalEigenvalue):
            rook_scheme().eigenvalues

    def test_spectrum_check(self):
        S = dual_polar(2, 2)
        self.assertEqual(spectrum_check("spectrum", S, {6: 1, 1: 9, -3: 5}).status, PASS)
        self.assertEqual(spectrum_check("spectrum", S, {6: 1, 1: 5, -3: 9}).status, FAIL)


class IdempotentTests(SimpleTestCase):
    def test_triangle_principal_idempotent(self):
        S = dual_polar(1, 2)
        J = Operator.from_int(RATIONALS, np.ones((3, 3), dtype=np.int64))
        self.assertEqual(S.idempotents[0].scale(3), J)

    def test_hamming_ranks(self):
        self.assertEqual(hamming(2).multiplicities, [1, 2, 1])

    def test_relations(self):
        for S in (hamming(1), hamming(3), dual_polar(1, 3), dual_polar(2, 2)):
            self.assertEqual(failing(check_idempotents(S)), [], S.name)

    def test_eigenmatrices_of_one_dimension(self):
        P, Q = hamming(1).eigenmatrices
        self.assertEqual(P, [[1, 1], [1, -1]])
        self.assertEqual(Q, [[1, 1], [1, -1]])

    def test_summary(self):
        summary = scheme_summary(hamming(1))
        self.assertEqual(summary["P"], [["1", "1"], ["1", "-1"]])
        self.assertEqual(summary["multiplicities"], ["1", "1"])
        self.assertEqual(summary["vertices"], 2)


class KreinTests(SimpleTestCase):
    def test_principal_row(self):
        for S in (hamming(3), dual_polar(2, 2)):
            q = S.krein
            for j in range(S.N + 1):
                for k in range(S.N + 1):
                    self.assertEqual(q[0][j][k], 1 if j == k else 0, (S.name, j, k))

    def test_nonnegative(self):
        for S in (hamming(4), dual_polar(2, 2)):
            self.assertEqual(failing(check_krein_nonnegative(S)), [], S.name)


class DualAdjacencyTests(SimpleTestCase):
    def test_relations(self):
        for S in (hamming(3), dual_polar(2, 2)):
            dual, checks = dual_adjacency(S)
            self.assertEqual(failing(checks), [], S.name)
            self.assertEqual(dual[0], Operator.identity(RATIONALS, S.size))

    def test_diagonal_at_base_vertex(self):
        dual, _ = dual_adjacency(hamming(2), x0=0)
        # |X| (E_1)_{x0, x0} = m_1
        self.assertEqual(dual[1].entry(0, 0), 2)


class PolynomialTests(SimpleTestCase):
    def test_hamming_and_dual_polar(self):
        for S in (hamming(2), hamming(4), dual_polar(2, 2), dual_polar(2, 3)):
            checks = check_P_and_Q_polynomial(S)
            self.assertEqual(failing(checks), [], (S.name, [c.witness for c in checks]))

    def test_hamming_order_is_natural(self):
        self.assertEqual(q_polynomial_order(hamming(3))[0], "natural")

    def test_rook_scheme_is_neither(self):
        checks = check_P_and_Q_polynomial(rook_scheme())
        self.assertEqual([c.status for c in checks], [FAIL, FAIL])
        self.assertEqual(checks[0].witness, "(2, 1) vanishes")


class TerwilligerTests(SimpleTestCase):
    def test_hamming(self):
        checks, data = check_terwilliger_dimension(hamming(3))
        self.assertEqual(failing(checks), [])
        self.assertEqual(data["algebra_dimension"], 20)
        self.assertLessEqual(data["monomial_span"], data["algebra_dimension"])

    def test_dual_polar(self):
        checks, _ = check_terwilliger_dimension(dual_polar(2, 2))
        self.assertEqual(failing(checks), [])

    @override_settings(QLAB_TERWILLIGER_LIMIT=4)
    def test_limit(self):
        checks, data = check_terwilliger_dimension(hamming(3))
        self.assertEqual([c.status for c in checks], [SKIP])
        self.assertEqual(data, {})
