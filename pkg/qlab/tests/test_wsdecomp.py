import cmath

import numpy as np
from django.test import SimpleTestCase

from qlab.dualpolar import IsotropicVertex, dual_polar_graph
from qlab.errors import LimitExceeded, NotSymplectic
from qlab.fields import field_new
from qlab.lattice import build_lattice
from qlab.reports import PASS, SKIP
from qlab.wsdecomp import (
    SymMatFq, action_images, character, character_projector, check_composition, check_rws,
    check_ws_decomposition, congruence_diagonal, enumerate_sym_matrices, pairing, quadratic_value, sym_add,
    sym_from_upper, unipotent_action,
)

F2 = field_new(2)
F3 = field_new(3)


def failing(checks):
    return [c.name for c in checks if c.status not in (PASS, SKIP)]


class SymmetricMatrixTests(SimpleTestCase):
    def test_counts(self):
        self.assertEqual(len(enumerate_sym_matrices(1, F2)), 2)
        self.assertEqual(len(enumerate_sym_matrices(2, F2)), 8)
        self.assertEqual(len(enumerate_sym_matrices(2, F3)), 27)

    def test_limit(self):
        with self.assertRaises(LimitExceeded):
            enumerate_sym_matrices(3, F3, limit=100)

    def test_upper_triangle(self):
        S = sym_from_upper(2, (1, 2, 0), F3)
        self.assertEqual(S.entries, ((1, 2), (2, 0)))
        self.assertEqual(S.upper(), (1, 2, 0))
        self.assertEqual(S.label(), "[1,2;2,0]")

    def test_addition(self):
        S = sym_from_upper(2, (1, 2, 0), F3)
        T = sym_from_upper(2, (2, 2, 1), F3)
        self.assertEqual(sym_add(S, T).upper(), (0, 1, 1))


class TypeTests(SimpleTestCase):
    def test_zero_matrix(self):
        S = sym_from_upper(2, (0, 0, 0), F3)
        self.assertEqual((S.rank, S.eps), (0, 1))

    def test_odd_rank(self):
        S = sym_from_upper(1, (1,), F3)
        self.assertEqual((S.rank, S.eps), (1, 0))

    def test_odd_characteristic_types(self):
        # -det(diag(1, 1)) = 2 is a nonsquare mod 3
        self.assertEqual(sym_from_upper(2, (1, 0, 1), F3).eps, -1)
        self.assertEqual(sym_from_upper(2, (1, 0, 2), F3).eps, 1)
        self.assertEqual(sym_from_upper(2, (0, 1, 0), F3).eps, 1)

    def test_congruence_diagonal(self):
        self.assertEqual(congruence_diagonal(((0, 1), (1, 0)), F3), [2, 1])
        self.assertEqual(congruence_diagonal(((0, 0), (0, 0)), F3), [])

    def test_characteristic_two_quadratic_forms(self):
        anisotropic = sym_from_upper(2, (1, 1, 1), F2)
        hyperbolic = sym_from_upper(2, (0, 1, 0), F2)
        square = sym_from_upper(2, (1, 0, 0), F2)
        self.assertEqual((anisotropic.rank, anisotropic.eps), (2, -1))
        self.assertEqual((hyperbolic.rank, hyperbolic.eps), (2, 1))
        self.assertEqual((square.rank, square.eps), (1, 0))

    def test_quadratic_value(self):
        S = sym_from_upper(2, (1, 1, 1), F2)
        self.assertEqual([quadratic_value(S, x) for x in ((0, 0), (1, 0), (0, 1), (1, 1))], [0, 1, 1, 1])


class CharacterTests(SimpleTestCase):
    def test_pairing(self):
        S = sym_from_upper(2, (1, 1, 0), F3)
        T = sym_from_upper(2, (0, 1, 2), F3)
        # tr(S T) = 1*0 + 1*1 + 1*1 + 0*2
        self.assertEqual(pairing(S, T), 2)

    def test_values(self):
        one3 = sym_from_upper(1, (1,), F3)
        self.assertAlmostEqual(character(one3, one3), cmath.exp(2j * cmath.pi / 3))
        one2 = sym_from_upper(1, (1,), F2)
        self.assertAlmostEqual(character(one2, one2), -1)


class UnipotentActionTests(SimpleTestCase):
    def test_zero_acts_trivially(self):
        G = dual_polar_graph(2, F3)
        zero = sym_from_upper(2, (0, 0, 0), F3)
        self.assertTrue(np.array_equal(action_images(zero, G), np.arange(G.size)))

    def test_one_dimension(self):
        T = sym_from_upper(1, (1,), F2)
        self.assertEqual(unipotent_action(T, IsotropicVertex(((1, 0),))).rows, ((1, 0),))
        self.assertEqual(unipotent_action(T, IsotropicVertex(((0, 1),))).rows, ((1, 1),))

    def test_asymmetric(self):
        T = SymMatFq(((0, 1), (0, 0)), F2)
        with self.assertRaises(NotSymplectic):
            unipotent_action(T, IsotropicVertex(((1, 0, 0, 0), (0, 1, 0, 0))))

    def test_composition(self):
        for q in (2, 3):
            F = field_new(q)
            G = dual_polar_graph(2, F)
            sym = enumerate_sym_matrices(2, F)
            self.assertEqual(check_composition(G, sym, [action_images(T, G) for T in sym]).status, PASS)


class ProjectorTests(SimpleTestCase):
    def test_triangle_ranks(self):
        G = dual_polar_graph(1, F2)
        ranks = [character_projector(S, G).rank() for S in enumerate_sym_matrices(1, F2)]
        self.assertEqual(ranks, [2, 1])

    def test_per_label_comparison(self):
        G = dual_polar_graph(1, F2)
        zero, one = enumerate_sym_matrices(1, F2)
        checks, data = check_rws(zero, G, build_lattice(1, F2))
        self.assertEqual(failing(checks), [])
        self.assertEqual(data["observed"], ["-1.000000", "2.000000"])
        checks, data = check_rws(one, G, build_lattice(0, F2))
        self.assertEqual(failing(checks), [])
        self.assertEqual(data["observed"], ["-1.000000"])


class DecompositionTests(SimpleTestCase):
    def test_decomposition(self):
        for d, q in ((1, 2), (1, 3), (2, 2)):
            checks, data = check_ws_decomposition(dual_polar_graph(d, field_new(q)))
            self.assertEqual(failing(checks), [], (d, q))
            self.assertEqual(len(data["per_S"]), q ** (d * (d + 1) // 2))

    def test_zero_label_spectrum(self):
        _, data = check_ws_decomposition(dual_polar_graph(2, F2))
        self.assertEqual(data["per_S"]["[0,0;0,0]"]["observed"],
                         ["-3.000000", "1.000000", "1.000000", "1.000000", "6.000000"])

    def test_census(self):
        _, data = check_ws_decomposition(dual_polar_graph(2, F2))
        self.assertEqual(data["census"], {
            "rank=0,eps=1": 1,
            "rank=1,eps=0": 3,
            "rank=2,eps=-1": 1,
            "rank=2,eps=1": 3,
        })

    def test_vertex_limit(self):
        checks, data = check_ws_decomposition(dual_polar_graph(2, F2), vertex_limit=10)
        self.assertEqual([c.status for c in checks], [SKIP])
        self.assertEqual(data, {})
