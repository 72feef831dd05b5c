"""
The map zeta from the cube module into the lattice module.

Column x of zeta is the normalized indicator of the subspaces whose canonical
diagonal is x. Its image is closed under R, L and E_i*, and on that image the
weighted adjacency Y of the lattice acts as the reversed cube A_(1/sqrt(q)).
"""
import itertools
import logging
from dataclasses import dataclass

import numpy as np
from sympy import multiplicity

from .exact import QuarterInt
from .hypercube import CubeContext, build_Aq, reversal_operator
from .lattice import build_lattice, build_RLKE, build_Y
from .linalg import cover_count, profile_preimage_size
from .matrices import Operator
from .reports import bool_check, exact_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class ZetaMap:
    matrix: Operator
    lattice: object
    profiles: tuple

    @property
    def ring(self):
        return self.matrix.ring

    def column_index(self, x):
        return self.profiles.index(tuple(x))


def preimage_exponent(x, q):
    """m with q^m = profile_preimage_size(x, q)."""
    return multiplicity(q, profile_preimage_size(x, q))


def build_zeta(n, F, limit=None, lattice=None):
    ctx = lattice or build_lattice(n, F, limit)
    ring = ctx.ring
    profiles = tuple(itertools.product((0, 1), repeat=n))
    column = {x: j for j, x in enumerate(profiles)}
    entries = []
    for i, V in enumerate(ctx.vertices):
        m = preimage_exponent(V.profile, F.q)
        # q^(-m/2)
        entries.append((i, column[V.profile], ring.power(QuarterInt(-2 * m))))
    cube_labels = tuple("".join(str(b) for b in x) for x in profiles)
    matrix = Operator.from_entries(ring, (len(ctx.vertices), len(profiles)), entries, ctx.labels, cube_labels)
    logger.info(f"Built zeta for L_{n}({F.q}): {matrix.shape[0]}x{matrix.shape[1]}")
    return ZetaMap(matrix, ctx, profiles)


def raising_exponent(x, k):
    """Quarter exponent of the coefficient of zeta(x + e_k) in R zeta(x), k counted from 1:
    q^((k-1)/2 - sum_{j<k} x_j / 2 + sum_{j>k} x_j / 2)."""
    return QuarterInt(2 * (k - 1) - 2 * sum(x[:k - 1]) + 2 * sum(x[k:]))


def coefficient_operator(zeta):
    """B with R zeta = zeta B; L zeta = zeta B^T."""
    ring, profiles = zeta.ring, zeta.profiles
    entries = []
    for j, x in enumerate(profiles):
        for k in range(1, len(x) + 1):
            if x[k - 1]:
                continue
            y = x[:k - 1] + (1,) + x[k:]
            entries.append((zeta.column_index(y), j, ring.power(raising_exponent(x, k))))
    labels = zeta.matrix.col_labels
    return Operator.from_entries(ring, (len(profiles), len(profiles)), entries, labels, labels)


def grading_operator(zeta, i):
    weights = [1 if sum(x) == i else 0 for x in zeta.profiles]
    return Operator.diagonal(zeta.ring, weights, zeta.matrix.col_labels)


def check_action_formulas(n, F, zeta=None, ops=None):
    zeta = zeta or build_zeta(n, F)
    ops = ops or build_RLKE(zeta.lattice)
    Z = zeta.matrix
    B = coefficient_operator(zeta)
    checks = [
        exact_check("R zeta(x) = sum_k q^(...) zeta(x + e_k)", ops.R @ Z, Z @ B),
        exact_check("L zeta(x) = sum_k q^(...) zeta(x - e_k)", ops.L @ Z, Z @ B.T),
    ]
    for i, Ei in enumerate(ops.E):
        checks.append(exact_check(f"E_{i}* zeta(x) = [|x| = {i}] zeta(x)", Ei @ Z, Z @ grading_operator(zeta, i)))
    return checks


def check_submodule_closure(n, F, zeta=None, ops=None):
    """(I - zeta zeta^T) X zeta = 0 for X in R, L, E_i*."""
    zeta = zeta or build_zeta(n, F)
    ops = ops or build_RLKE(zeta.lattice)
    Z = zeta.matrix
    size = Z.shape[0]
    projector = Z @ Z.T
    complement = Operator.identity(zeta.ring, size, Z.row_labels) - projector
    zero = Operator.zeros(zeta.ring, size, Z.shape[1], Z.row_labels, Z.col_labels)
    checks = [
        exact_check("(I - zeta zeta^T) R zeta = 0", complement @ ops.R @ Z, zero),
        exact_check("(I - zeta zeta^T) L zeta = 0", complement @ ops.L @ Z, zero),
    ]
    for i, Ei in enumerate(ops.E):
        checks.append(exact_check(f"(I - zeta zeta^T) E_{i}* zeta = 0", complement @ Ei @ Z, zero))
    return checks


def reversed_cube(n, base_q, reverse=True):
    """pi^-1 A_(1/sqrt(q)) pi; with reverse=False the conjugation is dropped."""
    ctx = CubeContext(n, base_q, QuarterInt(-2))
    A = build_Aq(ctx)
    if not reverse:
        return A
    pi = reversal_operator(ctx)
    return pi.T @ A @ pi


def check_quotient_identity(n, F, zeta=None, ops=None, reverse=True):
    """Y zeta = zeta (pi^-1 A_(1/sqrt(q)) pi), exactly."""
    zeta = zeta or build_zeta(n, F)
    ops = ops or build_RLKE(zeta.lattice)
    Y = build_Y(zeta.lattice, ops)
    Z = zeta.matrix
    cube = reversed_cube(n, F.q, reverse).relabel(Z.col_labels, Z.col_labels)
    name = "Y zeta = zeta pi^-1 A_(1/sqrt q) pi" if reverse else "Y zeta = zeta A_(1/sqrt q)"
    return [exact_check(name, Y @ Z, Z @ cube)]


def check_zeta_structure(n, F, zeta=None, ops=None):
    zeta = zeta or build_zeta(n, F)
    ops = ops or build_RLKE(zeta.lattice)
    Z, ring, q = zeta.matrix, zeta.ring, F.q
    checks = [exact_check("zeta^T zeta = I", Z.T @ Z, Operator.identity(ring, Z.shape[1], Z.col_labels))]

    counts = Z.support().sum(axis=1)
    witness = None
    if not np.all(counts == 1):
        witness = Z.row_labels[int(np.argmax(counts != 1))]
    checks.append(bool_check("column supports partition the lattice", witness is None, witness))

    projector = Z @ Z.T
    Y = build_Y(zeta.lattice, ops)
    checks.append(exact_check("zeta zeta^T Y = Y zeta zeta^T", projector @ Y, Y @ projector))

    # the coefficient in R zeta against the counting argument and the closed form
    coefficients = Z.T @ ops.R @ Z
    mismatch = None
    for j, x in enumerate(zeta.profiles):
        for k in range(1, n + 1):
            if x[k - 1]:
                continue
            y = x[:k - 1] + (1,) + x[k:]
            shift = preimage_exponent(y, q) - preimage_exponent(x, q)
            counted = ring.power(QuarterInt(2 * shift)) * cover_count(y, k, q)
            closed = ring.power(raising_exponent(x, k))
            actual = coefficients.entry(zeta.column_index(y), j)
            if not counted == closed == actual:
                mismatch = mismatch or f"x={Z.col_labels[j]}, k={k}"
    checks.append(bool_check("n_k(x+e_k) sqrt(|pre(x+e_k)|/|pre(x)|) = R coefficient", mismatch is None, mismatch))
    return checks
