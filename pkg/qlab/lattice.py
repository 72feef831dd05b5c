"""
The subspace lattice L_N(q) and the generators of its incidence algebra.

R raises (entry 1 at (U, V) when U covers V), L = R^T lowers, E_i* projects
onto the i-dimensional subspaces and K = sum_i q^(N/2 - i) E_i*. Under

    e -> q^((1-N)/4) L,  f -> q^((1-N)/4) R,  k -> K

(and its twist by e <-> f, k -> k^-1) these satisfy the U_sqrt(q)(su(2))
relations. Y is the image of the twisted primitive element under the twisted
map: a weighted adjacency matrix of the lattice.
"""
import logging
from dataclasses import dataclass

import numpy as np

from .errors import LimitExceeded
from .exact import QuarterInt, ring_for, scalar_new
from .linalg import covered_subspaces, enumerate_subspaces
from .matrices import Operator
from .reports import exact_check, bool_check

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class LatticeContext:
    n: int
    field: object
    vertices: tuple
    index: dict

    @property
    def q(self):
        return self.field.q

    @property
    def ring(self):
        return ring_for(self.field.q)

    @property
    def labels(self):
        return tuple(v.label() for v in self.vertices)

    def dims(self):
        return np.array([v.dim for v in self.vertices], dtype=np.int64)


@dataclass(frozen=True)
class LatticeOperators:
    R: Operator
    L: Operator
    K: Operator
    K_inv: Operator
    E: tuple


def build_lattice(n, F, limit=None):
    try:
        vertices = tuple(enumerate_subspaces(n, F, limit))
    except LimitExceeded as e:
        logger.error(f"Lattice L_{n}({F.q}) not built: {str(e)}")
        raise
    index = {v: i for i, v in enumerate(vertices)}
    return LatticeContext(n, F, vertices, index)


def raising_matrix(ctx):
    """0/1 integer array with R[U, V] = 1 iff U covers V."""
    size = len(ctx.vertices)
    R = np.zeros((size, size), dtype=np.int64)
    for w, W in enumerate(ctx.vertices):
        for U in covered_subspaces(W):
            R[w, ctx.index[U]] = 1
    return R


def build_RLKE(ctx):
    ring, n, labels = ctx.ring, ctx.n, ctx.labels
    R = Operator.from_int(ring, raising_matrix(ctx), labels, labels)
    dims = ctx.dims()
    E = []
    for i in range(n + 1):
        E.append(Operator.from_int(ring, np.diag((dims == i).astype(np.int64)), labels, labels))
    # N/2 - i = (2N - 4i)/4
    K = Operator.diagonal(ring, [ring.power(QuarterInt(2 * n - 4 * int(i))) for i in dims], labels)
    K_inv = Operator.diagonal(ring, [ring.power(QuarterInt(4 * int(i) - 2 * n)) for i in dims], labels)
    logger.info(f"Built R, L, K, E* on L_{n}({ctx.q}) with {len(labels)} vertices")
    return LatticeOperators(R, R.T, K, K_inv, tuple(E))


def build_Y(ctx, ops=None):
    """Y entrywise: q^((1-i)/2) on the lowering part, q^(-i/2) on the raising
    part, i the dimension of the column subspace."""
    ops = ops or build_RLKE(ctx)
    ring, labels = ctx.ring, ctx.labels
    dims = [int(i) for i in ctx.dims()]
    lower_weights = Operator.diagonal(ring, [ring.power(QuarterInt(2 - 2 * i)) for i in dims], labels)
    raise_weights = Operator.diagonal(ring, [ring.power(QuarterInt(-2 * i)) for i in dims], labels)
    return ops.L @ lower_weights + ops.R @ raise_weights


def build_Y_factored(ctx, ops=None):
    """q^((1-N)/4) (q^(1/4) L + q^(-1/4) R) K^(1/2), with the quarter powers kept."""
    ops = ops or build_RLKE(ctx)
    ring, n, labels = ctx.ring, ctx.n, ctx.labels
    sqrt_K = Operator.diagonal(ring, [ring.power(QuarterInt(n - 2 * int(i))) for i in ctx.dims()], labels)
    inner = ops.L.scale(ring.power(QuarterInt(1))) + ops.R.scale(ring.power(QuarterInt(-1)))
    return (inner @ sqrt_K).scale(ring.power(QuarterInt(1 - n)))


def check_uq_relations(ctx, ops=None):
    """U_sqrt(q)(su(2)) relations under both homomorphisms."""
    ops = ops or build_RLKE(ctx)
    q, n = ctx.q, ctx.n
    R, L, K, K_inv = ops.R, ops.L, ops.K, ops.K_inv
    size = len(ctx.vertices)
    identity = Operator.identity(ctx.ring, size, ctx.labels)
    c2 = scalar_new(q, QuarterInt(2 - 2 * n))
    bracket = (scalar_new(q, QuarterInt(2)) - scalar_new(q, QuarterInt(-2))).inverse()
    checks = [
        exact_check("K K^-1 = I", K @ K_inv, identity),
        exact_check("K L K^-1 = q L", K @ L @ K_inv, L.scale(q)),
        exact_check("K R K^-1 = q^-1 R", K @ R @ K_inv, R.scale(scalar_new(q, -1))),
        exact_check("q^((1-N)/2) [L, R] = (K - K^-1)/(q^1/2 - q^-1/2)",
                    L.commutator(R).scale(c2), (K - K_inv).scale(bracket)),
        exact_check("twisted: K^-1 R K = q R", K_inv @ R @ K, R.scale(q)),
        exact_check("twisted: K^-1 L K = q^-1 L", K_inv @ L @ K, L.scale(scalar_new(q, -1))),
        exact_check("twisted: q^((1-N)/2) [R, L] = (K^-1 - K)/(q^1/2 - q^-1/2)",
                    R.commutator(L).scale(c2), (K_inv - K).scale(bracket)),
    ]
    logger.info(f"U_sqrt(q) relations on L_{n}({q}): {sum(c.passed for c in checks)}/{len(checks)} pass")
    return checks


def check_incidence_structure(ctx, ops=None):
    ops = ops or build_RLKE(ctx)
    R, L, E = ops.R, ops.L, ops.E
    size = len(ctx.vertices)
    ring, labels = ctx.ring, ctx.labels
    identity = Operator.identity(ring, size, labels)
    zero = Operator.zeros(ring, size, size, labels, labels)
    checks = [exact_check("L = R^T", L, R.T)]

    total = zero
    orthogonal = True
    for i, Ei in enumerate(E):
        total = total + Ei
        for j, Ej in enumerate(E):
            if (Ei @ Ej) != (Ei if i == j else zero):
                orthogonal = False
    checks.append(bool_check("E_i* E_j* = delta_ij E_i*", orthogonal))
    checks.append(exact_check("sum E_i* = I", total, identity))
    for i in range(len(E) - 1):
        checks.append(exact_check(f"R E_{i}* = E_{i + 1}* R", R @ E[i], E[i + 1] @ R))

    Y = build_Y(ctx, ops)
    checks.append(exact_check("Y entrywise = factored Y", Y, build_Y_factored(ctx, ops)))
    covering = (R.support() | L.support())
    checks.append(bool_check("Y supported exactly on covering pairs",
                             bool(np.array_equal(Y.support(), covering))))
    return checks
