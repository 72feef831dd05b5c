"""
The dual polar graph C_d(q): Lagrangian subspaces of the symplectic space
F_q^(2d), adjacent when they meet in codimension one.

Vertices are d x 2d matrices in reduced row echelon form. Enumeration extends
echelon prefixes one row at a time (each new row pivots right of the previous
ones, the earlier rows vanish in its pivot column, and the form vanishes on
it against every earlier row), so every Lagrangian is produced exactly once.
"""
import json
import logging
from dataclasses import dataclass, field as dataclass_field
from fractions import Fraction
from math import comb, prod

import numpy as np

from .conf import setting
from .errors import IoError, LimitExceeded, NotDistanceRegular, NotSymplectic, OutOfRange
from .exact import ExactScalar, QuarterInt, RATIONALS, gaussian_binomial, qbracket_gauss, qbracket_sym, ring_for
from .linalg import MatFq, _rref_rows, all_vectors, batched_rank, intersect_dim, tau_canonical
from .matrices import Operator, matrix_to_dict
from .reports import bool_check, exact_check
from .schemes import rational_roots

logger = logging.getLogger(__name__)

GRAPH_SCHEMA = "qlab-graph/1"


@dataclass(frozen=True)
class SymplecticSpace:
    """F_q^(2d) with B(u, v) = sum_i (u_i v_(d+i) - u_(d+i) v_i)."""
    d: int
    field: object = dataclass_field(repr=False)

    @property
    def dimension(self):
        return 2 * self.d

    def form_matrix(self):
        d, F = self.d, self.field
        minus_one = F.neg_list[1]
        rows = [[0] * (2 * d) for _ in range(2 * d)]
        for i in range(d):
            rows[i][d + i] = 1
            rows[d + i][i] = minus_one
        return MatFq.from_rows(rows, F)

    def functional(self, u):
        """g with B(u, v) = sum_j g_j v_j."""
        d, neg = self.d, self.field.neg
        u = np.asarray(u, dtype=np.int64)
        return np.concatenate([neg[u[d:]], u[:d]])

    def pairing(self, u, vectors):
        """B(u, v) for every row v of ``vectors``."""
        F = self.field
        vectors = np.asarray(vectors, dtype=np.int64).reshape(-1, self.dimension)
        g = self.functional(u)
        total = np.zeros(len(vectors), dtype=np.int64)
        for j in range(self.dimension):
            if g[j]:
                total = F.add[total, F.mul[g[j], vectors[:, j]]]
        return total

    def bilinear(self, u, v):
        return int(self.pairing(u, [v])[0])

    def is_isotropic(self, rows):
        return all(self.bilinear(u, v) == 0 for a, u in enumerate(rows) for v in rows[a + 1:])


@dataclass(frozen=True, order=True)
class IsotropicVertex:
    rows: tuple

    @property
    def d(self):
        return len(self.rows)

    def label(self):
        return "/".join(",".join(str(x) for x in row) for row in self.rows)

    def __str__(self):
        return self.label()


def isotropic_vertex(space, rows):
    """Canonical vertex spanned by ``rows``; NotSymplectic unless they span a Lagrangian."""
    if any(len(row) != space.dimension for row in rows):
        raise NotSymplectic(f"vectors must have length {space.dimension}")
    reduced, _ = _rref_rows(rows, space.field)
    if len(reduced) != space.d:
        raise NotSymplectic(f"rows span a {len(reduced)}-space, need a {space.d}-space in F^{space.dimension}")
    if not space.is_isotropic(reduced):
        raise NotSymplectic("the symplectic form does not vanish on the span")
    return IsotropicVertex(tuple(tuple(int(x) for x in row) for row in reduced))


def lagrangian_count(d, q):
    """prod_{i=1}^d (1 + q^i)."""
    return prod(1 + q ** i for i in range(1, d + 1))


def printed_vertex_count(d, q, e=1):
    """(-q^(d+e-1); q)_d read with the standard q-Pochhammer convention."""
    return prod(1 + q ** (d + e - 1 + l) for l in range(d))


def enumerate_lagrangians(d, F, limit=None):
    limit = setting('LAGRANGIAN_LIMIT', limit)
    total = lagrangian_count(d, F.q)
    if total > limit:
        raise LimitExceeded(f"Lagrangians of F_{F.q}^{2 * d}", total, limit)
    space = SymplecticSpace(d, F)
    n = 2 * d
    found = []

    def extend(rows, last_pivot):
        if len(rows) == d:
            found.append(IsotropicVertex(tuple(rows)))
            return
        for p in range(last_pivot + 1, n - (d - len(rows)) + 1):
            if any(row[p] for row in rows):
                continue
            tail = all_vectors(n - 1 - p, F)
            candidates = np.zeros((len(tail), n), dtype=np.int64)
            candidates[:, p] = 1
            candidates[:, p + 1:] = tail
            keep = np.ones(len(candidates), dtype=bool)
            for row in rows:
                keep &= space.pairing(row, candidates) == 0
            for v in candidates[keep]:
                extend(rows + [tuple(int(x) for x in v)], p)

    extend([], -1)
    found.sort()
    logger.info(f"Enumerated {len(found)} Lagrangians of F_{F.q}^{n}")
    return found


@dataclass
class DualPolarGraph:
    space: SymplecticSpace
    vertices: list
    distance: np.ndarray
    matrices: list

    @property
    def d(self):
        return self.space.d

    @property
    def q(self):
        return self.space.field.q

    @property
    def size(self):
        return len(self.vertices)

    @property
    def labels(self):
        return tuple(v.label() for v in self.vertices)


def distance_array(space, vertices):
    """dist(U, V) = rank of the d x d Gram matrix B(u_r, v_s) = d - dim(U cap V)."""
    F, d = space.field, space.d
    bases = np.array([v.rows for v in vertices], dtype=np.int64).reshape(len(vertices), d, 2 * d)
    # B(u, v) = u . (v_(d:), -v_(:d))
    paired = np.concatenate([bases[:, :, d:], F.neg[bases[:, :, :d]]], axis=2)
    size = len(vertices)
    distance = np.zeros((size, size), dtype=np.int64)
    for a in range(size):
        others = paired[a:]
        gram = np.zeros((len(others), d, d), dtype=np.int64)
        for k in range(2 * d):
            gram = F.add[gram, F.mul[bases[a, :, k][None, :, None], others[:, None, :, k]]]
        ranks = batched_rank(gram, F)
        distance[a, a:] = ranks
        distance[a:, a] = ranks
    return distance


def build_distance_matrices(vertices, F):
    if not vertices:
        raise OutOfRange("no vertices")
    d = vertices[0].d
    space = SymplecticSpace(d, F)
    distance = distance_array(space, vertices)
    labels = tuple(v.label() for v in vertices)
    matrices = [Operator.from_int(RATIONALS, (distance == i).astype(np.int64), labels, labels) for i in range(d + 1)]
    logger.info(f"Built distance matrices of C_{d}({F.q}) on {len(vertices)} vertices")
    return DualPolarGraph(space, list(vertices), distance, matrices)


def dual_polar_graph(d, F, limit=None):
    return build_distance_matrices(enumerate_lagrangians(d, F, limit), F)


def intersection_distance(space, U, V):
    """d - dim(U cap V) through row reduction in F_q^(2d)."""
    n = space.dimension
    Us = tau_canonical(U.rows, n, space.field)
    Vs = tau_canonical(V.rows, n, space.field)
    return space.d - intersect_dim(Us, Vs)


def _zero_one(op):
    return np.asarray(op.parts[0], dtype=np.int64)


def check_distance_regularity(G):
    """Every p_ij^k is constant on its distance class; returns (checks,
    {"b": [...], "c": [...], "a": [...]})."""
    matrices = G.matrices if hasattr(G, "matrices") else list(G)
    labels = matrices[0].row_labels
    arrays = [_zero_one(A) for A in matrices]
    N = len(arrays) - 1
    distance = sum(i * a for i, a in enumerate(arrays))
    p = [[[0] * (N + 1) for _ in range(N + 1)] for _ in range(N + 1)]
    for i in range(N + 1):
        for j in range(i, N + 1):
            counts = np.rint(arrays[i].astype(np.float64) @ arrays[j].astype(np.float64)).astype(np.int64)
            for k in range(N + 1):
                mask = distance == k
                values = counts[mask]
                if not len(values):
                    continue
                expected = int(values[0])
                bad = np.argwhere(mask & (counts != expected))
                if len(bad):
                    x, y = (int(t) for t in bad[0])
                    logger.error(f"Distance-regularity check failed at p_{i}{j}^{k}")
                    raise NotDistanceRegular((labels[x], labels[y], i, j, k), (expected, int(counts[x, y])))
                p[i][j][k] = p[j][i][k] = expected
    if not N:
        return [bool_check("p_ij^k constant on every distance class", True)], {"b": [], "c": [], "a": [0]}
    array = {
        "b": [p[1][i + 1][i] for i in range(N)],
        "c": [p[1][i - 1][i] for i in range(1, N + 1)],
        "a": [p[1][i][i] for i in range(N + 1)],
    }
    return [bool_check("p_ij^k constant on every distance class", True)], array


def check_intersection_formulas(G, array, e=1):
    """c_i = [i] and b_i = q^(i+e) [d-i] with Gaussian brackets."""
    d, q = G.d, G.q
    c_expected = [qbracket_gauss(i, q) for i in range(1, d + 1)]
    b_expected = [q ** (i + e) * qbracket_gauss(d - i, q) for i in range(d)]
    return [
        bool_check("c_i = (q^i - 1)/(q - 1)", array["c"] == c_expected, f"{array['c']} vs {c_expected}"),
        bool_check("b_i = q^(i+1) (q^(d-i) - 1)/(q - 1)", array["b"] == b_expected, f"{array['b']} vs {b_expected}"),
    ]


def _q_power(ring, exponent):
    return ring.power(QuarterInt.of(exponent))


def _ttr2_coefficients(ring, q, N, e):
    """[i+1], (q^e - 1)[i] and q^(i-1+e)[N-i+1] for i = 0..N."""
    qe = _q_power(ring, e)
    table = []
    for i in range(N + 1):
        upper = qbracket_gauss(i + 1, q)
        middle = (qe - 1) * qbracket_gauss(i, q)
        lower = _q_power(ring, Fraction(i - 1) + Fraction(e)) * qbracket_gauss(N - i + 1, q) if i else None
        table.append((upper, middle, lower))
    return table


def ttr2_polynomials(A1, N, q, e=1):
    """v_0(A_1)..v_N(A_1) generated by the three-term recurrence."""
    ring = A1.ring
    size = A1.shape[0]
    coefficients = _ttr2_coefficients(ring, q, N, e)
    V = [Operator.identity(ring, size, A1.row_labels), A1]
    for i in range(1, N):
        upper, middle, lower = coefficients[i]
        nxt = A1 @ V[i] - V[i].scale(middle) - V[i - 1].scale(lower)
        V.append(nxt.scale(Fraction(1, upper)))
    return V[:N + 1]


def check_ttr2(G, e=1):
    """A_1 A_i = [i+1] A_(i+1) + (q^e - 1)[i] A_i + q^(i-1+e)[N-i+1] A_(i-1),
    Gaussian brackets; then A_i = v_i(A_1)."""
    q, N = G.q, G.d
    ring = ring_for(q)
    A = [M.over(ring) for M in G.matrices]
    size = G.size
    zero = Operator.zeros(ring, size, size, A[0].row_labels, A[0].col_labels)
    checks = []
    for i, (upper, middle, lower) in enumerate(_ttr2_coefficients(ring, q, N, e)):
        rhs = (A[i + 1].scale(upper) if i < N else zero) + A[i].scale(middle)
        if i:
            rhs = rhs + A[i - 1].scale(lower)
        checks.append(exact_check(f"A_1 A_{i} = [{i + 1}] A_{i + 1} + (q^e-1)[{i}] A_{i} + q^({i - 1}+e)[{N - i + 1}] A_{i - 1}",
                                  A[1] @ A[i], rhs))
    for i, Vi in enumerate(ttr2_polynomials(A[1], N, q, e)):
        checks.append(exact_check(f"A_{i} = v_{i}(A_1)", A[i], Vi))
    return checks


def symmetric_bracket_ttr2(G, e=1):
    """The i=1 step of the recurrence read with symmetric brackets
    [n] = (q^n - q^-n)/(q - q^-1); recorded next to the Gaussian reading."""
    q, N = G.q, G.d
    ring = ring_for(q)
    p = _q_power(ring, 1)
    qe = _q_power(ring, e)
    A = [M.over(ring) for M in G.matrices]
    predicted = qe * qbracket_sym(N, p)
    rhs = A[1].scale((qe - 1) * qbracket_sym(1, p)) + A[0].scale(predicted)
    if N >= 2:
        rhs = rhs + A[2].scale(qbracket_sym(2, p))
    holds = A[1] @ A[1] == rhs
    if not holds:
        logger.info(f"C_{N}({q}): symmetric-bracket recurrence fails, valency {predicted} predicted")
    return {
        "symmetric_bracket_holds": holds,
        "predicted_valency": str(predicted.as_fraction()) if predicted.is_rational() else predicted.serialize(),
        "valency": int(_zero_one(G.matrices[1])[0].sum()),
    }


# -- dual q-Krawtchouk polynomials ---------------------------------------------


def _dqk_coefficients(i, N, q, ring):
    """(q^-i; q)_k q^k / ((q^-N; q)_k (q; q)_k) for k = 0..i."""
    result = []
    numerator = ExactScalar.rational(ring, 1)
    denominator = ExactScalar.rational(ring, 1)
    for k in range(i + 1):
        if k:
            numerator = numerator * (1 - _q_power(ring, k - 1 - i))
            denominator = denominator * (1 - _q_power(ring, k - 1 - N)) * (1 - q ** k)
        result.append(numerator * q ** k / denominator)
    return result


def dual_q_krawtchouk(i, j, c, N, q):
    """K_i(lambda(j); c, N | q) with lambda(j) = q^-j + c q^(j-N), as the
    terminating 3phi2(q^-i, q^-j, c q^(j-N); q^-N, 0 | q; q)."""
    if not (0 <= i <= N and 0 <= j <= N):
        raise OutOfRange(f"need 0 <= i, j <= N, got i={i}, j={j}, N={N}")
    ring = ring_for(q)
    c = c if isinstance(c, ExactScalar) else ExactScalar.rational(ring, c)
    lam = _q_power(ring, -j) + c * _q_power(ring, j - N)
    return dqk_polynomial_value(i, lam, c, N, q)


def dqk_polynomial_value(i, lam, c, N, q):
    """K_i as a polynomial in lambda: sum_k coef_k prod_{l<k} (1 + c q^(2l-N) - q^l lambda)."""
    ring = ring_for(q)
    total = ExactScalar.rational(ring, 0)
    running = ExactScalar.rational(ring, 1)
    for k, coefficient in enumerate(_dqk_coefficients(i, N, q, ring)):
        if k:
            l = k - 1
            running = running * (1 + c * _q_power(ring, 2 * l - N) - lam * q ** l)
        total = total + coefficient * running
    return total


def dqk_matrix(i, Lam, c, N, q):
    """K_i evaluated at the matrix argument Lam."""
    ring = Lam.ring
    size = Lam.shape[0]
    identity = Operator.identity(ring, size, Lam.row_labels)
    total = Operator.zeros(ring, size, size, Lam.row_labels, Lam.col_labels)
    running = identity
    for k, coefficient in enumerate(_dqk_coefficients(i, N, q, ring)):
        if k:
            l = k - 1
            running = running @ (identity.scale(1 + c * _q_power(ring, 2 * l - N)) - Lam.scale(q ** l))
        total = total + running.scale(coefficient)
    return total


def dqk_prefactor(i, N, q):
    """(-1)^i q^binom(i,2) [N choose i]_q."""
    return (-1) ** i * q ** comb(i, 2) * gaussian_binomial(N, i, q)


def dqk_argument(A1, N, q, e=1):
    """q^-N (1 - q) A_1 + q^-N (1 - q^e) I."""
    ring = A1.ring
    qe = _q_power(ring, e)
    scale = _q_power(ring, -N)
    identity = Operator.identity(ring, A1.shape[0], A1.row_labels)
    return A1.scale(scale * (1 - q)) + identity.scale(scale * (1 - qe))


def dqk_convention(G, e=1):
    """Compare p_i(j) from the recurrence at each eigenvalue with the prefactor
    times K_i at lambda(j) and at lambda(N - j); returns the matching labels."""
    q, N = G.q, G.d
    ring = ring_for(q)
    c = -_q_power(ring, e)
    thetas = rational_roots(_intersection_matrix(G.matrices, N)) if N else [Fraction(0)]
    coefficients = _ttr2_coefficients(ring, q, N, e)
    matches = {"direct": True, "reflected": True}
    for j, theta in enumerate(thetas):
        values = [ExactScalar.rational(ring, 1), ExactScalar.rational(ring, theta)]
        for i in range(1, N):
            upper, middle, lower = coefficients[i]
            values.append((values[i] * theta - values[i] * middle - values[i - 1] * lower) / upper)
        for i in range(N + 1):
            prefactor = dqk_prefactor(i, N, q)
            if values[i] != dual_q_krawtchouk(i, j, c, N, q) * prefactor:
                matches["direct"] = False
            if values[i] != dual_q_krawtchouk(i, N - j, c, N, q) * prefactor:
                matches["reflected"] = False
    return [name for name, ok in matches.items() if ok]


def _intersection_matrix(matrices, N):
    arrays = [_zero_one(A) for A in matrices]
    distance = sum(i * a for i, a in enumerate(arrays))
    rows = []
    for k in range(N + 1):
        x, y = (int(t) for t in np.argwhere(distance == k)[0])
        rows.append([int(arrays[1][x] @ arrays[i][:, y]) for i in range(N + 1)])
    return rows


def check_dqk_identity(G, e=1):
    """A_i = (-1)^i q^binom(i,2) [N choose i]_q K_i(Lambda; -q^e, N | q) as matrices,
    Lambda = q^-N (1-q) A_1 + q^-N (1-q^e) I. Returns (checks, convention)."""
    q, N = G.q, G.d
    ring = ring_for(q)
    A = [M.over(ring) for M in G.matrices]
    c = -_q_power(ring, e)
    Lam = dqk_argument(A[1], N, q, e)
    checks = []
    failed = False
    for i in range(N + 1):
        rhs = dqk_matrix(i, Lam, c, N, q).scale(dqk_prefactor(i, N, q))
        check = exact_check(f"A_{i} = (-1)^{i} q^{comb(i, 2)} [{N} {i}]_q K_{i}(Lambda; -q^e, {N} | q)", A[i], rhs)
        failed = failed or not check.passed
        checks.append(check)
    if failed:
        for i, Vi in enumerate(ttr2_polynomials(A[1], N, q, e)):
            checks.append(exact_check(f"fallback: A_{i} = v_{i}(A_1)", A[i], Vi))
    matched = dqk_convention(G, e)
    convention = matched[0] if len(matched) == 1 else ("both" if matched else "none")
    checks.append(bool_check(f"eigenvalue index convention: {convention}", len(matched) == 1, ",".join(matched) or "none"))
    logger.info(f"dual q-Krawtchouk on C_{N}({q}): convention {convention}")
    return checks, convention


def eigenvalue_formula(d, q, e=1):
    """theta_j = q^e [d-j] - [j], descending."""
    return [q ** e * qbracket_gauss(d - j, q) - qbracket_gauss(j, q) for j in range(d + 1)]


def multiplicities_from_array(array, thetas):
    """m(theta) = |X| / sum_i k_i u_i(theta)^2 with the standard sequence
    u_0 = 1, u_1 = theta / k, c_i u_(i-1) + a_i u_i + b_i u_(i+1) = theta u_i."""
    b, c, a = array["b"], array["c"], array["a"]
    N = len(b)
    valencies = [Fraction(1)]
    for i in range(N):
        valencies.append(valencies[i] * b[i] / c[i])
    size = sum(valencies)
    result = []
    for theta in thetas:
        theta = Fraction(theta)
        u = [Fraction(1)]
        if N:
            u.append(theta / b[0])
        for i in range(1, N):
            u.append(((theta - a[i]) * u[i] - c[i - 1] * u[i - 1]) / b[i])
        result.append(size / sum(k * x * x for k, x in zip(valencies, u)))
    return result


# -- export ---------------------------------------------------------------------


def graph_to_dict(G):
    return {
        "schema": GRAPH_SCHEMA,
        "d": G.d,
        "q": G.q,
        "vertices": [[list(row) for row in v.rows] for v in G.vertices],
        "distance_matrices": [matrix_to_dict(A) for A in G.matrices],
    }


def export_graph(G, path):
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(graph_to_dict(G), handle, sort_keys=True, indent=1)
            handle.write("\n")
    except OSError as e:
        logger.error(f"Graph export to {path} failed: {str(e)}")
        raise IoError(str(e)) from e
    logger.info(f"Exported C_{G.d}({G.q}) with {G.size} vertices to {path}")
