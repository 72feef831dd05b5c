"""
The W(S) decomposition of the dual polar module.

The abelian group of symmetric d x d matrices T acts on Lagrangians through
(u, w) -> (u + T w, w). Its characters are labeled by symmetric matrices S,
and the character projectors P_S split the standard module into A_1-invariant
pieces W(S). Each piece is compared spectrally against the operator

    eps q^(d/2) K - I + q^(d/2) Y

on the subspace lattice L_(d - rank S)(q).

For odd q the pairing is psi(tr(S T)) and the type of S comes from a
congruence diagonalization. In characteristic 2 the label S is read as the
quadratic form Q_S(x) = sum_{i<=j} S_ij x_i x_j, the pairing is
sum_{i<=j} S_ij T_ij, and rank and type are those of the quadratic form.
"""
import cmath
import itertools
import logging
from collections import Counter
from dataclasses import dataclass, field as dataclass_field

import numpy as np
from sympy import multiplicity

from .conf import setting
from .dualpolar import IsotropicVertex, lagrangian_count
from .errors import LimitExceeded, NotSymplectic
from .exact import RATIONALS
from .fields import abs_trace, is_square
from .lattice import build_lattice, build_RLKE, build_Y
from .linalg import _rref_rows, all_vectors, rank, subspace_count
from .matrices import Operator
from .reports import bool_check, float_check, skip

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class SymMatFq:
    entries: tuple
    field: object = dataclass_field(compare=False, repr=False, hash=False)

    @property
    def d(self):
        return len(self.entries)

    @property
    def rank(self):
        return sym_rank(self)

    @property
    def eps(self):
        return type_eps(self)

    def upper(self):
        return tuple(self.entries[i][j] for i in range(self.d) for j in range(i, self.d))

    def label(self):
        return "[" + ";".join(",".join(str(x) for x in row) for row in self.entries) + "]"

    def __str__(self):
        return self.label()


def sym_from_upper(d, values, F):
    entries = [[0] * d for _ in range(d)]
    for (i, j), value in zip(((i, j) for i in range(d) for j in range(i, d)), values):
        entries[i][j] = entries[j][i] = int(value)
    return SymMatFq(tuple(tuple(row) for row in entries), F)


def enumerate_sym_matrices(d, F, limit=None):
    limit = setting('SYM_LIMIT', limit)
    width = d * (d + 1) // 2
    total = F.q ** width
    if total > limit:
        raise LimitExceeded(f"symmetric {d}x{d} matrices over F_{F.q}", total, limit)
    return [sym_from_upper(d, values, F) for values in itertools.product(range(F.q), repeat=width)]


def sym_add(S, T):
    add = S.field.add_list
    return SymMatFq(tuple(tuple(add[a][b] for a, b in zip(r, s)) for r, s in zip(S.entries, T.entries)), S.field)


def congruence_diagonal(entries, F):
    """Nonzero diagonal of a matrix congruent to the symmetric ``entries`` (odd q)."""
    add, mul, neg, inv = F.add_list, F.mul_list, F.neg_list, F.inv_list
    A = [list(row) for row in entries]
    n = len(A)
    diagonal = []
    for k in range(n):
        pivot = next((i for i in range(k, n) if A[i][i]), None)
        if pivot is None:
            pair = next(((i, j) for i in range(k, n) for j in range(i + 1, n) if A[i][j]), None)
            if pair is None:
                break
            i, j = pair
            # x_i -> x_i + x_j makes the diagonal entry 2 A_ij
            A[i] = [add[a][b] for a, b in zip(A[i], A[j])]
            for r in range(n):
                A[r][i] = add[A[r][i]][A[r][j]]
            pivot = i
        A[k], A[pivot] = A[pivot], A[k]
        for r in range(n):
            A[r][k], A[r][pivot] = A[r][pivot], A[r][k]
        a = A[k][k]
        for i in range(k + 1, n):
            if A[i][k]:
                f = mul[A[i][k]][inv[a]]
                A[i] = [add[x][neg[mul[f][y]]] for x, y in zip(A[i], A[k])]
                for r in range(n):
                    A[r][i] = add[A[r][i]][neg[mul[f][A[r][k]]]]
        diagonal.append(a)
    return diagonal


def quadratic_value(S, x):
    """Q_S(x) = sum_{i<=j} S_ij x_i x_j."""
    F = S.field
    add, mul = F.add_list, F.mul_list
    total = 0
    for i in range(S.d):
        for j in range(i, S.d):
            if S.entries[i][j]:
                total = add[total][mul[S.entries[i][j]][mul[x[i]][x[j]]]]
    return total


def _quadratic_zero_count(S):
    return sum(1 for x in all_vectors(S.d, S.field) if quadratic_value(S, x) == 0)


def _quadratic_radical_dim(S):
    """dim {v in ker(polar form) : Q_S(v) = 0} in characteristic 2."""
    F, d = S.field, S.d
    polar = [[S.entries[i][j] if i != j else 0 for j in range(d)] for i in range(d)]
    mul, add = F.mul_list, F.add_list
    radical = 0
    for x in all_vectors(d, F):
        in_kernel = True
        for row in polar:
            total = 0
            for a, b in zip(row, x):
                total = add[total][mul[a][int(b)]]
            if total:
                in_kernel = False
                break
        if in_kernel and quadratic_value(S, x) == 0:
            radical += 1
    return multiplicity(F.q, radical)


def sym_rank(S):
    if S.field.p == 2:
        return S.d - _quadratic_radical_dim(S)
    return rank(S.entries, S.field)


def type_eps(S):
    """0 for odd rank; for even rank +1 or -1 by the square class of
    (-1)^(rank/2) det (odd q) or by the zero count of Q_S (characteristic 2)."""
    F = S.field
    r = sym_rank(S)
    if r == 0:
        return 1
    if r % 2:
        return 0
    if F.p == 2:
        q = F.q
        excess = _quadratic_zero_count(S) // q ** (S.d - r) - q ** (r - 1)
        return 1 if excess > 0 else -1
    determinant = 1
    for a in congruence_diagonal(S.entries, F):
        determinant = F.mul_list[determinant][a]
    value = determinant if (r // 2) % 2 == 0 else F.neg_list[determinant]
    return 1 if is_square(value, F) else -1


def pairing(S, T):
    """tr(S T) for odd q; sum_{i<=j} S_ij T_ij in characteristic 2."""
    F = S.field
    add, mul = F.add_list, F.mul_list
    total = 0
    if F.p == 2:
        for a, b in zip(S.upper(), T.upper()):
            total = add[total][mul[a][b]]
        return total
    for i in range(S.d):
        for j in range(S.d):
            total = add[total][mul[S.entries[i][j]][T.entries[j][i]]]
    return total


def character(S, T):
    """psi(<S, T>) with psi(a) = exp(2 pi i abs_trace(a) / p)."""
    F = S.field
    return cmath.exp(2j * cmath.pi * abs_trace(pairing(S, T), F) / F.p)


def unipotent_action(T, v):
    """(u, w) -> (u + T w, w) applied to the rows of v, re-canonicalized."""
    if any(T.entries[i][j] != T.entries[j][i] for i in range(T.d) for j in range(T.d)):
        raise NotSymplectic("T must be symmetric")
    F, d = T.field, T.d
    add, mul = F.add_list, F.mul_list
    rows = []
    for row in v.rows:
        u, w = list(row[:d]), row[d:]
        for i in range(d):
            for j in range(d):
                u[i] = add[u[i]][mul[T.entries[i][j]][w[j]]]
        rows.append(u + list(w))
    reduced, _ = _rref_rows(rows, F)
    return IsotropicVertex(tuple(tuple(int(x) for x in row) for row in reduced))


def action_images(T, G):
    """images[a] = index of T . vertex a."""
    index = {v: a for a, v in enumerate(G.vertices)}
    return np.array([index[unipotent_action(T, v)] for v in G.vertices], dtype=np.int64)


@dataclass
class ComplexOperator:
    matrix: np.ndarray
    labels: tuple

    def __matmul__(self, other):
        return ComplexOperator(self.matrix @ other.matrix, self.labels)

    def residual(self, other):
        return float(np.max(np.abs(self.matrix - other.matrix))) if self.matrix.size else 0.0

    def rank(self):
        """Rank of a projector, read off its trace."""
        return int(round(np.trace(self.matrix).real))


def character_projector(S, G, actions=None, sym=None):
    """P_S = q^(-d(d+1)/2) sum_T conj(psi(<S, T>)) rho(T)."""
    sym = sym or enumerate_sym_matrices(G.d, G.space.field)
    actions = actions if actions is not None else [action_images(T, G) for T in sym]
    size = G.size
    matrix = np.zeros((size, size), dtype=np.complex128)
    columns = np.arange(size)
    for T, images in zip(sym, actions):
        np.add.at(matrix, (images, columns), np.conj(character(S, T)))
    return ComplexOperator(matrix / len(sym), G.labels)


def exact_projector(S, G, actions, sym):
    """P_S over Q when every character value is +-1 (characteristic 2)."""
    size = G.size
    numerators = np.zeros((size, size), dtype=np.int64)
    columns = np.arange(size)
    for T, images in zip(sym, actions):
        sign = -1 if abs_trace(pairing(S, T), S.field) else 1
        np.add.at(numerators, (images, columns), sign)
    return Operator.from_int(RATIONALS, numerators, G.labels, G.labels, den=len(sym))


def comparison_operator(eps, d, q, lattice, ops=None):
    """eps q^(d/2) K - I + q^(d/2) Y on the lattice, in floating point."""
    ops = ops or build_RLKE(lattice)
    scale = q ** (d / 2)
    size = len(lattice.vertices)
    return eps * scale * ops.K.to_float() - np.eye(size) + scale * build_Y(lattice, ops).to_float()


def restricted_spectrum(projector, A1):
    """Eigenvalues of A_1 on the range of a Hermitian projector."""
    values, vectors = np.linalg.eigh(projector.matrix)
    basis = vectors[:, values > 0.5]
    if not basis.shape[1]:
        return np.zeros(0)
    return np.sort(np.linalg.eigvalsh(basis.conj().T @ A1 @ basis))


def _spectrum_text(values):
    return [f"{round(float(x), 6) + 0.0:.6f}" for x in values]


def _rws(S, G, lattice, projector, tol):
    q, d = G.q, G.d
    r, eps = S.rank, S.eps
    A1 = G.matrices[1].to_float()
    observed = restricted_spectrum(projector, A1)
    expected = np.sort(np.linalg.eigvalsh(comparison_operator(eps, d, q, lattice)))
    size = len(lattice.vertices)
    name = f"spectrum of A_1 on W({S}) = spectrum of comparison operator"
    checks = [bool_check(f"rank P_{S} = |L_{d - r}({q})|", projector.rank() == size,
                         f"{projector.rank()} vs {size}")]
    if len(observed) == len(expected):
        residual = float(np.max(np.abs(observed - expected))) if len(observed) else 0.0
        checks.append(float_check(name, residual, tol))
    else:
        checks.append(bool_check(name, False, f"{len(observed)} vs {len(expected)} eigenvalues"))
    data = {
        "rank": r,
        "eps": eps,
        "projector_rank": projector.rank(),
        "observed": _spectrum_text(observed),
        "expected": _spectrum_text(expected),
    }
    return checks, data, expected


def check_rws(S, G, lattice, projector=None, tol=None):
    """Projector rank against the lattice size, and the spectrum of A_1 on
    W(S) against the comparison operator. Returns (checks, data)."""
    tol = setting('TOLERANCE', tol)
    projector = projector or character_projector(S, G)
    checks, data, _ = _rws(S, G, lattice, projector, tol)
    return checks, data


def check_composition(G, sym, actions):
    """rho(T1) rho(T2) = rho(T1 + T2) on every vertex."""
    index = {T.upper(): k for k, T in enumerate(sym)}
    for a, T1 in enumerate(sym):
        for b, T2 in enumerate(sym):
            c = index[sym_add(T1, T2).upper()]
            if not np.array_equal(actions[a][actions[b]], actions[c]):
                return bool_check("rho(T1) rho(T2) = rho(T1 + T2)", False, f"T1={T1}, T2={T2}")
    return bool_check("rho(T1) rho(T2) = rho(T1 + T2)", True)


def check_ws_decomposition(G, tol=None, vertex_limit=None, limit=None):
    """Run over every S: completeness, orthogonality, A_1-invariance and the
    per-S spectral comparison. Returns (checks, data)."""
    tol = setting('TOLERANCE', tol)
    vertex_limit = setting('WS_VERTEX_LIMIT', vertex_limit)
    F, d, q, size = G.space.field, G.d, G.q, G.size
    if size > vertex_limit:
        return [skip("W(S) decomposition", f"|X| = {size} exceeds the limit {vertex_limit}")], {}
    try:
        sym = enumerate_sym_matrices(d, F, limit)
    except LimitExceeded as e:
        logger.error(f"W(S) decomposition skipped: {str(e)}")
        return [skip("W(S) decomposition", str(e))], {}
    actions = [action_images(T, G) for T in sym]
    checks = [check_composition(G, sym, actions)]

    A1_exact = G.matrices[1]
    A1 = A1_exact.to_float()
    identity = np.eye(size)
    projectors = [character_projector(S, G, actions, sym) for S in sym]

    total = sum(P.matrix for P in projectors)
    checks.append(float_check("sum_S P_S = I", float(np.max(np.abs(total - identity))), tol))
    idempotent = max(P.residual(P @ P) for P in projectors)
    checks.append(float_check("P_S^2 = P_S", idempotent, tol))
    orthogonal = 0.0
    for a, P in enumerate(projectors):
        for R in projectors[a + 1:]:
            orthogonal = max(orthogonal, float(np.max(np.abs(P.matrix @ R.matrix))))
    checks.append(float_check("P_S P_S' = 0 for S != S'", orthogonal, tol))
    commutator = max(float(np.max(np.abs(A1 @ P.matrix - P.matrix @ A1))) for P in projectors)
    checks.append(float_check("[A_1, P_S] = 0", commutator, tol))

    if F.p == 2:
        exact = [exact_projector(S, G, actions, sym) for S in sym]
        checks.append(bool_check("P_S^2 = P_S (exact)", all(P @ P == P for P in exact)))
        checks.append(bool_check("[A_1, P_S] = 0 (exact)", all(A1_exact.commutator(P).is_zero() for P in exact)))

    ranks = sum(P.rank() for P in projectors)
    checks.append(bool_check("sum_S rank P_S = |X|", ranks == size, f"{ranks} vs {size}"))
    bookkeeping = sum(subspace_count(d - S.rank, q) for S in sym)
    checks.append(bool_check("sum_S |L_(d - rank S)(q)| = prod (1 + q^i)",
                             bookkeeping == lagrangian_count(d, q), f"{bookkeeping}"))

    lattices = {}
    per_s = {}
    expected_all = []
    failed = []
    for S, P in zip(sym, projectors):
        n = d - S.rank
        if n not in lattices:
            lattices[n] = build_lattice(n, F)
        s_checks, s_data, expected = _rws(S, G, lattices[n], P, tol)
        per_s[S.label()] = s_data
        failed.extend(c.name for c in s_checks if not c.passed)
        expected_all.extend(expected)
    checks.append(bool_check("per-S rank and spectrum match", not failed, failed[0] if failed else None))

    spectrum = np.sort(np.linalg.eigvalsh(A1))
    union = np.sort(np.array(expected_all))
    if len(union) == len(spectrum):
        checks.append(float_check("union of per-S spectra = spectrum of A_1",
                                  float(np.max(np.abs(union - spectrum))), tol))
    else:
        checks.append(bool_check("union of per-S spectra = spectrum of A_1", False,
                                 f"{len(union)} vs {len(spectrum)} eigenvalues"))

    census = Counter((S.rank, S.eps) for S in sym)
    data = {
        "census": {f"rank={r},eps={e}": count for (r, e), count in sorted(census.items())},
        "per_S": per_s,
    }
    logger.info(f"W(S) decomposition of C_{d}({q}): {dict(census)}")
    return checks, data
