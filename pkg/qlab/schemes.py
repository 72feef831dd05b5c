"""
Symmetric association schemes: axioms, intersection numbers, eigenvalues,
primitive idempotents, eigenmatrices, Krein parameters, dual adjacency
matrices and the P-/Q-polynomial tests.

The exact path assumes A_1 generates the Bose-Mesner algebra (P-polynomial
schemes): eigenvalues come from the intersection matrix B_1 and the
idempotents from Lagrange interpolation in A_1.
"""
import logging
from fractions import Fraction
from functools import cached_property

import numpy as np
from sympy.polys.domains import QQ
from sympy.polys.factortools import dup_factor_list
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .conf import setting
from .errors import AxiomViolation, InconsistentExpansion, NonRationalEigenvalue, SingularP
from .exact import RATIONALS
from .matrices import Operator
from .reports import bool_check, exact_check, skip

logger = logging.getLogger(__name__)


def _to_qq(value):
    value = Fraction(value)
    return QQ(value.numerator, value.denominator)


def _from_qq(value):
    return Fraction(int(value.numerator), int(value.denominator))


def zero_one_arrays(matrices):
    arrays = []
    for i, A in enumerate(matrices):
        if A.den != 1 or not A.is_rational():
            raise AxiomViolation("0/1 entries", (i,))
        array = np.asarray(A.parts[0], dtype=np.int64)
        if array.ndim != 2 or array.shape[0] != array.shape[1] or array.shape != np.asarray(matrices[0].parts[0]).shape:
            raise AxiomViolation("square matrices of equal size", (i,))
        bad = np.argwhere((array != 0) & (array != 1))
        if len(bad):
            r, c = (int(x) for x in bad[0])
            raise AxiomViolation("0/1 entries", (i, A.row_labels[r], A.col_labels[c]))
        arrays.append(array)
    return arrays


def _count_product(a, b):
    # 0/1 products count vertices, far below 2^53
    return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)


def verify_axioms(matrices):
    """Check A_0 = I, sum A_i = J, symmetry and closure; returns (checks, p) with
    p[i][j][k] = p_ij^k."""
    arrays = zero_one_arrays(matrices)
    labels = matrices[0].row_labels
    size = arrays[0].shape[0]

    def first(mask):
        r, c = (int(x) for x in np.argwhere(mask)[0])
        return labels[r], labels[c]

    if not np.array_equal(arrays[0], np.eye(size, dtype=np.int64)):
        raise AxiomViolation("A_0 = I", first(arrays[0] != np.eye(size, dtype=np.int64)))
    total = sum(arrays)
    if not np.all(total == 1):
        raise AxiomViolation("sum A_i = J", first(total != 1))
    for i, a in enumerate(arrays):
        if not np.array_equal(a, a.T):
            raise AxiomViolation("symmetry", (i,) + first(a != a.T))

    count = len(arrays)
    p = [[[0] * count for _ in range(count)] for _ in range(count)]
    for i in range(count):
        for j in range(i, count):
            product = _count_product(arrays[i], arrays[j])
            for k in range(count):
                values = product[arrays[k] == 1]
                if len(values) and np.any(values != values[0]):
                    where = (product != values[0]) & (arrays[k] == 1)
                    raise AxiomViolation("closure", (i, j, k) + first(where))
                p[i][j][k] = p[j][i][k] = int(values[0]) if len(values) else 0
    checks = [
        bool_check("A_0 = I", True),
        bool_check("sum A_i = J", True),
        bool_check("A_i symmetric", True),
        bool_check("A_i A_j = sum_k p_ij^k A_k", True),
    ]
    logger.info(f"Scheme axioms hold on {size} vertices with {count - 1} classes")
    return checks, p


def rational_roots(matrix):
    """Distinct eigenvalues of a square rational matrix (lists of Fractions),
    descending; every irreducible factor of the characteristic polynomial
    must be linear."""
    size = len(matrix)
    dm = DomainMatrix([[_to_qq(x) for x in row] for row in matrix], (size, size), QQ)
    charpoly = dm.charpoly()
    _, factors = dup_factor_list(charpoly, QQ)
    roots = []
    for base, _ in factors:
        if len(base) != 2:
            raise NonRationalEigenvalue(f"irreducible factor of degree {len(base) - 1} in the characteristic polynomial")
        roots.append(_from_qq(-base[1] / base[0]))
    return sorted(set(roots), reverse=True)


class SchemeData:
    """A symmetric association scheme given by its 0/1 matrices A_0..A_N."""

    def __init__(self, matrices, name="scheme"):
        self.matrices = list(matrices)
        self.name = name

    @property
    def N(self):
        return len(self.matrices) - 1

    @property
    def size(self):
        return self.matrices[0].shape[0]

    @property
    def labels(self):
        return self.matrices[0].row_labels

    @cached_property
    def axioms(self):
        return verify_axioms(self.matrices)

    @property
    def p(self):
        return self.axioms[1]

    @cached_property
    def eigenvalues(self):
        return eigenvalues_of_A1(self)

    @cached_property
    def idempotents(self):
        return idempotents(self)

    @cached_property
    def multiplicities(self):
        return [E.trace().as_fraction() for E in self.idempotents]

    @cached_property
    def eigenmatrices(self):
        return eigenmatrices(self)

    @cached_property
    def krein(self):
        return krein_parameters(self)

    def intersection_matrix(self):
        """(B_1)_{k,i} = p_1i^k."""
        N = self.N
        return [[self.p[1][i][k] for i in range(N + 1)] for k in range(N + 1)]


def eigenvalues_of_A1(S):
    """Distinct eigenvalues of A_1, descending, as roots of the characteristic
    polynomial of the intersection matrix B_1."""
    if S.N == 0:
        return [Fraction(0)]
    roots = rational_roots(S.intersection_matrix())
    if len(roots) != S.N + 1:
        raise NonRationalEigenvalue(
            f"A_1 has {len(roots)} distinct eigenvalues, {S.N + 1} needed: A_1 does not generate the scheme"
        )
    return roots


def idempotents(S):
    """E_j = prod_{l != j} (A_1 - theta_l I)/(theta_j - theta_l); E_0 belongs to the valency."""
    thetas = S.eigenvalues
    A1 = S.matrices[1] if S.N else S.matrices[0]
    identity = Operator.identity(RATIONALS, S.size, S.labels)
    shifted = [A1 - identity.scale(theta) for theta in thetas]
    result = []
    for j, theta in enumerate(thetas):
        E = identity
        denominator = Fraction(1)
        for l, other in enumerate(thetas):
            if l != j:
                E = E @ shifted[l]
                denominator *= theta - other
        result.append(E.scale(1 / denominator))
    logger.info(f"Idempotents of {S.name}: multiplicities {[str(E.trace().as_fraction()) for E in result]}")
    return result


def eigenmatrices(S):
    """(P, Q) with A_i = sum_j P[j][i] E_j and E_j = |X|^-1 sum_i Q[i][j] A_i."""
    N, size = S.N, S.size
    arrays = zero_one_arrays(S.matrices)
    P = []
    for E in S.idempotents:
        column = [Fraction(int(x), E.den) for x in E.parts[0][:, 0]]
        diagonal = column[0]
        row = []
        for a in arrays:
            value = sum((column[y] for y in np.nonzero(a[0])[0]), Fraction(0))
            row.append(value / diagonal)
        P.append(row)
    dm = DomainMatrix([[_to_qq(x) for x in row] for row in P], (N + 1, N + 1), QQ)
    try:
        inverse = dm.inv()
    except DMNonInvertibleMatrixError as e:
        logger.error(f"Inverting P for {S.name} failed: {str(e)}")
        raise SingularP(f"P of {S.name} is singular") from e
    Q = [[_from_qq(x) * size for x in row] for row in inverse.to_list()]
    return P, Q


def krein_parameters(S):
    """q[i][j][k] from E_i o E_j = |X|^-1 sum_k q_ij^k E_k; the expansion is verified."""
    E, m, size, N = S.idempotents, S.multiplicities, S.size, S.N
    q = [[[Fraction(0)] * (N + 1) for _ in range(N + 1)] for _ in range(N + 1)]
    for i in range(N + 1):
        for j in range(i, N + 1):
            product = E[i].hadamard(E[j])
            expansion = Operator.zeros(RATIONALS, size, size, S.labels, S.labels)
            for k in range(N + 1):
                value = product.hadamard(E[k]).entry_sum().as_fraction() * size / m[k]
                q[i][j][k] = q[j][i][k] = value
                if value:
                    expansion = expansion + E[k].scale(value / size)
            if product != expansion:
                raise InconsistentExpansion(f"E_{i} o E_{j} is not spanned by the idempotents")
    return q


def dual_adjacency(S, x0=0):
    """A_i* = diag(|X| (E_i)_{x, x0}); returns (matrices, checks of the dual
    Bose-Mesner relations)."""
    size, N = S.size, S.N
    dual = []
    for E in S.idempotents:
        column = [Fraction(int(x), E.den) * size for x in E.parts[0][:, x0]]
        dual.append(Operator.diagonal(RATIONALS, column, S.labels))
    checks = [exact_check("A_0* = I", dual[0], Operator.identity(RATIONALS, size, S.labels))]
    q = S.krein
    for i in range(N + 1):
        for j in range(i, N + 1):
            expansion = Operator.zeros(RATIONALS, size, size, S.labels, S.labels)
            for k in range(N + 1):
                if q[i][j][k]:
                    expansion = expansion + dual[k].scale(q[i][j][k])
            checks.append(exact_check(f"A_{i}* A_{j}* = sum_k q_{i}{j}^k A_k*", dual[i].hadamard(dual[j]), expansion))
    return dual, checks


def check_idempotents(S):
    E, A, size, N = S.idempotents, S.matrices, S.size, S.N
    identity = Operator.identity(RATIONALS, size, S.labels)
    zero = Operator.zeros(RATIONALS, size, size, S.labels, S.labels)
    P, Q = S.eigenmatrices
    symmetric = all(Ej == Ej.T for Ej in E)
    orthogonal = True
    witness = None
    for i in range(N + 1):
        for j in range(i, N + 1):
            if E[i] @ E[j] != (E[i] if i == j else zero):
                orthogonal = False
                witness = witness or f"E_{i} E_{j}"
    total = zero
    for Ej in E:
        total = total + Ej
    checks = [
        bool_check("E_j symmetric", symmetric),
        bool_check("E_i E_j = delta_ij E_i", orthogonal, witness),
        exact_check("sum E_j = I", total, identity),
    ]
    for i in range(N + 1):
        rebuilt = zero
        for j in range(N + 1):
            rebuilt = rebuilt + E[j].scale(P[j][i])
        checks.append(exact_check(f"A_{i} = sum_j p_{i}(j) E_j", A[i], rebuilt))
    for j in range(N + 1):
        rebuilt = zero
        for i in range(N + 1):
            rebuilt = rebuilt + A[i].scale(Q[i][j] / size)
        checks.append(exact_check(f"E_{j} = |X|^-1 sum_i q_{j}(i) A_i", E[j], rebuilt))
    product_ok = all(
        sum((P[r][k] * Q[k][c] for k in range(N + 1)), Fraction(0)) == (size if r == c else 0)
        for r in range(N + 1) for c in range(N + 1)
    )
    checks.append(bool_check("P Q = |X| I", product_ok))
    checks.append(bool_check("Q[i][0] = 1 and Q[0][j] = m_j",
                             all(Q[i][0] == 1 for i in range(N + 1))
                             and all(Q[0][j] == S.multiplicities[j] for j in range(N + 1))))
    return checks


def check_krein_nonnegative(S):
    q = S.krein
    negative = [(i, j, k) for i, plane in enumerate(q) for j, row in enumerate(plane)
                for k, value in enumerate(row) if value < 0]
    return [bool_check("q_ij^k >= 0", not negative, str(negative[0]) if negative else None)]


def _tridiagonal_witness(table, N):
    """First (i, k) with table[1][i][k] != 0 and |i - k| > 1, or an unclosed step."""
    for i in range(N + 1):
        for k in range(N + 1):
            if abs(i - k) > 1 and table[1][i][k]:
                return f"({i}, {k}) nonzero"
    for i in range(N):
        if not table[1][i + 1][i]:
            return f"({i + 1}, {i}) vanishes"
    return None


def _reorder_krein(q, order):
    return [[[q[order[i]][order[j]][order[k]] for k in range(len(order))]
             for j in range(len(order))] for i in range(len(order))]


def q_polynomial_order(S):
    """The idempotent ordering that makes q_1i^k tridiagonal: natural, then
    reversal of E_1..E_N; None if neither works."""
    N = S.N
    candidates = [("natural", list(range(N + 1))), ("reversed", [0] + list(range(N, 0, -1)))]
    for name, order in candidates:
        if _tridiagonal_witness(_reorder_krein(S.krein, order), N) is None:
            return name, order
    return None


def check_P_and_Q_polynomial(S):
    N = S.N
    p_witness = _tridiagonal_witness(S.p, N)
    checks = [bool_check("P-polynomial: p_1i^k tridiagonal and closed", p_witness is None, p_witness)]
    try:
        found = q_polynomial_order(S)
    except NonRationalEigenvalue as e:
        checks.append(bool_check("Q-polynomial: q_1i^k tridiagonal", False, str(e)))
        return checks
    if found is None:
        checks.append(bool_check("Q-polynomial: q_1i^k tridiagonal", False, "natural and reversed orders fail"))
    else:
        checks.append(bool_check(f"Q-polynomial: q_1i^k tridiagonal ({found[0]} order)", True))
    return checks


def _orthonormal_add(basis, vector, tol):
    norm = np.linalg.norm(vector)
    if norm == 0:
        return False
    residual = vector
    for _ in range(2):
        if basis:
            B = np.array(basis)
            residual = residual - B.T @ (B @ residual)
    if np.linalg.norm(residual) <= tol * norm:
        return False
    basis.append(residual / np.linalg.norm(residual))
    return True


def check_terwilliger_dimension(S, x0=0, limit=None, tol=1e-9):
    """Dimension of the algebra generated by A_1 and A_1* against the span of
    the monomials A_i A_j* A_k: the monomials must lie inside the algebra."""
    limit = setting('TERWILLIGER_LIMIT', limit)
    name = "span{A_i A_j* A_k} inside <A_1, A_1*>"
    if S.size > limit:
        return [skip(name, f"|X| = {S.size} exceeds the limit {limit}")], {}
    found = q_polynomial_order(S)
    order = found[1] if found else list(range(S.N + 1))
    dual, _ = dual_adjacency(S, x0)
    dual = [dual[k] for k in order]
    A = [M.to_float() for M in S.matrices]
    A_star = [M.to_float() for M in dual]
    generators = [A[1], A_star[1]] if S.N else [A[0]]

    basis = []
    frontier = [np.eye(S.size)]
    _orthonormal_add(basis, frontier[0].ravel(), tol)
    while frontier:
        grown = []
        for M in frontier:
            for G in generators:
                word = M @ G
                if _orthonormal_add(basis, word.ravel(), tol):
                    grown.append(word)
        frontier = grown
    algebra = len(basis)

    monomials = []
    inside = True
    span_basis = list(basis)
    for Ai in A:
        for Aj in A_star:
            for Ak in A:
                word = (Ai @ Aj @ Ak).ravel()
                _orthonormal_add(monomials, word, tol)
                if _orthonormal_add(span_basis, word, tol):
                    inside = False
    data = {"algebra_dimension": algebra, "monomial_span": len(monomials)}
    logger.info(f"Terwilliger count for {S.name}: {data}")
    return [bool_check(name, inside and len(monomials) <= algebra,
                       f"dim algebra {algebra}, dim monomials {len(monomials)}")], data


def spectrum_check(name, S, expected):
    """Eigenvalue multiset of A_1 against {value: multiplicity}."""
    observed = {str(theta): str(m) for theta, m in zip(S.eigenvalues, S.multiplicities)}
    wanted = {str(Fraction(k)): str(v) for k, v in expected.items()}
    return bool_check(name, observed == wanted, str(observed))


def scheme_summary(S):
    P, Q = S.eigenmatrices
    return {
        "classes": S.N,
        "vertices": S.size,
        "p": S.p,
        "eigenvalues": [str(t) for t in S.eigenvalues],
        "multiplicities": [str(m) for m in S.multiplicities],
        "P": [[str(x) for x in row] for row in P],
        "Q": [[str(x) for x in row] for row in Q],
        "krein": [[[str(x) for x in row] for row in plane] for plane in S.krein],
    }
