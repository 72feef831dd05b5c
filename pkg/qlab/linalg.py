"""
Linear algebra over F_q: row reduction, the canonical upper-triangular form of
a subspace, the covering relation between canonical forms and enumeration of
all subspaces of F_q^n.

Coordinates are 0-based in code. The formula helpers ``cover_count`` and
``profile_preimage_size`` take positions counted from 1, matching the
covering formulas they implement.
"""
import itertools
import logging
from dataclasses import dataclass, field as dataclass_field

import numpy as np

from .conf import setting
from .errors import DimensionMismatch, InvalidPosition, LimitExceeded
from .exact import gaussian_binomial

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class MatFq:
    rows: int
    cols: int
    entries: tuple
    field: object = dataclass_field(compare=False, repr=False)

    @classmethod
    def from_rows(cls, rows, F):
        rows = tuple(tuple(int(x) for x in row) for row in rows)
        cols = len(rows[0]) if rows else 0
        if any(len(row) != cols for row in rows):
            raise DimensionMismatch("ragged matrix")
        if any(not 0 <= x < F.q for row in rows for x in row):
            raise DimensionMismatch(f"entry outside F_{F.q}")
        return cls(len(rows), cols, rows, F)

    def tolist(self):
        return [list(row) for row in self.entries]


def _rref_rows(rows, F):
    """Reduce a list of vectors; returns (nonzero RREF rows, pivot columns)."""
    add, mul, inv, neg = F.add_list, F.mul_list, F.inv_list, F.neg_list
    rows = [list(row) for row in rows]
    if not rows:
        return [], []
    ncols = len(rows[0])
    pivots = []
    r = 0
    for c in range(ncols):
        pivot = next((i for i in range(r, len(rows)) if rows[i][c]), None)
        if pivot is None:
            continue
        rows[r], rows[pivot] = rows[pivot], rows[r]
        scale = mul[inv[rows[r][c]]]
        rows[r] = [scale[x] for x in rows[r]]
        for i in range(len(rows)):
            if i != r and rows[i][c]:
                factor = mul[neg[rows[i][c]]]
                rows[i] = [add[x][factor[y]] for x, y in zip(rows[i], rows[r])]
        pivots.append(c)
        r += 1
        if r == len(rows):
            break
    return rows[:r], pivots


def rref(M):
    """Reduced row echelon form, zero rows moved to the bottom."""
    reduced, _ = _rref_rows(M.entries, M.field)
    zeros = [[0] * M.cols for _ in range(M.rows - len(reduced))]
    return MatFq.from_rows(reduced + zeros, M.field) if M.rows else M


def rank(vectors, F):
    return len(_rref_rows(vectors, F)[1])


def all_vectors(length, F):
    """Every vector of F_q^length in lexicographic order, as a (q^length, length) array."""
    return np.array(list(itertools.product(range(F.q), repeat=length)), dtype=np.int64).reshape(F.q ** length, length)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_q^n held as its canonical column matrix.

    ``columns[j]`` is column j of the canonical matrix: zero when
    ``profile[j] == 0``, otherwise the basis vector whose lowest nonzero entry
    is a 1 in row j.
    """
    n: int
    q: int
    profile: tuple
    columns: tuple
    field: object = dataclass_field(compare=False, repr=False, hash=False)

    @property
    def dim(self):
        return sum(self.profile)

    @property
    def tau_matrix(self):
        rows = [[self.columns[j][i] for j in range(self.n)] for i in range(self.n)]
        return MatFq.from_rows(rows, self.field) if self.n else MatFq(0, 0, (), self.field)

    def basis(self):
        return [list(self.columns[j]) for j in range(self.n) if self.profile[j]]

    def free_positions(self):
        return free_positions(self.profile)

    def free_entries(self):
        return [self.columns[j][i] for i, j in self.free_positions()]

    def label(self):
        bits = "".join(str(b) for b in self.profile)
        return f"{bits}:{','.join(str(v) for v in self.free_entries())}"

    def __str__(self):
        return self.label()


def free_positions(profile):
    """Row-major (i, j) positions a canonical matrix with this diagonal may fill."""
    n = len(profile)
    return [(i, j) for i in range(n) for j in range(i + 1, n) if not profile[i] and profile[j]]


def _subspace_from_free(profile, values, q, F):
    n = len(profile)
    columns = [[0] * n for _ in range(n)]
    for j, bit in enumerate(profile):
        if bit:
            columns[j][j] = 1
    for (i, j), value in zip(free_positions(profile), values):
        columns[j][i] = value
    return Subspace(n, q, tuple(profile), tuple(tuple(c) for c in columns), F)


def tau_canonical(vectors, n, F):
    """Canonical form of span(vectors): column echelon form with each pivot at
    the lowest nonzero entry of its column, placed on the diagonal."""
    vectors = [list(v) for v in vectors]
    if any(len(v) != n for v in vectors):
        raise DimensionMismatch(f"vectors must have length {n}")
    # row-reducing the reversed coordinates puts each pivot at the lowest entry
    reduced, pivots = _rref_rows([v[::-1] for v in vectors], F)
    columns = [[0] * n for _ in range(n)]
    profile = [0] * n
    for row, c in zip(reduced, pivots):
        position = n - 1 - c
        columns[position] = row[::-1]
        profile[position] = 1
    return Subspace(n, F.q, tuple(profile), tuple(tuple(c) for c in columns), F)


def _check_same_space(V, U):
    if V.n != U.n or V.q != U.q:
        raise DimensionMismatch(f"F_{V.q}^{V.n} vs F_{U.q}^{U.n}")


def cover_coefficients(V, U):
    """Return (k, {j: c_j}) when V covers U, else None.

    V covers U iff the diagonals differ only at k with V one and U zero,
    columns left of k agree, and each later column of U is the matching
    column of V plus a multiple c_j of column k of V.
    """
    _check_same_space(V, U)
    diff = [j for j in range(V.n) if V.profile[j] != U.profile[j]]
    if len(diff) != 1 or not V.profile[diff[0]]:
        return None
    k = diff[0]
    if any(V.columns[j] != U.columns[j] for j in range(k)):
        return None
    F = V.field
    vk = V.columns[k]
    coefficients = {}
    for j in range(k + 1, V.n):
        if not V.profile[j]:
            if any(U.columns[j]):
                return None
            continue
        # the coefficient is forced by row k, where v_j vanishes and v_k is 1
        c = U.columns[j][k]
        expected = [F.add_list[a][F.mul_list[c][b]] for a, b in zip(V.columns[j], vk)]
        if list(U.columns[j]) != expected:
            return None
        coefficients[j] = c
    return k, coefficients


def covers(V, U):
    return cover_coefficients(V, U) is not None


def covered_subspaces(V):
    """Every U covered by V, generated directly in canonical form."""
    F = V.field
    for k in range(V.n):
        if not V.profile[k]:
            continue
        tail = [j for j in range(k + 1, V.n) if V.profile[j]]
        profile = list(V.profile)
        profile[k] = 0
        vk = V.columns[k]
        for coefficients in itertools.product(range(V.q), repeat=len(tail)):
            columns = list(V.columns)
            columns[k] = (0,) * V.n
            for j, c in zip(tail, coefficients):
                columns[j] = tuple(F.add_list[a][F.mul_list[c][b]] for a, b in zip(V.columns[j], vk))
            yield Subspace(V.n, V.q, tuple(profile), tuple(columns), F)


def cover_count(x, k, q):
    """n_k(x) = q^(x_{k+1} + ... + x_N): subspaces covered by one V of diagonal x
    whose own diagonal is x with position k (counted from 1) cleared."""
    if not 1 <= k <= len(x) or x[k - 1] != 1:
        raise InvalidPosition(f"position {k} of {tuple(x)} must hold a 1")
    return q ** sum(x[k:])


def profile_preimage_size(x, q):
    """Number of subspaces whose canonical diagonal is x."""
    exponent = sum(x[i] * (1 - x[j]) for i in range(len(x)) for j in range(i))
    return q ** exponent


def subspace_count(n, q):
    return sum(gaussian_binomial(n, k, q) for k in range(n + 1))


def enumerate_subspaces(n, F, limit=None):
    """All subspaces of F_q^n, ordered by diagonal then by free entries."""
    limit = setting('SUBSPACE_LIMIT', limit)
    total = subspace_count(n, F.q)
    if total > limit:
        raise LimitExceeded(f"subspaces of F_{F.q}^{n}", total, limit)
    subspaces = []
    for profile in itertools.product((0, 1), repeat=n):
        width = len(free_positions(profile))
        for values in itertools.product(range(F.q), repeat=width):
            subspaces.append(_subspace_from_free(profile, values, F.q, F))
    logger.info(f"Enumerated {len(subspaces)} subspaces of F_{F.q}^{n}")
    return subspaces


def intersect_dim(V, U):
    """dim(V ∩ U) as the kernel dimension of the stacked bases."""
    _check_same_space(V, U)
    return V.dim + U.dim - rank(V.basis() + U.basis(), V.field)


def batched_rank(mats, F):
    """Ranks of a stack of matrices over F, eliminated in lockstep."""
    M = np.array(mats, dtype=np.int64, copy=True)
    batch, nrows, ncols = M.shape
    used = np.zeros((batch, nrows), dtype=bool)
    ranks = np.zeros(batch, dtype=np.int64)
    for col in range(ncols):
        candidates = (M[:, :, col] != 0) & ~used
        has = candidates.any(axis=1)
        if not has.any():
            continue
        b = np.nonzero(has)[0]
        p = candidates.argmax(axis=1)[b]
        used[b, p] = True
        ranks[b] += 1
        pivot_rows = F.mul[F.inv[M[b, p, col]][:, None], M[b, p, :]]
        M[b, p, :] = pivot_rows
        factor = M[b, :, col]
        factor[np.arange(len(b)), p] = 0
        update = F.mul[F.neg[factor][:, :, None], pivot_rows[:, None, :]]
        M[b] = F.add[M[b], update]
    return ranks
