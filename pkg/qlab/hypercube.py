"""
The weighted cube A_q, its tensor-product form and the binary Hamming scheme.

Vertices are bit strings in lexicographic order with x_1 the most significant
coordinate. The deformation base is always an integer prime power q with a
quarter-integer exponent scale t, so A_q (t = 1) and A_{1/sqrt(q)} (t = -1/2)
share one exact scalar ring.
"""
import itertools
import logging
from dataclasses import dataclass
from fractions import Fraction
from math import comb, factorial

import numpy as np

from .conf import setting
from .errors import LimitExceeded, OutOfRange, UnsupportedScale
from .exact import QuarterInt, RATIONALS, ring_for
from .matrices import Operator
from .reports import exact_check, skip

logger = logging.getLogger(__name__)


@dataclass(frozen=True)
class CubeContext:
    n: int
    base_q: int
    scale: QuarterInt = QuarterInt(4)

    @property
    def ring(self):
        return ring_for(self.base_q)

    @property
    def size(self):
        return 2 ** self.n

    @property
    def labels(self):
        return tuple("".join(bits) for bits in itertools.product("01", repeat=self.n))

    def vertices(self):
        return list(itertools.product((0, 1), repeat=self.n))


def cube_context(n, base_q, scale=1):
    try:
        return CubeContext(n, base_q, QuarterInt.of(scale))
    except OutOfRange as e:
        raise UnsupportedScale(f"exponent scale {scale} is not a quarter-integer") from e


def weight_exponent(x, i):
    """Exponent i - N + 2 sum_{j>i} x_j of the edge flipping position i (1-based)."""
    n = len(x)
    return i - n + 2 * sum(x[i:])


def build_Aq(ctx):
    """Entry (x, y) = (q^t)^(i - N + 2 sum_{j>i} x_j) when x, y differ only at i."""
    ring, n = ctx.ring, ctx.n
    entries = []
    for index, x in enumerate(ctx.vertices()):
        for i in range(1, n + 1):
            # flipping bit i changes the index by 2^(N-i)
            y = index ^ (1 << (n - i))
            exponent = weight_exponent(x, i)
            entries.append((index, y, ring.power(ctx.scale * exponent)))
    return Operator.from_entries(ring, (ctx.size, ctx.size), entries, ctx.labels, ctx.labels)


def _sigma(ring, kind):
    if kind == "x":
        return Operator.from_int(ring, [[0, 1], [1, 0]], "01", "01")
    if kind == "+":
        return Operator.from_int(ring, [[0, 1], [0, 0]], "01", "01")
    if kind == "-":
        return Operator.from_int(ring, [[0, 0], [1, 0]], "01", "01")
    raise ValueError(kind)


def _k_power(ring, scale, power):
    """(q^t)^(power sigma^z) = diag((q^t)^power, (q^t)^-power) as an Operator."""
    return Operator.diagonal(ring, [ring.power(scale * power), ring.power(scale * -power)], "01")


def _k_half(ring, scale, sign):
    """(q^t)^(sign sigma^z / 2); needs t even in quarters."""
    if scale.numerator % 2:
        raise UnsupportedScale(f"k^(1/2) at exponent scale {scale} leaves the quarter-power ring")
    half = QuarterInt(scale.numerator // 2)
    return Operator.diagonal(ring, [ring.power(half * sign), ring.power(half * -sign)], "01")


def _tensor_power(op, count, ring):
    result = Operator.identity(ring, 1, [""])
    for _ in range(count):
        result = result.kron(op)
    return result


def build_Aq_tensor(ctx):
    """sum_i I^(i-1) (x) sigma_x (x) (q^(-t sigma^z))^(N-i)."""
    ring, n = ctx.ring, ctx.n
    sigma_x = _sigma(ring, "x")
    k_inv = _k_power(ring, ctx.scale, -1)
    identity = Operator.identity(ring, 2, "01")
    total = Operator.zeros(ring, ctx.size, ctx.size, ctx.labels, ctx.labels)
    for i in range(1, n + 1):
        term = _tensor_power(identity, i - 1, ring).kron(sigma_x).kron(_tensor_power(k_inv, n - i, ring))
        total = total + term
    return total.relabel(ctx.labels, ctx.labels)


def coproduct_generators(ctx):
    """X+, X-, K and K^(-1/2) from N-1 applications of the coproduct to the
    fundamental representation at base q^t."""
    ring, n = ctx.ring, ctx.n
    e, f = _sigma(ring, "+"), _sigma(ring, "-")
    k = _k_power(ring, ctx.scale, 1)
    k_half, k_minus_half = _k_half(ring, ctx.scale, 1), _k_half(ring, ctx.scale, -1)
    X_plus, X_minus, K, K_half, K_minus_half = e, f, k, k_half, k_minus_half
    for _ in range(n - 1):
        # (Delta^(m-1) (x) id) Delta: the new factor is appended on the right
        X_plus = X_plus.kron(k_minus_half) + K_half.kron(e)
        X_minus = X_minus.kron(k_minus_half) + K_half.kron(f)
        K = K.kron(k)
        K_half = K_half.kron(k_half)
        K_minus_half = K_minus_half.kron(k_minus_half)
    labels = ctx.labels
    return tuple(op.relabel(labels, labels) for op in (X_plus, X_minus, K, K_minus_half))


def reversal_images(n):
    """images[index(x)] = index(x reversed)."""
    return [int(format(index, f"0{n}b")[::-1], 2) if n else 0 for index in range(2 ** n)]


def reversal_operator(ctx):
    """The coordinate-reversal automorphism pi as a permutation matrix; pi^-1 = pi."""
    return Operator.permutation(ctx.ring, reversal_images(ctx.n), ctx.labels, ctx.labels)


def check_aq_forms(ctx):
    return [exact_check(f"A_q weight formula = tensor form (N={ctx.n}, t={ctx.scale})",
                        build_Aq(ctx), build_Aq_tensor(ctx))]


def check_tensor_generators(ctx):
    """U_q(su(2)) relations for the coproduct generators, the first tensor form
    of A_q and the twisted primitive coproduct of Y."""
    ring, scale = ctx.ring, ctx.scale
    X_plus, X_minus, K, K_minus_half = coproduct_generators(ctx)
    K_inv = K_minus_half @ K_minus_half
    base = ring.power(scale)
    base_inv = ring.power(-scale)
    A = build_Aq(ctx)
    checks = [
        exact_check("K X+ K^-1 = q^2 X+", K @ X_plus @ K_inv, X_plus.scale(base * base)),
        exact_check("K X- K^-1 = q^-2 X-", K @ X_minus @ K_inv, X_minus.scale(base_inv * base_inv)),
    ]
    if scale.numerator:
        checks.append(exact_check("[X+, X-] = (K - K^-1)/(q - q^-1)",
                                  X_plus.commutator(X_minus), (K - K_inv).scale((base - base_inv).inverse())))
    else:
        checks.append(skip("[X+, X-] = (K - K^-1)/(q - q^-1)", "q^t = 1 makes the bracket singular"))
    # coproduct_generators already rejected odd quarter scales
    sqrt_base = ring.power(QuarterInt(scale.numerator // 2))
    expansion = (X_minus.scale(sqrt_base) + X_plus.scale(sqrt_base.inverse())) @ K_minus_half
    checks.append(exact_check("A_q = (sqrt(q) X- + X+/sqrt(q)) K^(-1/2)", A, expansion))
    if ctx.n >= 2:
        smaller = build_Aq(CubeContext(ctx.n - 1, ctx.base_q, scale))
        identity = Operator.identity(ring, 2 ** (ctx.n - 1), smaller.row_labels)
        coproduct = smaller.kron(_k_power(ring, scale, -1)) + identity.kron(_sigma(ring, "x"))
        checks.append(exact_check("Delta(Y) = Y (x) k^-1 + I (x) Y", A, coproduct.relabel(A.row_labels, A.col_labels)))
    return checks


# -- binary Hamming scheme -----------------------------------------------------


def hamming_distance_matrices(n, limit=None):
    limit = setting('HAMMING_LIMIT', limit)
    if n < 1:
        raise OutOfRange(f"Hamming scheme H(N, 2) needs N >= 1, got N={n}")
    if n > limit:
        raise LimitExceeded(f"Hamming scheme H({n}, 2)", 2 ** n, 2 ** limit)
    labels = tuple("".join(bits) for bits in itertools.product("01", repeat=n))
    indices = np.arange(2 ** n)
    xor = indices[:, None] ^ indices[None, :]
    distance = np.zeros_like(xor)
    for bit in range(n):
        distance += (xor >> bit) & 1
    logger.info(f"Built Hamming distance matrices for N={n}")
    return [Operator.from_int(RATIONALS, (distance == i).astype(np.int64), labels, labels) for i in range(n + 1)]


def check_hamming_recurrence(n, matrices=None):
    """A_1 A_i = (i+1) A_(i+1) + (N-i+1) A_(i-1)."""
    A = matrices or hamming_distance_matrices(n)
    size = 2 ** n
    zero = Operator.zeros(RATIONALS, size, size, A[0].row_labels, A[0].col_labels)
    checks = []
    for i in range(n + 1):
        upper = A[i + 1].scale(i + 1) if i < n else zero
        lower = A[i - 1].scale(n - i + 1) if i > 0 else zero
        checks.append(exact_check(f"A_1 A_{i} = {i + 1} A_{i + 1} + {n - i + 1} A_{i - 1}", A[1] @ A[i], upper + lower))
    return checks


def _pochhammer(a, k):
    result = Fraction(1)
    for m in range(k):
        result *= a + m
    return result


def krawtchouk_coefficients(i, p, N):
    """c_k with K_i(x; p, N) = sum_k c_k (-x)_k."""
    if not 0 <= i <= N:
        raise OutOfRange(f"need 0 <= i <= N, got i={i}, N={N}")
    p = Fraction(p)
    return [_pochhammer(-i, k) / (_pochhammer(-N, k) * factorial(k)) / p ** k for k in range(i + 1)]


def krawtchouk(i, x, p, N):
    """K_i(x; p, N) = 2F1(-i, -x; -N; 1/p)."""
    total = Fraction(0)
    for k, c in enumerate(krawtchouk_coefficients(i, p, N)):
        total += c * _pochhammer(-Fraction(x), k)
    return total


def krawtchouk_matrix(i, X, p, N):
    """K_i evaluated at a matrix argument X."""
    size = X.shape[0]
    identity = Operator.identity(X.ring, size, X.row_labels)
    total = Operator.zeros(X.ring, size, size, X.row_labels, X.col_labels)
    falling = identity
    for k, c in enumerate(krawtchouk_coefficients(i, p, N)):
        if k:
            # (-X)_k = (-X)_(k-1) ((k-1) I - X)
            falling = falling @ (identity.scale(k - 1) - X)
        total = total + falling.scale(c)
    return total


def check_kp_identity(n, matrices=None):
    """A_i = binom(N, i) K_i(N/2 - A_1/2; 1/2, N)."""
    A = matrices or hamming_distance_matrices(n)
    size = 2 ** n
    identity = Operator.identity(RATIONALS, size, A[0].row_labels)
    X = identity.scale(Fraction(n, 2)) - A[1].scale(Fraction(1, 2))
    checks = []
    for i in range(n + 1):
        rhs = krawtchouk_matrix(i, X, Fraction(1, 2), n).scale(comb(n, i))
        checks.append(exact_check(f"A_{i} = binom({n},{i}) K_{i}(N/2 - A_1/2)", A[i], rhs))
    return checks
