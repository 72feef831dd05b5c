"""
Exact dense matrices over Q(q^{1/4}).

An Operator stores one integer array per basis power r^k of its scalar ring
and a common positive denominator:

    entry(i, j) = (parts[0][i, j] + parts[1][i, j] r + ... ) / den

After every operation the representation is reduced (gcd of all numerators
and the denominator is 1), so equality is array equality. Integer arrays stay
int64 while they fit and fall back to Python ints otherwise. Products whose
partial sums provably stay below 2^53 go through float64 BLAS, which is exact
on such integers.
"""
import json
import logging
import math
from fractions import Fraction

import numpy as np

from .errors import BaseMismatch, DimensionMismatch, IoError
from .exact import ExactScalar, ring_for

logger = logging.getLogger(__name__)

MATRIX_SCHEMA = "qlab-matrix/1"

_SAFE = 2 ** 62
_FLOAT_EXACT = 2 ** 53


def _max_abs(a):
    if a.size == 0:
        return 0
    return int(np.max(np.abs(a)))


def _fit(a):
    if a.dtype == object and _max_abs(a) < _SAFE:
        return a.astype(np.int64)
    return a


def _int_add(a, b):
    if _max_abs(a) + _max_abs(b) >= _SAFE:
        return a.astype(object) + b.astype(object)
    return a + b


def _int_scale(a, s):
    s = int(s)
    if _max_abs(a) * abs(s) >= _SAFE:
        return a.astype(object) * s
    return a * s


def _int_hadamard(a, b):
    if _max_abs(a) * _max_abs(b) >= _SAFE:
        return a.astype(object) * b.astype(object)
    return a * b


def _int_matmul(a, b):
    bound = _max_abs(a) * _max_abs(b) * a.shape[1]
    if bound < _FLOAT_EXACT:
        return np.rint(a.astype(np.float64) @ b.astype(np.float64)).astype(np.int64)
    if bound < _SAFE:
        return a.astype(np.int64) @ b.astype(np.int64)
    return a.astype(object) @ b.astype(object)


def _int_kron(a, b):
    if _max_abs(a) * _max_abs(b) >= _SAFE:
        return np.kron(a.astype(object), b.astype(object))
    return np.kron(a, b)


def _int_sum(a):
    if a.dtype != object and _max_abs(a) * max(a.size, 1) < _SAFE:
        return int(a.sum())
    return sum(int(x) for x in a.ravel().tolist())


def _stack(arrays, shape):
    arrays = [np.zeros(shape, dtype=np.int64) if a is None else a for a in arrays]
    if any(a.dtype == object for a in arrays):
        arrays = [a.astype(object) for a in arrays]
    return np.stack(arrays)


def _accumulate(ring, products, shape):
    """Sum (power, array) pairs into per-power arrays, reducing r^degree = root."""
    degree = ring.degree
    out = [None] * degree
    for power, array in products:
        while power >= degree:
            power -= degree
            array = _int_scale(array, ring.root)
        out[power] = array if out[power] is None else _int_add(out[power], array)
    return _stack(out, shape)


class Operator:
    """An exact matrix with labeled rows and columns."""

    __slots__ = ('ring', 'parts', 'den', 'row_labels', 'col_labels')

    def __init__(self, ring, parts, den=1, row_labels=None, col_labels=None):
        parts = np.asarray(parts)
        if parts.ndim != 3 or parts.shape[0] != ring.degree:
            raise DimensionMismatch(f"parts of shape {parts.shape} for {ring!r}")
        if den <= 0:
            raise DimensionMismatch("denominator must be positive")
        rows, cols = parts.shape[1:]
        self.ring = ring
        self.row_labels = tuple(row_labels) if row_labels is not None else tuple(str(i) for i in range(rows))
        self.col_labels = tuple(col_labels) if col_labels is not None else tuple(str(j) for j in range(cols))
        if len(self.row_labels) != rows or len(self.col_labels) != cols:
            raise DimensionMismatch("label count does not match the shape")
        if parts.dtype != object:
            parts = parts.astype(np.int64)
        self.parts, self.den = self._reduce(parts, int(den))

    @staticmethod
    def _reduce(parts, den):
        if parts.size == 0:
            return parts, 1
        if parts.dtype == object:
            values = np.unique(np.abs(parts)).tolist()
            content = math.gcd(*(int(v) for v in values))
        else:
            content = int(np.gcd.reduce(np.abs(parts).ravel()))
        if content == 0:
            return np.zeros(parts.shape, dtype=np.int64), 1
        g = math.gcd(content, den)
        if g > 1:
            parts = parts // g
            den //= g
        return _fit(parts), den

    # -- constructors ---------------------------------------------------

    @classmethod
    def zeros(cls, ring, rows, cols, row_labels=None, col_labels=None):
        return cls(ring, np.zeros((ring.degree, rows, cols), dtype=np.int64), 1, row_labels, col_labels)

    @classmethod
    def from_int(cls, ring, array, row_labels=None, col_labels=None, den=1):
        array = np.asarray(array)
        parts = np.zeros((ring.degree,) + array.shape, dtype=array.dtype if array.dtype == object else np.int64)
        parts[0] = array
        return cls(ring, parts, den, row_labels, col_labels)

    @classmethod
    def identity(cls, ring, n, labels=None):
        return cls.from_int(ring, np.eye(n, dtype=np.int64), labels, labels)

    @classmethod
    def from_entries(cls, ring, shape, entries, row_labels=None, col_labels=None):
        """Build from (i, j, value) triples; value is an ExactScalar, int or Fraction."""
        entries = [(i, j, v if isinstance(v, ExactScalar) else ExactScalar.rational(ring, v))
                   for i, j, v in entries]
        den = 1
        for _, _, v in entries:
            if v.ring != ring:
                raise BaseMismatch(f"entry of base {v.base_q} in a base-{ring.base_q} operator")
            for c in v.coeffs:
                den = den * c.denominator // math.gcd(den, c.denominator)
        parts = np.zeros((ring.degree,) + tuple(shape), dtype=object)
        for i, j, v in entries:
            for k, c in enumerate(v.coeffs):
                parts[k, i, j] += c.numerator * (den // c.denominator)
        return cls(ring, parts, den, row_labels, col_labels)

    @classmethod
    def diagonal(cls, ring, values, labels=None):
        values = list(values)
        return cls.from_entries(ring, (len(values), len(values)),
                                [(i, i, v) for i, v in enumerate(values)], labels, labels)

    @classmethod
    def permutation(cls, ring, images, row_labels=None, col_labels=None):
        """Matrix sending basis vector j to basis vector images[j]."""
        n = len(images)
        array = np.zeros((n, n), dtype=np.int64)
        array[np.asarray(images, dtype=np.int64), np.arange(n)] = 1
        return cls.from_int(ring, array, row_labels, col_labels)

    # -- basic properties -----------------------------------------------

    @property
    def shape(self):
        return self.parts.shape[1:]

    def over(self, ring):
        """The same rational matrix viewed over another scalar ring."""
        if not self.is_rational():
            raise BaseMismatch(f"only rational matrices move between rings, base {self.ring.base_q}")
        return Operator.from_int(ring, self.parts[0], self.row_labels, self.col_labels, den=self.den)

    def relabel(self, row_labels=None, col_labels=None):
        return Operator(self.ring, self.parts, self.den,
                        self.row_labels if row_labels is None else row_labels,
                        self.col_labels if col_labels is None else col_labels)

    def entry(self, i, j):
        return ExactScalar(self.ring, [Fraction(int(self.parts[k, i, j]), self.den) for k in range(self.ring.degree)])

    def support(self):
        return np.any(self.parts != 0, axis=0)

    def nonzeros(self):
        """Row-major (i, j, ExactScalar) triples for every nonzero entry."""
        return [(int(i), int(j), self.entry(i, j)) for i, j in np.argwhere(self.support())]

    def is_zero(self):
        return not self.support().any()

    def is_rational(self):
        return not self.parts[1:].any()

    def is_diagonal(self):
        support = self.support()
        return not np.any(support & ~np.eye(*support.shape, dtype=bool))

    def __eq__(self, other):
        if not isinstance(other, Operator):
            return NotImplemented
        return (self.ring == other.ring and self.shape == other.shape and self.den == other.den
                and bool(np.all(self.parts == other.parts)))

    __hash__ = None

    def first_difference(self, other):
        """None when equal, else the first (i, j, self - other) in row-major order."""
        diff = self - other
        support = np.argwhere(diff.support())
        if not len(support):
            return None
        i, j = (int(x) for x in support[0])
        return i, j, diff.entry(i, j)

    def to_float(self):
        r = self.ring.real_generator()
        total = np.zeros(self.shape, dtype=np.float64)
        for k in range(self.ring.degree):
            total += self.parts[k].astype(np.float64) * (r ** k)
        return total / self.den

    def __repr__(self):
        return f"Operator({self.shape[0]}x{self.shape[1]}, q={self.ring.base_q}, den={self.den})"

    # -- arithmetic -----------------------------------------------------

    def _check(self, other, same_shape=True):
        if not isinstance(other, Operator):
            raise TypeError(f"expected an Operator, got {type(other).__name__}")
        if other.ring != self.ring:
            raise BaseMismatch(f"base {self.ring.base_q} vs base {other.ring.base_q}")
        if same_shape and other.shape != self.shape:
            raise DimensionMismatch(f"{self.shape} vs {other.shape}")

    def _combine(self, other, sign):
        self._check(other)
        den = self.den * other.den // math.gcd(self.den, other.den)
        left = _int_scale(self.parts, den // self.den)
        right = _int_scale(other.parts, sign * (den // other.den))
        return Operator(self.ring, _int_add(left, right), den, self.row_labels, self.col_labels)

    def __add__(self, other):
        return self._combine(other, 1)

    def __sub__(self, other):
        return self._combine(other, -1)

    def __neg__(self):
        return Operator(self.ring, -self.parts, self.den, self.row_labels, self.col_labels)

    def scale(self, value):
        """Multiply by an ExactScalar, int or Fraction."""
        if isinstance(value, (int, Fraction)):
            value = Fraction(value)
            return Operator(self.ring, _int_scale(self.parts, value.numerator),
                            self.den * value.denominator, self.row_labels, self.col_labels)
        if value.ring != self.ring:
            raise BaseMismatch(f"base {value.base_q} scalar on a base-{self.ring.base_q} operator")
        lcm = 1
        for c in value.coeffs:
            lcm = lcm * c.denominator // math.gcd(lcm, c.denominator)
        products = []
        for k, c in enumerate(value.coeffs):
            if not c:
                continue
            m = c.numerator * (lcm // c.denominator)
            for a in range(self.ring.degree):
                products.append((a + k, _int_scale(self.parts[a], m)))
        parts = _accumulate(self.ring, products, self.shape)
        return Operator(self.ring, parts, self.den * lcm, self.row_labels, self.col_labels)

    def __mul__(self, value):
        if isinstance(value, Operator):
            return NotImplemented
        return self.scale(value)

    __rmul__ = __mul__

    def __matmul__(self, other):
        self._check(other, same_shape=False)
        if self.shape[1] != other.shape[0]:
            raise DimensionMismatch(f"cannot multiply {self.shape} by {other.shape}")
        shape = (self.shape[0], other.shape[1])
        products = []
        for a in range(self.ring.degree):
            left = self.parts[a]
            if not left.any():
                continue
            for b in range(self.ring.degree):
                right = other.parts[b]
                if right.any():
                    products.append((a + b, _int_matmul(left, right)))
        parts = _accumulate(self.ring, products, shape)
        return Operator(self.ring, parts, self.den * other.den, self.row_labels, other.col_labels)

    def hadamard(self, other):
        self._check(other)
        products = []
        for a in range(self.ring.degree):
            for b in range(self.ring.degree):
                if self.parts[a].any() and other.parts[b].any():
                    products.append((a + b, _int_hadamard(self.parts[a], other.parts[b])))
        parts = _accumulate(self.ring, products, self.shape)
        return Operator(self.ring, parts, self.den * other.den, self.row_labels, self.col_labels)

    def kron(self, other):
        self._check(other, same_shape=False)
        shape = (self.shape[0] * other.shape[0], self.shape[1] * other.shape[1])
        products = []
        for a in range(self.ring.degree):
            for b in range(self.ring.degree):
                if self.parts[a].any() and other.parts[b].any():
                    products.append((a + b, _int_kron(self.parts[a], other.parts[b])))
        parts = _accumulate(self.ring, products, shape)
        rows = [f"{x}{y}" for x in self.row_labels for y in other.row_labels]
        cols = [f"{x}{y}" for x in self.col_labels for y in other.col_labels]
        return Operator(self.ring, parts, self.den * other.den, rows, cols)

    @property
    def T(self):
        return Operator(self.ring, self.parts.transpose(0, 2, 1), self.den, self.col_labels, self.row_labels)

    def trace(self):
        return ExactScalar(self.ring, [
            Fraction(_int_sum(np.diagonal(self.parts[k]).copy()), self.den) for k in range(self.ring.degree)
        ])

    def entry_sum(self):
        return ExactScalar(self.ring, [
            Fraction(_int_sum(self.parts[k]), self.den) for k in range(self.ring.degree)
        ])

    def commutator(self, other):
        return self @ other - other @ self

    def __pow__(self, k):
        if not isinstance(k, int) or k < 0:
            return NotImplemented
        result = Operator.identity(self.ring, self.shape[0], self.row_labels)
        for _ in range(k):
            result = result @ self
        return result


def polynomial(X, coefficients):
    """Evaluate sum_k coefficients[k] X^k by Horner's rule."""
    n = X.shape[0]
    result = Operator.zeros(X.ring, n, n, X.row_labels, X.col_labels)
    identity = Operator.identity(X.ring, n, X.row_labels)
    for c in reversed(list(coefficients)):
        result = result @ X + identity.scale(c) if c else result @ X
    return result


# -- JSON matrix format -------------------------------------------------------


def matrix_to_dict(op):
    return {
        "schema": MATRIX_SCHEMA,
        "base_q": op.ring.base_q,
        "shape": list(op.shape),
        "row_labels": list(op.row_labels),
        "col_labels": list(op.col_labels),
        "entries": [[i, j, v.serialize()] for i, j, v in op.nonzeros()],
    }


def matrix_from_dict(data):
    if data.get("schema") != MATRIX_SCHEMA:
        raise IoError(f"unsupported matrix schema {data.get('schema')!r}")
    ring = ring_for(int(data["base_q"]))
    entries = [(int(i), int(j), ExactScalar.parse(ring.base_q, text)) for i, j, text in data["entries"]]
    return Operator.from_entries(ring, tuple(data["shape"]), entries, data["row_labels"], data["col_labels"])


def export_matrix(op, path):
    try:
        with open(path, "w", encoding="utf-8") as handle:
            json.dump(matrix_to_dict(op), handle, sort_keys=True, indent=1)
            handle.write("\n")
    except OSError as e:
        logger.error(f"Matrix export to {path} failed: {str(e)}")
        raise IoError(str(e)) from e
    logger.info(f"Exported {op.shape[0]}x{op.shape[1]} matrix to {path}")


def import_matrix(path):
    try:
        with open(path, encoding="utf-8") as handle:
            data = json.load(handle)
    except (OSError, ValueError) as e:
        logger.error(f"Matrix import from {path} failed: {str(e)}")
        raise IoError(str(e)) from e
    return matrix_from_dict(data)
