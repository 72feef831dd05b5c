"""
Exact arithmetic in Q(q^{1/4}) for a fixed integer q >= 2, plus the
q-combinatorics helpers used throughout the library.

Elements are stored over a reduced basis {1, r, ..., r^(D-1)} with r = q^{1/4}
and r^D = w an integer:

    q = w^4        ->  D = 1 (every quarter power is rational)
    q = w^2        ->  D = 2, r = sqrt(w)
    otherwise      ->  D = 4, r^4 = q

For every q in the third case x^4 - q is irreducible over Q, so the quotient is
a field and inversion never meets a zero divisor.
"""
import logging
import math
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from sympy import integer_nthroot
from sympy.polys.domains import QQ
from sympy.polys.matrices import DomainMatrix
from sympy.polys.matrices.exceptions import DMNonInvertibleMatrixError

from .errors import (
    BaseMismatch, DivisionByZero, InvalidBase, NonInvertible, OutOfRange,
)

logger = logging.getLogger(__name__)


@dataclass(frozen=True, order=True)
class QuarterInt:
    """An exponent ``numerator / 4``."""
    numerator: int

    @classmethod
    def of(cls, value):
        if isinstance(value, QuarterInt):
            return value
        scaled = Fraction(value) * 4
        if scaled.denominator != 1:
            raise OutOfRange(f"{value} is not a multiple of 1/4")
        return cls(int(scaled))

    def __add__(self, other):
        return QuarterInt(self.numerator + QuarterInt.of(other).numerator)

    __radd__ = __add__

    def __sub__(self, other):
        return QuarterInt(self.numerator - QuarterInt.of(other).numerator)

    def __neg__(self):
        return QuarterInt(-self.numerator)

    def __mul__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        return QuarterInt(self.numerator * k)

    __rmul__ = __mul__

    def as_fraction(self):
        return Fraction(self.numerator, 4)

    def __str__(self):
        return str(self.as_fraction())


class ScalarRing:
    """Q[r]/(r^degree - root) with r = base_q^{1/4}; base_q == 1 is plain Q."""

    __slots__ = ('base_q', 'degree', 'root')

    def __init__(self, base_q):
        if base_q == 1:
            self.base_q, self.degree, self.root = 1, 1, 1
            return
        if not isinstance(base_q, int) or base_q < 2:
            raise InvalidBase(f"base must be an integer >= 2, got {base_q!r}")
        w4, exact4 = integer_nthroot(base_q, 4)
        w2, exact2 = integer_nthroot(base_q, 2)
        self.base_q = base_q
        if exact4:
            self.degree, self.root = 1, int(w4)
        elif exact2:
            self.degree, self.root = 2, int(w2)
        else:
            self.degree, self.root = 4, base_q

    def __eq__(self, other):
        return isinstance(other, ScalarRing) and other.base_q == self.base_q

    def __hash__(self):
        return hash(('ScalarRing', self.base_q))

    def __repr__(self):
        return f"ScalarRing(q={self.base_q}, degree={self.degree})"

    def split(self, quarters):
        """Write q^{quarters/4} = root^m * r^e with 0 <= e < degree."""
        if self.base_q == 1:
            return 0, 0
        m, e = divmod(quarters, self.degree)
        return m, e

    def power(self, exponent):
        """The monomial q^exponent for a quarter-integer exponent."""
        m, e = self.split(QuarterInt.of(exponent).numerator)
        value = Fraction(self.root) ** m
        coeffs = [Fraction(0)] * self.degree
        coeffs[e] = value
        return ExactScalar(self, coeffs)

    def real_generator(self):
        return float(self.root) ** (1.0 / self.degree)


@lru_cache(maxsize=None)
def ring_for(base_q):
    return ScalarRing(base_q)


RATIONALS = ScalarRing(1)


def _mul_coeffs(ring, a, b):
    degree = ring.degree
    out = [Fraction(0)] * degree
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            if not y:
                continue
            k = i + j
            if k >= degree:
                out[k - degree] += x * y * ring.root
            else:
                out[k] += x * y
    return out


class ExactScalar:
    """An immutable element of Q(q^{1/4})."""

    __slots__ = ('ring', 'coeffs')

    def __init__(self, ring, coeffs):
        coeffs = [Fraction(c) for c in coeffs]
        if len(coeffs) > ring.degree:
            raise OutOfRange(f"{len(coeffs)} coefficients for a degree-{ring.degree} ring")
        coeffs += [Fraction(0)] * (ring.degree - len(coeffs))
        object.__setattr__(self, 'ring', ring)
        object.__setattr__(self, 'coeffs', tuple(coeffs))

    def __setattr__(self, name, value):
        raise AttributeError("ExactScalar is immutable")

    @property
    def base_q(self):
        return self.ring.base_q

    @classmethod
    def rational(cls, ring, value):
        return cls(ring, [Fraction(value)])

    def _coerce(self, other):
        if isinstance(other, ExactScalar):
            if other.ring != self.ring:
                raise BaseMismatch(f"base {self.ring.base_q} vs base {other.ring.base_q}")
            return other
        if isinstance(other, (int, Fraction)):
            return ExactScalar.rational(self.ring, other)
        return None

    # -- arithmetic -----------------------------------------------------

    def __add__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ExactScalar(self.ring, [a + b for a, b in zip(self.coeffs, other.coeffs)])

    __radd__ = __add__

    def __neg__(self):
        return ExactScalar(self.ring, [-a for a in self.coeffs])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ExactScalar(self.ring, [a - b for a, b in zip(self.coeffs, other.coeffs)])

    def __rsub__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other - self

    def __mul__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return ExactScalar(self.ring, _mul_coeffs(self.ring, self.coeffs, other.coeffs))

    __rmul__ = __mul__

    def multiplication_matrix(self):
        """Columns are the coefficient vectors of self * r^j."""
        degree = self.ring.degree
        columns = []
        for j in range(degree):
            unit = [Fraction(0)] * degree
            unit[j] = Fraction(1)
            columns.append(_mul_coeffs(self.ring, self.coeffs, unit))
        return [[columns[j][i] for j in range(degree)] for i in range(degree)]

    def inverse(self):
        if not self:
            raise DivisionByZero("inverse of zero")
        if self.is_rational():
            return ExactScalar.rational(self.ring, 1 / self.coeffs[0])
        degree = self.ring.degree
        matrix = DomainMatrix(
            [[QQ(c.numerator, c.denominator) for c in row] for row in self.multiplication_matrix()],
            (degree, degree), QQ,
        )
        rhs = DomainMatrix([[QQ(1)]] + [[QQ(0)] for _ in range(degree - 1)], (degree, 1), QQ)
        try:
            solution = matrix.lu_solve(rhs)
        except DMNonInvertibleMatrixError as e:
            logger.error(f"Inversion failed: {str(e)}")
            raise NonInvertible(f"{self} is a zero divisor in {self.ring!r}") from e
        return ExactScalar(self.ring, [
            Fraction(int(row[0].numerator), int(row[0].denominator))
            for row in solution.to_list()
        ])

    def __truediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return self * other.inverse()

    def __rtruediv__(self, other):
        other = self._coerce(other)
        if other is None:
            return NotImplemented
        return other * self.inverse()

    def __pow__(self, k):
        if not isinstance(k, int):
            return NotImplemented
        base = self if k >= 0 else self.inverse()
        result = ExactScalar.rational(self.ring, 1)
        for _ in range(abs(k)):
            result = result * base
        return result

    # -- comparison and conversion -------------------------------------

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.is_rational() and self.coeffs[0] == other
        if isinstance(other, ExactScalar):
            return self.ring == other.ring and self.coeffs == other.coeffs
        return NotImplemented

    def __hash__(self):
        if self.is_rational():
            return hash(self.coeffs[0])
        return hash((self.ring.base_q, self.coeffs))

    def __bool__(self):
        return any(self.coeffs)

    def is_rational(self):
        return not any(self.coeffs[1:])

    def as_fraction(self):
        if not self.is_rational():
            raise OutOfRange(f"{self} is irrational")
        return self.coeffs[0]

    def __float__(self):
        r = self.ring.real_generator()
        return math.fsum(float(c) * r ** k for k, c in enumerate(self.coeffs))

    def serialize(self):
        """``c0|c1|c2|c3`` over {1, s, s^2, s^3} with s = q^{1/4}."""
        # r = s in every reduced basis, so reduced coefficients zero-pad
        padded = list(self.coeffs) + [Fraction(0)] * (4 - self.ring.degree)
        return "|".join(str(c) for c in padded)

    @classmethod
    def parse(cls, base_q, text):
        parts = [Fraction(p) for p in text.split("|")]
        if len(parts) != 4:
            raise OutOfRange(f"expected four coefficients, got {text!r}")
        if base_q == 1 and any(parts[1:]):
            raise OutOfRange(f"rational value with quarter-power coefficients: {text!r}")
        ring = ring_for(base_q)
        value = ExactScalar(ring, [])
        for k, c in enumerate(parts):
            if c:
                value = value + ring.power(QuarterInt(k)) * c
        return value

    def __repr__(self):
        return f"ExactScalar(q={self.ring.base_q}, {self.serialize()})"

    __str__ = serialize


# -- constructors and q-combinatorics ----------------------------------------


def scalar_new(base_q, k):
    """The exact value base_q^k for a quarter-integer k."""
    if not isinstance(base_q, int) or base_q < 2:
        raise InvalidBase(f"base must be an integer >= 2, got {base_q!r}")
    return ring_for(base_q).power(k)


def scalar_mul(a, b):
    return a * b


def scalar_inv(a):
    return a.inverse()


def gaussian_binomial(n, k, q):
    """Number of k-dimensional subspaces of F_q^n."""
    if not 0 <= k <= n:
        raise OutOfRange(f"need 0 <= k <= n, got n={n}, k={k}")
    numerator = 1
    denominator = 1
    for i in range(1, k + 1):
        numerator *= q ** (n - k + i) - 1
        denominator *= q ** i - 1
    return numerator // denominator


def qbracket_sym(x, p):
    """Symmetric q-number (p^x - p^-x)/(p - p^-1)."""
    if p * p == 1:
        return ExactScalar.rational(p.ring, x)
    return (p ** x - p ** (-x)) / (p - p ** (-1))


def qbracket_gauss(x, q):
    """Gaussian q-number (q^x - 1)/(q - 1) = 1 + q + ... + q^(x-1)."""
    if x < 0:
        raise OutOfRange(f"Gaussian bracket needs x >= 0, got {x}")
    return (q ** x - 1) // (q - 1)
