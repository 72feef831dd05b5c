"""
Table-driven arithmetic in F_q for small prime powers q.

Elements are the integers 0..q-1 in galois' integer representation (the
polynomial coefficients read as base-p digits). Extension fields use the
lexicographically least irreducible modulus, so tables and every serialized
object built on top of them are reproducible.
"""
import logging
from functools import lru_cache

import galois
import numpy as np
from sympy import factorint

from .conf import setting
from .errors import AxiomViolation, NotPrimePower, OutOfRange

logger = logging.getLogger(__name__)

# Field elements are plain ints in [0, q).
FieldElem = int


class Field:
    """The finite field F_q as addition/multiplication tables."""

    def __init__(self, q):
        if not isinstance(q, int) or q < 2:
            raise NotPrimePower(f"{q!r} is not a prime power")
        limit = setting('FIELD_LIMIT')
        if q > limit:
            raise OutOfRange(f"q={q} exceeds the field cap {limit}")
        factors = factorint(q)
        if len(factors) != 1:
            raise NotPrimePower(f"{q} is not a prime power")
        (p, m), = factors.items()
        self.p, self.m, self.q = int(p), int(m), q

        if m == 1:
            self.modulus = None
            gf = galois.GF(p)
        else:
            self.modulus = galois.irreducible_poly(p, m, method="min")
            gf = galois.GF(q, irreducible_poly=self.modulus)
        self.gf = gf

        elements = gf.elements
        self.add = self._table(elements[:, None] + elements[None, :])
        self.mul = self._table(elements[:, None] * elements[None, :])
        self.neg = self._table(-elements)
        self.sub = self.add[:, self.neg]
        inv = np.zeros(q, dtype=np.int64)
        inv[1:] = self._table(elements[1:] ** -1)
        self.inv = inv

        # plain lists are faster than numpy scalars for element-wise loops
        self.add_list = self.add.tolist()
        self.mul_list = self.mul.tolist()
        self.neg_list = self.neg.tolist()
        self.inv_list = self.inv.tolist()

        self.squares = frozenset(int(self.mul[a, a]) for a in range(q))
        self.trace = np.array([self._trace(a) for a in range(q)], dtype=np.int64)

        if q <= 16:
            self.check_axioms()
        logger.debug(f"Built F_{q} (p={self.p}, m={self.m}, modulus={self.modulus})")

    @staticmethod
    def _table(values):
        return np.asarray(values.view(np.ndarray), dtype=np.int64)

    def __repr__(self):
        return f"Field({self.q})"

    def __eq__(self, other):
        return isinstance(other, Field) and other.q == self.q

    def __hash__(self):
        return hash(('Field', self.q))

    @property
    def characteristic(self):
        return self.p

    def power(self, a, k):
        result = 1
        for _ in range(k):
            result = self.mul_list[result][a]
        return result

    def frobenius(self, a):
        return self.power(a, self.p)

    def _trace(self, a):
        total, term = 0, a
        for _ in range(self.m):
            total = self.add_list[total][term]
            term = self.frobenius(term)
        return total

    def check_axioms(self):
        """Exhaustive check of the field axioms over the full tables."""
        q = self.q
        add, mul = self.add, self.mul
        a = np.arange(q)
        checks = [
            ('additive identity', add[0] == a),
            ('multiplicative identity', mul[1] == a),
            ('additive inverse', add[a, self.neg] == 0),
            ('multiplicative inverse', mul[a[1:], self.inv[1:]] == 1),
            ('commutativity', (add == add.T) & (mul == mul.T)),
            ('additive associativity', add[add[:, :, None], a[None, None, :]] == add[a[:, None, None], add[None, :, :]]),
            ('multiplicative associativity', mul[mul[:, :, None], a[None, None, :]] == mul[a[:, None, None], mul[None, :, :]]),
            ('distributivity', mul[a[:, None, None], add[None, :, :]] == add[mul[:, :, None], mul[:, None, :]]),
        ]
        for name, ok in checks:
            if not np.all(ok):
                witness = tuple(int(i) for i in np.argwhere(~np.asarray(ok))[0])
                raise AxiomViolation(name, witness)


@lru_cache(maxsize=None)
def field_new(q):
    return Field(q)


def is_square(a, F):
    """True iff a = b^2 for some b in F."""
    return a in F.squares


def abs_trace(a, F):
    """Absolute trace a + a^p + ... + a^(p^(m-1)), an element of F_p."""
    return int(F.trace[a])
