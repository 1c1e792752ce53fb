"""Exact scalar fields: the rationals and prime fields F_q.

Everything downstream (geometry, matrix factorizations) computes over one of
these; there is no floating point anywhere in the package.  Rational elements
are fractions.Fraction, prime-field elements are plain ints in [0, q).
"""

from fractions import Fraction


def is_prime(n):
    if n < 2:
        return False
    d = 2
    while d * d <= n:
        if n % d == 0:
            return False
        d += 1
    return True


class RationalField:
    """The field of rational numbers."""

    name = "QQ"
    characteristic = 0

    def of_int(self, n):
        return Fraction(n)

    @property
    def zero(self):
        return Fraction(0)

    @property
    def one(self):
        return Fraction(1)

    def add(self, a, b):
        return a + b

    def sub(self, a, b):
        return a - b

    def mul(self, a, b):
        return a * b

    def neg(self, a):
        return -a

    def inv(self, a):
        return Fraction(1) / a

    def is_zero(self, a):
        return a == 0

    def __eq__(self, other):
        return isinstance(other, RationalField)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField:
    """The field F_q, q prime.  Elements are ints reduced into [0, q)."""

    def __init__(self, q):
        if not is_prime(q):
            raise ValueError(f"field order {q} is not prime")
        self.q = q
        self.name = f"F{q}"
        self.characteristic = q

    def of_int(self, n):
        return n % self.q

    @property
    def zero(self):
        return 0

    @property
    def one(self):
        return 1

    def add(self, a, b):
        return (a + b) % self.q

    def sub(self, a, b):
        return (a - b) % self.q

    def mul(self, a, b):
        return (a * b) % self.q

    def neg(self, a):
        return (-a) % self.q

    def inv(self, a):
        a %= self.q
        if a == 0:
            raise ZeroDivisionError("inverse of 0 in " + self.name)
        return pow(a, self.q - 2, self.q)

    def is_zero(self, a):
        return a % self.q == 0

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.q == self.q

    def __hash__(self):
        return hash(("Fq", self.q))

    def __repr__(self):
        return self.name


QQ = RationalField()


def field_from_spec(name, q=None):
    """Build a field from a config-style spec: 'QQ' or 'Fq' with a prime q."""
    if name == "QQ":
        return QQ
    if name in ("Fq", "GF", "F"):
        if q is None:
            raise ValueError("prime q required for a finite field")
        return PrimeField(q)
    raise ValueError(f"unknown field spec {name!r}")
