"""Sparse multivariate polynomials over an exact field, with torus charges.

A ring fixes the variable names and an integer charge per variable; a
polynomial is a {exponent tuple: coefficient} dict.  Charges implement the
auxiliary grading under which superpotentials are homogeneous of charge 2;
total degree is the ordinary one.  Everything is exact.
"""

from itertools import combinations_with_replacement


class PolyRing:
    def __init__(self, field, names, charges=None):
        self.field = field
        self.names = tuple(names)
        if charges is None:
            charges = (1,) * len(self.names)
        self.charges = tuple(charges)
        if len(self.charges) != len(self.names):
            raise ValueError("one charge per variable")
        if any(c < 0 for c in self.charges):
            raise ValueError("variable charges must be non-negative")
        self.nvars = len(self.names)

    def zero(self):
        return Poly(self, {})

    def one(self):
        return Poly(self, {(0,) * self.nvars: self.field.one})

    def constant(self, c):
        c = self.field.of_int(c) if isinstance(c, int) else c
        if self.field.is_zero(c):
            return self.zero()
        return Poly(self, {(0,) * self.nvars: c})

    def var(self, i):
        if isinstance(i, str):
            i = self.names.index(i)
        exp = [0] * self.nvars
        exp[i] = 1
        return Poly(self, {tuple(exp): self.field.one})

    def monomial_charge(self, exp):
        return sum(e * c for e, c in zip(exp, self.charges))

    def monomials_of_degree(self, deg):
        """All exponent tuples of the given total degree."""
        out = []
        for combo in combinations_with_replacement(range(self.nvars), deg):
            exp = [0] * self.nvars
            for i in combo:
                exp[i] += 1
            out.append(tuple(exp))
        return out

    def __eq__(self, other):
        return (isinstance(other, PolyRing) and other.names == self.names
                and other.charges == self.charges and other.field == self.field)

    def __repr__(self):
        return f"PolyRing({self.field}, {','.join(self.names)})"


class Poly:
    __slots__ = ("ring", "coeffs")

    def __init__(self, ring, coeffs):
        self.ring = ring
        self.coeffs = coeffs

    def is_zero(self):
        return not self.coeffs

    def __bool__(self):
        return bool(self.coeffs)

    def __add__(self, other):
        other = self._coerce(other)
        F = self.ring.field
        out = dict(self.coeffs)
        for m, c in other.coeffs.items():
            v = F.add(out.get(m, F.zero), c)
            if F.is_zero(v):
                out.pop(m, None)
            else:
                out[m] = v
        return Poly(self.ring, out)

    def __neg__(self):
        F = self.ring.field
        return Poly(self.ring, {m: F.neg(c) for m, c in self.coeffs.items()})

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __mul__(self, other):
        F = self.ring.field
        if isinstance(other, int) or not isinstance(other, Poly):
            scalar = F.of_int(other) if isinstance(other, int) else other
            if F.is_zero(scalar):
                return self.ring.zero()
            return Poly(self.ring, {m: F.mul(c, scalar) for m, c in self.coeffs.items()})
        out = {}
        for m1, c1 in self.coeffs.items():
            for m2, c2 in other.coeffs.items():
                key = tuple(a + b for a, b in zip(m1, m2))
                v = F.add(out.get(key, F.zero), F.mul(c1, c2))
                if F.is_zero(v):
                    out.pop(key, None)
                else:
                    out[key] = v
        return Poly(self.ring, out)

    __rmul__ = __mul__

    def _coerce(self, other):
        if isinstance(other, Poly):
            return other
        return self.ring.constant(other)

    def __eq__(self, other):
        if not isinstance(other, Poly):
            other = self._coerce(other)
        return self.coeffs == other.coeffs

    def degree(self):
        """Total degree; -1 for the zero polynomial."""
        if not self.coeffs:
            return -1
        return max(sum(m) for m in self.coeffs)

    def homogeneous_charge(self):
        """The common charge of all monomials; None if mixed, 0 for zero."""
        charges = {self.ring.monomial_charge(m) for m in self.coeffs}
        if len(charges) > 1:
            return None
        return charges.pop() if charges else 0

    def __repr__(self):
        if not self.coeffs:
            return "0"
        names = self.ring.names
        parts = []
        for m, c in sorted(self.coeffs.items()):
            factors = [f"{names[i]}^{e}" if e > 1 else names[i]
                       for i, e in enumerate(m) if e]
            body = "*".join(factors) if factors else "1"
            parts.append(f"({c})*{body}")
        return " + ".join(parts)


def poly_mat_mul(a, b):
    """Product of matrices of polynomials (lists of lists)."""
    if not a or not b:
        return []
    ring = None
    for row in a:
        for e in row:
            ring = e.ring
            break
        if ring:
            break
    n, k, m = len(a), len(b), len(b[0])
    out = [[ring.zero() for _ in range(m)] for _ in range(n)]
    for i in range(n):
        for t in range(k):
            e = a[i][t]
            if e.is_zero():
                continue
            for j in range(m):
                if b[t][j].is_zero():
                    continue
                out[i][j] = out[i][j] + e * b[t][j]
    return out


def poly_mat_is_zero(a):
    return all(e.is_zero() for row in a for e in row)
