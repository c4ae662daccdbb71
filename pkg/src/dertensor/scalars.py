"""Exact scalar arithmetic over the three supported coefficient fields.

A field is described by a FieldDescriptor of kind 'rational', 'cyclotomic',
or 'prime'. Raw values are plain Python data chosen so that equal elements
compare equal with ==:

  rational    fractions.Fraction (always lowest terms, positive denominator)
  cyclotomic  tuple of Fraction, length phi(m), coefficients of 1, z, ...,
              z^{phi(m)-1} where z is a primitive m-th root of unity; reduced
              modulo the m-th cyclotomic polynomial
  prime       int in [0, p)

The descriptor owns all arithmetic on raw values; the Scalar class is a thin
immutable wrapper giving operator syntax at API boundaries. Hot loops work on
raw values directly.

No floats anywhere. Python ints are arbitrary precision, which covers the
"big integers mandatory" requirement for free.
"""

from __future__ import annotations

import math
import re
from fractions import Fraction

from .errors import (
    CharDividesM,
    DivisionByZero,
    FieldMismatch,
    NoPrimitiveRoot,
    NotPrime,
    ParseError,
)

RATIONAL = "rational"
CYCLOTOMIC = "cyclotomic"
PRIME = "prime"


def _is_prime(n: int) -> bool:
    if n < 2:
        return False
    if n < 4:
        return True
    if n % 2 == 0:
        return False
    f = 3
    while f * f <= n:
        if n % f == 0:
            return False
        f += 2
    return True


def _prime_factors(n: int) -> list[int]:
    out = []
    f = 2
    while f * f <= n:
        if n % f == 0:
            out.append(f)
            while n % f == 0:
                n //= f
        f += 1 if f == 2 else 2
    if n > 1:
        out.append(n)
    return out


def euler_phi(m: int) -> int:
    phi = m
    for q in _prime_factors(m):
        phi = phi // q * (q - 1)
    return phi


def _poly_exact_div(num: list[int], den: list[int]) -> list[int]:
    # Exact division of integer polynomials, den monic. Ascending coefficients.
    num = list(num)
    dn = len(den) - 1
    out = [0] * (len(num) - dn)
    for i in range(len(num) - 1, dn - 1, -1):
        c = num[i]
        out[i - dn] = c
        if c:
            for j in range(dn + 1):
                num[i - dn + j] -= c * den[j]
    assert all(c == 0 for c in num), "non-exact polynomial division"
    return out


def _divisors(m: int) -> list[int]:
    return [d for d in range(1, m + 1) if m % d == 0]


_CYCLO_CACHE: dict[int, tuple[int, ...]] = {}


def cyclotomic_polynomial(m: int) -> tuple[int, ...]:
    """Integer coefficients of the m-th cyclotomic polynomial, ascending.

    Computed by exact division of x^m - 1 by the product of the lower
    cyclotomic polynomials; no factorization, no floats.
    """
    if m in _CYCLO_CACHE:
        return _CYCLO_CACHE[m]
    if m == 1:
        poly = (-1, 1)
    else:
        num = [0] * (m + 1)
        num[0] = -1
        num[m] = 1
        res = num
        for d in _divisors(m)[:-1]:
            res = _poly_exact_div(res, list(cyclotomic_polynomial(d)))
        poly = tuple(res)
    assert len(poly) - 1 == euler_phi(m)
    _CYCLO_CACHE[m] = poly
    return poly


_RAT_RE = re.compile(r"^([+-]?\d+)(?:/(\d+))?$")


def _parse_rational(text: str) -> Fraction:
    s = text.strip()
    mt = _RAT_RE.match(s)
    if not mt:
        raise ParseError("not a rational literal", text)
    num = int(mt.group(1))
    den = int(mt.group(2)) if mt.group(2) else 1
    if den == 0:
        raise ParseError("zero denominator", text)
    return Fraction(num, den)


class FieldDescriptor:
    """One coefficient field; owns parsing, formatting and raw arithmetic.

    Use make_field() rather than the constructor. Descriptors compare and
    hash by (kind, m, p), so structurally equal fields are interchangeable.
    """

    __slots__ = ("kind", "m", "p", "modulus", "deg", "_omega")

    def __init__(self, kind: str, m: int, p: int | None):
        self.kind = kind
        self.m = m
        self.p = p
        if kind == CYCLOTOMIC:
            self.modulus = cyclotomic_polynomial(m)
            self.deg = len(self.modulus) - 1
        else:
            self.modulus = None
            self.deg = 1
        self._omega = None

    # -- identity ----------------------------------------------------------

    def __eq__(self, other):
        return (
            isinstance(other, FieldDescriptor)
            and (self.kind, self.m, self.p) == (other.kind, other.m, other.p)
        )

    def __hash__(self):
        return hash((self.kind, self.m, self.p))

    def __repr__(self):
        if self.kind == RATIONAL:
            return "Field(rational)"
        if self.kind == CYCLOTOMIC:
            return f"Field(cyclotomic, m={self.m})"
        return f"Field(prime, p={self.p}, m={self.m})"

    @property
    def char(self) -> int:
        return self.p if self.kind == PRIME else 0

    # -- constants ---------------------------------------------------------

    def zero(self):
        if self.kind == RATIONAL:
            return Fraction(0)
        if self.kind == CYCLOTOMIC:
            return (Fraction(0),) * self.deg
        return 0

    def one(self):
        return self.from_int(1)

    def from_int(self, n: int):
        if self.kind == RATIONAL:
            return Fraction(n)
        if self.kind == CYCLOTOMIC:
            return (Fraction(n),) + (Fraction(0),) * (self.deg - 1)
        return n % self.p

    def from_fraction(self, q: Fraction):
        if self.kind == RATIONAL:
            return q
        if self.kind == CYCLOTOMIC:
            return (q,) + (Fraction(0),) * (self.deg - 1)
        # denominator inverted mod p; fails if p divides it
        den = q.denominator % self.p
        if den == 0:
            raise DivisionByZero(f"denominator of {q} vanishes mod {self.p}")
        return q.numerator * pow(den, -1, self.p) % self.p

    # -- arithmetic on raw values -----------------------------------------

    def add(self, a, b):
        if self.kind == CYCLOTOMIC:
            return tuple(x + y for x, y in zip(a, b))
        if self.kind == PRIME:
            return (a + b) % self.p
        return a + b

    def sub(self, a, b):
        if self.kind == CYCLOTOMIC:
            return tuple(x - y for x, y in zip(a, b))
        if self.kind == PRIME:
            return (a - b) % self.p
        return a - b

    def neg(self, a):
        if self.kind == CYCLOTOMIC:
            return tuple(-x for x in a)
        if self.kind == PRIME:
            return -a % self.p
        return -a

    def mul(self, a, b):
        if self.kind == CYCLOTOMIC:
            return self._cyc_mul(a, b)
        if self.kind == PRIME:
            return a * b % self.p
        return a * b

    def inv(self, a):
        if self.is_zero(a):
            raise DivisionByZero("inverse of zero")
        if self.kind == RATIONAL:
            return 1 / a
        if self.kind == PRIME:
            return pow(a, -1, self.p)
        return self._cyc_inv(a)

    def div(self, a, b):
        return self.mul(a, self.inv(b))

    def pow(self, a, n: int):
        if n < 0:
            return self.pow(self.inv(a), -n)
        r = self.one()
        b = a
        while n:
            if n & 1:
                r = self.mul(r, b)
            b = self.mul(b, b)
            n >>= 1
        return r

    def is_zero(self, a) -> bool:
        return a == self.zero()

    def inv_int(self, n: int):
        """Inverse of the image of the integer n; DivisionByZero in char p | n."""
        return self.inv(self.from_int(n))

    # -- cyclotomic internals ---------------------------------------------

    def _cyc_reduce(self, coeffs: list[Fraction]) -> tuple[Fraction, ...]:
        d = self.deg
        mod = self.modulus
        for i in range(len(coeffs) - 1, d - 1, -1):
            c = coeffs[i]
            if c:
                for j in range(d):
                    coeffs[i - d + j] -= c * mod[j]
                coeffs[i] = Fraction(0)
        return tuple(coeffs[:d]) if len(coeffs) >= d else tuple(coeffs) + (Fraction(0),) * (d - len(coeffs))

    def _cyc_mul(self, a, b):
        d = self.deg
        out = [Fraction(0)] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        out[i + j] += x * y
        return self._cyc_reduce(out)

    def _cyc_inv(self, a):
        # extended Euclid in Q[x] against the cyclotomic modulus
        r0 = [Fraction(c) for c in self.modulus]
        r1 = list(a)
        while r1 and not r1[-1]:
            r1.pop()
        s0, s1 = [], [Fraction(1)]
        while True:
            if len(r1) == 1:
                c = r1[0]
                return self._cyc_reduce([x / c for x in s1])
            q, rem = _poly_divmod_frac(r0, r1)
            r0, r1 = r1, rem
            s_new = _poly_sub(s0, _poly_mul(q, s1))
            s0, s1 = s1, s_new
            while r1 and not r1[-1]:
                r1.pop()
            if not r1:
                raise DivisionByZero("element not invertible against the modulus")

    # -- roots of unity ----------------------------------------------------

    def root_of_unity(self, order: int):
        """A primitive root of unity of the given order, as a raw value."""
        if order == 1:
            return self.one()
        if self.kind == RATIONAL:
            if order == 2:
                return Fraction(-1)
            raise NoPrimitiveRoot(f"rationals contain no primitive root of order {order}")
        if self.m % order != 0:
            raise NoPrimitiveRoot(f"field has roots of order dividing {self.m}, not {order}")
        return self.pow(self.omega(), self.m // order)

    def omega(self):
        """The distinguished primitive m-th root of unity."""
        if self._omega is None:
            if self.kind == RATIONAL:
                self._omega = Fraction(1) if self.m == 1 else Fraction(-1)
            elif self.kind == CYCLOTOMIC:
                if self.deg == 1:
                    # m in {1, 2}: the root is rational
                    self._omega = (Fraction(1) if self.m == 1 else Fraction(-1),)
                else:
                    self._omega = (Fraction(0), Fraction(1)) + (Fraction(0),) * (self.deg - 2)
            else:
                self._omega = self._find_prime_root()
        return self._omega

    def _find_prime_root(self) -> int:
        m, p = self.m, self.p
        if m == 1:
            return 1
        qs = _prime_factors(m)
        for g in range(2, p):
            if pow(g, m, p) != 1:
                continue
            if all(pow(g, m // q, p) != 1 for q in qs):
                return g
        raise NoPrimitiveRoot(f"no element of order {m} in F_{p}")

    # -- literals ----------------------------------------------------------

    def parse(self, text: str):
        s = text.strip()
        if self.kind == RATIONAL:
            return _parse_rational(s)
        if self.kind == PRIME:
            if not re.match(r"^[+-]?\d+$", s):
                raise ParseError("not a prime-field literal", text)
            return int(s) % self.p
        if not (s.startswith("[") and s.endswith("]")):
            raise ParseError("cyclotomic literal must be bracketed", text)
        body = s[1:-1].strip()
        parts = [t for t in body.split(",")] if body else []
        if len(parts) > self.deg:
            raise ParseError(f"at most {self.deg} coefficients allowed", text)
        coeffs = [_parse_rational(t) for t in parts]
        coeffs += [Fraction(0)] * (self.deg - len(coeffs))
        return tuple(coeffs)

    def format(self, a) -> str:
        if self.kind == RATIONAL:
            return str(a)
        if self.kind == PRIME:
            return str(a)
        coeffs = list(a)
        while len(coeffs) > 1 and not coeffs[-1]:
            coeffs.pop()
        return "[" + ",".join(str(c) for c in coeffs) + "]"


def _poly_mul(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    if not a or not b:
        return []
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if x:
            for j, y in enumerate(b):
                out[i + j] += x * y
    return out


def _poly_sub(a: list[Fraction], b: list[Fraction]) -> list[Fraction]:
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else Fraction(0)
        y = b[i] if i < len(b) else Fraction(0)
        out.append(x - y)
    return out


def _poly_divmod_frac(num: list[Fraction], den: list[Fraction]):
    num = list(num)
    q = [Fraction(0)] * max(1, len(num) - len(den) + 1)
    inv_lead = 1 / den[-1]
    for i in range(len(num) - 1, len(den) - 2, -1):
        c = num[i] * inv_lead
        q[i - len(den) + 1] = c
        if c:
            for j in range(len(den)):
                num[i - len(den) + 1 + j] -= c * den[j]
    while num and not num[-1]:
        num.pop()
    return q, num


_FIELD_CACHE: dict[tuple, FieldDescriptor] = {}


def make_field(kind: str, m: int = 1, p: int | None = None) -> FieldDescriptor:
    """Build (or fetch) a field descriptor, validating its parameters."""
    if kind not in (RATIONAL, CYCLOTOMIC, PRIME):
        raise ParseError(f"unknown field kind {kind!r}")
    if kind == RATIONAL:
        m, p = 1, None
    if m < 1:
        raise ParseError(f"root order must be positive, got {m}")
    if kind == PRIME:
        if p is None or not _is_prime(p):
            raise NotPrime(f"{p} is not prime")
        if m % p == 0:
            raise CharDividesM(f"characteristic {p} divides root order {m}")
        if (p - 1) % m != 0:
            raise NoPrimitiveRoot(f"F_{p} has no primitive root of order {m} ({m} does not divide {p - 1})")
    key = (kind, m, p)
    if key not in _FIELD_CACHE:
        fld = FieldDescriptor(kind, m, p)
        if kind == PRIME:
            fld.omega()  # fail early if the search cannot succeed
        _FIELD_CACHE[key] = fld
    return _FIELD_CACHE[key]


class Scalar:
    """Immutable field element; wraps a raw value with operator syntax."""

    __slots__ = ("field", "value")

    def __init__(self, field: FieldDescriptor, value):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "value", value)

    def __setattr__(self, *_):
        raise AttributeError("Scalar is immutable")

    def _raw(self, other):
        if isinstance(other, Scalar):
            if other.field != self.field:
                raise FieldMismatch(f"{self.field} vs {other.field}")
            return other.value
        if isinstance(other, int):
            return self.field.from_int(other)
        return NotImplemented

    def __add__(self, other):
        r = self._raw(other)
        if r is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.add(self.value, r))

    __radd__ = __add__

    def __sub__(self, other):
        r = self._raw(other)
        if r is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(self.value, r))

    def __rsub__(self, other):
        r = self._raw(other)
        if r is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.sub(r, self.value))

    def __mul__(self, other):
        r = self._raw(other)
        if r is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.mul(self.value, r))

    __rmul__ = __mul__

    def __truediv__(self, other):
        r = self._raw(other)
        if r is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(self.value, r))

    def __rtruediv__(self, other):
        r = self._raw(other)
        if r is NotImplemented:
            return NotImplemented
        return Scalar(self.field, self.field.div(r, self.value))

    def __neg__(self):
        return Scalar(self.field, self.field.neg(self.value))

    def __pow__(self, n: int):
        return Scalar(self.field, self.field.pow(self.value, n))

    def __eq__(self, other):
        if isinstance(other, Scalar):
            return self.field == other.field and self.value == other.value
        if isinstance(other, int):
            return self.value == self.field.from_int(other)
        return NotImplemented

    def __hash__(self):
        return hash((self.field, self.value))

    def __bool__(self):
        return not self.field.is_zero(self.value)

    def __repr__(self):
        return self.field.format(self.value)

    def inverse(self) -> "Scalar":
        return Scalar(self.field, self.field.inv(self.value))


def parse_scalar(text: str, field: FieldDescriptor) -> Scalar:
    return Scalar(field, field.parse(text))
