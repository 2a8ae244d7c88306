"""Exact coefficient fields.

Three kinds are supported: the rationals, prime fields F_p and simple
extensions base[a]/(m(a)).  Elements are plain Python values wherever
possible (``gmpy2.mpq`` for Q, ``int`` in ``range(p)`` for F_p) so the
polynomial kernels can use native operators; ``reduce`` brings a freshly
computed value back to canonical form.
"""
from __future__ import annotations

import random
from fractions import Fraction

import gmpy2
from gmpy2 import mpq

from . import upoly


class FieldError(ValueError):
    pass


class ReducibleModulusError(FieldError):
    """Raised when inversion hits a zero divisor in an extension field."""


class FieldCtx:
    kind = "abstract"
    characteristic = 0

    zero = 0
    one = 1

    def reduce(self, c):
        return c

    def from_int(self, n: int):
        raise NotImplementedError

    def inv(self, c):
        raise NotImplementedError

    def div(self, a, b):
        return self.reduce(a * self.inv(b))

    def is_zero(self, c) -> bool:
        return not c

    def fmt(self, c) -> str:
        return str(c)

    def random_element(self, rng: random.Random, bound: int = 5):
        return self.from_int(rng.randint(-bound, bound))

    def coerce(self, c):
        """Bring ints/Fractions/elements of a subfield into this field."""
        if isinstance(c, (int, Fraction)) or type(c) is type(mpq(0)):
            q = mpq(c)
            if q.denominator == 1:
                return self.from_int(int(q))
            return self.div(self.from_int(int(q.numerator)), self.from_int(int(q.denominator)))
        return c


class Rationals(FieldCtx):
    kind = "rationals"
    characteristic = 0

    def __init__(self):
        self.zero = mpq(0)
        self.one = mpq(1)

    def from_int(self, n):
        return mpq(n)

    def reduce(self, c):
        return c

    def inv(self, c):
        if not c:
            raise ZeroDivisionError("inverse of zero")
        return 1 / mpq(c)

    def coerce(self, c):
        return mpq(c)

    def random_element(self, rng, bound=5):
        num = rng.randint(-bound, bound)
        den = rng.choice((1, 1, 1, 2, 3))
        return mpq(num, den)

    def __eq__(self, other):
        return isinstance(other, Rationals)

    def __hash__(self):
        return hash("QQ")

    def __repr__(self):
        return "QQ"


class PrimeField(FieldCtx):
    kind = "prime-field"

    def __init__(self, p: int):
        p = int(p)
        if p < 2 or not gmpy2.is_prime(p):
            raise FieldError(f"modulus {p} is not prime")
        self.p = p
        self.characteristic = p
        self.zero = 0
        self.one = 1

    def from_int(self, n):
        return int(n) % self.p

    def reduce(self, c):
        return c % self.p

    def inv(self, c):
        c %= self.p
        if not c:
            raise ZeroDivisionError("inverse of zero")
        return pow(c, -1, self.p)

    def coerce(self, c):
        if isinstance(c, int):
            return c % self.p
        return super().coerce(c)

    def fmt(self, c):
        return str(c % self.p)

    def random_element(self, rng, bound=None):
        return rng.randrange(self.p)

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.p == self.p

    def __hash__(self):
        return hash(("GF", self.p))

    def __repr__(self):
        return f"GF({self.p})"


class ExtElem:
    """Element of base[a]/(m(a)), stored as a coefficient tuple of length deg m."""

    __slots__ = ("field", "c")

    def __init__(self, field: "SimpleExtension", coeffs):
        self.field = field
        self.c = coeffs

    def _wrap(self, other):
        if isinstance(other, ExtElem):
            return other
        return self.field.coerce(other)

    def __add__(self, other):
        o = self._wrap(other)
        br = self.field.base.reduce
        return ExtElem(self.field, tuple(br(a + b) for a, b in zip(self.c, o.c)))

    __radd__ = __add__

    def __neg__(self):
        br = self.field.base.reduce
        return ExtElem(self.field, tuple(br(-a) for a in self.c))

    def __sub__(self, other):
        return self + (-self._wrap(other))

    def __rsub__(self, other):
        return self._wrap(other) - self

    def __mul__(self, other):
        f = self.field
        if not isinstance(other, ExtElem):
            if isinstance(other, int) or type(other) is type(mpq(0)):
                o = f.base.coerce(other)
                br = f.base.reduce
                return ExtElem(f, tuple(br(a * o) for a in self.c))
            other = f.coerce(other)
        return f._mul(self.c, other.c)

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            return self.field.inv(self) ** (-n)
        result = self.field.one
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def __truediv__(self, other):
        return self * self.field.inv(self._wrap(other))

    def __rtruediv__(self, other):
        return self._wrap(other) * self.field.inv(self)

    def __bool__(self):
        return any(self.c)

    def __eq__(self, other):
        if isinstance(other, ExtElem):
            return self.c == other.c
        if isinstance(other, (int, Fraction)) or type(other) is type(mpq(0)):
            return self.c == self.field.coerce(other).c
        return NotImplemented

    def __hash__(self):
        if not any(self.c[1:]):
            return hash(self.c[0])
        return hash(self.c)

    def __repr__(self):
        return self.field.fmt(self)


class SimpleExtension(FieldCtx):
    """base[name]/(minpoly).  Irreducibility of ``minpoly`` is the caller's claim."""

    kind = "simple-extension"

    def __init__(self, base: FieldCtx, minpoly, name: str = "a"):
        if not isinstance(base, (Rationals, PrimeField, SimpleExtension)):
            raise FieldError("unsupported base field")
        m = upoly.trim([base.coerce(c) for c in minpoly])
        if len(m) < 3:
            raise FieldError("minimal polynomial must have degree >= 2")
        if m[-1] != base.one:
            raise FieldError("minimal polynomial must be monic")
        self.base = base
        self.minpoly = tuple(m)
        self.degree = len(m) - 1
        self.name = name
        self.characteristic = base.characteristic
        self.zero = ExtElem(self, (base.zero,) * self.degree)
        self.one = ExtElem(self, (base.one,) + (base.zero,) * (self.degree - 1))

    def gen(self) -> ExtElem:
        if self.degree == 1:
            return self.from_int(-self.minpoly[0])
        c = [self.base.zero] * self.degree
        c[1] = self.base.one
        return ExtElem(self, tuple(c))

    def from_base(self, b) -> ExtElem:
        return ExtElem(self, (self.base.coerce(b),) + (self.base.zero,) * (self.degree - 1))

    def from_coeffs(self, coeffs) -> ExtElem:
        r = upoly.rem([self.base.coerce(c) for c in coeffs], list(self.minpoly), self.base)
        r = r + [self.base.zero] * (self.degree - len(r))
        return ExtElem(self, tuple(r))

    def from_int(self, n):
        return self.from_base(self.base.from_int(n))

    def coerce(self, c):
        if isinstance(c, ExtElem):
            if c.field is not self and c.field != self:
                raise FieldError("element of a different extension")
            return c
        return self.from_base(self.base.coerce(c))

    def _mul(self, a, b):
        d = self.degree
        prod = [0] * (2 * d - 1)
        for i, x in enumerate(a):
            if x:
                for j, y in enumerate(b):
                    if y:
                        prod[i + j] = prod[i + j] + x * y
        m = self.minpoly
        for k in range(2 * d - 2, d - 1, -1):
            c = prod[k]
            if c:
                for j in range(d):
                    if m[j]:
                        prod[k - d + j] = prod[k - d + j] - c * m[j]
        red = self.base.reduce
        z = self.base.zero
        return ExtElem(self, tuple(red(c) if c else z for c in prod[:d]))

    def reduce(self, c):
        return c

    def inv(self, c):
        c = self.coerce(c)
        if not c:
            raise ZeroDivisionError("inverse of zero")
        g, s, _ = upoly.xgcd(upoly.trim(list(c.c)), list(self.minpoly), self.base)
        if len(g) != 1:
            raise ReducibleModulusError(
                f"{self.fmt(c)} is a zero divisor modulo {self._fmt_minpoly()}")
        ginv = self.base.inv(g[0])
        return self.from_coeffs([self.base.reduce(x * ginv) for x in s])

    def is_zero(self, c):
        return not c

    def fmt(self, c) -> str:
        parts = []
        for i in range(self.degree - 1, -1, -1):
            a = c.c[i]
            if not a:
                continue
            mono = "" if i == 0 else (self.name if i == 1 else f"{self.name}^{i}")
            coef = self.base.fmt(a)
            if mono and coef == "1":
                parts.append(mono)
            elif mono and coef == "-1":
                parts.append("-" + mono)
            elif mono:
                parts.append(f"{coef}*{mono}")
            else:
                parts.append(coef)
        if not parts:
            return "0"
        s = " + ".join(parts).replace("+ -", "- ")
        return s if len(parts) == 1 else f"({s})"

    def _fmt_minpoly(self):
        return "+".join(f"{self.base.fmt(c)}*{self.name}^{i}" for i, c in enumerate(self.minpoly) if c)

    def random_element(self, rng, bound=5):
        return ExtElem(self, tuple(self.base.random_element(rng, bound) for _ in range(self.degree)))

    def __eq__(self, other):
        return (isinstance(other, SimpleExtension) and other.base == self.base
                and other.minpoly == self.minpoly and other.name == self.name)

    def __hash__(self):
        return hash(("ext", self.base, self.minpoly, self.name))

    def __repr__(self):
        return f"{self.base!r}[{self.name}]/({self._fmt_minpoly()})"


QQ = Rationals()


def GF(p: int) -> PrimeField:
    return PrimeField(p)
