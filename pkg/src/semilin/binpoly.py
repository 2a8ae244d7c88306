"""Integer-valued polynomials stored in the binomial basis C(X, i)."""
from __future__ import annotations

import json
import re
from fractions import Fraction
from math import comb, factorial


class BinPolyError(ValueError):
    pass


def gbinom(x: int, i: int) -> int:
    """C(x, i) for any integer x (falling factorial over i!)."""
    if i < 0:
        return 0
    if x >= 0:
        return comb(x, i)
    num = 1
    for k in range(i):
        num *= x - k
    return num // factorial(i)


def forward_differences(values):
    """Newton coefficients: Delta^i f(0) for f given at 0, 1, ..., len-1."""
    vals = list(values)
    out = []
    while vals:
        out.append(vals[0])
        vals = [b - a for a, b in zip(vals, vals[1:])]
    return out


class BinPoly:
    __slots__ = ("coeffs",)

    def __init__(self, coeffs=()):
        c = [int(x) if not isinstance(x, Fraction) else _as_int(x) for x in coeffs]
        while c and c[-1] == 0:
            c.pop()
        self.coeffs = tuple(c)

    @classmethod
    def binom(cls, s: int, k: int = 1) -> "BinPoly":
        c = [0] * (s + 1)
        c[s] = k
        return cls(c)

    @classmethod
    def const(cls, k: int) -> "BinPoly":
        return cls([k])

    @classmethod
    def interpolate(cls, values) -> "BinPoly":
        """Unique polynomial of degree < len(values) with f(i) = values[i]."""
        return cls(forward_differences(values))

    @property
    def degree(self) -> int:
        return len(self.coeffs) - 1

    def __call__(self, x: int) -> int:
        return sum(c * gbinom(x, i) for i, c in enumerate(self.coeffs))

    def __add__(self, other):
        other = _coerce(other)
        n = max(len(self.coeffs), len(other.coeffs))
        a = self.coeffs + (0,) * (n - len(self.coeffs))
        b = other.coeffs + (0,) * (n - len(other.coeffs))
        return BinPoly([x + y for x, y in zip(a, b)])

    __radd__ = __add__

    def __neg__(self):
        return BinPoly([-x for x in self.coeffs])

    def __sub__(self, other):
        return self + (-_coerce(other))

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, int):
            return BinPoly([x * other for x in self.coeffs])
        return binpoly_mul(self, other)

    __rmul__ = __mul__

    def __eq__(self, other):
        if isinstance(other, int):
            other = BinPoly.const(other)
        return isinstance(other, BinPoly) and self.coeffs == other.coeffs

    def __hash__(self):
        return hash(self.coeffs)

    def is_zero(self):
        return not self.coeffs

    def to_json(self):
        return list(self.coeffs)

    def __str__(self):
        if not self.coeffs:
            return "0"
        parts = []
        for i, c in enumerate(self.coeffs):
            if c == 0:
                continue
            if i == 0:
                body = str(abs(c))
            else:
                mono = f"C(X,{i})"
                body = mono if abs(c) == 1 else f"{abs(c)}*{mono}"
            if not parts:
                parts.append(("-" if c < 0 else "") + body)
            else:
                parts.append((" - " if c < 0 else " + ") + body)
        return "".join(parts)

    def __repr__(self):
        return f"BinPoly({list(self.coeffs)})"


def _as_int(x: Fraction) -> int:
    if x.denominator != 1:
        raise BinPolyError(f"non-integer coefficient {x}")
    return x.numerator


def _coerce(x) -> BinPoly:
    if isinstance(x, BinPoly):
        return x
    if isinstance(x, int):
        return BinPoly.const(x)
    raise TypeError(f"cannot use {type(x).__name__} as a BinPoly")


_TERM = re.compile(r"\s*([+-])?\s*(\d+)?\s*\*?\s*(C\(\s*X\s*,\s*(\d+)\s*\))?\s*")


def parse_binpoly(text: str) -> BinPoly:
    """Inverse of ``str``; also accepts a JSON array."""
    text = text.strip()
    if text.startswith("["):
        return BinPoly(json.loads(text))
    coeffs = {}
    pos = 0
    first = True
    while pos < len(text):
        m = _TERM.match(text, pos)
        if not m or m.end() == pos or (m.group(2) is None and m.group(3) is None):
            raise BinPolyError(f"cannot parse binomial polynomial at position {pos}")
        if m.group(1) is None and not first:
            raise BinPolyError(f"missing sign at position {pos}")
        sign = -1 if m.group(1) == "-" else 1
        k = int(m.group(2)) if m.group(2) else 1
        i = int(m.group(4)) if m.group(3) else 0
        coeffs[i] = coeffs.get(i, 0) + sign * k
        pos = m.end()
        first = False
    if not coeffs:
        return BinPoly()
    return BinPoly([coeffs.get(i, 0) for i in range(max(coeffs) + 1)])


def power_to_binomial(N: int):
    """a_{i,N} with t^N = sum_i a_{i,N} C(t, i)."""
    if N < 0:
        raise BinPolyError("N must be nonnegative")
    return forward_differences([t ** N for t in range(N + 1)])


def binpoly_mul(P: BinPoly, Q: BinPoly) -> BinPoly:
    """Product by evaluation at 0..deg P + deg Q and Newton interpolation."""
    P, Q = _coerce(P), _coerce(Q)
    if P.is_zero() or Q.is_zero():
        return BinPoly()
    d = P.degree + Q.degree
    return BinPoly.interpolate([P(x) * Q(x) for x in range(d + 1)])


def _to_power_basis(P: BinPoly):
    """Rational coefficients in the power basis."""
    out = [Fraction(0)] * max(1, len(P.coeffs))
    for i, c in enumerate(P.coeffs):
        # C(X, i) = X (X-1) ... (X-i+1) / i!
        falling = [Fraction(1)]
        for k in range(i):
            nxt = [Fraction(0)] * (len(falling) + 1)
            for j, a in enumerate(falling):
                nxt[j + 1] += a
                nxt[j] -= k * a
            falling = nxt
        f = factorial(i)
        for j, a in enumerate(falling):
            out[j] += c * a / f
    return out


def _poly_mul(a, b):
    out = [Fraction(0)] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        for j, y in enumerate(b):
            out[i + j] += x * y
    return out


def lambda_op(r: int, P: BinPoly) -> BinPoly:
    """C(P(X), r), computed over Q in the power basis and converted back;
    a non-integral binomial coordinate raises."""
    if r < 0:
        raise BinPolyError("r must be nonnegative")
    P = _coerce(P)
    p = _to_power_basis(P)
    acc = [Fraction(1)]
    for k in range(r):
        shifted = list(p)
        shifted[0] -= k
        acc = _poly_mul(acc, shifted)
    f = factorial(r)
    acc = [a / f for a in acc]
    out = [Fraction(0)] * len(acc)
    for N, c in enumerate(acc):
        if c:
            for i, a in enumerate(power_to_binomial(N)):
                out[i] += c * a
    return BinPoly(out)
