"""Sparse multivariate polynomials with packed monomials.

A monomial over n variables is one Python int made of n+1 fields of 17
bits: the top field holds the total degree, then the exponents of
x0, x1, ... in that order.  Bit 16 of every field is a guard bit that is
always zero in a valid monomial.  With this layout

* integer comparison is graded-lex comparison (x0 > x1 > ...),
* monomial multiplication is integer addition,
* ``m2 | m1`` iff ``((m1 | G) - m2) & G == G`` where G has every guard set.
"""
from __future__ import annotations

import heapq
from functools import lru_cache

from .fields import FieldCtx

_B = 17
_EMASK = (1 << 16) - 1
MAX_EXP = _EMASK


class PolyError(ValueError):
    pass


class Ring:
    """Coefficient field plus ordered variable list."""

    __slots__ = ("ctx", "vars", "n", "index", "_shift", "_guard", "_degshift", "_hash")

    def __init__(self, ctx: FieldCtx, variables):
        self.ctx = ctx
        self.vars = tuple(variables)
        if len(set(self.vars)) != len(self.vars):
            raise PolyError("duplicate variable names")
        self.n = len(self.vars)
        self.index = {v: i for i, v in enumerate(self.vars)}
        self._shift = tuple(_B * (self.n - 1 - i) for i in range(self.n))
        self._degshift = _B * self.n
        self._guard = sum(1 << (_B * k + 16) for k in range(self.n + 1))
        self._hash = hash((ctx, self.vars))

    def __eq__(self, other):
        return self is other or (isinstance(other, Ring) and self.vars == other.vars
                                 and self.ctx == other.ctx)

    def __hash__(self):
        return self._hash

    def __repr__(self):
        return f"Ring({self.ctx!r}, {list(self.vars)})"

    # monomials
    def pack(self, exps) -> int:
        m = 0
        d = 0
        for e, s in zip(exps, self._shift):
            if e < 0 or e > MAX_EXP:
                raise PolyError(f"exponent {e} out of range")
            m |= e << s
            d += e
        if d > MAX_EXP:
            raise PolyError("total degree too large")
        return m | (d << self._degshift)

    def unpack(self, m: int):
        return tuple((m >> s) & _EMASK for s in self._shift)

    def mdeg(self, m: int) -> int:
        return m >> self._degshift

    def mexp(self, m: int, i: int) -> int:
        return (m >> self._shift[i]) & _EMASK

    def mdivides(self, m2: int, m1: int) -> bool:
        g = self._guard
        return ((m1 | g) - m2) & g == g

    def var_mono(self, i: int, e: int = 1) -> int:
        return (e << self._shift[i]) | (e << self._degshift)

    # constructors
    def zero(self) -> "Poly":
        return Poly(self, {})

    def one(self) -> "Poly":
        return Poly(self, {0: self.ctx.one})

    def const(self, c) -> "Poly":
        c = self.ctx.coerce(c)
        return Poly(self, {0: c} if c else {})

    def var(self, name) -> "Poly":
        i = name if isinstance(name, int) else self.index[name]
        return Poly(self, {self.var_mono(i): self.ctx.one})

    def gens(self):
        return [self.var(i) for i in range(self.n)]

    def from_dict(self, d) -> "Poly":
        F = self.ctx
        terms = {}
        for exps, c in d.items():
            c = F.coerce(c)
            if not c:
                continue
            m = self.pack(exps)
            c = terms.get(m, F.zero) + c if m in terms else c
            if c:
                terms[m] = F.reduce(c)
            else:
                terms.pop(m, None)
        return Poly(self, terms)


@lru_cache(maxsize=None)
def ring(ctx: FieldCtx, variables) -> Ring:
    return Ring(ctx, tuple(variables))


def _clean(terms, F):
    red = F.reduce
    out = {}
    for m, c in terms.items():
        c = red(c)
        if c:
            out[m] = c
    return out


class Poly:
    """Immutable sparse polynomial; ``terms`` maps packed monomials to coefficients."""

    __slots__ = ("ring", "terms", "_hash")

    def __init__(self, ring: Ring, terms: dict):
        self.ring = ring
        self.terms = terms
        self._hash = None

    # basic structure
    @property
    def ctx(self):
        return self.ring.ctx

    def is_zero(self):
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def is_const(self):
        return not self.terms or (len(self.terms) == 1 and 0 in self.terms)

    def const_value(self):
        if not self.is_const():
            raise PolyError("not a constant")
        return self.terms.get(0, self.ring.ctx.zero)

    def __len__(self):
        return len(self.terms)

    def lm(self) -> int:
        return max(self.terms)

    def lc(self):
        return self.terms[max(self.terms)]

    def degree(self) -> int:
        if not self.terms:
            return -1
        return self.ring.mdeg(max(self.terms))

    def degree_in(self, v) -> int:
        i = v if isinstance(v, int) else self.ring.index[v]
        if not self.terms:
            return -1
        me = self.ring.mexp
        return max(me(m, i) for m in self.terms)

    def used_vars(self):
        """Indices of variables that actually occur."""
        R = self.ring
        acc = 0
        for m in self.terms:
            acc |= m
        return [i for i in range(R.n) if (acc >> R._shift[i]) & _EMASK]

    def items(self):
        """(exponent tuple, coefficient) pairs in descending graded-lex order."""
        un = self.ring.unpack
        return [(un(m), self.terms[m]) for m in sorted(self.terms, reverse=True)]

    def _check(self, other):
        if not isinstance(other, Poly):
            return self.ring.const(other)
        if other.ring is not self.ring and other.ring != self.ring:
            raise PolyError("polynomials live in different rings")
        return other

    # arithmetic
    def __add__(self, other):
        other = self._check(other)
        if not other.terms:
            return self
        if not self.terms:
            return other
        F = self.ring.ctx
        t = dict(self.terms)
        for m, c in other.terms.items():
            if m in t:
                s = F.reduce(t[m] + c)
                if s:
                    t[m] = s
                else:
                    del t[m]
            else:
                t[m] = c
        return Poly(self.ring, t)

    __radd__ = __add__

    def __neg__(self):
        red = self.ring.ctx.reduce
        return Poly(self.ring, {m: red(-c) for m, c in self.terms.items()})

    def __sub__(self, other):
        return self + (-self._check(other))

    def __rsub__(self, other):
        return self._check(other) - self

    def scale(self, c):
        F = self.ring.ctx
        c = F.coerce(c)
        if not c:
            return self.ring.zero()
        if c == F.one:
            return self
        red = F.reduce
        return Poly(self.ring, _clean({m: red(x * c) for m, x in self.terms.items()}, F))

    def mul_mono(self, mono: int, c=None):
        F = self.ring.ctx
        if c is None:
            return Poly(self.ring, {m + mono: x for m, x in self.terms.items()})
        red = F.reduce
        return Poly(self.ring, _clean({m + mono: red(x * c) for m, x in self.terms.items()}, F))

    def __mul__(self, other):
        if not isinstance(other, Poly):
            return self.scale(other)
        other = self._check(other)
        a, b = self.terms, other.terms
        if not a or not b:
            return self.ring.zero()
        if self.degree() + other.degree() > MAX_EXP:
            raise PolyError("degree overflow")
        if len(a) < len(b):
            a, b = b, a
        if len(b) == 1:
            (mb, cb), = b.items()
            return Poly(self.ring, a).mul_mono(mb, cb)
        out = {}
        get = out.get
        bi = list(b.items())
        for ma, ca in a.items():
            for mb, cb in bi:
                m = ma + mb
                out[m] = get(m, 0) + ca * cb
        return Poly(self.ring, _clean(out, self.ring.ctx))

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            raise PolyError("negative power of a polynomial")
        if len(self.terms) == 1:
            (m, c), = self.terms.items()
            R = self.ring
            return Poly(R, {R.pack([e * n for e in R.unpack(m)]): R.ctx.reduce(c ** n)})
        result = self.ring.one()
        base = self
        while n:
            if n & 1:
                result = result * base
            n >>= 1
            if n:
                base = base * base
        return result

    def __eq__(self, other):
        if isinstance(other, Poly):
            return self.terms == other.terms and self.ring == other.ring
        try:
            return self.terms == self.ring.const(other).terms
        except Exception:
            return NotImplemented

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self.terms.items()))
        return self._hash

    # division
    def divmod(self, other: "Poly"):
        """Multivariate division by a single divisor in graded-lex order."""
        other = self._check(other)
        if not other.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        R = self.ring
        F = R.ctx
        red = F.reduce
        lm_b = other.lm()
        inv_lc = F.inv(other.terms[lm_b])
        rest_b = [(m - lm_b, c) for m, c in other.terms.items() if m != lm_b]
        work = dict(self.terms)
        heap = [-m for m in work]
        heapq.heapify(heap)
        q = {}
        r = {}
        divides = R.mdivides
        while heap:
            m = -heapq.heappop(heap)
            while heap and -heap[0] == m:
                heapq.heappop(heap)
            c = work.pop(m, None)
            if c is None:
                continue
            c = red(c)
            if not c:
                continue
            if divides(lm_b, m):
                f = red(c * inv_lc)
                qm = m - lm_b
                q[qm] = f
                for mb, cb in rest_b:
                    mm = qm + lm_b + mb
                    if mm in work:
                        work[mm] = work[mm] - f * cb
                    else:
                        work[mm] = -f * cb
                        heapq.heappush(heap, -mm)
            else:
                r[m] = c
        return Poly(R, q), Poly(R, r)

    def exquo(self, other: "Poly") -> "Poly":
        if other.is_const():
            c = other.const_value()
            if not c:
                raise ZeroDivisionError("division by the zero polynomial")
            return self.scale(self.ring.ctx.inv(c))
        q, r = self.divmod(other)
        if r.terms:
            raise PolyError("inexact division")
        return q

    def divides(self, other: "Poly") -> bool:
        if not self.terms:
            return not other.terms
        return not other.divmod(self)[1].terms

    def monic(self):
        if not self.terms:
            return self
        return self.scale(self.ring.ctx.inv(self.lc()))

    # variable-wise views
    def coeffs_in(self, i: int):
        """Dense list of coefficients (Polys free of x_i) as a polynomial in x_i."""
        R = self.ring
        s = R._shift[i]
        ds = R._degshift
        out = {}
        for m, c in self.terms.items():
            e = (m >> s) & _EMASK
            mm = m - (e << s) - (e << ds)
            out.setdefault(e, {})[mm] = c
        if not out:
            return []
        top = max(out)
        return [Poly(R, out.get(e, {})) for e in range(top + 1)]

    @staticmethod
    def from_coeffs_in(ring: Ring, i: int, coeffs):
        out = {}
        for e, p in enumerate(coeffs):
            if not p.terms:
                continue
            sh = ring.var_mono(i, e)
            for m, c in p.terms.items():
                out[m + sh] = c
        return Poly(ring, out)

    def permute(self, images) -> "Poly":
        """Rename x_i to x_{images[i]} (images is a permutation of range(n))."""
        R = self.ring
        n = R.n
        un = R.unpack
        pk = R.pack
        out = {}
        for m, c in self.terms.items():
            e = un(m)
            ne = [0] * n
            for i, ei in enumerate(e):
                if ei:
                    ne[images[i]] = ei
            out[pk(ne)] = c
        return Poly(R, out)

    def evaluate(self, values):
        """Evaluate at a full point (list of field elements)."""
        F = self.ring.ctx
        un = self.ring.unpack
        acc = F.zero
        for m, c in self.terms.items():
            t = c
            for v, e in zip(values, un(m)):
                if e:
                    t = t * v ** e
            acc = acc + t
        return F.reduce(acc)

    def subs(self, mapping: dict) -> "Poly":
        """Substitute polynomials for some variables (by index or name)."""
        R = self.ring
        mp = {}
        for k, v in mapping.items():
            i = k if isinstance(k, int) else R.index[k]
            mp[i] = v if isinstance(v, Poly) else R.const(v)
        un = R.unpack
        pk = R.pack
        powcache = {}

        def pw(i, e):
            key = (i, e)
            if key not in powcache:
                powcache[key] = mp[i] ** e
            return powcache[key]

        acc = R.zero()
        for m, c in self.terms.items():
            e = list(un(m))
            t = None
            for i in mp:
                if e[i]:
                    f = pw(i, e[i])
                    t = f if t is None else t * f
                    e[i] = 0
            base = Poly(R, {pk(e): c})
            acc = acc + (base if t is None else base * t)
        return acc

    def to_ring(self, target: Ring) -> "Poly":
        """Re-embed into a ring over the same field whose variables contain ours."""
        if target == self.ring:
            return self
        idx = [target.index[v] for v in self.ring.vars]
        un = self.ring.unpack
        out = {}
        for m, c in self.terms.items():
            e = [0] * target.n
            for i, ei in zip(idx, un(m)):
                e[i] = ei
            out[target.pack(e)] = c
        return Poly(target, out)

    def diff(self, v) -> "Poly":
        i = v if isinstance(v, int) else self.ring.index[v]
        R = self.ring
        F = R.ctx
        out = {}
        for m, c in self.terms.items():
            e = R.mexp(m, i)
            if e:
                out[m - R.var_mono(i)] = F.reduce(c * e)
        return Poly(R, _clean(out, F))

    def __repr__(self):
        from .parse import format_poly
        return format_poly(self)


def reduce_quadratic(p: Poly, v, r: Poly) -> Poly:
    """Normal form of ``p`` modulo v^2 = r, of degree <= 1 in v."""
    R = p.ring
    i = v if isinstance(v, int) else R.index[v]
    if r.degree_in(i) > 0:
        raise PolyError("relation involves the reduced variable")
    cs = p.coeffs_in(i)
    if len(cs) <= 2:
        return p
    even = R.zero()
    odd = R.zero()
    rp = R.one()
    for k in range(0, len(cs), 2):
        even = even + cs[k] * rp
        if k + 1 < len(cs):
            odd = odd + cs[k + 1] * rp
        rp = rp * r
    return even + odd * R.var(i)
