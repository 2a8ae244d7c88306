"""Reduced rational functions."""
from __future__ import annotations

from .gcd import gcd
from .poly import Poly, PolyError, Ring


class RatFunc:
    """num/den with gcd(num, den) = 1 and den monic in graded-lex order.

    Because the representation is canonical, equality is componentwise.
    """

    __slots__ = ("num", "den", "_hash")

    def __init__(self, num: Poly, den: Poly | None = None, _reduced: bool = False):
        R = num.ring
        if den is None:
            den = R.one()
            _reduced = True
        elif den.ring != R:
            raise PolyError("numerator and denominator live in different rings")
        if not den.terms:
            raise ZeroDivisionError("division by the zero polynomial")
        if not _reduced:
            if not num.terms:
                den = R.one()
            else:
                g = gcd(num, den)
                if not g.is_const():
                    num = num.exquo(g)
                    den = den.exquo(g)
        lc = den.lc()
        if lc != R.ctx.one:
            inv = R.ctx.inv(lc)
            num = num.scale(inv)
            den = den.scale(inv)
        self.num = num
        self.den = den
        self._hash = None

    # constructors
    @staticmethod
    def const(ring: Ring, c) -> "RatFunc":
        return RatFunc(ring.const(c))

    @staticmethod
    def var(ring: Ring, name) -> "RatFunc":
        return RatFunc(ring.var(name))

    @property
    def ring(self) -> Ring:
        return self.num.ring

    @property
    def ctx(self):
        return self.num.ring.ctx

    def _coerce(self, other) -> "RatFunc":
        if isinstance(other, RatFunc):
            if other.ring is not self.ring and other.ring != self.ring:
                raise PolyError("rational functions live in different rings")
            return other
        if isinstance(other, Poly):
            return RatFunc(other)
        return RatFunc(self.ring.const(other))

    def is_zero(self):
        return not self.num.terms

    def __bool__(self):
        return bool(self.num.terms)

    def is_poly(self):
        return self.den.is_const()

    def is_const(self):
        return self.den.is_const() and self.num.is_const()

    def const_value(self):
        return self.num.const_value()

    # arithmetic
    def __add__(self, other):
        o = self._coerce(other)
        if not o.num.terms:
            return self
        if not self.num.terms:
            return o
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_const() and d.is_const():
            return RatFunc(a + c, b, _reduced=True)
        if b == d:
            t = a + c
            g = gcd(t, b)
            if g.is_const():
                return RatFunc(t, b, _reduced=True)
            return RatFunc(t.exquo(g), b.exquo(g), _reduced=True)
        g = gcd(b, d)
        if g.is_const():
            return RatFunc(a * d + c * b, b * d, _reduced=True)
        b1 = b.exquo(g)
        d1 = d.exquo(g)
        t = a * d1 + c * b1
        if not t.terms:
            return RatFunc(t)
        g2 = gcd(t, g)
        if g2.is_const():
            return RatFunc(t, b1 * d, _reduced=True)
        return RatFunc(t.exquo(g2), b1 * d.exquo(g2), _reduced=True)

    __radd__ = __add__

    def __neg__(self):
        return RatFunc(-self.num, self.den, _reduced=True)

    def __sub__(self, other):
        return self + (-self._coerce(other))

    def __rsub__(self, other):
        return self._coerce(other) - self

    def __mul__(self, other):
        o = self._coerce(other)
        if not self.num.terms or not o.num.terms:
            return RatFunc(self.ring.zero())
        a, b, c, d = self.num, self.den, o.num, o.den
        if b.is_const() and d.is_const():
            return RatFunc(a * c)
        g1 = gcd(a, d)
        g2 = gcd(c, b)
        if not g1.is_const():
            a = a.exquo(g1)
            d = d.exquo(g1)
        if not g2.is_const():
            c = c.exquo(g2)
            b = b.exquo(g2)
        return RatFunc(a * c, b * d, _reduced=True)

    __rmul__ = __mul__

    def inv(self):
        if not self.num.terms:
            raise ZeroDivisionError("inverse of zero")
        return RatFunc(self.den, self.num, _reduced=True)

    def __truediv__(self, other):
        return self * self._coerce(other).inv()

    def __rtruediv__(self, other):
        return self._coerce(other) * self.inv()

    def __pow__(self, n: int):
        if n < 0:
            return self.inv() ** (-n)
        return RatFunc(self.num ** n, self.den ** n, _reduced=True)

    def __eq__(self, other):
        if not isinstance(other, RatFunc):
            try:
                other = self._coerce(other)
            except Exception:
                return NotImplemented
        return self.num == other.num and self.den == other.den

    def __hash__(self):
        if self._hash is None:
            self._hash = hash((self.num, self.den))
        return self._hash

    # actions
    def permute(self, images) -> "RatFunc":
        """x_i -> x_{images[i]} on ring variable indices; no gcd needed."""
        return RatFunc(self.num.permute(images), self.den.permute(images), _reduced=True)

    def subs(self, mapping: dict) -> "RatFunc":
        """Substitute rational functions for variables (by name or index)."""
        R = self.ring
        vals = {}
        for k, v in mapping.items():
            i = k if isinstance(k, int) else R.index[k]
            vals[i] = v if isinstance(v, RatFunc) else RatFunc(v) if isinstance(v, Poly) \
                else RatFunc.const(R, v)
        return _subs_poly(self.num, vals) / _subs_poly(self.den, vals)

    def to_ring(self, target: Ring) -> "RatFunc":
        return RatFunc(self.num.to_ring(target), self.den.to_ring(target), _reduced=True)

    def used_vars(self):
        return sorted(set(self.num.used_vars()) | set(self.den.used_vars()))

    def __repr__(self):
        from .parse import format_ratfunc
        return format_ratfunc(self)

    def __str__(self):
        return self.__repr__()


def _subs_poly(p: Poly, vals: dict) -> RatFunc:
    R = p.ring
    if not p.terms:
        return RatFunc(R.zero())
    # put everything over one denominator: P(n/d) = sum c * prod n_i^e_i d_i^(D_i - e_i) / prod d_i^D_i
    idx = sorted(vals)
    degs = {i: p.degree_in(i) for i in idx}
    num_pow = {}
    den_pow = {}
    for i in idx:
        v = vals[i]
        num_pow[i] = [R.one()]
        den_pow[i] = [R.one()]
        for _ in range(degs[i]):
            num_pow[i].append(num_pow[i][-1] * v.num)
            den_pow[i].append(den_pow[i][-1] * v.den)
    acc = R.zero()
    un = R.unpack
    for m, c in p.terms.items():
        e = list(un(m))
        t = R.one()
        for i in idx:
            t = t * num_pow[i][e[i]] * den_pow[i][degs[i] - e[i]]
            e[i] = 0
        acc = acc + t.mul_mono(R.pack(e), c)
    den = R.one()
    for i in idx:
        den = den * den_pow[i][degs[i]]
    return RatFunc(acc, den)


def apply_perm(f: RatFunc, sigma, binding: dict | None = None) -> RatFunc:
    """Replace each bound variable x_i by x_{sigma(i)}.

    ``binding`` maps variable names to point indices; by default the k-th
    ring variable is point k.  Unbound variables occurring in ``f`` are an
    error.
    """
    R = f.ring
    images = sigma.images if hasattr(sigma, "images") else tuple(sigma)
    if binding is None:
        binding = {v: i for i, v in enumerate(R.vars) if i < len(images)}
    inv_binding = {i: v for v, i in binding.items()}
    ring_images = list(range(R.n))
    for v, i in binding.items():
        if v not in R.index:
            continue
        if i >= len(images):
            raise PolyError(f"variable {v} bound to index {i} outside the permutation degree")
        j = images[i]
        if j not in inv_binding or inv_binding[j] not in R.index:
            raise PolyError(f"index {j} is not bound to a variable of the ring")
        ring_images[R.index[v]] = R.index[inv_binding[j]]
    bound = {R.index[v] for v in binding if v in R.index}
    for i in f.used_vars():
        if i not in bound:
            raise PolyError(f"unbound variable {R.vars[i]}")
    return f.permute(ring_images)
