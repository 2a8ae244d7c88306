"""Characteristic-p filtration tools: Lucas residues, divided powers, the
digit-sum filtration and the socle congruence for x/(x - y)."""
from __future__ import annotations

import random
from dataclasses import dataclass
from math import comb

import gmpy2

from .polyring import GF, QQ, Perm, RatFunc, ring as make_ring
from .polyring.linalg import _const_rref
from .report import row
from .semimod import TruncatedField, embed


class SocleError(ValueError):
    pass


class TermBudgetExceeded(SocleError):
    pass


def _check_prime(p):
    if p < 2 or not gmpy2.is_prime(p):
        raise SocleError(f"{p} is not prime")


def digits(n: int, p: int):
    out = []
    while n:
        n, r = divmod(n, p)
        out.append(r)
    return out


def digit_sum(n: int, p: int) -> int:
    """Base-p digit sum; for p = 0 the degree itself plays this role."""
    if p == 0:
        return n
    return sum(digits(n, p))


def lucas(n: int, m: int, p: int) -> int:
    """C(n, m) mod p as the product of digitwise binomials."""
    _check_prime(p)
    if m < 0 or n < 0 or m > n:
        return 0
    r = 1
    while n or m:
        n, a = divmod(n, p)
        m, b = divmod(m, p)
        if b > a:
            return 0
        r = r * comb(a, b) % p
    return r


def succeq(n: int, m: int, p: int) -> bool:
    """n dominates m: every base-p digit of m is at most that of n."""
    if p == 0:
        return 0 <= m <= n
    while n or m:
        n, a = divmod(n, p)
        m, b = divmod(m, p)
        if b > a:
            return False
    return True


def binom_mod(n, m, p):
    if p == 0:
        return comb(n, m) if 0 <= m <= n else 0
    return lucas(n, m, p)


# divided powers -------------------------------------------------------------

class DOperator:
    """sum_i a_i D^(i), truncated after order d."""

    def __init__(self, p: int, coeffs, ctx=None):
        if p:
            _check_prime(p)
        self.p = p
        self.ctx = ctx or (GF(p) if p else QQ)
        c = [self.ctx.coerce(a) for a in coeffs]
        self.coeffs = tuple(c)

    @property
    def order(self):
        return len(self.coeffs) - 1

    @classmethod
    def D(cls, i: int, p: int, order: int, ctx=None):
        c = [0] * (order + 1)
        if i <= order:
            c[i] = 1
        return cls(p, c, ctx)

    @classmethod
    def identity(cls, p, order, ctx=None):
        return cls.D(0, p, order, ctx)

    def __eq__(self, other):
        return isinstance(other, DOperator) and (self.p, self.coeffs) == (other.p, other.coeffs)

    def __repr__(self):
        terms = [f"{self.ctx.fmt(a)}*D({i})" for i, a in enumerate(self.coeffs) if a]
        return " + ".join(terms) or "0"

    def is_zero(self):
        return not any(self.coeffs)

    def __add__(self, other):
        self._compat(other)
        return DOperator(self.p, [a + b for a, b in zip(self.coeffs, other.coeffs)], self.ctx)

    def _compat(self, other):
        if self.p != other.p:
            raise SocleError("characteristic mismatch")
        if self.order != other.order:
            raise SocleError("truncation mismatch")

    def __mul__(self, other):
        return compose_d(self, other)

    def __pow__(self, k):
        r = DOperator.identity(self.p, self.order, self.ctx)
        for _ in range(k):
            r = r * self
        return r

    def apply_monomial(self, n: int):
        """Image of x^n as {exponent: coefficient}."""
        out = {}
        F = self.ctx
        for i, a in enumerate(self.coeffs):
            if a and i <= n:
                c = F.reduce(a * F.from_int(comb(n, i)))
                if c:
                    out[n - i] = c
        return out


def compose_d(A: DOperator, B: DOperator) -> DOperator:
    """Truncated product using D^(i) D^(j) = C(i+j, i) D^(i+j)."""
    A._compat(B)
    F = A.ctx
    d = A.order
    out = [F.zero] * (d + 1)
    for i, a in enumerate(A.coeffs):
        if not a:
            continue
        for j, b in enumerate(B.coeffs):
            if b and i + j <= d:
                out[i + j] = F.reduce(out[i + j] + a * b * F.from_int(comb(i + j, i)))
    return DOperator(A.p, out, F)


def compose_by_action(A: DOperator, B: DOperator, n: int):
    """(A o B)(x^n) computed by applying B then A."""
    out = {}
    F = A.ctx
    for e, c in B.apply_monomial(n).items():
        for e2, c2 in A.apply_monomial(e).items():
            out[e2] = F.reduce(out.get(e2, F.zero) + c * c2)
    return {k: v for k, v in out.items() if v}


# polynomials in a distinguished point variable x ---------------------------

class XPoly:
    """sum_n a_n x^n with coefficients a_n in a truncated field K (free of x).

    x stands for the point 0 of the truncation; a permutation sends x to
    x + (x_{sigma(0)} - x_0), the shift lying in the difference subfield.
    """

    def __init__(self, field: TruncatedField, n: int, coeffs: dict):
        self.field = field
        self.n = n
        self.coeffs = {e: embed(c, n) for e, c in coeffs.items() if not c.is_zero()}

    def __eq__(self, other):
        return isinstance(other, XPoly) and self.coeffs == other.coeffs

    def __repr__(self):
        return " + ".join(f"({c})*x^{e}" for e, c in sorted(self.coeffs.items())) or "0"

    @property
    def degree(self):
        return max(self.coeffs, default=-1)

    def act(self, g: Perm) -> "XPoly":
        R = self.field.ring(self.n)
        delta = RatFunc(R.var(g.images[0]) - R.var(0))
        out = {}
        for e, a in self.coeffs.items():
            a = a.permute(g.images)
            # (x + delta)^e = sum_j C(e, j) delta^(e-j) x^j
            for j in range(e + 1):
                c = a * RatFunc.const(R, comb(e, j)) * delta ** (e - j)
                out[j] = out[j] + c if j in out else c
        return XPoly(self.field, self.n, out)

    def to_ratfunc(self):
        R = self.field.ring(self.n)
        x = RatFunc(R.var(0))
        acc = RatFunc(R.zero())
        for e, a in self.coeffs.items():
            acc = acc + a * x ** e
        return acc


def apply_d(i: int, f):
    """D^(i) on a polynomial in x: x^n -> C(n, i) x^(n-i).

    ``f`` is an XPoly, or a dict {exponent: coefficient}."""
    if i < 0:
        raise SocleError("i must be nonnegative")
    if isinstance(f, XPoly):
        R = f.field.ring(f.n)
        out = {}
        for e, a in f.coeffs.items():
            if e >= i:
                out[e - i] = a * RatFunc.const(R, comb(e, i))
        return XPoly(f.field, f.n, out)
    return {e - i: c * comb(e, i) for e, c in f.items() if e >= i and c * comb(e, i)}


# filtration -------------------------------------------------------------------

@dataclass(frozen=True)
class FiltLevel:
    p: int
    s: int
    d: int
    exponents: tuple

    def downward_closed(self) -> bool:
        ex = set(self.exponents)
        return all(m in ex for n in ex for m in range(n + 1) if succeq(n, m, self.p))


def phi_basis(p: int, s: int, d: int) -> FiltLevel:
    if p:
        _check_prime(p)
        ex = tuple(n for n in range(d + 1) if digit_sum(n, p) <= s)
    else:
        ex = tuple(range(min(s, d) + 1))
    return FiltLevel(p, s, d, ex)


# socle congruence -----------------------------------------------------------

TERM_BUDGET = 20000


def socle_congruence_check(n: int, p: int, sigma: Perm, truncation: int | None = None):
    """Expand (A t + B)^n for sigma(x/(x-y)) = A t + B over F_p and check that
    only exponents m below n in the Lucas order survive, with a drop in digit
    sum, and with coefficients lucas(n, m) A^m B^(n-m)."""
    _check_prime(p)
    m_ = truncation or sigma.degree
    if sigma.degree != m_ or m_ < 2:
        raise SocleError("sigma must act on the truncation, which needs two points")
    F = GF(p)
    R = _socle_ring(F, m_)
    x, y = R.var(0), R.var(1)
    xs, ys = R.var(sigma.images[0]), R.var(sigma.images[1])
    NA = x - y
    NB = xs - x
    D = xs - ys
    # (NA t + NB)^n by repeated multiplication in t
    coeffs = {0: R.one()}
    for _ in range(n):
        nxt = {}
        for e, c in coeffs.items():
            for de, f in ((1, NA), (0, NB)):
                if f.is_zero():
                    continue
                nxt[e + de] = nxt[e + de] + c * f if e + de in nxt else c * f
        coeffs = {e: c for e, c in nxt.items() if not c.is_zero()}
        if sum(len(c) for c in coeffs.values()) > TERM_BUDGET:
            raise TermBudgetExceeded(f"expansion exceeds {TERM_BUDGET} terms")
    params = {"n": n, "p": p, "sigma": list(sigma.images)}
    problems = []
    if coeffs.get(n, R.zero()) != NA ** n:
        problems.append(f"coefficient of t^{n} is not A^{n}")
    for m, c in sorted(coeffs.items()):
        if m == n:
            continue
        if not succeq(n, m, p) or not digit_sum(m, p) < digit_sum(n, p):
            problems.append(f"term t^{m} survives without a digit-sum drop")
        want = (NA ** m) * (NB ** (n - m)) * R.const(lucas(n, m, p))
        if c != want:
            problems.append(f"coefficient of t^{m} differs from the Lucas prediction")
    for m in range(n):
        if m not in coeffs and lucas(n, m, p) and not NB.is_zero():
            problems.append(f"t^{m} vanished although C({n},{m}) is a unit")
    A = RatFunc(NA, D)
    B = RatFunc(NB, D)
    return row("socle_congruence", params, not problems,
               "; ".join(problems) or None,
               dims={"terms": sorted(coeffs), "A_is_one": A == RatFunc(R.one()), "B_is_zero": B.is_zero()})


_SOCLE_RINGS = {}


def _socle_ring(F, m):
    key = (F, m)
    if key not in _SOCLE_RINGS:
        _SOCLE_RINGS[key] = make_ring(F, tuple(f"x{i}" for i in range(m)))
    return _SOCLE_RINGS[key]


def socle_grid(ps=(2, 3), max_n=16, truncation=4):
    from itertools import permutations
    rows = []
    for p in ps:
        for img in permutations(range(truncation)):
            sigma = Perm(img)
            for n in range(1, max_n + 1):
                rows.append(socle_congruence_check(n, p, sigma, truncation))
    return rows


# fixed vectors of K_b[x] modulo K_b ------------------------------------------

def fixed_space_dim(p: int, n: int, d: int):
    """Dimension of the space of f = sum_{m=1}^{d-1} c_m x^m, c_m constants,
    with sigma(f) - f in K_b for every generating transposition of S_n.

    Returns (dimension, basis exponent vectors)."""
    F = GF(p) if p else QQ
    K = TruncatedField(F, "differences")
    R = K.ring(n)
    gens = [Perm.transposition(n, a, a + 1) for a in range(n - 1)]
    cols = list(range(1, d))
    # rows: (generator, power of x >= 1, monomial of the coefficient)
    conds = {}
    for k, m in enumerate(cols):
        f = XPoly(K, n, {m: RatFunc(R.one())})
        for gi, g in enumerate(gens):
            diff = f.act(g)
            for j, c in diff.coeffs.items():
                if j == 0:
                    continue
                c = c - (RatFunc(R.one()) if j == m else RatFunc(R.zero()))
                if c.is_zero():
                    continue
                if not c.is_poly():
                    raise SocleError("unexpected denominator")
                for mono, a in c.num.terms.items():
                    conds.setdefault((gi, j, mono), {})[k] = a
            if m not in diff.coeffs:
                conds.setdefault((gi, m, 0), {})[k] = F.from_int(-1)
    A = [[r.get(k, F.zero) for k in range(len(cols))] for r in conds.values()]
    piv = _const_rref(F, A, len(cols)) if A else []
    free = [k for k in range(len(cols)) if k not in piv]
    basis = []
    for f in free:
        v = [F.zero] * len(cols)
        v[f] = F.from_int(1)
        for i, c in enumerate(piv):
            v[c] = F.reduce(-A[i][f])
        basis.append({cols[k]: v[k] for k in range(len(cols)) if v[k]})
    return len(free), basis


# Frobenius -----------------------------------------------------------------

def frobenius_check(p: int, trials: int = 20, nvars: int = 3, seed: int = 0):
    _check_prime(p)
    F = GF(p)
    R = make_ring(F, tuple(f"x{i}" for i in range(nvars)))
    rng = random.Random(seed)
    for _ in range(trials):
        f = _random_poly(R, rng)
        g = _random_poly(R, rng)
        if (f + g) ** p != f ** p + g ** p:
            return False, (f, g)
    return True, None


def _random_poly(R, rng, nterms=4, maxdeg=3):
    d = {}
    for _ in range(nterms):
        e = tuple(rng.randint(0, maxdeg) for _ in range(R.n))
        d[e] = R.ctx.random_element(rng)
    return R.from_dict(d)


def pth_power_shift_check(p: int, n: int, sigma: Perm, coeffs):
    """For Q = sum a_i x^(p^i): sigma(Q) - Q = sum a_i (x^sigma - x)^(p^i), and
    the difference is translation invariant (so it lies in the difference field)."""
    _check_prime(p)
    F = GF(p)
    R = make_ring(F, tuple(f"x{i}" for i in range(n)) + ("c",))
    x = R.var(0)
    xs = R.var(sigma.images[0])
    Q = R.zero()
    rhs = R.zero()
    for i, a in enumerate(coeffs):
        Q = Q + R.const(a) * x ** (p ** i)
        rhs = rhs + R.const(a) * (xs - x) ** (p ** i)
    lhs = Q.permute(tuple(sigma.images) + (n,)) - Q
    if lhs != rhs:
        return False
    c = R.var(n)
    shifted = lhs.subs({i: R.var(i) + c for i in range(n)})
    return shifted == lhs
