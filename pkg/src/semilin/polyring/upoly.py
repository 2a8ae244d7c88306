"""Dense univariate helpers over a field context.

Polynomials are lists of coefficients, lowest degree first, with no
trailing zeros (the zero polynomial is ``[]``).
"""
from __future__ import annotations


def trim(a):
    while a and not a[-1]:
        a.pop()
    return a


def add(a, b, F):
    n = max(len(a), len(b))
    out = []
    for i in range(n):
        x = a[i] if i < len(a) else F.zero
        y = b[i] if i < len(b) else F.zero
        out.append(F.reduce(x + y))
    return trim(out)


def neg(a, F):
    return [F.reduce(-c) for c in a]


def sub(a, b, F):
    return add(a, neg(b, F), F)


def scale(a, c, F):
    if not c:
        return []
    return trim([F.reduce(x * c) for x in a])


def mul(a, b, F):
    if not a or not b:
        return []
    out = [F.zero] * (len(a) + len(b) - 1)
    for i, x in enumerate(a):
        if not x:
            continue
        for j, y in enumerate(b):
            out[i + j] = out[i + j] + x * y
    return trim([F.reduce(c) for c in out])


def divmod_(a, b, F):
    if not b:
        raise ZeroDivisionError("polynomial division by zero")
    a = list(a)
    db = len(b) - 1
    lc_inv = F.inv(b[-1])
    if len(a) <= db:
        return [], trim(a)
    q = [F.zero] * (len(a) - db)
    for k in range(len(a) - 1, db - 1, -1):
        c = a[k]
        if not c:
            continue
        c = F.reduce(c * lc_inv)
        q[k - db] = c
        for j in range(db + 1):
            a[k - db + j] = F.reduce(a[k - db + j] - c * b[j])
    return trim(q), trim(a[:db])


def rem(a, b, F):
    return divmod_(a, b, F)[1]


def monic(a, F):
    if not a:
        return a
    return scale(a, F.inv(a[-1]), F)


def xgcd(a, b, F):
    """Return (g, s, t) with s*a + t*b = g; g is not normalized."""
    r0, r1 = trim(list(a)), trim(list(b))
    s0, s1 = [F.one], []
    t0, t1 = [], [F.one]
    while r1:
        q, r = divmod_(r0, r1, F)
        r0, r1 = r1, r
        s0, s1 = s1, sub(s0, mul(q, s1, F), F)
        t0, t1 = t1, sub(t0, mul(q, t1, F), F)
    return r0, s0, t0


def gcd(a, b, F):
    return monic(xgcd(a, b, F)[0], F)


def evaluate(a, x, F):
    acc = F.zero
    for c in reversed(a):
        acc = F.reduce(acc * x + c)
    return acc


def deriv(a, F):
    return trim([F.reduce(a[i] * i) for i in range(1, len(a))])


def pow_(a, n, F):
    out = [F.one]
    base = a
    while n:
        if n & 1:
            out = mul(out, base, F)
        base = mul(base, base, F)
        n >>= 1
    return out
