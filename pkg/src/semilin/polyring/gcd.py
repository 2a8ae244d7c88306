"""Multivariate GCD over a field.

The general path views both inputs as univariate in a main variable with
polynomial coefficients, splits off contents recursively and runs the
subresultant PRS on the primitive parts.  Several cheap exits come first
since most gcds met in rational-function arithmetic are trivial.
"""
from __future__ import annotations

import random

from . import upoly
from .poly import Poly


def _mono_content(p: Poly):
    R = p.ring
    it = iter(p.terms)
    low = list(R.unpack(next(it)))
    for m in it:
        e = R.unpack(m)
        for i in range(R.n):
            if e[i] < low[i]:
                low[i] = e[i]
    return low


def _strip_mono(p: Poly, exps):
    R = p.ring
    mono = R.pack(exps)
    if not mono:
        return p
    return Poly(R, {m - mono: c for m, c in p.terms.items()})


def _trim(cs):
    while cs and not cs[-1].terms:
        cs.pop()
    return cs


def _content(cs, R):
    g = R.zero()
    for c in cs:
        if c.terms:
            g = gcd(g, c)
            if g.is_const():
                return R.one()
    return g


def _prem(A, B, R):
    dB = len(B) - 1
    lcB = B[-1]
    Rm = list(A)
    e = len(A) - len(B) + 1
    while Rm and len(Rm) - 1 >= dB:
        lcR = Rm[-1]
        shift = len(Rm) - 1 - dB
        new = [c * lcB for c in Rm[:-1]]
        for j in range(dB):
            new[shift + j] = new[shift + j] - lcR * B[j]
        Rm = _trim(new)
        e -= 1
    if e > 0 and Rm:
        f = lcB ** e
        Rm = [c * f for c in Rm]
    return Rm


def _subresultant_pp(A, B, R):
    """gcd of two primitive univariate polynomials (coefficient lists), up to unit."""
    if len(A) < len(B):
        A, B = B, A
    g = R.one()
    h = R.one()
    while True:
        delta = len(A) - len(B)
        Rm = _prem(A, B, R)
        if not Rm:
            break
        if len(Rm) == 1:
            return [R.one()]
        A = B
        div = g * h ** delta
        B = [c.exquo(div) for c in Rm]
        g = A[-1]
        if delta == 0:
            pass
        elif delta == 1:
            h = g
        else:
            h = (g ** delta).exquo(h ** (delta - 1))
    cont = _content(B, R)
    return [c.exquo(cont) for c in B]


def _coprime_by_specialization(a: Poly, b: Poly, common) -> bool:
    """True if gcd(a, b) is certainly constant.

    If deg_x gcd > 0 then, at any point where lc_x(a) does not vanish, the
    specialized univariate gcd also has positive degree.  So a constant
    specialized gcd for every shared variable proves coprimality.
    """
    R = a.ring
    F = R.ctx
    rng = random.Random(len(a.terms) * 7919 + len(b.terms))
    small = F.characteristic and F.characteristic < 50
    for x in common:
        ca = a.coeffs_in(x)
        cb = b.coeffs_in(x)
        ok = False
        for _ in range(3):
            if small:
                pt = [F.random_element(rng) for _ in range(R.n)]
            else:
                pt = [F.from_int(rng.randint(-97, 97)) for _ in range(R.n)]
            ua = upoly.trim([c.evaluate(pt) for c in ca])
            if len(ua) != len(ca):
                continue
            ub = upoly.trim([c.evaluate(pt) for c in cb])
            if not ub:
                continue
            g = upoly.xgcd(ua, ub, F)[0]
            if len(g) == 1:
                ok = True
            break
        if not ok:
            return False
    return True


def gcd(a: Poly, b: Poly) -> Poly:
    """Monic gcd (graded-lex leading coefficient 1); gcd(0, 0) = 0."""
    R = a.ring
    if not a.terms:
        return b.monic()
    if not b.terms:
        return a.monic()
    if a.is_const() or b.is_const():
        return R.one()
    la = _mono_content(a)
    lb = _mono_content(b)
    mono = [min(x, y) for x, y in zip(la, lb)]
    a = _strip_mono(a, la)
    b = _strip_mono(b, lb)
    mono_p = Poly(R, {R.pack(mono): R.ctx.one})
    if a.is_const() or b.is_const():
        return mono_p
    g = _gcd_nomono(a, b)
    return (g * mono_p).monic()


def _gcd_nomono(a: Poly, b: Poly) -> Poly:
    R = a.ring
    if len(a.terms) > len(b.terms):
        a, b = b, a
    if a.degree() <= b.degree() and a.divides(b):
        return a.monic()
    if b.degree() <= a.degree() and b.divides(a):
        return b.monic()
    va = set(a.used_vars())
    vb = set(b.used_vars())
    only_a = va - vb
    only_b = vb - va
    if only_a or only_b:
        if only_a:
            p, q, x = a, b, min(only_a)
        else:
            p, q, x = b, a, min(only_b)
        g = q
        for c in p.coeffs_in(x):
            if c.terms:
                g = gcd(g, c)
                if g.is_const():
                    return R.one()
        return g.monic()
    common = sorted(va & vb)
    if _coprime_by_specialization(a, b, common):
        return R.one()
    # main variable: the shared one with the smallest combined degree
    x = min(common, key=lambda i: (a.degree_in(i) + b.degree_in(i), i))
    A = a.coeffs_in(x)
    B = b.coeffs_in(x)
    ca = _content(A, R)
    cb = _content(B, R)
    c = gcd(ca, cb)
    if not ca.is_const():
        A = [t.exquo(ca) for t in A]
    if not cb.is_const():
        B = [t.exquo(cb) for t in B]
    G = _subresultant_pp(A, B, R)
    return (Poly.from_coeffs_in(R, x, G) * c).monic()


def lcm(a: Poly, b: Poly) -> Poly:
    if not a.terms or not b.terms:
        return a.ring.zero()
    return (a * b.exquo(gcd(a, b))).monic()
