"""Catalog of generator sets and rational-function identities, plus the
dihedral, A4 and Weierstrass checks."""
from __future__ import annotations

import json
import random
from dataclasses import dataclass, field
from importlib import resources

from .polyring import GF, QQ, Perm, RatFunc, SimpleExtension, parse_expr, reduce_quadratic, ring as make_ring
from .polyring.poly import Poly
from .report import row, skipped
from .socle import lucas


class IdentityFailure(AssertionError):
    def __init__(self, record, difference):
        super().__init__(f"identity {record.id} fails: lhs - rhs = {difference}")
        self.record = record
        self.difference = difference


class DegenerateInput(ValueError):
    pass


FIELDS = {"QQ": QQ}


@dataclass
class IdentityRecord:
    id: str
    symbols: list
    lhs: str
    rhs: str
    entry: str = ""


@dataclass
class FieldCatalogEntry:
    label: str
    field: str
    symbols: list
    generators: list
    identities: list = field(default_factory=list)


def load_catalog(path=None):
    if path is None:
        text = resources.files("semilin").joinpath("data/catalog.json").read_text()
    else:
        with open(path) as fh:
            text = fh.read()
    data = json.loads(text)
    out = {}
    for e in data["entries"]:
        recs = [IdentityRecord(r["id"], r.get("symbols", e["symbols"]), r["lhs"], r["rhs"], e["label"])
                for r in e.get("identities", [])]
        out[e["label"]] = FieldCatalogEntry(e["label"], e.get("field", "QQ"), e["symbols"],
                                            e.get("generators", []), recs)
    return out


def instantiate(text, symbols, ctx=QQ):
    """Parse with the symbols bound to x0, x1, ... in declaration order."""
    S = make_ring(ctx, tuple(symbols))
    f = parse_expr(text, S)
    T = make_ring(ctx, tuple(f"x{i}" for i in range(len(symbols))))
    # same number of variables, so packed monomials carry over unchanged
    return RatFunc(Poly(T, dict(f.num.terms)), Poly(T, dict(f.den.terms)), _reduced=True)


def verify_identity(rec: IdentityRecord, ctx=QQ):
    lhs = instantiate(rec.lhs, rec.symbols, ctx)
    rhs = instantiate(rec.rhs, rec.symbols, ctx)
    return lhs - rhs


def verify_identity_suite(label=None, catalog=None, strict=False):
    cat = catalog or load_catalog()
    labels = [label] if label else list(cat)
    rows = []
    for lab in labels:
        if lab not in cat:
            raise KeyError(f"unknown catalog label {lab!r}")
        entry = cat[lab]
        ctx = FIELDS[entry.field]
        for rec in entry.identities:
            diff = verify_identity(rec, ctx)
            if strict and not diff.is_zero():
                raise IdentityFailure(rec, diff)
            rows.append(row("identity", {"entry": lab, "id": rec.id}, diff.is_zero(),
                            None if diff.is_zero() else f"difference {diff}"))
    return rows


# Moebius substitutions ------------------------------------------------------

def substitute_all(f: RatFunc, image):
    """Apply u -> image(u) simultaneously to every variable u of the ring."""
    R = f.ring
    return f.subs({i: image(RatFunc(R.var(i))) for i in range(R.n)})


def random_ratfunc(R, rng, terms=3, deg=2):
    def poly():
        d = {}
        for _ in range(terms):
            d[tuple(rng.randint(0, deg) for _ in range(R.n))] = R.ctx.random_element(rng)
        p = R.from_dict(d)
        return p if p.terms else R.one()
    return RatFunc(poly(), poly())


def _transpositions(n):
    return [Perm.transposition(n, a, a + 1) for a in range(n - 1)]


def dihedral_check(n: int, a: int, p: int = 0, truncation: int = 4, seed: int = 0):
    """The involution u -> a/u on k(x0, ..., x_{m-1})."""
    if n < 3:
        raise ValueError("n must be at least 3")
    F = GF(p) if p else QQ
    if not F.coerce(a):
        raise DegenerateInput("a must be nonzero in the field")
    R = make_ring(F, tuple(f"x{i}" for i in range(truncation)))
    A = RatFunc.const(R, a)

    def iota(f):
        return substitute_all(f, lambda u: A / u)

    x, u = RatFunc(R.var(0)), RatFunc(R.var(1))
    params = {"n": n, "a": a, "p": p}
    rows = []
    rows.append(row("dihedral.power", params, iota(x ** n) == A ** n * x ** (-n)))
    rows.append(row("dihedral.ratio", params, iota(u / x) == x / u))
    if p == 2:
        rows.append(skipped("dihedral.eigen", params, "char-2 exception: the trace sequence does not split"))
    else:
        v = x ** n - A ** n * x ** (-n)
        rows.append(row("dihedral.eigen", params, iota(v) == -v))
    rng = random.Random(seed)
    f = random_ratfunc(R, rng)
    rows.append(row("dihedral.involution", params, iota(iota(f)) == f and iota(iota(x)) == x))
    ok = all(iota(f.permute(g.images)) == iota(f).permute(g.images) for g in _transpositions(truncation))
    rows.append(row("dihedral.commutes", params, ok))
    return rows


# A4 ------------------------------------------------------------------------

def a4_field():
    """Q[w]/(w^4 - w^2 + 1): w is a primitive 12th root of unity."""
    E = SimpleExtension(QQ, [1, 0, -1, 0, 1], "w")
    w = E.gen()
    return E, w ** 3, w ** 2 - E.one


def _mat_mul(A, B):
    return [[A[i][0] * B[0][j] + A[i][1] * B[1][j] for j in range(2)] for i in range(2)]


def a4_eigen_check(truncation: int = 4, seed: int = 0):
    E, i, zeta = a4_field()
    rows = []
    pres = (i * i == -E.one) and (zeta * zeta + zeta + E.one == E.zero)
    rows.append(row("a4.presentation", {}, pres))
    if not pres:
        return rows
    M = [[E.one, i], [E.one, -i]]
    M3 = _mat_mul(_mat_mul(M, M), M)
    scalar = M3[0][1] == E.zero and M3[1][0] == E.zero and M3[0][0] == M3[1][1]
    rows.append(row("a4.moebius_cube", {}, scalar, None, {"cube_diagonal": E.fmt(M3[0][0])}))
    R = make_ring(E, tuple(f"x{k}" for k in range(truncation)))
    I = RatFunc.const(R, i)
    Z = RatFunc.const(R, zeta)

    def theta(f):
        return substitute_all(f, lambda u: (u + I) / (u - I))

    x = RatFunc(R.var(0))
    rows.append(row("a4.order3", {}, theta(theta(theta(x))) == x and theta(x) != x))
    one = RatFunc(R.one())
    v1 = (x ** 2 - one) ** 2 / (4 * x ** 2) - 4 * Z * x ** 2 / (x ** 2 + one) ** 2 \
        - (x ** 2 + one) ** 2 / (Z * (x ** 2 - one) ** 2)
    v2 = (x ** 2 - one) ** 2 / (4 * x ** 2) - 4 * x ** 2 / (Z * (x ** 2 + one) ** 2) \
        - Z * (x ** 2 + one) ** 2 / (x ** 2 - one) ** 2
    roots = {"1": one, "zeta": Z, "zeta^2": Z * Z}
    for name, v in (("v1", v1), ("v2", v2)):
        r = theta(v) / v
        hit = next((k for k, c in roots.items() if r == c), None)
        rows.append(row("a4.eigenratio", {"vector": name}, hit is not None, hit or f"ratio {r}"))
    # the chain (x - 1/x) -> -4/(x + 1/x) -> -2 (x + 1/x)/(x - 1/x)
    step1 = I * theta(x - one / x) == -4 / (x + one / x)
    step2 = theta(-4 / (x + one / x)) == -2 * (x + one / x) / (x - one / x)
    rows.append(row("a4.chain", {"step": 1}, step1))
    rows.append(row("a4.chain", {"step": 2}, step2))
    f = random_ratfunc(R, random.Random(seed), terms=2, deg=1)
    ok = all(theta(f.permute(g.images)) == theta(f).permute(g.images) for g in _transpositions(truncation))
    rows.append(row("a4.commutes", {}, ok))
    return rows


# Weierstrass addition ---------------------------------------------------------

def addition_formula(gx, hx, gy, hy, a):
    """W and W' for the sum of two points on h^2 = 4 g^3 + 2 a g + b."""
    if (gx - gy).is_zero():
        raise DegenerateInput("g_x = g_y is a pole of the addition formula")
    d = gx - gy
    s = hx + hy
    W = (s / (2 * d)) ** 2 - gx - gy
    Wp = (s / 2) * ((d * (6 * gx ** 2 + a) - s * hx) / d ** 3) - hx
    return W, Wp


def elliptic_addition_check(specialize=None):
    """Clear denominators of W'^2 - (4W^3 + 2aW + b) and reduce modulo
    hx^2, hy^2 = 4g^3 + 2ag + b in both orders; both must give zero.

    ``specialize``: optional (a, b) integers."""
    if specialize is None:
        R = make_ring(QQ, ("gx", "hx", "gy", "hy", "a", "b"))
        a, b = RatFunc(R.var("a")), RatFunc(R.var("b"))
    else:
        R = make_ring(QQ, ("gx", "hx", "gy", "hy"))
        a, b = RatFunc.const(R, specialize[0]), RatFunc.const(R, specialize[1])
    gx, hx, gy, hy = (RatFunc(R.var(v)) for v in ("gx", "hx", "gy", "hy"))
    W, Wp = addition_formula(gx, hx, gy, hy, a)
    E = Wp ** 2 - (4 * W ** 3 + 2 * a * W + b)
    d = gx - gy
    N = E * (64 * d ** 6)
    params = {"a": "symbolic" if specialize is None else specialize[0],
              "b": "symbolic" if specialize is None else specialize[1]}
    if not N.is_poly():
        return row("elliptic_addition", params, False, "cleared expression still has a denominator")
    num = N.num
    rel = {v: (4 * g ** 3 + 2 * a * g + b).num for v, g in (("hx", gx), ("hy", gy))}
    r1 = reduce_quadratic(reduce_quadratic(num, "hx", rel["hx"]), "hy", rel["hy"])
    r2 = reduce_quadratic(reduce_quadratic(num, "hy", rel["hy"]), "hx", rel["hx"])
    ok = r1.is_zero() and r2.is_zero()
    return row("elliptic_addition", params, ok,
               None if ok else f"remainders {len(r1)} and {len(r2)} terms",
               {"numerator_terms": len(num), "confluent": r1 == r2})


def lucas_exception_check(p: int, t=None):
    if t is None:
        ts = list(range(1, p))
    else:
        if not 0 < t < p:
            raise ValueError("t must satisfy 0 < t < p")
        ts = [t]
    bad = [s for s in ts if lucas(p, s, p) != 0]
    return row("lucas_exception", {"p": p, "t": t if t is not None else f"1..{p - 1}"}, not bad,
               None if not bad else f"C({p},{bad[0]}) is a unit mod {p}")
