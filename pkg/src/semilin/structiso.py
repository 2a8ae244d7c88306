"""Explicit isomorphisms checked as exact invertibility at a truncation,
plus partial fractions and a few counting identities."""
from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations, permutations, product
from math import comb, factorial

import gmpy2

from .polyring import Perm, Poly, QQ, RatFunc, det, ring as make_ring
from .polyring import upoly
from .polyring.fields import PrimeField, Rationals, SimpleExtension
from .polyring.linalg import _const_rref, rank as matrix_rank
from .report import row, skipped
from .semimod import (DirectSum, Injections, Product, SemiMap, SemiModule, StyleNotFaithful, Subsets,
                      TruncatedField)
from .symgroup import SubgroupSpec, coinduction_count, double_cosets

BOUND = 8


class StructIsoError(ValueError):
    pass


class FactorizationOutOfScope(StructIsoError):
    pass


class NotGalois(StructIsoError):
    pass


# partial fractions ----------------------------------------------------------

@dataclass
class PoleTerm:
    Q: list          # coefficients, lowest first, Q[0] == 1
    mult: int
    num: list        # deg num < deg Q


@dataclass
class PFDecomposition:
    ctx: object
    var: str
    laurent: dict = field(default_factory=dict)
    poles: list = field(default_factory=list)
    orbits: list | None = None

    def reassemble(self, R=None) -> RatFunc:
        R = R or make_ring(self.ctx, (self.var,))
        t = RatFunc(R.var(0))
        acc = RatFunc(R.zero())
        for n, c in self.laurent.items():
            acc = acc + RatFunc.const(R, c) * t ** n
        for pt in self.poles:
            acc = acc + RatFunc(_to_poly(R, pt.num), _to_poly(R, pt.Q) ** pt.mult)
        return acc

    def __str__(self):
        F = self.ctx
        parts = [f"{F.fmt(c)}*{self.var}^{n}" for n, c in sorted(self.laurent.items())]
        for pt in self.poles:
            den = f"({_fmt_u(pt.Q, F, self.var)})" + (f"^{pt.mult}" if pt.mult > 1 else "")
            parts.append(f"({_fmt_u(pt.num, F, self.var)})/{den}")
        return " + ".join(parts) or "0"


def _fmt_u(a, F, v):
    terms = []
    for i, c in enumerate(a):
        if not c:
            continue
        mono = "" if i == 0 else (v if i == 1 else f"{v}^{i}")
        coef = F.fmt(c)
        if mono and coef in ("1", "-1"):
            terms.append(("-" if coef == "-1" else "") + mono)
        else:
            terms.append(f"{coef}*{mono}" if mono else coef)
    return " + ".join(terms).replace("+ -", "- ") or "0"


def _to_poly(R, coeffs):
    return R.from_dict({(i,): c for i, c in enumerate(coeffs) if c})


def _from_poly(p: Poly):
    F = p.ring.ctx
    d = p.degree() if p.terms else -1
    out = [F.zero] * (d + 1)
    for m, c in p.terms.items():
        out[p.ring.unpack(m)[0]] = c
    return upoly.trim(out)


def _normalize_q(q, F):
    """Scale so that Q(0) = 1."""
    return upoly.scale(q, F.inv(q[0]), F)


def _roots(a, F):
    """Roots in the prime field or in Q (rational root test)."""
    if isinstance(F, PrimeField):
        return [F.reduce(x) for x in range(F.characteristic) if not upoly.evaluate(a, F.from_int(x), F)]
    if isinstance(F, Rationals):
        # clear denominators
        den = 1
        for c in a:
            den = den * int(gmpy2.mpq(c).denominator) // int(gmpy2.gcd(den, gmpy2.mpq(c).denominator))
        ints = [int(gmpy2.mpq(c) * den) for c in a]
        lo = next(i for i, c in enumerate(ints) if c)
        if lo > 0:
            out = [F.zero]
            ints = ints[lo:]
        else:
            out = []
        c0, cn = abs(ints[0]), abs(ints[-1])
        if max(c0, cn) > 10 ** 8:
            raise FactorizationOutOfScope("coefficients too large for the rational root test")
        cands = set()
        for p_ in _divisors(c0):
            for q_ in _divisors(cn):
                cands.add(Fraction(p_, q_))
                cands.add(Fraction(-p_, q_))
        for r in sorted(cands):
            x = F.coerce(gmpy2.mpq(r.numerator, r.denominator))
            if not upoly.evaluate(a, x, F):
                out.append(x)
        return out
    raise FactorizationOutOfScope(f"automatic factorization over {F!r} is not implemented")


def _divisors(n):
    n = abs(n)
    out = []
    i = 1
    while i * i <= n:
        if n % i == 0:
            out.extend({i, n // i})
        i += 1
    return out


def factor_small(a, F):
    """Irreducible factors (monic) with multiplicities, when every factor has
    degree <= 2 and the non-linear part is a single quadratic or, over a small
    prime field, a product of quadratics found by search."""
    a = upoly.monic(list(a), F)
    out = []
    for r in _roots(a, F):
        lin = [F.reduce(-r), F.one]
        m = 0
        while True:
            q, rem = upoly.divmod_(a, lin, F)
            if rem:
                break
            a, m = q, m + 1
        if m:
            out.append((lin, m))
    if len(a) <= 1:
        return out
    if len(a) == 3:
        return out + [(a, 1)]
    if F.characteristic == 0:
        # a power of a single quadratic: its squarefree part has degree 2
        sqf = upoly.divmod_(a, upoly.gcd(a, upoly.deriv(a, F), F), F)[0]
        sqf = upoly.monic(sqf, F)
        if len(sqf) == 3:
            m = 0
            while len(a) > 1:
                q, rem = upoly.divmod_(a, sqf, F)
                if rem:
                    break
                a, m = q, m + 1
            if len(a) <= 1:
                return out + [(sqf, m)]
    if isinstance(F, PrimeField) and F.characteristic <= 50:
        p = F.characteristic
        for b, c in product(range(p), repeat=2):
            quad = [F.reduce(c), F.reduce(b), F.one]
            m = 0
            while len(a) > 1:
                q, rem = upoly.divmod_(a, quad, F)
                if rem:
                    break
                a, m = q, m + 1
            if m:
                out.append((quad, m))
        if len(a) <= 1:
            return out
    raise FactorizationOutOfScope("denominator has an irreducible factor of degree > 2")


def partial_fraction(f, factors=None, action=None) -> PFDecomposition:
    """Decompose a univariate rational function as sum c_n t^n plus
    sum N / Q^m with Q irreducible, Q(0) = 1 and deg N < deg Q.

    ``factors``: optional list of irreducible denominators (skips factoring).
    ``action``: optional list of maps on coefficient lists; the Q's are then
    grouped into orbits of the group these maps generate.
    """
    R = f.ring
    if R.n != 1:
        raise StructIsoError("partial fractions need a univariate ring")
    F = R.ctx
    num = _from_poly(f.num)
    den = _from_poly(f.den)
    # strip powers of t from the denominator
    a = 0
    while den and not den[0]:
        den = den[1:]
        a += 1
    c = den[0]
    den = upoly.scale(den, F.inv(c), F)          # den(0) = 1
    num = upoly.scale(num, F.inv(c), F)
    if factors is None:
        fac = factor_small(den, F) if len(den) > 1 else []
    else:
        fac = []
        rest = list(den)
        for q in factors:
            q = [F.coerce(x) for x in q]
            m = 0
            while len(rest) > 1:
                qq, r = upoly.divmod_(rest, q, F)
                if r:
                    break
                rest, m = qq, m + 1
            if m:
                fac.append((q, m))
        if len(rest) > 1:
            raise FactorizationOutOfScope("supplied factors do not cover the denominator")
    for q, _ in fac:
        if not q[0]:
            raise StructIsoError("factor with Q(0) = 0 belongs to the Laurent part")
    fac = [(_normalize_q(q, F), m) for q, m in fac]
    out = PFDecomposition(F, R.vars[0])
    P = [F.one]
    for q, m in fac:
        P = upoly.mul(P, upoly.pow_(q, m, F), F)
    # num / (t^a P) = num*u/P + num*v/t^a with u t^a + v P = 1
    ta = [F.zero] * a + [F.one]
    if a:
        g, u, v = upoly.xgcd(ta, P, F)
        ginv = F.inv(g[0])
        u = upoly.scale(u, ginv, F)
        v = upoly.scale(v, ginv, F)
    else:
        u, v = [F.one], []
    low = upoly.mul(num, v, F)
    for i, x in enumerate(low):
        if x:
            out.laurent[i - a] = F.reduce(out.laurent.get(i - a, F.zero) + x)
    high = upoly.mul(num, u, F)
    q, r = upoly.divmod_(high, P, F) if len(P) > 1 else (high, [])
    for i, x in enumerate(q):
        if x:
            out.laurent[i] = F.reduce(out.laurent.get(i, F.zero) + x)
    out.laurent = {k: x for k, x in out.laurent.items() if x}
    # split r / P over the coprime prime powers
    for idx, (qj, mj) in enumerate(fac):
        Pj = upoly.pow_(qj, mj, F)
        other = [F.one]
        for k, (qk, mk) in enumerate(fac):
            if k != idx:
                other = upoly.mul(other, upoly.pow_(qk, mk, F), F)
        g, s, _ = upoly.xgcd(other, Pj, F)
        s = upoly.scale(s, F.inv(g[0]), F)
        rj = upoly.rem(upoly.mul(r, s, F), Pj, F)
        # Q-adic expansion rj = sum_k c_k Q^k
        k = 0
        while rj:
            rj, ck = upoly.divmod_(rj, qj, F)
            if ck:
                out.poles.append(PoleTerm(qj, mj - k, ck))
            k += 1
    out.poles.sort(key=lambda pt: (len(pt.Q), [str(x) for x in pt.Q], pt.mult))
    if action:
        out.orbits = _group_orbits([pt.Q for pt in out.poles], action, F)
    return out


def _group_orbits(qs, action, F):
    keys = []
    for q in qs:
        k = tuple(q)
        if k not in keys:
            keys.append(k)
    seen = {}
    orbits = []
    for k in keys:
        if k in seen:
            continue
        orb = [k]
        seen[k] = len(orbits)
        i = 0
        while i < len(orb):
            for g in action:
                img = upoly.trim([F.coerce(x) for x in g(list(orb[i]))])
                img = tuple(_normalize_q(img, F)) if img and img[0] else tuple(img)
                if img in keys and img not in seen:
                    seen[img] = len(orbits)
                    orb.append(img)
            i += 1
        orbits.append([list(x) for x in orb])
    return orbits


def negate_variable(coeffs):
    """t -> -t on a coefficient list."""
    return [c if i % 2 == 0 else -c for i, c in enumerate(coeffs)]


# Vandermonde wedge map ------------------------------------------------------

def _sort_sign(tup):
    """Sign of the permutation sorting ``tup`` (distinct entries)."""
    s = 1
    t = list(tup)
    for i in range(len(t)):
        for j in range(i + 1, len(t)):
            if t[i] > t[j]:
                s = -s
    return s


def vandermonde(field, n, pts):
    acc = RatFunc(field.ring(n).one())
    for i, j in combinations(range(len(pts)), 2):
        acc = acc * (field.x(n, pts[i]) - field.x(n, pts[j]))
    return acc


def wedge_module(field, N):
    """Lambda^N K<Psi>: basis [s_1]^...^[s_N] with s sorted; a permutation
    picks up the sign needed to re-sort."""

    def twist(g, e, n):
        R = field.ring(n)
        return RatFunc.const(R, _sort_sign([g.images[i] for i in e]))

    return SemiModule(field, Subsets(N), twist=twist, name=f"wedge{N}")


def vandermonde_wedge_check(N: int, n: int, style: str = "free", ctx=QQ):
    if not 1 <= N <= n or n > BOUND:
        raise StructIsoError("need 1 <= N <= n <= bound")
    K = TruncatedField(ctx, style)
    src = wedge_module(K, N)
    tgt = SemiModule(K, Subsets(N))
    rep = tuple(range(N))
    phi = SemiMap(src, tgt, {rep: {rep: vandermonde(K, N + 1, rep)}}, n0=N + 1)
    problems = []
    # the Vandermonde product changes sign exactly as the wedge does
    for order in permutations(rep):
        if vandermonde(K, N + 1, order) != vandermonde(K, N + 1, rep) * _sort_sign(order):
            problems.append(f"sign mismatch for ordering {order}")
    ok_eq, cert = phi.check_equivariance(n)
    if not ok_eq:
        problems.append(f"not equivariant at {cert}")
    rows, cols, M = phi.matrix(n)
    d = det(M)
    if d.is_zero():
        problems.append("determinant vanishes")
    dims = {"source": len(cols), "target": len(rows), "binom": comb(n, N)}
    if not len(rows) == len(cols) == comb(n, N):
        problems.append("dimension mismatch")
    return row("vandermonde_wedge", {"N": N, "n": n, "style": style}, not problems,
               "; ".join(problems) or None, dims)


# alpha map -----------------------------------------------------------------

def elementary_symmetric(field, n, k, pts):
    R = field.ring(n)
    acc = RatFunc(R.zero())
    for sub in combinations(pts, k):
        t = RatFunc(R.one())
        for i in sub:
            t = t * field.x(n, i)
        acc = acc + t
    return acc


def alpha_map(N: int, field=None, copies=None):
    """alpha: K<C(Psi,N)>^N + K<C(Psi,N+1)>^(N+1) -> K<C(Psi,N) x Psi>.

    Copies 0..N-1 are [S]_s for |S| = N, copies N..2N are [T]_s for |T| = N+1.
    ``copies`` restricts to a sub-sum (still injective)."""
    K = field or TruncatedField(QQ, "free")
    all_parts = [("S", s) for s in range(N)] + [("T", s) for s in range(N + 1)]
    chosen = list(range(len(all_parts))) if copies is None else sorted(copies)
    parts = [Subsets(N) if all_parts[c][0] == "S" else Subsets(N + 1) for c in chosen]
    src = SemiModule(K, DirectSum(*parts), name=f"alpha-src{N}")
    tgt = SemiModule(K, Product(Subsets(N), Subsets(1)), name=f"C{N}xPsi")
    n0 = N + 1
    images = {}
    for idx, c in enumerate(chosen):
        kind, s = all_parts[c]
        if kind == "S":
            S = tuple(range(N))
            img = {}
            for t in S:
                rest = [u for u in S if u != t]
                img[(S, (t,))] = elementary_symmetric(K, n0, s, rest)
        else:
            T = tuple(range(N + 1))
            img = {}
            for t in T:
                rest = tuple(u for u in T if u != t)
                img[(rest, (t,))] = elementary_symmetric(K, n0, s, rest)
        images[(idx, tuple(range(N if kind == "S" else N + 1)))] = img
    return SemiMap(src, tgt, images, n0=n0)


def alpha_map_check(N: int, n: int, ctx=QQ):
    if not N + 1 <= n <= BOUND:
        raise StructIsoError("need N + 1 <= n <= bound")
    phi = alpha_map(N, TruncatedField(ctx, "free"))
    problems = []
    ok_eq, cert = phi.check_equivariance(n)
    if not ok_eq:
        problems.append(f"not equivariant at {cert}")
    rows, cols, M = phi.matrix(n)
    want = N * comb(n, N) + (N + 1) * comb(n, N + 1)
    dims = {"source": len(cols), "target": len(rows), "formula": want, "n*C(n,N)": n * comb(n, N)}
    if not len(cols) == want == len(rows) == n * comb(n, N):
        problems.append("dimension count fails")
    r = matrix_rank(M)
    dims["rank"] = r
    if r != len(cols):
        problems.append(f"rank {r} < {len(cols)}")
    return row("alpha_map", {"N": N, "n": n}, not problems, "; ".join(problems) or None, dims)


# finite-index splitting -------------------------------------------------------

def _artin_matrix(elems, hs, n):
    return [[e.permute(h.images) for e in elems] for h in hs]


def fixed_field_basis(field: TruncatedField, n: int, T, max_degree: int = 3):
    """Greedy basis of K^U over K^H (U pointwise, H setwise stabilizer of T)
    among monomials in the T-generators; independence over K^H is tested by
    the rank of (h(e_j)) over K, h running over coset representatives of H/U."""
    T = sorted(T)
    hs = []
    for img in permutations(T):
        im = list(range(n))
        for a, b in zip(T, img):
            im[a] = b
        hs.append(Perm(im))
    target = len(hs)
    gens = field.generators(n, T)
    R = field.ring(n)
    cands = [RatFunc(R.one())]
    frontier = [RatFunc(R.one())]
    for _ in range(max_degree):
        frontier = [f * g for f in frontier for g in gens]
        cands.extend(frontier)
    basis = []
    for c in cands:
        trial = basis + [c]
        if matrix_rank(_artin_matrix(trial, hs, n)) == len(trial):
            basis = trial
            if len(basis) == target:
                return basis, hs
    raise StyleNotFaithful(f"found only {len(basis)} of {target} independent elements",
                           U=SubgroupSpec.pointwise(n, T), H=SubgroupSpec.setwise(n, T))


def rho_split_check(n: int, T, style: str = "ratios", ctx=QQ):
    """rho: K<G/H> (x)_{K^H} K^U -> K<G/U>, [H] (x) a -> sum_{h in H/U} h(a) [hU]."""
    T = tuple(sorted(T))
    t = len(T)
    if n > BOUND or any(x >= n for x in T):
        raise StructIsoError("bad truncation")
    K = TruncatedField(ctx, style)
    K.check_faithful(n, T)          # raises StyleNotFaithful with (U, H)
    basis, hs = fixed_field_basis(K, n, T)
    src = SemiModule(K, DirectSum(*[Subsets(t) for _ in basis]), name="G/H x K^U")
    tgt = SemiModule(K, Injections(t), name="G/U")
    images = {}
    for j, e in enumerate(basis):
        img = {}
        for h in hs:
            img[tuple(h.images[i] for i in T)] = e.permute(h.images)
        images[(j, T)] = img
    phi = SemiMap(src, tgt, images, n0=n)
    rows, cols, M = phi.matrix(n)
    r = matrix_rank(M)
    dims = {"source": len(cols), "target": len(rows), "index": len(hs), "rank": r}
    ok = len(rows) == len(cols) == r
    return row("rho_split", {"n": n, "T": list(T), "style": style, "field": repr(ctx)}, ok,
               None if ok else "not bijective", dims)


def rho_refusal_check(n: int, T, style: str, ctx):
    """Row that passes when the faithfulness precondition is (correctly) refused."""
    params = {"n": n, "T": sorted(T), "style": style, "field": repr(ctx), "expect": "refusal"}
    try:
        rho_split_check(n, T, style, ctx)
    except StyleNotFaithful as exc:
        return row("rho_split_refusal", params, True, f"refused: U={exc.U.kind}{sorted(exc.U.T)}, "
                   f"H={exc.H.kind}{sorted(exc.H.T)}")
    return row("rho_split_refusal", params, False, "construction was not refused")


# finite G-set bijections ----------------------------------------------------

def triple_split_check(n_left: int, s_right: int, truncation: int):
    """(I, J) -> (I & J, I - J, J - I) from C(Psi,n') x C(Psi,s) onto the
    disjoint union over j of ordered triples of disjoint sets of sizes
    (j, n'-j, s-j)."""
    n = truncation
    if n < n_left + s_right:
        raise StructIsoError("truncation must be at least n' + s")

    def f(I, J):
        I, J = set(I), set(J)
        return (tuple(sorted(I & J)), tuple(sorted(I - J)), tuple(sorted(J - I)))

    left = [(I, J) for I in combinations(range(n), n_left) for J in combinations(range(n), s_right)]
    images = [f(I, J) for I, J in left]
    # independent enumeration of the right-hand side
    rhs = set()
    for j in range(min(n_left, s_right) + 1):
        for A in combinations(range(n), j):
            rest = [x for x in range(n) if x not in A]
            for B in combinations(rest, n_left - j):
                rest2 = [x for x in rest if x not in B]
                for C in combinations(rest2, s_right - j):
                    rhs.add((A, B, C))
    formula = sum(factorial(n) // (factorial(j) * factorial(n_left - j) * factorial(s_right - j)
                                   * factorial(n - n_left - s_right + j))
                  for j in range(min(n_left, s_right) + 1))
    problems = []
    if len(set(images)) != len(left):
        problems.append("not injective")
    if set(images) != rhs:
        problems.append("image differs from the enumerated target")
    if len(rhs) != formula:
        problems.append("multinomial count mismatch")
    for a in range(n - 1):
        g = Perm.transposition(n, a, a + 1)
        for I, J in left:
            gI, gJ = g.act_tuple(I), g.act_tuple(J)
            lhs = f(gI, gJ)
            rhs_img = tuple(tuple(sorted(g.images[x] for x in part)) for part in f(I, J))
            if lhs != rhs_img:
                problems.append(f"not equivariant under {g}")
                break
    dims = {"left": len(left), "right": len(rhs), "multinomial": formula}
    return row("triple_split", {"n_left": n_left, "s": s_right, "truncation": n}, not problems,
               "; ".join(problems) or None, dims)


def coinduction_count_check(j: int, t: int, n: int):
    params = {"J": j, "T": t, "n": n}
    H = SubgroupSpec.pointwise(n, range(j))
    U = SubgroupSpec.pointwise(n, range(t))
    dcs = double_cosets(H, U)
    want = coinduction_count(j, t)
    labels = {d.label for d in dcs}
    dims = {"double_cosets": len(dcs), "formula": want, "labels": len(labels)}
    if n < j + t:
        return skipped("coinduction_count", params,
                       f"n < |J| + |T|: measured {len(dcs)}, formula {want}")
    ok = len(dcs) == want == len(labels)
    return row("coinduction_count", params, ok, None if ok else f"{len(dcs)} != {want}", dims)


# Hilbert 90 -----------------------------------------------------------------

def ext_automorphism(ext: SimpleExtension, image_of_gen):
    """Base-linear map determined by the image of the generator."""
    powers = [ext.one]
    for _ in range(ext.degree - 1):
        powers.append(powers[-1] * image_of_gen)

    def g(a):
        acc = ext.zero
        for c, pw in zip(a.c, powers):
            if c:
                acc = acc + pw * ext.from_base(c)
        return acc

    return g


def hilbert90_finite_check(field, automorphisms, label=None):
    """K<G> -> End_k(K), a g -> (v -> a g(v)), is bijective when G is the full
    automorphism group of a Galois extension K/k."""
    if isinstance(field, SimpleExtension):
        k = field.base
        d = field.degree
        basis = [field.from_coeffs([0] * i + [1]) for i in range(d)]

        def coords(a):
            return list(a.c)
    else:
        k = field
        d = 1
        basis = [field.one]

        def coords(a):
            return [a]
    auts = list(automorphisms)
    params = {"field": label or repr(field), "degree": d, "group": len(auts)}
    if len(auts) != d:
        raise NotGalois(f"{len(auts)} automorphisms for an extension of degree {d}")
    # automorphism sanity: multiplicative and closed under composition
    for g in auts:
        for a in basis:
            for b in basis:
                if g(a * b) != g(a) * g(b):
                    raise NotGalois("supplied map is not multiplicative")
    tables = [tuple(tuple(coords(g(b))) for b in basis) for g in auts]
    for g in auts:
        for h in auts:
            comp = tuple(tuple(coords(g(h(b)))) for b in basis)
            if comp not in tables:
                raise NotGalois("automorphisms are not closed under composition")
    cols = []
    for a in basis:
        for g in auts:
            # matrix of v -> a g(v) in the basis, flattened
            mat = []
            for b in basis:
                mat.extend(coords(a * g(b)))
            cols.append(mat)
    A = [[cols[c][r] for c in range(len(cols))] for r in range(d * d)]
    r = len(_const_rref(k, [list(x) for x in A], len(cols)))
    dims = {"source": d * len(auts), "target": d * d, "rank": r}
    ok = r == d * d == d * len(auts)
    return row("hilbert90", params, ok, None if ok else "not bijective", dims)


def sqrt2_datum():
    K = SimpleExtension(QQ, [-2, 0, 1], "r")
    return K, [ext_automorphism(K, K.gen()), ext_automorphism(K, -K.gen())]


def f9_datum():
    from .polyring import GF
    K = SimpleExtension(GF(3), [1, 0, 1], "a")
    return K, [ext_automorphism(K, K.gen()), ext_automorphism(K, -K.gen())]
