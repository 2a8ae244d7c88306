"""Verification suites assembled from the individual modules."""
from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations
from math import comb

from . import fieldcat, socle, structiso
from .binpoly import BinPoly, binpoly_mul, lambda_op, power_to_binomial
from .k0ring import Ambient, GroupRingElt, K0Class, int_det, k0a_mul, matmul, smith_normal_form
from .polyring import GF, QQ, Perm, RatFunc, ring as make_ring
from .report import Report, row
from .semimod import (DirectSum, GeneratedSubmodule, SemiMap, SemiModError, SemiModule, Subsets,
                      TruncatedField, additivity_check, common_kernel, cokernel_dim, growth_fit,
                      growth_sandwich_check, identity_plus, kernel, level)
from .symgroup import brute_force_embeddings, count_subspace_embeddings

SUITES = ("identities", "socle", "decomp", "growth", "k0", "appendix", "all")


@dataclass
class Options:
    seed: int = 0
    max_n: int = 7
    max_deg: int = 12


# identities -----------------------------------------------------------------

def suite_identities(opt: Options):
    rows = list(fieldcat.verify_identity_suite())
    for n, a, p in ((3, 1, 0), (4, 2, 0), (3, 1, 3), (3, 1, 2)):
        rows += fieldcat.dihedral_check(n, a, p, seed=opt.seed)
    rows += fieldcat.a4_eigen_check(seed=opt.seed)
    rows.append(fieldcat.elliptic_addition_check())
    rows.append(fieldcat.elliptic_addition_check((0, 1)))
    for p in (2, 3, 5, 7):
        rows.append(fieldcat.lucas_exception_check(p))
    return rows


# socle ----------------------------------------------------------------------

def suite_socle(opt: Options, ps=(2, 3), max_n=16):
    from math import comb as C
    rows = []
    for p in (2, 3, 5):
        bad = [(n, m) for n in range(201) for m in range(201) if socle.lucas(n, m, p) != C(n, m) % p]
        rows.append(row("lucas_vs_binomial", {"p": p, "bound": 200}, not bad, f"first mismatch {bad[:1]}"
                        if bad else None))
        bad = [(n, m) for n in range(201) for m in range(201)
               if socle.succeq(n, m, p) != (C(n, m) % p != 0)]
        rows.append(row("lucas_order", {"p": p, "bound": 200}, not bad))
    for p in ps:
        d = 2 * p * p
        D = [socle.DOperator.D(i, p, d) for i in range(d + 1)]
        ok = True
        for i in range(d + 1):
            for j in range(d + 1 - i):
                want = socle.DOperator(p, [0] * (i + j) + [C(i + j, i)] + [0] * (d - i - j))
                if D[i] * D[j] != want or D[i] * D[j] != D[j] * D[i]:
                    ok = False
        rows.append(row("d_algebra.product", {"p": p, "order": d}, ok))
        rows.append(row("d_algebra.nilpotent", {"p": p, "order": d}, (D[1] ** p).is_zero()))
        # composition agrees with applying the operators one after the other
        ok = all(socle.compose_by_action(D[i], D[j], m) == (D[i] * D[j]).apply_monomial(m)
                 for i in range(4) for j in range(4) for m in range(d + 1))
        rows.append(row("d_algebra.action", {"p": p, "order": d}, ok))
        for k in range(1, 3):
            if p ** (k + 1) <= d:
                rows.append(row("d_algebra.nilpotent", {"p": p, "order": d, "i": p ** k},
                                (D[p ** k] ** p).is_zero()))
    for p in ps:
        rows += [r for r in socle.socle_grid((p,), max_n=max_n)]
    dim0, _ = socle.fixed_space_dim(0, 4, 4)
    rows.append(row("fixed_space", {"p": 0, "n": 4, "d": 4}, dim0 == 1, None, {"dim": dim0}))
    for p, d in ((2, 6), (2, 9), (3, 10)):
        dim, basis = socle.fixed_space_dim(p, 4, d)
        want = [e for e in range(1, d) if socle.digit_sum(e, p) == 1]
        exps = sorted(e for b in basis for e in b)
        rows.append(row("fixed_space", {"p": p, "n": 4, "d": d}, dim == len(want) and exps == want,
                        None, {"dim": dim, "exponents": exps}))
    for p in (2, 3, 5):
        ok, cert = socle.frobenius_check(p, seed=opt.seed)
        rows.append(row("frobenius", {"p": p}, ok, cert and str(cert)))
        rows.append(row("pth_power_shift", {"p": p},
                        socle.pth_power_shift_check(p, 4, Perm([1, 2, 0, 3]), [1, 2 % p or 1, 1])))
    for p, s, d in ((2, 1, 16), (2, 2, 16), (3, 1, 27), (3, 2, 27), (0, 3, 10)):
        rows.append(row("phi_downward_closed", {"p": p, "s": s, "d": d},
                        socle.phi_basis(p, s, d).downward_closed()))
    rows.append(_d_equivariance(opt))
    return rows


def _d_equivariance(opt):
    K = TruncatedField(QQ, "differences")
    n = 4
    rng = random.Random(opt.seed)
    gens = [Perm.transposition(n, 0, 1), Perm.transposition(n, 1, 2), Perm.transposition(n, 2, 3)]
    ok = True
    for _ in range(3):
        coeffs = {e: K.random_element(rng, n, terms=1, degree=1) for e in range(0, 9, 2)}
        f = socle.XPoly(K, n, coeffs)
        for i in (1, 2, 3):
            for g in gens:
                if socle.apply_d(i, f.act(g)) != socle.apply_d(i, f).act(g):
                    ok = False
    return row("d_equivariance", {"n": n, "style": "differences", "degree": 8}, ok)


# structural isomorphisms ---------------------------------------------------------

def random_pf_case(rng, F):
    R = make_ring(F, ("t",))
    t = RatFunc(R.var(0))
    one = RatFunc(R.one())
    if F.characteristic:
        p = F.characteristic
        roots = rng.sample(range(1, p), rng.randint(0, min(2, p - 1)))
        quads = [[2, 0, 1]] if rng.random() < 0.5 else []          # t^2 + 2 is irreducible mod 5
    else:
        roots = rng.sample(range(-5, 6), rng.randint(0, 3))
        roots = [r for r in roots if r]
        quads = rng.sample([[1, 0, 1], [2, 1, 1], [3, 0, 1]], rng.randint(0, 2))
    factors = [[-r, 1] for r in roots] + quads
    den = one * rng.choice([1, 2, 3])
    for q in factors:
        Q = sum((RatFunc.const(R, c) * t ** i for i, c in enumerate(q)), RatFunc(R.zero()))
        den = den * Q ** rng.randint(1, 2)
    den = den * t ** rng.randint(0, 2)
    num = RatFunc(R.zero())
    for i in range(rng.randint(0, 6) + 1):
        num = num + RatFunc.const(R, F.random_element(rng)) * t ** i
    if num.is_zero():
        num = one
    return num / den, factors


def partial_fraction_roundtrips(seed=0, count=500):
    rng = random.Random(seed)
    bad = 0
    shape_bad = 0
    for k in range(count):
        F = QQ if k % 2 == 0 else GF(5)
        f, factors = random_pf_case(rng, F)
        dec = structiso.partial_fraction(f, factors=factors)
        if dec.reassemble() != f:
            bad += 1
        for pt in dec.poles:
            if pt.Q[0] != F.coerce(1) or len(pt.num) >= len(pt.Q):
                shape_bad += 1
    return bad, shape_bad


def suite_decomp(opt: Options):
    rows = []
    for N, n in ((1, 3), (2, 3), (2, 4), (3, 4), (3, 5)):
        rows.append(structiso.vandermonde_wedge_check(N, n))
    rows.append(structiso.vandermonde_wedge_check(2, 4, style="differences"))
    for N, n in ((0, 2), (1, 2), (1, 3), (1, 4), (2, 4)):
        rows.append(structiso.alpha_map_check(N, n))
    rows.append(structiso.rho_split_check(4, [0, 1], "ratios"))
    rows.append(structiso.rho_split_check(4, [0], "ratios"))
    rows.append(structiso.rho_split_check(4, [0, 1], "differences", QQ))
    rows.append(structiso.rho_refusal_check(4, [0, 1], "differences", GF(2)))
    for a in ((2, 1, 5), (1, 0, 3), (1, 1, 4), (2, 2, 5), (3, 2, 6)):
        rows.append(structiso.triple_split_check(*a))
    for a in ((2, 2, 6), (0, 2, 4), (1, 2, 5), (1, 1, 3), (3, 2, 6)):
        rows.append(structiso.coinduction_count_check(*a))
    bad, shape_bad = partial_fraction_roundtrips(opt.seed)
    rows.append(row("partial_fraction_roundtrip", {"count": 500, "fields": ["QQ", "GF(5)"]},
                    bad == 0 and shape_bad == 0, f"{bad} failed reassemblies, {shape_bad} malformed terms"
                    if bad or shape_bad else None))
    K, auts = structiso.sqrt2_datum()
    rows.append(structiso.hilbert90_finite_check(K, auts, "Q(sqrt2)/Q"))
    K, auts = structiso.f9_datum()
    rows.append(structiso.hilbert90_finite_check(K, auts, "F9/F3"))
    rows.append(structiso.hilbert90_finite_check(QQ, [lambda a: a], "Q/Q"))
    return rows


# growth -----------------------------------------------------------------------

def catalog_modules(K=None):
    K = K or TruncatedField(QQ, "free")
    return {
        "trivial": SemiModule(K, Subsets(0)),
        "psi": SemiModule(K, Subsets(1)),
        "binom:2": SemiModule(K, Subsets(2)),
        "binom:3": SemiModule(K, Subsets(3)),
    }


def random_injections(count, seed=0, K=None):
    """Identity-plus-random-component injections and sub-sums of the alpha map."""
    from .structiso import alpha_map
    K = K or TruncatedField(QQ, "free")
    rng = random.Random(seed)
    out = []
    for k in range(count):
        if k % 3 == 2:
            N = rng.choice([1, 2])
            total = 2 * N + 1
            copies = sorted(rng.sample(range(total), rng.randint(1, total)))
            out.append(("alpha", {"N": N, "copies": copies}, alpha_map(N, K, copies)))
        else:
            s1, s2 = rng.randint(0, 2), rng.randint(0, 2)
            src = SemiModule(K, Subsets(s1))
            if rng.random() < 0.3:
                src = src.direct_sum(SemiModule(K, Subsets(rng.randint(0, 1))))
            ext = SemiModule(K, Subsets(s2))
            n0 = src.basis.arity + ext.basis.arity + 2
            out.append(("identity_plus", {"source": repr(src), "extra": repr(ext)},
                        identity_plus(src, ext, rng, n0)))
    return out


def random_level_map(s: int, rng, K):
    """Random equivariant K<C(Psi,s)> -> K<Psi>: [S] -> sum_t f_t [t], with f_0
    symmetric in the points of S other than 0."""
    from itertools import permutations
    n0 = s + 1
    S = tuple(range(s))
    f0 = K.random_element(rng, n0, points=S, terms=2, degree=2)
    rest = S[1:]
    sym = RatFunc(K.ring(n0).zero())
    for img in permutations(rest):
        im = list(range(n0))
        for a, b in zip(rest, img):
            im[a] = b
        sym = sym + f0.permute(im)
    img = {}
    for t in S:
        tau = Perm.transposition(n0, 0, t) if t else Perm.identity(n0)
        img[(t,)] = sym.permute(tau.images)
    return SemiMap(SemiModule(K, Subsets(s)), SemiModule(K, Subsets(1)), {S: img}, n0=n0)


def suite_growth(opt: Options):
    rows = []
    expected = {"trivial": BinPoly([1]), "psi": BinPoly([0, 1]), "binom:2": BinPoly([0, 0, 1]),
                "binom:3": BinPoly([0, 0, 0, 1])}
    for name, M in catalog_modules().items():
        s = M.basis.arity
        P = growth_fit(M, range(s + 1, s + 6))
        rows.append(row("growth_fit", {"module": name, "sizes": f"{s + 1}..{s + 5}"}, P == expected[name],
                        None if P == expected[name] else str(P), {"fit": str(P), "level": P.degree}))
    K = TruncatedField(QQ, "free")
    for s in range(4):
        for t in range(7):
            d = SemiModule(K, Subsets(s)).fixed_dim(range(t))
            if d != comb(t, s):
                rows.append(row("fixed_dim", {"s": s, "T": t}, False, f"{d} != {comb(t, s)}"))
    rows.append(row("fixed_dim_grid", {"s": "0..3", "T": "0..6"}, not any(r.check == "fixed_dim" for r in rows)))
    sum_mod = SemiModule(K, Subsets(1)).direct_sum(SemiModule(K, Subsets(0)))
    rows.append(row("growth_fit", {"module": "psi+trivial"}, growth_fit(sum_mod, range(2, 6)) == BinPoly([1, 1])))
    rows.append(row("level", {"module": "psi+binom:2"},
                    level(SemiModule(K, DirectSum(Subsets(1), Subsets(2)))) == 2))
    # additivity along random injections
    for kind, params, phi in random_injections(20, opt.seed):
        a = max(phi.source.basis.arity, phi.target.basis.arity)
        ok, (ps, pc, pt) = additivity_check(phi, range(1, a + 4))
        rows.append(row("additivity", {"kind": kind, **params}, ok, None if ok else f"{ps} + {pc} != {pt}",
                        {"source": str(ps), "cokernel": str(pc), "target": str(pt)}))
    # q-analogue counts
    for q in (2, 3):
        for N in range(0, 4):
            for n in range(0, N + 1):
                for v in (0, 1):
                    f = count_subspace_embeddings(q, n, N, v)
                    b = brute_force_embeddings(q, n, N, v)
                    rows.append(row("q_growth", {"q": q, "n": n, "N": N, "v": v}, f == b, None if f == b
                                    else f"{f} != {b}"))
    # growth sandwich for generated submodules
    rng = random.Random(opt.seed + 1)
    fixed = [(1, {(0,): 1, (1,): -1}), (2, {(0, 1): 1, (1, 2): -1}), (2, {(0, 1): 1, (0, 2): -1, (1, 2): 1})]
    for k in range(6 + len(fixed)):
        if k < len(fixed):
            s, alpha = fixed[k]
        else:
            s = 1 + k % 2
            alpha = {}
            for S in combinations(range(s + 2), s):
                c = rng.randint(-2, 2)
                if c:
                    alpha[S] = c
            if not alpha:
                alpha[tuple(range(s))] = 1
        sub = GeneratedSubmodule(QQ, s, alpha)
        sizes = list(range(sub.m + s, sub.m + 2 * s + 3))
        ok, data = growth_sandwich_check(sub, sizes)
        try:
            P = growth_fit(sub, sizes)
            deg_ok = P.degree == s
        except SemiModError as exc:
            P, deg_ok = str(exc), False
        rows.append(row("growth_sandwich", {"s": s, "alpha": {",".join(map(str, k_)): v for k_, v in alpha.items()}},
                        ok and deg_ok, None if ok and deg_ok else f"bounds {data}, fit {P}",
                        {"fit": str(P), "values": [d for _, _, d, _, _ in data]}))
    # cokernels of level maps
    K2 = TruncatedField(QQ, "differences")
    x0, x1 = K2.x(2, 0), K2.x(2, 1)
    phi = SemiMap(SemiModule(K2, Subsets(2)), SemiModule(K2, Subsets(1)), {(0, 1): {(0,): x1 - x0, (1,): x0 - x1}})
    for n in (3, 4, 5):
        c = cokernel_dim(phi, n)
        rows.append(row("cokernel_bound", {"s": 2, "n": n, "map": "difference"}, c == 1, None, {"cokernel": c}))
    rng = random.Random(opt.seed + 2)
    for style in ("free", "differences"):
        K2 = TruncatedField(QQ, style)
        for s in (1, 2, 3):
            for _ in range(2):
                phi = random_level_map(s, rng, K2)
                if phi.is_zero():
                    continue
                n = min(opt.max_n, s + 3)
                c = cokernel_dim(phi, n)
                rows.append(row("cokernel_bound", {"s": s, "n": n, "style": style}, c <= max(s - 1, 0),
                                None if c <= max(s - 1, 0) else f"cokernel {c}", {"cokernel": c}))
    # tensor products
    mods = catalog_modules()
    names = list(mods)
    for i, a in enumerate(names):
        for b in names[i:]:
            A, B = mods[a], mods[b]
            if A.basis.arity + B.basis.arity > 4:
                continue
            T = A.tensor(B)
            ar = T.basis.arity
            P = growth_fit(T, range(ar + 1, 2 * ar + 3))
            want = binpoly_mul(growth_fit(A, range(1, A.basis.arity + 4)),
                               growth_fit(B, range(1, B.basis.arity + 4)))
            rows.append(row("tensor_homomorphism", {"left": a, "right": b}, P == want, None if P == want
                            else f"{P} != {want}"))
    return rows


# k0 -------------------------------------------------------------------------

def random_binpoly(rng, deg):
    return BinPoly([rng.randint(-4, 4) for _ in range(deg + 1)])


def random_k0(rng, amb):
    reps = amb.representatives() if amb.box()[1] == 0 else None
    terms = {}
    for _ in range(rng.randint(0, 3)):
        v = rng.choice(reps) if reps else tuple(rng.randint(-2, 2) for _ in range(amb.dim))
        terms[v] = terms.get(v, 0) + rng.randint(-3, 3)
    aug = GroupRingElt(amb, terms)
    e = aug.eps()
    aug = aug - GroupRingElt(amb, {(0,) * amb.dim: e})
    return K0Class(random_binpoly(rng, rng.randint(0, 3)), aug)


def suite_k0(opt: Options):
    rows = []
    rng = random.Random(opt.seed)
    for N in range(9):
        a = power_to_binomial(N)
        ok = all(sum(c * comb(t, i) for i, c in enumerate(a)) == t ** N for t in range(N + 4))
        rows.append(row("power_to_binomial", {"N": N}, ok, None, {"coeffs": a}))
    bad = 0
    for _ in range(100):
        P, Q = random_binpoly(rng, rng.randint(0, 3)), random_binpoly(rng, rng.randint(0, 3))
        r = rng.randint(0, 3)
        lhs = lambda_op(r, P + Q)
        rhs = BinPoly()
        for i in range(r + 1):
            rhs = rhs + binpoly_mul(lambda_op(i, P), lambda_op(r - i, Q))
        bad += lhs != rhs
    rows.append(row("lambda_addition", {"cases": 100}, bad == 0, f"{bad} failures" if bad else None))
    bad = 0
    for _ in range(100):
        P, Q, S = (random_binpoly(rng, rng.randint(0, 6)) for _ in range(3))
        if binpoly_mul(binpoly_mul(P, Q), S) != binpoly_mul(P, binpoly_mul(Q, S)) or P * Q != Q * P \
                or P * (Q + S) != P * Q + P * S:
            bad += 1
    rows.append(row("binpoly_ring_axioms", {"cases": 100, "max_degree": 6}, bad == 0))
    for gamma, dim in (([], 1), ([[2]], 1), ([[2, 0], [0, 3]], 2)):
        amb = Ambient(dim, gamma)
        lam = (1,) + (0,) * (dim - 1)
        x = K0Class(BinPoly(), GroupRingElt(amb, {lam: 1, (0,) * dim: -1}))
        for s in (1, 2, 3):
            prod = k0a_mul(x, K0Class(BinPoly.binom(s), GroupRingElt(amb)))
            ok = prod.poly.is_zero() and prod.aug.is_zero()
            rows.append(row("k0_relation", {"gamma": gamma, "s": s}, ok, None if ok else repr(prod)))
        sq = k0a_mul(x, x)
        two = tuple(2 * c for c in lam)
        want = GroupRingElt(amb, {two: 1, lam: -2, (0,) * dim: 1})
        rows.append(row("k0_square", {"gamma": gamma}, sq.aug == want and sq.poly.is_zero()))
        bad = 0
        for _ in range(100 if not gamma else 30):
            a, b, c = (random_k0(rng, amb) for _ in range(3))
            if k0a_mul(k0a_mul(a, b), c) != k0a_mul(a, k0a_mul(b, c)):
                bad += 1
        rows.append(row("k0_associativity", {"gamma": gamma}, bad == 0))
    bad = 0
    for _ in range(100):
        A = [[rng.randint(-9, 9) for _ in range(4)] for _ in range(3)]
        U, D, V = smith_normal_form(A)
        diag = [D[i][i] for i in range(3)]
        ok = matmul(matmul(U, A), V) == D and abs(int_det(U)) == 1 and abs(int_det(V)) == 1
        ok &= all(D[i][j] == 0 for i in range(3) for j in range(4) if i != j)
        ok &= all(d >= 0 for d in diag)
        ok &= all(diag[i + 1] % diag[i] == 0 if diag[i] else diag[i + 1] == 0 for i in range(2))
        bad += not ok
    rows.append(row("smith_normal_form", {"cases": 100, "shape": "3x4"}, bad == 0))
    return rows


# appendix -------------------------------------------------------------------

def incidence_map(t, K=None):
    K = K or TruncatedField(QQ, "free")
    rep = tuple(range(t))
    return SemiMap(SemiModule(K, Subsets(t)), SemiModule(K, Subsets(t - 1)),
                   {rep: {S: 1 for S in combinations(rep, t - 1)}})


def suite_appendix(opt: Options):
    rows = []
    for n, t in ((4, 2), (5, 2), (6, 2), (6, 3), (5, 1), (7, 3)):
        if n > max(opt.max_n, 6):
            continue
        kr = common_kernel([incidence_map(t)], n)
        want = comb(n, t) - comb(n, t - 1)
        rows.append(row("common_kernel", {"n": n, "t": t}, kr.dim == want, None if kr.dim == want
                        else f"{kr.dim} != {want}", {"dim": kr.dim, "expected": want}))
    K = TruncatedField(QQ, "free")
    ident = SemiMap(SemiModule(K, Subsets(1)), SemiModule(K, Subsets(1)), {(0,): {(0,): 1}})
    rows.append(row("kernel", {"map": "identity", "n": 4}, kernel(ident, 4).dim == 0))
    return rows


RUNNERS = {
    "identities": suite_identities,
    "socle": suite_socle,
    "decomp": suite_decomp,
    "growth": suite_growth,
    "k0": suite_k0,
    "appendix": suite_appendix,
}


def run_suite(name: str, opt: Options | None = None) -> Report:
    opt = opt or Options()
    if name not in SUITES:
        raise KeyError(f"unknown suite {name!r}")
    names = [s for s in SUITES if s != "all"] if name == "all" else [name]
    rep = Report(name)
    for s in names:
        rep.add(RUNNERS[s](opt))
    return rep
