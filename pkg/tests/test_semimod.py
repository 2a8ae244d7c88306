import random
from math import comb, perm

import pytest
from hypothesis import given, settings, strategies as st

from semilin.binpoly import BinPoly, binpoly_mul
from semilin.polyring import GF, QQ, Perm, RatFunc
from semilin.semimod import (Cokernel, DirectSum, GeneratedSubmodule, Injections, NotWellDefined, Product,
                             SemiMap, SemiModError, SemiModule, StyleNotFaithful, Subsets, TruncatedField,
                             TruncationTooSmall, Tuples, additivity_check, embed, check_semilinear_independence,
                             cokernel_dim, common_kernel, growth_fit, growth_sandwich_check, identity_plus,
                             kernel, level)

K = TruncatedField(QQ, "free")
KB = TruncatedField(QQ, "differences")


def supported_count(basis, t):
    """Basis elements whose support lies in a t-element set (independent of orbit code)."""
    if isinstance(basis, Subsets):
        return comb(t, basis.s)
    if isinstance(basis, Injections):
        return perm(t, basis.s)
    if isinstance(basis, Tuples):
        return t ** basis.s
    if isinstance(basis, DirectSum):
        return sum(supported_count(b, t) for b in basis.parts)
    if isinstance(basis, Product):
        out = 1
        for b in basis.parts:
            out *= supported_count(b, t)
        return out
    raise TypeError(basis)


BASES = [Subsets(0), Subsets(1), Subsets(2), Subsets(3), Injections(2), Tuples(2),
         DirectSum(Subsets(1), Subsets(2)), Product(Subsets(1), Subsets(1))]


@pytest.mark.parametrize("basis", BASES, ids=repr)
@pytest.mark.parametrize("t", range(0, 5))
def test_fixed_dim_counts_supported_elements(basis, t):
    assert SemiModule(K, basis).fixed_dim(range(t)) == supported_count(basis, t)


def test_fixed_dim_stable_in_n():
    M = SemiModule(K, Subsets(2))
    assert {M.fixed_dim(range(3), n) for n in (6, 7, 8)} == {3}


def test_fixed_dim_needs_room():
    with pytest.raises(TruncationTooSmall):
        SemiModule(K, Subsets(2)).fixed_dim(range(3), n=4)


@pytest.mark.parametrize("s,want", [(0, [1]), (1, [0, 1]), (2, [0, 0, 1]), (3, [0, 0, 0, 1])])
def test_growth_of_binomial_modules(s, want):
    M = SemiModule(K, Subsets(s))
    assert growth_fit(M, range(s + 1, s + 6)) == BinPoly(want)
    assert level(M) == s


def test_growth_of_products_and_shifts():
    M = SemiModule(K, Product(Subsets(1), Subsets(2)))
    assert growth_fit(M, range(4, 9)) == binpoly_mul(BinPoly.binom(1), BinPoly.binom(2))
    assert growth_fit(M, range(4, 9)) == BinPoly([0, 0, 2, 3])
    # shifting by j turns C(X, s) into C(X + j, s)
    sh = SemiModule(K, Subsets(2)).shifted(2)
    assert growth_fit(sh, range(1, 6)) == BinPoly([1, 2, 1])
    assert growth_fit(SemiModule(K, Tuples(2)), range(3, 8)) == BinPoly([0, 1, 2])


def test_differences_style_growth_matches_free():
    for s in range(3):
        assert growth_fit(SemiModule(KB, Subsets(s)), range(s + 2, s + 7)) == BinPoly.binom(s)


# faithfulness table -------------------------------------------------------

@pytest.mark.parametrize("ctx,style,T,ok", [
    (QQ, "free", [0, 1], True), (QQ, "differences", [0, 1], True), (GF(2), "differences", [0, 1], False),
    (GF(3), "differences", [0, 1], True), (QQ, "ratios", [0, 1], True), (QQ, "simple-ratios", [0, 1], False),
    (QQ, "simple-ratios", [0, 1, 2], True), (GF(2), "differences", [0, 1, 2], True)])
def test_faithfulness(ctx, style, T, ok):
    F = TruncatedField(ctx, style)
    if ok:
        assert F.check_faithful(5, T)
    else:
        with pytest.raises(StyleNotFaithful) as info:
            F.check_faithful(5, T)
        assert info.value.U.order() * 2 == info.value.H.order()


def test_subfield_elements_are_translation_invariant():
    rng = random.Random(3)
    R = KB.ring(5)
    for _ in range(20):
        f = embed(KB.random_element(rng, 4, terms=3), 5)
        c = RatFunc(R.var(4))
        g = f.subs({i: RatFunc(R.var(i)) + c for i in range(4)})
        assert g == f


# semilinear action --------------------------------------------------------

def _random_perm(rng, n):
    im = list(range(n))
    rng.shuffle(im)
    return Perm(im)


def _random_vector(rng, M, n):
    elems = M.basis.elements(n)
    out = {}
    for e in rng.sample(elems, min(3, len(elems))):
        out[e] = M.field.random_element(rng, n, terms=2, degree=2)
    return {e: c for e, c in out.items() if not c.is_zero()}


@settings(max_examples=40, deadline=None)
@given(st.integers(0, 10 ** 6), st.sampled_from([Subsets(1), Subsets(2), Injections(2)]))
def test_action_is_semilinear(seed, basis):
    rng = random.Random(seed)
    n = 4
    M = SemiModule(K, basis)
    g, h = _random_perm(rng, n), _random_perm(rng, n)
    v = _random_vector(rng, M, n)
    f = K.random_element(rng, n, terms=2)
    fv = {e: f * c for e, c in v.items() if not (f * c).is_zero()}
    gf = f.permute(g.images)
    lhs = M.act_vector(g, fv, n)
    rhs = {e: gf * c for e, c in M.act_vector(g, v, n).items()}
    assert lhs == {e: c for e, c in rhs.items() if not c.is_zero()}
    # it is an action: (gh) v = g (h v)
    assert M.act_vector(g * h, v, n) == M.act_vector(g, M.act_vector(h, v, n), n)


# maps ----------------------------------------------------------------------

def sum_map():
    return SemiMap(SemiModule(K, Subsets(2)), SemiModule(K, Subsets(1)), {(0, 1): {(0,): 1, (1,): 1}})


def test_map_equivariance_under_random_permutations():
    rng = random.Random(11)
    x0, x1 = KB.x(2, 0), KB.x(2, 1)
    phi = SemiMap(SemiModule(KB, Subsets(2)), SemiModule(KB, Subsets(1)),
                  {(0, 1): {(0,): x1 - x0, (1,): x0 - x1}})
    n = 5
    assert phi.check_equivariance(n)[0]
    for _ in range(20):
        g = _random_perm(rng, n)
        for e in phi.source.basis.elements(n):
            assert phi.image(phi.source.basis.act(g, e), n) == phi.target.act_vector(g, phi.image(e, n), n)


def test_ill_defined_map_is_refused_with_certificate():
    x0, x1 = KB.x(2, 0), KB.x(2, 1)
    with pytest.raises(NotWellDefined) as info:
        SemiMap(SemiModule(KB, Subsets(2)), SemiModule(KB, Subsets(1)),
                {(0, 1): {(0,): x0 - x1, (1,): x0 - x1}})
    g = info.value.certificate
    assert g is not None and g(0) == 1 and g(1) == 0


def test_coefficient_support_is_enforced():
    with pytest.raises(NotWellDefined):
        SemiMap(SemiModule(K, Subsets(1)), SemiModule(K, Subsets(1)), {(0,): {(0,): K.x(3, 2)}})


def test_sum_map_ranks():
    phi = sum_map()
    for n in (3, 4, 5):
        assert phi.rank(n) == n
        assert cokernel_dim(phi, n) == 0
        assert kernel(phi, n).dim == comb(n, 2) - n


def test_difference_map_has_one_dimensional_cokernel():
    x0, x1 = KB.x(2, 0), KB.x(2, 1)
    phi = SemiMap(SemiModule(KB, Subsets(2)), SemiModule(KB, Subsets(1)),
                  {(0, 1): {(0,): x1 - x0, (1,): x0 - x1}})
    assert [cokernel_dim(phi, n) for n in (3, 4, 5)] == [1, 1, 1]


def incidence(t):
    rep = tuple(range(t))
    from itertools import combinations
    return SemiMap(SemiModule(K, Subsets(t)), SemiModule(K, Subsets(t - 1)),
                   {rep: {S: 1 for S in combinations(rep, t - 1)}})


@pytest.mark.parametrize("n,t", [(4, 2), (5, 2), (6, 2), (6, 3), (5, 1)])
def test_incidence_kernels(n, t):
    kr = common_kernel([incidence(t)], n)
    assert kr.dim == comb(n, t) - comb(n, t - 1)
    # the returned generators really are killed
    _, _, M = incidence(t).matrix(n)
    for v in kr.generators:
        assert all(sum((a * b for a, b in zip(r, v)), RatFunc(K.ring(n).zero())).is_zero() for r in M)


def test_cokernel_growth_and_additivity():
    phi = sum_map()
    P = growth_fit(Cokernel(phi), range(3, 8))
    assert P == BinPoly()
    rng = random.Random(5)
    for s, extra in ((1, 0), (2, 1), (1, 2)):
        psi = identity_plus(SemiModule(K, Subsets(s)), SemiModule(K, Subsets(extra)), rng, s + extra + 2)
        assert psi.check_equivariance(psi.n0)[0]
        with pytest.raises(TruncationTooSmall):
            psi.check_equivariance(psi.n0 - 1)
        ok, (ps, pc, pt) = additivity_check(psi, range(1, max(s, extra) + 4))
        assert ok
        assert pc == BinPoly.binom(extra)


def test_sandwich_bounds():
    sub = GeneratedSubmodule(QQ, 2, {(0, 1): 1, (1, 2): -1})
    ok, rows = growth_sandwich_check(sub, range(3, 8))
    assert ok
    assert [d for _, _, d, _, _ in rows] == [comb(N, 2) - 1 for N in range(3, 8)]
    with pytest.raises(SemiModError):
        GeneratedSubmodule(QQ, 1, {(0,): 0})


# independence over constants versus the field ----------------------------------

def test_independence_ranks():
    M = SemiModule(KB, Subsets(1))
    n = 3
    R = KB.ring(n)
    x = [KB.x(n, i) for i in range(n)]
    total = {(i,): RatFunc(R.one()) for i in range(n)}
    # sum_i (x_i - mean) [x_i] is fixed; together with the constant vector it is
    # independent over k and over K
    v = {(i,): 3 * x[i] - (x[0] + x[1] + x[2]) for i in range(n)}
    res = check_semilinear_independence(M, [total, v], n)
    assert res == {"rank_constants": 2, "rank_field": 2, "count": 2}
    # K-multiples of one fixed vector: dependent over K, independent over k
    w = {e: c * (x[0] - x[1]) ** 2 * (x[1] - x[2]) ** 2 * (x[0] - x[2]) ** 2 for e, c in total.items()}
    res = check_semilinear_independence(M, [total, w], n)
    assert res["rank_field"] == 1 and res["rank_constants"] == 2
    with pytest.raises(SemiModError):
        check_semilinear_independence(M, [{(0,): RatFunc(R.one())}], n)
