"""Exact linear algebra over a rational function field.

Rows are cleared of denominators, the matrix is split into independent
blocks (connected components of the row/column incidence graph) and each
block is reduced by fraction-free Gauss-Jordan elimination.  Constant
blocks go through ordinary field elimination instead.
"""
from __future__ import annotations

import random
from dataclasses import dataclass, field

from .gcd import gcd, lcm
from .poly import Poly
from .ratfunc import RatFunc


class DimensionError(ValueError):
    pass


@dataclass
class LinearSolution:
    rank: int
    nullspace: list
    particular: list | None = None
    consistent: bool = True
    pivots: list = field(default_factory=list)


def _ring_of(M, b=None):
    for row in M:
        for e in row:
            if isinstance(e, RatFunc):
                return e.ring
    if b:
        for e in b:
            if isinstance(e, RatFunc):
                return e.ring
    raise DimensionError("cannot infer the ring of an empty or untyped matrix")


def _as_rf(R, e):
    if isinstance(e, RatFunc):
        return e
    if isinstance(e, Poly):
        return RatFunc(e)
    return RatFunc.const(R, e)


def _components(nz_rows, ncols):
    """Union-find over rows+columns; returns lists of (rows, cols)."""
    m = len(nz_rows)
    parent = list(range(m + ncols))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    for i, cols in enumerate(nz_rows):
        for j in cols:
            a, b = find(i), find(m + j)
            if a != b:
                parent[a] = b
    groups = {}
    for i in range(m):
        groups.setdefault(find(i), ([], []))[0].append(i)
    for j in range(ncols):
        groups.setdefault(find(m + j), ([], []))[1].append(j)
    return sorted(groups.values(), key=lambda g: (g[1][:1], g[0][:1]))


def _clear_row(R, row):
    dens = [e.den for e in row if e.num.terms]
    L = R.one()
    for d in dens:
        if not d.is_const() and not d.divides(L):
            L = lcm(L, d)
    return [e.num * L.exquo(e.den) if e.num.terms else R.zero() for e in row], L


def _const_rref(F, A, ncols):
    """In-place RREF over the field on the first ``ncols`` columns; returns pivots."""
    m = len(A)
    width = len(A[0]) if A else 0
    pivots = []
    r = 0
    red = F.reduce
    for c in range(ncols):
        piv = next((i for i in range(r, m) if A[i][c]), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        inv = F.inv(A[r][c])
        A[r] = [red(x * inv) for x in A[r]]
        for i in range(m):
            if i != r and A[i][c]:
                f = A[i][c]
                Ar = A[r]
                A[i] = [red(A[i][j] - f * Ar[j]) for j in range(width)]
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots


def _ff_gauss_jordan(R, A, ncols):
    """Fraction-free Gauss-Jordan in place; every pivot ends equal to the last one."""
    m = len(A)
    width = len(A[0]) if A else 0
    prev = R.one()
    pivots = []
    r = 0
    for c in range(ncols):
        cands = [i for i in range(r, m) if A[i][c].terms]
        if not cands:
            continue
        piv = min(cands, key=lambda i: (len(A[i][c].terms), A[i][c].degree(), i))
        A[r], A[piv] = A[piv], A[r]
        p = A[r][c]
        Ar = A[r]
        for i in range(m):
            if i == r:
                continue
            Ai = A[i]
            f = Ai[c]
            new = []
            for j in range(width):
                if j == c:
                    new.append(R.zero())
                    continue
                x = Ai[j] * p
                if f.terms and Ar[j].terms:
                    x = x - f * Ar[j]
                if x.terms:
                    x = x.exquo(prev)
                new.append(x)
            A[i] = new
        prev = p
        pivots.append(c)
        r += 1
        if r == m:
            break
    return pivots, prev


def _primitive_vector(vec):
    g = None
    for e in vec:
        if e.terms:
            g = e if g is None else gcd(g, e)
            if g.is_const():
                return vec
    if g is None:
        return vec
    return [e.exquo(g) for e in vec]


def solve_linear(M, b=None) -> LinearSolution:
    """Rank, nullspace basis and (if ``b`` given) a particular solution of M v = b."""
    m = len(M)
    ncols = len(M[0]) if m else 0
    if any(len(row) != ncols for row in M):
        raise DimensionError("ragged matrix")
    if b is not None and len(b) != m:
        raise DimensionError("right-hand side has the wrong length")
    if ncols == 0:
        ok = b is None or not any(b)
        return LinearSolution(0, [], [] if (b is not None and ok) else None, ok, [])
    R = _ring_of(M, b)
    F = R.ctx
    Mr = [[_as_rf(R, e) for e in row] for row in M]
    br = [_as_rf(R, e) for e in b] if b is not None else None
    nz_rows = [[j for j, e in enumerate(row) if e.num.terms] for row in Mr]

    rank = 0
    null = []
    part = [RatFunc(R.zero()) for _ in range(ncols)] if b is not None else None
    consistent = True
    all_pivots = []
    for rows, cols in _components(nz_rows, ncols):
        if not cols:
            for i in rows:
                if br is not None and br[i].num.terms:
                    consistent = False
            continue
        if not rows:
            for j in cols:
                v = [RatFunc(R.zero()) for _ in range(ncols)]
                v[j] = RatFunc(R.one())
                null.append(v)
            continue
        sub = []
        for i in rows:
            row = [Mr[i][j] for j in cols]
            if br is not None:
                row.append(br[i])
            cleared, _ = _clear_row(R, row)
            sub.append(cleared)
        k = len(cols)
        is_const = all(e.is_const() for row in sub for e in row)
        if is_const:
            A = [[e.const_value() if e.terms else F.zero for e in row] for row in sub]
            piv = _const_rref(F, A, k)
            rk = len(piv)
            D = None
        else:
            A = sub
            piv, D = _ff_gauss_jordan(R, A, k)
            rk = len(piv)
        rank += rk
        all_pivots.extend(cols[c] for c in piv)
        if br is not None:
            for i in range(rk, len(A)):
                x = A[i][k]
                if (x if is_const else x.terms):
                    consistent = False
        pivset = set(piv)
        for f in range(k):
            if f in pivset:
                continue
            v = [RatFunc(R.zero()) for _ in range(ncols)]
            if is_const:
                v[cols[f]] = RatFunc(R.one())
                for i, c in enumerate(piv):
                    if A[i][f]:
                        v[cols[c]] = RatFunc.const(R, F.reduce(-A[i][f]))
            else:
                raw = [R.zero()] * k
                raw[f] = D
                for i, c in enumerate(piv):
                    raw[c] = -A[i][f]
                raw = _primitive_vector(raw)
                for j in range(k):
                    v[cols[j]] = RatFunc(raw[j])
            null.append(v)
        if br is not None and consistent:
            for i, c in enumerate(piv):
                if is_const:
                    part[cols[c]] = RatFunc.const(R, A[i][k])
                else:
                    part[cols[c]] = RatFunc(A[i][k], D)
    return LinearSolution(rank, null, part if (b is not None and consistent) else None,
                          consistent, sorted(all_pivots))


def _eval_matrix(M, pt, F):
    out = []
    for row in M:
        r = []
        for e in row:
            if not e.num.terms:
                r.append(F.zero)
                continue
            d = e.den.evaluate(pt)
            if not d:
                return None
            r.append(F.reduce(e.num.evaluate(pt) * F.inv(d)))
        out.append(r)
    return out


def rank(M, tries: int = 2) -> int:
    """Exact rank.  A full-rank specialization at a random point certifies full
    rank (specialization never raises rank); otherwise fall back to elimination."""
    m = len(M)
    if not m or not M[0]:
        return 0
    ncols = len(M[0])
    R = _ring_of(M)
    F = R.ctx
    Mr = [[_as_rf(R, e) for e in row] for row in M]
    target = min(m, ncols)
    rng = random.Random(m * 131 + ncols)
    for _ in range(tries):
        if F.characteristic and F.characteristic < 50:
            pt = [F.random_element(rng) for _ in range(R.n)]
        else:
            pt = [F.from_int(rng.randint(-1000, 1000)) for _ in range(R.n)]
        A = _eval_matrix(Mr, pt, F)
        if A is None:
            continue
        if len(_const_rref(F, [list(r) for r in A], ncols)) == target:
            return target
    return solve_linear(Mr).rank


def det(M) -> RatFunc:
    n = len(M)
    if any(len(r) != n for r in M):
        raise DimensionError("determinant of a non-square matrix")
    if n == 0:
        raise DimensionError("empty matrix")
    R = _ring_of(M)
    Mr = [[_as_rf(R, e) for e in row] for row in M]
    comps = _components([[j for j, e in enumerate(row) if e.num.terms] for row in Mr], n)
    if len(comps) > 1:
        # block structure: det = sign(row order) sign(col order) prod det(block)
        acc = RatFunc(R.one())
        row_order, col_order = [], []
        for rows_, cols_ in comps:
            if len(rows_) != len(cols_):
                return RatFunc(R.zero())
            acc = acc * _det_block(R, [[Mr[i][j] for j in cols_] for i in rows_])
            row_order.extend(rows_)
            col_order.extend(cols_)
        if _perm_sign(row_order) * _perm_sign(col_order) < 0:
            acc = -acc
        return acc
    return _det_block(R, Mr)


def _perm_sign(order):
    sign = 1
    seen = [False] * len(order)
    for i in range(len(order)):
        if seen[i]:
            continue
        j, length = i, 0
        while not seen[j]:
            seen[j] = True
            j = order[j]
            length += 1
        if length % 2 == 0:
            sign = -sign
    return sign


def _det_block(R, M):
    n = len(M)
    rows = []
    scale = RatFunc(R.one())
    for row in M:
        cleared, L = _clear_row(R, [_as_rf(R, e) for e in row])
        rows.append(cleared)
        scale = scale * RatFunc(L)
    sign = 1
    A = rows
    prev = R.one()
    for c in range(n):
        cands = [i for i in range(c, n) if A[i][c].terms]
        if not cands:
            return RatFunc(R.zero())
        piv = min(cands, key=lambda i: (len(A[i][c].terms), i))
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        p = A[c][c]
        for i in range(c + 1, n):
            f = A[i][c]
            A[i] = [R.zero() if j <= c else
                    (A[i][j] * p - f * A[c][j]).exquo(prev) for j in range(n)]
        prev = p
    d = RatFunc(A[n - 1][n - 1]) / scale
    return d if sign == 1 else -d


def mat_vec(M, v):
    R = _ring_of(M, v)
    out = []
    for row in M:
        acc = RatFunc(R.zero())
        for e, x in zip(row, v):
            e = _as_rf(R, e)
            x = _as_rf(R, x)
            if e.num.terms and x.num.terms:
                acc = acc + e * x
        out.append(acc)
    return out
