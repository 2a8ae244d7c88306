
from semilin.polyring import GF, QQ, SimpleExtension, ring


FIELDS = {
    "QQ": QQ,
    "GF5": GF(5),
    "QQ[i]": SimpleExtension(QQ, [1, 0, 1], "i"),
}


def random_poly(R, rng, nterms=4, maxdeg=3):
    F = R.ctx
    d = {}
    for _ in range(nterms):
        exps = tuple(rng.randint(0, maxdeg) for _ in range(R.n))
        d[exps] = F.random_element(rng)
    return R.from_dict(d)


def naive_rank(M):
    """Plain Gaussian elimination with RatFunc field operations."""
    A = [list(r) for r in M]
    m = len(A)
    n = len(A[0]) if m else 0
    r = 0
    for c in range(n):
        piv = next((i for i in range(r, m) if not A[i][c].is_zero()), None)
        if piv is None:
            continue
        A[r], A[piv] = A[piv], A[r]
        for i in range(r + 1, m):
            if not A[i][c].is_zero():
                f = A[i][c] / A[r][c]
                A[i] = [A[i][j] - f * A[r][j] for j in range(n)]
        r += 1
    return r


__all__ = ["FIELDS", "random_poly", "naive_rank", "ring"]
