"""Binomial-ring arithmetic, Smith normal form and the twisted K0 product."""
from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import product

from .binpoly import BinPoly, BinPolyError, binpoly_mul, lambda_op, power_to_binomial  # noqa: F401


class K0Error(ValueError):
    pass


# Smith normal form ----------------------------------------------------------

def _identity(n):
    return [[int(i == j) for j in range(n)] for i in range(n)]


def smith_normal_form(A):
    """Return (U, D, V) with U A V = D diagonal, d_i | d_{i+1}, U and V unimodular.

    Pivot: entry of least absolute value in the active block, ties broken by
    smallest row then column.
    """
    m = len(A)
    n = len(A[0]) if m else 0
    D = [[int(x) for x in row] for row in A]
    U = _identity(m)
    V = _identity(n)

    def swap_rows(i, j):
        D[i], D[j] = D[j], D[i]
        U[i], U[j] = U[j], U[i]

    def swap_cols(i, j):
        for M in (D, V):
            for row in M:
                row[i], row[j] = row[j], row[i]

    def add_row(dst, src, k):  # row_dst += k * row_src
        D[dst] = [a + k * b for a, b in zip(D[dst], D[src])]
        U[dst] = [a + k * b for a, b in zip(U[dst], U[src])]

    def add_col(dst, src, k):
        for M in (D, V):
            for row in M:
                row[dst] += k * row[src]

    for t in range(min(m, n)):
        while True:
            best = None
            for i in range(t, m):
                for j in range(t, n):
                    x = D[i][j]
                    if x and (best is None or abs(x) < best[0]):
                        best = (abs(x), i, j)
            if best is None:
                return U, D, V
            _, i, j = best
            if i != t:
                swap_rows(i, t)
            if j != t:
                swap_cols(j, t)
            p = D[t][t]
            clean = True
            for i in range(t + 1, m):
                if D[i][t]:
                    q = D[i][t] // p
                    add_row(i, t, -q)
                    if D[i][t]:
                        clean = False
            for j in range(t + 1, n):
                if D[t][j]:
                    q = D[t][j] // p
                    add_col(j, t, -q)
                    if D[t][j]:
                        clean = False
            if not clean:
                continue
            bad = next(((i, j) for i in range(t + 1, m) for j in range(t + 1, n) if D[i][j] % p), None)
            if bad is not None:
                add_row(t, bad[0], 1)
                continue
            if p < 0:
                D[t] = [-x for x in D[t]]
                U[t] = [-x for x in U[t]]
            break
    return U, D, V


def int_det(M) -> int:
    """Exact determinant by fraction-free elimination."""
    n = len(M)
    A = [list(map(int, r)) for r in M]
    sign = 1
    prev = 1
    for c in range(n):
        piv = next((i for i in range(c, n) if A[i][c]), None)
        if piv is None:
            return 0
        if piv != c:
            A[c], A[piv] = A[piv], A[c]
            sign = -sign
        for i in range(c + 1, n):
            for j in range(c + 1, n):
                A[i][j] = (A[i][j] * A[c][c] - A[i][c] * A[c][j]) // prev
            A[i][c] = 0
        prev = A[c][c]
    return sign * A[n - 1][n - 1] if n else 1


def matmul(A, B):
    return [[sum(a * b for a, b in zip(row, col)) for col in zip(*B)] for row in A]


def _inverse_unimodular(V):
    n = len(V)
    from fractions import Fraction
    A = [[Fraction(x) for x in row] + [Fraction(int(i == j)) for j in range(n)] for i, row in enumerate(V)]
    for c in range(n):
        piv = next(i for i in range(c, n) if A[i][c])
        A[c], A[piv] = A[piv], A[c]
        p = A[c][c]
        A[c] = [x / p for x in A[c]]
        for i in range(n):
            if i != c and A[i][c]:
                f = A[i][c]
                A[i] = [x - f * y for x, y in zip(A[i], A[c])]
    out = [[x for x in row[n:]] for row in A]
    if any(x.denominator != 1 for row in out for x in row):
        raise K0Error("matrix is not unimodular")
    return [[int(x) for x in row] for row in out]


# Z^S / Gamma ----------------------------------------------------------------

class Ambient:
    """Z^S modulo the row span of ``gamma``, with canonical representatives."""

    def __init__(self, dim: int, gamma=None):
        self.dim = int(dim)
        gamma = [list(map(int, r)) for r in (gamma or [])]
        if any(len(r) != self.dim for r in gamma):
            raise K0Error("Gamma rows must have length |S|")
        self.gamma = tuple(tuple(r) for r in gamma)
        if gamma:
            _, D, V = smith_normal_form(gamma)
            self.V = V
            self.Vinv = _inverse_unimodular(V)
            self.moduli = [abs(D[i][i]) if i < len(D) else 0 for i in range(self.dim)]
        else:
            self.V = _identity(self.dim)
            self.Vinv = _identity(self.dim)
            self.moduli = [0] * self.dim

    def __eq__(self, other):
        return isinstance(other, Ambient) and self.dim == other.dim and self.gamma == other.gamma

    def __hash__(self):
        return hash((self.dim, self.gamma))

    def canonical(self, v):
        """Representative of v + Gamma in original coordinates."""
        if len(v) != self.dim:
            raise K0Error("vector has the wrong length")
        w = [sum(v[i] * self.V[i][j] for i in range(self.dim)) for j in range(self.dim)]
        w = [x % m if m else x for x, m in zip(w, self.moduli)]
        return tuple(sum(w[i] * self.Vinv[i][j] for i in range(self.dim)) for j in range(self.dim))

    def box(self):
        """Box description: torsion orders (>1) and the free rank."""
        torsion = [m for m in self.moduli if m > 1]
        free = sum(1 for m in self.moduli if m == 0)
        return torsion, free

    def representatives(self):
        torsion, free = self.box()
        if free:
            raise K0Error("infinitely many representatives")
        out = []
        for w in product(*[range(m) if m else range(1) for m in self.moduli]):
            out.append(tuple(sum(w[i] * self.Vinv[i][j] for i in range(self.dim)) for j in range(self.dim)))
        return sorted(out)


def gamma_perp(gamma, dim=None) -> Ambient:
    if dim is None:
        if not gamma:
            raise K0Error("dimension required when Gamma is empty")
        dim = len(gamma[0])
    return Ambient(dim, gamma)


class GroupRingElt:
    __slots__ = ("ambient", "terms")

    def __init__(self, ambient: Ambient, terms=None):
        self.ambient = ambient
        acc = {}
        for k, m in (terms or {}).items():
            k = ambient.canonical(tuple(k))
            acc[k] = acc.get(k, 0) + int(m)
        self.terms = {k: m for k, m in acc.items() if m}

    @classmethod
    def basis(cls, ambient, v, mult=1):
        return cls(ambient, {tuple(v): mult})

    def eps(self) -> int:
        return sum(self.terms.values())

    def _check(self, other):
        if self.ambient != other.ambient:
            raise K0Error("ambient group mismatch")

    def __add__(self, other):
        self._check(other)
        t = dict(self.terms)
        for k, m in other.terms.items():
            t[k] = t.get(k, 0) + m
        return GroupRingElt(self.ambient, t)

    def __neg__(self):
        return GroupRingElt(self.ambient, {k: -m for k, m in self.terms.items()})

    def __sub__(self, other):
        return self + (-other)

    def scale(self, c: int):
        return GroupRingElt(self.ambient, {k: c * m for k, m in self.terms.items()})

    def __mul__(self, other):
        if isinstance(other, int):
            return self.scale(other)
        self._check(other)
        t = {}
        for k1, m1 in self.terms.items():
            for k2, m2 in other.terms.items():
                k = tuple(a + b for a, b in zip(k1, k2))
                t[k] = t.get(k, 0) + m1 * m2
        return GroupRingElt(self.ambient, t)

    __rmul__ = scale

    def __eq__(self, other):
        return isinstance(other, GroupRingElt) and self.ambient == other.ambient and self.terms == other.terms

    def is_zero(self):
        return not self.terms

    def to_json(self):
        return [{"rep": list(k), "mult": m} for k, m in sorted(self.terms.items())]

    def __repr__(self):
        if not self.terms:
            return "0"
        return " + ".join(f"{m}[{','.join(map(str, k))}]" for k, m in sorted(self.terms.items()))


@dataclass(frozen=True)
class K0Class:
    poly: BinPoly
    aug: GroupRingElt

    def __post_init__(self):
        if self.aug.eps() != 0:
            raise K0Error("augmentation part must have augmentation zero")

    def __add__(self, other):
        return K0Class(self.poly + other.poly, self.aug + other.aug)

    def __eq__(self, other):
        return isinstance(other, K0Class) and self.poly == other.poly and self.aug == other.aug

    def to_json(self):
        d = {"binpoly": self.poly.to_json(), "aug": self.aug.to_json()}
        if self.aug.ambient.gamma:
            d["gamma"] = [list(r) for r in self.aug.ambient.gamma]
        d["dim"] = self.aug.ambient.dim
        return d

    def __repr__(self):
        return f"({self.poly}, {self.aug!r})"


def k0a_mul(a: K0Class, b: K0Class) -> K0Class:
    """(P, alpha)(Q, beta) = (PQ, Q(0) alpha + P(0) beta + alpha beta)."""
    if a.aug.ambient != b.aug.ambient:
        raise K0Error("ambient group mismatch")
    P, Q = a.poly, b.poly
    aug = a.aug.scale(Q(0)) + b.aug.scale(P(0)) + a.aug * b.aug
    if aug.eps() != 0:
        raise K0Error("augmentation ideal not closed (implementation error)")
    return K0Class(binpoly_mul(P, Q), aug)


def k0_from_json(obj) -> K0Class:
    if isinstance(obj, str):
        obj = json.loads(obj)
    aug = obj.get("aug", [])
    dim = obj.get("dim")
    if dim is None:
        if aug:
            dim = len(aug[0]["rep"])
        elif obj.get("gamma"):
            dim = len(obj["gamma"][0])
        else:
            dim = 0
    amb = Ambient(dim, obj.get("gamma"))
    terms = {}
    for t in aug:
        k = tuple(t["rep"])
        terms[k] = terms.get(k, 0) + int(t["mult"])
    return K0Class(BinPoly(obj.get("binpoly", [])), GroupRingElt(amb, terms))
