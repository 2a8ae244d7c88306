"""Finite truncations of the symmetric group: stabilizers, orbits, double cosets."""
from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations, permutations, product
from math import factorial, prod

from .polyring.perm import Perm

ENUM_BOUND = 9


class BoundExceeded(ValueError):
    pass


KINDS = ("full", "pointwise", "setwise", "alternating")


@dataclass(frozen=True)
class SubgroupSpec:
    degree: int
    kind: str = "full"
    T: frozenset = frozenset()

    def __post_init__(self):
        if self.kind not in KINDS:
            raise ValueError(f"unknown subgroup kind {self.kind!r}")
        object.__setattr__(self, "T", frozenset(self.T))
        if any(t < 0 or t >= self.degree for t in self.T):
            raise ValueError("T must be a subset of {0, ..., n-1}")

    @classmethod
    def full(cls, n):
        return cls(n, "full")

    @classmethod
    def pointwise(cls, n, T):
        return cls(n, "pointwise", frozenset(T))

    @classmethod
    def setwise(cls, n, T):
        return cls(n, "setwise", frozenset(T))

    @classmethod
    def alternating(cls, n):
        return cls(n, "alternating")

    def order(self) -> int:
        n, t = self.degree, len(self.T)
        if self.kind == "full":
            return factorial(n)
        if self.kind == "pointwise":
            return factorial(n - t)
        if self.kind == "setwise":
            return factorial(t) * factorial(n - t)
        return max(1, factorial(n) // 2)

    def moved(self):
        return sorted(set(range(self.degree)) - self.T)

    def generators(self):
        """Adjacent transpositions on each invariant block (3-cycles for A_n)."""
        n = self.degree
        if self.kind == "alternating":
            return [Perm.cycle(n, 0, 1, i) for i in range(2, n)]
        if self.kind == "full":
            blocks = [list(range(n))]
        elif self.kind == "pointwise":
            blocks = [self.moved()]
        else:
            blocks = [sorted(self.T), self.moved()]
        gens = []
        for b in blocks:
            for a, c in zip(b, b[1:]):
                gens.append(Perm.transposition(n, a, c))
        return gens

    def contains(self, g: Perm) -> bool:
        if self.kind == "full":
            return True
        if self.kind == "pointwise":
            return all(g(t) == t for t in self.T)
        if self.kind == "setwise":
            return g.act_set(self.T) == self.T
        return g.sign() == 1


def enumerate_group(spec: SubgroupSpec, bound: int = ENUM_BOUND):
    n = spec.degree
    if n > bound:
        raise BoundExceeded(f"degree {n} exceeds the enumeration bound {bound}")
    if spec.kind == "full":
        return [Perm._raw(p) for p in permutations(range(n))]
    if spec.kind == "alternating":
        return [g for g in (Perm._raw(p) for p in permutations(range(n))) if g.sign() == 1]
    if spec.kind == "pointwise":
        blocks = [spec.moved()]
    else:
        blocks = [sorted(spec.T), spec.moved()]
    out = []
    for imgs in product(*[permutations(b) for b in blocks]):
        im = list(range(n))
        for b, ib in zip(blocks, imgs):
            for src, dst in zip(b, ib):
                im[src] = dst
        out.append(Perm._raw(tuple(im)))
    out.sort()
    return out


# domains --------------------------------------------------------------------

def domain_elements(domain, n):
    """``domain`` is ("subsets", s), ("tuples", s) or ("injections", s)."""
    kind, s = domain
    if kind == "subsets":
        return list(combinations(range(n), s))
    if kind == "tuples":
        return list(product(range(n), repeat=s))
    if kind == "injections":
        return list(permutations(range(n), s))
    raise ValueError(f"unknown domain {kind!r}")


def act(g: Perm, domain, x):
    if domain[0] == "subsets":
        return tuple(sorted(g.images[i] for i in x))
    return tuple(g.images[i] for i in x)


@dataclass
class OrbitPartition:
    domain: tuple
    blocks: list
    stabilizer_orders: list = field(default_factory=list)

    def sizes(self):
        return [len(b) for b in self.blocks]


def orbits(spec: SubgroupSpec, domain, bound: int = ENUM_BOUND, elements=None) -> OrbitPartition:
    n = spec.degree
    if n > bound:
        raise BoundExceeded(f"degree {n} exceeds the enumeration bound {bound}")
    elems = elements if elements is not None else domain_elements(domain, n)
    gens = spec.generators()
    seen = set()
    blocks = []
    for x in elems:
        if x in seen:
            continue
        block = [x]
        seen.add(x)
        k = 0
        while k < len(block):
            y = block[k]
            k += 1
            for g in gens:
                z = act(g, domain, y)
                if z not in seen:
                    seen.add(z)
                    block.append(z)
        blocks.append(sorted(block))
    order = spec.order()
    return OrbitPartition(domain, blocks, [order // len(b) for b in blocks])


def burnside_count(spec: SubgroupSpec, domain, bound: int = ENUM_BOUND) -> int:
    """Number of orbits via the average number of fixed points."""
    elems = domain_elements(domain, spec.degree)
    G = enumerate_group(spec, bound)
    total = sum(sum(1 for x in elems if act(g, domain, x) == x) for g in G)
    assert total % len(G) == 0
    return total // len(G)


# double cosets --------------------------------------------------------------

@dataclass
class DoubleCoset:
    rep: Perm
    size: int
    label: tuple | None = None


def double_cosets(H: SubgroupSpec, U: SubgroupSpec, bound: int = ENUM_BOUND):
    """H \\ S_n / U.  Representatives are lex-least; labels are given when both
    are pointwise stabilizers (Lambda = J & sigma(T), lambda -> sigma^-1(lambda))."""
    if H.degree != U.degree:
        raise ValueError("degree mismatch")
    n = H.degree
    if n > bound:
        raise BoundExceeded(f"degree {n} exceeds the enumeration bound {bound}")
    G = [Perm._raw(p) for p in permutations(range(n))]
    index = {g.images: i for i, g in enumerate(G)}
    parent = list(range(len(G)))

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    hg = H.generators()
    ug = U.generators()
    for i, g in enumerate(G):
        for h in hg:
            j = index[(h * g).images]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
        for u in ug:
            j = index[(g * u).images]
            a, b = find(i), find(j)
            if a != b:
                parent[max(a, b)] = min(a, b)
    classes = {}
    for i in range(len(G)):
        classes.setdefault(find(i), []).append(i)
    labelled = H.kind == "pointwise" and U.kind == "pointwise"
    out = []
    for members in classes.values():
        rep = G[min(members)]
        lab = mu_label(rep, H.T, U.T) if labelled else None
        out.append(DoubleCoset(rep, len(members), lab))
    out.sort(key=lambda d: d.rep.images)
    return out


def mu_label(sigma: Perm, J, T):
    inv = sigma.inverse()
    image_T = {sigma(t) for t in T}
    lam = tuple(sorted(set(J) & image_T))
    return lam, tuple(inv(x) for x in lam)


def n_injections(a: int, b: int) -> int:
    if a > b:
        return 0
    return prod(range(b - a + 1, b + 1))


def coinduction_count(j: int, t: int) -> int:
    """sum over Lambda subset of J of #Inj(Lambda, T)."""
    from math import comb
    return sum(comb(j, k) * n_injections(k, t) for k in range(j + 1))


# q-analog counting ----------------------------------------------------------

def count_subspace_embeddings(q: int, n: int, N: int, v: int = 0) -> int:
    """q^{(N+v)n} prod_{i<n} (1 - q^{i-N}); the falling factorial when q = 1."""
    if n > N:
        raise ValueError("n must not exceed N")
    if n < 0 or v < 0 or q < 1:
        raise ValueError("invalid parameters")
    if q == 1:
        return prod(N - i for i in range(n))
    # q^{(N+v)n} prod (1 - q^{i-N}) = prod (q^{N+v} - q^{i+v})
    return prod(q ** (N + v) - q ** (i + v) for i in range(n))


def brute_force_embeddings(q: int, n: int, N: int, v: int = 0) -> int:
    """Count n-tuples in F_q^(N+v) linearly independent modulo the first v
    coordinates (the fixed subspace), by explicit span enumeration; q prime."""
    dim = N + v
    vecs = list(product(range(q), repeat=dim))

    def proj(x):
        return x[v:]

    def span_add(span, x):
        new = set(span)
        for s in span:
            for c in range(1, q):
                new.add(tuple((a + c * b) % q for a, b in zip(s, x)))
        return frozenset(new)

    # memoize identical spans at each level: the count only depends on the span
    cache = {}

    def rec_cached(k, span):
        key = (k, span)
        if key not in cache:
            if k == n:
                cache[key] = 1
            else:
                tot = 0
                for x in vecs:
                    px = proj(x)
                    if px not in span:
                        tot += rec_cached(k + 1, span_add(span, px))
                cache[key] = tot
        return cache[key]

    return rec_cached(0, frozenset([tuple([0] * N)]))


def brute_force_set_embeddings(n: int, N: int) -> int:
    return sum(1 for _ in permutations(range(N), n))
