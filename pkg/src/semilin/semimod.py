"""Permutation modules K<S> at finite truncation.

A module is a coefficient field style plus a basis descriptor (an S_n-set
that makes sense for every n).  The truncation level is chosen per call, so
the same module can be looked at in S_n and S_{n+1}; that is how unstable
orbits are detected.
"""
from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from itertools import combinations, permutations, product

from .binpoly import BinPoly, BinPolyError, power_to_binomial
from .polyring import Perm, RatFunc, ring as make_ring, solve_linear
from .polyring.linalg import rank as matrix_rank
from .symgroup import SubgroupSpec


class SemiModError(ValueError):
    pass


class TruncationTooSmall(SemiModError):
    pass


class NotPolynomial(SemiModError):
    pass


class NotWellDefined(SemiModError):
    def __init__(self, msg, certificate=None):
        super().__init__(msg)
        self.certificate = certificate


class StyleNotFaithful(SemiModError):
    def __init__(self, msg, U=None, H=None):
        super().__init__(msg)
        self.U = U
        self.H = H


# coefficient fields ---------------------------------------------------------

STYLES = ("free", "differences", "ratios", "simple-ratios")


class TruncatedField:
    """k(x_0, ..., x_{n-1}) together with a declared generator style."""

    def __init__(self, ctx, style: str = "free"):
        if style not in STYLES:
            raise SemiModError(f"unknown generator style {style!r}")
        self.ctx = ctx
        self.style = style

    def __eq__(self, other):
        return isinstance(other, TruncatedField) and self.ctx == other.ctx and self.style == other.style

    def __hash__(self):
        return hash((self.ctx, self.style))

    def __repr__(self):
        return f"TruncatedField({self.ctx!r}, {self.style!r})"

    def ring(self, n: int):
        return _ring(self.ctx, n)

    def x(self, n, i):
        return RatFunc(self.ring(n).var(i))

    def generators(self, n: int, points=None):
        """Declared generators whose variables all lie in ``points``."""
        pts = sorted(range(n) if points is None else points)
        x = [self.x(n, i) if i < n else None for i in range(n)]
        if self.style == "free":
            return [x[i] for i in pts]
        if self.style == "differences":
            return [x[i] - x[j] for i, j in combinations(pts, 2)]
        if self.style == "ratios":
            return [x[i] / x[j] for i, j in permutations(pts, 2)]
        out = []
        for i, j, l in permutations(pts, 3):
            if j < l:
                out.append((x[i] - x[j]) / (x[i] - x[l]))
        return out

    def random_element(self, rng: random.Random, n: int, points=None, terms: int = 2, degree: int = 2):
        """Random polynomial expression in the generators (so it lies in the subfield)."""
        gens = self.generators(n, points)
        R = self.ring(n)
        acc = RatFunc(R.const(self.ctx.random_element(rng)))
        if not gens:
            return acc
        for _ in range(terms):
            t = RatFunc(R.const(self.ctx.random_element(rng)))
            for _ in range(rng.randint(1, degree)):
                t = t * rng.choice(gens)
            acc = acc + t
        return acc

    def check_faithful(self, n: int, T):
        """Refuse when some non-identity permutation of T fixes every generator
        built from T-variables (then [K^U : K^H] < [H : U])."""
        T = sorted(T)
        gens = self.generators(n, T)
        U = SubgroupSpec.pointwise(n, T)
        H = SubgroupSpec.setwise(n, T)
        for img in permutations(T):
            if list(img) == T:
                continue
            im = list(range(n))
            for a, b in zip(T, img):
                im[a] = b
            g = Perm(im)
            if all(f.permute(g.images) == f for f in gens):
                raise StyleNotFaithful(
                    f"style {self.style!r} over {self.ctx!r}: {g} fixes every generator on T={T}",
                    U=U, H=H)
        return True


@lru_cache(maxsize=None)
def _ring(ctx, n):
    return make_ring(ctx, tuple(f"x{i}" for i in range(n)))


def embed(f: RatFunc, n: int) -> RatFunc:
    """View a coefficient from a smaller truncation in k(x_0..x_{n-1})."""
    R = _ring(f.ctx, n)
    if f.ring == R:
        return f
    if f.ring.n > n and any(i >= n for i in f.used_vars()):
        raise TruncationTooSmall(f"coefficient {f} needs more than {n} variables")
    return f.to_ring(R)


# basis descriptors ----------------------------------------------------------

class Basis:
    arity = 0

    def elements(self, n):
        raise NotImplementedError

    def act(self, g: Perm, e):
        raise NotImplementedError

    def support(self, e):
        raise NotImplementedError

    def __eq__(self, other):
        return type(self) is type(other) and self.__dict__ == other.__dict__

    def __hash__(self):
        return hash((type(self).__name__, tuple(sorted(self.__dict__.items(), key=str))))


class Subsets(Basis):
    def __init__(self, s: int):
        self.s = s
        self.arity = s

    def elements(self, n):
        return list(combinations(range(n), self.s))

    def act(self, g, e):
        return tuple(sorted(g.images[i] for i in e))

    def support(self, e):
        return frozenset(e)

    def __repr__(self):
        return f"binom:{self.s}" if self.s else "trivial"


class Injections(Basis):
    """Ordered tuples of distinct points, i.e. the G-set G / G_{[s]}."""

    def __init__(self, s: int):
        self.s = s
        self.arity = s

    def elements(self, n):
        return list(permutations(range(n), self.s))

    def act(self, g, e):
        return tuple(g.images[i] for i in e)

    def support(self, e):
        return frozenset(e)

    def __repr__(self):
        return f"inj:{self.s}"


class Tuples(Basis):
    def __init__(self, s: int):
        self.s = s
        self.arity = s

    def elements(self, n):
        return list(product(range(n), repeat=self.s))

    def act(self, g, e):
        return tuple(g.images[i] for i in e)

    def support(self, e):
        return frozenset(e)

    def __repr__(self):
        return f"tuples:{self.s}"


class Product(Basis):
    def __init__(self, *parts):
        self.parts = tuple(parts)
        self.arity = sum(p.arity for p in parts)

    def elements(self, n):
        return list(product(*[p.elements(n) for p in self.parts]))

    def act(self, g, e):
        return tuple(p.act(g, x) for p, x in zip(self.parts, e))

    def support(self, e):
        out = frozenset()
        for p, x in zip(self.parts, e):
            out |= p.support(x)
        return out

    def __repr__(self):
        return "prod:" + "*".join(map(repr, self.parts))


class DirectSum(Basis):
    def __init__(self, *parts):
        self.parts = tuple(parts)
        self.arity = max((p.arity for p in parts), default=0)

    def elements(self, n):
        return [(i, e) for i, p in enumerate(self.parts) for e in p.elements(n)]

    def act(self, g, e):
        i, x = e
        return (i, self.parts[i].act(g, x))

    def support(self, e):
        return self.parts[e[0]].support(e[1])

    def __repr__(self):
        return "sum:" + ",".join(map(repr, self.parts))


TRIVIAL = Subsets(0)


def _generators(n, fixed=()):
    fixed = set(fixed)
    moved = [i for i in range(n) if i not in fixed]
    return [Perm.transposition(n, a, b) for a, b in zip(moved, moved[1:])]


def orbit_with_transversal(basis: Basis, e, gens):
    """BFS orbit of ``e``; returns {element: perm g with g.e = element}."""
    n = gens[0].degree if gens else None
    start = Perm.identity(n) if n is not None else None
    trans = {e: start}
    queue = [e]
    k = 0
    while k < len(queue):
        y = queue[k]
        k += 1
        for g in gens:
            z = basis.act(g, y)
            if z not in trans:
                trans[z] = g * trans[y]
                queue.append(z)
    return trans


def stabilizer_generators(basis: Basis, e, gens):
    """Schreier generators of Stab(e) in <gens>."""
    trans = orbit_with_transversal(basis, e, gens)
    out = set()
    for y, ty in trans.items():
        for g in gens:
            z = basis.act(g, y)
            s = trans[z].inverse() * g * ty
            if not s.is_identity():
                out.add(s)
    return sorted(out)


# modules --------------------------------------------------------------------

class SemiModule:
    """K<S> with S given by ``basis``; ``shift`` j models the restriction (-)_{+J}
    to the pointwise stabilizer of J = {0, ..., j-1}.

    ``twist(g, e, n)`` optionally returns the scalar c with g[e] = c [g e].
    """

    def __init__(self, field: TruncatedField, basis: Basis, twist=None, shift: int = 0, name=None):
        self.field = field
        self.basis = basis
        self.twist = twist
        self.shift = shift
        self.name = name or repr(basis)

    def __repr__(self):
        s = f"K<{self.name}>"
        return s + (f"_+{self.shift}" if self.shift else "")

    def direct_sum(self, other: "SemiModule") -> "SemiModule":
        self._same_field(other)
        if self.twist or other.twist or self.shift != other.shift:
            raise SemiModError("direct sums of twisted or differently shifted modules are not modelled")
        return SemiModule(self.field, DirectSum(self.basis, other.basis), shift=self.shift,
                          name=f"{self.name}+{other.name}")

    def tensor(self, other: "SemiModule") -> "SemiModule":
        self._same_field(other)
        if self.twist or other.twist or self.shift != other.shift:
            raise SemiModError("tensor products of twisted or differently shifted modules are not modelled")
        return SemiModule(self.field, Product(self.basis, other.basis), shift=self.shift,
                          name=f"{self.name}*{other.name}")

    def shifted(self, j: int) -> "SemiModule":
        return SemiModule(self.field, self.basis, self.twist, self.shift + j, self.name)

    def _same_field(self, other):
        if self.field != other.field:
            raise SemiModError("field mismatch")

    def dim(self, n: int) -> int:
        return len(self.basis.elements(n))

    # action
    def twist_factor(self, g, e, n):
        if self.twist is None:
            return None
        return self.twist(g, e, n)

    def act_vector(self, g: Perm, v: dict, n: int) -> dict:
        """g . sum c_e [e] = sum g(c_e) tw(g, e) [g e]."""
        out = {}
        for e, c in v.items():
            c = embed(c, n).permute(g.images)
            t = self.twist_factor(g, e, n)
            if t is not None:
                c = c * t
            f = self.basis.act(g, e)
            out[f] = out[f] + c if f in out else c
        return {k: c for k, c in out.items() if not c.is_zero()}

    # fixed vectors
    def min_truncation(self, T) -> int:
        return len(set(T) | set(range(self.shift))) + self.basis.arity + 1

    def fixed_dim(self, T, n: int | None = None) -> int:
        """Sum of [U : Stab_U] over U-orbits whose size does not change from
        truncation n to n+1, U the pointwise stabilizer of T (and of J)."""
        J = set(range(self.shift))
        T = set(T)
        if T & J:
            raise SemiModError("T must be disjoint from the shift set")
        fixed = T | J
        need = self.min_truncation(T)
        if n is None:
            n = need
        if n < need:
            raise TruncationTooSmall(f"truncation {n} < |T| + arity + 1 = {need}")
        if any(t >= n for t in fixed):
            raise SemiModError("T must lie inside the truncation")
        gens_n = _generators(n, fixed)
        gens_n1 = _generators(n + 1, fixed)
        seen = set()
        total = 0
        for e in self.basis.elements(n):
            if e in seen:
                continue
            orb = orbit_with_transversal(self.basis, e, gens_n) if gens_n else {e: None}
            seen.update(orb)
            size_next = len(orbit_with_transversal(self.basis, e, gens_n1)) if gens_n1 else 1
            if size_next == len(orb):
                # weight [U : Stab_U(e)] = |orbit|; field degree equals group index when
                # the style is faithful on the orbit's support
                if len(orb) > 1:
                    self.field.check_faithful(n, sorted(self.basis.support(e)))
                total += len(orb)
        return total

    def growth_fit(self, sizes) -> BinPoly:
        return growth_fit(self, sizes)

    def level(self, sizes=None) -> int:
        return level(self, sizes)

    def fixed_dim_at_size(self, t: int) -> int:
        return self.fixed_dim(range(self.shift, self.shift + t))


# growth polynomials ---------------------------------------------------------

def _interpolate_binomial(points):
    """Binomial-basis coefficients of the interpolant through (x, y) points."""
    xs = [Fraction(x) for x, _ in points]
    ys = [Fraction(y) for _, y in points]
    k = len(xs)
    # Newton divided differences -> power basis
    coef = list(ys)
    for j in range(1, k):
        for i in range(k - 1, j - 1, -1):
            coef[i] = (coef[i] - coef[i - 1]) / (xs[i] - xs[i - j])
    power = [Fraction(0)] * k
    basis = [Fraction(1)]
    for j in range(k):
        for i, b in enumerate(basis):
            power[i] += coef[j] * b
        nxt = [Fraction(0)] * (len(basis) + 1)
        for i, b in enumerate(basis):
            nxt[i + 1] += b
            nxt[i] -= xs[j] * b
        basis = nxt
    out = [Fraction(0)] * k
    for N, c in enumerate(power):
        if c:
            for i, a in enumerate(power_to_binomial(N)):
                out[i] += c * a
    return out


def growth_fit(M, sizes) -> BinPoly:
    """Interpolate fixed_dim at all sizes but the last; the last one must agree."""
    sizes = list(sizes)
    if len(sizes) < 2 or len(set(sizes)) != len(sizes):
        raise SemiModError("need at least two distinct sizes")
    values = [(t, M.fixed_dim_at_size(t)) for t in sizes]
    coeffs = _interpolate_binomial(values[:-1])
    try:
        P = BinPoly(coeffs)
    except BinPolyError as exc:
        raise NotPolynomial(f"not eventually polynomial at this truncation: {exc}") from None
    t, y = values[-1]
    if P(t) != y:
        raise NotPolynomial(
            f"not eventually polynomial at this truncation: fit predicts {P(t)} at |T|={t}, measured {y}")
    return P


def default_sizes(M):
    a = M.basis.arity
    return list(range(a + 1, a + 6))


def level(M, sizes=None) -> int:
    P = growth_fit(M, sizes or default_sizes(M))
    return max(P.degree, 0)


# equivariant maps -----------------------------------------------------------

@dataclass
class KernelResult:
    dim: int
    generators: list
    rank: int


class SemiMap:
    """Equivariant semilinear map given by images of orbit representatives.

    ``images`` maps a source basis element to a dict {target element: RatFunc};
    coefficients live in the ring of truncation ``n0`` (or any smaller one).
    Orbits without a listed representative are sent to zero.
    """

    def __init__(self, source: SemiModule, target: SemiModule, images: dict, n0: int | None = None):
        if source.field != target.field:
            raise SemiModError("field mismatch")
        self.source = source
        self.target = target
        supp_all = set()
        for r, img in images.items():
            supp_all |= set(source.basis.support(r))
            for f in img:
                supp_all |= set(target.basis.support(f))
        if n0 is None:
            n0 = max(supp_all, default=-1) + 2
        self.n0 = max(n0, 1)
        self.images = {}
        for r, img in images.items():
            sr = source.basis.support(r)
            clean = {}
            for f, c in img.items():
                c = c if isinstance(c, RatFunc) else RatFunc.const(source.field.ring(self.n0), c)
                if any(i not in sr for i in c.used_vars()):
                    raise NotWellDefined(f"coefficient {c} of the image of {r} uses points outside its support")
                c = embed(c, self.n0)
                if c.is_zero():
                    continue
                if not target.basis.support(f) <= sr:
                    raise NotWellDefined(f"image of {r} involves {f}, not supported on {sorted(sr)}")
                clean[f] = c
            self.images[r] = clean
        self._check_well_defined()
        self._cache = {}

    def _check_well_defined(self):
        n = self.n0
        gens = _generators(n)
        reps_seen = {}
        for r in self.images:
            orb = orbit_with_transversal(self.source.basis, r, gens) if gens else {r: None}
            for r2 in reps_seen:
                if r2 in orb:
                    raise NotWellDefined(f"representatives {r2} and {r} lie in one orbit")
            reps_seen[r] = orb
            img = self.images[r]
            for h in (stabilizer_generators(self.source.basis, r, gens) if gens else []):
                moved = self.target.act_vector(h, img, n)
                tw = self.source.twist_factor(h, r, n)
                if tw is not None:
                    inv = tw.inv()
                    moved = {k: c * inv for k, c in moved.items()}
                if moved != img:
                    raise NotWellDefined(
                        f"image of {r} is not fixed by its stabilizer element {h}", certificate=h)

    def image(self, e, n: int) -> dict:
        """phi([e]) at truncation n."""
        if n < self.n0:
            raise TruncationTooSmall(f"truncation {n} below the map's base truncation {self.n0}")
        key = (e, n)
        if key in self._cache:
            return self._cache[key]
        gens = _generators(n)
        for r, img in self.images.items():
            orb = self._orbit(r, n, gens)
            if e in orb:
                g = orb[e] or Perm.identity(n)
                v = self.target.act_vector(g, img, n)
                tw = self.source.twist_factor(g, r, n)
                if tw is not None:
                    inv = tw.inv()
                    v = {k: c * inv for k, c in v.items()}
                self._cache[key] = v
                return v
        self._cache[key] = {}
        return {}

    def _orbit(self, r, n, gens):
        key = ("orbit", r, n)
        if key not in self._cache:
            self._cache[key] = orbit_with_transversal(self.source.basis, r, gens) if gens else {r: None}
        return self._cache[key]

    def matrix(self, n: int, src=None, tgt=None):
        """(rows, cols, M): rows are target elements, columns source elements."""
        if n < self.n0:
            raise TruncationTooSmall(f"truncation {n} below the map's base truncation {self.n0}")
        cols = src if src is not None else self.source.basis.elements(n)
        rows = tgt if tgt is not None else self.target.basis.elements(n)
        R = self.source.field.ring(n)
        ridx = {f: i for i, f in enumerate(rows)}
        zero = RatFunc(R.zero())
        M = [[zero] * len(cols) for _ in rows]
        for j, e in enumerate(cols):
            for f, c in self.image(e, n).items():
                if f in ridx:
                    M[ridx[f]][j] = c
                elif tgt is None:
                    raise SemiModError("image outside the target basis")
        return rows, cols, M

    def is_zero(self, n=None):
        return not any(self.images.values())

    def check_equivariance(self, n: int):
        """phi(g e) = g phi(e) for the adjacent transpositions generating S_n."""
        for g in _generators(n):
            for e in self.source.basis.elements(n):
                lhs = self.image(self.source.basis.act(g, e), n)
                tw = self.source.twist_factor(g, e, n)
                if tw is not None:
                    lhs = {k: c * tw for k, c in lhs.items()}
                rhs = self.target.act_vector(g, self.image(e, n), n)
                if lhs != rhs:
                    return False, (g, e)
        return True, None

    def rank(self, n: int) -> int:
        _, _, M = self.matrix(n)
        return matrix_rank(M) if M and M[0] else 0

    def block_rank(self, T, n: int) -> int:
        """Rank on the span of basis elements supported inside T (and the shift set)."""
        fixed = set(T) | set(range(self.source.shift))
        src = [e for e in self.source.basis.elements(n) if self.source.basis.support(e) <= fixed]
        tgt = [f for f in self.target.basis.elements(n) if self.target.basis.support(f) <= fixed]
        if not src or not tgt:
            return 0
        _, _, M = self.matrix(n, src, tgt)
        return matrix_rank(M)


def kernel(phi: SemiMap, n: int) -> KernelResult:
    rows, cols, M = phi.matrix(n)
    if not rows:
        R = phi.source.field.ring(n)
        gens = [[RatFunc(R.one()) if i == j else RatFunc(R.zero()) for i in range(len(cols))]
                for j in range(len(cols))]
        return KernelResult(len(cols), gens, 0)
    s = solve_linear(M)
    return KernelResult(len(cols) - s.rank, s.nullspace, s.rank)


def common_kernel(maps, n: int) -> KernelResult:
    if not maps:
        raise SemiModError("no maps given")
    src = maps[0].source
    for m in maps:
        if m.source.field != src.field or m.source.basis != src.basis:
            raise SemiModError("maps must share their source")
    M = []
    for m in maps:
        M.extend(m.matrix(n)[2])
    ncols = src.dim(n)
    if not M:
        return KernelResult(ncols, [], 0)
    s = solve_linear(M)
    return KernelResult(ncols - s.rank, s.nullspace, s.rank)


def cokernel_dim(phi: SemiMap, n: int) -> int:
    if phi.is_zero():
        raise SemiModError("cokernel of the zero map is not reported")
    return phi.target.dim(n) - phi.rank(n)


class Cokernel:
    """Fixed-space dimensions of coker(phi): dim target^U - rank of phi on the
    U-fixed part (the basis elements supported in T)."""

    def __init__(self, phi: SemiMap):
        self.phi = phi
        self.basis = phi.target.basis
        self.shift = phi.target.shift

    def min_truncation(self, T):
        return max(self.phi.target.min_truncation(T), self.phi.source.min_truncation(T), self.phi.n0)

    def fixed_dim(self, T, n=None):
        n = n or self.min_truncation(T)
        return self.phi.target.fixed_dim(T, n) - self.phi.block_rank(T, n)

    def fixed_dim_at_size(self, t):
        return self.fixed_dim(range(self.shift, self.shift + t))


def additivity_check(phi: SemiMap, sizes):
    """P(source) + P(coker) == P(target) in the binomial basis."""
    ps = growth_fit(phi.source, sizes)
    pt = growth_fit(phi.target, sizes)
    pc = growth_fit(Cokernel(phi), sizes)
    return ps + pc == pt, (ps, pc, pt)


# generated submodules and growth bounds --------------------------------------

class GeneratedSubmodule:
    """Submodule of K<binom(Psi, s)> generated by one vector alpha with constant
    coefficients.  At size N the value computed is the rank of the translates of
    alpha supported inside T, which sits between C(N - m, s) and C(N, s)."""

    def __init__(self, ctx, s: int, alpha: dict):
        self.ctx = ctx
        self.s = s
        self.alpha = {tuple(sorted(k)): ctx.coerce(v) for k, v in alpha.items() if ctx.coerce(v)}
        if not self.alpha:
            raise SemiModError("generator must be nonzero")
        pts = sorted(set().union(*self.alpha))
        self.support = pts
        self.m = len(pts)

    def fixed_dim_at_size(self, N: int) -> int:
        from .polyring.linalg import _const_rref
        F = self.ctx
        if N < self.m:
            return 0
        cols = {S: i for i, S in enumerate(combinations(range(N), self.s))}
        vecs = set()
        for img in permutations(range(N), self.m):
            mp = dict(zip(self.support, img))
            v = [F.zero] * len(cols)
            for S, c in self.alpha.items():
                v[cols[tuple(sorted(mp[i] for i in S))]] = c
            vecs.add(tuple(v))
        A = [list(v) for v in vecs]
        return len(_const_rref(F, A, len(cols)))


def growth_sandwich_check(sub: GeneratedSubmodule, sizes):
    from math import comb
    rows = []
    ok = True
    for N in sizes:
        d = sub.fixed_dim_at_size(N)
        lo, hi = comb(N - sub.m, sub.s) if N >= sub.m else 0, comb(N, sub.s)
        good = lo <= d <= hi
        ok &= good
        rows.append((N, lo, d, hi, good))
    return ok, rows


# independence of fixed vectors ---------------------------------------------

def check_semilinear_independence(module: SemiModule, vectors, n: int, chi=None):
    """Compare the rank over the constants k with the rank over K.

    ``chi(g)`` gives the twist: each vector must satisfy g v = chi(g) v for the
    generating transpositions (identity twist by default).
    """
    elems = module.basis.elements(n)
    R = module.field.ring(n)
    F = R.ctx
    idx = {e: i for i, e in enumerate(elems)}
    vecs = [{e: embed(c if isinstance(c, RatFunc) else RatFunc.const(R, c), n) for e, c in v.items()}
            for v in vectors]
    vecs = [{e: c for e, c in v.items() if not c.is_zero()} for v in vecs]
    for g in _generators(n):
        scal = chi(g) if chi is not None else None
        for v in vecs:
            gv = module.act_vector(g, v, n)
            want = v if scal is None else {e: c * scal for e, c in v.items()}
            if gv != want:
                raise SemiModError(f"vector not fixed (with the declared twist) by {g}")
    # rank over K
    M = [[v.get(e, RatFunc(R.zero())) for v in vecs] for e in elems]
    rank_K = matrix_rank(M) if vecs and elems else 0
    # rank over k: common denominator, then expand coefficients into monomials
    from .polyring.gcd import lcm
    from .polyring.linalg import _const_rref
    L = R.one()
    for v in vecs:
        for c in v.values():
            L = lcm(L, c.den)
    coords = {}
    rows = []
    for v in vecs:
        row = {}
        for e, c in v.items():
            p = c.num * L.exquo(c.den)
            for m, a in p.terms.items():
                key = (idx[e], m)
                coords.setdefault(key, len(coords))
                row[coords[key]] = a
        rows.append(row)
    A = [[row.get(j, F.zero) for j in range(len(coords))] for row in rows]
    rank_k = len(_const_rref(F, A, len(coords))) if coords else 0
    return {"rank_constants": rank_k, "rank_field": rank_K, "count": len(vecs)}


# random injections ----------------------------------------------------------

def random_symmetric_map(source: SemiModule, target: SemiModule, rng: random.Random, n0: int,
                         density: float = 0.7) -> SemiMap:
    """Random equivariant map with constant coefficients.

    For each source orbit representative r, the image is a sum over
    Stab(r)-orbits of target elements supported in supp(r), each orbit sum
    weighted by a random constant, so it is fixed by Stab(r) by construction.
    """
    F = source.field.ctx
    R = source.field.ring(n0)
    gens = _generators(n0)
    seen = set()
    images = {}
    tgt_elems = target.basis.elements(n0)
    for e in source.basis.elements(n0):
        if e in seen:
            continue
        seen.update(orbit_with_transversal(source.basis, e, gens))
        supp = source.basis.support(e)
        stab = stabilizer_generators(source.basis, e, gens)
        cands = [f for f in tgt_elems if target.basis.support(f) <= supp]
        done = set()
        img = {}
        for f in cands:
            if f in done:
                continue
            orb = orbit_with_transversal(target.basis, f, stab) if stab else {f: None}
            done.update(orb)
            if rng.random() > density:
                continue
            c = F.random_element(rng)
            if not c:
                continue
            for f2 in orb:
                img[f2] = RatFunc.const(R, c)
        images[e] = img
    return SemiMap(source, target, images, n0)


def identity_plus(source: SemiModule, extra: SemiModule, rng, n0: int):
    """Injection source -> source (+) extra, x -> (x, psi(x)) with psi random."""
    target = SemiModule(source.field, DirectSum(source.basis, extra.basis), shift=source.shift,
                        name=f"{source.name}+{extra.name}")
    psi = random_symmetric_map(source, extra, rng, n0)
    R = source.field.ring(n0)
    gens = _generators(n0)
    seen = set()
    images = {}
    for e in source.basis.elements(n0):
        if e in seen:
            continue
        seen.update(orbit_with_transversal(source.basis, e, gens))
        img = {(0, e): RatFunc(R.one())}
        for f, c in psi.image(e, n0).items():
            img[(1, f)] = c
        images[e] = img
    return SemiMap(source, target, images, n0)
