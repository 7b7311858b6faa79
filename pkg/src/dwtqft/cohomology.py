"""Cohomology of a complex or pair with finite abelian coefficients.

Coefficients decompose over the invariant factors of the group, so every
computation runs per cyclic factor Z_m.  The primary path works directly
over Z_m via the integer Smith normal form of the coboundary matrices:

  * cocycles mod m form the lattice  W = V2 . diag(m / gcd(d_i, m))  where
    d_i are the invariants of the degree-k coboundary and V2 its right
    transform;
  * coboundaries plus m-multiples become, in W-coordinates, the columns of a
    small presentation matrix with entries reduced mod gcd(d_i, m);
  * the Smith form of that presentation yields the cyclic orders, explicit
    generator cocycles, and the coordinate solver.

Cochains always store values on every simplex of the underlying complex;
relative cochains are the ones vanishing on the pair's subspace.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from itertools import product as iter_product
from typing import Callable, Optional, Sequence, Union

from .simplicial import Pair, Triangulation, TriangulationError
from .snf import IntMatrix, smith_normal_form, solve_mod

Space = Union[Triangulation, Pair]


class EnumerationLimitExceeded(RuntimeError):
    def __init__(self, order, limit):
        super().__init__(f"class enumeration of size {order} exceeds limit {limit}")
        self.order = order
        self.limit = limit


# ---------------------------------------------------------------------------
# coefficient groups
# ---------------------------------------------------------------------------


@dataclass(frozen=True)
class FiniteAbelianGroup:
    """Direct sum of Z_m over the invariant factors m_1 | m_2 | ..."""

    invariant_factors: tuple

    def __post_init__(self):
        fs = tuple(int(m) for m in self.invariant_factors)
        object.__setattr__(self, "invariant_factors", fs)
        for m in fs:
            if m < 2:
                raise ValueError("invariant factors must be >= 2")
        for a, b in zip(fs, fs[1:]):
            if b % a:
                raise ValueError(f"{fs} is not a divisibility chain")

    @classmethod
    def from_factors(cls, factors) -> "FiniteAbelianGroup":
        """Normalize an arbitrary list of cyclic orders into invariant-factor
        form (Z_6 + Z_4 -> Z_2 + Z_12)."""
        primary: dict[int, list[int]] = {}
        for m in factors:
            m = int(m)
            if m == 1:
                continue
            if m < 1:
                raise ValueError("cyclic factor orders must be positive")
            d = 2
            while d * d <= m:
                if m % d == 0:
                    e = 1
                    while m % d == 0:
                        m //= d
                        e *= d
                    primary.setdefault(d, []).append(e)
                d += 1
            if m > 1:
                primary.setdefault(m, []).append(m)
        for plist in primary.values():
            plist.sort(reverse=True)
        depth = max((len(v) for v in primary.values()), default=0)
        chain = []
        for i in range(depth):
            f = 1
            for plist in primary.values():
                if i < len(plist):
                    f *= plist[i]
            chain.append(f)
        return cls(tuple(reversed(chain)))

    @property
    def order(self) -> int:
        return math.prod(self.invariant_factors)

    @property
    def is_trivial(self) -> bool:
        return not self.invariant_factors

    @property
    def is_cyclic(self) -> bool:
        return len(self.invariant_factors) <= 1

    def reduce(self, values) -> tuple:
        return tuple(v % m for v, m in zip(values, self.invariant_factors))

    def __repr__(self):
        if not self.invariant_factors:
            return "Z1"
        return "+".join(f"Z{m}" for m in self.invariant_factors)


# ---------------------------------------------------------------------------
# cochains
# ---------------------------------------------------------------------------


class Cochain:
    """A Gamma-valued k-cochain: one residue tuple per k-simplex, stored as
    per-factor vectors aligned with space.simplices(degree)."""

    __slots__ = ("space", "degree", "gamma", "comps")

    def __init__(self, space: Triangulation, degree: int, gamma: FiniteAbelianGroup, comps):
        self.space = space
        self.degree = degree
        self.gamma = gamma
        n = len(space.simplices(degree))
        comps = tuple(tuple(int(x) % m for x in vec)
                      for vec, m in zip(comps, gamma.invariant_factors))
        if len(comps) != len(gamma.invariant_factors) or any(len(v) != n for v in comps):
            raise ValueError("component vectors do not match the complex")
        self.comps = comps

    @classmethod
    def zero(cls, space, degree, gamma) -> "Cochain":
        n = len(space.simplices(degree))
        return cls(space, degree, gamma, tuple((0,) * n for _ in gamma.invariant_factors))

    @classmethod
    def from_values(cls, space, degree, gamma, values: dict) -> "Cochain":
        index = space.index_of(degree)
        vecs = [[0] * len(space.simplices(degree)) for _ in gamma.invariant_factors]
        for simplex, residues in values.items():
            s = tuple(sorted(simplex))
            if s not in index:
                raise ValueError(f"{s} is not a {degree}-simplex of {space.name}")
            if isinstance(residues, int):
                residues = (residues,)
            for j, r in enumerate(residues):
                vecs[j][index[s]] = r
        return cls(space, degree, gamma, tuple(tuple(v) for v in vecs))

    def value(self, simplex) -> tuple:
        i = self.space.index_of(self.degree)[tuple(simplex)]
        return tuple(vec[i] for vec in self.comps)

    def is_zero(self) -> bool:
        return all(all(x == 0 for x in vec) for vec in self.comps)

    def vanishes_on(self, subspace) -> bool:
        index = self.space.index_of(self.degree)
        for s in subspace:
            if len(s) - 1 == self.degree:
                i = index[s]
                if any(vec[i] for vec in self.comps):
                    return False
        return True

    def __add__(self, other: "Cochain") -> "Cochain":
        self._compat(other)
        return Cochain(self.space, self.degree, self.gamma,
                       tuple(tuple((x + y) % m for x, y in zip(a, b))
                             for a, b, m in zip(self.comps, other.comps,
                                                self.gamma.invariant_factors)))

    def __sub__(self, other: "Cochain") -> "Cochain":
        self._compat(other)
        return Cochain(self.space, self.degree, self.gamma,
                       tuple(tuple((x - y) % m for x, y in zip(a, b))
                             for a, b, m in zip(self.comps, other.comps,
                                                self.gamma.invariant_factors)))

    def __neg__(self) -> "Cochain":
        return Cochain(self.space, self.degree, self.gamma,
                       tuple(tuple(-x % m for x in a)
                             for a, m in zip(self.comps, self.gamma.invariant_factors)))

    def scaled(self, k: int) -> "Cochain":
        return Cochain(self.space, self.degree, self.gamma,
                       tuple(tuple(k * x % m for x in a)
                             for a, m in zip(self.comps, self.gamma.invariant_factors)))

    def d(self) -> "Cochain":
        mat = self.space.coboundary(self.degree)
        comps = []
        for vec, m in zip(self.comps, self.gamma.invariant_factors):
            comps.append(tuple(x % m for x in mat.apply(vec)))
        return Cochain(self.space, self.degree + 1, self.gamma, comps)

    def is_cocycle(self) -> bool:
        return self.d().is_zero()

    def pullback(self, onto: Triangulation, vertex_map: Sequence[int]) -> "Cochain":
        """Pull back along the simplicial map onto -> self.space given by
        vertex_map; the map must be order-preserving on every simplex."""
        index = self.space.index_of(self.degree)
        vecs = []
        positions = []
        for s in onto.simplices(self.degree):
            img = tuple(vertex_map[v] for v in s)
            if any(x >= y for x, y in zip(img, img[1:])):
                raise TriangulationError(f"vertex map is not monotone on {s}")
            if img not in index:
                raise TriangulationError(f"image simplex {img} missing from {self.space.name}")
            positions.append(index[img])
        for vec in self.comps:
            vecs.append(tuple(vec[i] for i in positions))
        return Cochain(onto, self.degree, self.gamma, tuple(vecs))

    def push_into(self, big: Triangulation, vertex_map: Sequence[int]) -> "Cochain":
        """Extend by zero along an injective monotone map self.space -> big."""
        index = big.index_of(self.degree)
        vecs = [[0] * len(big.simplices(self.degree)) for _ in self.comps]
        for pos, s in enumerate(self.space.simplices(self.degree)):
            img = tuple(vertex_map[v] for v in s)
            if any(x >= y for x, y in zip(img, img[1:])):
                raise TriangulationError(f"vertex map is not monotone on {s}")
            if img not in index:
                raise TriangulationError(f"image simplex {img} missing from {big.name}")
            for j, vec in enumerate(self.comps):
                vecs[j][index[img]] = vec[pos]
        return Cochain(big, self.degree, self.gamma, tuple(tuple(v) for v in vecs))

    def _compat(self, other):
        if self.space is not other.space or self.degree != other.degree \
                or self.gamma != other.gamma:
            raise ValueError("cochains live on different complexes")

    def __eq__(self, other):
        if not isinstance(other, Cochain):
            return NotImplemented
        return (self.space is other.space and self.degree == other.degree
                and self.gamma == other.gamma and self.comps == other.comps)

    def __hash__(self):
        return hash((id(self.space), self.degree, self.gamma, self.comps))

    def __repr__(self):
        return f"Cochain({self.space.name}, k={self.degree}, {self.gamma})"


def random_cochain(space, degree, gamma, rng) -> Cochain:
    n = len(space.simplices(degree))
    comps = tuple(tuple(rng.randrange(m) for _ in range(n))
                  for m in gamma.invariant_factors)
    return Cochain(space, degree, gamma, comps)


# ---------------------------------------------------------------------------
# ambient helpers
# ---------------------------------------------------------------------------


def space_of(X: Space) -> Triangulation:
    return X.space if isinstance(X, Pair) else X


def subspace_of(X: Space) -> frozenset:
    return X.subspace if isinstance(X, Pair) else frozenset()


def chain_simplices(X: Space, k: int) -> tuple:
    if isinstance(X, Pair):
        return X.simplices(k)
    return X.simplices(k)


def _cobound(X: Space, k: int) -> IntMatrix:
    return space_of(X).coboundary(k, subspace_of(X))


def _snf(X: Space, k: int):
    return space_of(X).snf_coboundary(k, subspace_of(X))


# ---------------------------------------------------------------------------
# per-factor computation
# ---------------------------------------------------------------------------


class _Factor:
    """Solver data for one cyclic coefficient factor Z_m."""

    __slots__ = ("m", "orders", "reps", "_v2inv", "_scale", "_q", "_kept",
                 "_pres_u", "_positions", "_d2")

    def __init__(self, X: Space, k: int, m: int):
        cols = chain_simplices(X, k)
        n = len(cols)
        d2_mat = _cobound(X, k)
        dec2 = _snf(X, k)
        diag = list(dec2.diagonal) + [0] * (n - len(dec2.diagonal))
        q = [math.gcd(diag[i], m) if diag[i] else m for i in range(n)]
        scale = [m // qi for qi in q]

        d1_mat = _cobound(X, k - 1)
        g = dec2.v_inv @ d1_mat
        kept = [i for i in range(n) if q[i] > 1]
        kept_pos = {i: r for r, i in enumerate(kept)}
        entries = {}
        for (r, c), v in g.items():
            if scale[r] > 1 and v % scale[r]:
                raise AssertionError("coboundary image escapes the cocycle lattice")
            if r in kept_pos:
                val = (v // scale[r]) % q[r]
                if val:
                    entries[(kept_pos[r], c)] = val
        ncols = d1_mat.cols
        for r, i in enumerate(kept):
            entries[(r, ncols + r)] = q[i]
        pres = IntMatrix(len(kept), ncols + len(kept), entries)
        dec_p = smith_normal_form(pres)
        e = list(dec_p.diagonal)
        positions = tuple(i for i, ei in enumerate(e) if ei > 1)
        self.m = m
        self.orders = tuple(e[i] for i in positions)
        self._v2inv = dec2.v_inv
        self._scale = scale
        self._q = q
        self._kept = kept
        self._pres_u = dec_p.U
        self._positions = positions
        self._d2 = d2_mat

        reps = []
        v2 = dec2.V
        for pos in positions:
            y_kept = dec_p.u_inv.column(pos)
            z = [0] * n
            for r, i in enumerate(kept):
                z[i] = scale[i] * y_kept[r]
            x = tuple(v % m for v in v2.apply(z))
            assert all(v % m == 0 for v in d2_mat.apply(x)), "representative is not a cocycle"
            reps.append(x)
        self.reps = tuple(reps)

    def coordinates(self, vec) -> tuple:
        if any(v % self.m for v in self._d2.apply(vec)):
            raise ValueError("not a cocycle (mod m) on this pair")
        t = self._v2inv.apply(vec)
        y = []
        for i, ti in enumerate(t):
            if ti % self._scale[i]:
                raise ValueError("not a cocycle (mod m) on this pair")
            y.append(ti // self._scale[i])
        v_kept = [y[i] % self._q[i] for i in self._kept]
        c = self._pres_u.apply(v_kept)
        return tuple(c[pos] % self.orders[j] for j, pos in enumerate(self._positions))


# ---------------------------------------------------------------------------
# cohomology groups
# ---------------------------------------------------------------------------


class CohomologyGroup:
    """H^degree(X; Gamma) with explicit generator cocycles and a coordinate
    solver expressing any cocycle's class over them."""

    __slots__ = ("ambient", "degree", "gamma", "cyclic_orders", "representatives",
                 "_factors", "_chain", "_chain_positions")

    def __init__(self, ambient: Space, degree: int, gamma: FiniteAbelianGroup):
        self.ambient = ambient
        self.degree = degree
        self.gamma = gamma
        space = space_of(ambient)
        chain = chain_simplices(ambient, degree)
        index = space.index_of(degree)
        self._chain = chain
        self._chain_positions = tuple(index[s] for s in chain)

        factors = []
        orders = []
        reps = []
        dim_ok = 0 <= degree <= space.dim
        for j, m in enumerate(gamma.invariant_factors):
            if not dim_ok:
                continue
            fac = _Factor(ambient, degree, m)
            factors.append((j, fac))
            for vec in fac.reps:
                full = [0] * len(space.simplices(degree))
                for pos, value in zip(self._chain_positions, vec):
                    full[pos] = value
                comps = []
                for jj, mm in enumerate(gamma.invariant_factors):
                    if jj == j:
                        comps.append(tuple(full))
                    else:
                        comps.append((0,) * len(space.simplices(degree)))
                reps.append(Cochain(space, degree, gamma, tuple(comps)))
            orders.extend(fac.orders)
        self._factors = tuple(factors)
        self.cyclic_orders = tuple(orders)
        self.representatives = tuple(reps)

    @property
    def order(self) -> int:
        return math.prod(self.cyclic_orders)

    def zero(self) -> Cochain:
        return Cochain.zero(space_of(self.ambient), self.degree, self.gamma)

    def _compact(self, cochain: Cochain, j: int):
        vec = cochain.comps[j]
        sub = subspace_of(self.ambient)
        if sub and not cochain.vanishes_on(sub):
            raise ValueError("cochain does not vanish on the subspace")
        return tuple(vec[pos] for pos in self._chain_positions)

    def coordinates(self, cochain: Cochain) -> tuple:
        if cochain.space is not space_of(self.ambient) or cochain.degree != self.degree:
            raise ValueError("cochain does not live on this pair")
        out = []
        for j, fac in self._factors:
            out.extend(fac.coordinates(self._compact(cochain, j)))
        return tuple(out)

    def combination(self, coefficients: Sequence[int]) -> Cochain:
        """The cocycle sum_l coefficients[l] * representative[l]."""
        if len(coefficients) != len(self.representatives):
            raise ValueError("coefficient count mismatch")
        out = Cochain.zero(space_of(self.ambient), self.degree, self.gamma)
        for c, rep in zip(coefficients, self.representatives):
            if c % 1:
                raise ValueError("integer coefficients required")
            if c:
                out = out + rep.scaled(c)
        return out

    def __repr__(self):
        return (f"CohomologyGroup(H^{self.degree}; {self.gamma}; "
                f"orders={list(self.cyclic_orders)})")


def cohomology(X: Space, degree: int, gamma: FiniteAbelianGroup) -> CohomologyGroup:
    space = space_of(X)
    key = ("cohomology", degree, subspace_of(X), gamma)
    cache = space._cache
    if key not in cache:
        cache[key] = CohomologyGroup(X, degree, gamma)
    return cache[key]


DEFAULT_LIMIT = 10 ** 6


def enumerate_classes(H: CohomologyGroup, limit: int = DEFAULT_LIMIT) -> list:
    """One representative cocycle per class, in lexicographic coordinate
    order; deterministic."""
    if H.order > limit:
        raise EnumerationLimitExceeded(H.order, limit)
    out = []
    for coords in iter_product(*(range(o) for o in H.cyclic_orders)):
        out.append(H.combination(coords))
    return out


def is_cohomologous(c1: Cochain, c2: Cochain, X: Optional[Space] = None):
    """A witness w with dw = c2 - c1 (vanishing on the subspace when X is a
    Pair), or None when the classes differ; verified by substitution."""
    if X is None:
        X = c1.space
    space = space_of(X)
    sub = subspace_of(X)
    if c1.space is not space or c2.space is not space:
        raise ValueError("cochains do not live on the given pair")
    diff = c2 - c1
    if sub and not diff.vanishes_on(sub):
        return None
    k = diff.degree
    chain_k = chain_simplices(X, k)
    chain_prev = chain_simplices(X, k - 1)
    index_k = space.index_of(k)
    positions_k = [index_k[s] for s in chain_k]
    mat = _cobound(X, k - 1)
    dec = _snf(X, k - 1)
    index_prev = space.index_of(k - 1)
    positions_prev = [index_prev[s] for s in chain_prev]
    comps = []
    for j, m in enumerate(diff.gamma.invariant_factors):
        b = tuple(diff.comps[j][pos] for pos in positions_k)
        sol = solve_mod(mat, b, m, dec=dec)
        if sol is None:
            return None
        full = [0] * len(space.simplices(k - 1))
        for pos, value in zip(positions_prev, sol):
            full[pos] = value
        comps.append(tuple(full))
    witness = Cochain(space, k - 1, diff.gamma, tuple(comps))
    assert witness.d() == diff, "witness verification failed"
    return witness


# ---------------------------------------------------------------------------
# induced maps
# ---------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class InducedMap:
    """A homomorphism between cohomology groups in generator coordinates."""

    source: CohomologyGroup
    target: CohomologyGroup
    matrix: IntMatrix  # target coordinates of each source generator, by column
    kernel_order: int

    @property
    def image_order(self) -> int:
        return self.source.order // self.kernel_order

    @property
    def is_surjective(self) -> bool:
        return self.image_order == self.target.order


def induced_map(source: CohomologyGroup, target: CohomologyGroup,
                transfer: Callable[[Cochain], Cochain]) -> InducedMap:
    cols = []
    for rep in source.representatives:
        cols.append(target.coordinates(transfer(rep)))
    t = len(target.cyclic_orders)
    s = len(cols)
    entries = {}
    for c, col in enumerate(cols):
        for r, v in enumerate(col):
            if v:
                entries[(r, c)] = v
    matrix = IntMatrix(t, s, entries)

    # |ker| = |source| * |Z^t / (im(matrix) + diag lattice)| / |target|
    aug_entries = dict(entries)
    for r, order in enumerate(target.cyclic_orders):
        aug_entries[(r, s + r)] = order
    aug = IntMatrix(t, s + t, aug_entries)
    cok = math.prod(smith_normal_form(aug).diagonal)
    kernel_order = source.order * cok // target.order
    return InducedMap(source, target, matrix, kernel_order)


def restriction_map(source: CohomologyGroup, target: CohomologyGroup,
                    vertex_map: Optional[Sequence[int]] = None) -> InducedMap:
    """The natural map: either the forgetful map between pairs on the same
    complex (subspace shrinks), or restriction to a subcomplex given by the
    inclusion's vertex map."""
    src_space = space_of(source.ambient)
    dst_space = space_of(target.ambient)
    if dst_space is src_space:
        if not subspace_of(target.ambient) <= subspace_of(source.ambient):
            raise ValueError("target subspace must be contained in source subspace")
        return induced_map(source, target, lambda c: c)
    if vertex_map is None:
        raise ValueError("restriction to a different complex needs the inclusion vertex map")
    vm = tuple(vertex_map)
    return induced_map(source, target, lambda c: c.pullback(dst_space, vm))
