"""Measure factors weighting the state sums, and the identity that makes
them compatible with cutting along an interior subcomplex.

For degree-p fields the weight of M is the alternating product

    mu(M) = prod_{i=0}^{p-1} |H^i(M, bdy M; Gamma)| ^ ((-1)^(p-i))

and mu_rel(M, N) uses H^i(M, N union bdy M) instead.  Cutting along N is
governed by  mu(M) = |K| * mu_rel(M, N) * mu(N)  where K is the kernel of
the forgetful map H^p(M, N union bdy M) -> H^p(M, bdy M); the identity is an
exact consequence of the long exact sequence of the triple and is checked
here by exact rational arithmetic, never floating point.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .cohomology import FiniteAbelianGroup, cohomology, restriction_map
from .simplicial import (
    Pair,
    Triangulation,
    TriangulationError,
    boundary_pair,
    relative_pair,
)


@dataclass(frozen=True)
class MeasureReport:
    mu: Fraction
    factors: tuple  # (degree, group order, exponent +-1)

    def verify(self) -> bool:
        acc = Fraction(1)
        for _, order, exponent in self.factors:
            acc *= Fraction(order) ** exponent
        return acc == self.mu


def _measure_of_pair(pair, p: int, gamma: FiniteAbelianGroup) -> MeasureReport:
    mu = Fraction(1)
    factors = []
    for i in range(p):
        exponent = (-1) ** (p - i)
        order = cohomology(pair, i, gamma).order
        factors.append((i, order, exponent))
        mu *= Fraction(order) ** exponent
    return MeasureReport(mu, tuple(factors))


def measure(M: Triangulation, p: int, gamma: FiniteAbelianGroup) -> MeasureReport:
    """mu(M) over H^i(M, bdy M); p = 0 gives the empty product 1."""
    if p < 0:
        raise ValueError("field degree must be nonnegative")
    if not M.vertices:
        return MeasureReport(Fraction(1), ())
    return _measure_of_pair(boundary_pair(M), p, gamma)


def measure_rel(M: Triangulation, subcomplex, p: int,
                gamma: FiniteAbelianGroup) -> MeasureReport:
    """mu_rel(M, N) over H^i(M, N union bdy M); N must avoid the boundary."""
    if p < 0:
        raise ValueError("field degree must be nonnegative")
    if isinstance(subcomplex, str):
        subcomplex = M.subcomplex(subcomplex)
    subcomplex = frozenset(subcomplex)
    if subcomplex & M.boundary_subspace():
        raise TriangulationError("interior subcomplex meets the boundary")
    return _measure_of_pair(relative_pair(M, subcomplex), p, gamma)


@dataclass(frozen=True)
class FactorizationReport:
    mu_M: Fraction
    kernel_order: int
    mu_rel: Fraction
    mu_N: Fraction
    holds: bool


def measure_factorization(M: Triangulation, subcomplex, p: int,
                          gamma: FiniteAbelianGroup) -> FactorizationReport:
    """Check mu(M) = |K|*mu_rel(M,N)*mu(N) by exact rational comparison."""
    if isinstance(subcomplex, str):
        subcomplex = M.subcomplex(subcomplex)
    subcomplex = frozenset(subcomplex)
    mu_m = measure(M, p, gamma).mu
    mu_rel_val = measure_rel(M, subcomplex, p, gamma).mu
    if subcomplex:
        N, _ = M.extract(subcomplex, "N")
        mu_n = measure(N, p, gamma).mu
        src = cohomology(relative_pair(M, subcomplex), p, gamma)
        dst = cohomology(boundary_pair(M), p, gamma)
        kernel_order = restriction_map(src, dst).kernel_order
    else:
        mu_n = Fraction(1)
        kernel_order = 1
    holds = mu_m == kernel_order * mu_rel_val * mu_n
    return FactorizationReport(mu_m, kernel_order, mu_rel_val, mu_n, holds)
