"""Exact state-sum invariants of triangulated manifolds for finite abelian
higher gauge theories: cohomology-valued field spaces, measure factors,
partition functions, state spaces, bordism matrices and the gluing checks
relating them."""

from .phases import PhaseSum, Rational

__all__ = ["PhaseSum", "Rational"]
