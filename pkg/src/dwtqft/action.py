"""Cochain-level action functionals for the state sums.

Two variants ship: the trivial action (constant 1) and, for cyclic
coefficients Z_n on an oriented 2p-manifold, the cup-square action

    exp(2*pi*i * lam * s / n),   s = sum_top sign(t) * (u cup u)(t)  mod n,

where u is the degree-p field and the cup product is the front-face/back-face
formula on vertex-sorted simplices.  On a closed manifold the value only
depends on the field's class; check_gauge_invariance certifies that on
concrete inputs and is expected to fail when handed a corrupted fundamental
class (the negative control used by the verification suite).
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from typing import Optional

from .cohomology import (
    Cochain,
    FiniteAbelianGroup,
    cohomology,
    enumerate_classes,
    random_cochain,
)
from .cohomology import DEFAULT_LIMIT
from .phases import PhaseSum
from .simplicial import Triangulation, TriangulationError


@dataclass(frozen=True)
class ActionSpec:
    kind: str  # "trivial" | "cup_square"
    lam: int = 0

    def __post_init__(self):
        if self.kind not in ("trivial", "cup_square"):
            raise ValueError(f"unknown action kind {self.kind!r}")

    @classmethod
    def trivial(cls) -> "ActionSpec":
        return cls("trivial")

    @classmethod
    def cup_square(cls, lam: int) -> "ActionSpec":
        return cls("cup_square", int(lam))

    @property
    def is_twisted(self) -> bool:
        return self.kind == "cup_square"

    def to_json(self) -> dict:
        if self.kind == "trivial":
            return {"action": "trivial"}
        return {"action": "cup_square", "lambda": self.lam}

    @classmethod
    def from_json(cls, obj: dict) -> "ActionSpec":
        kind = obj["action"]
        if kind == "trivial":
            return cls.trivial()
        if kind == "cup_square":
            return cls.cup_square(obj["lambda"])
        raise ValueError(f"unknown action {kind!r}")


@dataclass(frozen=True)
class FundamentalClass:
    """Signed top simplices of an oriented manifold; for a closed manifold the
    simplicial boundary of the chain vanishes."""

    simplices: tuple
    signs: tuple

    @classmethod
    def from_triangulation(cls, M: Triangulation) -> "FundamentalClass":
        if not M.oriented:
            raise TriangulationError(f"{M.name} carries no orientation")
        M.check_orientation()
        fc = cls(M.top, M.signs)
        if M.is_closed():
            assert fc.boundary_is_zero(M)
        return fc

    def boundary_is_zero(self, M: Triangulation) -> bool:
        acc: dict = {}
        for s, sign in zip(self.simplices, self.signs):
            for j in range(len(s)):
                face = s[:j] + s[j + 1:]
                acc[face] = acc.get(face, 0) + sign * (-1) ** j
        return all(v == 0 for v in acc.values())

    def flipped(self, index: int) -> "FundamentalClass":
        signs = list(self.signs)
        signs[index] = -signs[index]
        return FundamentalClass(self.simplices, tuple(signs))


def cup_product(u: Cochain, v: Cochain) -> Cochain:
    """(u cup v)(v_0..v_{p+q}) = u(v_0..v_p) * v(v_p..v_{p+q}) mod n, on the
    vertex-sorted simplices of the common complex; cyclic coefficients only."""
    if u.space is not v.space:
        raise ValueError("cup product needs cochains on the same complex")
    if u.gamma != v.gamma or not u.gamma.is_cyclic or u.gamma.is_trivial:
        raise ValueError("cup product needs a common cyclic modulus")
    n = u.gamma.invariant_factors[0]
    space = u.space
    p, q = u.degree, v.degree
    index_p = space.index_of(p)
    index_q = space.index_of(q)
    uv = u.comps[0]
    vv = v.comps[0]
    out = []
    for s in space.simplices(p + q):
        front = index_p[s[: p + 1]]
        back = index_q[s[p:]]
        out.append(uv[front] * vv[back] % n)
    return Cochain(space, p + q, u.gamma, (tuple(out),))


def _pairing(M: Triangulation, top_cochain: Cochain, fundamental: FundamentalClass) -> int:
    n = top_cochain.gamma.invariant_factors[0]
    vec = top_cochain.comps[0]
    index = M.index_of(M.dim)
    total = 0
    for s, sign in zip(fundamental.simplices, fundamental.signs):
        total += sign * vec[index[s]]
    return total % n


def evaluate_action(M: Triangulation, field: Cochain, spec: ActionSpec,
                    fundamental: Optional[FundamentalClass] = None) -> PhaseSum:
    """The action phase of one field cochain; a single unit term."""
    if field.space is not M:
        raise ValueError("field does not live on the given complex")
    if spec.kind == "trivial":
        return PhaseSum.one()
    gamma = field.gamma
    if not gamma.is_cyclic or gamma.is_trivial:
        raise ValueError("cup-square action needs cyclic coefficients")
    p = field.degree
    if M.dim != 2 * p:
        raise TriangulationError(
            f"cup-square action needs dim = 2p, got dim={M.dim}, p={p}")
    if fundamental is None:
        fundamental = FundamentalClass.from_triangulation(M)
    n = gamma.invariant_factors[0]
    s = _pairing(M, cup_product(field, field), fundamental)
    return PhaseSum(n, {(spec.lam % n) * s % n: 1})


def check_gauge_invariance(M: Triangulation, spec: ActionSpec, p: int,
                           gamma: FiniteAbelianGroup, trials: int = 100,
                           seed: int = 0,
                           fundamental: Optional[FundamentalClass] = None,
                           limit: int = DEFAULT_LIMIT) -> bool:
    """True iff the action is constant along `trials` random coboundary
    perturbations of every class representative; exact comparisons."""
    if not M.is_closed():
        raise TriangulationError("gauge invariance check needs a closed manifold")
    if fundamental is None:
        fundamental = FundamentalClass.from_triangulation(M)
    classes = enumerate_classes(cohomology(M, p, gamma), limit)
    rng = random.Random(seed)
    for rep in classes:
        base = evaluate_action(M, rep, spec, fundamental)
        for _ in range(trials):
            phi = random_cochain(M, p - 1, gamma, rng)
            value = evaluate_action(M, rep + phi.d(), spec, fundamental)
            if value != base:
                return False
    return True
