"""Partition functions, state spaces, bordism matrices, and the gluing
checks tying them together.

Conventions that make the closed-pairing bookkeeping cancel:

  * every state space fixes one representative cocycle per boundary class,
    chosen once and reused by all bordisms attached to it;
  * a bordism entry sums the action over relative-field representatives that
    restrict to the attached boundary cochains exactly (base point found by a
    modular solve, orbit under the relative cohomology group);
  * the trace reads only diagonal entries and multiplies by the boundary
    measure.

verify_gluing computes both sides of the cut-and-reglue identity
independently: the partition function of the glued manifold against the
measure-weighted trace of the cut manifold's bordism matrix, with all
boundary data derived by restriction and pullback along the gluing map.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import product as iter_product
from typing import Optional, Sequence

from .action import ActionSpec, evaluate_action
from .cohomology import (
    DEFAULT_LIMIT,
    Cochain,
    CohomologyGroup,
    FiniteAbelianGroup,
    cohomology,
    enumerate_classes,
    restriction_map,
)
from .measure import measure
from .phases import PhaseSum
from .simplicial import (
    GluingError,
    GlueResult,
    Triangulation,
    TriangulationError,
    boundary_pair,
    glue,
    relative_pair,
)


@dataclass(eq=False)
class FieldSpace:
    """Representatives of the field classes on a manifold, one per class;
    empty exactly when the requested boundary cochain does not extend."""

    ambient: Triangulation
    degree: int
    gamma: FiniteAbelianGroup
    classes: tuple
    boundary_cochain: Optional[Cochain] = None
    torsor_base: Optional[Cochain] = None

    def __len__(self):
        return len(self.classes)


def field_space(M: Triangulation, p: int, gamma: FiniteAbelianGroup,
                boundary_cochain: Optional[Cochain] = None,
                limit: int = DEFAULT_LIMIT) -> FieldSpace:
    """Absolute case: one cocycle per class of H^p(M).  Relative case: a base
    cocycle restricting to the boundary cochain exactly, shifted by the
    classes of H^p(M, bdy M); empty when no extension exists."""
    if boundary_cochain is None:
        classes = enumerate_classes(cohomology(M, p, gamma), limit)
        return FieldSpace(M, p, gamma, tuple(classes))

    bc = boundary_cochain
    if bc.space is not M or bc.degree != p or bc.gamma != gamma:
        raise ValueError("boundary cochain does not match the manifold and degree")
    sub = M.boundary_subspace()
    index_p = M.index_of(p)
    for s in M.simplices(p):
        if s not in sub and any(vec[index_p[s]] for vec in bc.comps):
            raise ValueError("boundary cochain must be supported on the boundary")
    differential = bc.d()
    index_p1 = M.index_of(p + 1)
    for s in M.simplices(p + 1):
        if s in sub and any(vec[index_p1[s]] for vec in differential.comps):
            raise ValueError("boundary cochain is not a cocycle on the boundary")

    pair = boundary_pair(M)
    chain_rows = [index_p1[s] for s in pair.simplices(p + 1)]
    chain_cols = pair.simplices(p)
    col_positions = [index_p[s] for s in chain_cols]
    mat = pair.coboundary(p)
    dec = pair.snf_coboundary(p)
    from .snf import solve_mod

    comps = []
    for j, m in enumerate(gamma.invariant_factors):
        b = tuple(-differential.comps[j][r] % m for r in chain_rows)
        sol = solve_mod(mat, b, m, dec=dec)
        if sol is None:
            return FieldSpace(M, p, gamma, (), boundary_cochain=bc)
        full = [0] * len(M.simplices(p))
        for pos, val in zip(col_positions, sol):
            full[pos] = val
        comps.append(tuple(full))
    base = bc + Cochain(M, p, gamma, tuple(comps))
    assert base.is_cocycle(), "torsor base point is not a cocycle"

    rel = cohomology(pair, p, gamma)
    shifts = enumerate_classes(rel, limit)
    classes = tuple(base + rho for rho in shifts)
    return FieldSpace(M, p, gamma, classes, boundary_cochain=bc, torsor_base=base)


# ---------------------------------------------------------------------------
# closed manifolds
# ---------------------------------------------------------------------------


def partition_closed(M: Triangulation, p: int, gamma: FiniteAbelianGroup,
                     spec: ActionSpec, limit: int = DEFAULT_LIMIT) -> PhaseSum:
    """mu(M) times the action sum over one representative per field class."""
    if not M.is_closed():
        raise TriangulationError(f"{M.name} has boundary; use a bordism matrix")
    fields = field_space(M, p, gamma, limit=limit)
    total = PhaseSum.zero()
    for rep in fields.classes:
        total = total + evaluate_action(M, rep, spec)
    return total * measure(M, p, gamma).mu


def dagger_check(M: Triangulation, p: int, gamma: FiniteAbelianGroup,
                 spec: ActionSpec, limit: int = DEFAULT_LIMIT) -> bool:
    """Exact check that orientation reversal conjugates the partition value."""
    reversed_value = partition_closed(M.with_reversed_orientation(), p, gamma, spec, limit)
    return reversed_value == partition_closed(M, p, gamma, spec, limit).conj()


# ---------------------------------------------------------------------------
# state spaces and bordisms
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class StateSpace:
    """Free module on the boundary field classes of a closed manifold, with
    the inner product (e_Q, e_Q') = ip_scale * delta."""

    space: Triangulation
    degree: int
    gamma: FiniteAbelianGroup
    basis: tuple  # fixed representative cocycles, one per class
    group: CohomologyGroup
    ip_scale: Fraction

    @property
    def dimension(self) -> int:
        return len(self.basis)


def state_space(N: Triangulation, p: int, gamma: FiniteAbelianGroup,
                limit: int = DEFAULT_LIMIT) -> StateSpace:
    if N.vertices and not N.is_closed():
        raise TriangulationError("state spaces are assigned to closed manifolds")
    group = cohomology(N, p, gamma)
    basis = tuple(enumerate_classes(group, limit))
    return StateSpace(N, p, gamma, basis, group, measure(N, p, gamma).mu)


@dataclass(frozen=True, eq=False)
class BoundaryAttachment:
    """Identification of a state space's manifold with one named boundary
    component of a bordism: vertex_map sends state-space vertex indices to
    bordism vertex indices, order-preservingly on every simplex."""

    component: str
    space: StateSpace
    vertex_map: tuple


@dataclass(eq=False)
class BordismMatrix:
    bordism: Optional[Triangulation]
    sources: tuple  # StateSpace per incoming attachment
    targets: tuple
    entries: dict  # (in multi-index, out multi-index) -> PhaseSum

    def entry(self, i, j) -> PhaseSum:
        if isinstance(i, int):
            i = (i,)
        if isinstance(j, int):
            j = (j,)
        return self.entries[(tuple(i), tuple(j))]

    @property
    def source_indices(self):
        return list(iter_product(*(range(s.dimension) for s in self.sources)))

    @property
    def target_indices(self):
        return list(iter_product(*(range(s.dimension) for s in self.targets)))


def _validate_attachment(B: Triangulation, attachment: BoundaryAttachment):
    N = attachment.space.space
    vm = attachment.vertex_map
    if len(vm) != len(N.vertices):
        raise GluingError("attachment vertex map has the wrong length")
    component = B.subcomplex(attachment.component) if attachment.component else frozenset()
    mapped = set()
    for k in range(N.dim + 1):
        for s in N.simplices(k):
            img = tuple(vm[v] for v in s)
            if any(x >= y for x, y in zip(img, img[1:])):
                raise GluingError(f"attachment map not monotone on {s}")
            mapped.add(img)
    if mapped != set(component):
        raise GluingError(
            f"attachment does not identify the state space with component "
            f"{attachment.component!r}")


def bordism_matrix(B: Triangulation, ins: Sequence[BoundaryAttachment],
                   outs: Sequence[BoundaryAttachment], p: int,
                   gamma: FiniteAbelianGroup, spec: ActionSpec,
                   limit: int = DEFAULT_LIMIT) -> BordismMatrix:
    """Entries mu(B) * sum of action values over the relative field classes
    extending each pair of boundary basis cochains."""
    ins = tuple(ins)
    outs = tuple(outs)
    covered = set()
    for attachment in (*ins, *outs):
        _validate_attachment(B, attachment)
        component = B.subcomplex(attachment.component)
        if covered & set(component):
            raise GluingError("attachments overlap")
        covered |= set(component)
    if covered != set(B.boundary_subspace()):
        raise GluingError("attachments must cover the whole boundary")

    mu_b = measure(B, p, gamma).mu
    pushed_in = [
        [rep.push_into(B, a.vertex_map) for rep in a.space.basis] for a in ins
    ]
    pushed_out = [
        [rep.push_into(B, a.vertex_map) for rep in a.space.basis] for a in outs
    ]
    entries = {}
    zero = Cochain.zero(B, p, gamma)
    for in_idx in iter_product(*(range(a.space.dimension) for a in ins)):
        for out_idx in iter_product(*(range(a.space.dimension) for a in outs)):
            bc = zero
            for pos, i in enumerate(in_idx):
                bc = bc + pushed_in[pos][i]
            for pos, j in enumerate(out_idx):
                bc = bc + pushed_out[pos][j]
            fields = field_space(B, p, gamma, bc, limit)
            total = PhaseSum.zero()
            for rep in fields.classes:
                total = total + evaluate_action(B, rep, spec)
            entries[(in_idx, out_idx)] = total * mu_b
    return BordismMatrix(B, tuple(a.space for a in ins), tuple(a.space for a in outs), entries)


def trace_glue(matrix: BordismMatrix) -> PhaseSum:
    """Contraction of source against target: mu_N times the diagonal sum."""
    if len(matrix.sources) != len(matrix.targets) or any(
            a is not b for a, b in zip(matrix.sources, matrix.targets)):
        raise ValueError("trace needs identical source and target state spaces")
    mu_n = Fraction(1)
    for s in matrix.sources:
        mu_n *= s.ip_scale
    total = PhaseSum.zero()
    for idx in matrix.source_indices:
        total = total + matrix.entries[(tuple(idx), tuple(idx))]
    return total * mu_n


def compose_bordisms(first: BordismMatrix, second: BordismMatrix) -> BordismMatrix:
    """Matrix product weighted by the middle pairing:
    (first then second)(i, k) = mu_mid * sum_j first(i, j) * second(j, k)."""
    if len(first.targets) != len(second.sources) or any(
            a is not b for a, b in zip(first.targets, second.sources)):
        raise ValueError("bordisms are not composable: middle state spaces differ")
    mu_mid = Fraction(1)
    for s in first.targets:
        mu_mid *= s.ip_scale
    entries = {}
    middle = first.target_indices
    for i in first.source_indices:
        for k in second.target_indices:
            acc = PhaseSum.zero()
            for j in middle:
                acc = acc + first.entries[(tuple(i), tuple(j))] * \
                    second.entries[(tuple(j), tuple(k))]
            entries[(tuple(i), tuple(k))] = acc * mu_mid
    return BordismMatrix(None, first.sources, second.targets, entries)


# ---------------------------------------------------------------------------
# gluing verification
# ---------------------------------------------------------------------------


@dataclass(eq=False)
class GluingReport:
    glue_result: GlueResult
    degree: int
    gamma: FiniteAbelianGroup
    spec: ActionSpec
    lhs: PhaseSum
    rhs: PhaseSum
    holds: bool
    exact: bool
    mu_M: Fraction
    mu_MN: Fraction
    mu_N: Fraction
    kernel_order: int
    state_dimension: int


def verify_gluing(fixture, p: int, gamma: FiniteAbelianGroup, spec: ActionSpec,
                  tol: float = 1e-9, limit: int = DEFAULT_LIMIT) -> GluingReport:
    """Compare the glued manifold's partition value against the trace of the
    cut manifold's bordism matrix over the seam state space."""
    res = fixture if isinstance(fixture, GlueResult) else glue(fixture)
    M = res.glued
    B = res.cut
    if not M.is_closed():
        raise GluingError("gluing verification expects the glued manifold to be closed")

    seam = M.subcomplex(res.spec.plus)
    N, n_to_m = M.extract(seam, f"{M.name}.seam")
    ss = state_space(N, p, gamma, limit)

    b_pos = B.vertex_position()
    mapping = res.spec.mapping
    out_map = tuple(b_pos[label] for label in N.vertices)
    in_map = tuple(b_pos[mapping[label]] for label in N.vertices)
    bm = bordism_matrix(
        B,
        [BoundaryAttachment(res.spec.minus, ss, in_map)],
        [BoundaryAttachment(res.spec.plus, ss, out_map)],
        p, gamma, spec, limit,
    )
    rhs = trace_glue(bm)
    lhs = partition_closed(M, p, gamma, spec, limit)

    kernel = restriction_map(
        cohomology(relative_pair(M, seam), p, gamma),
        cohomology(boundary_pair(M), p, gamma),
    ).kernel_order
    return GluingReport(
        glue_result=res,
        degree=p,
        gamma=gamma,
        spec=spec,
        lhs=lhs,
        rhs=rhs,
        holds=lhs.approx_eq(rhs, tol),
        exact=lhs == rhs,
        mu_M=measure(M, p, gamma).mu,
        mu_MN=measure(B, p, gamma).mu,
        mu_N=ss.ip_scale,
        kernel_order=kernel,
        state_dimension=ss.dimension,
    )
