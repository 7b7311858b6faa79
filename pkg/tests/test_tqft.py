from fractions import Fraction

import pytest

from dwtqft.action import ActionSpec
from dwtqft.cohomology import Cochain, EnumerationLimitExceeded, FiniteAbelianGroup
from dwtqft.phases import PhaseSum
from dwtqft.simplicial import GluingError, Triangulation, disjoint_union, glue
from dwtqft.tqft import (
    BoundaryAttachment,
    bordism_matrix,
    compose_bordisms,
    dagger_check,
    field_space,
    partition_closed,
    state_space,
    trace_glue,
    verify_gluing,
)

TRIV = ActionSpec.trivial()
Z2 = FiniteAbelianGroup((2,))
Z3 = FiniteAbelianGroup((3,))
Z4 = FiniteAbelianGroup((4,))


def zn(n):
    return FiniteAbelianGroup((n,))


def circle_attachment(circle, bordism, component, suffix):
    pos = bordism.vertex_position()
    vm = tuple(pos[f"({v},{suffix})"] for v in circle.vertices)
    return component, vm


def test_field_space_circle(manifolds):
    fs = field_space(manifolds["circle"], 1, Z3)
    assert len(fs) == 3
    for rep in fs.classes:
        assert rep.is_cocycle()


def test_field_space_interval_relative(manifolds):
    iv = manifolds["interval"]
    for n in (2, 3, 4):
        bc = Cochain.zero(iv, 1, zn(n))
        fs = field_space(iv, 1, zn(n), bc)
        assert len(fs) == n
        for rep in fs.classes:
            assert rep.is_cocycle()


def test_field_space_nonextendable_class(manifolds):
    disk = manifolds["disk"]
    for n in (2, 3):
        gamma = zn(n)
        # a generator of H^1 of the rim: one edge carries 1
        bc = Cochain.from_values(disk, 1, gamma, {(0, 1): 1})
        fs = field_space(disk, 1, gamma, bc)
        assert len(fs) == 0
        # while the trivial boundary class extends exactly once
        fs0 = field_space(disk, 1, gamma, Cochain.zero(disk, 1, gamma))
        assert len(fs0) == 1


def test_partition_closed_examples(manifolds):
    for n in (2, 3, 4):
        gamma = zn(n)
        assert partition_closed(manifolds["circle"], 1, gamma, TRIV).as_rational() == 1
        assert partition_closed(manifolds["sphere2"], 1, gamma, TRIV).as_rational() == Fraction(1, n)
        assert partition_closed(manifolds["torus2"], 1, gamma, TRIV).as_rational() == n
        assert partition_closed(manifolds["torus3"], 1, gamma, TRIV).as_rational() == n * n


def test_partition_torus_p2(manifolds):
    assert partition_closed(manifolds["torus2"], 2, Z2, TRIV).as_rational() == 1


def test_partition_requires_closed(manifolds):
    with pytest.raises(Exception):
        partition_closed(manifolds["cylinder"], 1, Z2, TRIV)


def test_partition_matches_mu_times_class_count(manifolds):
    from dwtqft.cohomology import cohomology
    from dwtqft.measure import measure

    for name in ["circle", "sphere2", "torus2", "rp2", "torus3"]:
        tri = manifolds[name]
        for n in (2, 3, 4):
            gamma = zn(n)
            z = partition_closed(tri, 1, gamma, TRIV).as_rational()
            assert z == measure(tri, 1, gamma).mu * cohomology(tri, 1, gamma).order


def test_p1_fundamental_group_sanity(manifolds):
    # |Hom(pi_1, Z_n)| for the corpus manifolds, from the classical
    # abelianizations: Z, Z^2, Z^3, Z/2
    from math import gcd

    expectations = {
        "circle": lambda n: n,
        "torus2": lambda n: n * n,
        "torus3": lambda n: n ** 3,
        "rp2": lambda n: gcd(2, n),
    }
    from dwtqft.measure import measure

    for name, hom_count in expectations.items():
        tri = manifolds[name]
        for n in (2, 3, 4):
            gamma = zn(n)
            z = partition_closed(tri, 1, gamma, TRIV).as_rational()
            assert z == hom_count(n) * measure(tri, 1, gamma).mu


def test_state_space_circle(manifolds):
    ss = state_space(manifolds["circle"], 1, Z2)
    assert ss.dimension == 2
    assert ss.ip_scale == Fraction(1, 2)
    assert ss.basis[0].is_zero()


def test_state_space_disjoint_circles(manifolds):
    c = manifolds["circle"]
    two = disjoint_union(c, c)
    ss = state_space(two, 1, Z2)
    assert ss.dimension == 4
    assert ss.ip_scale == Fraction(1, 4)


def test_state_space_empty_is_unit():
    empty = Triangulation("empty", 1, [], [], [], check=False)
    ss = state_space(empty, 1, Z3)
    assert ss.dimension == 1
    assert ss.ip_scale == 1


def test_state_space_rejects_open(manifolds):
    with pytest.raises(Exception):
        state_space(manifolds["interval"], 1, Z2)


def test_cylinder_bordism_matrix(manifolds):
    circle, cyl = manifolds["circle"], manifolds["cylinder"]
    for n in (2, 3):
        ss = state_space(circle, 1, zn(n))
        _, vin = circle_attachment(circle, cyl, "in", "v0")
        _, vout = circle_attachment(circle, cyl, "out", "v1")
        bm = bordism_matrix(cyl, [BoundaryAttachment("in", ss, vin)],
                            [BoundaryAttachment("out", ss, vout)], 1, zn(n), TRIV)
        # nonzero (value n) exactly when the two boundary classes correspond
        for i in range(n):
            for j in range(n):
                value = bm.entry(i, j)
                if i == j:
                    assert value.as_rational() == n
                else:
                    assert value.is_zero()
        assert trace_glue(bm).as_rational() == n  # = Z(torus)


def test_disk_bordism_row_vector(manifolds):
    circle, disk = manifolds["circle"], manifolds["disk"]
    for n in (2, 3):
        ss = state_space(circle, 1, zn(n))
        pos = disk.vertex_position()
        vm = tuple(pos[f"r{i}"] for i in range(3))
        bm = bordism_matrix(disk, [], [BoundaryAttachment("rim", ss, vm)],
                            1, zn(n), TRIV)
        values = [bm.entry((), (j,)) for j in range(n)]
        assert values[0].as_rational() == 1
        assert all(v.is_zero() for v in values[1:])


def test_empty_bordism_is_unit():
    empty = Triangulation("empty", 2, [], [], [], check=False)
    bm = bordism_matrix(empty, [], [], 1, Z3, TRIV)
    assert bm.entry((), ()).as_rational() == 1


def test_trace_glue_requires_matching_spaces(manifolds):
    circle = manifolds["circle"]
    cyl = manifolds["cylinder"]
    ss1 = state_space(circle, 1, Z2)
    ss2 = state_space(circle, 1, Z2)
    _, vin = circle_attachment(circle, cyl, "in", "v0")
    _, vout = circle_attachment(circle, cyl, "out", "v1")
    bm = bordism_matrix(cyl, [BoundaryAttachment("in", ss1, vin)],
                        [BoundaryAttachment("out", ss2, vout)], 1, Z2, TRIV)
    with pytest.raises(ValueError):
        trace_glue(bm)


def test_compose_cylinders_matches_double_cylinder(manifolds):
    circle = manifolds["circle"]
    cyl, cyl2 = manifolds["cylinder"], manifolds["cylinder2"]
    for n in (2, 3):
        gamma = zn(n)
        for spec in (TRIV, ActionSpec.cup_square(1)):
            ss = state_space(circle, 1, gamma)
            _, vin = circle_attachment(circle, cyl, "in", "v0")
            _, vout = circle_attachment(circle, cyl, "out", "v1")
            a = bordism_matrix(cyl, [BoundaryAttachment("in", ss, vin)],
                               [BoundaryAttachment("out", ss, vout)], 1, gamma, spec)
            comp = compose_bordisms(a, a)
            _, win = circle_attachment(circle, cyl2, "in", "v0")
            _, wout = circle_attachment(circle, cyl2, "out", "v2")
            b = bordism_matrix(cyl2, [BoundaryAttachment("in", ss, win)],
                               [BoundaryAttachment("out", ss, wout)], 1, gamma, spec)
            for i in range(n):
                for j in range(n):
                    assert comp.entry(i, j).approx_eq(b.entry(i, j), 1e-9)
            # both traces reproduce the glued torus partition value
            glued = verify_gluing(manifolds["torus_from_cylinder"], 1, gamma, spec)
            assert trace_glue(comp).approx_eq(glued.lhs, 1e-9)


def test_compose_with_unit(manifolds):
    circle, cyl = manifolds["circle"], manifolds["cylinder"]
    ss = state_space(circle, 1, Z2)
    _, vin = circle_attachment(circle, cyl, "in", "v0")
    _, vout = circle_attachment(circle, cyl, "out", "v1")
    a = bordism_matrix(cyl, [BoundaryAttachment("in", ss, vin)],
                       [BoundaryAttachment("out", ss, vout)], 1, Z2, TRIV)
    with pytest.raises(ValueError):
        compose_bordisms(a, bordism_matrix(
            Triangulation("empty", 2, [], [], [], check=False), [], [], 1, Z2, TRIV))


GLUING_FIXTURES = [
    ("torus_from_cylinder", [1]),
    ("sphere_from_disks", [1]),
    ("torus3_from_slab", [1, 2]),
]


@pytest.mark.parametrize("name,degrees", GLUING_FIXTURES)
def test_gluing_identity_trivial(manifolds, name, degrees):
    fixture = manifolds[name]
    for p in degrees:
        for gamma in [Z2, Z3, Z4, FiniteAbelianGroup((2, 2))]:
            rep = verify_gluing(fixture, p, gamma, TRIV)
            assert rep.exact, (name, p, gamma, rep.lhs, rep.rhs)


@pytest.mark.parametrize("name", ["torus_from_cylinder", "sphere_from_disks"])
def test_gluing_identity_cup_square(manifolds, name):
    fixture = manifolds[name]
    for n in (2, 3, 4):
        for lam in range(1, n):
            rep = verify_gluing(fixture, 1, zn(n), ActionSpec.cup_square(lam))
            assert rep.holds, (name, n, lam, rep.lhs, rep.rhs)


def test_gluing_report_audit_fields(manifolds):
    rep = verify_gluing(manifolds["torus_from_cylinder"], 1, Z2, TRIV)
    assert rep.lhs.as_rational() == 2
    assert rep.mu_M == Fraction(1, 2)
    assert rep.mu_MN == 1
    assert rep.mu_N == Fraction(1, 2)
    assert rep.kernel_order == 1
    assert rep.state_dimension == 2
    # the cut-measure identity in its excision form
    from dwtqft.measure import measure_rel

    seam = rep.glue_result.glued.subcomplex("out")
    assert measure_rel(rep.glue_result.glued, seam, 1, Z2).mu == rep.mu_MN


def test_sphere_from_disks_value(manifolds):
    for n in (2, 3):
        rep = verify_gluing(manifolds["sphere_from_disks"], 1, zn(n), TRIV)
        assert rep.lhs.as_rational() == Fraction(1, n)
        assert rep.rhs.as_rational() == Fraction(1, n)


def test_dagger(manifolds):
    for name in ["sphere2", "torus2"]:
        tri = manifolds[name]
        for n in (2, 3, 4):
            assert dagger_check(tri, 1, zn(n), TRIV)
            assert dagger_check(tri, 1, zn(n), ActionSpec.cup_square(1))
    assert dagger_check(manifolds["torus3"], 1, Z2, TRIV)


def test_monoidal_partition(manifolds):
    pairs = [("torus2", "sphere2"), ("torus2", "torus2"), ("sphere2", "rp2")]
    for a_name, b_name in pairs:
        a, b = manifolds[a_name], manifolds[b_name]
        u = disjoint_union(a, b)
        for n in (2, 3):
            gamma = zn(n)
            assert partition_closed(u, 1, gamma, TRIV) == \
                partition_closed(a, 1, gamma, TRIV) * partition_closed(b, 1, gamma, TRIV)
    # twisted monoidal check on an orientable pair
    u = disjoint_union(manifolds["torus2"], manifolds["sphere2"])
    spec = ActionSpec.cup_square(1)
    for n in (2, 3):
        gamma = zn(n)
        assert partition_closed(u, 1, gamma, spec) == \
            partition_closed(manifolds["torus2"], 1, gamma, spec) * \
            partition_closed(manifolds["sphere2"], 1, gamma, spec)


def test_partition_monoidal_unit():
    empty = Triangulation("empty", 2, [], [], [], check=False)
    assert partition_closed(empty, 1, Z3, TRIV).as_rational() == 1


def test_enumeration_limit_propagates(manifolds):
    with pytest.raises(EnumerationLimitExceeded):
        partition_closed(manifolds["torus2"], 1, Z4, TRIV, limit=3)


def test_attachment_validation(manifolds):
    circle, cyl = manifolds["circle"], manifolds["cylinder"]
    ss = state_space(circle, 1, Z2)
    _, vin = circle_attachment(circle, cyl, "in", "v0")
    # wrong component name: the map image does not match
    with pytest.raises(GluingError):
        bordism_matrix(cyl, [BoundaryAttachment("out", ss, vin)],
                       [], 1, Z2, TRIV)
    # boundary not fully covered
    with pytest.raises(GluingError):
        bordism_matrix(cyl, [BoundaryAttachment("in", ss, vin)],
                       [], 1, Z2, TRIV)
