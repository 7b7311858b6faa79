"""Bundled example manifolds and gluing fixtures.

All builders are deterministic; the committed JSON corpus under data/ is the
serialized output of build_all() and a test regenerates it byte-for-byte.
Vertex labels are chosen so that lexicographic label order coincides with the
structural order the constructors emit, which keeps the files stable under
reparsing.
"""

from __future__ import annotations

import json
from importlib import resources

from .simplicial import GluingSpec, Triangulation, disjoint_union, product


def point() -> Triangulation:
    return Triangulation("point", 0, ["p"], [(0,)], oriented=True)


def interval(edges: int = 1, name: str | None = None) -> Triangulation:
    name = name or ("interval" if edges == 1 else f"interval{edges}")
    verts = [f"v{i}" for i in range(edges + 1)]
    tops = [(i, i + 1) for i in range(edges)]
    tri = Triangulation(name, 1, verts, tops, oriented=True)
    return tri.with_subcomplexes({
        "start": {(0,)},
        "end": {(edges,)},
        **({"mid": {(1,)}} if edges >= 2 else {}),
    })


def circle(edges: int = 3, name: str = "circle") -> Triangulation:
    if edges < 3:
        raise ValueError("a simplicial circle needs at least 3 edges")
    verts = [f"c{i}" for i in range(edges)]
    tops = [tuple(sorted((i, (i + 1) % edges))) for i in range(edges)]
    signs = [1] * (edges - 1) + [-1]
    tri = Triangulation(name, 1, verts, tops, signs, oriented=True)
    return tri.with_subcomplexes({"pt": {(0,)}})


def disk() -> Triangulation:
    """A single 2-simplex; its rim is the boundary circle."""
    tri = Triangulation("disk", 2, ["r0", "r1", "r2"], [(0, 1, 2)], oriented=True)
    return tri.with_subcomplexes({"rim": {(0, 1), (0, 2), (1, 2)}})


def coned_disk(name: str = "cone") -> Triangulation:
    """Disk as the cone over a 3-edge circle; rim vertices r0..r2, apex o."""
    verts = ["o", "r0", "r1", "r2"]
    tops = [(0, 1, 2), (0, 2, 3), (0, 1, 3)]
    signs = [1, 1, -1]
    tri = Triangulation(name, 2, verts, tops, signs, oriented=True)
    return tri.with_subcomplexes({"rim": {(1, 2), (2, 3), (1, 3)}})


def ball3() -> Triangulation:
    return Triangulation("ball3", 3, ["p0", "p1", "p2", "p3"], [(0, 1, 2, 3)], oriented=True)


def sphere2() -> Triangulation:
    """Boundary of the 3-simplex, with its induced orientation."""
    bdy, _ = ball3().boundary()
    tri = Triangulation("sphere2", 2, bdy.vertices, bdy.top, bdy.signs, oriented=True)
    return tri.with_subcomplexes({
        "equator": {(0, 1), (1, 2), (0, 2)},
        "pt": {(0,)},
    })


def rp2() -> Triangulation:
    """Minimal 6-vertex triangulation of the projective plane (unoriented)."""
    faces = [(1, 2, 3), (1, 2, 4), (1, 3, 5), (1, 4, 6), (1, 5, 6),
             (2, 3, 6), (2, 4, 5), (2, 5, 6), (3, 4, 5), (3, 4, 6)]
    verts = [f"n{i}" for i in range(1, 7)]
    tops = [tuple(v - 1 for v in f) for f in faces]
    tri = Triangulation("rp2", 2, verts, tops, oriented=False)
    return tri.with_subcomplexes({"pt": {(0,)}})


def _label_sub(tri: Triangulation, keep) -> set:
    out = set()
    for k in range(tri.dim + 1):
        for s in tri.simplices(k):
            if all(keep(tri.vertices[v]) for v in s):
                out.add(s)
    return out


def cylinder(interval_edges: int = 1, name: str | None = None) -> Triangulation:
    """circle x interval, with the two boundary circles and (when the
    interval has >= 2 edges) an interior circle as named subcomplexes."""
    name = name or ("cylinder" if interval_edges == 1 else f"cylinder{interval_edges}")
    tri = product(circle(), interval(interval_edges))
    tri = Triangulation(name, tri.dim, tri.vertices, tri.top, tri.signs, oriented=True)
    subs = {
        "in": _label_sub(tri, lambda l: l.endswith(",v0)")),
        "out": _label_sub(tri, lambda l: l.endswith(f",v{interval_edges})")),
    }
    if interval_edges >= 2:
        subs["mid"] = _label_sub(tri, lambda l: l.endswith(",v1)"))
    return tri.with_subcomplexes(subs)


def torus2() -> Triangulation:
    tri = product(circle(), circle(3, "circle"))
    tri = Triangulation("torus2", 2, tri.vertices, tri.top, tri.signs, oriented=True)
    return tri.with_subcomplexes({
        "circle_a": _label_sub(tri, lambda l: l.endswith(",c0)")),
        "circle_b": _label_sub(tri, lambda l: l.startswith("(c0,")),
        "pt": _label_sub(tri, lambda l: l == "(c0,c0)"),
    })


def torus3() -> Triangulation:
    tri = product(torus2(), circle())
    tri = Triangulation("torus3", 3, tri.vertices, tri.top, tri.signs, oriented=True)
    return tri.with_subcomplexes({
        "slice": _label_sub(tri, lambda l: l.endswith(",c0)")),
    })


def torus_from_cylinder() -> Triangulation:
    """Cylinder over a 3-edge interval whose gluing spec identifies the two
    boundary circles; the quotient is a torus."""
    tri = cylinder(3, "torus_from_cylinder")
    spec = GluingSpec.make("out", "in", {f"(c{i},v3)": f"(c{i},v0)" for i in range(3)})
    return tri.with_gluing(spec)


def sphere_from_disks() -> Triangulation:
    """Two coned disks glued rim to rim; the quotient is a 2-sphere.  The
    second disk carries the reversed orientation so the double is oriented."""
    second = coned_disk("cone").with_reversed_orientation()
    u = disjoint_union(coned_disk(), second, prefixes=("a", "b"))
    u = Triangulation("sphere_from_disks", 2, u.vertices, u.top, u.signs,
                      oriented=True, subcomplexes=u.subcomplexes, check=False)
    spec = GluingSpec.make("a.rim", "b.rim", {f"a.r{i}": f"b.r{i}" for i in range(3)})
    return u.with_gluing(spec)


def torus3_from_slab() -> Triangulation:
    """torus2 x interval3 with the two torus ends identified; the quotient is
    a 3-torus."""
    tri = product(torus2(), interval(3))
    tri = Triangulation("torus3_from_slab", 3, tri.vertices, tri.top, tri.signs, oriented=True)
    tri = tri.with_subcomplexes({
        "in": _label_sub(tri, lambda l: l.endswith(",v0)")),
        "out": _label_sub(tri, lambda l: l.endswith(",v3)")),
    })
    mapping = {f"({v},v3)": f"({v},v0)" for v in torus2().vertices}
    return tri.with_gluing(GluingSpec.make("out", "in", mapping))


def two_disks_bordism() -> Triangulation:
    """Disjoint union of two coned disks without a gluing spec (bordism tests)."""
    u = disjoint_union(coned_disk(), coned_disk(), prefixes=("a", "b"))
    return Triangulation("two_disks", 2, u.vertices, u.top, u.signs,
                         oriented=True, subcomplexes=u.subcomplexes, check=False)


BUILDERS = {
    "point": point,
    "interval": interval,
    "interval3": lambda: interval(3),
    "circle": circle,
    "disk": disk,
    "cone": coned_disk,
    "ball3": ball3,
    "sphere2": sphere2,
    "rp2": rp2,
    "cylinder": cylinder,
    "cylinder2": lambda: cylinder(2),
    "torus2": torus2,
    "torus3": torus3,
    "torus_from_cylinder": torus_from_cylinder,
    "sphere_from_disks": sphere_from_disks,
    "torus3_from_slab": torus3_from_slab,
    "two_disks": two_disks_bordism,
}


def build(name: str) -> Triangulation:
    return BUILDERS[name]()


def document_text(tri: Triangulation) -> str:
    return json.dumps(tri.to_document(), indent=1) + "\n"


def negative_torus_from_cylinder() -> dict:
    """The torus_from_cylinder fixture with one orientation sign flipped;
    rejected by a checked parse, loadable with the orientation check off."""
    doc = torus_from_cylinder().to_document()
    doc["name"] = "torus_from_cylinder_flipped"
    doc["orientation"] = list(doc["orientation"])
    doc["orientation"][0] = -doc["orientation"][0]
    return doc


def write_all(directory) -> list:
    """Write every corpus document under directory; returns relative paths."""
    import pathlib

    directory = pathlib.Path(directory)
    directory.mkdir(parents=True, exist_ok=True)
    (directory / "negative").mkdir(exist_ok=True)
    written = []
    for name in sorted(BUILDERS):
        path = directory / f"{name}.json"
        path.write_text(document_text(build(name)), encoding="utf-8")
        written.append(f"{name}.json")
    neg = negative_torus_from_cylinder()
    path = directory / "negative" / "torus_from_cylinder_flipped.json"
    path.write_text(json.dumps(neg, indent=1) + "\n", encoding="utf-8")
    written.append("negative/torus_from_cylinder_flipped.json")
    return written


def data_root():
    return resources.files("dwtqft").joinpath("data")


def load_bundled(name: str):
    """Parse a bundled corpus file by stem name."""
    from .simplicial import parse

    text = data_root().joinpath(f"{name}.json").read_text(encoding="utf-8")
    return parse(text)
