"""Triangulated manifolds with boundary.

A Triangulation stores an ordered vertex list, the top-dimensional simplices
as strictly increasing index tuples, and a per-top-simplex orientation sign
relative to that sorted tuple.  The vertex order of the stored list is the
global order that fixes all coboundary signs and the front/back face splits
used by the cup product; parse() normalizes input files to lexicographic
label order, and the constructions below (product, disjoint union, gluing)
emit deterministic orders compatible with their structure maps.

The gluing operation is a vertex-level quotient.  Besides the glued complex
it returns a vertex-reordered copy of its input on which the quotient map is
order-preserving on every simplex, so cochain pullback along the quotient
needs no signs and commutes with both the coboundary and the cup product.

JSON schema (see parse): {"name": str, "dim": int, "oriented": bool,
"vertices": [str], "top_simplices": [[int]], "orientation": [+-1] (optional,
default +1 per sorted tuple; a reversal of the listed vertex order flips the
sign), "subcomplexes": {name: [[int]]}, "manifold": bool (optional, default
true), "gluing": {"plus": name, "minus": name, "vertex_map": {label: label}}
(optional)}.
"""

from __future__ import annotations

import json
from dataclasses import dataclass
from itertools import combinations
from typing import Iterable, Optional, Sequence

from .snf import IntMatrix, SNFDecomposition, smith_normal_form

Simplex = tuple


class TriangulationError(ValueError):
    pass


class GluingError(TriangulationError):
    pass


def sort_with_parity(seq):
    """Sorted tuple plus the permutation sign; raises on repeated entries."""
    items = list(seq)
    n = len(items)
    inversions = 0
    for i in range(n):
        for j in range(i + 1, n):
            if items[i] > items[j]:
                inversions += 1
            elif items[i] == items[j]:
                raise TriangulationError(f"repeated vertex in simplex {tuple(seq)}")
    return tuple(sorted(items)), (-1) ** inversions


@dataclass(frozen=True, eq=True)
class GluingSpec:
    plus: str
    minus: str
    vertex_map: tuple  # sorted tuple of (plus label, minus label)

    @classmethod
    def make(cls, plus: str, minus: str, vertex_map) -> "GluingSpec":
        items = vertex_map.items() if hasattr(vertex_map, "items") else vertex_map
        return cls(plus, minus, tuple(sorted((str(a), str(b)) for a, b in items)))

    @property
    def mapping(self) -> dict:
        return dict(self.vertex_map)


class Triangulation:
    """Immutable; derived data (closure, boundary, coboundary SNFs) is cached."""

    def __init__(self, name, dim, vertices, top, signs=None, oriented=False,
                 subcomplexes=None, gluing=None, *,
                 check=True, check_manifold=True, check_orientation=True):
        self.name = str(name)
        self.dim = int(dim)
        self.vertices = tuple(str(v) for v in vertices)
        if len(set(self.vertices)) != len(self.vertices):
            raise TriangulationError("duplicate vertex labels")
        self.oriented = bool(oriented)
        tops = []
        for s in top:
            s = tuple(int(v) for v in s)
            if len(s) != self.dim + 1:
                raise TriangulationError(
                    f"top simplex {s} has {len(s)} vertices, expected {self.dim + 1}")
            if any(not 0 <= v < len(self.vertices) for v in s):
                raise TriangulationError(f"vertex index out of range in {s}")
            if list(s) != sorted(s):
                raise TriangulationError(f"top simplex {s} not sorted")
            tops.append(s)
        if signs is None:
            signs = [1] * len(tops)
        signs = [int(x) for x in signs]
        if len(signs) != len(tops) or any(x not in (1, -1) for x in signs):
            raise TriangulationError("orientation signs must be +-1, one per top simplex")
        order = sorted(range(len(tops)), key=lambda i: tops[i])
        self.top = tuple(tops[i] for i in order)
        self.signs = tuple(signs[i] for i in order)
        if len(set(self.top)) != len(self.top):
            raise TriangulationError("duplicate top simplices")
        self.gluing = gluing

        # closure
        faces = [set() for _ in range(self.dim + 1)]
        for s in self.top:
            for k in range(self.dim + 1):
                faces[k].update(combinations(s, k + 1))
        self._simplices = tuple(tuple(sorted(faces[k])) for k in range(self.dim + 1))
        self._index = tuple({s: i for i, s in enumerate(level)} for level in self._simplices)
        if self.top and len(self._simplices[0]) != len(self.vertices):
            raise TriangulationError("every vertex must belong to a top simplex")
        if not self.top and self.vertices:
            raise TriangulationError("vertices without top simplices")

        self.subcomplexes = {}
        if subcomplexes:
            for sub_name in sorted(subcomplexes):
                self.subcomplexes[sub_name] = self.closure_of(subcomplexes[sub_name])

        self._cache = {}
        if check:
            if check_manifold and self.dim >= 1:
                self.check_manifold()
            if self.oriented and check_orientation and self.dim >= 1:
                self.check_orientation()

    # -- basic queries -------------------------------------------------------

    def simplices(self, k: int) -> tuple:
        if 0 <= k <= self.dim:
            return self._simplices[k]
        return ()

    def index_of(self, k: int):
        if 0 <= k <= self.dim:
            return self._index[k]
        return {}

    def has_simplex(self, s) -> bool:
        k = len(s) - 1
        return s in self.index_of(k)

    def vertex_position(self) -> dict:
        key = "vertex_position"
        if key not in self._cache:
            self._cache[key] = {v: i for i, v in enumerate(self.vertices)}
        return self._cache[key]

    def labels(self, s) -> tuple:
        return tuple(self.vertices[i] for i in s)

    def euler_characteristic(self) -> int:
        return sum((-1) ** k * len(self._simplices[k]) for k in range(self.dim + 1))

    def closure_of(self, simplices) -> frozenset:
        out = set()
        for s in simplices:
            s = tuple(sorted(int(v) for v in s))
            if not self.has_simplex(s):
                raise TriangulationError(f"simplex {s} not in complex {self.name}")
            for k in range(len(s)):
                out.update(combinations(s, k + 1))
        return frozenset(out)

    def subcomplex(self, name: str) -> frozenset:
        try:
            return self.subcomplexes[name]
        except KeyError:
            raise TriangulationError(f"no subcomplex named {name!r} in {self.name}") from None

    def with_subcomplexes(self, extra: dict) -> "Triangulation":
        subs = {name: {s for s in simps} for name, simps in self.subcomplexes.items()}
        for name, simps in extra.items():
            subs[name] = set(simps)
        return Triangulation(self.name, self.dim, self.vertices, self.top, self.signs,
                             self.oriented, subs, self.gluing, check=False)

    def with_gluing(self, spec: GluingSpec) -> "Triangulation":
        return Triangulation(self.name, self.dim, self.vertices, self.top, self.signs,
                             self.oriented, self.subcomplexes, spec, check=False)

    def with_reversed_orientation(self) -> "Triangulation":
        return Triangulation(f"{self.name}.rev", self.dim, self.vertices, self.top,
                             tuple(-s for s in self.signs), self.oriented,
                             self.subcomplexes, self.gluing, check=False)

    # -- manifold structure ----------------------------------------------------

    def face_cofaces(self):
        """For each (dim-1)-simplex: list of (top index, omitted position)."""
        key = "face_cofaces"
        if key not in self._cache:
            if self.dim == 0:
                self._cache[key] = {}
                return self._cache[key]
            cofaces = {s: [] for s in self.simplices(self.dim - 1)}
            for t, s in enumerate(self.top):
                for j in range(self.dim + 1):
                    face = s[:j] + s[j + 1:]
                    cofaces[face].append((t, j))
            self._cache[key] = cofaces
        return self._cache[key]

    def check_manifold(self):
        for face, cofs in self.face_cofaces().items():
            if len(cofs) not in (1, 2):
                raise TriangulationError(
                    f"{self.name}: face {self.labels(face)} lies in {len(cofs)} top simplices")

    def check_orientation(self):
        for face, cofs in self.face_cofaces().items():
            if len(cofs) == 2:
                (t1, j1), (t2, j2) = cofs
                if self.signs[t1] * (-1) ** j1 == self.signs[t2] * (-1) ** j2:
                    raise TriangulationError(
                        f"{self.name}: incoherent orientation at face {self.labels(face)}")

    def is_coherently_oriented(self) -> bool:
        try:
            self.check_orientation()
            return True
        except TriangulationError:
            return False

    def boundary_faces(self):
        """(dim-1)-simplices with exactly one coface, with induced sign."""
        key = "boundary_faces"
        if key not in self._cache:
            out = []
            for face, cofs in sorted(self.face_cofaces().items()):
                if len(cofs) == 1:
                    t, j = cofs[0]
                    out.append((face, self.signs[t] * (-1) ** j))
            self._cache[key] = tuple(out)
        return self._cache[key]

    def boundary_subspace(self) -> frozenset:
        key = "boundary_subspace"
        if key not in self._cache:
            if self.dim == 0:
                self._cache[key] = frozenset()
            else:
                self._cache[key] = self.closure_of(f for f, _ in self.boundary_faces())
        return self._cache[key]

    def is_closed(self) -> bool:
        return not self.boundary_subspace()

    def boundary(self):
        """Boundary complex with induced orientation, components as named
        subcomplexes c0, c1, ...; plus the vertex map into this complex."""
        key = "boundary"
        if key not in self._cache:
            faces = self.boundary_faces()
            if not faces:
                empty = Triangulation(f"{self.name}.bdy", max(self.dim - 1, 0),
                                      [], [], [], oriented=self.oriented, check=False)
                self._cache[key] = (empty, ())
            else:
                self._cache[key] = self.extract(
                    self.boundary_subspace(),
                    f"{self.name}.bdy",
                    tops_with_signs=faces,
                    oriented=self.oriented,
                )
        return self._cache[key]

    def components(self, simplices=None):
        """Connected components (as closed simplex sets) of the whole complex
        or of a given closed subcomplex, ordered by smallest vertex."""
        if simplices is None:
            simplices = frozenset(s for level in self._simplices for s in level)
        parent = {}

        def find(x):
            while parent[x] != x:
                parent[x] = parent[parent[x]]
                x = parent[x]
            return x

        verts = sorted({v for s in simplices for v in s})
        for v in verts:
            parent[v] = v
        for s in simplices:
            for v in s[1:]:
                ra, rb = find(s[0]), find(v)
                if ra != rb:
                    parent[max(ra, rb)] = min(ra, rb)
        groups = {}
        for s in simplices:
            groups.setdefault(find(s[0]), set()).add(s)
        return [frozenset(groups[root]) for root in sorted(groups)]

    # -- extraction ------------------------------------------------------------

    def extract(self, simplices, name, *, tops_with_signs=None, oriented=False):
        """A closed simplex set as a standalone Triangulation (vertex order
        inherited), plus the vertex map back into this complex."""
        simplices = frozenset(simplices)
        if not simplices:
            raise TriangulationError("cannot extract an empty subcomplex")
        for s in simplices:
            for k in range(len(s)):
                for f in combinations(s, k + 1):
                    if f not in simplices:
                        raise TriangulationError("subcomplex is not closed")
        verts = sorted({v for s in simplices for v in s})
        reindex = {v: i for i, v in enumerate(verts)}
        if tops_with_signs is None:
            proper_faces = set()
            for s in simplices:
                for k in range(len(s) - 1):
                    proper_faces.update(combinations(s, k + 1))
            tops = sorted(s for s in simplices if s not in proper_faces)
            dims = {len(s) - 1 for s in tops}
            if len(dims) != 1:
                raise TriangulationError("subcomplex is not pure; cannot extract")
            tops_with_signs = [(s, 1) for s in tops]
        sub_dim = len(tops_with_signs[0][0]) - 1
        sub = Triangulation(
            name, sub_dim,
            [self.vertices[v] for v in verts],
            [tuple(reindex[v] for v in s) for s, _ in tops_with_signs],
            [sign for _, sign in tops_with_signs],
            oriented=oriented,
            check=False,
        )
        components = sub.components()
        sub = sub.with_subcomplexes({f"c{i}": comp for i, comp in enumerate(components)})
        return sub, tuple(verts)

    # -- coboundary matrices -----------------------------------------------------

    def coboundary(self, k: int, subspace: frozenset = frozenset()) -> IntMatrix:
        """Matrix of d: C^k -> C^(k+1) over Z; for a nonempty subspace the
        rows and columns are restricted to simplices outside it."""
        key = ("coboundary", k, subspace)
        if key not in self._cache:
            cols = [s for s in self.simplices(k) if s not in subspace]
            rows = [s for s in self.simplices(k + 1) if s not in subspace]
            col_index = {s: i for i, s in enumerate(cols)}
            entries = {}
            for r, s in enumerate(rows):
                for j in range(len(s)):
                    face = s[:j] + s[j + 1:]
                    c = col_index.get(face)
                    if c is not None:
                        entries[(r, c)] = (-1) ** j
            self._cache[key] = IntMatrix(len(rows), len(cols), entries)
        return self._cache[key]

    def snf_coboundary(self, k: int, subspace: frozenset = frozenset()) -> SNFDecomposition:
        key = ("snf", k, subspace)
        if key not in self._cache:
            self._cache[key] = smith_normal_form(self.coboundary(k, subspace))
        return self._cache[key]

    # -- serialization -------------------------------------------------------------

    def to_document(self) -> dict:
        doc = {
            "name": self.name,
            "dim": self.dim,
            "oriented": self.oriented,
            "vertices": list(self.vertices),
            "top_simplices": [list(s) for s in self.top],
            "orientation": list(self.signs),
        }
        if self.subcomplexes:
            subs = {}
            for name in sorted(self.subcomplexes):
                simps = self.subcomplexes[name]
                proper = set()
                for s in simps:
                    for k in range(len(s) - 1):
                        proper.update(combinations(s, k + 1))
                subs[name] = sorted([list(s) for s in simps if s not in proper])
            doc["subcomplexes"] = subs
        if self.gluing is not None:
            doc["gluing"] = {
                "plus": self.gluing.plus,
                "minus": self.gluing.minus,
                "vertex_map": dict(self.gluing.vertex_map),
            }
        return doc

    def __repr__(self):
        counts = "/".join(str(len(level)) for level in self._simplices)
        return f"Triangulation({self.name!r}, dim={self.dim}, simplices={counts})"


# -------------------------------------------------------------------------------
# parsing
# -------------------------------------------------------------------------------


def parse(document, *, check=True, check_orientation=True) -> Triangulation:
    """Build a Triangulation from the JSON schema; vertices are renormalized
    to lexicographic label order, which is the global order of the complex."""
    if isinstance(document, str):
        document = json.loads(document)
    try:
        name = document["name"]
        dim = int(document["dim"])
        raw_vertices = [str(v) for v in document["vertices"]]
        raw_tops = document["top_simplices"]
    except (KeyError, TypeError) as exc:
        raise TriangulationError(f"malformed triangulation document: {exc}") from exc
    if len(set(raw_vertices)) != len(raw_vertices):
        raise TriangulationError("duplicate vertex labels")
    order = sorted(range(len(raw_vertices)), key=lambda i: raw_vertices[i])
    remap = {old: new for new, old in enumerate(order)}
    vertices = [raw_vertices[i] for i in order]

    raw_signs = document.get("orientation")
    if raw_signs is None:
        raw_signs = [1] * len(raw_tops)
    if len(raw_signs) != len(raw_tops):
        raise TriangulationError("orientation list length mismatch")
    tops, signs = [], []
    for s, sign in zip(raw_tops, raw_signs):
        mapped = [remap[int(v)] for v in s]
        sorted_s, parity = sort_with_parity(mapped)
        tops.append(sorted_s)
        signs.append(int(sign) * parity)

    subcomplexes = {}
    for sub_name, simps in (document.get("subcomplexes") or {}).items():
        subcomplexes[sub_name] = [tuple(sorted(remap[int(v)] for v in s)) for s in simps]

    gluing = None
    if document.get("gluing"):
        g = document["gluing"]
        gluing = GluingSpec.make(g["plus"], g["minus"], g["vertex_map"])

    return Triangulation(
        name, dim, vertices, tops, signs,
        oriented=bool(document.get("oriented", False)),
        subcomplexes=subcomplexes,
        gluing=gluing,
        check=check,
        check_manifold=bool(document.get("manifold", True)),
        check_orientation=check_orientation,
    )


def load(path, *, check=True, check_orientation=True) -> Triangulation:
    with open(path, "r", encoding="utf-8") as handle:
        document = json.load(handle)
    return parse(document, check=check, check_orientation=check_orientation)


# -------------------------------------------------------------------------------
# pairs
# -------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class Pair:
    """A complex together with a closed subcomplex; relative cochains vanish
    on the subspace."""

    space: Triangulation
    subspace: frozenset
    label: str = ""

    def __post_init__(self):
        for s in self.subspace:
            if not self.space.has_simplex(s):
                raise TriangulationError(f"subspace simplex {s} not in {self.space.name}")
            for kk in range(len(s)):
                for f in combinations(s, kk + 1):
                    if f not in self.subspace:
                        raise TriangulationError("subspace is not closed")

    def simplices(self, k: int) -> tuple:
        return tuple(s for s in self.space.simplices(k) if s not in self.subspace)

    def coboundary(self, k: int) -> IntMatrix:
        return self.space.coboundary(k, self.subspace)

    def snf_coboundary(self, k: int) -> SNFDecomposition:
        return self.space.snf_coboundary(k, self.subspace)


def boundary_pair(M: Triangulation) -> Pair:
    return Pair(M, M.boundary_subspace(), "bdy")


def relative_pair(M: Triangulation, extra) -> Pair:
    """Pair (M, N union boundary) where N is a subcomplex name or simplex set."""
    if isinstance(extra, str):
        extra = M.subcomplex(extra)
    closure = M.closure_of(extra) if extra else frozenset()
    return Pair(M, closure | M.boundary_subspace(), "rel")


# -------------------------------------------------------------------------------
# constructions
# -------------------------------------------------------------------------------


def disjoint_union(a: Triangulation, b: Triangulation, prefixes=("a", "b")) -> Triangulation:
    if a.dim != b.dim and a.top and b.top:
        raise TriangulationError("disjoint union of different dimensions")
    pa, pb = prefixes
    if pa == pb:
        raise TriangulationError("prefixes must differ")
    dim = a.dim if a.top else b.dim
    vertices = [f"{pa}.{v}" for v in a.vertices] + [f"{pb}.{v}" for v in b.vertices]
    off = len(a.vertices)
    tops = list(a.top) + [tuple(v + off for v in s) for s in b.top]
    signs = list(a.signs) + list(b.signs)
    subs = {}
    for name, simps in a.subcomplexes.items():
        subs[f"{pa}.{name}"] = {s for s in simps}
    for name, simps in b.subcomplexes.items():
        subs[f"{pb}.{name}"] = {tuple(v + off for v in s) for s in simps}
    if a.top:
        subs[pa] = {s for level in a._simplices for s in level}
    if b.top:
        subs[pb] = {tuple(v + off for v in s) for level in b._simplices for s in level}
    return Triangulation(
        f"{a.name}+{b.name}", dim, vertices, tops, signs,
        oriented=a.oriented and b.oriented,
        subcomplexes=subs, check=False,
    )


def _shuffle_sign(moves) -> int:
    inversions = 0
    seen_second = 0
    for move in moves:
        if move == 1:
            seen_second += 1
        else:
            inversions += seen_second
    return (-1) ** inversions


def product(a: Triangulation, b: Triangulation) -> Triangulation:
    """Staircase (shuffle) triangulation of the cartesian product.  Vertices
    are ordered lexicographically by factor positions, so every staircase
    simplex is stored in path order."""
    vertices = []
    vertex_index = {}
    for ia in range(len(a.vertices)):
        for ib in range(len(b.vertices)):
            vertex_index[(ia, ib)] = len(vertices)
            vertices.append(f"({a.vertices[ia]},{b.vertices[ib]})")
    p, q = a.dim, b.dim
    tops, signs = [], []
    for sa, sign_a in zip(a.top, a.signs):
        for sb, sign_b in zip(b.top, b.signs):
            for first_positions in combinations(range(p + q), p):
                chosen = set(first_positions)
                moves = [0 if t in chosen else 1 for t in range(p + q)]
                i = j = 0
                path = [vertex_index[(sa[0], sb[0])]]
                for move in moves:
                    if move == 0:
                        i += 1
                    else:
                        j += 1
                    path.append(vertex_index[(sa[i], sb[j])])
                assert all(x < y for x, y in zip(path, path[1:]))
                tops.append(tuple(path))
                signs.append(sign_a * sign_b * _shuffle_sign(moves))
    return Triangulation(
        f"{a.name}x{b.name}", p + q, vertices, tops, signs,
        oriented=a.oriented and b.oriented,
        check=True,
    )


# -------------------------------------------------------------------------------
# gluing
# -------------------------------------------------------------------------------


@dataclass(frozen=True, eq=False)
class GlueResult:
    """glued: the quotient complex M.  cut: a vertex-reordered copy of the
    input on which the quotient map is order-preserving per simplex.
    cut_vertex_map / vertex_map send cut / original vertex indices to glued
    vertex indices."""

    glued: Triangulation
    cut: Triangulation
    cut_vertex_map: tuple
    vertex_map: tuple
    spec: GluingSpec

    def map_simplex(self, s):
        return tuple(sorted(self.cut_vertex_map[v] for v in s))


def glue(m_n: Triangulation, spec: Optional[GluingSpec] = None) -> GlueResult:
    if spec is None:
        spec = m_n.gluing
    if spec is None:
        raise GluingError("no gluing specification")
    plus_set = m_n.subcomplex(spec.plus) if spec.plus else frozenset()
    minus_set = m_n.subcomplex(spec.minus) if spec.minus else frozenset()
    mapping = spec.mapping
    pos = m_n.vertex_position()

    plus_verts = {v for s in plus_set for v in s}
    minus_verts = {v for s in minus_set for v in s}
    if plus_verts & minus_verts:
        raise GluingError("gluing components share vertices")
    boundary = m_n.boundary_subspace()
    for s in plus_set | minus_set:
        if s not in boundary:
            raise GluingError("gluing components must lie in the boundary")
    plus_labels = {m_n.vertices[v] for v in plus_verts}
    minus_labels = {m_n.vertices[v] for v in minus_verts}
    if set(mapping) != plus_labels or set(mapping.values()) != minus_labels:
        raise GluingError("vertex_map must biject plus-component vertices onto minus-component vertices")
    if len(set(mapping.values())) != len(mapping):
        raise GluingError("vertex_map is not injective")
    vmap_idx = {pos[k]: pos[v] for k, v in mapping.items()}
    mapped_plus = {tuple(sorted(vmap_idx[v] for v in s)) for s in plus_set}
    if mapped_plus != set(minus_set):
        raise GluingError("vertex_map does not carry the plus component onto the minus component")

    # quotient: minus vertices are replaced by their plus partners
    inv_idx = {w: v for v, w in vmap_idx.items()}
    pi = [inv_idx.get(v, v) for v in range(len(m_n.vertices))]
    keep = [v for v in range(len(m_n.vertices)) if v not in inv_idx]
    new_index = {old: i for i, old in enumerate(keep)}
    glued_vertices = [m_n.vertices[v] for v in keep]
    pi_new = [new_index[pi[v]] for v in range(len(m_n.vertices))]

    partner = {}
    for s in plus_set:
        partner[s] = tuple(sorted(vmap_idx[v] for v in s))

    # degeneracy and collision checks
    images: dict = {}
    for k in range(m_n.dim + 1):
        seen: dict = {}
        for s in m_n.simplices(k):
            img = tuple(sorted(pi_new[v] for v in s))
            if len(set(img)) != len(s):
                raise GluingError(f"gluing collapses simplex {m_n.labels(s)}")
            other = seen.get(img)
            if other is not None:
                ok = (other in plus_set and partner.get(other) == s) or (
                    s in plus_set and partner.get(s) == other)
                if not ok:
                    raise GluingError(
                        f"distinct simplices {m_n.labels(other)} and {m_n.labels(s)} "
                        "collide in the quotient")
            else:
                seen[img] = s
        images[k] = seen

    tops, signs = [], []
    for s, sign in zip(m_n.top, m_n.signs):
        img, parity = sort_with_parity(pi_new[v] for v in s)
        tops.append(img)
        signs.append(sign * parity)

    subs = {}
    for name, simps in m_n.subcomplexes.items():
        subs[name] = {tuple(sorted(pi_new[v] for v in s)) for s in simps}

    glued = Triangulation(
        f"{m_n.name}.glued", m_n.dim, glued_vertices, tops, signs,
        oriented=m_n.oriented, subcomplexes=subs,
        check=True, check_orientation=False,
    )

    # reorder the input so the quotient map is monotone on every simplex
    order = sorted(range(len(m_n.vertices)), key=lambda v: (pi_new[v], v))
    old_to_new = {old: i for i, old in enumerate(order)}
    cut_tops, cut_signs = [], []
    for s, sign in zip(m_n.top, m_n.signs):
        t, parity = sort_with_parity(old_to_new[v] for v in s)
        cut_tops.append(t)
        cut_signs.append(sign * parity)
    cut_subs = {
        name: {tuple(sorted(old_to_new[v] for v in s)) for s in simps}
        for name, simps in m_n.subcomplexes.items()
    }
    cut = Triangulation(
        m_n.name, m_n.dim, [m_n.vertices[v] for v in order], cut_tops, cut_signs,
        oriented=m_n.oriented, subcomplexes=cut_subs, gluing=spec, check=False,
    )
    cut_vertex_map = tuple(pi_new[order[v]] for v in range(len(order)))
    for s in cut.top:
        mapped = [cut_vertex_map[v] for v in s]
        assert all(x < y for x, y in zip(mapped, mapped[1:]))

    return GlueResult(
        glued=glued,
        cut=cut,
        cut_vertex_map=cut_vertex_map,
        vertex_map=tuple(pi_new),
        spec=spec,
    )
