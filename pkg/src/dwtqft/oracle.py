"""Exhaustive-enumeration oracle, independent of the Smith-form engine.

Counts and partitions cochain classes by walking the full assignment space
per cyclic coefficient factor: cocycles are counted by an exact split-table
(meet-in-the-middle) sweep over all assignments, coboundaries by enumerating
every lower cochain, and class partitions by explicit coset closure.  Twisted
class tables evaluate the cup-square pairing on every enumerated cocycle and
check constancy across each class before reporting it.

Everything is guarded by hard size limits; exceeding one raises
OracleLimitExceeded rather than degrading silently.
"""

from __future__ import annotations

from itertools import product as iter_product

from .simplicial import Triangulation


class OracleLimitExceeded(RuntimeError):
    pass


def _column_supports(space: Triangulation, k: int):
    """For each k-simplex, the rows of d_k it feeds: (row index, sign)."""
    rows = {s: i for i, s in enumerate(space.simplices(k + 1))}
    cols = space.simplices(k)
    supports = [[] for _ in cols]
    col_index = {s: i for i, s in enumerate(cols)}
    for s, r in rows.items():
        for j in range(len(s)):
            face = s[:j] + s[j + 1:]
            supports[col_index[face]].append((r, (-1) ** j))
    return supports, len(rows)


def _half_table(supports, n_rows, cols, m, guard, keep_members):
    """Row-sum table over all assignments to the given columns."""
    if m ** len(cols) > guard:
        raise OracleLimitExceeded(
            f"half enumeration of size {m ** len(cols)} exceeds guard {guard}")
    table: dict = {}
    for assign in iter_product(range(m), repeat=len(cols)):
        sums = [0] * n_rows
        for value, col in zip(assign, cols):
            if value:
                for r, sign in supports[col]:
                    sums[r] = (sums[r] + sign * value) % m
        key = tuple(sums)
        if keep_members:
            table.setdefault(key, []).append(assign)
        else:
            table[key] = table.get(key, 0) + 1
    return table


def count_cocycles(space: Triangulation, k: int, m: int,
                   guard: int = 4_000_000) -> int:
    """|{x in C^k mod m : d x = 0}| by exhaustive split enumeration."""
    supports, n_rows = _column_supports(space, k)
    n = len(supports)
    half = n // 2
    left = _half_table(supports, n_rows, list(range(half)), m, guard, False)
    right = _half_table(supports, n_rows, list(range(half, n)), m, guard, False)
    total = 0
    for key, count in right.items():
        neg = tuple((-v) % m for v in key)
        total += left.get(neg, 0) * count
    return total


def cocycle_members(space: Triangulation, k: int, m: int,
                    guard: int = 4_000_000, member_guard: int = 200_000):
    """All mod-m cocycles in degree k, as tuples over the sorted k-simplices."""
    supports, n_rows = _column_supports(space, k)
    n = len(supports)
    half = n // 2
    left = _half_table(supports, n_rows, list(range(half)), m, guard, True)
    right = _half_table(supports, n_rows, list(range(half, n)), m, guard, True)
    members = []
    for key, rights in right.items():
        neg = tuple((-v) % m for v in key)
        lefts = left.get(neg)
        if not lefts:
            continue
        if len(members) + len(lefts) * len(rights) > member_guard:
            raise OracleLimitExceeded(
                f"cocycle enumeration exceeds member guard {member_guard}")
        for la in lefts:
            for rb in rights:
                members.append(la + rb)
    members.sort()
    return members


def coboundary_set(space: Triangulation, k: int, m: int,
                   guard: int = 2_000_000):
    """All coboundaries d(C^(k-1)) mod m as a set of tuples."""
    if k == 0:
        return {tuple([0] * len(space.simplices(0)))}
    supports, n_rows = _column_supports(space, k - 1)
    n_prev = len(supports)
    if m ** n_prev > guard:
        raise OracleLimitExceeded(
            f"coboundary enumeration of size {m ** n_prev} exceeds guard {guard}")
    out = set()
    for assign in iter_product(range(m), repeat=n_prev):
        sums = [0] * n_rows
        for value, col in zip(assign, supports):
            if value:
                for r, sign in col:
                    sums[r] = (sums[r] + sign * value) % m
        out.add(tuple(sums))
    return out


def cohomology_counts(space: Triangulation, k: int, m: int,
                      guard: int = 4_000_000) -> dict:
    """Cocycle, coboundary and class counts in degree k with Z_m coefficients."""
    z = count_cocycles(space, k, m, guard)
    b = len(coboundary_set(space, k, m, guard))
    if z % b:
        raise AssertionError("coboundaries do not divide cocycles; not a complex?")
    return {
        "cochains": m ** len(space.simplices(k)),
        "cocycles": z,
        "coboundaries": b,
        "classes": z // b,
    }


def class_partition(space: Triangulation, k: int, m: int,
                    guard: int = 4_000_000, member_guard: int = 200_000) -> dict:
    """Map every mod-m cocycle to its class representative (the coset's
    lexicographically least member)."""
    members = cocycle_members(space, k, m, guard, member_guard)
    boundaries = sorted(coboundary_set(space, k, m, guard))
    if len(members) * len(boundaries) > 8_000_000:
        raise OracleLimitExceeded("class partition work bound exceeded")
    orbit_of: dict = {}
    for z in members:  # sorted, so the first unseen member is its coset's min
        if z in orbit_of:
            continue
        for b in boundaries:
            shifted = tuple((x + y) % m for x, y in zip(z, b))
            orbit_of[shifted] = z
    return orbit_of


def factor_counts(space: Triangulation, k: int, factors, guard: int = 4_000_000) -> dict:
    """Counts for a direct-sum coefficient group: cochain groups split over
    the cyclic factors, so each count is the product over them."""
    out = {"cochains": 1, "cocycles": 1, "coboundaries": 1, "classes": 1}
    for m in factors:
        part = cohomology_counts(space, k, m, guard)
        for key in out:
            out[key] *= part[key]
    return out


def cup_square_class_table(space: Triangulation, p: int, n: int, lam: int,
                           guard: int = 4_000_000,
                           member_guard: int = 200_000) -> dict:
    """For a closed oriented 2p-manifold: the cup-square action exponent of
    every mod-n cohomology class, computed on every enumerated cocycle with
    a constancy check across each class."""
    if space.dim != 2 * p:
        raise ValueError("cup-square table needs dim = 2p")
    if not space.is_closed():
        raise ValueError("cup-square table needs a closed manifold")
    index_p = space.index_of(p)
    front_back = []
    for s, sign in zip(space.top, space.signs):
        front_back.append((index_p[s[: p + 1]], index_p[s[p:]], sign))

    orbit_of = class_partition(space, p, n, guard, member_guard)

    exponent_of_orbit: dict = {}
    for z, orbit in orbit_of.items():
        s_val = 0
        for front, back, sign in front_back:
            s_val += sign * z[front] * z[back]
        exponent = (lam % n) * (s_val % n) % n
        seen = exponent_of_orbit.get(orbit)
        if seen is None:
            exponent_of_orbit[orbit] = exponent
        elif seen != exponent:
            raise AssertionError(
                f"cup-square value is not constant on a class of {space.name}")
    return exponent_of_orbit


def golden_cup_square(space: Triangulation, p: int, n: int, lam: int,
                      engine_class_vectors, guard: int = 4_000_000,
                      member_guard: int = 200_000) -> dict:
    """Class-wise exponent table labeled in the engine's enumeration order;
    the values come from the oracle's exhaustive evaluation, and the engine's
    class list is checked to be a full transversal of the oracle partition."""
    table = cup_square_class_table(space, p, n, lam, guard, member_guard)
    orbit_of = class_partition(space, p, n, guard, member_guard)
    seen_orbits = set()
    exponents = []
    for vec in engine_class_vectors:
        vec = tuple(v % n for v in vec)
        if vec not in orbit_of:
            raise AssertionError("engine class representative is not an enumerated cocycle")
        orbit = orbit_of[vec]
        if orbit in seen_orbits:
            raise AssertionError("engine class representatives are not pairwise distinct")
        seen_orbits.add(orbit)
        exponents.append(table[orbit])
    if len(seen_orbits) != len(table):
        raise AssertionError("engine classes do not exhaust the oracle partition")
    return {
        "complex": space.name,
        "p": p,
        "n": n,
        "lambda": lam % n,
        "classes": len(exponents),
        "exponents": exponents,
    }
