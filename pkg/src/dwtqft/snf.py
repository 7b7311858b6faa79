"""Sparse integer matrices and Smith normal form with transformation matrices.

All arithmetic uses Python's arbitrary-precision integers; elimination on
cochain-sized matrices can blow entries up well past machine words.  The
pivot rule is deterministic: the nonzero entry of minimal absolute value,
ties broken by lowest row then lowest column.

On top of the decomposition D = U @ A @ V sit the three modular solvers the
cohomology layer needs: kernels, cokernels and membership witnesses over Z_m.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Iterable, Optional, Sequence


class IntMatrix:
    """Immutable sparse integer matrix; no explicit zero entries are stored."""

    __slots__ = ("rows", "cols", "_data")

    def __init__(self, rows: int, cols: int, entries=None):
        if rows < 0 or cols < 0:
            raise ValueError("matrix dimensions must be nonnegative")
        data: dict[tuple[int, int], int] = {}
        if entries:
            items = entries.items() if hasattr(entries, "items") else entries
            for (r, c), v in items:
                if not (0 <= r < rows and 0 <= c < cols):
                    raise ValueError(f"entry ({r},{c}) outside {rows}x{cols} matrix")
                v = int(v)
                if v:
                    data[(r, c)] = v
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)
        object.__setattr__(self, "_data", data)

    def __setattr__(self, name, value):
        raise AttributeError("IntMatrix is immutable")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], cols: Optional[int] = None) -> "IntMatrix":
        n = len(rows)
        m = cols if cols is not None else (len(rows[0]) if rows else 0)
        entries = {}
        for i, row in enumerate(rows):
            if len(row) != m:
                raise ValueError("ragged rows")
            for j, v in enumerate(row):
                if v:
                    entries[(i, j)] = int(v)
        return cls(n, m, entries)

    @classmethod
    def identity(cls, n: int) -> "IntMatrix":
        return cls(n, n, {(i, i): 1 for i in range(n)})

    def get(self, r: int, c: int) -> int:
        return self._data.get((r, c), 0)

    def items(self):
        return sorted(self._data.items())

    def nnz(self) -> int:
        return len(self._data)

    def is_zero(self) -> bool:
        return not self._data

    def to_rows(self) -> list[list[int]]:
        out = [[0] * self.cols for _ in range(self.rows)]
        for (r, c), v in self._data.items():
            out[r][c] = v
        return out

    def transpose(self) -> "IntMatrix":
        return IntMatrix(self.cols, self.rows, {(c, r): v for (r, c), v in self._data.items()})

    def __matmul__(self, other: "IntMatrix") -> "IntMatrix":
        if self.cols != other.rows:
            raise ValueError("shape mismatch")
        by_row: dict[int, dict[int, int]] = {}
        for (r, k), v in other._data.items():
            by_row.setdefault(r, {})[k] = v
        out: dict[tuple[int, int], int] = {}
        for (r, c), v in self._data.items():
            mid = by_row.get(c)
            if not mid:
                continue
            for k, w in mid.items():
                key = (r, k)
                acc = out.get(key, 0) + v * w
                if acc:
                    out[key] = acc
                else:
                    out.pop(key, None)
        return IntMatrix(self.rows, other.cols, out)

    def apply(self, vec: Sequence[int]) -> tuple[int, ...]:
        if len(vec) != self.cols:
            raise ValueError("vector length mismatch")
        out = [0] * self.rows
        for (r, c), v in self._data.items():
            x = vec[c]
            if x:
                out[r] += v * x
        return tuple(out)

    def column(self, c: int) -> tuple[int, ...]:
        out = [0] * self.rows
        for (r, cc), v in self._data.items():
            if cc == c:
                out[r] = v
        return tuple(out)

    def __eq__(self, other):
        if not isinstance(other, IntMatrix):
            return NotImplemented
        return self.rows == other.rows and self.cols == other.cols and self._data == other._data

    def __hash__(self):
        return hash((self.rows, self.cols, tuple(sorted(self._data.items()))))

    def __repr__(self):
        return f"IntMatrix({self.rows}x{self.cols}, nnz={len(self._data)})"


@dataclass(frozen=True)
class SNFDecomposition:
    """D = U @ A @ V with U, V unimodular, D diagonal with d_1 | d_2 | ...,
    all d_i >= 0, zeros trailing.  u_inv and v_inv are the exact inverses."""

    U: IntMatrix
    D: IntMatrix
    V: IntMatrix
    u_inv: IntMatrix
    v_inv: IntMatrix
    det_u: int
    det_v: int

    @property
    def diagonal(self) -> tuple[int, ...]:
        n = min(self.D.rows, self.D.cols)
        return tuple(self.D.get(i, i) for i in range(n))

    @property
    def rank(self) -> int:
        return sum(1 for d in self.diagonal if d)


class _Sparse:
    """Row-major sparse workspace supporting the elementary operations."""

    __slots__ = ("rows", "cols", "row", "colindex")

    def __init__(self, n_rows, n_cols, entries):
        self.rows = n_rows
        self.cols = n_cols
        self.row = [dict() for _ in range(n_rows)]
        self.colindex = [set() for _ in range(n_cols)]
        for (r, c), v in entries:
            self.row[r][c] = v
            self.colindex[c].add(r)

    def set(self, r, c, v):
        if v:
            self.row[r][c] = v
            self.colindex[c].add(r)
        else:
            if self.row[r].pop(c, None) is not None:
                self.colindex[c].discard(r)

    def row_swap(self, i, j):
        if i == j:
            return
        touched = self.row[i].keys() | self.row[j].keys()
        self.row[i], self.row[j] = self.row[j], self.row[i]
        for c in touched:
            s = self.colindex[c]
            if c in self.row[i]:
                s.add(i)
            else:
                s.discard(i)
            if c in self.row[j]:
                s.add(j)
            else:
                s.discard(j)

    def row_negate(self, i):
        for c in self.row[i]:
            self.row[i][c] = -self.row[i][c]

    def row_add(self, dst, src, k):
        """row[dst] += k * row[src]"""
        if k == 0 or dst == src:
            return
        rdst = self.row[dst]
        for c, v in self.row[src].items():
            acc = rdst.get(c, 0) + k * v
            if acc:
                rdst[c] = acc
                self.colindex[c].add(dst)
            else:
                rdst.pop(c, None)
                self.colindex[c].discard(dst)

    def col_swap(self, i, j):
        if i == j:
            return
        for r in self.colindex[i] | self.colindex[j]:
            row = self.row[r]
            vi, vj = row.pop(i, None), row.pop(j, None)
            if vj is not None:
                row[i] = vj
            if vi is not None:
                row[j] = vi
        self.colindex[i], self.colindex[j] = self.colindex[j], self.colindex[i]

    def col_negate(self, j):
        for r in self.colindex[j]:
            self.row[r][j] = -self.row[r][j]

    def col_add(self, dst, src, k):
        """col[dst] += k * col[src]"""
        if k == 0 or dst == src:
            return
        for r in list(self.colindex[src]):
            v = self.row[r][src]
            acc = self.row[r].get(dst, 0) + k * v
            if acc:
                self.row[r][dst] = acc
                self.colindex[dst].add(r)
            else:
                self.row[r].pop(dst, None)
                self.colindex[dst].discard(r)

    def to_matrix(self):
        entries = {}
        for r, row in enumerate(self.row):
            for c, v in row.items():
                entries[(r, c)] = v
        return IntMatrix(self.rows, self.cols, entries)


def smith_normal_form(A: IntMatrix) -> SNFDecomposition:
    n, m = A.rows, A.cols
    work = _Sparse(n, m, A._data.items())
    u = _Sparse(n, n, (((i, i), 1) for i in range(n)))
    uinv_t = _Sparse(n, n, (((i, i), 1) for i in range(n)))
    v_t = _Sparse(m, m, (((i, i), 1) for i in range(m)))
    vinv = _Sparse(m, m, (((i, i), 1) for i in range(m)))
    det_u = det_v = 1

    def row_swap(i, j):
        nonlocal det_u
        if i == j:
            return
        work.row_swap(i, j)
        u.row_swap(i, j)
        uinv_t.row_swap(i, j)
        det_u = -det_u

    def row_negate(i):
        nonlocal det_u
        work.row_negate(i)
        u.row_negate(i)
        uinv_t.row_negate(i)
        det_u = -det_u

    def row_add(dst, src, k):
        # A <- E A with E = I + k*e_dst e_src^T; Uinv gains -k on column src.
        work.row_add(dst, src, k)
        u.row_add(dst, src, k)
        uinv_t.row_add(src, dst, -k)

    def col_swap(i, j):
        nonlocal det_v
        if i == j:
            return
        work.col_swap(i, j)
        v_t.row_swap(i, j)
        vinv.row_swap(i, j)
        det_v = -det_v

    def col_negate(j):
        nonlocal det_v
        work.col_negate(j)
        v_t.row_negate(j)
        vinv.row_negate(j)
        det_v = -det_v

    def col_add(dst, src, k):
        # A <- A E with E = I + k*e_src e_dst^T; V column dst gains k*column src.
        work.col_add(dst, src, k)
        v_t.row_add(dst, src, k)
        vinv.row_add(src, dst, -k)

    def find_pivot(t):
        best = None
        for c in range(t, m):
            for r in work.colindex[c]:
                if r < t:
                    continue
                key = (abs(work.row[r][c]), r, c)
                if best is None or key < best:
                    best = key
        return best

    t = 0
    limit = min(n, m)
    while t < limit:
        best = find_pivot(t)
        if best is None:
            break
        _, pr, pc = best
        row_swap(t, pr)
        col_swap(t, pc)
        if work.row[t][t] < 0:
            row_negate(t)

        while True:
            p = work.row[t][t]
            dirty = False
            for r in sorted(work.colindex[t]):
                if r == t:
                    continue
                q = work.row[r][t] // p
                row_add(r, t, -q)
                if work.row[r].get(t):
                    dirty = True
            for c in sorted(work.row[t]):
                if c == t:
                    continue
                q = work.row[t][c] // p
                col_add(c, t, -q)
                if work.row[t].get(c):
                    dirty = True
            if dirty:
                # a remainder smaller than the pivot appeared; re-pivot
                best = find_pivot(t)
                _, pr, pc = best
                row_swap(t, pr)
                col_swap(t, pc)
                if work.row[t][t] < 0:
                    row_negate(t)
                continue
            p = work.row[t][t]
            # p must divide every remaining entry before moving on
            offender = None
            for c in range(t + 1, m):
                for r in work.colindex[c]:
                    if r > t and work.row[r][c] % p:
                        key = (r, c)
                        if offender is None or key < offender:
                            offender = key
            if offender is None:
                break
            row_add(t, offender[0], 1)
        t += 1

    D = work.to_matrix()
    return SNFDecomposition(
        U=u.to_matrix(),
        D=D,
        V=v_t.to_matrix().transpose(),
        u_inv=uinv_t.to_matrix().transpose(),
        v_inv=vinv.to_matrix(),
        det_u=det_u,
        det_v=det_v,
    )


# ---------------------------------------------------------------------------
# modular linear algebra on top of a decomposition
# ---------------------------------------------------------------------------


def _diag_extended(dec: SNFDecomposition, length: int) -> list[int]:
    d = list(dec.diagonal)
    return d + [0] * (length - len(d))


def kernel_mod(A: IntMatrix, m: int, dec: Optional[SNFDecomposition] = None):
    """Generators and cyclic orders for {x in (Z_m)^cols : A x = 0 mod m}.

    The kernel is the internal direct sum of the cyclic groups generated by
    the returned vectors; x = V x' where x'_i runs over multiples of
    m / gcd(d_i, m).
    """
    if m < 2:
        raise ValueError("modulus must be >= 2")
    dec = dec or smith_normal_form(A)
    d = _diag_extended(dec, A.cols)
    gens = []
    for i in range(A.cols):
        g = math.gcd(d[i], m)
        if g == 1:
            continue
        scale = m // g
        col = dec.V.column(i)
        gens.append((tuple((scale * x) % m for x in col), g))
    return gens


@dataclass(frozen=True)
class CokernelMod:
    """Structure of (Z_m)^rows / im(A mod m) plus the projection onto it."""

    modulus: int
    orders: tuple[int, ...]
    _U: IntMatrix
    _kept: tuple[tuple[int, int], ...]  # (row index in U-coordinates, cyclic order)

    @property
    def order(self) -> int:
        return math.prod(self.orders)

    def project(self, vec: Sequence[int]) -> tuple[int, ...]:
        w = self._U.apply(vec)
        return tuple(w[i] % q for i, q in self._kept)


def cokernel_mod(A: IntMatrix, m: int, dec: Optional[SNFDecomposition] = None) -> CokernelMod:
    if m < 2:
        raise ValueError("modulus must be >= 2")
    dec = dec or smith_normal_form(A)
    d = _diag_extended(dec, A.rows)
    kept = tuple((i, math.gcd(d[i], m)) for i in range(A.rows) if math.gcd(d[i], m) > 1)
    return CokernelMod(
        modulus=m,
        orders=tuple(q for _, q in kept),
        _U=dec.U,
        _kept=kept,
    )


def solve_mod(A: IntMatrix, b: Sequence[int], m: int,
              dec: Optional[SNFDecomposition] = None) -> Optional[tuple[int, ...]]:
    """A witness x with A x = b (mod m), or None; verified by substitution."""
    if m < 2:
        raise ValueError("modulus must be >= 2")
    if len(b) != A.rows:
        raise ValueError("vector length mismatch")
    dec = dec or smith_normal_form(A)
    c = dec.U.apply(b)
    d = _diag_extended(dec, A.rows)
    w = [0] * A.cols
    for i in range(A.rows):
        di = d[i] if i < A.cols else 0
        ci = c[i] % m
        g = math.gcd(di, m)
        if ci % g:
            return None
        if i < A.cols and di:
            # solve di * w = ci (mod m)
            w[i] = (ci // g) * pow(di // g, -1, m // g) % (m // g)
    x = tuple(val % m for val in dec.V.apply(w))
    check = A.apply(x)
    assert all((check[i] - b[i]) % m == 0 for i in range(A.rows))
    return x


solve_in_image = solve_mod
