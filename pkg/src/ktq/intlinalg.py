"""Exact integer matrices: Smith and Hermite normal forms, lattice residues.

Everything here uses Python integers, so entries never overflow.  Matrices
are stored column-wise as ``{row: value}`` dictionaries, which suits the
very sparse boundary matrices produced by homology computations.
"""

import heapq
from dataclasses import dataclass
from math import gcd

from .errors import InputError


class IntegerMatrix:
    """A ``rows x cols`` integer matrix stored as sparse columns."""

    __slots__ = ("rows", "cols", "columns")

    def __init__(self, rows, cols, columns=None):
        if rows < 0 or cols < 0:
            raise InputError("matrix dimensions must be nonnegative")
        self.rows = rows
        self.cols = cols
        if columns is None:
            columns = [{} for _ in range(cols)]
        if len(columns) != cols:
            raise InputError(f"expected {cols} columns, got {len(columns)}")
        clean = []
        for col in columns:
            d = {}
            for r, v in col.items():
                if not 0 <= r < rows:
                    raise InputError(f"row index {r} out of range")
                v = int(v)
                if v:
                    d[r] = v
            clean.append(d)
        self.columns = clean

    @classmethod
    def from_dense(cls, data, cols=None):
        data = [list(map(int, row)) for row in data]
        rows = len(data)
        if cols is None:
            cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise InputError("ragged matrix")
        columns = [{i: data[i][j] for i in range(rows) if data[i][j]} for j in range(cols)]
        return cls(rows, cols, columns)

    @classmethod
    def zeros(cls, rows, cols):
        return cls(rows, cols)

    @classmethod
    def identity(cls, n):
        return cls(n, n, [{i: 1} for i in range(n)])

    def to_dense(self):
        out = [[0] * self.cols for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                out[i][j] = v
        return out

    def __getitem__(self, ij):
        i, j = ij
        return self.columns[j].get(i, 0)

    def __eq__(self, other):
        return (isinstance(other, IntegerMatrix) and self.rows == other.rows
                and self.cols == other.cols and self.columns == other.columns)

    def __repr__(self):
        return f"IntegerMatrix({self.rows}x{self.cols}, nnz={self.nnz})"

    @property
    def nnz(self):
        return sum(len(c) for c in self.columns)

    def transpose(self):
        cols = [{} for _ in range(self.rows)]
        for j, col in enumerate(self.columns):
            for i, v in col.items():
                cols[i][j] = v
        return IntegerMatrix(self.cols, self.rows, cols)

    def __matmul__(self, other):
        if self.cols != other.rows:
            raise InputError(f"shape mismatch {self.rows}x{self.cols} @ {other.rows}x{other.cols}")
        out = []
        for col in other.columns:
            acc = {}
            for k, v in col.items():
                for i, a in self.columns[k].items():
                    acc[i] = acc.get(i, 0) + a * v
            out.append({i: v for i, v in acc.items() if v})
        return IntegerMatrix(self.rows, other.cols, out)

    def is_zero(self):
        return not any(self.columns)

    def apply(self, vec):
        """Matrix-vector product for a dense vector."""
        if len(vec) != self.cols:
            raise InputError("vector length does not match column count")
        out = [0] * self.rows
        for j, x in enumerate(vec):
            if x:
                for i, a in self.columns[j].items():
                    out[i] += a * x
        return out


def _as_matrix(M):
    if isinstance(M, IntegerMatrix):
        return M
    return IntegerMatrix.from_dense(M)


# ----------------------------------------------------------------------
# Smith normal form
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class SmithResult:
    factors: tuple      # nonzero invariant factors d1 | d2 | ...
    rank: int

    @property
    def torsion(self):
        return tuple(d for d in self.factors if d > 1)


def _eliminate_units(columns, nrows):
    """Sparse unit-pivot elimination used before dense Smith reduction.

    Repeatedly picks an entry +-1, clears its row with column operations
    and discards the pivot row and column.  Each such step contributes an
    invariant factor 1.  Returns (number of unit pivots, remaining
    columns restricted to remaining rows).
    """
    cols = {j: dict(c) for j, c in enumerate(columns) if c}
    row_index = {}
    for j, c in cols.items():
        for i in c:
            row_index.setdefault(i, set()).add(j)
    units = 0
    progress = True
    while progress:
        progress = False
        for j in sorted(cols, key=lambda j: (len(cols[j]), j)):
            col = cols.get(j)
            if not col:
                continue
            best = None
            for i, v in col.items():
                if v == 1 or v == -1:
                    cost = len(row_index[i])
                    if best is None or (cost, i) < best[:2]:
                        best = (cost, i, v)
            if best is None:
                continue
            _, r, pv = best
            for j2 in sorted(row_index[r]):
                if j2 == j:
                    continue
                other = cols[j2]
                f = other[r] * pv
                for i, v in col.items():
                    w = other.get(i, 0) - f * v
                    if w:
                        if i not in other:
                            row_index[i].add(j2)
                        other[i] = w
                    else:
                        del other[i]
                        row_index[i].discard(j2)
                if not other:
                    del cols[j2]
            for i in col:
                row_index[i].discard(j)
            del cols[j]
            del row_index[r]
            units += 1
            progress = True
    rows_left = sorted(i for i, s in row_index.items() if s)
    return units, rows_left, [cols[j] for j in sorted(cols)]


def _diagonalize_dense(a):
    """Reduce a dense matrix (list of rows, modified in place) to diagonal
    form by unimodular row and column operations; returns the diagonal."""
    m = len(a)
    n = len(a[0]) if m else 0
    diag = []
    t = 0
    while t < min(m, n):
        # smallest nonzero entry of the trailing block as pivot
        best = None
        for i in range(t, m):
            row = a[i]
            for j in range(t, n):
                v = row[j]
                if v and (best is None or abs(v) < best[0]):
                    best = (abs(v), i, j)
                    if best[0] == 1:
                        break
            if best is not None and best[0] == 1:
                break
        if best is None:
            break
        _, i, j = best
        a[t], a[i] = a[i], a[t]
        if j != t:
            for row in a:
                row[t], row[j] = row[j], row[t]
        while True:
            p = a[t][t]
            dirty = False
            for i in range(t + 1, m):
                v = a[i][t]
                if v:
                    q = v // p
                    if q:
                        ri, rt = a[i], a[t]
                        for jj in range(t, n):
                            if rt[jj]:
                                ri[jj] -= q * rt[jj]
                    if a[i][t]:
                        dirty = True
            rt = a[t]
            for j in range(t + 1, n):
                v = rt[j]
                if v:
                    q = v // p
                    if q:
                        for row in a[t:]:
                            if row[t]:
                                row[j] -= q * row[t]
                    if rt[j]:
                        dirty = True
            if not dirty:
                break
            # a smaller remainder appeared; move it to the pivot position
            best = (abs(p), t, t)
            for i in range(t + 1, m):
                v = a[i][t]
                if v and abs(v) < best[0]:
                    best = (abs(v), i, t)
            for j in range(t + 1, n):
                v = a[t][j]
                if v and abs(v) < best[0]:
                    best = (abs(v), t, j)
            _, i, j = best
            if i != t:
                a[t], a[i] = a[i], a[t]
            if j != t:
                for row in a:
                    row[t], row[j] = row[j], row[t]
        diag.append(abs(a[t][t]))
        t += 1
    return diag


def _invariant_factors(diag):
    """Turn any diagonal into the divisibility chain with the same cokernel."""
    d = sorted(x for x in diag if x)
    k = len(d)
    for i in range(k):
        for j in range(i + 1, k):
            g = gcd(d[i], d[j])
            if g != d[i]:
                d[i], d[j] = g, d[i] * d[j] // g
    return tuple(d)


def smith_normal_form(M):
    """Invariant factors and rank of an integer matrix.

    Unit pivots are eliminated sparsely first; whatever is left is usually
    small and is diagonalized densely.
    """
    M = _as_matrix(M)
    units, rows_left, rest = _eliminate_units(M.columns, M.rows)
    factors = [1] * units
    if rest:
        pos = {r: k for k, r in enumerate(rows_left)}
        dense = [[0] * len(rest) for _ in rows_left]
        for j, col in enumerate(rest):
            for i, v in col.items():
                dense[pos[i]][j] = v
        factors.extend(_diagonalize_dense(dense))
    factors = _invariant_factors(factors)
    return SmithResult(factors, len(factors))


def rank(M):
    return smith_normal_form(M).rank


# ----------------------------------------------------------------------
# Hermite normal form and lattice residues
# ----------------------------------------------------------------------

def hermite_normal_form(M):
    """Column-style Hermite normal form.

    Returns ``(H, U)`` with ``M @ U == H``, ``U`` unimodular, and ``H`` in
    lower echelon form: the nonzero columns come first, column ``j`` has
    its first nonzero entry (the pivot, positive) in row ``pivots[j]``
    with ``pivots`` strictly increasing, and every entry to the left of a
    pivot lies in ``[0, pivot)``.  Zero columns trail.
    """
    M = _as_matrix(M)
    m, n = M.rows, M.cols
    h = M.to_dense()
    u = [[int(i == j) for j in range(n)] for i in range(n)]

    def colop(dst, src, q):         # col dst -= q * col src
        for row in h:
            row[dst] -= q * row[src]
        for row in u:
            row[dst] -= q * row[src]

    def swap(a, b):
        for row in h:
            row[a], row[b] = row[b], row[a]
        for row in u:
            row[a], row[b] = row[b], row[a]

    def negate(a):
        for row in h:
            row[a] = -row[a]
        for row in u:
            row[a] = -row[a]

    k = 0
    pivots = []
    for i in range(m):
        if k == n:
            break
        while True:
            nz = [j for j in range(k, n) if h[i][j]]
            if not nz:
                break
            j = min(nz, key=lambda j: (abs(h[i][j]), j))
            if j != k:
                swap(j, k)
            for j in range(k + 1, n):
                if h[i][j]:
                    colop(j, k, h[i][j] // h[i][k])
            if not any(h[i][j] for j in range(k + 1, n)):
                break
        if h[i][k] == 0:
            continue
        if h[i][k] < 0:
            negate(k)
        p = h[i][k]
        for j in range(k):
            q = h[i][j] // p
            if q:
                colop(j, k, q)
        pivots.append(i)
        k += 1
    H = IntegerMatrix.from_dense(h, n)
    U = IntegerMatrix.from_dense(u, n)
    return H, U


def hnf_pivots(H):
    """Pivot rows of the nonzero columns of a matrix in column HNF."""
    piv = []
    for col in H.columns:
        if not col:
            break
        piv.append(min(col))
    return piv


def lattice_residue(v, M):
    """Canonical representative of ``v`` modulo the column lattice of ``M``.

    Two vectors get the same residue exactly when their difference is an
    integer combination of the columns; the residue is zero exactly for
    lattice vectors.
    """
    M = _as_matrix(M)
    v = [int(x) for x in v]
    if len(v) != M.rows:
        raise InputError(f"vector has length {len(v)}, matrix has {M.rows} rows")
    H, _ = hermite_normal_form(M)
    for col in H.columns:
        if not col:
            break
        r = min(col)
        q = v[r] // col[r]
        if q:
            for i, a in col.items():
                v[i] -= q * a
    return v


class Lattice:
    """Sublattice of ``Z^dim`` spanned by sparse generators.

    The generators are put into echelon form once, choosing pivots to keep
    fill-in low.  :meth:`residue` then reduces any vector to a
    representative of its coset; for a fixed generating set the
    representative is deterministic, so equal residues mean equal cosets.
    """

    def __init__(self, dim, generators):
        self.dim = dim
        # (pivot_row, pivot_value > 0, vector) in elimination order
        self.basis = []
        self._order = {}
        gens = {}
        row_index = {}
        for k, g in enumerate(generators):
            g = {i: int(x) for i, x in g.items() if x}
            for i in g:
                if not 0 <= i < dim:
                    raise InputError(f"generator entry {i} outside dimension {dim}")
            if g:
                gens[k] = g
                for i in g:
                    row_index.setdefault(i, set()).add(k)
        self._echelonize(gens, row_index)

    def _take(self, k, r, gens, row_index):
        g = gens.pop(k)
        for i in g:
            row_index[i].discard(k)
        if g[r] < 0:
            g = {i: -x for i, x in g.items()}
        self._order[r] = len(self.basis)
        self.basis.append((r, g[r], g))
        row_index.pop(r, None)

    @staticmethod
    def _axpy(dst, k2, f, src, row_index):
        # dst -= f * src, keeping the row index current
        for i, v in src.items():
            w = dst.get(i, 0) - f * v
            if w:
                if i not in dst:
                    row_index.setdefault(i, set()).add(k2)
                dst[i] = w
            else:
                del dst[i]
                row_index[i].discard(k2)

    def _echelonize(self, gens, row_index):
        while gens:
            progress = False
            for k in sorted(gens, key=lambda k: (len(gens[k]), k)):
                g = gens.get(k)
                if g is None:
                    continue
                best = None
                for i, v in g.items():
                    if v == 1 or v == -1:
                        cost = len(row_index[i])
                        if best is None or (cost, i) < best[:2]:
                            best = (cost, i)
                if best is None:
                    continue
                r = best[1]
                pv = g[r]
                for k2 in sorted(row_index[r]):
                    if k2 == k:
                        continue
                    other = gens[k2]
                    self._axpy(other, k2, other[r] * pv, g, row_index)
                    if not other:
                        del gens[k2]
                self._take(k, r, gens, row_index)
                progress = True
            if progress or not gens:
                continue
            # No unit entries left: gcd-reduce along the sparsest row.
            r = min((i for i, s in row_index.items() if s), key=lambda i: (len(row_index[i]), i))
            while True:
                ks = sorted(row_index[r])
                if len(ks) == 1:
                    break
                k = min(ks, key=lambda k: (abs(gens[k][r]), len(gens[k]), k))
                g = gens[k]
                for k2 in ks:
                    if k2 == k:
                        continue
                    other = gens[k2]
                    self._axpy(other, k2, other[r] // g[r], g, row_index)
                    if not other:
                        del gens[k2]
            self._take(ks[0], r, gens, row_index)

    @property
    def rank(self):
        return len(self.basis)

    def residue(self, v):
        """Reduce a sparse vector ``{row: value}``; returns a sparse dict."""
        v = {i: int(x) for i, x in v.items() if x}
        order = self._order
        heap = [order[i] for i in v if i in order]
        heapq.heapify(heap)
        done = set()
        while heap:
            t = heapq.heappop(heap)
            if t in done:
                continue
            done.add(t)
            r, p, b = self.basis[t]
            x = v.get(r, 0)
            q = x // p
            if not q:
                continue
            for i, a in b.items():
                w = v.get(i, 0) - q * a
                if w:
                    if i not in v:
                        o = order.get(i)
                        if o is not None and o > t:
                            heapq.heappush(heap, o)
                    v[i] = w
                else:
                    v.pop(i, None)
        return v

    def __contains__(self, v):
        return not self.residue(v)
