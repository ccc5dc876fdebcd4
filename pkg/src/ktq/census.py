"""Backtracking enumeration of knot-theoretic ternary quasigroups.

Cells of the cube are filled in row-major (x, y, z) order.  Each partial
assignment keeps the three families of Latin lines injective, and every LN
or RN instance whose five bracket evaluations are all known is checked as
soon as the last of them is assigned.  Isomorph rejection keeps only cubes
that are lexicographically least among their relabelings; the test is
applied to the determined prefix after each completed line, which prunes
whole subtrees.
"""

import itertools
import os
import time
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

from .errors import InputError


@dataclass
class CensusResult:
    size: int
    up_to_iso: bool
    cubes: list = field(default_factory=list)   # 0-based nested tuples
    complete: bool = True
    elapsed: float = 0.0
    nodes: int = 0

    @property
    def count(self):
        return len(self.cubes)


class _Search:
    def __init__(self, n, up_to_iso, limit=None, deadline=None):
        self.n = n
        self.up_to_iso = up_to_iso
        self.limit = limit
        self.deadline = deadline
        self.cells = n ** 3
        self.cube = [-1] * self.cells
        self.full = (1 << n) - 1
        self.used_xy = [0] * (n * n)     # z varies
        self.used_xz = [0] * (n * n)     # y varies
        self.used_yz = [0] * (n * n)     # x varies
        self.found = []
        self.nodes = 0
        self.stopped = False
        if up_to_iso:
            perms = list(itertools.permutations(range(n)))[1:]
            self.perms = []
            for p in perms:
                inv = [0] * n
                for i, v in enumerate(p):
                    inv[v] = i
                # src[q] = index of the cell whose value is relabeled into q
                src = [((inv[x] * n + inv[y]) * n + inv[z])
                       for x, y, z in itertools.product(range(n), repeat=3)]
                self.perms.append((p, src))

    # -- axiom checks -------------------------------------------------
    def _get(self, x, y, z):
        return self.cube[(x * self.n + y) * self.n + z]

    def _violates(self, a, b, c, d):
        g = self._get
        abc = g(a, b, c)
        bcd = g(b, c, d)
        if bcd >= 0:
            l = g(a, b, bcd)
            if l >= 0 and abc >= 0:
                w = g(abc, c, d)
                if w >= 0:
                    r = g(a, abc, w)
                    if r >= 0 and r != l:
                        return True
                    # RN: [[abc]cd] = [[ab[bcd]][bcd]d]
                    r2 = g(l, bcd, d)
                    if r2 >= 0 and r2 != w:
                        return True
        return False

    def _quads_touching(self, x, y, z):
        n = self.n
        g = self._get
        quads = set()
        r = range(n)
        for t in r:
            quads.add((x, y, z, t))      # cell is [abc]
            quads.add((t, x, y, z))      # cell is [bcd]
        for c in r:
            for d in r:
                if g(y, c, d) == z:
                    quads.add((x, y, c, d))          # cell is [ab[bcd]]
        for a in r:
            for b in r:
                if g(a, b, y) == x:
                    quads.add((a, b, y, z))          # cell is [[abc]cd]
        for b in r:
            for c in r:
                if g(x, b, c) == y:
                    for d in r:
                        if g(y, c, d) == z:
                            quads.add((x, b, c, d))  # cell is [a[abc][[abc]cd]]
                if g(b, c, z) == y:
                    for a in r:
                        if g(a, b, y) == x:
                            quads.add((a, b, c, z))  # cell is [[ab[bcd]][bcd]d]
        return quads

    def _axioms_ok(self, x, y, z):
        return not any(self._violates(*q) for q in self._quads_touching(x, y, z))

    # -- isomorph rejection -------------------------------------------
    def _is_lex_leader_prefix(self, filled):
        """False if some relabeling is already known to be smaller."""
        cube = self.cube
        for p, src in self.perms:
            for q in range(filled):
                s = src[q]
                v = cube[s]
                if v < 0:
                    break
                v = p[v]
                w = cube[q]
                if v < w:
                    return False
                if v > w:
                    break
        return True

    # -- driver -------------------------------------------------------
    def run(self, prefix=()):
        for pos, v in enumerate(prefix):
            if not self._place(pos, v):
                return
        self._dfs(len(prefix))

    def _place(self, pos, v):
        n = self.n
        x, rem = divmod(pos, n * n)
        y, z = divmod(rem, n)
        bit = 1 << v
        if (self.used_xy[x * n + y] | self.used_xz[x * n + z] | self.used_yz[y * n + z]) & bit:
            return False
        self.cube[pos] = v
        self.used_xy[x * n + y] |= bit
        self.used_xz[x * n + z] |= bit
        self.used_yz[y * n + z] |= bit
        if not self._axioms_ok(x, y, z):
            return False
        if self.up_to_iso and z == n - 1 and not self._is_lex_leader_prefix(pos + 1):
            return False
        return True

    def _dfs(self, pos):
        if self.stopped:
            return
        self.nodes += 1
        if pos == self.cells:
            n = self.n
            c = self.cube
            self.found.append(tuple(tuple(tuple(c[(x * n + y) * n: (x * n + y) * n + n])
                                          for y in range(n)) for x in range(n)))
            if self.limit is not None and len(self.found) >= self.limit:
                self.stopped = True
            return
        if self.deadline is not None and self.nodes % 4096 == 0 and time.monotonic() > self.deadline:
            self.stopped = True
            return
        n = self.n
        x, rem = divmod(pos, n * n)
        y, z = divmod(rem, n)
        ixy, ixz, iyz = x * n + y, x * n + z, y * n + z
        free = self.full & ~(self.used_xy[ixy] | self.used_xz[ixz] | self.used_yz[iyz])
        for v in range(n):
            bit = 1 << v
            if not free & bit:
                continue
            self.cube[pos] = v
            self.used_xy[ixy] |= bit
            self.used_xz[ixz] |= bit
            self.used_yz[iyz] |= bit
            if self._axioms_ok(x, y, z) and not (
                    self.up_to_iso and z == n - 1 and not self._is_lex_leader_prefix(pos + 1)):
                self._dfs(pos + 1)
            self.used_xy[ixy] &= ~bit
            self.used_xz[ixz] &= ~bit
            self.used_yz[iyz] &= ~bit
            self.cube[pos] = -1
            if self.stopped:
                return


def _run_branch(args):
    n, up_to_iso, prefix, deadline = args
    s = _Search(n, up_to_iso, deadline=deadline)
    s.run(prefix)
    return s.found, s.nodes, s.stopped


def _prefixes(n):
    # Distinct first lines (0,0,.) are permutations of range(n).
    return list(itertools.permutations(range(n)))


def enumerate_ktq(n, up_to_iso=True, limit=None, timeout=None, workers=1):
    """Enumerate all KTQs of order ``n``.

    With ``up_to_iso`` only canonical representatives (see
    :func:`ktq.algebra.canonical_form`) are returned, in lexicographic
    order.  ``limit`` caps the number of cubes and ``timeout`` (seconds)
    the wall time; hitting either marks the result incomplete.
    """
    if n < 1:
        raise InputError("size must be at least 1")
    start = time.monotonic()
    deadline = start + timeout if timeout else None
    result = CensusResult(n, up_to_iso)
    if workers is None:
        workers = os.cpu_count() or 1
    if workers > 1 and limit is None and n >= 3:
        jobs = [(n, up_to_iso, p, deadline) for p in _prefixes(n)]
        with ProcessPoolExecutor(workers) as pool:
            for found, nodes, stopped in pool.map(_run_branch, jobs):
                result.cubes.extend(found)
                result.nodes += nodes
                if stopped:
                    result.complete = False
        result.cubes.sort()
    else:
        s = _Search(n, up_to_iso, limit=limit, deadline=deadline)
        s.run()
        result.cubes = s.found
        result.nodes = s.nodes
        result.complete = not s.stopped
    result.elapsed = time.monotonic() - start
    return result


def count_ktq(n, up_to_iso=True, **kw):
    return enumerate_ktq(n, up_to_iso=up_to_iso, **kw).count
