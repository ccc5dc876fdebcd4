"""Region colorings of braid closures and long knots.

A braid on ``s`` strands is drawn vertically with strands oriented top to
bottom.  Level ``t`` (``0..L``) is the horizontal cut above the ``t``-th
letter; at each level the plane is split into ``s + 1`` slots (columns)
numbered left to right, column ``j`` lying between strand positions ``j``
and ``j + 1``.  A letter ``+-i`` swaps the strands at positions ``i`` and
``i + 1`` and separates column ``i`` above the crossing from column ``i``
below it.  Every other cell continues downward, and level ``L`` is glued to
level ``0`` by the closure.  Regions are the resulting classes of cells;
column 0 is the unbounded region.

For a long knot, strand position 1 is left open and runs off to infinity
at both ends.  The region structure is the same as for the closure, so
the two modes differ only in which regions are pinned by constraints.
"""

import itertools
from dataclasses import dataclass

from .errors import InputError, InvariantError
from .homology import add_to

QUADRANTS = ("W", "N", "E", "S")


def parse_braid(text):
    """Parse ``"1,1,2,-1"`` into a tuple of nonzero integers."""
    text = text.strip()
    if not text:
        return ()
    try:
        letters = tuple(int(tok) for tok in text.replace(" ", "").split(","))
    except ValueError:
        raise InputError(f"bad braid word {text!r}") from None
    if any(g == 0 for g in letters):
        raise InputError("braid letters must be nonzero")
    return letters


@dataclass(frozen=True)
class Convention:
    """How crossings of a downward braid are read.

    ``coorient`` is the side every co-orientation arrow points to (``"E"``
    is the left-hand side of a strand travelling down).  ``over`` says
    which strand is on top at a positive letter: ``"left"`` means the
    strand entering from the left position.  ``tau`` multiplies the letter
    sign to give the crossing sign.
    """

    coorient: str = "E"
    over: str = "left"
    tau: int = 1

    def roles(self, sign):
        """Quadrants ``(r0, r1, r2, r3)`` for a letter of the given sign."""
        src, dst = ("W", "E") if self.coorient == "E" else ("E", "W")
        left_over = (self.over == "left") == (sign > 0)
        # The strand entering from the left runs NW -> SE and bounds the
        # pairs W|N and E|S; the other strand bounds W|S and E|N.
        # r1 is the quadrant cut off from r0 by the under-strand.
        if src == "W":
            r1 = "S" if left_over else "N"
        else:
            r1 = "N" if left_over else "S"
        r3 = "N" if r1 == "S" else "S"
        return src, r1, dst, r3


DEFAULT_CONVENTION = Convention()


@dataclass(frozen=True)
class Crossing:
    level: int
    position: int
    sign: int
    quadrants: dict       # quadrant letter -> region id
    roles: tuple          # (r0, r1, r2, r3) region ids
    tau: int


class _UnionFind:
    def __init__(self, n):
        self.parent = list(range(n))

    def find(self, a):
        while self.parent[a] != a:
            self.parent[a] = self.parent[self.parent[a]]
            a = self.parent[a]
        return a

    def union(self, a, b):
        a, b = self.find(a), self.find(b)
        if a != b:
            self.parent[max(a, b)] = min(a, b)


class ClosedBraidDiagram:
    """Region structure of a braid closure (``mode="closed"``) or long knot.

    Attributes of interest: ``regions`` (number of regions), ``cell_region``
    (``[level][column] -> region id``), ``crossings`` and ``arcs``, the set
    of ``(source region, target region)`` pairs separated by a strand.
    """

    def __init__(self, word, strands=None, mode="closed", convention=DEFAULT_CONVENTION):
        word = tuple(int(g) for g in word)
        if any(g == 0 for g in word):
            raise InputError("braid letters must be nonzero")
        need = max((abs(g) for g in word), default=0) + 1
        if strands is None:
            strands = need
        if strands < 1:
            raise InputError("a braid needs at least one strand")
        if strands < need:
            raise InputError(f"letter {max(abs(g) for g in word)} needs at least {need} strands")
        if mode not in ("closed", "long"):
            raise InputError(f"mode must be 'closed' or 'long', not {mode!r}")
        self.word = word
        self.strands = s = strands
        self.mode = mode
        self.convention = convention
        L = len(word)
        self.levels = L
        ncols = s + 1

        uf = _UnionFind((L + 1) * ncols)
        cell = lambda t, j: t * ncols + j
        for t, g in enumerate(word):
            for j in range(ncols):
                if j != abs(g):
                    uf.union(cell(t, j), cell(t + 1, j))
        for j in range(ncols):
            uf.union(cell(0, j), cell(L, j))

        # Number regions by first appearance in column-major order, so the
        # unbounded column-0 region is 0 and ids are stable.
        ids = {}
        for j in range(ncols):
            for t in range(L + 1):
                root = uf.find(cell(t, j))
                if root not in ids:
                    ids[root] = len(ids)
        self.regions = len(ids)
        self.cell_region = [[ids[uf.find(cell(t, j))] for j in range(ncols)] for t in range(L + 1)]
        self.region_cells = [[] for _ in range(self.regions)]
        for t in range(L + 1):
            for j in range(ncols):
                self.region_cells[self.cell_region[t][j]].append((t, j))

        self.crossings = []
        for t, g in enumerate(word):
            i = abs(g)
            sign = 1 if g > 0 else -1
            quad = {
                "W": self.cell_region[t][i - 1],
                "N": self.cell_region[t][i],
                "E": self.cell_region[t][i + 1],
                "S": self.cell_region[t + 1][i],
            }
            names = convention.roles(sign)
            roles = tuple(quad[q] for q in names)
            self.crossings.append(Crossing(t, i, sign, quad, roles, convention.tau * sign))
        self._role_names = {1: convention.roles(1), -1: convention.roles(-1)}

        arcs = set()
        for t in range(L + 1):
            for j in range(1, ncols):
                w, e = self.cell_region[t][j - 1], self.cell_region[t][j]
                arcs.add((w, e) if convention.coorient == "E" else (e, w))
        self.arcs = sorted(arcs)

    # ------------------------------------------------------------------
    @property
    def unbounded_region(self):
        return 0

    @property
    def rightmost_region(self):
        """Region of the last column at the top level.

        Right colorings are computed east to west, so this is where the
        sweep of the right rule starts; right layer seeds live here.
        """
        return self.cell_region[0][self.strands]

    @property
    def first_arc_target(self):
        """Region across the first arc of strand position 1 at the top."""
        return self.cell_region[0][1]

    def crossing_roles(self, c):
        x = self.crossings[c]
        return x.roles + (x.tau,)

    def describe(self):
        return {
            "strands": self.strands,
            "word": list(self.word),
            "mode": self.mode,
            "regions": [
                {"id": r, "cells": [list(c) for c in self.region_cells[r]],
                 "unbounded": r == self.unbounded_region}
                for r in range(self.regions)
            ],
            "crossings": [
                {"level": x.level, "position": x.position, "sign": x.sign,
                 "r0": x.roles[0], "r1": x.roles[1], "r2": x.roles[2], "r3": x.roles[3],
                 "tau": x.tau}
                for x in self.crossings
            ],
        }

    # ------------------------------------------------------------------
    def _solve_south(self, T, sign, quad):
        """Colour of the S quadrant from W, N, E."""
        names = self._role_names[sign]
        r = [quad.get(q) for q in names]
        k = names.index("S")
        if k == 3:
            return T.table[r[0]][r[1]][r[2]]
        if k == 1:
            return T.middle_table[r[0]][r[3]][r[2]]
        if k == 0:
            return T.left_table[r[3]][r[1]][r[2]]
        return T.right_table[r[0]][r[1]][r[3]]

    def is_coloring(self, T, col):
        if len(col) != self.regions:
            return False
        t = T.table
        for x in self.crossings:
            r0, r1, r2, r3 = x.roles
            if t[col[r0]][col[r1]][col[r2]] != col[r3]:
                return False
        return True

    def enumerate_colorings(self, T, constraints=None):
        """All KTQ colorings as tuples indexed by region id.

        Sweeps slot states top to bottom from every admissible top row and
        keeps the ones that close up.  ``constraints`` maps region ids to
        colours.  Result is sorted.
        """
        constraints = dict(constraints or {})
        for r, v in constraints.items():
            if not 0 <= r < self.regions:
                raise InputError(f"no region {r}; diagram has {self.regions}")
            if not 0 <= v < T.size:
                raise InputError(f"colour {v} out of range")
        ncols = self.strands + 1
        top = self.cell_region[0]
        choices = []
        for j in range(ncols):
            r = top[j]
            choices.append([constraints[r]] if r in constraints else range(T.size))
        out = []
        for state in itertools.product(*choices):
            # regions repeated within the top row must agree
            first = {}
            if any(first.setdefault(top[j], state[j]) != state[j] for j in range(ncols)):
                continue
            row = list(state)
            col = [None] * self.regions
            for j in range(ncols):
                col[top[j]] = row[j]
            ok = True
            for t, g in enumerate(self.word):
                i = abs(g)
                quad = {"W": row[i - 1], "N": row[i], "E": row[i + 1]}
                v = self._solve_south(T, 1 if g > 0 else -1, quad)
                row[i] = v
                r = self.cell_region[t + 1][i]
                if col[r] is None:
                    col[r] = v
                elif col[r] != v:
                    ok = False
                    break
            if not ok or row != list(state):
                continue
            if any(col[r] != v for r, v in constraints.items()):
                continue
            out.append(tuple(col))
        out.sort()
        return out

    # ------------------------------------------------------------------
    def extend(self, T, side, base, seed_region, seed_color):
        """The left or right coloring of ``base`` with ``seed_color`` at
        ``seed_region``.

        Across an arc whose co-orientation points from ``r1`` to ``r2`` a
        left coloring satisfies ``L(r2) = [L(r1) C(r1) C(r2)]`` and a right
        coloring ``R(r1) = [C(r1) C(r2) R(r2)]``.  Values are propagated
        along a spanning tree of the region adjacency graph; every other arc
        is then checked.
        """
        if side not in ("left", "right"):
            raise InputError(f"side must be 'left' or 'right', not {side!r}")
        if not 0 <= seed_region < self.regions:
            raise InputError(f"no region {seed_region}")
        t, lt, rt = T.table, T.left_table, T.right_table
        adj = [[] for _ in range(self.regions)]
        for a, b in self.arcs:
            adj[a].append((b, True))     # a is the source of the arc
            adj[b].append((a, False))
        val = [None] * self.regions
        val[seed_region] = seed_color
        stack = [seed_region]
        while stack:
            u = stack.pop()
            for w, forward in adj[u]:
                if val[w] is not None:
                    continue
                if side == "left":
                    if forward:      # u = r1, w = r2
                        val[w] = t[val[u]][base[u]][base[w]]
                    else:            # w = r1, u = r2
                        val[w] = lt[val[u]][base[w]][base[u]]
                else:
                    if forward:      # u = r1, w = r2: R(u) = [C(u) C(w) R(w)]
                        val[w] = rt[base[u]][base[w]][val[u]]
                    else:            # w = r1, u = r2
                        val[w] = t[base[w]][base[u]][val[u]]
                stack.append(w)
        if any(v is None for v in val):
            raise InvariantError("region adjacency graph is disconnected")
        for a, b in self.arcs:
            if side == "left":
                good = val[b] == t[val[a]][base[a]][base[b]]
            else:
                good = val[a] == t[base[a]][base[b]][val[b]]
            if not good:
                raise InvariantError(f"{side} coloring is inconsistent across arc {a}->{b}")
        return tuple(val)

    def enumerate_layered(self, T, p, k, base_constraints=None, layer_seeds=None,
                          seed_region=None, right_seed_region=None):
        """All layered colorings ``(C_0, ..., C_p, ..., C_{p+k})``.

        ``layer_seeds`` is ``None`` (all seeds free) or a sequence of length
        ``p + k`` giving, for each non-base layer in order ``C_0 .. C_{p-1},
        C_{p+1} .. C_{p+k}``, a fixed colour or ``None``.  Left seeds live
        at ``seed_region`` (the unbounded region by default), right seeds at
        ``right_seed_region`` (default: ``seed_region`` if given, otherwise
        the rightmost region).  Where a seed sits only matters when it is
        fixed.
        """
        if p < 0 or k < 0:
            raise InputError("p and k must be nonnegative")
        if right_seed_region is None:
            right_seed_region = self.rightmost_region if seed_region is None else seed_region
        if seed_region is None:
            seed_region = self.unbounded_region
        if layer_seeds is None:
            layer_seeds = [None] * (p + k)
        layer_seeds = list(layer_seeds)
        if len(layer_seeds) != p + k:
            raise InputError(f"need {p + k} layer seeds, got {len(layer_seeds)}")
        opts = [range(T.size) if s is None else [s] for s in layer_seeds]
        out = []
        for base in self.enumerate_colorings(T, base_constraints):
            for seeds in itertools.product(*opts):
                layers = [None] * (p + k + 1)
                layers[p] = base
                for j in range(p - 1, -1, -1):
                    layers[j] = self.extend(T, "left", layers[j + 1], seed_region, seeds[j])
                for j in range(p + 1, p + k + 1):
                    layers[j] = self.extend(T, "right", layers[j - 1], right_seed_region,
                                            seeds[j - 1])
                out.append(LayeredColoring(tuple(layers), p, k))
        return out

    # ------------------------------------------------------------------
    def colored_path(self, c, lc):
        r0, r1, r2, _ = self.crossings[c].roles
        L = lc.layers
        p, k = lc.p, lc.k
        return (tuple(L[j][r0] for j in range(p))
                + (L[p][r0], L[p][r1], L[p][r2])
                + tuple(L[j][r2] for j in range(p + 1, p + k + 1)))

    def cycle(self, lc):
        """Signed sum of the colored paths of all crossings."""
        out = {}
        for c, x in enumerate(self.crossings):
            add_to(out, self.colored_path(c, lc), x.tau)
        return out

    def long_knot_constraints(self, a, b, left_seed, right_seed, p=0, k=0):
        """Pin the first arc's colored path to ``(a, b)`` and the layer seeds
        (left seeds at the unbounded region, right seeds at the rightmost
        region).  Returns ``(base_constraints, layer_seeds)``."""
        if self.mode != "long":
            raise InputError("long-knot constraints need a long-mode diagram")
        r0, r1 = self.unbounded_region, self.first_arc_target
        if r0 == r1:
            raise InvariantError("first arc does not separate two regions")
        return {r0: a, r1: b}, [left_seed] * p + [right_seed] * k


@dataclass(frozen=True)
class LayeredColoring:
    layers: tuple     # (C_0, ..., C_p, ..., C_{p+k}), each indexed by region
    p: int
    k: int

    @property
    def base(self):
        return self.layers[self.p]


# Functional surface ---------------------------------------------------

def build_diagram(word, mode="closed", strands=None, convention=DEFAULT_CONVENTION):
    if isinstance(word, str):
        word = parse_braid(word)
    return ClosedBraidDiagram(word, strands=strands, mode=mode, convention=convention)


def diagram_cycle(diagram, lc):
    return diagram.cycle(lc)
