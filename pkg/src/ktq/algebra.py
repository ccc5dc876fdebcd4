"""Ternary quasigroups stored as Latin cubes.

Elements are the integers ``0..n-1``.  The JSON file format and printed
reports use ``1..n`` so that tables can be compared by eye with printed
multiplication cubes.
"""

import itertools
import json
from dataclasses import dataclass
from pathlib import Path

from .errors import InputError

DIVISIONS = ("left", "middle", "right")


@dataclass(frozen=True)
class LatinViolation:
    direction: str          # which coordinate varies along the bad line
    line: tuple             # the two fixed coordinates, in (x, y, z) order minus `direction`
    value: int              # a value that repeats on that line


@dataclass(frozen=True)
class AxiomViolation:
    axiom: str              # "LN" or "RN"
    quad: tuple             # (a, b, c, d)


def _as_cube(cube):
    try:
        n = len(cube)
        rows = tuple(tuple(tuple(int(v) for v in row) for row in plane) for plane in cube)
    except (TypeError, ValueError) as exc:
        raise InputError(f"cube is not a nested integer array: {exc}") from None
    if n == 0:
        raise InputError("cube must have at least one element")
    for plane in rows:
        if len(plane) != n or any(len(row) != n for row in plane):
            raise InputError("cube is not n x n x n")
    return rows


def check_latin(cube):
    """Return ``None`` if every axis-parallel line is a permutation.

    Otherwise return a :class:`LatinViolation` for the first offending
    line, scanning the z-, y- and x-directions in that order.
    """
    cube = _as_cube(cube)
    n = len(cube)
    for x, y, z in itertools.product(range(n), repeat=3):
        v = cube[x][y][z]
        if not 0 <= v < n:
            raise InputError(f"value {v} at {(x, y, z)} is out of range 0..{n - 1}")
    lines = (
        ("z", lambda a, b, t: cube[a][b][t]),
        ("y", lambda a, b, t: cube[a][t][b]),
        ("x", lambda a, b, t: cube[t][a][b]),
    )
    for direction, get in lines:
        for a in range(n):
            for b in range(n):
                seen = set()
                for t in range(n):
                    v = get(a, b, t)
                    if v in seen:
                        return LatinViolation(direction, (a, b), v)
                    seen.add(v)
    return None


class TernaryQuasigroup:
    """A finite ternary quasigroup with eagerly built division tables.

    ``T(x, y, z)`` and ``T.apply(x, y, z)`` both give ``[xyz]``.
    Instances are immutable.
    """

    __slots__ = ("size", "table", "_left", "_middle", "_right")

    def __init__(self, cube, validate=True):
        cube = _as_cube(cube)
        if validate:
            bad = check_latin(cube)
            if bad is not None:
                raise InputError(f"not a Latin cube: {bad}")
        n = len(cube)
        self.size = n
        self.table = cube
        left = [[[0] * n for _ in range(n)] for _ in range(n)]
        middle = [[[0] * n for _ in range(n)] for _ in range(n)]
        right = [[[0] * n for _ in range(n)] for _ in range(n)]
        for x, y, z in itertools.product(range(n), repeat=3):
            w = cube[x][y][z]
            left[w][y][z] = x
            middle[x][w][z] = y
            right[x][y][w] = z
        freeze = lambda t: tuple(tuple(tuple(r) for r in p) for p in t)
        self._left = freeze(left)
        self._middle = freeze(middle)
        self._right = freeze(right)

    def __repr__(self):
        return f"TernaryQuasigroup(size={self.size})"

    def __eq__(self, other):
        return isinstance(other, TernaryQuasigroup) and self.table == other.table

    def __hash__(self):
        return hash(self.table)

    def __call__(self, x, y, z):
        return self.table[x][y][z]

    def _check(self, *elems):
        for e in elems:
            if not 0 <= e < self.size:
                raise InputError(f"element {e} out of range 0..{self.size - 1}")

    def apply(self, x, y, z):
        self._check(x, y, z)
        return self.table[x][y][z]

    def divide(self, which, a, b, c):
        """Solve ``[xyz] = w`` for one argument.

        ``divide("left", w, y, z)`` is the ``x`` with ``[xyz] = w``;
        ``divide("middle", x, w, z)`` gives ``y`` and
        ``divide("right", x, y, w)`` gives ``z``.
        """
        self._check(a, b, c)
        if which == "left":
            return self._left[a][b][c]
        if which == "middle":
            return self._middle[a][b][c]
        if which == "right":
            return self._right[a][b][c]
        raise InputError(f"unknown division {which!r}; expected one of {DIVISIONS}")

    # Unchecked accessors used by inner loops.
    @property
    def left_table(self):
        return self._left

    @property
    def middle_table(self):
        return self._middle

    @property
    def right_table(self):
        return self._right

    def to_json(self):
        return {
            "size": self.size,
            "cube": [[[v + 1 for v in row] for row in plane] for plane in self.table],
        }

    @classmethod
    def from_json(cls, data, check_axioms=False):
        try:
            n = int(data["size"])
            raw = data["cube"]
        except (KeyError, TypeError, ValueError):
            raise InputError('KTQ JSON needs "size" and "cube" fields') from None
        cube = _as_cube(raw)
        if len(cube) != n:
            raise InputError(f"declared size {n} but cube has size {len(cube)}")
        T = cls([[[v - 1 for v in row] for row in plane] for plane in cube])
        if check_axioms:
            bad = check_ktq(T)
            if bad is not None:
                raise InputError(f"not a KTQ: {bad.axiom} fails at {tuple(v + 1 for v in bad.quad)}")
        return T


def load_ktq(path, check_axioms=False):
    try:
        data = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise InputError(f"cannot read KTQ file {path}: {exc}") from None
    return TernaryQuasigroup.from_json(data, check_axioms=check_axioms)


def builtin_ktq(name):
    """The two worked examples shipped with the package: ``"five"``, ``"six"``."""
    path = Path(__file__).with_name("data") / f"{name}.json"
    if not path.exists():
        raise InputError(f"no built-in KTQ named {name!r}")
    return load_ktq(path)


def check_ktq(T):
    """Check the left and right nesting conditions on all quadruples.

    LN: ``[ab[bcd]] = [a[abc][[abc]cd]]``
    RN: ``[[abc]cd] = [[ab[bcd]][bcd]d]``

    Returns ``None`` or the first violation in lexicographic (a, b, c, d)
    order, LN tested before RN for each quadruple.
    """
    t = T.table
    r = range(T.size)
    for a, b, c, d in itertools.product(r, repeat=4):
        abc = t[a][b][c]
        bcd = t[b][c][d]
        if t[a][b][bcd] != t[a][abc][t[abc][c][d]]:
            return AxiomViolation("LN", (a, b, c, d))
        if t[abc][c][d] != t[t[a][b][bcd]][bcd][d]:
            return AxiomViolation("RN", (a, b, c, d))
    return None


def is_ktq(T):
    return check_ktq(T) is None


class GroupTable:
    """A finite group given by its Cayley table, validated on construction."""

    def __init__(self, product):
        try:
            table = tuple(tuple(int(v) for v in row) for row in product)
        except (TypeError, ValueError):
            raise InputError("group table must be a square integer array") from None
        n = len(table)
        if n == 0 or any(len(row) != n for row in table):
            raise InputError("group table must be a non-empty square array")
        if any(not 0 <= v < n for row in table for v in row):
            raise InputError("group table entry out of range")
        r = range(n)
        for a, b, c in itertools.product(r, repeat=3):
            if table[table[a][b]][c] != table[a][table[b][c]]:
                raise InputError(f"not associative at {(a, b, c)}")
        ids = [e for e in r if all(table[e][x] == x == table[x][e] for x in r)]
        if not ids:
            raise InputError("no identity element")
        e = ids[0]
        inv = []
        for x in r:
            cands = [y for y in r if table[x][y] == e == table[y][x]]
            if not cands:
                raise InputError(f"element {x} has no inverse")
            inv.append(cands[0])
        self.size = n
        self.product = table
        self.identity = e
        self.inverse = tuple(inv)

    def mul(self, *xs):
        acc = self.identity
        for x in xs:
            acc = self.product[acc][x]
        return acc

    @classmethod
    def cyclic(cls, n):
        return cls([[(a + b) % n for b in range(n)] for a in range(n)])

    @classmethod
    def direct_product(cls, g, h):
        pairs = list(itertools.product(range(g.size), range(h.size)))
        index = {p: i for i, p in enumerate(pairs)}
        return cls([[index[(g.product[a][c], h.product[b][d])] for (c, d) in pairs]
                    for (a, b) in pairs])

    @classmethod
    def symmetric(cls, n):
        perms = list(itertools.permutations(range(n)))
        index = {p: i for i, p in enumerate(perms)}
        # (p * q)(i) = p(q(i))
        return cls([[index[tuple(p[q[i]] for i in range(n))] for q in perms] for p in perms])


def from_group_dehn(G):
    """``[xyz] = x * y^-1 * z``."""
    if not isinstance(G, GroupTable):
        G = GroupTable(G)
    r = range(G.size)
    return TernaryQuasigroup([[[G.mul(x, G.inverse[y], z) for z in r] for y in r] for x in r])


def from_group_affine(G, alpha):
    """``[xyz] = y * z^-1 * alpha * x`` for a fixed element ``alpha``."""
    if not isinstance(G, GroupTable):
        G = GroupTable(G)
    if not 0 <= alpha < G.size:
        raise InputError(f"alpha={alpha} out of range")
    r = range(G.size)
    return TernaryQuasigroup(
        [[[G.mul(y, G.inverse[z], alpha, x) for z in r] for y in r] for x in r])


def relabel(T, perm):
    """Transport ``T`` along the bijection ``perm``: the result maps
    ``(perm[x], perm[y], perm[z])`` to ``perm[T(x, y, z)]``."""
    n = T.size
    inv = [0] * n
    for i, p in enumerate(perm):
        inv[p] = i
    t = T.table
    return TernaryQuasigroup(
        [[[perm[t[inv[x]][inv[y]][inv[z]]] for z in range(n)] for y in range(n)] for x in range(n)],
        validate=False)


def is_homomorphism(f, T1, T2):
    f = tuple(f)
    if len(f) != T1.size:
        raise InputError(f"map has {len(f)} values but the domain has {T1.size} elements")
    if any(not 0 <= v < T2.size for v in f):
        raise InputError("map value outside the codomain")
    t1, t2 = T1.table, T2.table
    return all(f[t1[a][b][c]] == t2[f[a]][f[b]][f[c]]
               for a, b, c in itertools.product(range(T1.size), repeat=3))


def _canonical_with_perm(T):
    n = T.size
    t = T.table
    cells = list(itertools.product(range(n), repeat=3))
    best = None
    best_perm = None
    for perm in itertools.permutations(range(n)):
        inv = [0] * n
        for i, p in enumerate(perm):
            inv[p] = i
        # Lexicographic comparison with early exit.
        cand = []
        worse = False
        better = best is None
        for pos, (x, y, z) in enumerate(cells):
            v = perm[t[inv[x]][inv[y]][inv[z]]]
            if not better:
                b = best[pos]
                if v > b:
                    worse = True
                    break
                if v < b:
                    better = True
            cand.append(v)
        if worse or not better:
            continue
        best = cand
        best_perm = perm
    cube = tuple(tuple(tuple(best[(x * n + y) * n: (x * n + y) * n + n]) for y in range(n))
                 for x in range(n))
    return cube, best_perm


def canonical_form(T):
    """The lexicographically least cube (row-major) among all relabelings."""
    return _canonical_with_perm(T)[0]


def is_isomorphic(T1, T2):
    """Return a bijection ``f`` with ``relabel(T1, f) == T2``, or ``None``."""
    if T1.size != T2.size:
        return None
    c1, p1 = _canonical_with_perm(T1)
    c2, p2 = _canonical_with_perm(T2)
    if c1 != c2:
        return None
    inv2 = [0] * T2.size
    for i, p in enumerate(p2):
        inv2[p] = i
    return tuple(inv2[p1[x]] for x in range(T1.size))
