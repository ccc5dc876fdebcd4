"""Chain complexes of a ternary quasigroup with truncated differentials.

A chain in degree ``n`` is a ``dict`` mapping ``(n+2)``-tuples of elements
to nonzero integer coefficients.  The ``(p, k)``-truncated differential
keeps only the face maps ``d_p, ..., d_{n-k}``; ``(0, 0)`` is the usual
differential ``d^L - d^R``.  The normalized complex is the quotient by the
tuples that carry a ``(p, k)``-degenerate window.
"""

import itertools
from collections import Counter
from dataclasses import dataclass

from .errors import CapExceeded, InputError, InvariantError
from .intlinalg import IntegerMatrix, Lattice, smith_normal_form

DEFAULT_CAP = 10 ** 7


# ----------------------------------------------------------------------
# face maps
# ----------------------------------------------------------------------

def _check_face_args(i, n, t):
    if len(t) != n + 2:
        raise InputError(f"tuple of length {len(t)} does not live in degree {n}")
    if not 0 <= i <= n:
        raise InputError(f"face index {i} outside 0..{n}")


def face_left(T, i, t):
    """``d_i^L``: drop ``x_0`` and rewrite coordinates ``1..i`` right to left,
    each becoming ``[x_{k-1} x_k y_{k+1}]``."""
    tab = T.table
    y = list(t[1:])
    for k in range(i, 0, -1):
        y[k - 1] = tab[t[k - 1]][t[k]][y[k]]
    return tuple(y)


def face_right(T, i, t):
    """``d_i^R``: drop ``x_{n+1}`` and rewrite coordinates ``i+1..n`` left
    to right, each becoming ``[y_{k-1} x_k x_{k+1}]``."""
    tab = T.table
    y = list(t[:-1])
    for k in range(i + 1, len(t) - 1):
        y[k] = tab[y[k - 1]][t[k]][t[k + 1]]
    return tuple(y)


def face(T, side, i, n, t):
    t = tuple(t)
    _check_face_args(i, n, t)
    if side == "L":
        return face_left(T, i, t)
    if side == "R":
        return face_right(T, i, t)
    raise InputError(f"side must be 'L' or 'R', not {side!r}")


def face_recursive(T, side, i, n, t):
    """The face maps by their inductive definition, without shortcuts.

    ``d_0^L`` drops the first coordinate, ``d_n^R`` the last one, and
    ``d_i^L(x) = d_{i-1}^L(x')`` resp. ``d_{i-1}^R(x) = d_i^R(x')`` where
    ``x'`` replaces ``x_i`` by ``[x_{i-1} x_i x_{i+1}]``.
    """
    t = tuple(t)
    _check_face_args(i, n, t)

    def substituted(j):
        return t[:j] + (T(t[j - 1], t[j], t[j + 1]),) + t[j + 1:]

    if side == "L":
        if i == 0:
            return t[1:]
        return face_recursive(T, "L", i - 1, n, substituted(i))
    if side == "R":
        if i == n:
            return t[:-1]
        return face_recursive(T, "R", i + 1, n, substituted(i + 1))
    raise InputError(f"side must be 'L' or 'R', not {side!r}")


# ----------------------------------------------------------------------
# degeneracy
# ----------------------------------------------------------------------

def is_degenerate(T, t, p=0, k=0):
    """True if some window ``p <= i``, ``i + 2 <= n + 1 - k`` has
    ``x_{i+1} = [x_i x_{i+1} x_{i+2}]`` (``n = len(t) - 2``).

    When ``n - p - k < 1`` nothing is degenerate.
    """
    n = len(t) - 2
    if n - p - k < 1:
        return False
    tab = T.table
    for i in range(p, n - k):
        if tab[t[i]][t[i + 1]][t[i + 2]] == t[i + 1]:
            return True
    return False


def degenerate_triple(T, a, b, c, condition="D2"):
    """The three equivalent descriptions of a degenerate window ``(a, b, c)``.

    D1: ``c`` is the right division of ``(a, b, b)``;
    D2: ``b = [abc]``;
    D3: ``a`` is the left division of ``(b, b, c)``.
    """
    if condition == "D1":
        return c == T.right_table[a][b][b]
    if condition == "D2":
        return T.table[a][b][c] == b
    if condition == "D3":
        return a == T.left_table[b][b][c]
    raise InputError(f"unknown degeneracy condition {condition!r}")


# ----------------------------------------------------------------------
# chains and boundaries
# ----------------------------------------------------------------------

@dataclass(frozen=True)
class ComplexSpec:
    T: object
    p: int = 0
    k: int = 0
    normalized: bool = True

    def __post_init__(self):
        if self.p < 0 or self.k < 0:
            raise InputError("p and k must be nonnegative")


def add_to(chain, t, coeff):
    v = chain.get(t, 0) + coeff
    if v:
        chain[t] = v
    else:
        chain.pop(t, None)


def make_chain(terms):
    """Build a chain from ``(tuple, coeff)`` pairs or a plain list of tuples."""
    out = {}
    for item in terms:
        if len(item) == 2 and isinstance(item[0], tuple):
            t, c = item
        else:
            t, c = item, 1
        add_to(out, tuple(t), c)
    return out


def chain_degree(chain):
    lengths = {len(t) for t in chain}
    if len(lengths) > 1:
        raise InputError("chain mixes tuples of different lengths")
    return lengths.pop() - 2 if lengths else None


def boundary_terms(spec, n, t, side=None):
    """Signed faces of a single tuple under the truncated differential.

    ``side`` restricts to the ``L`` or ``R`` half; by default both halves
    are combined as ``d_i^L - d_i^R``.
    """
    T = spec.T
    out = []
    for i in range(spec.p, n - spec.k + 1):
        s = -1 if i % 2 else 1
        if side in (None, "L"):
            out.append((face_left(T, i, t), s))
        if side in (None, "R"):
            out.append((face_right(T, i, t), -s if side is None else s))
    return out


def boundary(spec, n, chain, side=None):
    """Apply ``sum_{i=p}^{n-k} (-1)^i d_i`` to a degree-``n`` chain.

    With ``spec.normalized`` degenerate output tuples are dropped, i.e.
    the result is read in the quotient complex.
    """
    out = {}
    for t, c in chain.items():
        t = tuple(t)
        if len(t) != n + 2:
            raise InputError(f"tuple {t} does not live in degree {n}")
        for f, s in boundary_terms(spec, n, t, side):
            add_to(out, f, s * c)
    if spec.normalized:
        out = {t: c for t, c in out.items()
               if not is_degenerate(spec.T, t, spec.p, spec.k)}
    return out


def project(spec, chain):
    """Drop degenerate tuples (zero in the quotient) when normalized."""
    if not spec.normalized:
        return dict(chain)
    return {t: c for t, c in chain.items() if c and not is_degenerate(spec.T, t, spec.p, spec.k)}


# ----------------------------------------------------------------------
# bases, matrices, homology
# ----------------------------------------------------------------------

class Basis:
    """Lexicographically ordered chain-group basis with reverse lookup."""

    __slots__ = ("tuples", "index")

    def __init__(self, tuples):
        self.tuples = tuples
        self.index = {t: i for i, t in enumerate(tuples)}

    def __len__(self):
        return len(self.tuples)

    def __iter__(self):
        return iter(self.tuples)

    def __getitem__(self, i):
        return self.tuples[i]


@dataclass(frozen=True)
class HomologyResult:
    degree: int
    betti: int
    torsion: tuple

    def to_json(self):
        return {"degree": self.degree, "betti": self.betti, "torsion": list(self.torsion)}


class TruncatedComplex:
    """Caches bases, boundary matrices and image lattices for one spec."""

    def __init__(self, spec, cap=DEFAULT_CAP):
        self.spec = spec
        self.cap = cap
        self._bases = {}
        self._matrices = {}
        self._lattices = {}
        self._snf = {}

    def basis(self, n):
        if n not in self._bases:
            if n < -1:
                self._bases[n] = Basis([])
                return self._bases[n]
            size = self.spec.T.size ** (n + 2)
            if size > self.cap:
                raise CapExceeded(f"degree {n} needs {size} tuples, cap is {self.cap}")
            T, p, k = self.spec.T, self.spec.p, self.spec.k
            tuples = itertools.product(range(T.size), repeat=n + 2)
            if self.spec.normalized:
                tuples = [t for t in tuples if not is_degenerate(T, t, p, k)]
            else:
                tuples = list(tuples)
            self._bases[n] = Basis(tuples)
        return self._bases[n]

    def boundary_matrix(self, n):
        """Matrix of the differential from degree ``n`` to ``n - 1``."""
        if n not in self._matrices:
            src = self.basis(n)
            dst = self.basis(n - 1)
            index = dst.index
            columns = []
            for t in src:
                col = {}
                if n >= 0:
                    for f, s in boundary_terms(self.spec, n, t):
                        r = index.get(f)
                        if r is not None:           # degenerate faces vanish in the quotient
                            v = col.get(r, 0) + s
                            if v:
                                col[r] = v
                            else:
                                del col[r]
                columns.append(col)
            self._matrices[n] = IntegerMatrix(len(dst), len(src), columns)
        return self._matrices[n]

    def smith(self, n):
        if n not in self._snf:
            self._snf[n] = smith_normal_form(self.boundary_matrix(n))
        return self._snf[n]

    def homology(self, n):
        if n < 0:
            raise InputError("degree must be nonnegative")
        dim = len(self.basis(n))
        r_in = self.smith(n + 1)
        r_out = self.smith(n).rank if n >= 0 else 0
        return HomologyResult(n, dim - r_out - r_in.rank, r_in.torsion)

    def lattice(self, n):
        """Image of the differential from degree ``n + 1`` inside degree ``n``."""
        if n not in self._lattices:
            M = self.boundary_matrix(n + 1)
            self._lattices[n] = Lattice(M.rows, M.columns)
        return self._lattices[n]

    def _vector(self, n, chain):
        index = self.basis(n).index
        vec = {}
        for t, c in project(self.spec, chain).items():
            if len(t) != n + 2:
                raise InputError(f"tuple {t} does not live in degree {n}")
            vec[index[t]] = c
        return vec

    def is_cycle(self, n, chain):
        return not boundary(self.spec, n, project(self.spec, chain))

    def residue(self, n, chain, check=True):
        """Canonical coset representative of a cycle modulo boundaries.

        Returned as a sorted tuple of ``(basis tuple, coefficient)`` pairs;
        the empty tuple means the cycle is null-homologous.
        """
        if check and not self.is_cycle(n, chain):
            raise InvariantError("chain is not a cycle of the truncated complex")
        vec = self._vector(n, chain)
        res = self.lattice(n).residue(vec)
        tuples = self.basis(n).tuples
        return tuple(sorted((tuples[i], c) for i, c in res.items()))

    def classify(self, n, cycles):
        """Sizes of the homology classes among ``cycles``, ascending."""
        counts = Counter(self.residue(n, z) for z in cycles)
        return sorted(counts.values())


# Functional wrappers -------------------------------------------------

def nondegenerate_basis(spec, n, cap=DEFAULT_CAP):
    return TruncatedComplex(spec, cap).basis(n)


def boundary_matrix(spec, n, cap=DEFAULT_CAP):
    return TruncatedComplex(spec, cap).boundary_matrix(n)


def homology_group(spec, n, cap=DEFAULT_CAP):
    return TruncatedComplex(spec, cap).homology(n)


def cycle_residue(spec, n, z, cap=DEFAULT_CAP):
    return TruncatedComplex(spec, cap).residue(n, z)


def classify_cycles(spec, n, cycles, cap=DEFAULT_CAP):
    return TruncatedComplex(spec, cap).classify(n, cycles)
