"""Dense exact matrices and determinant-like polynomials evaluated on them.

Everything here is exact: matrices over ``QQ`` hold ``Fraction`` entries,
matrices over ``GF(p)`` hold residues.  Indices are 0-based throughout the
Python API.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from math import lcm, prod

from .errors import (
    CharacteristicTwo,
    IndexOutOfRange,
    NonIncreasingIndices,
    NonSquare,
    NotRankOne,
    ShapeMismatch,
    SizeCapExceeded,
    ZeroEntry,
)
from .fields import QQ, Field, Rationals, common_field
from .permutations import PermutationSpec, all_permutations

__all__ = [
    "DenseMatrix",
    "GenDetParams",
    "RowColumnShape",
    "det_exact",
    "det_naive",
    "permanent",
    "even_odd_det",
    "gen_det",
    "gen_det_naive",
    "submatrix",
    "gen_minor_matrix",
    "hadamard",
    "is_row_or_column",
    "rank1_factor",
    "rank",
    "permutation_matrix",
    "diagonal_matrix",
    "RYSER_CAP",
    "NAIVE_CAP",
]

RYSER_CAP = 20
NAIVE_CAP = 9


class DenseMatrix:
    """Immutable ``rows x cols`` matrix over an exact field.

    >>> A = DenseMatrix([[1, 2], [3, 4]])
    >>> det_exact(A)
    Fraction(-2, 1)
    """

    __slots__ = ("field", "rows", "cols", "entries")

    def __init__(self, entries, field: Field = QQ):
        data = tuple(tuple(field(x) for x in row) for row in entries)
        cols = len(data[0]) if data else 0
        if any(len(row) != cols for row in data):
            raise ShapeMismatch("ragged rows")
        self._set(field, data, len(data), cols)

    def _set(self, field, data, rows, cols):
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "entries", data)
        object.__setattr__(self, "rows", rows)
        object.__setattr__(self, "cols", cols)

    def __setattr__(self, name, value):
        raise AttributeError("DenseMatrix is immutable")

    @classmethod
    def _raw(cls, field, data, cols=None):
        """Wrap already-canonical row tuples without conversion."""
        self = object.__new__(cls)
        data = tuple(tuple(row) for row in data)
        self._set(field, data, len(data), len(data[0]) if data else (cols or 0))
        return self

    @classmethod
    def identity(cls, n, field=QQ):
        one, zero = field.one, field.zero
        return cls._raw(field, [[one if i == j else zero for j in range(n)] for i in range(n)])

    @classmethod
    def zeros(cls, rows, cols=None, field=QQ):
        cols = rows if cols is None else cols
        return cls._raw(field, [[field.zero] * cols for _ in range(rows)], cols)

    @classmethod
    def ones(cls, rows, cols=None, field=QQ):
        cols = rows if cols is None else cols
        return cls._raw(field, [[field.one] * cols for _ in range(rows)], cols)

    @classmethod
    def unit(cls, n, i, j, field=QQ):
        """The matrix unit ``E_ij``."""
        data = [[field.zero] * n for _ in range(n)]
        data[i][j] = field.one
        return cls._raw(field, data)

    @classmethod
    def from_function(cls, rows, cols, fn, field=QQ):
        return cls([[fn(i, j) for j in range(cols)] for i in range(rows)], field)

    @classmethod
    def random(cls, rows, cols, rng, field=QQ, **kw):
        return cls._raw(field, [[field.random_element(rng, **kw) for _ in range(cols)]
                                for _ in range(rows)], cols)

    @property
    def shape(self):
        return (self.rows, self.cols)

    @property
    def is_square(self):
        return self.rows == self.cols

    def __getitem__(self, ij):
        i, j = ij
        return self.entries[i][j]

    def tolist(self):
        return [list(row) for row in self.entries]

    def flat(self):
        """Row-major entry list (the ``vec`` convention)."""
        return [x for row in self.entries for x in row]

    def __eq__(self, other):
        if not isinstance(other, DenseMatrix):
            return NotImplemented
        return self.field == other.field and self.entries == other.entries and self.shape == other.shape

    def __hash__(self):
        return hash((self.field, self.entries))

    def __repr__(self):
        return f"DenseMatrix({self.tolist()!r}, field={self.field!r})"

    def is_zero(self):
        return all(x == 0 for row in self.entries for x in row)

    def transpose(self):
        return DenseMatrix._raw(self.field, zip(*self.entries), self.rows)

    T = property(transpose)

    def map(self, fn):
        F = self.field
        return DenseMatrix._raw(F, [[F(fn(x)) for x in row] for row in self.entries], self.cols)

    def scale(self, c):
        c = self.field(c)
        return self.map(lambda x: x * c)

    def __add__(self, other):
        F = common_field(self.field, other.field)
        if self.shape != other.shape:
            raise ShapeMismatch(f"{self.shape} vs {other.shape}")
        return DenseMatrix._raw(F, [[F(a + b) for a, b in zip(r, s)]
                                    for r, s in zip(self.entries, other.entries)], self.cols)

    def __sub__(self, other):
        return self + other.scale(-1)

    def __neg__(self):
        return self.scale(-1)

    def __matmul__(self, other):
        F = common_field(self.field, other.field)
        if self.cols != other.rows:
            raise ShapeMismatch(f"{self.shape} @ {other.shape}")
        other_cols = list(zip(*other.entries))
        data = []
        for row in self.entries:
            nz = [(k, a) for k, a in enumerate(row) if a != 0]
            data.append([F(sum(a * col[k] for k, a in nz)) for col in other_cols])
        return DenseMatrix._raw(F, data, other.cols)


@dataclass(frozen=True)
class GenDetParams:
    """The pair ``(alpha, beta)`` weighting even and odd permutations."""

    alpha: Fraction
    beta: Fraction

    def __post_init__(self):
        object.__setattr__(self, "alpha", QQ(self.alpha))
        object.__setattr__(self, "beta", QQ(self.beta))

    def in_field(self, field):
        return field(self.alpha), field(self.beta)

    def swapped(self):
        return GenDetParams(self.beta, self.alpha)

    def is_zero(self, field=QQ):
        a, b = self.in_field(field)
        return a == 0 and b == 0

    def degenerate(self, field=QQ):
        """``"alpha=beta"``, ``"alpha=-beta"`` or ``None``.

        Equality is judged inside ``field``, so ``(1, p-1)`` is degenerate
        over ``GF(p)``.
        """
        a, b = self.in_field(field)
        if a == b:
            return "alpha=beta"
        if field(a + b) == 0:
            return "alpha=-beta"
        return None


DET = GenDetParams(1, -1)
PERM = GenDetParams(1, 1)
EVEN = GenDetParams(1, 0)
ODD = GenDetParams(0, 1)


def _require_square(A):
    if not A.is_square:
        raise NonSquare(f"expected a square matrix, got {A.rows}x{A.cols}")


def _clear_row_denominators(A):
    """Integer rows ``d_i * row_i`` and the product of the ``d_i`` (QQ only)."""
    rows, scale = [], 1
    for row in A.entries:
        d = lcm(*(x.denominator for x in row)) if row else 1
        rows.append([x.numerator * (d // x.denominator) for x in row])
        scale *= d
    return rows, scale


def _bareiss(m):
    """Fraction-free elimination on an integer matrix (copied in place)."""
    n = len(m)
    sign, prev = 1, 1
    for k in range(n - 1):
        if m[k][k] == 0:
            for i in range(k + 1, n):
                if m[i][k] != 0:
                    m[k], m[i] = m[i], m[k]
                    sign = -sign
                    break
            else:
                return 0
        pivot = m[k][k]
        row_k = m[k]
        for i in range(k + 1, n):
            row_i = m[i]
            f = row_i[k]
            for j in range(k + 1, n):
                row_i[j] = (row_i[j] * pivot - f * row_k[j]) // prev
        prev = pivot
    return sign * m[n - 1][n - 1]


def _det_mod_p(rows, p):
    m = [list(r) for r in rows]
    n = len(m)
    det = 1
    for k in range(n):
        piv = next((i for i in range(k, n) if m[i][k] % p), None)
        if piv is None:
            return 0
        if piv != k:
            m[k], m[piv] = m[piv], m[k]
            det = -det
        pivot = m[k][k]
        det = det * pivot % p
        inv = pow(pivot, -1, p)
        row_k = m[k]
        for i in range(k + 1, n):
            f = m[i][k]
            if f:
                f = f * inv % p
                row_i = m[i]
                for j in range(k + 1, n):
                    row_i[j] = (row_i[j] - f * row_k[j]) % p
    return det % p


def det_exact(A: DenseMatrix):
    """Determinant; Bareiss over ``QQ``, Gaussian elimination over ``GF(p)``."""
    _require_square(A)
    F = A.field
    if A.rows == 0:
        return F.one
    if isinstance(F, Rationals):
        rows, scale = _clear_row_denominators(A)
        return Fraction(_bareiss(rows), scale)
    return _det_mod_p(A.entries, F.p)


def _check_naive_cap(n, cap):
    if n > cap:
        raise SizeCapExceeded(f"n={n} exceeds the naive permutation-sum cap {cap}")


def det_naive(A: DenseMatrix, cap=NAIVE_CAP):
    """Signed sum over all ``n!`` permutations (test oracle)."""
    _require_square(A)
    _check_naive_cap(A.rows, cap)
    rows = A.entries
    total = sum(s * prod(row[w_i] for row, w_i in zip(rows, w)) for w, s in all_permutations(A.rows))
    return A.field(total)


def _ryser_int(rows):
    """Ryser's formula with Gray-code column updates over Python ints."""
    n = len(rows)
    if n == 0:
        return 1
    cols = [tuple(r[j] for r in rows) for j in range(n)]
    rowsums = [0] * n
    total = 0
    gray = 0
    for k in range(1, 1 << n):
        bit = (k & -k).bit_length() - 1
        gray ^= 1 << bit
        col = cols[bit]
        if gray >> bit & 1:
            rowsums = [s + c for s, c in zip(rowsums, col)]
        else:
            rowsums = [s - c for s, c in zip(rowsums, col)]
        term = prod(rowsums)
        # (-1)^{|S|} with |S| = popcount(gray)
        if gray.bit_count() & 1:
            total -= term
        else:
            total += term
    return total if n % 2 == 0 else -total


def permanent(A: DenseMatrix, method="ryser", cap=None):
    """Permanent by Ryser (``O(2^n n)``) or by the naive ``n!`` sum."""
    _require_square(A)
    F = A.field
    n = A.rows
    if method == "naive":
        _check_naive_cap(n, NAIVE_CAP if cap is None else cap)
        rows = A.entries
        return F(sum(prod(row[w_i] for row, w_i in zip(rows, w)) for w, _ in all_permutations(n)))
    if method != "ryser":
        raise ValueError(f"unknown method {method!r}")
    cap = RYSER_CAP if cap is None else cap
    if n > cap:
        raise SizeCapExceeded(f"n={n} exceeds the Ryser cap {cap}")
    if isinstance(F, Rationals):
        rows, scale = _clear_row_denominators(A)
        return Fraction(_ryser_int(rows), scale)
    return F(_ryser_int(A.entries))


def _even_odd_naive_rows(rows):
    even = odd = 0
    for w, s in all_permutations(len(rows)):
        t = prod(row[w_i] for row, w_i in zip(rows, w))
        if s == 1:
            even += t
        else:
            odd += t
    return even, odd


def even_odd_det(A: DenseMatrix, method="split"):
    """``(even determinant, odd determinant)`` of a square matrix.

    ``split`` recovers both from ``det`` and ``perm`` as ``((q+d)/2, (q-d)/2)``;
    ``naive`` sums over permutations by parity.
    """
    _require_square(A)
    F = A.field
    if method == "naive":
        _check_naive_cap(A.rows, NAIVE_CAP)
        e, o = _even_odd_naive_rows(A.entries)
        return F(e), F(o)
    if method != "split":
        raise ValueError(f"unknown method {method!r}")
    if F.characteristic == 2:
        raise CharacteristicTwo("split method divides by 2")
    d = det_exact(A)
    q = permanent(A)
    return F.half(q + d), F.half(q - d)


def gen_det(params: GenDetParams, A: DenseMatrix, method=None):
    """``alpha * even + beta * odd``."""
    _require_square(A)
    F = A.field
    a, b = params.in_field(F)
    if method is None:
        method = "naive" if A.rows <= 4 else "split"
    e, o = even_odd_det(A, method)
    return F(a * e + b * o)


def gen_det_naive(params: GenDetParams, A: DenseMatrix):
    return gen_det(params, A, method="naive")


def _check_indices(idx, bound, what):
    for k in idx:
        if not 0 <= k < bound:
            raise IndexOutOfRange(f"{what} index {k} outside [0, {bound})")
    if any(b <= a for a, b in zip(idx, idx[1:])):
        raise NonIncreasingIndices(f"{what} indices {list(idx)} are not strictly increasing")


def submatrix(A: DenseMatrix, rows, cols):
    """``(a[rows[i], cols[j]])``; both index lists strictly increasing."""
    rows, cols = tuple(rows), tuple(cols)
    _check_indices(rows, A.rows, "row")
    _check_indices(cols, A.cols, "column")
    if len(rows) != len(cols):
        raise ShapeMismatch("row and column index lists differ in length")
    e = A.entries
    return DenseMatrix._raw(A.field, [[e[k][l] for l in cols] for k in rows], len(cols))


def gen_minor_matrix(params: GenDetParams, A: DenseMatrix, r: int):
    """Matrix of generalized ``r``-minors.

    Rows and columns are indexed by ``r``-subsets of ``range(n)`` in
    lexicographic order of the increasing index tuples.
    """
    _require_square(A)
    n = A.rows
    if not 1 <= r <= n:
        raise IndexOutOfRange(f"minor size {r} outside [1, {n}]")
    F = A.field
    a, b = params.in_field(F)
    subsets = list(combinations(range(n), r))
    e = A.entries
    if r == 2:
        return DenseMatrix._raw(F, [
            [F(a * e[k1][l1] * e[k2][l2] + b * e[k1][l2] * e[k2][l1]) for l1, l2 in subsets]
            for k1, k2 in subsets
        ])
    out = []
    for ks in subsets:
        picked = [e[k] for k in ks]
        row_out = []
        for ls in subsets:
            sub = [[row[l] for l in ls] for row in picked]
            if r <= 4:
                ev, od = _even_odd_naive_rows(sub)
            else:
                ev, od = even_odd_det(DenseMatrix._raw(F, sub))
            row_out.append(F(a * ev + b * od))
        out.append(row_out)
    return DenseMatrix._raw(F, out)


def hadamard(A: DenseMatrix, B: DenseMatrix):
    """Entrywise product ``A * B``."""
    F = common_field(A.field, B.field)
    if A.shape != B.shape:
        raise ShapeMismatch(f"{A.shape} vs {B.shape}")
    return DenseMatrix._raw(F, [[F(x * y) for x, y in zip(r, s)]
                                for r, s in zip(A.entries, B.entries)], A.cols)


@dataclass(frozen=True)
class RowColumnShape:
    """Support shape: ``kind`` is ``zero``, ``row``, ``column`` or ``neither``."""

    kind: str
    index: int | None = None


def is_row_or_column(A: DenseMatrix) -> RowColumnShape:
    """Classify where the nonzero entries of ``A`` live.

    A single nonzero entry is reported as a row matrix.
    """
    support = [(i, j) for i, row in enumerate(A.entries) for j, x in enumerate(row) if x != 0]
    if not support:
        return RowColumnShape("zero")
    rows = {i for i, _ in support}
    if len(rows) == 1:
        return RowColumnShape("row", support[0][0])
    cols = {j for _, j in support}
    if len(cols) == 1:
        return RowColumnShape("column", support[0][1])
    return RowColumnShape("neither")


def rank1_factor(C: DenseMatrix):
    """Factor a full-support rank-1 matrix as ``c_ij = l_i * r_j`` with ``l_0 = 1``."""
    F = C.field
    e = C.entries
    for i, row in enumerate(e):
        for j, x in enumerate(row):
            if x == 0:
                raise ZeroEntry(f"entry ({i}, {j}) is zero")
    c00 = e[0][0]
    # with full support, all 2x2 minors vanish iff those through (0, 0) do
    for i in range(1, C.rows):
        for j in range(1, C.cols):
            if F(e[i][j] * c00 - e[i][0] * e[0][j]) != 0:
                raise NotRankOne(f"2x2 minor on rows (0, {i}), columns (0, {j}) is nonzero")
    inv00 = F.inv(c00)
    l = tuple(F(e[i][0] * inv00) for i in range(C.rows))
    r = tuple(e[0])
    return l, r


def rank(A: DenseMatrix) -> int:
    F = A.field
    m = [list(row) for row in A.entries]
    rk = 0
    for c in range(A.cols):
        piv = next((i for i in range(rk, A.rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[rk], m[piv] = m[piv], m[rk]
        inv = F.inv(m[rk][c])
        for i in range(rk + 1, A.rows):
            f = m[i][c]
            if f != 0:
                f = F(f * inv)
                m[i] = [F(x - f * y) for x, y in zip(m[i], m[rk])]
        rk += 1
    return rk


def permutation_matrix(sigma: PermutationSpec, field=QQ):
    """``P = (delta_{i, sigma(j)})``: column ``j`` has its 1 in row ``sigma(j)``."""
    n = sigma.n
    data = [[field.zero] * n for _ in range(n)]
    for j in range(n):
        data[sigma(j)][j] = field.one
    return DenseMatrix._raw(field, data)


def diagonal_matrix(values, field=QQ):
    n = len(values)
    data = [[field.zero] * n for _ in range(n)]
    for i, v in enumerate(values):
        data[i][i] = field(v)
    return DenseMatrix._raw(field, data)
