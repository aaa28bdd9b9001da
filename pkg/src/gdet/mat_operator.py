"""Invertible linear operators on ``Mat_n(K)``.

An operator is stored as its ``n^2 x n^2`` matrix ``m`` with
``vec(T(X)) = m @ vec(X)`` and ``vec`` row-major: entry ``(i, j)`` sits at
position ``i*n + j``.
"""

from __future__ import annotations

from dataclasses import dataclass, field as dc_field

from .errors import FieldMismatch, Singular, SizeMismatch, ZeroDiagonal
from .exact_algebra import DenseMatrix, det_exact
from .fields import QQ, Field
from .permutations import PermutationSpec

__all__ = [
    "LinearOperator",
    "MonomialSpec",
    "UnitImageGrid",
    "from_monomial",
    "apply",
    "inverse",
    "compose",
    "unit_images",
    "identity_operator",
    "hadamard_operator",
]


class LinearOperator:
    """An element of ``GL(Mat_n(K))``; invertibility is checked on construction."""

    __slots__ = ("n", "matrix")

    def __init__(self, n: int, matrix: DenseMatrix):
        if matrix.shape != (n * n, n * n):
            raise SizeMismatch(f"operator on Mat_{n} needs a {n * n}x{n * n} matrix, got {matrix.shape}")
        if det_exact(matrix) == 0:
            raise Singular("operator matrix is singular")
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "matrix", matrix)

    def __setattr__(self, name, value):
        raise AttributeError("LinearOperator is immutable")

    @property
    def field(self) -> Field:
        return self.matrix.field

    def __call__(self, A):
        return apply(self, A)

    def __eq__(self, other):
        if not isinstance(other, LinearOperator):
            return NotImplemented
        return self.n == other.n and self.matrix == other.matrix

    def __hash__(self):
        return hash(self.matrix)

    def __repr__(self):
        return f"LinearOperator(n={self.n}, field={self.field!r})"


def identity_operator(n, field=QQ):
    return LinearOperator(n, DenseMatrix.identity(n * n, field))


@dataclass(frozen=True)
class MonomialSpec:
    """Data of ``X -> L P X Q R`` (or ``L P X^t Q R``).

    ``P = (delta_{i, sigma(j)})``, ``Q = (delta_{i, tau(j)})``,
    ``L = diag(l)``, ``R = diag(r)``.
    """

    transpose: bool
    sigma: PermutationSpec
    tau: PermutationSpec
    l: tuple
    r: tuple
    field: Field = QQ

    def __post_init__(self):
        F = self.field
        object.__setattr__(self, "l", tuple(F(x) for x in self.l))
        object.__setattr__(self, "r", tuple(F(x) for x in self.r))
        n = self.sigma.n
        if self.tau.n != n or len(self.l) != n or len(self.r) != n:
            raise SizeMismatch("sigma, tau, l, r must all have length n")

    @property
    def n(self):
        return self.sigma.n

    @property
    def parity(self):
        """``sgn(sigma) * sgn(tau)``."""
        return self.sigma.parity * self.tau.parity

    def scale_product(self):
        """``l_1 ... l_n r_1 ... r_n``."""
        p = self.field.one
        for x in self.l + self.r:
            p = self.field(p * x)
        return p

    def coefficient_matrix(self):
        """``C = (l_i r_j)`` so that ``T(X) = C * P X Q`` (or with ``X^t``)."""
        F = self.field
        return DenseMatrix._raw(F, [[F(li * rj) for rj in self.r] for li in self.l])

    def inverse(self):
        """The spec of the inverse operator."""
        F = self.field
        n = self.n
        # T(X)_{ij} = l_i r_j X_{sigma^-1(i), tau(j)} (direct case)
        si, ti = self.sigma.inverse(), self.tau.inverse()
        if not self.transpose:
            l_new = tuple(F.inv(self.l[self.sigma(a)]) for a in range(n))
            r_new = tuple(F.inv(self.r[ti(b)]) for b in range(n))
            return MonomialSpec(False, si, ti, l_new, r_new, F)
        # T(X)_{ij} = l_i r_j X_{tau(j), sigma^-1(i)}; the inverse is again transposed
        l_new = tuple(F.inv(self.r[ti(a)]) for a in range(n))
        r_new = tuple(F.inv(self.l[self.sigma(b)]) for b in range(n))
        return MonomialSpec(True, self.tau, self.sigma, l_new, r_new, F)

    def to_json(self):
        F = self.field
        return {
            "transpose": self.transpose,
            "sigma": self.sigma.to_json(),
            "tau": self.tau.to_json(),
            "l": [F.to_json(x) for x in self.l],
            "r": [F.to_json(x) for x in self.r],
        }

    @classmethod
    def from_json(cls, obj, field=QQ):
        return cls(
            bool(obj["transpose"]),
            PermutationSpec.from_json(obj["sigma"]),
            PermutationSpec.from_json(obj["tau"]),
            tuple(field.from_json(x) for x in obj["l"]),
            tuple(field.from_json(x) for x in obj["r"]),
            field,
        )


def monomial_target(spec: MonomialSpec, a, b):
    """Position and coefficient of ``T(E_ab)`` for a monomial operator."""
    F = spec.field
    if not spec.transpose:
        i, j = spec.sigma(a), spec.tau.inverse()(b)
    else:
        i, j = spec.sigma(b), spec.tau.inverse()(a)
    return i, j, F(spec.l[i] * spec.r[j])


def from_monomial(spec: MonomialSpec) -> LinearOperator:
    """Operator ``X -> L P X Q R`` (``X^t`` in place of ``X`` when transposed)."""
    if any(x == 0 for x in spec.l + spec.r):
        raise ZeroDiagonal("diagonal scalings must be nonzero")
    F = spec.field
    n = spec.n
    N = n * n
    data = [[F.zero] * N for _ in range(N)]
    tinv = spec.tau.inverse()
    for a in range(n):
        for b in range(n):
            if not spec.transpose:
                i, j = spec.sigma(a), tinv(b)
            else:
                i, j = spec.sigma(b), tinv(a)
            data[i * n + j][a * n + b] = F(spec.l[i] * spec.r[j])
    return LinearOperator(n, DenseMatrix._raw(F, data))


def hadamard_operator(C: DenseMatrix) -> LinearOperator:
    """``X -> C * X`` (entrywise), a diagonal operator."""
    n = C.rows
    F = C.field
    N = n * n
    data = [[F.zero] * N for _ in range(N)]
    for k, c in enumerate(C.flat()):
        data[k][k] = c
    return LinearOperator(n, DenseMatrix._raw(F, data))


def apply(T: LinearOperator, A: DenseMatrix) -> DenseMatrix:
    """``unvec(m @ vec(A))``."""
    n = T.n
    if A.shape != (n, n):
        raise SizeMismatch(f"operator on Mat_{n} applied to a {A.rows}x{A.cols} matrix")
    if A.field != T.field:
        raise FieldMismatch(f"{T.field!r} vs {A.field!r}")
    F = T.field
    x = A.flat()
    nz = [(k, a) for k, a in enumerate(x) if a != 0]
    y = [F(sum(row[k] * a for k, a in nz)) for row in T.matrix.entries]
    return DenseMatrix._raw(F, [y[i * n:(i + 1) * n] for i in range(n)])


def _invert_matrix(M: DenseMatrix) -> DenseMatrix:
    F = M.field
    N = M.rows
    aug = [list(row) + [F.one if i == j else F.zero for j in range(N)] for i, row in enumerate(M.entries)]
    for c in range(N):
        piv = next((i for i in range(c, N) if aug[i][c] != 0), None)
        if piv is None:
            raise Singular("matrix is singular")
        aug[c], aug[piv] = aug[piv], aug[c]
        inv = F.inv(aug[c][c])
        aug[c] = [F(x * inv) for x in aug[c]]
        pivot_row = aug[c]
        nz = [(k, x) for k, x in enumerate(pivot_row) if x != 0]
        for i in range(N):
            f = aug[i][c]
            if i != c and f != 0:
                row = aug[i]
                for k, x in nz:
                    row[k] = F(row[k] - f * x)
    return DenseMatrix._raw(F, [row[N:] for row in aug])


def inverse(T: LinearOperator) -> LinearOperator:
    """Inverse operator; its matrix entries are the coefficients expressing ``X`` in ``T(X)``."""
    return LinearOperator(T.n, _invert_matrix(T.matrix))


def compose(T1: LinearOperator, T2: LinearOperator) -> LinearOperator:
    """``X -> T1(T2(X))``."""
    if T1.n != T2.n:
        raise SizeMismatch(f"n={T1.n} vs n={T2.n}")
    return LinearOperator(T1.n, T1.matrix @ T2.matrix)


@dataclass(frozen=True)
class UnitImageGrid:
    """Images ``F_ij = T(E_ij)`` and, when all are monomial, their positions.

    If monomial, ``T(E_ij) = coeff[i][j] * E_{mu[i][j], lam[i][j]}``.
    Otherwise ``witness = (i, j, nonzero_count)`` names the first offending
    unit matrix in row-major order.
    """

    n: int
    images: tuple
    monomial: bool
    mu: tuple | None = None
    lam: tuple | None = None
    coeff: tuple | None = None
    injective: bool | None = None
    witness: tuple | None = dc_field(default=None)


def unit_images(T: LinearOperator) -> UnitImageGrid:
    n = T.n
    F = T.field
    cols = list(zip(*T.matrix.entries))
    images = []
    witness = None
    positions = {}
    for a in range(n):
        row_imgs = []
        for b in range(n):
            col = cols[a * n + b]
            row_imgs.append(DenseMatrix._raw(F, [col[i * n:(i + 1) * n] for i in range(n)]))
            nz = [(k, x) for k, x in enumerate(col) if x != 0]
            if len(nz) == 1:
                positions[a, b] = nz[0]
            elif witness is None:
                witness = (a, b, len(nz))
        images.append(tuple(row_imgs))
    images = tuple(images)
    if witness is not None:
        return UnitImageGrid(n, images, False, witness=witness)
    mu = tuple(tuple(positions[a, b][0] // n for b in range(n)) for a in range(n))
    lam = tuple(tuple(positions[a, b][0] % n for b in range(n)) for a in range(n))
    coeff = tuple(tuple(positions[a, b][1] for b in range(n)) for a in range(n))
    injective = len({positions[k][0] for k in positions}) == n * n
    return UnitImageGrid(n, images, True, mu, lam, coeff, injective)
