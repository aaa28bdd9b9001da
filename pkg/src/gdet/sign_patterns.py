"""The two 4x4 sign patterns of exotic coefficient matrices at ``n = 4``.

Entries are literal symbols: ``"1"``, ``"u"``, ``"v"``, ``"uv"`` stand for
``1, eps_u, eps_v, eps_u*eps_v``.  The odd table is the even one with its
last two rows interchanged.  Every family construction reads these grids;
do not edit them without re-running the exhaustive ``n = 4`` enumeration.
"""

from __future__ import annotations

from dataclasses import dataclass
from enum import Enum

from .errors import ConstraintViolated
from .exact_algebra import DenseMatrix
from .fields import QQ, Field

__all__ = ["EquationMode", "EVEN_TABLE", "ODD_TABLE", "sign_pattern", "N4SignFamily", "n4_sign_family"]


class EquationMode(Enum):
    EVEN = "even"
    ODD = "odd"
    FULL = "full"


EVEN_TABLE = (
    ("1", "1", "1", "1"),
    ("1", "u", "v", "uv"),
    ("1", "v", "uv", "u"),
    ("1", "uv", "u", "v"),
)

ODD_TABLE = (
    ("1", "1", "1", "1"),
    ("1", "u", "v", "uv"),
    ("1", "uv", "u", "v"),
    ("1", "v", "uv", "u"),
)


def sign_pattern(eps_u: int, eps_v: int, mode: EquationMode, field: Field = QQ) -> DenseMatrix:
    if eps_u not in (1, -1) or eps_v not in (1, -1):
        raise ValueError("signs must be +1 or -1")
    table = {EquationMode.EVEN: EVEN_TABLE, EquationMode.ODD: ODD_TABLE}.get(mode)
    if table is None:
        raise ValueError(f"no sign pattern for mode {mode}")
    value = {"1": 1, "u": eps_u, "v": eps_v, "uv": eps_u * eps_v}
    return DenseMatrix([[value[s] for s in row] for row in table], field)


@dataclass(frozen=True)
class N4SignFamily:
    """Parameters of ``sign_pattern(eps_u, eps_v, mode) * (a_i1 a_1j / a_11)``.

    ``a_row = (a12, a13, a14)`` and ``a_col = (a21, a31, a41)``; the family
    requires ``a11..a14 * a11..a41 == a11**4``.
    """

    eps_u: int
    eps_v: int
    mode: EquationMode
    a11: object = 1
    a_row: tuple = (1, 1, 1)
    a_col: tuple = (1, 1, 1)
    field: Field = QQ

    @property
    def first_row(self):
        return (self.field(self.a11),) + tuple(self.field(x) for x in self.a_row)

    @property
    def first_col(self):
        return (self.field(self.a11),) + tuple(self.field(x) for x in self.a_col)

    # the u, v, z of the hand derivation: entries (2,2), (2,3), (4,1) before signs
    @property
    def u(self):
        F = self.field
        return F.div(self.eps_u * F(self.a_row[0]) * F(self.a_col[0]), self.a11)

    @property
    def v(self):
        F = self.field
        return F.div(self.eps_v * F(self.a_row[1]) * F(self.a_col[0]), self.a11)

    @property
    def z(self):
        return self.field(self.a_col[2])

    def constraint_holds(self):
        F = self.field
        lhs = F.one
        for x in self.first_row + self.first_col:
            lhs = F(lhs * x)
        return lhs == F(F(self.a11) ** 4)


def n4_sign_family(fam: N4SignFamily) -> DenseMatrix:
    """The coefficient matrix of a sign family."""
    F = fam.field
    if any(F(x) == 0 for x in fam.first_row + fam.first_col):
        raise ConstraintViolated("family parameters must be nonzero")
    if not fam.constraint_holds():
        raise ConstraintViolated("a11..a14 * a11..a41 != a11^4")
    pattern = sign_pattern(fam.eps_u, fam.eps_v, fam.mode, F)
    col, row = fam.first_col, fam.first_row
    inv11 = F.inv(fam.a11)
    return DenseMatrix._raw(
        F, [[F(pattern[i, j] * col[i] * row[j] * inv11) for j in range(4)] for i in range(4)]
    )
