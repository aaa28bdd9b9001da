"""JSON wire formats for matrices, operators, monomial specs and verdicts.

Matrix::

    {"field": "Q" | {"p": 7}, "rows": 2, "cols": 2, "entries": [["1/2", "3"], ...]}

Rational entries are strings ``"num/den"`` (reduced, ``den > 0``) or
integer strings; prime-field entries are integers in ``[0, p)``.
"""

from __future__ import annotations

import json
import re
from fractions import Fraction
from math import gcd

from .exact_algebra import DenseMatrix
from .fields import Rationals, field_from_spec
from .mat_operator import LinearOperator, MonomialSpec

__all__ = [
    "dumps",
    "matrix_to_json",
    "matrix_from_json",
    "operator_to_json",
    "operator_from_json",
    "spec_to_json",
    "spec_from_json",
    "verdict_to_json",
    "load_json",
]

_RATIONAL = re.compile(r"^-?\d+(/\d+)?$")


def dumps(obj) -> str:
    """The one serializer used for every file and stdout document."""
    return json.dumps(obj, indent=2, sort_keys=True) + "\n"


def load_json(path):
    with open(path) as fh:
        return json.load(fh)


def _parse_rational(s):
    if not isinstance(s, str) or not _RATIONAL.match(s):
        raise ValueError(f"rational entries must be strings 'num/den' or 'int', got {s!r}")
    if "/" in s:
        num, den = s.split("/")
        num, den = int(num), int(den)
        if den <= 0 or gcd(num, den) != 1:
            raise ValueError(f"rational {s!r} is not reduced with positive denominator")
        return Fraction(num, den)
    return Fraction(int(s))


def matrix_to_json(A: DenseMatrix):
    F = A.field
    return {
        "field": F.spec(),
        "rows": A.rows,
        "cols": A.cols,
        "entries": [[F.to_json(x) for x in row] for row in A.entries],
    }


def matrix_from_json(obj) -> DenseMatrix:
    if not isinstance(obj, dict) or not {"field", "rows", "cols", "entries"} <= set(obj):
        raise ValueError("matrix JSON needs keys field, rows, cols, entries")
    F = field_from_spec(obj["field"])
    rows, cols, entries = obj["rows"], obj["cols"], obj["entries"]
    if len(entries) != rows or any(len(r) != cols for r in entries):
        raise ValueError(f"entries do not form a {rows}x{cols} array")
    parse = _parse_rational if isinstance(F, Rationals) else F.from_json
    return DenseMatrix._raw(F, [[parse(x) for x in row] for row in entries], cols)


def operator_to_json(T: LinearOperator):
    return {"n": T.n, "matrix": matrix_to_json(T.matrix), "vec": "row-major"}


def operator_from_json(obj) -> LinearOperator:
    if obj.get("vec", "row-major") != "row-major":
        raise ValueError(f"unsupported vectorization {obj.get('vec')!r}")
    return LinearOperator(int(obj["n"]), matrix_from_json(obj["matrix"]))


def spec_to_json(spec: MonomialSpec):
    return spec.to_json()


def spec_from_json(obj, field) -> MonomialSpec:
    if isinstance(field, Rationals):
        obj = dict(obj, l=[_parse_rational(x) for x in obj["l"]], r=[_parse_rational(x) for x in obj["r"]])
        return MonomialSpec.from_json(obj, field)
    return MonomialSpec.from_json(obj, field)


def verdict_to_json(verdict, canonical=None):
    return {
        "member": verdict.member,
        "evidence": verdict.evidence_json(),
        "witness": matrix_to_json(verdict.witness) if verdict.witness is not None else None,
        "canonical": canonical,
    }
