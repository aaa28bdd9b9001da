"""Sparse polynomials in the ``n**2`` matrix variables ``x_ij``.

Variable ``x_ij`` (0-based) has id ``i*n + j``.  A monomial is a tuple of
``(var, exponent)`` pairs with strictly increasing ``var`` and positive
exponents; a polynomial maps monomials to nonzero field elements, so two
polynomials are equal exactly when their term dicts are.
"""

from __future__ import annotations

import os
from collections import defaultdict
from functools import lru_cache
from math import factorial

from .errors import (
    BadPermutation,
    ExpansionCapExceeded,
    FieldMismatch,
    SizeCapExceeded,
    SizeMismatch,
)
from .exact_algebra import DenseMatrix, GenDetParams
from .fields import QQ, Rationals
from .permutations import PermutationSpec, all_permutations

__all__ = [
    "SparseMVPoly",
    "var_id",
    "var_pair",
    "term_cap",
    "build_gen_det_poly",
    "substitute_linear",
    "partial_derivative",
    "evaluate",
    "minor_by_derivatives",
    "closed_form_minor",
    "poly_to_text",
    "POLY_CAP",
]

POLY_CAP = 7
DEFAULT_TERM_CAP = 10**7


def term_cap():
    """Expansion cap, overridable with ``GDET_TERM_CAP``."""
    return int(os.environ.get("GDET_TERM_CAP", DEFAULT_TERM_CAP))


def var_id(i, j, n):
    return i * n + j


def var_pair(v, n):
    return divmod(v, n)


def _mono_from_vars(vars_):
    """Monomial from an iterable of variable ids (repeats allowed)."""
    counts = defaultdict(int)
    for v in vars_:
        counts[v] += 1
    return tuple(sorted(counts.items()))


class SparseMVPoly:
    """Immutable polynomial over ``field`` in the variables of ``Mat_n``."""

    __slots__ = ("n", "field", "terms")

    def __init__(self, n, terms=None, field=QQ):
        clean = {}
        for mono, c in (terms or {}).items():
            c = field(c)
            if c != 0:
                clean[tuple(mono)] = c
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", clean)

    @classmethod
    def _raw(cls, n, terms, field):
        self = object.__new__(cls)
        object.__setattr__(self, "n", n)
        object.__setattr__(self, "field", field)
        object.__setattr__(self, "terms", terms)
        return self

    def __setattr__(self, name, value):
        raise AttributeError("SparseMVPoly is immutable")

    @classmethod
    def zero(cls, n, field=QQ):
        return cls._raw(n, {}, field)

    @classmethod
    def constant(cls, n, c, field=QQ):
        return cls(n, {(): c}, field)

    @classmethod
    def variable(cls, n, i, j, field=QQ):
        return cls._raw(n, {((var_id(i, j, n), 1),): field.one}, field)

    def __len__(self):
        return len(self.terms)

    def is_zero(self):
        return not self.terms

    def degree(self):
        return max((sum(e for _, e in m) for m in self.terms), default=-1)

    def variables(self):
        return sorted({v for m in self.terms for v, _ in m})

    def __eq__(self, other):
        if not isinstance(other, SparseMVPoly):
            return NotImplemented
        return self.n == other.n and self.field == other.field and self.terms == other.terms

    def __repr__(self):
        return f"SparseMVPoly(n={self.n}, {poly_to_text(self)!r}, field={self.field!r})"

    def _check(self, other):
        if self.n != other.n:
            raise SizeMismatch(f"n={self.n} vs n={other.n}")
        if self.field != other.field:
            raise FieldMismatch(f"{self.field!r} vs {other.field!r}")

    def __add__(self, other):
        self._check(other)
        F = self.field
        out = dict(self.terms)
        for m, c in other.terms.items():
            s = F(out.get(m, 0) + c)
            if s:
                out[m] = s
            else:
                out.pop(m, None)
        return SparseMVPoly._raw(self.n, out, F)

    def scale(self, c):
        F = self.field
        c = F(c)
        if c == 0:
            return SparseMVPoly.zero(self.n, F)
        return SparseMVPoly._raw(self.n, {m: F(a * c) for m, a in self.terms.items()}, F)

    def __neg__(self):
        return self.scale(-1)

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        self._check(other)
        F = self.field
        acc = defaultdict(int)
        for m1, c1 in self.terms.items():
            for m2, c2 in other.terms.items():
                acc[_mono_mul(m1, m2)] += c1 * c2
        return SparseMVPoly(self.n, acc, F)


def _mono_mul(m1, m2):
    d = dict(m1)
    for v, e in m2:
        d[v] = d.get(v, 0) + e
    return tuple(sorted(d.items()))


@lru_cache(maxsize=64)
def build_gen_det_poly(n, params: GenDetParams, field=QQ, cap=POLY_CAP):
    """The polynomial ``alpha * sum_{even w} x_{i w(i)} + beta * sum_{odd w} ...``."""
    if not 1 <= n <= cap:
        raise SizeCapExceeded(f"n={n} outside [1, {cap}] for symbolic construction")
    a, b = params.in_field(field)
    terms = {}
    for w, s in all_permutations(n):
        c = a if s == 1 else b
        if c:
            terms[tuple((i * n + wi, 1) for i, wi in enumerate(w))] = c
    # all-diagonal monomials (i, w(i)) are already sorted by var id
    return SparseMVPoly._raw(n, terms, field)


def substitute_linear(f: SparseMVPoly, T, cap=None) -> SparseMVPoly:
    """``X -> f(T(X))``.

    Each ``x_st`` is replaced by the linear form in row ``(s, t)`` of the
    operator matrix; the result is fully expanded and canonical.
    """
    if f.n != T.n:
        raise SizeMismatch(f"polynomial n={f.n} vs operator n={T.n}")
    if f.field != T.field:
        raise FieldMismatch(f"{f.field!r} vs {T.field!r}")
    cap = term_cap() if cap is None else cap
    F = f.field
    rows = T.matrix.entries
    forms = {}
    for v in f.variables():
        forms[v] = [(q, a) for q, a in enumerate(rows[v]) if a != 0]
    acc = defaultdict(int)
    produced = 0
    for mono, coeff in f.terms.items():
        partial = {(): coeff}
        for v, e in mono:
            form = forms[v]
            for _ in range(e):
                nxt = defaultdict(int)
                for pm, pc in partial.items():
                    for q, a in form:
                        nxt[tuple(sorted(pm + (q,)))] += pc * a
                produced += len(partial) * len(form)
                if produced > cap:
                    raise ExpansionCapExceeded(f"more than {cap} intermediate terms")
                partial = nxt
        for pm, pc in partial.items():
            acc[pm] += pc
    out = {}
    for vars_, c in acc.items():
        c = F(c)
        if c:
            out[_mono_from_vars(vars_)] = c
    return SparseMVPoly._raw(f.n, out, F)


def partial_derivative(f: SparseMVPoly, v: int) -> SparseMVPoly:
    F = f.field
    acc = defaultdict(int)
    for mono, c in f.terms.items():
        for k, (u, e) in enumerate(mono):
            if u == v:
                rest = mono[:k] + (((u, e - 1),) if e > 1 else ()) + mono[k + 1:]
                acc[rest] += c * e
                break
    return SparseMVPoly(f.n, acc, F)


def evaluate(f: SparseMVPoly, A: DenseMatrix):
    """Substitute ``a_ij`` for ``x_ij``."""
    if A.shape != (f.n, f.n):
        raise SizeMismatch(f"need a {f.n}x{f.n} matrix, got {A.rows}x{A.cols}")
    if A.field != f.field:
        raise FieldMismatch(f"{f.field!r} vs {A.field!r}")
    vals = A.flat()
    total = 0
    for mono, c in f.terms.items():
        t = c
        for v, e in mono:
            t *= vals[v] ** e
        total += t
    return f.field(total)


def closed_form_minor(n, params: GenDetParams, k1, k2, l1, l2, field=QQ):
    """``alpha * x_{k1 l1} x_{k2 l2} + beta * x_{k1 l2} x_{k2 l1}``."""
    a, b = params.in_field(field)
    acc = defaultdict(int)
    acc[_mono_from_vars((var_id(k1, l1, n), var_id(k2, l2, n)))] += a
    acc[_mono_from_vars((var_id(k1, l2, n), var_id(k2, l1, n)))] += b
    return SparseMVPoly(n, acc, field)


def minor_by_derivatives(n, params: GenDetParams, k1, k2, l1, l2, sigma: PermutationSpec,
                         field=QQ) -> SparseMVPoly:
    """Differentiate the generalized determinant along ``sigma`` off rows ``k1, k2``.

    ``sigma`` must be even and send ``{k1, k2}`` onto ``{l1, l2}``.  With
    ``sigma(k1) = l1`` the result is the ``(alpha, beta)`` 2x2 minor on rows
    ``k1, k2`` and columns ``l1, l2``; with the targets swapped it is the
    ``(beta, alpha)`` one.
    """
    if n < 4:
        raise ValueError("need n >= 4 for an even permutation with prescribed two values")
    if k1 == k2 or l1 == l2:
        raise ValueError("k1, k2 and l1, l2 must be distinct")
    if sigma.n != n or not sigma.is_even:
        raise BadPermutation("sigma must be an even permutation of size n")
    if {sigma(k1), sigma(k2)} != {l1, l2}:
        raise BadPermutation(f"sigma maps ({k1}, {k2}) to ({sigma(k1)}, {sigma(k2)}), not onto {{{l1}, {l2}}}")
    g = build_gen_det_poly(n, params, field)
    for i in range(n):
        if i not in (k1, k2):
            g = partial_derivative(g, var_id(i, sigma(i), n))
    return g


def _coeff_text(c, field):
    if isinstance(field, Rationals):
        return str(c) if c.denominator == 1 else f"{c.numerator}/{c.denominator}"
    return str(c)


def poly_to_text(f: SparseMVPoly) -> str:
    """``"2*x[1,1]*x[2,2] - x[1,2]*x[2,1]"``; 1-based indices, canonical term order."""
    if not f.terms:
        return "0"
    n = f.n
    parts = []
    for mono in sorted(f.terms):
        c = f.terms[mono]
        neg = isinstance(f.field, Rationals) and c < 0
        mag = -c if neg else c
        factors = []
        for v, e in mono:
            i, j = var_pair(v, n)
            factors.append(f"x[{i + 1},{j + 1}]" + (f"^{e}" if e > 1 else ""))
        if not factors:
            body = _coeff_text(mag, f.field)
        elif mag == 1:
            body = "*".join(factors)
        else:
            body = _coeff_text(mag, f.field) + "*" + "*".join(factors)
        if not parts:
            parts.append(("-" if neg else "") + body)
        else:
            parts.append((" - " if neg else " + ") + body)
    return "".join(parts)


def expected_term_count(n, params: GenDetParams, field=QQ):
    a, b = params.in_field(field)
    half = factorial(n) // 2 if n > 1 else 1
    if n == 1:
        return 1 if a else 0
    return (half if a else 0) + (half if b else 0)
