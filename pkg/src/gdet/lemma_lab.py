"""Desk-scale machine checks of the structural lemmas.

Every check returns a :class:`LabReport`.  A report passes only when it has
no violations *and* checked at least one case, so a lemma never passes
vacuously.  Results over ``GF(p)`` are experimental evidence for the
characteristic-0 statements, not proofs.
"""

from __future__ import annotations

import random
import time
from dataclasses import dataclass, field as dc_field
from itertools import combinations, permutations, product

from .errors import ConstraintViolated, SizeCapExceeded, UnclassifiedSolution
from .exact_algebra import DenseMatrix, GenDetParams, gen_minor_matrix, is_row_or_column
from .fields import QQ, GF
from .mat_operator import hadamard_operator
from .permutations import PermutationSpec
from .sign_patterns import EquationMode, N4SignFamily, n4_sign_family
from .stab_engine import (
    RankOneFamily,
    classify_solution,
    membership_symbolic,
    product_equations_check,
)
from .sym_poly import closed_form_minor, minor_by_derivatives, poly_to_text

__all__ = [
    "LabReport",
    "N4SignFamily",
    "SignEnumeration",
    "n4_sign_family",
    "enumerate_n4_sign_solutions",
    "verify_rank1_lemma",
    "verify_derivative_identity",
    "n4_exotic_stabilizer_demo",
    "EXHAUSTIVE_CAP",
]

EXHAUSTIVE_CAP = 2_000_000
DEFAULT_GENERIC_PARAMS = (GenDetParams(1, 2), GenDetParams(2, 5), GenDetParams(3, -1))


@dataclass
class LabReport:
    lemma: str
    space: str
    checked: int = 0
    hypothesis_hits: int = 0
    violations: list = dc_field(default_factory=list)
    ms: int = 0
    details: dict = dc_field(default_factory=dict)

    @property
    def passed(self):
        return self.checked > 0 and not self.violations

    def to_json(self):
        return {
            "lemma": self.lemma,
            "space": self.space,
            "checked": self.checked,
            "hypothesis_hits": self.hypothesis_hits,
            "violations": self.violations,
            "ms": self.ms,
            "passed": self.passed,
            "details": self.details,
        }

    def summary(self):
        status = "PASS" if self.passed else "FAIL"
        return (f"{status} {self.lemma}: {self.space}; checked {self.checked}, "
                f"hypothesis hits {self.hypothesis_hits}, violations {len(self.violations)}")


class _Timer:
    def __enter__(self):
        self.t0 = time.perf_counter()
        return self

    def __exit__(self, *exc):
        self.ms = int((time.perf_counter() - self.t0) * 1000)


# --- n = 4 sign solutions ---------------------------------------------------

def _pm_matrix(code):
    """Row-major encoding: bit ``4*i + j`` set means entry ``(i, j)`` is -1."""
    return tuple(tuple(-1 if code >> (4 * i + j) & 1 else 1 for j in range(4)) for i in range(4))


def _generated_family(mode):
    """All ``{+-1}`` matrices produced by the families of ``mode``."""
    out = set()
    signs = [(1, 1)] if mode is EquationMode.FULL else list(product((1, -1), repeat=2))
    fam_mode = EquationMode.EVEN if mode is EquationMode.FULL else mode
    for eps_u, eps_v in signs:
        for params in product((1, -1), repeat=7):
            fam = N4SignFamily(eps_u, eps_v, fam_mode, params[0], params[1:4], params[4:7])
            if not fam.constraint_holds():
                continue
            out.add(tuple(tuple(int(x) for x in row) for row in n4_sign_family(fam).entries))
    return out


@dataclass
class SignEnumeration:
    mode: EquationMode
    solutions: list
    generated: set
    report: LabReport

    @property
    def count(self):
        return len(self.solutions)


def enumerate_n4_sign_solutions(mode: EquationMode) -> SignEnumeration:
    """All ``C`` in ``{+-1}^{4x4}`` solving the product equations of ``mode``.

    The enumerated set is compared with the family-generated set; for
    ``FULL`` every solution must also classify as a rank-one family.
    """
    mode = EquationMode(mode)
    report = LabReport(f"n4-signs/{mode.value}", "C in {+1,-1}^(4x4), 2^16 candidates, over Q")
    with _Timer() as timer:
        solutions = []
        for code in range(1 << 16):
            rows = _pm_matrix(code)
            C = DenseMatrix._raw(QQ, rows)
            report.checked += 1
            if product_equations_check(C, mode):
                solutions.append(rows)
        report.hypothesis_hits = len(solutions)
        generated = _generated_family(mode)
        found = set(solutions)
        for rows in sorted(generated - found):
            report.violations.append({"kind": "family member is not a solution", "matrix": [list(r) for r in rows]})
        for rows in sorted(found - generated):
            report.violations.append({"kind": "solution outside the families", "matrix": [list(r) for r in rows]})
        kinds = {}
        for rows in solutions:
            try:
                cls = classify_solution(DenseMatrix(rows), mode)
            except UnclassifiedSolution:
                cls = None
            name = type(cls).__name__ if cls is not None else "Unclassified"
            kinds[name] = kinds.get(name, 0) + 1
            if mode is EquationMode.FULL and not isinstance(cls, RankOneFamily):
                report.violations.append({"kind": "full-mode solution not rank one", "matrix": [list(r) for r in rows]})
            elif cls is None:
                report.violations.append({"kind": "unclassified solution", "matrix": [list(r) for r in rows]})
        report.details = {"enumerated": len(solutions), "generated": len(generated), "classified": kinds}
    report.ms = timer.ms
    return SignEnumeration(mode, solutions, generated, report)


# --- row-or-column lemma ------------------------------------------------------

def _minor_hypothesis(A):
    return (gen_minor_matrix(GenDetParams(1, 0), A, 2).is_zero()
            and gen_minor_matrix(GenDetParams(0, 1), A, 2).is_zero())


def _sparse_draw(n, p, rng):
    """Matrix with a random number of nonzeros, biased toward few.

    Uniform draws almost never satisfy the hypothesis, so the support size
    ``k`` is drawn first (geometric-ish), then positions and values.
    """
    k = min(n * n, int(rng.expovariate(0.5)))
    cells = rng.sample(range(n * n), k)
    if rng.random() < 0.5 and k:
        # concentrate on one row or column half of the time
        line = rng.randrange(n)
        if rng.random() < 0.5:
            cells = [line * n + c for c in rng.sample(range(n), min(k, n))]
        else:
            cells = [r * n + line for r in rng.sample(range(n), min(k, n))]
        # one stray entry sometimes, to probe the boundary
        if rng.random() < 0.3:
            cells.append(rng.randrange(n * n))
    flat = [0] * (n * n)
    for c in cells:
        flat[c] = rng.randrange(1, p)
    return [flat[i * n:(i + 1) * n] for i in range(n)]


def verify_rank1_lemma(p=3, n=3, samples=None, seed=0) -> LabReport:
    """If both 2x2 minor matrices of ``A`` vanish, ``A`` is zero, a row or a column.

    Exhaustive over ``GF(p)^{n x n}`` when ``samples`` is None, otherwise
    ``samples`` draws: half uniform, half from a sparse sampler.
    """
    F = GF(p)
    space = p ** (n * n)
    if samples is None:
        if space > EXHAUSTIVE_CAP:
            raise SizeCapExceeded(f"{p}^{n * n} = {space} matrices exceeds {EXHAUSTIVE_CAP}")
        desc = f"all {space} matrices over GF({p}), n={n}"
    else:
        desc = f"{samples} sampled matrices over GF({p}), n={n}, seed={seed}"
    report = LabReport("rank1", desc)
    with _Timer() as timer:
        if samples is None:
            draws = (product(range(p), repeat=n * n))
            source = ([list(flat[i * n:(i + 1) * n]) for i in range(n)] for flat in draws)
        else:
            rng = random.Random(seed)

            def gen():
                for k in range(samples):
                    if k % 2 == 0:
                        yield [[rng.randrange(p) for _ in range(n)] for _ in range(n)]
                    else:
                        yield _sparse_draw(n, p, rng)
            source = gen()
        for rows in source:
            A = DenseMatrix._raw(F, rows)
            report.checked += 1
            if not _minor_hypothesis(A):
                continue
            report.hypothesis_hits += 1
            if is_row_or_column(A).kind == "neither":
                report.violations.append({"matrix": [list(r) for r in rows]})
    report.ms = timer.ms
    return report


# --- derivative identity --------------------------------------------------

def _even_sigma(n, k1, k2, t1, t2):
    """Lexicographically least even permutation with ``k1 -> t1``, ``k2 -> t2``."""
    for w in permutations(range(n)):
        if w[k1] == t1 and w[k2] == t2:
            sigma = PermutationSpec(w)
            if sigma.is_even:
                return sigma
    raise ValueError("no even permutation with the prescribed values (n < 4?)")


def verify_derivative_identity(n, params: GenDetParams, field=QQ) -> LabReport:
    """Sweep all ``k1 != k2``, ``l1 != l2`` and compare derivatives with closed-form 2x2 minors.

    For each tuple two even permutations are used: ``k1 -> l1, k2 -> l2``
    must give the ``(alpha, beta)`` minor, ``k1 -> l2, k2 -> l1`` the
    ``(beta, alpha)`` one.
    """
    if n not in (4, 5):
        raise ValueError("derivative sweep is defined for n = 4 and n = 5")
    report = LabReport("derivative", f"all (k1,k2,l1,l2) with k1!=k2, l1!=l2, n={n}, "
                                     f"params=({params.alpha},{params.beta})")
    swapped = params.swapped()
    with _Timer() as timer:
        for k1, k2 in permutations(range(n), 2):
            for l1, l2 in permutations(range(n), 2):
                report.checked += 1
                report.hypothesis_hits += 1
                cases = (
                    (_even_sigma(n, k1, k2, l1, l2), closed_form_minor(n, params, k1, k2, l1, l2, field)),
                    (_even_sigma(n, k1, k2, l2, l1), closed_form_minor(n, swapped, k1, k2, l1, l2, field)),
                )
                for sigma, expected in cases:
                    got = minor_by_derivatives(n, params, k1, k2, l1, l2, sigma, field)
                    if got != expected:
                        report.violations.append({
                            "k": [k1 + 1, k2 + 1], "l": [l1 + 1, l2 + 1], "sigma": sigma.to_json(),
                            "got": poly_to_text(got), "expected": poly_to_text(expected),
                        })
    report.ms = timer.ms
    return report


# --- n = 4 exotic stabilizers --------------------------------------------

def n4_exotic_stabilizer_demo(fam: N4SignFamily, generic_params=DEFAULT_GENERIC_PARAMS) -> LabReport:
    """``X -> C * X`` for a sign-family ``C``: symbolic membership verdicts.

    Expected: member for the family's own parameter point (``(1, 0)`` for
    even, ``(0, 1)`` for odd); non-member for every generic ``(alpha, beta)``
    with ``alpha != +-beta`` and ``alpha * beta != 0`` unless both signs are +1.
    The verdict for the other parity point is recorded, not asserted.
    """
    if fam.mode not in (EquationMode.EVEN, EquationMode.ODD):
        raise ConstraintViolated("exotic demo needs an even or odd family")
    if fam.field.characteristic == 2:
        raise ConstraintViolated("characteristic 2 is excluded")
    C = n4_sign_family(fam)
    T = hadamard_operator(C)
    own = GenDetParams(1, 0) if fam.mode is EquationMode.EVEN else GenDetParams(0, 1)
    other = GenDetParams(0, 1) if fam.mode is EquationMode.EVEN else GenDetParams(1, 0)
    trivial = fam.eps_u == 1 and fam.eps_v == 1
    report = LabReport("n4-exotic", f"X -> C*X, eps=({fam.eps_u},{fam.eps_v}), mode={fam.mode.value}, n=4")
    verdicts = {}
    with _Timer() as timer:
        def check(params, expected):
            member = membership_symbolic(T, params).member
            key = f"({params.alpha},{params.beta})"
            verdicts[key] = member
            report.checked += 1
            if expected is not None:
                report.hypothesis_hits += 1
                if member != expected:
                    report.violations.append({"params": key, "member": member, "expected": expected})

        check(own, True)
        check(other, True if trivial else None)
        for params in generic_params:
            if params.degenerate(fam.field) or params.alpha * params.beta == 0:
                raise ValueError(f"generic params must satisfy alpha != +-beta, alpha*beta != 0: {params}")
            check(params, trivial)
    report.ms = timer.ms
    report.details = {"coefficients": [[fam.field.to_json(x) for x in row] for row in C.entries],
                      "member": verdicts}
    return report
