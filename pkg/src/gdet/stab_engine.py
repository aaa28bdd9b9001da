"""Stabilizers of generalized determinants.

The action is ``(T . f)(X) = f(T(X))``; ``T`` stabilizes ``f`` when the
substituted polynomial equals ``f``.  Membership is decided symbolically
(full expansion) or by random evaluation.  For ``alpha != +-beta`` a member
has monomial unit images and a rank-1 coefficient matrix, which is what
:func:`extract_canonical` reads off.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from fractions import Fraction

from .errors import (
    BadField,
    BadPermutation,
    DegenerateParams,
    NotMonomial,
    NotRankOne,
    NotRankOneCoefficients,
    ParityViolation,
    ProductNotOne,
    RoundTripMismatch,
    SizeCapExceeded,
    Singular,
    UnclassifiedSolution,
    ZeroEntry,
)
from .exact_algebra import DenseMatrix, GenDetParams, gen_det, rank1_factor
from .fields import QQ, Rationals
from .mat_operator import LinearOperator, MonomialSpec, apply, from_monomial, unit_images
from .permutations import PermutationSpec, all_permutations, random_permutation
from .sign_patterns import EquationMode, N4SignFamily, sign_pattern
from .sym_poly import build_gen_det_poly, substitute_linear

__all__ = [
    "EquationMode",
    "CanonicalStabElement",
    "MembershipVerdict",
    "EquationCheck",
    "RankOneFamily",
    "NotASolution",
    "membership_symbolic",
    "membership_randomized",
    "extract_canonical",
    "sample_member",
    "perturb_operator",
    "product_equations_check",
    "classify_solution",
    "SYMBOLIC_CAP",
    "EQUATION_CAP",
]

SYMBOLIC_CAP = 6
EQUATION_CAP = 8
RATIONAL_SAMPLE_BOUND = 2**31


@dataclass(frozen=True)
class CanonicalStabElement:
    """A monomial spec normalized by ``l[0] == 1`` with parity and scale both 1."""

    spec: MonomialSpec

    def __post_init__(self):
        s = self.spec
        if s.l[0] != 1:
            raise ValueError("canonical form requires l[0] == 1")
        if s.parity != 1:
            raise ValueError("canonical form requires sgn(sigma) sgn(tau) == 1")
        if s.scale_product() != 1:
            raise ValueError("canonical form requires prod(l) prod(r) == 1")

    def operator(self) -> LinearOperator:
        return from_monomial(self.spec)

    def to_json(self):
        return self.spec.to_json()


@dataclass(frozen=True)
class MembershipVerdict:
    """``evidence`` is ``"symbolic"`` or ``"randomized"``.

    For randomized verdicts over ``GF(p)``, ``error_bound = (n/p)**trials``
    bounds the chance that a non-member was reported as a member;
    ``bound_text`` is the same bound written as ``"(n/p)^t"``.
    """

    member: bool
    evidence: str
    trials: int | None = None
    error_bound: Fraction | None = None
    witness: DenseMatrix | None = None
    bound_text: str | None = None

    def evidence_json(self):
        if self.evidence == "symbolic":
            return "symbolic"
        return {"randomized": {"trials": self.trials, "error_bound": self.bound_text}}


def _check_params(params: GenDetParams, field):
    if params.is_zero(field):
        raise DegenerateParams("(alpha, beta) = (0, 0) has every invertible operator as stabilizer")


def membership_symbolic(T: LinearOperator, params: GenDetParams, n=None) -> MembershipVerdict:
    """Expand ``detab_n(T(X))`` and compare with ``detab_n(X)`` term by term."""
    n = T.n if n is None else n
    if n != T.n:
        raise ValueError(f"operator acts on Mat_{T.n}, not Mat_{n}")
    if n > SYMBOLIC_CAP:
        raise SizeCapExceeded(f"symbolic membership capped at n={SYMBOLIC_CAP}")
    _check_params(params, T.field)
    f = build_gen_det_poly(n, params, T.field)
    return MembershipVerdict(substitute_linear(f, T) == f, "symbolic")


def membership_randomized(T: LinearOperator, params: GenDetParams, trials=20, seed=0, n=None):
    """Compare ``detab_n(T(A))`` and ``detab_n(A)`` at random points ``A``.

    Over ``GF(p)`` points are uniform and a "member" verdict is wrong with
    probability at most ``(n/p)**trials``.  Over ``QQ`` entries are uniform
    integers in ``[0, 2**31)`` and no bound is claimed.
    """
    n = T.n if n is None else n
    if n != T.n:
        raise ValueError(f"operator acts on Mat_{T.n}, not Mat_{n}")
    F = T.field
    _check_params(params, F)
    rationals = isinstance(F, Rationals)
    if not rationals and F.p <= n:
        raise BadField(f"GF({F.p}) too small for a degree-{n} identity test")
    rng = random.Random(seed)
    for t in range(1, trials + 1):
        if rationals:
            A = DenseMatrix._raw(F, [[Fraction(rng.randrange(RATIONAL_SAMPLE_BOUND)) for _ in range(n)]
                                     for _ in range(n)])
        else:
            A = DenseMatrix.random(n, n, rng, F)
        if gen_det(params, apply(T, A)) != gen_det(params, A):
            return _randomized(False, t, n, F, A)
    return _randomized(True, trials, n, F, None)


def _randomized(member, trials, n, F, witness):
    if isinstance(F, Rationals):
        return MembershipVerdict(member, "randomized", trials, None, witness)
    return MembershipVerdict(member, "randomized", trials, Fraction(n, F.p) ** trials, witness,
                             f"({n}/{F.p})^{trials}")


def _recover_permutations(grid):
    n = grid.n
    mu, lam = grid.mu, grid.lam
    direct = all(mu[a][b] == mu[a][0] for a in range(n) for b in range(n)) and all(
        lam[a][b] == lam[0][b] for a in range(n) for b in range(n))
    transposed = all(mu[a][b] == mu[0][b] for a in range(n) for b in range(n)) and all(
        lam[a][b] == lam[a][0] for a in range(n) for b in range(n))
    if direct == transposed:
        raise NotMonomial("unit-image positions fit neither X -> PXQ nor X -> P X^t Q",
                          witness=None, pattern="ambiguous" if direct else "mixed")
    try:
        if direct:
            sigma = PermutationSpec(tuple(mu[a][0] for a in range(n)))
            tau = PermutationSpec(tuple(lam[0][b] for b in range(n))).inverse()
        else:
            sigma = PermutationSpec(tuple(mu[0][b] for b in range(n)))
            tau = PermutationSpec(tuple(lam[a][0] for a in range(n))).inverse()
    except BadPermutation as exc:
        raise NotMonomial(str(exc), witness=None) from exc
    return transposed, sigma, tau


def extract_canonical(T: LinearOperator, params: GenDetParams) -> CanonicalStabElement:
    """Read ``(transpose, sigma, tau, l, r)`` off a stabilizer element.

    Raises the first structural violation found; no membership test is run
    beforehand.
    """
    F = T.field
    n = T.n
    if n < 3:
        raise ValueError("canonical extraction needs n >= 3")
    why = params.degenerate(F)
    if why is not None or params.is_zero(F):
        raise DegenerateParams(f"extraction requires alpha != +-beta ({why})", reason=why)
    grid = unit_images(T)
    if not grid.monomial:
        a, b, count = grid.witness
        raise NotMonomial(f"T(E_{a + 1}{b + 1}) has {count} nonzero entries",
                          witness=[a + 1, b + 1], nonzero=count)
    if not grid.injective:
        raise NotMonomial("two unit matrices share an image position", witness=None)
    transposed, sigma, tau = _recover_permutations(grid)
    if sigma.parity * tau.parity != 1:
        raise ParityViolation("sgn(sigma) sgn(tau) = -1: T exchanges the even and odd parts",
                              sigma=sigma.to_json(), tau=tau.to_json())
    # coefficient at the image position: C[mu][lam] = coeff
    data = [[F.zero] * n for _ in range(n)]
    for a in range(n):
        for b in range(n):
            data[grid.mu[a][b]][grid.lam[a][b]] = grid.coeff[a][b]
    C = DenseMatrix._raw(F, data)
    try:
        l, r = rank1_factor(C)
    except NotRankOne as exc:
        raise NotRankOneCoefficients(str(exc), coefficients=[[F.to_json(x) for x in row] for row in data]) from exc
    spec = MonomialSpec(transposed, sigma, tau, l, r, F)
    product = spec.scale_product()
    if product != 1:
        raise ProductNotOne(f"prod(l) prod(r) = {product}, not 1", product=F.to_json(product))
    if from_monomial(spec) != T:
        raise RoundTripMismatch("reconstructed operator differs from the input")
    return CanonicalStabElement(spec)


def _random_scalar(F, rng):
    if isinstance(F, Rationals):
        while True:
            x = Fraction(rng.randint(-9, 9), rng.randint(1, 4))
            if x:
                return x
    return F.random_nonzero(rng)


def sample_member(n, field=QQ, seed=0):
    """Random element of ``stab(det_n) & stab(perm_n)`` and its canonical form.

    ``sgn(sigma) sgn(tau) = 1`` is enforced by a transposition on ``tau``
    and ``prod(l) prod(r) = 1`` by solving for ``r[-1]``.
    """
    if n < 2:
        raise ValueError("need n >= 2")
    F = field
    rng = random.Random(seed)
    transpose = rng.random() < 0.5
    sigma = random_permutation(n, rng)
    tau = random_permutation(n, rng)
    if sigma.parity * tau.parity != 1:
        tau = PermutationSpec.transposition(n, 0, 1) * tau
    l = [F.one] + [_random_scalar(F, rng) for _ in range(n - 1)]
    r = [_random_scalar(F, rng) for _ in range(n - 1)]
    partial = F.one
    for x in l + r:
        partial = F(partial * x)
    r.append(F.inv(partial))
    elem = CanonicalStabElement(MonomialSpec(transpose, sigma, tau, tuple(l), tuple(r), F))
    return elem.operator(), elem


def perturb_operator(T: LinearOperator, rng: random.Random) -> LinearOperator:
    """Add a random nonzero scalar to one random entry, keeping ``T`` invertible."""
    F = T.field
    N = T.n * T.n
    while True:
        i, j = rng.randrange(N), rng.randrange(N)
        data = [list(row) for row in T.matrix.entries]
        data[i][j] = F(data[i][j] + _random_scalar(F, rng))
        try:
            return LinearOperator(T.n, DenseMatrix._raw(F, data))
        except Singular:
            continue


def _mode_permutations(n, mode: EquationMode):
    want = {EquationMode.EVEN: (1,), EquationMode.ODD: (-1,), EquationMode.FULL: (1, -1)}[mode]
    return [w for w, s in all_permutations(n) if s in want]


@dataclass(frozen=True)
class EquationCheck:
    """Outcome of :func:`product_equations_check`; truthy iff the equations hold."""

    holds: bool
    witness: PermutationSpec | None = None

    def __bool__(self):
        return self.holds


def product_equations_check(C: DenseMatrix, mode: EquationMode) -> EquationCheck:
    """Does ``c_{0 w(0)} ... c_{n-1 w(n-1)} == 1`` for every ``w`` of the mode?

    The witness is the lexicographically least failing permutation.
    """
    n = C.rows
    if not C.is_square:
        raise ValueError("coefficient matrix must be square")
    if n > EQUATION_CAP:
        raise SizeCapExceeded(f"equation enumeration capped at n={EQUATION_CAP}")
    F = C.field
    rows = C.entries
    for w in _mode_permutations(n, mode):
        p = F.one
        for row, wi in zip(rows, w):
            p = p * row[wi]
        if F(p) != 1:
            return EquationCheck(False, PermutationSpec(w))
    return EquationCheck(True)


@dataclass(frozen=True)
class RankOneFamily:
    """``C = (a_i1 a_1j / a_11)`` with ``first_col = (a_i1)`` and ``first_row = (a_1j)``."""

    first_col: tuple
    first_row: tuple


@dataclass(frozen=True)
class NotASolution:
    witness: PermutationSpec


def _full_support_rank_one(C):
    try:
        rank1_factor(C)
    except (NotRankOne, ZeroEntry):
        return False
    return True


def classify_solution(C: DenseMatrix, mode: EquationMode):
    """Name the family a solution of the product equations belongs to."""
    check = product_equations_check(C, mode)
    if not check:
        return NotASolution(check.witness)
    F = C.field
    n = C.rows
    if _full_support_rank_one(C):
        return RankOneFamily(tuple(C[i, 0] for i in range(n)), tuple(C[0, j] for j in range(n)))
    if n == 4 and mode in (EquationMode.EVEN, EquationMode.ODD):
        for eps_u in (1, -1):
            for eps_v in (1, -1):
                pattern = sign_pattern(eps_u, eps_v, mode, F)
                quotient = DenseMatrix._raw(F, [[F.div(C[i, j], pattern[i, j]) for j in range(4)]
                                                for i in range(4)])
                if _full_support_rank_one(quotient):
                    return N4SignFamily(eps_u, eps_v, mode, C[0, 0],
                                        tuple(C[0, j] for j in range(1, 4)),
                                        tuple(C[i, 0] for i in range(1, 4)), F)
    raise UnclassifiedSolution(f"solution of the {mode.value} equations at n={n} fits no known family")
