# Which linear maps on n x n matrices leave a generalized determinant unchanged?
#
# Run with: python3 demos/02_stabilizer_walkthrough.py

# %%
from gdet import GF, GenDetParams, QQ
from gdet.errors import StabViolation
from gdet.exact_algebra import DenseMatrix
from gdet.mat_operator import LinearOperator, MonomialSpec, from_monomial
from gdet.permutations import PermutationSpec
from gdet.stab_engine import extract_canonical, membership_randomized, membership_symbolic, sample_member
from gdet.sym_poly import build_gen_det_poly, poly_to_text, substitute_linear

params = GenDetParams(2, 7)

# %%
# A random member: X -> L P X Q R (maybe transposed) with matching parities
# and diagonal scalars whose product is 1.
T, elem = sample_member(5, QQ, seed=11)
print(elem.to_json())
print("symbolic:", membership_symbolic(T, params).member)
print("det and perm too:", membership_symbolic(T, GenDetParams(1, -1)).member,
      membership_symbolic(T, GenDetParams(1, 1)).member)

# %%
# Reading the structure back off the 25 x 25 matrix gives the same element.
print(extract_canonical(T, params) == elem)

# %%
# Swap two rows: det changes sign, and (alpha, beta) trades places.
n = 3
swap = from_monomial(MonomialSpec(False, PermutationSpec.transposition(n, 0, 1),
                                  PermutationSpec.identity(n), [1] * n, [1] * n))
f = build_gen_det_poly(n, params)
print(poly_to_text(f))
print(poly_to_text(substitute_linear(f, swap)))

# %%
# Maps outside the group fail with a specific reason.
shift = [[int(r == c) for c in range(9)] for r in range(9)]
for i in range(3):
    for k in range(3):
        shift[i * 3 + i][k * 3 + k] += 1
candidates = {
    "row swap": swap,
    "X -> 2X": LinearOperator(3, DenseMatrix.identity(9).scale(2)),
    "X -> X + tr(X) I": LinearOperator(3, DenseMatrix(shift)),
}
for name, op in candidates.items():
    try:
        extract_canonical(op, params)
    except StabViolation as exc:
        print(f"{name:18s} {exc.record()}")

# %%
# For larger n, random evaluation over GF(p) is much cheaper than expansion.
F = GF(10007)
T, _ = sample_member(6, F, seed=3)
v = membership_randomized(T, params, trials=20)
print(v.member, v.evidence_json(), float(v.error_bound))
