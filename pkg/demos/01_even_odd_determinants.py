# Even and odd parts of the determinant, and the family they span.
#
# Run with: python3 demos/01_even_odd_determinants.py

# %%
from fractions import Fraction

from gdet import DenseMatrix, GF, GenDetParams, QQ, det_exact, even_odd_det, gen_det, permanent
from gdet.sym_poly import build_gen_det_poly, poly_to_text

# %%
# Split the permutation sum of a small matrix by parity.
A = DenseMatrix([[1, 2, 3], [4, 5, 6], [7, 8, 10]])
even, odd = even_odd_det(A)
print("even part:", even, " odd part:", odd)
print("det  =", det_exact(A), "=", even - odd)
print("perm =", permanent(A), "=", even + odd)

# %%
# Any pair (alpha, beta) weights the two parts.  (1, -1) is det, (1, 1) is perm.
for alpha, beta in [(1, -1), (1, 1), (2, 5), (Fraction(1, 2), 3)]:
    print(f"alpha={alpha}, beta={beta}:", gen_det(GenDetParams(alpha, beta), A))

# %%
# The same value is a combination of det and perm.
p = GenDetParams(2, 5)
print((p.alpha + p.beta) / 2 * permanent(A) + (p.alpha - p.beta) / 2 * det_exact(A))

# %%
# Everything also works over a prime field.
F = GF(10007)
B = DenseMatrix(A.tolist(), F)
print("over GF(10007):", gen_det(p, B))

# %%
# Symbolic form.  With beta = 0 only the three even permutations survive.
print(poly_to_text(build_gen_det_poly(3, GenDetParams(1, 0))))
print(len(build_gen_det_poly(5, GenDetParams(2, 5), QQ)), "terms at n=5")
