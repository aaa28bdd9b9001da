# Brute-force checks at n = 3 and n = 4, including a map that only works at n = 4.
#
# Run with: python3 demos/03_small_cases.py

# %%
from gdet.exact_algebra import GenDetParams
from gdet.lemma_lab import (
    enumerate_n4_sign_solutions,
    n4_exotic_stabilizer_demo,
    verify_derivative_identity,
    verify_rank1_lemma,
)
from gdet.sign_patterns import EquationMode, N4SignFamily, n4_sign_family

# %%
# If every 2x2 even and odd minor product vanishes, the matrix lives in one row or column.
print(verify_rank1_lemma(3, 3).summary())

# %%
# Second derivatives of the n=4 polynomial are 2x2 generalized minors.
print(verify_derivative_identity(4, GenDetParams(2, 5)).summary())

# %%
# Sign matrices whose products along all even (or odd, or all) permutations equal 1.
for mode in EquationMode:
    run = enumerate_n4_sign_solutions(mode)
    print(f"{mode.value:5s} enumerated {run.count:3d}  from families {len(run.generated):3d}  "
          f"{run.report.details['classified']}")

# %%
# One such sign matrix, applied entrywise, fixes the even determinant at n=4
# but nothing with both parts present.
fam = N4SignFamily(-1, 1, EquationMode.EVEN)
for row in n4_sign_family(fam).tolist():
    print(" ".join(f"{int(x):+d}" for x in row))
rep = n4_exotic_stabilizer_demo(fam)
for params, member in rep.details["member"].items():
    print(params, "member" if member else "non-member")
