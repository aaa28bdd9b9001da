"""Generalized determinants, their stabilizers, and exact lemma checks.

``det^(alpha, beta)(A) = alpha * (sum over even permutations) + beta * (sum
over odd permutations)`` interpolates between the determinant
``(1, -1)`` and the permanent ``(1, 1)``.
"""

from .errors import GdetError
from .exact_algebra import (
    DenseMatrix,
    GenDetParams,
    det_exact,
    even_odd_det,
    gen_det,
    gen_minor_matrix,
    hadamard,
    is_row_or_column,
    permanent,
    rank1_factor,
    submatrix,
)
from .fields import GF, QQ
from .mat_operator import (
    LinearOperator,
    MonomialSpec,
    apply,
    compose,
    from_monomial,
    inverse,
    unit_images,
)
from .permutations import PermutationSpec
from .sign_patterns import EquationMode, N4SignFamily
from .stab_engine import (
    CanonicalStabElement,
    classify_solution,
    extract_canonical,
    membership_randomized,
    membership_symbolic,
    product_equations_check,
    sample_member,
)
from .sym_poly import (
    SparseMVPoly,
    build_gen_det_poly,
    evaluate,
    minor_by_derivatives,
    partial_derivative,
    substitute_linear,
)

__version__ = "0.1.0"
