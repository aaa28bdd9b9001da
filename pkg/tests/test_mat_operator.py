import random

import pytest

from gdet.errors import Singular, SizeMismatch, ZeroDiagonal
from gdet.exact_algebra import DenseMatrix, diagonal_matrix, permutation_matrix
from gdet.fields import GF, QQ
from gdet.mat_operator import (
    LinearOperator,
    MonomialSpec,
    apply,
    compose,
    from_monomial,
    identity_operator,
    inverse,
    unit_images,
)
from gdet.permutations import PermutationSpec, random_permutation


def random_spec(n, rng, field, transpose=None):
    t = rng.random() < 0.5 if transpose is None else transpose
    return MonomialSpec(t, random_permutation(n, rng), random_permutation(n, rng),
                        [field.random_nonzero(rng) for _ in range(n)],
                        [field.random_nonzero(rng) for _ in range(n)], field)


def ident_spec(n, transpose=False):
    e = PermutationSpec.identity(n)
    return MonomialSpec(transpose, e, e, [1] * n, [1] * n)


class TestFromMonomial:
    def test_identity(self):
        assert from_monomial(ident_spec(3)) == identity_operator(3)

    def test_transpose(self):
        T = from_monomial(ident_spec(3, transpose=True))
        for i in range(3):
            for j in range(3):
                assert T(DenseMatrix.unit(3, i, j)) == DenseMatrix.unit(3, j, i)

    @pytest.mark.parametrize("seed", range(4))
    def test_matches_matrix_products(self, seed, field):
        rng = random.Random(seed)
        s = random_spec(4, rng, field)
        A = DenseMatrix.random(4, 4, rng, field)
        L, R = diagonal_matrix(s.l, field), diagonal_matrix(s.r, field)
        P, Q = permutation_matrix(s.sigma, field), permutation_matrix(s.tau, field)
        X = A.T if s.transpose else A
        assert apply(from_monomial(s), A) == L @ P @ X @ Q @ R

    def test_random_n5_unit_images_single_entry(self, rng, field):
        T = from_monomial(random_spec(5, rng, field))
        for i in range(5):
            for j in range(5):
                F_ij = T(DenseMatrix.unit(5, i, j, field))
                assert sum(1 for v in F_ij.flat() if v != 0) == 1
        assert unit_images(T).monomial

    def test_zero_diagonal(self):
        e = PermutationSpec.identity(2)
        with pytest.raises(ZeroDiagonal):
            from_monomial(MonomialSpec(False, e, e, [1, 0], [1, 1]))


class TestApply:
    def test_identity(self, rng):
        A = DenseMatrix.random(3, 3, rng)
        assert apply(identity_operator(3), A) == A

    def test_row_permutation_convention(self):
        sigma = PermutationSpec.transposition(3, 0, 1)
        T = from_monomial(MonomialSpec(False, sigma, PermutationSpec.identity(3), [1] * 3, [1] * 3))
        # P E_11 has its entry at (sigma(1), 1)
        assert T(DenseMatrix.unit(3, 0, 0)) == DenseMatrix.unit(3, sigma(0), 0)

    def test_inverse_round_trip(self, rng, field):
        T = from_monomial(random_spec(4, rng, field))
        A = DenseMatrix.random(4, 4, rng, field)
        assert apply(T, apply(inverse(T), A)) == A

    def test_size_mismatch(self):
        with pytest.raises(SizeMismatch):
            apply(identity_operator(3), DenseMatrix.identity(2))


class TestInverseCompose:
    def test_identity(self):
        assert inverse(identity_operator(3)) == identity_operator(3)

    @pytest.mark.parametrize("transpose", [False, True])
    def test_monomial_inverse_spec(self, transpose, field):
        rng = random.Random(int(transpose))
        s = random_spec(4, rng, field, transpose)
        T = from_monomial(s)
        assert compose(T, from_monomial(s.inverse())) == identity_operator(4, field)
        assert inverse(T) == from_monomial(s.inverse())

    def test_compose_identity(self, rng):
        T = from_monomial(random_spec(3, rng, QQ))
        assert compose(T, identity_operator(3)) == T

    def test_compose_of_monomials_is_monomial(self, rng, field):
        T = compose(from_monomial(random_spec(4, rng, field)), from_monomial(random_spec(4, rng, field)))
        assert unit_images(T).monomial

    def test_vec_convention(self, rng, field):
        T1 = from_monomial(random_spec(3, rng, field))
        T2 = perturbed_general(rng, field)
        A = DenseMatrix.random(3, 3, rng, field)
        assert apply(compose(T1, T2), A) == apply(T1, apply(T2, A))

    def test_mismatch(self):
        with pytest.raises(SizeMismatch):
            compose(identity_operator(2), identity_operator(3))


def perturbed_general(rng, field):
    while True:
        try:
            return LinearOperator(3, DenseMatrix.random(9, 9, rng, field))
        except Singular:
            pass


class TestUnitImages:
    def test_identity(self):
        g = unit_images(identity_operator(3))
        assert g.monomial and g.injective
        assert g.mu == tuple(tuple(i for _ in range(3)) for i in range(3))
        assert g.lam == tuple(tuple(range(3)) for _ in range(3))
        assert all(c == 1 for row in g.coeff for c in row)

    def test_monomial_coefficients(self, rng, field):
        s = random_spec(4, rng, field, transpose=False)
        g = unit_images(from_monomial(s))
        tinv = s.tau.inverse()
        for a in range(4):
            for b in range(4):
                i, j = s.sigma(a), tinv(b)
                assert (g.mu[a][b], g.lam[a][b]) == (i, j)
                assert g.coeff[a][b] == field(s.l[i] * s.r[j])

    @pytest.mark.parametrize("transpose", [False, True])
    def test_dependency_pattern(self, transpose, rng):
        g = unit_images(from_monomial(random_spec(5, rng, QQ, transpose)))
        const_in_j = all(len(set(row)) == 1 for row in g.mu)
        const_in_i = all(len(set(col)) == 1 for col in zip(*g.mu))
        assert const_in_j != transpose and const_in_i == transpose
        lam_const_in_i = all(len(set(col)) == 1 for col in zip(*g.lam))
        assert lam_const_in_i != transpose

    def test_trace_shift_is_not_monomial(self):
        n = 3
        N = n * n
        # X -> X + tr(X) I
        data = [[int(r == c) for c in range(N)] for r in range(N)]
        for i in range(n):
            for k in range(n):
                data[i * n + i][k * n + k] += 1
        T = LinearOperator(n, DenseMatrix(data))
        g = unit_images(T)
        assert not g.monomial
        assert g.witness == (0, 0, n)


def test_singular_rejected():
    with pytest.raises(Singular):
        LinearOperator(2, DenseMatrix.zeros(4))
    with pytest.raises(SizeMismatch):
        LinearOperator(2, DenseMatrix.identity(3))


def test_gf_operator(rng):
    F = GF(10007)
    T = from_monomial(random_spec(3, rng, F))
    assert T.field == F
