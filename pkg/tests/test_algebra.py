"""Tests for expectations, commutants, intersections, and commuting squares."""

import numpy as np
import pytest

from conftest import haar_unitary, maxabs, random_dpw
from hadinv import (
    DimMismatch,
    InclusionViolation,
    NonUnitary,
    algebra_close,
    commutant,
    conditional_expectation,
    diag_conj_algebra,
    diagonal_algebra,
    fourier,
    fourier_tensor,
    full_matrix_algebra,
    intersect_algebras,
    is_biunitary,
    is_commuting_square,
    jones_projections,
    scalar_algebra,
    shift,
    span_algebra,
    trace_inner,
    vertex_model_square,
    vertex_square,
)


class TestAlgebraClose:
    def test_empty_generators_give_scalars(self):
        assert algebra_close([], 3).dim == 1

    def test_diagonal_units(self):
        gens = [np.diag(np.eye(4)[i]).astype(complex) for i in range(4)]
        assert algebra_close(gens, 4).dim == 4

    def test_two_cycle_group_algebra(self):
        assert algebra_close([shift(2, 1)], 2).dim == 2

    def test_shift_generates_circulants(self):
        assert algebra_close([shift(4, 1)], 4).dim == 4


class TestConditionalExpectation:
    def test_onto_ambient_is_identity(self):
        rng = np.random.default_rng(40)
        x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        assert maxabs(conditional_expectation(x, full_matrix_algebra(3)) - x) < 1e-10

    def test_offdiagonal_dies_on_diagonal(self):
        e12 = np.zeros((2, 2), dtype=complex)
        e12[0, 1] = 1
        assert maxabs(conditional_expectation(e12, diagonal_algebra(2))) < 1e-12

    def test_onto_scalars(self):
        e11 = np.diag([1.0, 0.0]).astype(complex)
        got = conditional_expectation(e11, scalar_algebra(2))
        assert maxabs(got - np.eye(2) / 2) < 1e-12

    def test_projection_properties(self):
        rng = np.random.default_rng(41)
        alg = diag_conj_algebra(fourier(3))
        x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        ex = conditional_expectation(x, alg)
        assert maxabs(conditional_expectation(ex, alg) - ex) < 1e-10
        assert abs(np.trace(ex) - np.trace(x)) < 1e-10
        xh = x + x.conj().T
        exh = conditional_expectation(xh, alg)
        assert maxabs(exh - exh.conj().T) < 1e-10

    def test_bimodule_identity(self):
        rng = np.random.default_rng(42)
        alg = diag_conj_algebra(fourier(3))
        x = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        a = np.tensordot(rng.normal(size=3) + 1j * rng.normal(size=3), alg.basis, axes=1)
        b = np.tensordot(rng.normal(size=3) + 1j * rng.normal(size=3), alg.basis, axes=1)
        lhs = conditional_expectation(a @ x @ b, alg)
        rhs = a @ conditional_expectation(x, alg) @ b
        assert maxabs(lhs - rhs) < 1e-10

    def test_rejects_dim_mismatch(self):
        with pytest.raises(DimMismatch):
            conditional_expectation(np.eye(3), diagonal_algebra(2))


class TestCommutant:
    def test_diagonal_is_maximal_abelian(self):
        got = commutant(diagonal_algebra(3), full_matrix_algebra(3))
        assert got.dim == 3

    def test_full_algebra_has_scalar_commutant(self):
        assert commutant(full_matrix_algebra(3), full_matrix_algebra(3)).dim == 1

    def test_half_shift_inside_diagonals(self):
        alg = algebra_close([shift(4, 2)], 4)
        got = commutant(alg, diagonal_algebra(4))
        # oracle: a diagonal d commutes with the two-step shift iff d_j = d_{j+2}
        s = shift(4, 2)
        count = 0
        for seed in range(12):
            rng = np.random.default_rng(seed)
            d = np.diag(rng.normal(size=4))
            if maxabs(d @ s - s @ d) < 1e-12:
                count += 1
        assert count == 0  # generic diagonals do not commute: constraint is real
        assert got.dim == 2

    def test_double_commutant_contains_original(self):
        alg = diag_conj_algebra(fourier(4))
        ambient = full_matrix_algebra(4)
        double = commutant(commutant(alg, ambient), ambient)
        for b in alg.basis:
            assert double.contains(b)
        assert double.dim == alg.dim  # abelian maximal: equality here


class TestIntersectAlgebras:
    def test_idempotent(self):
        alg = diagonal_algebra(3)
        assert intersect_algebras(alg, alg).dim == 3

    def test_twisted_pair_gives_scalars(self):
        f2 = fourier(2)
        got = intersect_algebras(
            diag_conj_algebra(f2), diag_conj_algebra(np.diag([1, 1j]) @ f2)
        )
        assert got.dim == 1

    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_diagonals_meet_circulants_in_scalars(self, n):
        # a circulant sum(c_r shift_r) is diagonal only when every c_r (r != 0)
        # vanishes: the shifts have disjoint supports off the diagonal
        got = intersect_algebras(diagonal_algebra(n), diag_conj_algebra(fourier(n)))
        assert got.dim == 1

    def test_contained_in_both(self):
        f4 = fourier(4)
        a = diag_conj_algebra(f4)
        b = diag_conj_algebra(np.diag([1, 1, -1, -1]) @ f4)
        inter = intersect_algebras(a, b)
        assert inter.dim == 2
        for m in inter.basis:
            assert a.contains(m) and b.contains(m)

    def test_dimension_order_independent(self):
        f4 = fourier(4)
        a = diag_conj_algebra(f4)
        b = diag_conj_algebra(np.diag([1, 1j, 1, -1j]) @ f4)
        assert intersect_algebras(a, b).dim == intersect_algebras(b, a).dim


class TestDiagConjAlgebra:
    def test_identity_gives_diagonals(self):
        got = diag_conj_algebra(np.eye(3))
        for b in got.basis:
            assert maxabs(b - np.diag(np.diag(b))) < 1e-12

    def test_fourier_gives_circulants(self):
        got = diag_conj_algebra(fourier(4))
        for r in range(4):
            assert got.contains(shift(4, r))

    def test_dimension_always_n(self):
        rng = np.random.default_rng(43)
        assert diag_conj_algebra(haar_unitary(5, rng)).dim == 5

    def test_rejects_non_unitary(self):
        with pytest.raises(NonUnitary):
            diag_conj_algebra(np.ones((2, 2)))


class TestCommutingSquare:
    @pytest.mark.parametrize("n", [2, 3, 4, 5, 6])
    def test_spin_square(self, n):
        result = is_commuting_square(
            scalar_algebra(n),
            diag_conj_algebra(fourier(n)),
            diagonal_algebra(n),
            full_matrix_algebra(n),
        )
        assert result.commuting and result.nondegenerate

    def test_degenerate_counterexample(self):
        result = is_commuting_square(
            scalar_algebra(3),
            diagonal_algebra(3),
            diagonal_algebra(3),
            full_matrix_algebra(3),
        )
        assert not result.commuting
        assert not result.nondegenerate

    def test_rejects_bad_nesting(self):
        with pytest.raises(InclusionViolation):
            is_commuting_square(
                diagonal_algebra(2),
                scalar_algebra(2),
                diagonal_algebra(2),
                full_matrix_algebra(2),
            )

    def test_nondegeneracy_skippable(self):
        result = is_commuting_square(
            scalar_algebra(2),
            diag_conj_algebra(fourier(2)),
            diagonal_algebra(2),
            full_matrix_algebra(2),
            nondegeneracy=False,
        )
        assert result.commuting and result.nondegenerate is None


class TestVertexSquare:
    @pytest.mark.parametrize("nk", [(2, 2), (2, 3)])
    def test_matches_biunitarity_on_randoms(self, nk):
        n, k = nk
        rng = np.random.default_rng(44)
        for _ in range(8):
            z = haar_unitary(n * k, rng)
            assert vertex_square(z, n, k).commuting == is_biunitary(z, n, k)

    def test_tensor_positive(self):
        rng = np.random.default_rng(45)
        z = np.kron(haar_unitary(2, rng), haar_unitary(3, rng))
        assert is_biunitary(z, 2, 3)
        result = vertex_square(z, 2, 3)
        assert result.commuting and result.nondegenerate


class TestVertexModelSquare:
    @pytest.mark.parametrize("n", [2, 3, 4])
    def test_base_square_for_fourier(self, n):
        result = vertex_model_square(fourier(n), (n,))
        assert result.commuting
        assert result.nondegenerate
        assert result.relcomm_dim == n

    def test_invariant_under_normal_form_twist(self):
        rng = np.random.default_rng(46)
        u = random_dpw((2, 2), rng)
        base = vertex_model_square(fourier(2), (2,))
        twisted = vertex_model_square(u, (2, 2))
        assert twisted.commuting == base.commuting
        assert bool(twisted.nondegenerate) == bool(base.nondegenerate)
        assert twisted.relcomm_dim == 4

    def test_multi_factor_spec(self):
        result = vertex_model_square(fourier_tensor((2, 2)), (2, 2))
        assert result.commuting and result.nondegenerate and result.relcomm_dim == 4


class TestJonesProjections:
    def test_first_projection_entries(self):
        e1, _ = jones_projections(2)
        assert maxabs(e1 - np.full((2, 2), 0.5)) < 1e-15

    def test_normalized_traces(self):
        for n in (2, 3, 5):
            e1, e2 = jones_projections(n)
            assert abs(trace_inner(e1, e1) - 1.0 / n) < 1e-12
            assert abs(np.trace(e2) / (n * n) - 1.0 / n) < 1e-12

    def test_selfadjoint_idempotents(self):
        e1, e2 = jones_projections(3)
        for p in (e1, e2):
            assert maxabs(p @ p - p) < 1e-12
            assert maxabs(p - p.conj().T) < 1e-12


class TestSpanAlgebra:
    def test_detects_adjoint_closure_failure(self):
        e12 = np.zeros((2, 2), dtype=complex)
        e12[0, 1] = 1
        with pytest.raises(ValueError):
            span_algebra([np.eye(2), e12], 2)

    def test_detects_product_closure_failure(self):
        # span{I, diag(0,1,2)} is *-closed but the square diag(0,1,4) escapes it
        with pytest.raises(ValueError):
            span_algebra([np.eye(3), np.diag([0.0, 1.0, 2.0]).astype(complex)], 3)

    def test_accepts_group_algebra(self):
        alg = span_algebra([np.eye(4), shift(4, 1), shift(4, 2), shift(4, 3)], 4)
        assert alg.dim == 4
