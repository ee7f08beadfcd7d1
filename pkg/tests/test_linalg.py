"""Tests for the dense matrix kernel."""

import numpy as np
import pytest

from conftest import haar_unitary, maxabs
from hadinv import (
    DimMismatch,
    NonUnitary,
    ToleranceConfig,
    ad,
    classify,
    clock_vec,
    fourier,
    orthonormal_basis,
    perm_matrix,
    shift,
    subspace_intersection,
    tensor,
    trace_inner,
)


def diag_units(n):
    return [np.diag(np.eye(n)[i]).astype(complex) for i in range(n)]


class TestTensor:
    def test_identity(self):
        assert maxabs(tensor(np.eye(2), np.eye(2)) - np.eye(4)) < 1e-15

    def test_diagonal(self):
        got = tensor(np.diag([1, -1]), np.eye(2))
        assert maxabs(got - np.diag([1, 1, -1, -1])) < 1e-15

    def test_fourier_corner_entry(self):
        got = tensor(fourier(2), fourier(2))
        assert abs(got[0, 0] - 0.5) < 1e-12

    def test_dim_multiplies(self):
        assert tensor(np.eye(3), np.eye(4)).shape == (12, 12)


class TestAd:
    def test_identity_conjugation(self):
        x = np.arange(9, dtype=complex).reshape(3, 3)
        assert maxabs(ad(np.eye(3), x) - x) < 1e-15

    def test_fourier_sends_clock_to_shift(self):
        got = ad(fourier(2), np.diag([1, -1]))
        assert maxabs(got - np.array([[0, 1], [1, 0]])) < 1e-12

    def test_preserves_trace(self):
        rng = np.random.default_rng(3)
        u = haar_unitary(4, rng)
        x = rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4))
        assert abs(np.trace(ad(u, x)) - np.trace(x)) < 1e-10

    def test_rejects_non_unitary(self):
        with pytest.raises(NonUnitary):
            ad(np.ones((2, 2)), np.eye(2))

    def test_rejects_dim_mismatch(self):
        with pytest.raises(DimMismatch):
            ad(np.eye(2), np.eye(3))

    def test_frobenius_isometry(self):
        rng = np.random.default_rng(4)
        for n in (2, 3, 5):
            u = haar_unitary(n, rng)
            x = rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))
            before = np.linalg.norm(x)
            after = np.linalg.norm(ad(u, x))
            assert abs(after - before) <= 1e-12 * before


class TestClassify:
    def test_shift_is_permutation(self):
        flags = classify(shift(3, 1))
        assert flags.permutation and flags.unitary and flags.complex_permutation
        assert not flags.diagonal

    def test_phase_permutation(self):
        flags = classify(np.diag([1, 1j]) @ shift(2, 1))
        assert flags.complex_permutation and not flags.permutation
        assert flags.unitary

    def test_fourier(self):
        flags = classify(fourier(2))
        assert flags.unitary
        assert not flags.diagonal and not flags.permutation

    def test_projection(self):
        p = np.array([[0.5, 0.5], [0.5, 0.5]], dtype=complex)
        flags = classify(p)
        assert flags.projection and flags.selfadjoint
        assert not flags.unitary

    def test_product_of_permutations_is_permutation(self):
        rng = np.random.default_rng(5)
        for _ in range(10):
            p = perm_matrix(rng.permutation(6))
            q = perm_matrix(rng.permutation(6))
            assert classify(p @ q).permutation


class TestTraceInner:
    def test_identity_has_unit_norm(self):
        assert abs(trace_inner(np.eye(5), np.eye(5)) - 1) < 1e-15

    def test_orthogonal_units(self):
        e11 = np.diag([1.0, 0.0])
        e22 = np.diag([0.0, 1.0])
        assert abs(trace_inner(e11, e22)) < 1e-15

    def test_shift_has_unit_norm(self):
        s = shift(2, 1)
        assert abs(trace_inner(s, s) - 1) < 1e-15

    def test_sesquilinear(self):
        rng = np.random.default_rng(6)
        a = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        b = rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))
        z = 0.3 - 1.7j
        assert abs(trace_inner(z * a, b) - z * trace_inner(a, b)) < 1e-12
        assert abs(trace_inner(a, z * b) - np.conj(z) * trace_inner(a, b)) < 1e-12


class TestOrthonormalBasis:
    def test_collinear_collapses(self):
        assert len(orthonormal_basis([np.eye(2), 2 * np.eye(2)])) == 1

    def test_independent_diagonals(self):
        assert len(orthonormal_basis(diag_units(2))) == 2

    def test_clock_family_spans_diagonals(self):
        # the four clock tensors of (2,2) are a basis of the diagonal algebra
        family = [clock_vec((2, 2), r) for r in [(0, 0), (0, 1), (1, 0), (1, 1)]]
        assert len(orthonormal_basis(family)) == 4

    def test_output_is_orthonormal(self):
        rng = np.random.default_rng(7)
        mats = [rng.normal(size=(4, 4)) + 1j * rng.normal(size=(4, 4)) for _ in range(6)]
        basis = orthonormal_basis(mats)
        for i, gi in enumerate(basis):
            for j, gj in enumerate(basis):
                assert abs(trace_inner(gi, gj) - (i == j)) <= 1e-10


class TestSubspaceIntersection:
    def test_self_intersection(self):
        basis = diag_units(2)
        assert len(subspace_intersection(basis, basis)) == 2

    def test_scalars_only(self):
        # span{I, s} meets span{I, D s D*} (D = diag(1, i)) exactly in the scalars:
        # matching coefficients on the off-diagonal forces both to vanish
        s = shift(2, 1)
        other = np.array([[0, -1j], [1j, 0]])
        got = subspace_intersection([np.eye(2), s], [np.eye(2), other])
        assert len(got) == 1
        # independent oracle: dim(A & B) = dim A + dim B - rank(A u B)
        union = np.stack([m.reshape(-1) for m in [np.eye(2), s, np.eye(2), other]])
        assert len(got) == 2 + 2 - np.linalg.matrix_rank(union, tol=1e-10)

    def test_conjugated_diagonal_pair(self):
        f4 = fourier(4)
        d = np.diag([1.0, 1.0, -1.0, -1.0])
        a = [f4 @ e @ f4.conj().T for e in diag_units(4)]
        b = [(d @ f4) @ e @ (d @ f4).conj().T for e in diag_units(4)]
        got = subspace_intersection(a, b)
        # oracle: scan which conjugates d shift(4,r) d* stay scalar multiples of shift(4,r)
        expected = 0
        for r in range(4):
            s = shift(4, r)
            conj = d @ s @ d.conj().T
            scale = conj[0, (0 + r) % 4] / s[0, (0 + r) % 4]
            expected += int(maxabs(conj - scale * s) < 1e-12)
        assert expected == 2
        assert len(got) == expected

    def test_dimension_bounds(self):
        s = shift(4, 1)
        small = [np.eye(4), s]
        big = [np.linalg.matrix_power(s, k) for k in range(4)]
        inter = subspace_intersection(small, big)
        assert len(inter) <= min(len(small), len(big))
        assert len(inter) == 2  # small family lies inside the big span

    def test_permutation_invariant_dimension(self):
        rng = np.random.default_rng(8)
        mats_a = [rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3)) for _ in range(3)]
        mats_b = mats_a[:2] + [rng.normal(size=(3, 3)) + 1j * rng.normal(size=(3, 3))]
        base = len(subspace_intersection(mats_a, mats_b))
        flipped = len(subspace_intersection(mats_a[::-1], mats_b[::-1]))
        assert base == flipped


class TestToleranceConfig:
    def test_defaults(self):
        tol = ToleranceConfig()
        assert tol.eps_entry == 1e-9 and tol.eps_rank == 1e-8

    @pytest.mark.parametrize("bad", [0.0, -1e-9, 1e-2, 0.5])
    def test_rejects_out_of_range(self, bad):
        with pytest.raises(ValueError):
            ToleranceConfig(eps_entry=bad)
        with pytest.raises(ValueError):
            ToleranceConfig(eps_rank=bad)
