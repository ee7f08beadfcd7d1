"""Finite-dimensional *-algebra machinery inside M_n.

An algebra is carried by a trace-orthonormal basis.  On top of that sit the
trace-preserving conditional expectation (the orthogonal projection in the
trace inner product, which is the unique trace-preserving expectation onto
a *-subalgebra in finite dimension), commutants via a stacked commutator
kernel, algebra intersection, the commuting-square test, and the base
square of the vertex-model tower attached to a Hadamard matrix.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatch,
    InclusionViolation,
    NonUnitary,
    OrderOutOfRange,
    OrderTooLarge,
)
from .hadamard import FourierSpec, block_unitary, fourier_tensor, require_hadamard
from .linalg import (
    DEFAULT_TOL,
    ToleranceConfig,
    as_matrix,
    classify,
    dagger,
    nullspace,
    orthonormal_basis,
    subspace_intersection,
)

__all__ = [
    "AlgebraBasis",
    "span_algebra",
    "scalar_algebra",
    "diagonal_algebra",
    "full_matrix_algebra",
    "tensor_algebra",
    "algebra_close",
    "conditional_expectation",
    "commutant",
    "intersect_algebras",
    "diag_conj_algebra",
    "SquareResult",
    "is_commuting_square",
    "vertex_square",
    "TowerBaseResult",
    "vertex_model_square",
    "jones_projections",
]

# products of the two middle algebras get rank-checked only up to this
# matrix dimension N; beyond it the nondegeneracy flag is reported as skipped
TOWER_NONDEG_CAP = 5

TOWER_DIM_CAP = 36


@dataclass(frozen=True, eq=False)
class AlgebraBasis:
    """Trace-orthonormal basis of a subspace of M_n, stacked as (dim, n, n).

    Instances are produced by the factories in this module, which guarantee
    (or verify, see ``span_algebra``) that the span is a unital *-algebra.
    The array is frozen after construction and safe to share.
    """

    ambient_dim: int
    basis: np.ndarray
    unital: bool = True

    def __post_init__(self):
        arr = np.asarray(self.basis, dtype=complex)
        if arr.ndim != 3 or arr.shape[1:] != (self.ambient_dim, self.ambient_dim):
            raise DimMismatch(
                f"basis must have shape (dim, {self.ambient_dim}, {self.ambient_dim})"
            )
        arr = arr.copy()
        arr.setflags(write=False)
        object.__setattr__(self, "basis", arr)

    @property
    def dim(self) -> int:
        return self.basis.shape[0]

    @property
    def flat(self) -> np.ndarray:
        return self.basis.reshape(self.dim, -1)

    def project_many(self, flat_mats: np.ndarray) -> np.ndarray:
        """Conditional expectation applied to rows of flattened matrices."""
        coeffs = flat_mats @ self.flat.conj().T / self.ambient_dim
        return coeffs @ self.flat

    def contains(self, m, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
        m = as_matrix(m)
        if m.shape[0] != self.ambient_dim:
            raise DimMismatch("dimension mismatch in span membership test")
        flat = m.reshape(1, -1)
        residual = flat - self.project_many(flat)
        norm = np.sqrt((np.abs(residual) ** 2).sum() / self.ambient_dim)
        return bool(norm < tol.eps_rank)


def _verify_algebra(stack: np.ndarray, n: int, unital: bool, tol: ToleranceConfig):
    """Assert orthonormality and closure of the span under * and products."""
    dim = stack.shape[0]
    flat = stack.reshape(dim, -1)
    gram = flat @ flat.conj().T / n
    if np.abs(gram - np.eye(dim)).max() > 1e-10:
        raise ValueError("basis is not trace-orthonormal")

    def residual(mats_flat: np.ndarray) -> float:
        coeffs = mats_flat @ flat.conj().T / n
        res = mats_flat - coeffs @ flat
        return float(np.sqrt((np.abs(res) ** 2).max(initial=0.0)))

    if unital:
        eye_res = residual(np.eye(n, dtype=complex).reshape(1, -1))
        if eye_res > tol.eps_rank:
            raise ValueError("identity is not in the span of a unital algebra basis")

    adj = stack.conj().transpose(0, 2, 1).reshape(dim, -1)
    if residual(adj) > tol.eps_rank:
        raise ValueError("span is not closed under adjoints")

    for i in range(dim):
        prods = (stack[i] @ stack).reshape(dim, -1)
        if residual(prods) > tol.eps_rank:
            raise ValueError("span is not closed under multiplication")


def span_algebra(
    mats,
    ambient_dim: int | None = None,
    *,
    unital: bool = True,
    check: bool = True,
    tol: ToleranceConfig = DEFAULT_TOL,
) -> AlgebraBasis:
    """Orthonormalize a spanning family and wrap it as an algebra basis.

    With ``check=True`` the span is verified to contain the identity (when
    unital) and to be closed under adjoints and products; factories whose
    output is closed by construction skip the check.
    """
    basis = orthonormal_basis(mats, tol)
    if not basis:
        if ambient_dim is None:
            raise ValueError("cannot infer dimension from an empty family")
        basis = [np.eye(ambient_dim, dtype=complex)] if unital else []
    n = basis[0].shape[0] if basis else ambient_dim
    if ambient_dim is not None and n != ambient_dim:
        raise DimMismatch(f"expected ambient dimension {ambient_dim}, got {n}")
    stack = np.stack(basis) if basis else np.zeros((0, n, n), dtype=complex)
    if check:
        _verify_algebra(stack, n, unital, tol)
    return AlgebraBasis(ambient_dim=n, basis=stack, unital=unital)


def scalar_algebra(n: int) -> AlgebraBasis:
    """The scalars C inside M_n."""
    return AlgebraBasis(ambient_dim=n, basis=np.eye(n, dtype=complex)[None, :, :])


def diagonal_algebra(n: int) -> AlgebraBasis:
    """The diagonal algebra, with basis ``sqrt(n) * E_ii``."""
    stack = np.zeros((n, n, n), dtype=complex)
    idx = np.arange(n)
    stack[idx, idx, idx] = np.sqrt(n)
    return AlgebraBasis(ambient_dim=n, basis=stack)


def full_matrix_algebra(n: int) -> AlgebraBasis:
    """All of M_n, with basis ``sqrt(n) * E_ij``."""
    stack = np.zeros((n * n, n, n), dtype=complex)
    k = 0
    for i in range(n):
        for j in range(n):
            stack[k, i, j] = np.sqrt(n)
            k += 1
    return AlgebraBasis(ambient_dim=n, basis=stack)


def tensor_algebra(a: AlgebraBasis, b: AlgebraBasis) -> AlgebraBasis:
    """Kronecker product algebra; tensors of orthonormal bases stay orthonormal."""
    stack = np.stack([np.kron(x, y) for x in a.basis for y in b.basis])
    return AlgebraBasis(
        ambient_dim=a.ambient_dim * b.ambient_dim,
        basis=stack,
        unital=a.unital and b.unital,
    )


def algebra_close(generators, n: int, tol: ToleranceConfig = DEFAULT_TOL) -> AlgebraBasis:
    """Smallest unital *-closed span containing the generators.

    Iterates adjoint and pairwise-product closure until the span dimension
    stabilizes; an empty generator list yields the scalars.
    """
    basis = orthonormal_basis([np.eye(n, dtype=complex), *generators], tol)
    while True:
        candidates = list(basis)
        candidates.extend(dagger(g) for g in basis)
        candidates.extend(x @ y for x in basis for y in basis)
        grown = orthonormal_basis(candidates, tol)
        if len(grown) == len(basis):
            return span_algebra(grown, n, check=True, tol=tol)
        basis = grown


def conditional_expectation(x, algebra: AlgebraBasis) -> np.ndarray:
    """Trace-preserving conditional expectation of x onto the algebra.

    Computed as ``sum_i <x, b_i> b_i`` over the orthonormal basis; this is
    idempotent, selfadjoint- and trace-preserving, and a bimodule map over
    the algebra.
    """
    x = as_matrix(x)
    if x.shape[0] != algebra.ambient_dim:
        raise DimMismatch(
            f"matrix dimension {x.shape[0]} does not match ambient {algebra.ambient_dim}"
        )
    return algebra.project_many(x.reshape(1, -1)).reshape(x.shape)


def commutant(algebra: AlgebraBasis, ambient: AlgebraBasis, tol: ToleranceConfig = DEFAULT_TOL) -> AlgebraBasis:
    """Elements of the ambient span commuting with every basis element.

    Writes the candidate as ``x = sum c_k g_k`` over the ambient basis,
    stacks the commutator of each g_k with each algebra basis element into
    one linear system in the coefficients c, and maps the kernel of that
    system back through the ambient basis.
    """
    if algebra.ambient_dim != ambient.ambient_dim:
        raise DimMismatch("commutant needs both algebras in one matrix dimension")
    cols = []
    for g in ambient.basis:
        rows = [(g @ a - a @ g).reshape(-1) for a in algebra.basis]
        cols.append(np.concatenate(rows))
    system = np.stack(cols, axis=1)
    kernel = nullspace(system, tol.eps_rank)
    members = [np.tensordot(coeff, ambient.basis, axes=1) for coeff in kernel.T]
    return span_algebra(members, ambient.ambient_dim, check=True, tol=tol)


def intersect_algebras(a: AlgebraBasis, b: AlgebraBasis, tol: ToleranceConfig = DEFAULT_TOL) -> AlgebraBasis:
    """Intersection of two algebra spans, re-verified as a unital *-algebra."""
    if a.ambient_dim != b.ambient_dim:
        raise DimMismatch("intersection needs one ambient dimension")
    members = subspace_intersection(list(a.basis), list(b.basis), tol)
    return span_algebra(members, a.ambient_dim, check=True, tol=tol)


def diag_conj_algebra(u, tol: ToleranceConfig = DEFAULT_TOL) -> AlgebraBasis:
    """The conjugated diagonal algebra ``u Delta_n u*`` for a unitary u."""
    u = as_matrix(u)
    if not classify(u, tol).unitary:
        raise NonUnitary("diagonal conjugation needs a unitary matrix")
    n = u.shape[0]
    # u E_ii u* is the outer product of column i; conjugation keeps the basis orthonormal
    stack = np.stack([np.sqrt(n) * np.outer(u[:, i], u[:, i].conj()) for i in range(n)])
    return AlgebraBasis(ambient_dim=n, basis=stack)


@dataclass(frozen=True)
class SquareResult:
    """Outcome of a commuting-square test.

    ``nondegenerate`` is None when the product-rank check was skipped for
    size reasons (never a silent pass).
    """

    commuting: bool
    nondegenerate: bool | None
    max_commuting_err: float


def _span_contained(inner: AlgebraBasis, outer: AlgebraBasis, tol: ToleranceConfig) -> bool:
    flat = inner.flat
    res = flat - outer.project_many(flat)
    worst = np.sqrt((np.abs(res) ** 2).sum(axis=1) / inner.ambient_dim)
    return bool(worst.max(initial=0.0) < np.sqrt(tol.eps_rank))


def is_commuting_square(
    corner: AlgebraBasis,
    left: AlgebraBasis,
    right: AlgebraBasis,
    ambient: AlgebraBasis,
    tol: ToleranceConfig = DEFAULT_TOL,
    *,
    nondegeneracy: bool = True,
) -> SquareResult:
    """Decide the commuting-square property for a quadruple of algebras.

    Commuting means the two middle conditional expectations commute and
    compose to the expectation onto the corner, checked deterministically on
    a full basis of the ambient algebra.  Nondegenerate means the pairwise
    products left * right span the ambient algebra, decided by rank.
    """
    dims = {corner.ambient_dim, left.ambient_dim, right.ambient_dim, ambient.ambient_dim}
    if len(dims) != 1:
        raise DimMismatch("all four algebras must share one matrix dimension")
    for inner, outer, what in (
        (corner, left, "corner in left"),
        (corner, right, "corner in right"),
        (left, ambient, "left in ambient"),
        (right, ambient, "right in ambient"),
    ):
        if not _span_contained(inner, outer, tol):
            raise InclusionViolation(f"span containment fails: {what}")

    g = ambient.flat
    lr = left.project_many(right.project_many(g))
    rl = right.project_many(left.project_many(g))
    c = corner.project_many(g)
    err = float(max(np.abs(lr - rl).max(), np.abs(lr - c).max(), np.abs(rl - c).max()))
    commuting = err < tol.eps_entry

    nondeg: bool | None = None
    if nondegeneracy:
        prods = np.stack(
            [(x @ y).reshape(-1) for x in left.basis for y in right.basis]
        )
        sv = np.linalg.svd(prods, compute_uv=False)
        rank = int((sv > tol.eps_rank).sum())
        nondeg = rank == ambient.dim
    return SquareResult(commuting=commuting, nondegenerate=nondeg, max_commuting_err=err)


def vertex_square(z, n: int, k: int, tol: ToleranceConfig = DEFAULT_TOL) -> SquareResult:
    """Commuting-square test for the vertex-model quadruple of a unitary in M_n x M_k.

    The quadruple is (scalars, Ad_z(M_n x 1), 1 x M_k, M_{nk}); it commutes
    exactly when z is biunitary, which is what the cross-check tests assert.
    """
    z = as_matrix(z)
    if z.shape[0] != n * k:
        raise DimMismatch(f"dimension {z.shape[0]} is not {n}*{k}")
    if not classify(z, tol).unitary:
        raise NonUnitary("vertex square needs a unitary matrix")
    m_n = full_matrix_algebra(n)
    left_stack = np.stack([z @ np.kron(m, np.eye(k)) @ dagger(z) for m in m_n.basis])
    left = AlgebraBasis(ambient_dim=n * k, basis=left_stack)
    right = tensor_algebra(scalar_algebra(n), full_matrix_algebra(k))
    return is_commuting_square(
        scalar_algebra(n * k), left, right, full_matrix_algebra(n * k), tol
    )


@dataclass(frozen=True)
class TowerBaseResult:
    """Finite-level data of the square at the base of the vertex-model tower."""

    algebra: AlgebraBasis
    commuting: bool
    nondegenerate: bool | None
    relcomm_dim: int
    max_commuting_err: float


def vertex_model_square(u, spec, tol: ToleranceConfig = DEFAULT_TOL) -> TowerBaseResult:
    """Build and test the square pairing ``Ad_{U1}(I x W Delta W*)`` against I x M_N.

    Everything lives in M_{N^2}: the corner is the scalars, the left algebra
    is the embedded copy ``I_N x M_N``, the right algebra is the conjugated
    diagonal family above, and the ambient algebra is ``Delta_N x M_N``.
    ``relcomm_dim`` is the dimension of the right algebra's commutant inside
    the embedded M_N, expected to equal N; it reports the finite-level
    relative commutant of the associated tower.
    """
    spec = FourierSpec.of(spec)
    n = spec.dim
    u = require_hadamard(u, tol)
    if u.shape[0] != n:
        raise DimMismatch(f"matrix dimension {u.shape[0]} does not match spec {spec.orders}")
    if n > TOWER_DIM_CAP:
        raise OrderTooLarge(f"tower base square capped at dimension {TOWER_DIM_CAP}")

    w = fourier_tensor(spec)
    u1 = block_unitary(u, tol)
    eye = np.eye(n)
    diag = diagonal_algebra(n)
    algebra_stack = np.stack(
        [u1 @ np.kron(eye, w @ d @ dagger(w)) @ dagger(u1) for d in diag.basis]
    )
    algebra = AlgebraBasis(ambient_dim=n * n, basis=algebra_stack)

    left = tensor_algebra(scalar_algebra(n), full_matrix_algebra(n))
    ambient = tensor_algebra(diag, full_matrix_algebra(n))
    corner = scalar_algebra(n * n)

    square = is_commuting_square(
        corner, left, algebra, ambient, tol, nondegeneracy=n <= TOWER_NONDEG_CAP
    )
    relcomm = commutant(algebra, left, tol)
    return TowerBaseResult(
        algebra=algebra,
        commuting=square.commuting,
        nondegenerate=square.nondegenerate,
        relcomm_dim=relcomm.dim,
        max_commuting_err=square.max_commuting_err,
    )


def jones_projections(n: int) -> tuple[np.ndarray, np.ndarray]:
    """The two basic-construction projections for the diagonal inclusion.

    ``e1`` in M_n has every entry 1/n; ``e2`` in M_{n^2} is the 0/1 diagonal
    ``sum_i E_ii x E_ii``.  Both are selfadjoint idempotents of normalized
    trace 1/n.
    """
    if not 1 <= n <= 64:
        raise OrderOutOfRange(f"order must be in [1, 64], got {n}")
    e1 = np.full((n, n), 1.0 / n, dtype=complex)
    e2 = np.zeros((n * n, n * n), dtype=complex)
    idx = np.arange(n) * n + np.arange(n)
    e2[idx, idx] = 1.0
    return e1, e2
