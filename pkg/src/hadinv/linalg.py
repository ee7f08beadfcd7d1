"""Dense complex matrix kernel over the normalized trace inner product.

Everything else in the package is built on this module: Kronecker products,
unitary conjugation, structural classification, the inner product
``<A, B> = tr(B* A) / N``, Gram-Schmidt orthonormalization in that inner
product, and subspace intersection via a stacked null-space computation.

Matrices are plain complex ndarrays.  Comparisons are absolute and
per-entry; all identities checked downstream are exact in exact arithmetic,
so a failure at the default thresholds signals a bug rather than
conditioning.  Indices are 0-based throughout.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DimMismatch, NonUnitary

__all__ = [
    "ToleranceConfig",
    "DEFAULT_TOL",
    "MatrixClass",
    "as_matrix",
    "dagger",
    "tensor",
    "ad",
    "classify",
    "trace_inner",
    "frobenius_norm",
    "orthonormal_basis",
    "nullspace",
    "subspace_intersection",
]


@dataclass(frozen=True)
class ToleranceConfig:
    """Numerical thresholds.

    ``eps_entry`` is the absolute per-entry comparison threshold;
    ``eps_rank`` is the pivot threshold for linear-independence decisions.
    """

    eps_entry: float = 1e-9
    eps_rank: float = 1e-8

    def __post_init__(self):
        for name in ("eps_entry", "eps_rank"):
            value = getattr(self, name)
            if not 0.0 < value < 1e-2:
                raise ValueError(f"{name} must lie in (0, 1e-2), got {value!r}")


DEFAULT_TOL = ToleranceConfig()


@dataclass(frozen=True)
class MatrixClass:
    """Structural flags of a square matrix, each decided within eps_entry.

    ``complex_permutation`` means exactly one entry of modulus one per row
    and per column with every other entry negligible; ``permutation``
    additionally requires the surviving entries to equal one.
    """

    unitary: bool = False
    diagonal: bool = False
    permutation: bool = False
    complex_permutation: bool = False
    selfadjoint: bool = False
    projection: bool = False


def as_matrix(m) -> np.ndarray:
    """Coerce to a square complex ndarray with finite entries."""
    arr = np.asarray(m, dtype=complex)
    if arr.ndim != 2 or arr.shape[0] != arr.shape[1] or arr.shape[0] < 1:
        raise ValueError(f"expected a square matrix, got shape {arr.shape}")
    if not np.isfinite(arr).all():
        raise ValueError("matrix entries must be finite")
    return arr


def dagger(m: np.ndarray) -> np.ndarray:
    """Conjugate transpose."""
    return np.asarray(m).conj().T


def tensor(a, b) -> np.ndarray:
    """Kronecker product; block (i, j) of the result equals ``a[i, j] * b``."""
    return np.kron(as_matrix(a), as_matrix(b))


def _is_unitary(a: np.ndarray, eps: float) -> bool:
    n = a.shape[0]
    return bool(np.abs(a @ dagger(a) - np.eye(n)).max() < eps)


def ad(u, x, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Conjugation ``u x u*`` by a unitary; preserves trace and spectrum."""
    u = as_matrix(u)
    x = as_matrix(x)
    if u.shape != x.shape:
        raise DimMismatch(f"cannot conjugate {x.shape} by {u.shape}")
    if not _is_unitary(u, tol.eps_entry):
        raise NonUnitary("conjugating matrix is not unitary within tolerance")
    return u @ x @ dagger(u)


def classify(m, tol: ToleranceConfig = DEFAULT_TOL) -> MatrixClass:
    """Classify a matrix by per-entry comparison within ``tol.eps_entry``."""
    a = as_matrix(m)
    n = a.shape[0]
    eps = tol.eps_entry
    mag = np.abs(a)

    unitary = _is_unitary(a, eps)
    diagonal = bool(np.abs(a - np.diag(np.diag(a))).max() < eps)

    big = mag > eps
    one_per_line = bool((big.sum(axis=0) == 1).all() and (big.sum(axis=1) == 1).all())
    complex_permutation = one_per_line and bool(np.abs(mag[big] - 1.0).max() < eps)
    permutation = complex_permutation and bool(np.abs(a[big] - 1.0).max() < eps)

    selfadjoint = bool(np.abs(a - dagger(a)).max() < eps)
    projection = selfadjoint and bool(np.abs(a @ a - a).max() < eps)

    return MatrixClass(
        unitary=unitary,
        diagonal=diagonal,
        permutation=permutation,
        complex_permutation=complex_permutation,
        selfadjoint=selfadjoint,
        projection=projection,
    )


def trace_inner(a, b) -> complex:
    """Normalized trace pairing ``tr(b* a) / N``; linear in ``a``."""
    a = as_matrix(a)
    b = as_matrix(b)
    if a.shape != b.shape:
        raise DimMismatch(f"trace pairing of {a.shape} with {b.shape}")
    return complex(np.vdot(b, a) / a.shape[0])


def frobenius_norm(m) -> float:
    return float(np.linalg.norm(np.asarray(m)))


def orthonormal_basis(mats, tol: ToleranceConfig = DEFAULT_TOL) -> list[np.ndarray]:
    """Gram-Schmidt in the trace inner product.

    Returns a trace-orthonormal basis of the span of ``mats``; vectors whose
    post-projection norm falls below ``tol.eps_rank`` are discarded, so the
    output length is the rank of the input family.
    """
    basis: list[np.ndarray] = []
    for m in mats:
        v = as_matrix(m)
        if basis and v.shape != basis[0].shape:
            raise DimMismatch("all matrices must share one dimension")
        n = v.shape[0]
        # second projection pass controls roundoff from nearly dependent inputs
        for _ in range(2):
            for g in basis:
                v = v - (np.vdot(g, v) / n) * g
        norm = float(np.sqrt(np.vdot(v, v).real / n))
        if norm > tol.eps_rank:
            basis.append(v / norm)
    return basis


def nullspace(m: np.ndarray, eps: float) -> np.ndarray:
    """Orthonormal kernel basis, as columns, of an (possibly tall) matrix."""
    m = np.asarray(m, dtype=complex)
    rows, cols = m.shape
    if cols == 0:
        return np.zeros((0, 0), dtype=complex)
    # reduced SVD suffices for tall systems; wide ones need the full V for
    # the kernel rows beyond min(rows, cols)
    _, s, vh = np.linalg.svd(m, full_matrices=rows < cols)
    rank = int((s > eps).sum())
    return vh[rank:].conj().T


def subspace_intersection(a, b, tol: ToleranceConfig = DEFAULT_TOL) -> list[np.ndarray]:
    """Trace-orthonormal basis of ``span(a) & span(b)``.

    Flattens the matrices to vectors, stacks the coefficient system
    ``[A | -B]``, computes its kernel, and maps the A-side kernel
    coordinates back to matrices.  The dimension of the result is invariant
    under permutations of either input family.
    """
    abasis = orthonormal_basis(a, tol)
    bbasis = orthonormal_basis(b, tol)
    if not abasis or not bbasis:
        return []
    if abasis[0].shape != bbasis[0].shape:
        raise DimMismatch("subspace intersection needs one ambient dimension")

    stacked = np.stack([m.reshape(-1) for m in abasis] + [-m.reshape(-1) for m in bbasis], axis=1)
    kernel = nullspace(stacked, tol.eps_rank)

    astack = np.stack(abasis)
    members = [np.tensordot(coeff[: len(abasis)], astack, axes=1) for coeff in kernel.T]
    return orthonormal_basis(members, tol)
