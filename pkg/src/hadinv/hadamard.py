"""Generators and normal forms for Hadamard matrices built from Fourier tensors.

The letter ``W`` below always denotes a Kronecker product of discrete
Fourier matrices ``F_{n_1} x ... x F_{n_k}``.  One global root-of-unity
convention, ``omega = exp(+2*pi*i/n)``, is used for both the Fourier matrix
and the clock diagonal; the identity and conjugation checks in
:mod:`hadinv.verify` hold exactly under this choice.
"""

from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatch,
    IndexOutOfRange,
    NotDpwForm,
    NotHadamard,
    OrderOutOfRange,
)
from .linalg import DEFAULT_TOL, ToleranceConfig, as_matrix, classify, dagger, tensor

__all__ = [
    "DIM_CAP",
    "FourierSpec",
    "DpwForm",
    "fourier",
    "fourier_tensor",
    "clock",
    "shift",
    "clock_vec",
    "shift_vec",
    "is_hadamard",
    "require_hadamard",
    "entry_diagonal",
    "block_unitary",
    "perm_matrix",
    "perm_phase_certificate",
    "decompose_dpw",
    "are_conjugate",
    "block_transpose",
    "is_biunitary",
]

DIM_CAP = 64


@dataclass(frozen=True)
class FourierSpec:
    """Factor orders (n_1, ..., n_k) of a Fourier tensor product."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        object.__setattr__(self, "orders", orders)
        if not orders:
            raise OrderOutOfRange("spec needs at least one factor")
        if any(n < 2 for n in orders):
            raise OrderOutOfRange(f"every factor order must be >= 2, got {orders}")
        if self.dim > DIM_CAP:
            raise OrderOutOfRange(f"product of orders {self.dim} exceeds cap {DIM_CAP}")

    @property
    def dim(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    @classmethod
    def of(cls, spec) -> "FourierSpec":
        if isinstance(spec, FourierSpec):
            return spec
        if isinstance(spec, int):
            return cls((spec,))
        return cls(tuple(spec))

    @classmethod
    def parse(cls, text: str) -> "FourierSpec":
        """Parse a comma list such as ``"2,3"``."""
        try:
            orders = tuple(int(part) for part in text.split(","))
        except ValueError as exc:
            raise OrderOutOfRange(f"cannot parse spec {text!r}") from exc
        return cls(orders)


def fourier(n: int) -> np.ndarray:
    """Discrete Fourier matrix ``(omega^{jk} / sqrt(n))`` with omega = exp(2*pi*i/n)."""
    if not 2 <= n <= DIM_CAP:
        raise OrderOutOfRange(f"fourier order must be in [2, {DIM_CAP}], got {n}")
    omega = np.exp(2j * np.pi / n)
    j, k = np.meshgrid(np.arange(n), np.arange(n), indexing="ij")
    return omega ** (j * k) / np.sqrt(n)


def fourier_tensor(spec) -> np.ndarray:
    """Left-to-right Kronecker product of the Fourier matrices of a spec."""
    spec = FourierSpec.of(spec)
    out = fourier(spec.orders[0])
    for n in spec.orders[1:]:
        out = tensor(out, fourier(n))
    return out


def clock(n: int, k: int) -> np.ndarray:
    """Diagonal ``diag(1, omega^k, omega^{2k}, ...)``; k-th power of the clock matrix."""
    if not 0 <= k <= n:
        raise IndexOutOfRange(f"clock power must be in [0, {n}], got {k}")
    omega = np.exp(2j * np.pi / n)
    return np.diag(omega ** (k * np.arange(n)))


def shift(n: int, k: int) -> np.ndarray:
    """Cyclic permutation sending basis vector e_j to e_{j-k mod n} (k-th power)."""
    if not 0 <= k <= n:
        raise IndexOutOfRange(f"shift power must be in [0, {n}], got {k}")
    m = np.zeros((n, n), dtype=complex)
    m[np.arange(n), (np.arange(n) + k) % n] = 1.0
    return m


def _check_vec(spec: FourierSpec, r) -> tuple[int, ...]:
    r = tuple(int(x) for x in r)
    if len(r) != len(spec.orders):
        raise IndexOutOfRange(f"vector length {len(r)} does not match spec {spec.orders}")
    for x, n in zip(r, spec.orders):
        if not 0 <= x <= n:
            raise IndexOutOfRange(f"component {x} out of range for order {n}")
    return r


def clock_vec(spec, r) -> np.ndarray:
    """Kronecker product of per-factor clock powers ``clock(n_i, r_i)``."""
    spec = FourierSpec.of(spec)
    r = _check_vec(spec, r)
    out = clock(spec.orders[0], r[0])
    for n, ri in zip(spec.orders[1:], r[1:]):
        out = tensor(out, clock(n, ri))
    return out


def shift_vec(spec, r) -> np.ndarray:
    """Kronecker product of per-factor shift powers ``shift(n_i, r_i)``."""
    spec = FourierSpec.of(spec)
    r = _check_vec(spec, r)
    out = shift(spec.orders[0], r[0])
    for n, ri in zip(spec.orders[1:], r[1:]):
        out = tensor(out, shift(n, ri))
    return out


def is_hadamard(m, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when unitary and every entry has modulus ``1/sqrt(N)``, within tolerance."""
    a = as_matrix(m)
    n = a.shape[0]
    if not classify(a, tol).unitary:
        return False
    return bool(np.abs(np.abs(a) - 1.0 / np.sqrt(n)).max() < tol.eps_entry)


def require_hadamard(m, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    a = as_matrix(m)
    if not is_hadamard(a, tol):
        raise NotHadamard("matrix is not complex Hadamard within tolerance")
    return a


def entry_diagonal(u, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Diagonal unitary of dimension N^2 carrying the rescaled conjugate entries of u.

    Entry (i*N + j) equals ``sqrt(N) * conj(u[i, j])``; the sqrt(N) factor
    makes the result unitary for Hadamard input.
    """
    u = require_hadamard(u, tol)
    n = u.shape[0]
    return np.diag(np.sqrt(n) * u.conj().reshape(-1))


def block_unitary(u, tol: ToleranceConfig = DEFAULT_TOL) -> np.ndarray:
    """Block-diagonal unitary ``(I_N x u) * entry_diagonal(u)`` of dimension N^2.

    Block i equals ``u @ diag(sqrt(N) * conj(u[i, :]))``.  For a Fourier
    tensor input this matrix factors as a block-diagonal permutation times
    ``I_N x u`` (checked in the verification suite).
    """
    u = require_hadamard(u, tol)
    n = u.shape[0]
    return tensor(np.eye(n), u) @ entry_diagonal(u, tol)


def perm_matrix(p) -> np.ndarray:
    """Permutation matrix with row i supported at column ``p[i]``."""
    p = np.asarray(p, dtype=int)
    n = p.size
    if sorted(p.tolist()) != list(range(n)):
        raise ValueError(f"not a permutation of 0..{n - 1}: {p.tolist()}")
    m = np.zeros((n, n), dtype=complex)
    m[np.arange(n), p] = 1.0
    return m


def _split_complex_permutation(m: np.ndarray) -> tuple[np.ndarray, np.ndarray]:
    """Split a complex permutation matrix into (row -> column map, row phases)."""
    perm = np.argmax(np.abs(m), axis=1)
    phases = m[np.arange(m.shape[0]), perm]
    return perm, phases


def perm_phase_certificate(u, v, tol: ToleranceConfig = DEFAULT_TOL):
    """Certificate that ``v = u @ P @ D`` for a permutation P and diagonal unitary D.

    Computes ``u* v``; when that product is a complex permutation matrix the
    pair generates one and the same subfactor, and the certificate
    ``(perm, phases)`` with ``P = perm_matrix(perm)`` and
    ``D = diag(phases)`` is returned.  Otherwise returns ``None``, which
    certifies that the two subfactors are distinct.
    """
    u = as_matrix(u)
    v = as_matrix(v)
    if u.shape != v.shape:
        raise DimMismatch(f"cannot compare {u.shape} with {v.shape}")
    m = dagger(u) @ v
    if not classify(m, tol).complex_permutation:
        return None
    perm, row_phases = _split_complex_permutation(m)
    # m = P D, so the diagonal phase sits at the column index of each row
    phases = np.zeros(m.shape[0], dtype=complex)
    phases[perm] = row_phases
    return perm, phases


@dataclass(frozen=True)
class DpwForm:
    """Normal form ``diag(phases) @ perm_matrix(perm) @ fourier_tensor(spec)``."""

    spec: FourierSpec
    perm: tuple[int, ...]
    phases: tuple[complex, ...]

    def __post_init__(self):
        spec = FourierSpec.of(self.spec)
        object.__setattr__(self, "spec", spec)
        perm = tuple(int(p) for p in self.perm)
        phases = tuple(complex(z) for z in self.phases)
        object.__setattr__(self, "perm", perm)
        object.__setattr__(self, "phases", phases)
        n = spec.dim
        if len(perm) != n or len(phases) != n:
            raise DimMismatch(f"perm/phases must have length {n}")
        if sorted(perm) != list(range(n)):
            raise ValueError(f"perm is not a permutation of 0..{n - 1}")
        moduli = np.abs(np.asarray(phases))
        if np.abs(moduli - 1.0).max() >= DEFAULT_TOL.eps_entry:
            raise ValueError("phases must have modulus one")

    @property
    def dim(self) -> int:
        return self.spec.dim

    def realize(self) -> np.ndarray:
        return np.diag(np.asarray(self.phases)) @ perm_matrix(self.perm) @ fourier_tensor(self.spec)


def decompose_dpw(x, spec, tol: ToleranceConfig = DEFAULT_TOL) -> DpwForm:
    """Factor a Hadamard matrix as ``D @ P @ W`` against the spec's Fourier tensor.

    ``x @ W*`` must be a complex permutation matrix; row i then carries the
    phase ``D[i]`` at column ``perm[i]``.  The factorization is unique.
    """
    spec = FourierSpec.of(spec)
    x = require_hadamard(x, tol)
    if x.shape[0] != spec.dim:
        raise DimMismatch(f"matrix dimension {x.shape[0]} does not match spec {spec.orders}")
    m = x @ dagger(fourier_tensor(spec))
    if not classify(m, tol).complex_permutation:
        raise NotDpwForm("input is not diagonal * permutation * Fourier tensor for this spec")
    perm, phases = _split_complex_permutation(m)
    return DpwForm(spec=spec, perm=tuple(perm.tolist()), phases=tuple(phases.tolist()))


def are_conjugate(x, y, spec, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """True when both normal forms share one permutation.

    Equality of the permutation parts certifies that the two subfactors are
    conjugate by an inner automorphism (implemented by the quotient of the
    two diagonals).  Raises ``NotDpwForm`` when either input fails to
    decompose.
    """
    fx = decompose_dpw(x, spec, tol)
    fy = decompose_dpw(y, spec, tol)
    return fx.perm == fy.perm


def block_transpose(m, n: int, k: int) -> np.ndarray:
    """Swap the outer (M_n) indices of ``m`` in ``M_n x M_k``, fixing the inner ones."""
    m = as_matrix(m)
    if m.shape[0] != n * k:
        raise DimMismatch(f"dimension {m.shape[0]} is not {n}*{k}")
    return m.reshape(n, k, n, k).transpose(2, 1, 0, 3).reshape(n * k, n * k)


def is_biunitary(m, n: int, k: int, tol: ToleranceConfig = DEFAULT_TOL) -> bool:
    """Unitary whose block-transpose is also unitary."""
    m = as_matrix(m)
    if m.shape[0] != n * k:
        raise DimMismatch(f"dimension {m.shape[0]} is not {n}*{k}")
    eps = tol.eps_entry
    eye = np.eye(n * k)
    if np.abs(m @ dagger(m) - eye).max() >= eps:
        return False
    bt = block_transpose(m, n, k)
    return bool(np.abs(bt @ dagger(bt) - eye).max() < eps)
