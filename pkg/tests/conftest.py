"""Shared helpers for the test suite."""

import numpy as np


def haar_unitary(n: int, rng: np.random.Generator) -> np.ndarray:
    """Haar-distributed unitary via QR of a complex Gaussian matrix."""
    z = (rng.normal(size=(n, n)) + 1j * rng.normal(size=(n, n))) / np.sqrt(2)
    q, r = np.linalg.qr(z)
    return q * (np.diag(r) / np.abs(np.diag(r)))


def random_dpw(spec_orders, rng: np.random.Generator) -> np.ndarray:
    """Random normal-form matrix diag(phases) @ P @ W over the given orders."""
    from hadinv import fourier_tensor, perm_matrix

    w = fourier_tensor(spec_orders)
    n = w.shape[0]
    phases = np.exp(2j * np.pi * rng.random(n))
    return np.diag(phases) @ perm_matrix(rng.permutation(n)) @ w


def maxabs(a) -> float:
    return float(np.abs(np.asarray(a)).max())
