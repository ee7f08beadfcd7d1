"""Assembled invariants of a pair of Hadamard matrices over one spec.

A pair report collects: distinctness and conjugacy certificates, the
dimension of the intersection algebra ``U Delta U* & V Delta V*`` (computed
generically by subspace intersection and, independently, as the order of
the extracted subgroup — the two must agree), the index value N^2/dimA as
an exact rational, the relative commutant of the intersection inside the
diagonal algebra, the vertex-model criterion dimA == 1, and the modified
relative entropy together with its upper bound ``log(N / dimA)``.

All logarithms are natural.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from .algebra import commutant, diag_conj_algebra, diagonal_algebra, intersect_algebras
from .errors import DimMismatch, DomainError, NonUnitary, NotClosed, NotDpwForm, OracleMismatch, OrderTooLarge
from .groups import GroupStructure, SubgroupSet, divisors, extract_subgroup, realize_subgroup
from .hadamard import (
    FourierSpec,
    are_conjugate,
    fourier_tensor,
    perm_matrix,
    perm_phase_certificate,
    require_hadamard,
)
from .linalg import DEFAULT_TOL, ToleranceConfig, as_matrix, classify, dagger

__all__ = [
    "eta",
    "modified_entropy",
    "InvariantReport",
    "pair_report",
    "realization_sweep",
    "random_conjugate_pair",
]


def eta(t: float) -> float:
    """The entropy kernel ``t -> -t log t`` on [0, 1], with ``eta(0) = 0``."""
    if t < 0.0 or t > 1.0:
        raise DomainError(f"argument must lie in [0, 1], got {t!r}")
    if t == 0.0:
        return 0.0
    return float(-t * math.log(t))


def _eta_array(values: np.ndarray) -> np.ndarray:
    safe = np.clip(values, 0.0, 1.0)
    out = np.zeros_like(safe)
    positive = safe > 0.0
    out[positive] = -safe[positive] * np.log(safe[positive])
    return out


def modified_entropy(u, v, tol: ToleranceConfig = DEFAULT_TOL) -> float:
    """Modified relative entropy of the pair: ``(1/N) sum eta(|(u* v)_ij|^2)``.

    Defined for any two unitaries of one dimension; the squared moduli of
    ``u* v`` form a doubly stochastic matrix, which is asserted before
    summing.  Natural-log units; ranges over [0, log N].
    """
    u = as_matrix(u)
    v = as_matrix(v)
    if u.shape != v.shape:
        raise DimMismatch(f"cannot compare {u.shape} with {v.shape}")
    if not classify(u, tol).unitary or not classify(v, tol).unitary:
        raise NonUnitary("entropy needs two unitary matrices")
    n = u.shape[0]
    profile = np.abs(dagger(u) @ v) ** 2
    row_err = np.abs(profile.sum(axis=1) - 1.0).max()
    col_err = np.abs(profile.sum(axis=0) - 1.0).max()
    if max(row_err, col_err) > 1e-9:
        raise OracleMismatch("squared-modulus profile failed the doubly stochastic check")
    return float(_eta_array(profile).sum() / n)


@dataclass(frozen=True)
class InvariantReport:
    """Pair invariants; ``certified`` marks a distinct conjugate pair with verified subgroup.

    ``index`` is the exact rational N^2/dimA.  When the pair is not
    distinct-and-conjugate the value is still reported but flagged as a
    formula value with unverified hypotheses.
    """

    n: int
    spec: tuple[int, ...]
    distinct: bool
    conjugate: bool
    dim_a: int
    subgroup: SubgroupSet | None
    index: Fraction
    relcomm_dims: int
    vertex: bool
    entropy_h: float
    entropy_upper: float
    certified: bool
    flags: tuple[str, ...]


def pair_report(u, v, spec, tol: ToleranceConfig = DEFAULT_TOL) -> InvariantReport:
    """Compute every pair invariant, cross-checked between independent routes.

    The intersection dimension is computed generically (subspace
    intersection of the two conjugated diagonal algebras) and compared with
    the extracted subgroup order whenever the latter is available; any
    disagreement raises ``OracleMismatch``.
    """
    spec = FourierSpec.of(spec)
    n = spec.dim
    u = as_matrix(u)
    v = as_matrix(v)
    if u.shape[0] != n or v.shape[0] != n:
        raise DimMismatch(f"matrices must have dimension {n} for spec {spec.orders}")
    require_hadamard(u, tol)
    require_hadamard(v, tol)

    flags: list[str] = []
    identical = bool(np.abs(u - v).max() <= tol.eps_entry)
    if identical:
        flags.append("identical")

    distinct = perm_phase_certificate(u, v, tol) is None

    conjugate = False
    try:
        conjugate = are_conjugate(u, v, spec, tol)
    except NotDpwForm:
        flags.append("not-dpw-form")

    inter = intersect_algebras(diag_conj_algebra(u, tol), diag_conj_algebra(v, tol), tol)
    dim_a = inter.dim

    subgroup: SubgroupSet | None = None
    if identical:
        flags.append("subgroup-skipped-identical")
    else:
        try:
            subgroup = extract_subgroup(u, v, GroupStructure(spec.orders), tol)
        except NotClosed:
            flags.append("subgroup-not-closed")

    if subgroup is not None and subgroup.size != dim_a:
        raise OracleMismatch(
            f"subgroup order {subgroup.size} disagrees with intersection dimension {dim_a}"
        )
    if not 1 <= dim_a <= n:
        raise OracleMismatch(f"intersection dimension {dim_a} outside [1, {n}]")

    index = Fraction(n * n, dim_a)
    relcomm_dims = commutant(inter, diagonal_algebra(n), tol).dim
    vertex = dim_a == 1
    entropy = modified_entropy(u, v, tol)
    upper = math.log(n / dim_a)

    if not -1e-12 <= entropy <= math.log(n) + 1e-12:
        raise OracleMismatch(f"entropy {entropy} outside [0, log {n}]")
    if conjugate and entropy > upper + 1e-9:
        raise OracleMismatch(
            f"entropy {entropy} exceeds the bound log(N/dimA) = {upper} on a conjugate pair"
        )

    certified = distinct and conjugate and subgroup is not None
    if not certified:
        flags.append("hypotheses-unverified")

    return InvariantReport(
        n=n,
        spec=spec.orders,
        distinct=distinct,
        conjugate=conjugate,
        dim_a=dim_a,
        subgroup=subgroup,
        index=index,
        relcomm_dims=relcomm_dims,
        vertex=vertex,
        entropy_h=entropy,
        entropy_upper=upper,
        certified=certified,
        flags=tuple(flags),
    )


REALIZATION_ORDER_CAP = 16


def realization_sweep(spec, tol: ToleranceConfig = DEFAULT_TOL):
    """Realize every divisor vector of the spec and report the pair invariants.

    For each vector (m_i | n_i) the constructed pair must come out with
    ``dimA = prod(m_i)`` and ``index = N^2 / prod(m_i)``; a miss raises
    ``OracleMismatch``.  Returns ``[(divisor_vector, report), ...]`` in
    lexicographic order.
    """
    spec = FourierSpec.of(spec)
    n = spec.dim
    if n > REALIZATION_ORDER_CAP:
        raise OrderTooLarge(f"realization sweep capped at order {REALIZATION_ORDER_CAP}")

    rows = []
    for mvec in itertools.product(*[divisors(order) for order in spec.orders]):
        u, v = realize_subgroup(spec, mvec, tol)
        report = pair_report(u, v, spec, tol)
        expected = 1
        for m in mvec:
            expected *= m
        if report.dim_a != expected or report.index != Fraction(n * n, expected):
            raise OracleMismatch(
                f"divisors {mvec}: report dimA {report.dim_a} / index {report.index} "
                f"disagree with expected {expected} / {Fraction(n * n, expected)}"
            )
        rows.append((mvec, report))
    return rows


def random_conjugate_pair(spec, rng: np.random.Generator) -> tuple[np.ndarray, np.ndarray]:
    """Sample a conjugate pair: shared uniform permutation, i.i.d. unit phases.

    Returns ``(D P W, D~ P W)``; sharing the permutation makes the two
    normal forms conjugate by construction.
    """
    spec = FourierSpec.of(spec)
    n = spec.dim
    w = fourier_tensor(spec)
    shared = perm_matrix(rng.permutation(n)) @ w
    phases_u = np.exp(2j * np.pi * rng.random(n))
    phases_v = np.exp(2j * np.pi * rng.random(n))
    return np.diag(phases_u) @ shared, np.diag(phases_v) @ shared
