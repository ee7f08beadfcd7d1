"""The product group Z_{n_1} x ... x Z_{n_k} behind a spec, and its subgroups.

A matrix pair (U, V) of one dimension singles out the exponent vectors r
for which the clock conjugate ``U D_r U*`` lands inside ``V Delta V*``;
that set is automatically closed under addition and is the subgroup
governing the pair's index invariant.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass

import numpy as np

from .errors import (
    DimMismatch,
    NotClosed,
    NotDivisor,
    OrderTooLarge,
    RealizationFailed,
)
from .hadamard import FourierSpec, clock_vec, fourier_tensor, require_hadamard
from .linalg import DEFAULT_TOL, ToleranceConfig, as_matrix, dagger

__all__ = [
    "GroupStructure",
    "SubgroupSet",
    "elements",
    "is_subgroup",
    "all_subgroups",
    "extract_subgroup",
    "divisors",
    "realize_subgroup",
]

SUBGROUP_ENUM_CAP = 16


@dataclass(frozen=True)
class GroupStructure:
    """Finite abelian group given by cyclic factor orders."""

    orders: tuple[int, ...]

    def __post_init__(self):
        orders = tuple(int(n) for n in self.orders)
        object.__setattr__(self, "orders", orders)
        if not orders or any(n < 2 for n in orders):
            raise ValueError(f"factor orders must all be >= 2, got {orders}")

    @property
    def order(self) -> int:
        out = 1
        for n in self.orders:
            out *= n
        return out

    @classmethod
    def of(cls, group) -> "GroupStructure":
        if isinstance(group, GroupStructure):
            return group
        if isinstance(group, FourierSpec):
            return cls(group.orders)
        return cls(tuple(group))

    def add(self, a: tuple[int, ...], b: tuple[int, ...]) -> tuple[int, ...]:
        return tuple((x + y) % n for x, y, n in zip(a, b, self.orders))

    @property
    def identity(self) -> tuple[int, ...]:
        return (0,) * len(self.orders)


def elements(group) -> list[tuple[int, ...]]:
    """All group elements in lexicographic order."""
    group = GroupStructure.of(group)
    if group.order > 64:
        raise OrderTooLarge(f"group order {group.order} exceeds 64")
    return list(itertools.product(*[range(n) for n in group.orders]))


def is_subgroup(group, members) -> bool:
    """True when the set contains the identity and is closed under addition."""
    group = GroupStructure.of(group)
    mset = {tuple(int(x) for x in m) for m in members}
    if group.identity not in mset:
        return False
    return all(group.add(a, b) in mset for a in mset for b in mset)


@dataclass(frozen=True)
class SubgroupSet:
    """A verified subgroup; construction raises ``NotClosed`` otherwise."""

    orders: tuple[int, ...]
    members: frozenset[tuple[int, ...]]

    def __post_init__(self):
        group = GroupStructure(self.orders)
        members = frozenset(tuple(int(x) for x in m) for m in self.members)
        object.__setattr__(self, "orders", group.orders)
        object.__setattr__(self, "members", members)
        if not is_subgroup(group, members):
            raise NotClosed(
                f"set of size {len(members)} is not a subgroup of {group.orders}",
                members=members,
            )
        if group.order % len(members) != 0:
            raise NotClosed(  # unreachable for a closed set; kept as a hard guard
                f"size {len(members)} does not divide {group.order}", members=members
            )

    @property
    def size(self) -> int:
        return len(self.members)

    def sorted_members(self) -> list[tuple[int, ...]]:
        return sorted(self.members)


def extract_subgroup(u, v, group, tol: ToleranceConfig = DEFAULT_TOL) -> SubgroupSet:
    """Exponent vectors r with ``V* U D_r U* V`` diagonal, verified as a subgroup.

    For distinct conjugate normal-form pairs over one spec this is the
    subgroup whose order equals the dimension of the intersection algebra.
    """
    group = GroupStructure.of(group)
    u = as_matrix(u)
    v = as_matrix(v)
    n = group.order
    if u.shape[0] != n or v.shape[0] != n:
        raise DimMismatch(f"matrices must have dimension {n}")
    if np.abs(u - v).max() <= tol.eps_entry:
        raise ValueError("matrices are identical within tolerance; the pair is degenerate")

    spec = FourierSpec(group.orders)
    left = dagger(v) @ u
    right = dagger(u) @ v
    found = []
    for r in elements(group):
        m = left @ clock_vec(spec, r) @ right
        off = m - np.diag(np.diag(m))
        if np.abs(off).max() < tol.eps_entry:
            found.append(r)
    return SubgroupSet(orders=group.orders, members=frozenset(found))


def all_subgroups(group) -> list[SubgroupSet]:
    """Every subgroup, found by closing generator sets; sorted by size then members."""
    group = GroupStructure.of(group)
    if group.order > SUBGROUP_ENUM_CAP:
        raise OrderTooLarge(f"subgroup enumeration capped at order {SUBGROUP_ENUM_CAP}")

    all_elems = elements(group)

    def close(gens: frozenset[tuple[int, ...]]) -> frozenset[tuple[int, ...]]:
        closed = set(gens) | {group.identity}
        frontier = list(closed)
        while frontier:
            a = frontier.pop()
            for b in list(closed):
                for c in (group.add(a, b), group.add(b, a)):
                    if c not in closed:
                        closed.add(c)
                        frontier.append(c)
        return frozenset(closed)

    found = {frozenset([group.identity])}
    frontier = [frozenset([group.identity])]
    while frontier:
        base = frontier.pop()
        for g in all_elems:
            if g in base:
                continue
            grown = close(base | {g})
            if grown not in found:
                found.add(grown)
                frontier.append(grown)

    subgroups = [SubgroupSet(orders=group.orders, members=m) for m in found]
    subgroups.sort(key=lambda s: (s.size, s.sorted_members()))
    return subgroups


def divisors(n: int) -> list[int]:
    return [d for d in range(1, n + 1) if n % d == 0]


def _staircase(n: int, m: int) -> np.ndarray:
    """Diagonal certifying the order-m subgroup of Z_n for the pair (W, D W).

    For m >= 2 this is the block staircase ``diag(zeta^(j // (n/m)))`` with
    ``zeta = exp(2*pi*i/m)``: its phase-difference sequences are constant
    exactly at multiples of n/m.  For m = 1 no staircase exists (it would be
    scalar), so a diagonal with every difference sequence non-constant is
    used instead; ``diag(1, i, i, ..., i)`` works for every n >= 2.
    """
    if m == 1:
        d = np.full(n, 1j, dtype=complex)
        d[0] = 1.0
        return np.diag(d)
    block = n // m
    zeta = np.exp(2j * np.pi / m)
    return np.diag(zeta ** (np.arange(n) // block))


def realize_subgroup(spec, divisor_vec, tol: ToleranceConfig = DEFAULT_TOL):
    """Pair (U, V) over the spec whose extracted subgroup has order ``prod(m_i)``.

    ``U`` is the spec's Fourier tensor and ``V = (D_1 x ... x D_k) U`` with
    per-factor staircase diagonals.  The pair is verified against
    ``extract_subgroup`` before being returned; a verification miss raises
    ``RealizationFailed`` rather than returning an unverified pair.
    """
    spec = FourierSpec.of(spec)
    mvec = tuple(int(m) for m in divisor_vec)
    if len(mvec) != len(spec.orders):
        raise NotDivisor(f"divisor vector length {len(mvec)} does not match spec {spec.orders}")
    for m, n in zip(mvec, spec.orders):
        if m < 1 or n % m != 0:
            raise NotDivisor(f"{m} does not divide {n}")

    u = fourier_tensor(spec)
    diag = _staircase(spec.orders[0], mvec[0])
    for n, m in zip(spec.orders[1:], mvec[1:]):
        diag = np.kron(diag, _staircase(n, m))
    v = diag @ u
    require_hadamard(v, tol)

    expected = 1
    for m in mvec:
        expected *= m
    try:
        found = extract_subgroup(u, v, GroupStructure(spec.orders), tol)
    except NotClosed as exc:
        raise RealizationFailed(f"extracted set not closed for divisors {mvec}") from exc
    if found.size != expected:
        raise RealizationFailed(
            f"divisors {mvec}: expected subgroup order {expected}, extracted {found.size}"
        )
    return u, v
