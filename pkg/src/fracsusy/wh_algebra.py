"""Truncated matrix representations of the Z_k-graded Weyl-Heisenberg algebra W_k.

The Fock basis is ``|n, s>`` with level ``n = 0..n_max`` and grade
``s = 0..k-1``, ordered lexicographically in ``(n, s)`` so the flat index of
``|n, s>`` is ``n*k + s``.  A member of W_k is fixed by its gap functions
``f_s(n)``; the structure functions ``F_s(n)`` follow from the recurrence
``F_{s+1}(n+1) - F_s(n) = f_s(n)``, ``F_s(0) = 0``.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping

import numpy as np

from .exceptions import InadmissibleSpec, NegativeStructureFunction

__all__ = [
    "GradedSpace",
    "LinearSpec",
    "CyclicSpec",
    "TabulatedSpec",
    "AlgebraRep",
    "RelationReport",
    "build_space",
    "structure_F",
    "structure_table",
    "build_rep",
    "projectors",
    "grade_indicators",
    "interior_projector",
    "gap_operator",
    "scaled_residual",
    "verify_wk_relations",
]

# roundoff allowance when an accumulated F should be exactly zero
_NEG_SLACK = 1e-12


@dataclass(frozen=True)
class GradedSpace:
    """Truncated Z_k-graded Fock space with ``k*(n_max+1)`` basis states."""

    k: int
    n_max: int

    @property
    def dim(self) -> int:
        return self.k * (self.n_max + 1)

    @property
    def basis(self) -> list[tuple[int, int]]:
        return [(n, s) for n in range(self.n_max + 1) for s in range(self.k)]

    @property
    def levels(self) -> np.ndarray:
        """Level ``n`` of every basis state, in basis order."""
        return np.repeat(np.arange(self.n_max + 1), self.k)

    @property
    def grades(self) -> np.ndarray:
        """Grade ``s`` of every basis state, in basis order."""
        return np.tile(np.arange(self.k), self.n_max + 1)

    def index(self, n: int, s: int) -> int:
        return n * self.k + (s % self.k)


def build_space(k: int, n_max: int) -> GradedSpace:
    """Return the truncated graded space for order ``k`` and top level ``n_max``."""
    if int(k) != k or k < 2:
        raise ValueError(f"grading order k must be an integer >= 2, got {k!r}")
    if int(n_max) != n_max or n_max < 2 * k:
        raise ValueError(f"n_max must be an integer >= 2k = {2 * k}, got {n_max!r}")
    return GradedSpace(int(k), int(n_max))


@dataclass(frozen=True)
class LinearSpec:
    """Gap functions ``f_s(n) = a*n + b``, the same for every grade."""

    a: float
    b: float

    k = None

    def gap(self, s, n):
        return self.a * np.asarray(n, dtype=float) + self.b

    @property
    def admissible(self) -> bool:
        a, b = self.a, self.b
        return (a == 0 and b > 0) or (a > 0 and b >= 0) or (a < 0 and b >= 0)

    @property
    def degenerate_first_gap(self) -> bool:
        # f(0) = b = 0 is admitted for a > 0 but gives a zero first gap
        return self.b == 0

    @property
    def cutoff(self) -> int | None:
        """Highest level of the finite spectrum when ``a < 0``, else ``None``."""
        if self.a >= 0:
            return None
        ratio = -self.b / self.a
        if ratio == math.floor(ratio):
            raise InadmissibleSpec(
                f"-b/a = {ratio:g} is an integer: the gap a*n + b vanishes at n = {ratio:g}"
            )
        return math.floor(ratio)

    def top(self, n_max: int) -> int:
        cut = self.cutoff
        return n_max if cut is None else min(n_max, cut)


@dataclass(frozen=True)
class CyclicSpec:
    """Level-independent gaps ``f_s(n) = f[s]``."""

    f: tuple[float, ...]

    def __post_init__(self):
        object.__setattr__(self, "f", tuple(float(x) for x in self.f))
        if len(self.f) < 2:
            raise ValueError("a cyclic spec needs at least two gaps")

    @property
    def k(self) -> int:
        return len(self.f)

    def gap(self, s, n):
        fs = np.asarray(self.f)[np.asarray(s) % self.k]
        return np.broadcast_to(fs, np.broadcast(np.asarray(s), np.asarray(n)).shape).astype(float)

    @property
    def strictly_positive(self) -> bool:
        return all(x > 0 for x in self.f)

    def top(self, n_max: int) -> int:
        return n_max


@dataclass(frozen=True, eq=False)
class TabulatedSpec:
    """Arbitrary gaps ``f_s(n)`` read from a ``(k, L)`` table.

    Levels below zero evaluate to 0 (they only appear in shifted arguments of
    the Hamiltonian); levels at or beyond ``L`` are an error.
    """

    table: np.ndarray

    def __post_init__(self):
        arr = np.array(self.table, dtype=float)
        if arr.ndim != 2 or arr.shape[0] < 2:
            raise ValueError("table must have shape (k, L) with k >= 2")
        arr.setflags(write=False)
        object.__setattr__(self, "table", arr)

    @classmethod
    def from_mapping(cls, values: Mapping[tuple[int, int], float], k: int) -> "TabulatedSpec":
        length = 1 + max(n for _, n in values)
        arr = np.zeros((k, length))
        for (s, n), v in values.items():
            arr[s, n] = v
        return cls(arr)

    @property
    def k(self) -> int:
        return self.table.shape[0]

    def gap(self, s, n):
        s, n = np.broadcast_arrays(np.asarray(s) % self.k, np.asarray(n))
        if np.any(n >= self.table.shape[1]):
            raise InadmissibleSpec(
                f"tabulated gaps stop at n = {self.table.shape[1] - 1}, needed n = {int(n.max())}"
            )
        out = np.zeros(n.shape)
        ok = n >= 0
        out[ok] = self.table[s[ok], n[ok]]
        return out

    def top(self, n_max: int) -> int:
        return n_max


def _order(spec, k):
    if spec.k is None:
        return 1 if k is None else k
    if k is not None and k != spec.k:
        raise ValueError(f"spec has k = {spec.k}, space has k = {k}")
    return spec.k


def structure_F(spec, s: int, n: int, k: int | None = None) -> float:
    """Accumulate ``F_s(n)`` from ``F(0) = 0`` along the raising chain.

    Walks ``F_{s-n}(0) -> F_{s-n+1}(1) -> ... -> F_s(n)`` adding one gap per
    step.  This is the brute-force reference for every closed form.
    """
    k = _order(spec, k)
    if n < 0:
        raise ValueError("level n must be non-negative")
    total = 0.0
    for j in range(n):
        total += float(spec.gap((s - n + j) % k, j))
    return total


def structure_table(spec, k: int, n_max: int) -> np.ndarray:
    """Array ``F[n, s]`` of structure functions for ``n <= n_max``."""
    k = _order(spec, k)
    F = np.zeros((n_max + 1, k))
    grades = np.arange(k)
    for n in range(n_max):
        F[n + 1, (grades + 1) % k] = F[n, grades] + spec.gap(grades, np.full(k, n))
    return F


@dataclass(frozen=True, eq=False)
class AlgebraRep:
    """Matrices of ``X+``, ``X-``, ``N`` and ``K`` on a truncated graded space.

    ``top`` is the highest level on which the representation is active; it is
    below ``n_max`` only for finite-spectrum families, whose remaining levels
    are zero-padded.
    """

    space: GradedSpace
    spec: object
    Xplus: np.ndarray
    Xminus: np.ndarray
    Nop: np.ndarray
    Kop: np.ndarray
    q: complex
    p: complex
    top: int

    @property
    def k(self) -> int:
        return self.space.k

    @property
    def XX(self) -> np.ndarray:
        """``X+ X-``."""
        return self.Xplus @ self.Xminus


def _frozen(arr):
    arr.setflags(write=False)
    return arr


def build_rep(space: GradedSpace, spec) -> AlgebraRep:
    """Build the matrix representation of W_k for ``spec`` on ``space``.

    ``<n+1, s+1 | X+ | n, s> = sqrt(F_{s+1}(n+1))`` for ``n < top``; ``X+``
    annihilates level ``top``.  ``X-`` is the adjoint of ``X+``.

    Raises
    ------
    NegativeStructureFunction
        If some ``F_s(n)`` with ``n <= top`` is negative.
    """
    k = space.k
    _order(spec, k)
    top = spec.top(space.n_max)
    if top < 0:
        raise InadmissibleSpec(f"{spec!r} has no admissible levels")
    F = structure_table(spec, k, space.n_max)
    dim = space.dim
    xp = np.zeros((dim, dim), dtype=complex)
    for n in range(top):
        for s in range(k):
            t = (s + 1) % k
            val = F[n + 1, t]
            if val < -_NEG_SLACK:
                raise NegativeStructureFunction(t, n + 1, val)
            xp[space.index(n + 1, t), space.index(n, s)] = math.sqrt(max(val, 0.0))
    q = np.exp(2j * np.pi / k)
    nop = np.diag(space.levels.astype(complex))
    kop = np.diag(q ** space.grades)
    return AlgebraRep(
        space=space,
        spec=spec,
        Xplus=_frozen(xp),
        Xminus=_frozen(xp.conj().T.copy()),
        Nop=_frozen(nop),
        Kop=_frozen(kop),
        q=complex(q),
        p=complex(np.conj(q)),
        top=top,
    )


def projectors(rep: AlgebraRep) -> list[np.ndarray]:
    """Grade projectors ``Pi_s = (1/k) sum_t p^(s t) K^t`` from the Klein operator."""
    k = rep.k
    powers = [np.linalg.matrix_power(rep.Kop, t) for t in range(k)]
    return [sum(rep.p ** (s * t) * powers[t] for t in range(k)) / k for s in range(k)]


def grade_indicators(space: GradedSpace) -> list[np.ndarray]:
    """Diagonal 0/1 indicators of each grade, the direct form of ``Pi_s``."""
    return [np.diag((space.grades == s).astype(float)) for s in range(space.k)]


def interior_projector(space: GradedSpace, guard: int, top: int | None = None) -> np.ndarray:
    """Diagonal indicator of levels ``n <= top - guard`` (``top`` defaults to ``n_max``)."""
    top = space.n_max if top is None else top
    return np.diag((space.levels <= top - guard).astype(float))


def gap_operator(rep: AlgebraRep, shift=0, pis=None) -> np.ndarray:
    """``sum_s f_s(N + shift) Pi_s``, the right side of ``[X-, X+]``."""
    pis = projectors(rep) if pis is None else pis
    lv = rep.space.levels
    return sum(np.diag(rep.spec.gap(s, lv + shift)) @ pis[s] for s in range(rep.k))


def scaled_residual(lhs, rhs, P=None, scale=None) -> float:
    """Max-abs residual of ``P (lhs - rhs) P`` relative to ``max(1, |lhs|, |rhs|)``.

    Identities built from long operator products have entries far above 1, so
    the absolute residual scales with them; dividing by the magnitude of the
    two sides keeps one tolerance meaningful across k and n_max.
    """
    lhs = np.asarray(lhs)
    rhs = np.asarray(rhs)
    if P is not None:
        lhs = P @ lhs @ P
        rhs = P @ rhs @ P
    diff = float(np.max(np.abs(lhs - rhs), initial=0.0))
    if scale is None:
        scale = max(1.0, float(np.max(np.abs(lhs), initial=0.0)), float(np.max(np.abs(rhs), initial=0.0)))
    return diff / scale


@dataclass
class RelationReport:
    """Residuals of a battery of operator identities.

    ``residuals`` are gated against ``tol``; ``notes`` carry informational
    values that do not affect ``ok``.
    """

    tol: float
    interior_levels: tuple[int, int]
    residuals: dict[str, float] = field(default_factory=dict)
    notes: dict[str, float] = field(default_factory=dict)

    @property
    def passed(self) -> dict[str, bool]:
        return {name: r <= self.tol for name, r in self.residuals.items()}

    @property
    def ok(self) -> bool:
        return all(self.passed.values())

    @property
    def max_residual(self) -> float:
        return max(self.residuals.values(), default=0.0)

    def failures(self) -> list[str]:
        return [name for name, good in self.passed.items() if not good]

    def merge(self, other: "RelationReport", prefix: str = "") -> "RelationReport":
        for name, r in other.residuals.items():
            key = prefix + name
            self.residuals[key] = max(r, self.residuals.get(key, 0.0))
        for name, r in other.notes.items():
            key = prefix + name
            self.notes[key] = max(r, self.notes.get(key, 0.0))
        return self

    def to_dict(self) -> dict:
        return {
            "interior_levels": list(self.interior_levels),
            "tol": self.tol,
            "checks": [
                {"name": name, "residual": r, "tol": self.tol, "pass": r <= self.tol}
                for name, r in self.residuals.items()
            ],
            "notes": dict(self.notes),
        }


def _check_guard(rep, guard):
    guard = rep.k if guard is None else guard
    if guard < 1:
        raise ValueError("guard must be at least 1")
    return guard


def verify_wk_relations(rep: AlgebraRep, guard: int | None = None, tol: float = 1e-10) -> RelationReport:
    """Check the W_k relations of ``rep`` on the interior levels ``n <= top - guard``.

    Covers the deformed commutator, the number and Klein commutation rules,
    Klein unitarity and order, adjointness, and the projector algebra
    including the intertwining ``Pi_s X+ = X+ Pi_{s-1}``.
    """
    guard = _check_guard(rep, guard)
    space, k = rep.space, rep.k
    P = interior_projector(space, guard, rep.top)
    Xp, Xm, N, K = rep.Xplus, rep.Xminus, rep.Nop, rep.Kop
    eye = np.eye(space.dim)
    pis = projectors(rep)
    ind = grade_indicators(space)

    res = {}
    res["commutator"] = scaled_residual(Xm @ Xp - Xp @ Xm, gap_operator(rep, pis=pis), P)
    res["number_raise"] = scaled_residual(N @ Xp - Xp @ N, Xp, P)
    res["number_lower"] = scaled_residual(N @ Xm - Xm @ N, -Xm, P)
    res["klein_raise"] = scaled_residual(K @ Xp, rep.q * Xp @ K, P)
    res["klein_lower"] = scaled_residual(K @ Xm, rep.p * Xm @ K, P)
    res["klein_number"] = scaled_residual(K @ N, N @ K)
    res["klein_unitary"] = max(scaled_residual(K @ K.conj().T, eye), scaled_residual(K.conj().T @ K, eye))
    res["klein_order"] = scaled_residual(np.linalg.matrix_power(K, k), eye)
    res["adjoint"] = scaled_residual(Xm, Xp.conj().T)
    res["projector_indicator"] = max(scaled_residual(pis[s], ind[s]) for s in range(k))
    res["projector_completeness"] = scaled_residual(sum(pis), eye)
    res["projector_orthogonality"] = max(
        scaled_residual(pis[s] @ pis[t], pis[s] if s == t else np.zeros_like(eye))
        for s in range(k)
        for t in range(k)
    )
    res["intertwining_raise"] = max(
        scaled_residual(pis[s] @ Xp, Xp @ pis[(s - 1) % k], P) for s in range(k)
    )
    res["intertwining_lower"] = max(
        scaled_residual(Xm @ pis[s], pis[(s - 1) % k] @ Xm, P) for s in range(k)
    )
    return RelationReport(tol=tol, interior_levels=(0, rep.top - guard), residuals=res)
