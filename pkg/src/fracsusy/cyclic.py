"""Level-independent gaps ``f_s`` and cyclic shape invariance.

On the restricted space of states ``|kp+s, s>`` (written ``|kp+s)``) the
Klein operator acts as ``q^N`` and ``X+ X-`` becomes a function of ``N``
alone,

    X+X- = sum_t g_t (1 - q^(N t)) / (1 - q^t),

with ``g_t`` the discrete Fourier coefficients of the gaps (the ``t = 0``
term read as ``g_0 N``).  Its spectrum is a periodic stack of blocks, each of
length ``sum f``.
"""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from .exceptions import DomainError
from .fsusy import build_hamiltonian
from .wh_algebra import (
    AlgebraRep,
    CyclicSpec,
    GradedSpace,
    RelationReport,
    _check_guard,
    projectors,
    scaled_residual,
)

__all__ = [
    "CyclicParams",
    "DFTCoeffs",
    "RestrictedSpace",
    "CSPotentialModel",
    "dft_coeffs",
    "closed_form_F",
    "xx_symbol",
    "cyclic_eigenvalue",
    "restrict",
    "restricted_spectrum_check",
    "block_period_residual",
    "k2_operator_check",
    "circular_shift",
    "hamiltonian_symbol",
    "reduced_symbol",
    "unreduced_permutation_defect",
    "verify_cyclic_identities",
    "cs_potential",
    "cs_shape_invariance_residual",
    "block_spectrum",
    "write_block_spectrum_csv",
]

CyclicParams = CyclicSpec

# |imag| allowed on closed forms that are real by conjugate symmetry
_IMAG_TOL = 1e-12


@dataclass(frozen=True, eq=False)
class DFTCoeffs:
    g: np.ndarray

    @property
    def k(self) -> int:
        return len(self.g)

    def inverse(self) -> np.ndarray:
        """Recover the gaps ``f_s = sum_t g_t q^(s t)``."""
        k = self.k
        q = np.exp(2j * np.pi / k)
        st = np.outer(np.arange(k), np.arange(k))
        return (q**st) @ self.g


def dft_coeffs(p: CyclicParams) -> DFTCoeffs:
    """``g_t = (1/k) sum_s p^(s t) f_s`` with ``p = exp(-2 pi i / k)``."""
    k = p.k
    pr = np.exp(-2j * np.pi / k)
    f = np.asarray(p.f)
    g = np.array([sum(pr ** (s * t) * f[s] for s in range(k)) for t in range(k)]) / k
    return DFTCoeffs(g)


def _real(z, what):
    z = np.asarray(z)
    scale = max(1.0, float(np.max(np.abs(z), initial=0.0)))
    if np.max(np.abs(z.imag), initial=0.0) > _IMAG_TOL * scale:
        raise ArithmeticError(f"{what} has a non-negligible imaginary part {np.max(np.abs(z.imag)):.3e}")
    return z.real


def closed_form_F(p: CyclicParams, s, n):
    """``F_s(n) = g_0 n + sum_{t>=1} g_t (1 - q^(s t)) / (1 - q^t)``.

    Agrees with the recurrence on restricted states (``n = s mod k``).
    """
    k = p.k
    g = dft_coeffs(p).g
    q = np.exp(2j * np.pi / k)
    s = np.asarray(s)
    n = np.asarray(n, dtype=float)
    val = g[0] * n + sum(g[t] * (1 - q ** (s * t)) / (1 - q**t) for t in range(1, k))
    out = _real(val, "closed-form F")
    return float(out) if out.ndim == 0 else out


def xx_symbol(p: CyclicParams, N):
    """``X+ X-`` on the restricted space as a function of ``N``."""
    N = np.asarray(N)
    return closed_form_F(p, N % p.k, N)


def cyclic_eigenvalue(p: CyclicParams, n: int, s: int) -> float:
    """``E_{kn+s} = n k g_0 + sum_{i<s} f_i``."""
    g0 = float(_real(dft_coeffs(p).g[0], "g_0"))
    return n * p.k * g0 + sum(p.f[:s])


@dataclass(frozen=True)
class RestrictedSpace:
    space: GradedSpace

    @property
    def indices(self) -> np.ndarray:
        sp = self.space
        return np.flatnonzero(sp.levels % sp.k == sp.grades)

    @property
    def levels(self) -> np.ndarray:
        return self.space.levels[self.indices]

    def selector(self) -> np.ndarray:
        """Diagonal indicator of the restricted states."""
        sel = np.zeros(self.space.dim)
        sel[self.indices] = 1.0
        return np.diag(sel)


def restrict(space: GradedSpace) -> RestrictedSpace:
    return RestrictedSpace(space)


def _interior_restricted(rep, guard):
    r = restrict(rep.space)
    keep = r.levels <= rep.top - guard
    return r.indices[keep], r.levels[keep]


def restricted_spectrum_check(rep: AlgebraRep, p: CyclicParams, guard: int | None = None) -> float:
    """Max residual of ``X+X- |kn+s) = E_{kn+s} |kn+s)`` and ``K = q^N`` on interior states."""
    guard = _check_guard(rep, guard)
    idx, lv = _interior_restricted(rep, guard)
    xx = rep.XX
    k = rep.k
    worst = 0.0
    for i, n in zip(idx, lv):
        e = np.zeros(rep.space.dim)
        e[i] = 1.0
        target = cyclic_eigenvalue(p, n // k, n % k)
        worst = max(worst, float(np.linalg.norm(xx @ e - target * e)) / max(1.0, abs(target)))
        worst = max(worst, float(np.linalg.norm(rep.Kop @ e - rep.q**n * e)))
    return worst


def block_period_residual(p: CyclicParams, n_blocks: int = 10) -> float:
    """Max ``|E_{k(n+1)+s} - E_{kn+s} - sum f|`` over ``n < n_blocks``."""
    total = sum(p.f)
    return max(
        abs(cyclic_eigenvalue(p, n + 1, s) - cyclic_eigenvalue(p, n, s) - total)
        for n in range(n_blocks)
        for s in range(p.k)
    )


def k2_operator_check(rep: AlgebraRep, guard: int | None = None) -> float:
    """Residual of ``X+X- = (f0+f1) N / 2 + (f0-f1) Pi_1 / 2`` on the restricted space (k = 2)."""
    if rep.k != 2:
        raise ValueError("the two-gap operator form needs k = 2")
    guard = _check_guard(rep, guard)
    f0, f1 = rep.spec.f
    G = restrict(rep.space).selector()
    G = G * (np.diag(rep.space.levels <= rep.top - guard))
    rhs = 0.5 * (f0 + f1) * rep.Nop + 0.5 * (f0 - f1) * projectors(rep)[1]
    return scaled_residual(rep.XX, rhs, G)


def circular_shift(p: CyclicParams, s: int) -> CyclicParams:
    """``h^(s)``: rotate the gaps left by ``s`` places."""
    if s < 0:
        raise ValueError("shift count must be non-negative")
    s %= p.k
    return CyclicSpec(p.f[s:] + p.f[:s])


def _constant(p):
    return sum((1 - t) * p.f[t] for t in range(2, p.k))


def hamiltonian_symbol(p: CyclicParams, j: int, N):
    """``H_j(N) = (k-1) X+X- + sum_{t=2}^{k-1} (1-t) f_t + (k-1) sum_{t=j}^{k-1} f_t``."""
    k = p.k
    return (k - 1) * xx_symbol(p, N) + _constant(p) + (k - 1) * sum(p.f[j:k])


def reduced_symbol(p: CyclicParams, j: int, N):
    """``(H_j - const) / (k-1) = X+X- + sum_{t=j}^{k-1} f_t``."""
    return xx_symbol(p, N) + sum(p.f[j : p.k])


def unreduced_permutation_defect(p: CyclicParams, s: int) -> float:
    """``H_{k-s}(N, f) - H_0(N, h^s f) - sum_{i<s} f_i`` on sector ``k-s`` states.

    Zero for ``k = 2``; otherwise ``(k-2) sum_{i<s} f_i`` plus the change of
    the constant term under the rotation.
    """
    rot = circular_shift(p, s)
    return (p.k - 2) * sum(p.f[:s]) + _constant(p) - _constant(rot)


def verify_cyclic_identities(
    rep: AlgebraRep, p: CyclicParams, guard: int | None = None, tol: float = 1e-10
) -> RelationReport:
    """Check the cyclic hierarchy identities for every ``s`` on interior restricted states.

    The sector ``k-s`` Hamiltonian acts on restricted states with
    ``n = k - s (mod k)``.  Checks:

    ``level_shift``
        ``H_{k-s}(N) = H_0(N + s)``, both sides read off the diagonal of the
        assembled Hamiltonian matrix.
    ``sector_formula``
        the matrix diagonal against the ``N``-symbol ``hamiltonian_symbol``.
    ``permutation``
        ``H_{k-s}(N, f) = H_0(N, h^s f) + sum_{i<s} f_i`` for the reduced
        sector Hamiltonians ``(H_j - const) / (k-1)``.
    ``unreduced_permutation_defect``
        the unreduced version after removing :func:`unreduced_permutation_defect`;
        the raw unreduced residual is kept in ``notes``.
    """
    guard = _check_guard(rep, guard)
    k = rep.k
    ham = build_hamiltonian(rep)
    diag = np.real(np.diag(ham.H))
    sp = rep.space
    idx, lv = _interior_restricted(rep, guard)

    res = {"level_shift": 0.0, "sector_formula": 0.0, "permutation": 0.0, "unreduced_permutation_defect": 0.0}
    raw = 0.0
    for s in range(k):
        j = k if s == 0 else k - s
        grade = j % k
        sel = lv % k == grade
        ns = lv[sel]
        if ns.size == 0:
            continue
        lhs = diag[idx[sel]]
        rhs = diag[[sp.index(n + s, 0) for n in ns]]
        res["level_shift"] = max(res["level_shift"], scaled_residual(lhs, rhs))
        res["sector_formula"] = max(res["sector_formula"], scaled_residual(lhs, hamiltonian_symbol(p, j, ns)))

        rot = circular_shift(p, s)
        offset = sum(p.f[:s])
        red_l = reduced_symbol(p, j, ns)
        red_r = reduced_symbol(rot, k, ns) + offset
        res["permutation"] = max(res["permutation"], scaled_residual(red_l, red_r))

        lit_l = hamiltonian_symbol(p, j, ns)
        lit_r = hamiltonian_symbol(rot, k, ns) + offset
        raw = max(raw, scaled_residual(lit_l, lit_r))
        res["unreduced_permutation_defect"] = max(
            res["unreduced_permutation_defect"], scaled_residual(lit_l, lit_r + unreduced_permutation_defect(p, s))
        )
    return RelationReport(
        tol=tol,
        interior_levels=(0, rep.top - guard),
        residuals=res,
        notes={"unreduced_permutation": raw},
    )


# -- two-gap Calogero-Sutherland potentials ----------------------------------


@dataclass(frozen=True)
class CSPotentialModel:
    """Two-body Calogero-Sutherland partner potentials for ``k = 2``."""

    f0: float
    f1: float
    sector: int = 0

    def __post_init__(self):
        if self.f0 + self.f1 <= 0:
            raise ValueError("f0 + f1 must be positive")
        if self.sector not in (0, 1):
            raise ValueError("sector must be 0 or 1")

    @property
    def k(self) -> int:
        return 2

    def swapped(self) -> "CSPotentialModel":
        return CSPotentialModel(self.f1, self.f0, self.sector)

    def __call__(self, x):
        return cs_potential(self, x)


def cs_potential(m: CSPotentialModel, x):
    """Oscillator plus inverse-square potential of sector 0 or its partner in sector 1."""
    x = np.asarray(x, dtype=float)
    if np.any(x <= 0):
        raise DomainError("Calogero-Sutherland potentials are defined for x > 0")
    f0, f1 = m.f0, m.f1
    tot = f0 + f1
    if m.sector == 0:
        out = tot**2 * x**2 / 16 + 0.25 * (f0 - f1) * (3 * f0 + f1) / tot**2 / x**2 - 0.5 * f1
    else:
        out = tot**2 * x**2 / 16 + 0.25 * (f1 - f0) * (3 * f1 + f0) / tot**2 / x**2 + 0.5 * f0
    return float(out) if out.ndim == 0 else out


def cs_shape_invariance_residual(f0: float, f1: float, xs) -> float:
    """Max ``|V_1(x; f0, f1) - V_0(x; f1, f0) - f0|`` over ``xs``."""
    v1 = cs_potential(CSPotentialModel(f0, f1, 1), xs)
    v0 = cs_potential(CSPotentialModel(f1, f0, 0), xs)
    return float(np.max(np.abs(np.asarray(v1) - np.asarray(v0) - f0)))


def block_spectrum(p: CyclicParams, n_blocks: int):
    """Rows ``(global_index, n, s, E)`` for blocks ``n < n_blocks``."""
    return [(p.k * n + s, n, s, cyclic_eigenvalue(p, n, s)) for n in range(n_blocks) for s in range(p.k)]


def write_block_spectrum_csv(p: CyclicParams, n_blocks: int, stream) -> None:
    """CSV rows ``global_index,n,s,energy`` (no header)."""
    writer = csv.writer(stream, lineterminator="\n")
    for idx, n, s, e in block_spectrum(p, n_blocks):
        writer.writerow([idx, n, s, f"{e:.12g}"])
