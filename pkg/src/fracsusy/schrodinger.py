"""Finite-difference eigenvalues of ``-d^2/dx^2 + V(x)`` as an independent cross-check.

Three-point central differences with Dirichlet ends give a real symmetric
tridiagonal matrix; its lowest eigenvalues come from LAPACK bisection.  The
algebraic side supplies the reference spectra, so agreement here ties the
operator construction to actual Schrodinger problems.
"""

from __future__ import annotations

import json
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import eigh_tridiagonal

from .cyclic import CSPotentialModel, cs_potential
from .translational import (
    HarmonicOscillator,
    Morse,
    PoschlTeller,
    PotentialModel,
    effective_b,
    hierarchy_offset,
    linear_F,
    potential_value,
)
from .wh_algebra import LinearSpec

__all__ = [
    "Grid1D",
    "FDOperator",
    "CrossCheckResult",
    "fd_operator",
    "fd_eigenvalues",
    "default_grid",
    "reference_levels",
    "crosscheck_family",
    "shape_shift_check",
    "grid_convergence_ratio",
    "load_sampled_potential",
]

# energy margin below the Morse dissociation threshold; levels above are box states
MORSE_THRESHOLD_MARGIN = 0.5


@dataclass(frozen=True)
class Grid1D:
    """``m`` interior points of ``[x_min, x_max]`` with spacing ``(x_max - x_min)/(m + 1)``."""

    x_min: float
    x_max: float
    m: int

    def __post_init__(self):
        if not self.x_min < self.x_max:
            raise ValueError("x_min must be below x_max")
        if self.m < 200:
            raise ValueError("use at least 200 interior points")

    @property
    def h(self) -> float:
        return (self.x_max - self.x_min) / (self.m + 1)

    @property
    def x(self) -> np.ndarray:
        return self.x_min + self.h * np.arange(1, self.m + 1)


@dataclass(frozen=True, eq=False)
class FDOperator:
    diagonal: np.ndarray
    offdiagonal: np.ndarray
    boundary: str = "dirichlet"

    def dense(self) -> np.ndarray:
        return np.diag(self.diagonal) + np.diag(self.offdiagonal, 1) + np.diag(self.offdiagonal, -1)


def fd_operator(grid: Grid1D, V) -> FDOperator:
    h2 = grid.h**2
    vx = np.asarray(V(grid.x), dtype=float)
    return FDOperator(diagonal=2.0 / h2 + vx, offdiagonal=np.full(grid.m - 1, -1.0 / h2))


def fd_eigenvalues(grid: Grid1D, V, count: int) -> np.ndarray:
    """The ``count`` lowest eigenvalues of the discretized operator, ascending.

    Only ``count <= m / 10`` is accepted; higher states are not resolved.
    """
    if count < 1:
        raise ValueError("count must be positive")
    if count > grid.m / 10:
        raise ValueError(f"count = {count} exceeds m/10 = {grid.m / 10:g} for this grid")
    op = fd_operator(grid, V)
    # tol -> 0 asks bisection for full working precision
    return eigh_tridiagonal(
        op.diagonal,
        op.offdiagonal,
        eigvals_only=True,
        select="i",
        select_range=(0, count - 1),
        tol=np.finfo(float).tiny,
    )


@dataclass
class CrossCheckResult:
    label: str
    mode: str
    tol: float
    fd_eigenvalues: list
    reference: list
    calibration: dict = field(default_factory=lambda: {"scale": 1.0, "offset": 0.0})
    errors: list = field(default_factory=list)
    asserted_levels: list = field(default_factory=list)

    @property
    def max_error(self) -> float:
        return max((self.errors[i] for i in self.asserted_levels), default=0.0)

    @property
    def passed(self) -> bool:
        return len(self.fd_eigenvalues) == len(self.reference) and self.max_error <= self.tol

    def to_dict(self) -> dict:
        return {
            "label": self.label,
            "mode": self.mode,
            "tol": self.tol,
            "calibration": dict(self.calibration),
            "fd_eigenvalues": list(self.fd_eigenvalues),
            "reference": list(self.reference),
            "errors": list(self.errors),
            "asserted_levels": list(self.asserted_levels),
            "max_error": self.max_error,
            "pass": self.passed,
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)

    def table(self) -> str:
        lines = [f"{self.label}  mode={self.mode}  tol={self.tol:g}", f"{'n':>3} {'fd':>16} {'reference':>16} {'error':>10}"]
        for i, (e, r) in enumerate(zip(self.fd_eigenvalues, self.reference)):
            mark = "" if i in self.asserted_levels else "  (fit)"
            lines.append(f"{i:>3} {e:>16.9f} {r:>16.9f} {self.errors[i]:>10.2e}{mark}")
        lines.append("PASS" if self.passed else "FAIL")
        return "\n".join(lines)


def default_grid(model) -> Grid1D:
    family = getattr(model, "family", model)
    if isinstance(family, HarmonicOscillator):
        return Grid1D(-8.0, 8.0, 2000)
    if isinstance(family, PoschlTeller):
        return Grid1D(0.0, math.pi, 3000)
    if isinstance(family, Morse):
        return Grid1D(-3.0, 9.0, 3000)
    if isinstance(family, CSPotentialModel):
        return Grid1D(1e-4, 20.0, 4000)
    raise TypeError(f"no default grid for {model!r}")


def _callable(model):
    if isinstance(model, CSPotentialModel):
        return lambda x: cs_potential(model, x)
    return lambda x: potential_value(model, x)


def _morse_threshold(model):
    l_eff = model.family.l + model.k / 2 - 1 - model.s
    return (l_eff + 1) ** 2 + hierarchy_offset(model.k, model.s, model.family.params) - MORSE_THRESHOLD_MARGIN


def reference_levels(model, count: int) -> np.ndarray:
    """Analytic eigenvalues of ``-d^2/dx^2 + V`` predicted by the algebra.

    For the linear families the sector ``k-s`` potential has spectrum
    ``F(n, a, b_eff) + offset``, the factorized form of ``H_{k-s}`` with the
    overall ``k-1`` removed from the ``F`` term.  Morse keeps only the bound
    levels below the dissociation threshold.  Calogero-Sutherland uses the
    tower selected by a Dirichlet condition at the origin.
    """
    n = np.arange(count)
    if isinstance(model, CSPotentialModel):
        tot = model.f0 + model.f1
        return n * tot + model.f0 if model.sector == 0 else (n + 1) * tot
    family, k, s = model.family, model.k, model.s
    p = family.params
    if isinstance(family, PoschlTeller):
        for w in (family.u, family.v):
            if w + s + 1 - k / 2 <= 0.5:
                raise ValueError("effective Poschl-Teller barrier below 1/2; Dirichlet branch differs")
    levels = linear_F(n, LinearSpec(p.a, effective_b(k, s, p))) + hierarchy_offset(k, s, p)
    levels = np.atleast_1d(levels)
    if isinstance(family, Morse):
        l_eff = family.l + k / 2 - 1 - s
        levels = levels[(n < l_eff + 1) & (levels < _morse_threshold(model))]
    return levels


def crosscheck_family(model, grid: Grid1D | None = None, count: int | None = None, mode: str | None = None, tol: float | None = None) -> CrossCheckResult:
    """Compare finite-difference eigenvalues of ``model`` with the algebraic reference.

    ``mode="identity"`` compares levels directly.  ``mode="affine"`` fits
    ``fd = scale * reference + offset`` on the two lowest levels and asserts
    the rest; it is the default for the harmonic oscillator, whose algebraic
    spectrum is ``n`` while the differential one is ``2n + 1``.
    """
    grid = default_grid(model) if grid is None else grid
    family = getattr(model, "family", model)
    is_ho = isinstance(family, HarmonicOscillator)
    mode = ("affine" if is_ho else "identity") if mode is None else mode
    if count is None:
        count = {HarmonicOscillator: 7, PoschlTeller: 4, CSPotentialModel: 3}.get(type(family))
        if count is None:
            count = int(model.family.l + model.k / 2 - model.s) + 1
    if tol is None:
        tol = 2e-2 if isinstance(model, CSPotentialModel) else 5e-3

    ref = reference_levels(model, count)
    fd = fd_eigenvalues(grid, _callable(model), count)
    if isinstance(family, Morse):
        fd = fd[fd < _morse_threshold(model)]
    label = f"{type(family).__name__}"
    if isinstance(model, PotentialModel):
        label += f" k={model.k} s={model.s}"
    else:
        label += f" sector={model.sector}"

    result = CrossCheckResult(label=label, mode=mode, tol=tol, fd_eigenvalues=[float(e) for e in fd], reference=[float(r) for r in ref])
    if len(fd) != len(ref):
        result.errors = [math.inf] * max(len(fd), len(ref))
        result.asserted_levels = list(range(len(result.errors)))
        return result
    if mode == "affine":
        if count < 3:
            raise ValueError("affine mode needs at least three levels")
        scale = (fd[1] - fd[0]) / (ref[1] - ref[0])
        offset = fd[0] - scale * ref[0]
        result.calibration = {"scale": float(scale), "offset": float(offset)}
        pred = scale * ref + offset
        result.asserted_levels = list(range(2, count))
    elif mode == "identity":
        pred = ref
        result.asserted_levels = list(range(len(ref)))
    else:
        raise ValueError(f"unknown mode {mode!r}")
    result.errors = [float(e) for e in np.abs(fd - pred)]
    return result


def shape_shift_check(family, k: int = 2, grid: Grid1D | None = None, count: int = 4) -> list[float]:
    """Per-``s`` residual of the shape-invariance constant seen in FD spectra.

    For the linear families, the spectrum of ``V_{k-s}`` minus that of the
    shifted base ``V_0(b + s a)`` should be ``(k-1) s (sa - a + 2b) / 2`` at
    every level.  For a :class:`CSPotentialModel` (``k = 2``) the sector-1
    spectrum minus that of the swapped sector-0 potential should be ``f0``.
    Both sides share one grid, so only roundoff separates them.
    """
    grid = default_grid(family) if grid is None else grid
    out = []
    if isinstance(family, CSPotentialModel):
        if k != 2:
            raise ValueError("Calogero-Sutherland potentials exist only for k = 2")
        f0, f1 = family.f0, family.f1
        for s in range(2):
            if s == 0:
                a = fd_eigenvalues(grid, _callable(CSPotentialModel(f0, f1, 0)), count)
                b, const = a, 0.0
            else:
                a = fd_eigenvalues(grid, _callable(CSPotentialModel(f0, f1, 1)), count)
                b = fd_eigenvalues(grid, _callable(CSPotentialModel(f1, f0, 0)), count)
                const = f0
            out.append(float(np.max(np.abs(a - b - const))))
        return out

    p = family.params
    for s in range(k):
        upper = fd_eigenvalues(grid, lambda x, s=s: family.hierarchy(x, k, s), count)
        base = family.shifted(s)
        lower = fd_eigenvalues(grid, lambda x: base.hierarchy(x, k, 0), count)
        const = 0.5 * (k - 1) * s * (s * p.a - p.a + 2 * p.b)
        out.append(float(np.max(np.abs(upper - lower - const))))
    return out


def grid_convergence_ratio(V, exact: float, x_min: float, x_max: float, m: int, level: int = 0) -> float:
    """``error(h) / error(h/2)`` for one eigenvalue; about 4 for a second-order scheme."""
    coarse = Grid1D(x_min, x_max, m)
    fine = Grid1D(x_min, x_max, 2 * m + 1)
    e1 = fd_eigenvalues(coarse, V, level + 1)[level] - exact
    e2 = fd_eigenvalues(fine, V, level + 1)[level] - exact
    return float(e1 / e2)


def load_sampled_potential(path):
    """Read ``x,V`` CSV rows and return a linear interpolant ``V(x)``.

    A non-numeric first line is treated as a header and skipped.
    """
    rows = []
    with open(path) as fh:
        for i, line in enumerate(fh):
            line = line.strip()
            if not line:
                continue
            parts = line.split(",")
            try:
                rows.append((float(parts[0]), float(parts[1])))
            except ValueError:
                if i == 0:
                    continue
                raise
    data = np.array(sorted(rows))
    xs, vs = data[:, 0], data[:, 1]
    return lambda x: np.interp(x, xs, vs)
