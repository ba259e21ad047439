"""Linear structure function ``f(N) = a N + b`` and translational shape invariance.

Three exactly solvable families realize the linear case: the harmonic
oscillator ``(a, b) = (0, 1)``, Poschl-Teller ``(2, u + v + 1)`` and Morse
``(-2, 2l + 1)``.  Each carries the closed-form hierarchy ``V_{k-s}(x)`` of
isospectral potentials, and shifting ``b -> b + s a`` moves along it.
"""

from __future__ import annotations

import csv
import math
from dataclasses import dataclass
from typing import Callable

import numpy as np

from .exceptions import DomainError, InadmissibleSpec
from .fsusy import sector_symbol
from .wh_algebra import LinearSpec

__all__ = [
    "LinearParams",
    "SpectrumClass",
    "HarmonicOscillator",
    "PoschlTeller",
    "Morse",
    "PotentialModel",
    "SIParamFlow",
    "linear_F",
    "classify_spectrum",
    "hierarchy_offset",
    "effective_b",
    "closed_form_hierarchy",
    "sector_shift_check",
    "potential_value",
    "verify_translational_SI",
    "k2_reduction_residual",
    "translational_flow",
    "si_energies",
    "write_potential_csv",
]

LinearParams = LinearSpec


@dataclass(frozen=True)
class SpectrumClass:
    kind: str  # "infinite" or "finite"
    cutoff: int | None = None
    degenerate_first_gap: bool = False


def linear_F(n, p: LinearParams):
    """``F(n) = a n (n - 1) / 2 + b n``."""
    n = np.asarray(n, dtype=float)
    out = 0.5 * p.a * n * (n - 1) + p.b * n
    return float(out) if out.ndim == 0 else out


def classify_spectrum(p: LinearParams) -> SpectrumClass:
    """Infinite spectrum for ``a >= 0``; finite with levels ``0..floor(-b/a)`` for ``a < 0``."""
    if not p.admissible:
        raise InadmissibleSpec(f"(a, b) = ({p.a:g}, {p.b:g}) gives no positive gap sequence")
    cut = p.cutoff
    if cut is None:
        return SpectrumClass("infinite", None, p.degenerate_first_gap)
    return SpectrumClass("finite", cut, p.degenerate_first_gap)


def effective_b(k: int, s: int, p: LinearParams) -> float:
    """``b - k a / 2 + a + s a``, the shifted ``b`` inside ``H_{k-s}``."""
    return p.b - 0.5 * k * p.a + p.a + s * p.a


def hierarchy_offset(k: int, s: int, p: LinearParams) -> float:
    """Additive constant of ``H_{k-s}`` beyond ``(k-1) F(N, a, b_eff)``."""
    a, b = p.a, p.b
    return (k - 1) * ((k - 2) * (k * a - 3 * b) / 6 + 0.5 * s * (s - k + 1) * a + s * b)


def closed_form_hierarchy(k: int, s: int, p: LinearParams, n):
    """``H_{k-s}(n)`` from the factorized linear-case formula."""
    bprime = LinearSpec(p.a, effective_b(k, s, p))
    return (k - 1) * linear_F(n, bprime) + hierarchy_offset(k, s, p)


def _sector_label(k, s):
    return k if s == 0 else k - s


def sector_shift_check(k: int, p: LinearParams, n_max: int) -> float:
    """Max residual of ``H_{k-s}(N,a,b) = H_0(N,a,b+sa) + (k-1)s(sa-a+2b)/2``.

    Both sides are diagonal symbols from the sector-Hamiltonian machinery,
    evaluated on levels ``0..n_max`` for every ``s``.
    """
    n = np.arange(n_max + 1)
    worst = 0.0
    for s in range(k):
        lhs = sector_symbol(p, k, _sector_label(k, s), n)
        shifted = LinearSpec(p.a, p.b + s * p.a)
        rhs = sector_symbol(shifted, k, k, n) + 0.5 * (k - 1) * s * (s * p.a - p.a + 2 * p.b)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


# -- potential families -----------------------------------------------------


@dataclass(frozen=True)
class HarmonicOscillator:
    domain = (-math.inf, math.inf)

    @property
    def params(self) -> LinearSpec:
        return LinearSpec(0.0, 1.0)

    def shifted(self, s: int) -> "HarmonicOscillator":
        return self

    def validate(self):
        pass

    def base(self, x):
        return x**2

    def hierarchy(self, x, k, s):
        return x**2 + 0.5 * (k - 1) * (2 * s - k + 2)

    def sample_grid(self):
        return np.linspace(-4.0, 4.0, 41)


@dataclass(frozen=True)
class PoschlTeller:
    u: float
    v: float
    domain = (0.0, math.pi)

    @property
    def params(self) -> LinearSpec:
        return LinearSpec(2.0, self.u + self.v + 1)

    def shifted(self, s: int) -> "PoschlTeller":
        # b -> b + 2s split evenly between the two barriers
        return PoschlTeller(self.u + s, self.v + s)

    def validate(self):
        if not (self.u > 1 and self.v > 1):
            raise ValueError(f"Poschl-Teller needs u > 1 and v > 1, got u={self.u}, v={self.v}")

    def base(self, x):
        u, v = self.u, self.v
        return 0.25 * (u * (u - 1) / np.sin(x / 2) ** 2 + v * (v - 1) / np.cos(x / 2) ** 2) - 0.25 * (u + v) ** 2

    def hierarchy(self, x, k, s):
        u, v = self.u, self.v
        h = k / 2
        barrier = 0.25 * (
            (u + s + 1 - h) * (u + s - h) / np.sin(x / 2) ** 2
            + (v + s + 1 - h) * (v + s - h) / np.cos(x / 2) ** 2
        )
        return (
            barrier
            - 0.25 * (u + v + 2 * s + 2 - k) ** 2
            + (k - 1) * (k - 2) * (2 * k - 3 * u - 3 * v - 3) / 6
            + (k - 1) * s * (s - k + u + v + 2)
        )

    def sample_grid(self):
        return np.linspace(0.1 * math.pi, 0.9 * math.pi, 41)


@dataclass(frozen=True)
class Morse:
    l: float
    domain = (-math.inf, math.inf)

    @property
    def params(self) -> LinearSpec:
        return LinearSpec(-2.0, 2 * self.l + 1)

    def shifted(self, s: int) -> "Morse":
        return Morse(self.l - s)

    def validate(self):
        if self.l != int(self.l) or self.l < 0:
            raise ValueError(f"Morse needs a natural number l, got {self.l!r}")

    def base(self, x):
        l = self.l
        return np.exp(-2 * x) - (2 * l + 3) * np.exp(-x) + (l + 1) ** 2

    def hierarchy(self, x, k, s):
        l = self.l
        return (
            np.exp(-2 * x)
            - (2 * l + k + 1 - 2 * s) * np.exp(-x)
            + 0.25 * (2 * l + k - 2 * s) ** 2
            - (k - 1) * (k - 2) * (2 * k + 6 * l + 3) / 6
            + (k - 1) * s * (k - s + 2 * l)
        )

    def sample_grid(self):
        return np.linspace(-2.0, 6.0, 41)


@dataclass(frozen=True)
class PotentialModel:
    """Potential ``V_{k-s}`` of one family in the order-``k`` hierarchy."""

    family: object
    k: int = 2
    s: int = 0

    def __post_init__(self):
        if self.k < 2:
            raise ValueError("k must be at least 2")
        if not 0 <= self.s < self.k:
            raise ValueError(f"s must lie in 0..{self.k - 1}")
        self.family.validate()

    def __call__(self, x):
        return potential_value(self, x)


def _check_domain(family, x):
    lo, hi = family.domain
    x = np.asarray(x, dtype=float)
    if np.any(x <= lo) or np.any(x >= hi):
        raise DomainError(f"{type(family).__name__} is defined on the open interval ({lo}, {hi})")
    return x


def potential_value(model: PotentialModel, x):
    """Evaluate ``V_{k-s}(x)`` for the model's family."""
    x = _check_domain(model.family, x)
    out = model.family.hierarchy(x, model.k, model.s)
    return float(out) if np.ndim(out) == 0 else out


def verify_translational_SI(family, k: int, sample_xs=None) -> float:
    """Max residual of ``V_{k-s}(x; b) = V_0(x; b + s a) + (k-1)s(sa-a+2b)/2``.

    The left side is the family's closed-form hierarchy at sector ``s``; the
    right side is the same closed form at ``s = 0`` for the shifted family.
    """
    xs = family.sample_grid() if sample_xs is None else sample_xs
    xs = _check_domain(family, xs)
    a, b = family.params.a, family.params.b
    worst = 0.0
    for s in range(k):
        lhs = family.hierarchy(xs, k, s)
        rhs = family.shifted(s).hierarchy(xs, k, 0) + 0.5 * (k - 1) * s * (s * a - a + 2 * b)
        worst = max(worst, float(np.max(np.abs(lhs - rhs))))
    return worst


def k2_reduction_residual(family, sample_xs=None) -> float:
    """Max gap between the ``(k, s) = (2, 0)`` hierarchy member and the base potential."""
    xs = family.sample_grid() if sample_xs is None else sample_xs
    xs = _check_domain(family, xs)
    return float(np.max(np.abs(family.hierarchy(xs, 2, 0) - family.base(xs))))


# -- shape-invariance energy accumulation -----------------------------------


@dataclass(frozen=True)
class SIParamFlow:
    """Reparametrization ``h`` and level constant ``R`` of a shape-invariant family."""

    reparam: Callable
    level_constant: Callable


def translational_flow() -> SIParamFlow:
    """``h: b -> b + a`` with ``R = b`` acting on :class:`LinearParams`."""
    return SIParamFlow(
        reparam=lambda p: LinearSpec(p.a, p.b + p.a),
        level_constant=lambda p: p.b,
    )


def si_energies(flow: SIParamFlow, a0, n: int) -> float:
    """``E_n = sum_{l<n} R(h^l(a0))`` with ``E_0 = 0``."""
    if n < 0:
        raise ValueError("n must be non-negative")
    energy, params = 0.0, a0
    for _ in range(n):
        energy += flow.level_constant(params)
        params = flow.reparam(params)
    return energy


def write_potential_csv(model: PotentialModel, xs, stream) -> None:
    """Write sampled ``x,V`` rows for ``model`` to a text stream."""
    xs = np.asarray(xs, dtype=float)
    vs = potential_value(model, xs)
    writer = csv.writer(stream, lineterminator="\n")
    for x, v in zip(xs, np.atleast_1d(vs)):
        writer.writerow([repr(float(x)), repr(float(v))])
