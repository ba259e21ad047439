"""Named residual checks and the full reproduction battery.

A :class:`SuiteReport` is a flat list of ``(name, residual, tol, pass)``
checks plus an echo of the configuration that produced it.  Its JSON form is
byte-stable for a fixed configuration: wall time is kept on the object but
never serialized.
"""

from __future__ import annotations

import csv
import io
import json
import time
from dataclasses import dataclass, field

import numpy as np

from .cyclic import (
    CSPotentialModel,
    block_period_residual,
    closed_form_F,
    cs_shape_invariance_residual,
    k2_operator_check,
    restricted_spectrum_check,
    verify_cyclic_identities,
)
from .fsusy import build_hamiltonian, build_supercharges, hierarchy_spectra, sector_symbol, verify_fsusy
from .schrodinger import (
    Grid1D,
    crosscheck_family,
    fd_eigenvalues,
    grid_convergence_ratio,
    shape_shift_check,
)
from .translational import (
    HarmonicOscillator,
    Morse,
    PoschlTeller,
    PotentialModel,
    closed_form_hierarchy,
    k2_reduction_residual,
    linear_F,
    si_energies,
    sector_shift_check,
    translational_flow,
    verify_translational_SI,
)
from .wh_algebra import CyclicSpec, LinearSpec, TabulatedSpec, build_rep, build_space, structure_table, verify_wk_relations

__all__ = ["Check", "SuiteReport", "DEFAULT_TOLERANCES", "checks_from_relations", "sweep_specs", "full_suite"]

SCHEMA = 1

DEFAULT_TOLERANCES = {
    "algebra": 1e-10,
    "susy": 1e-9,
    "exact": 1e-12,
    "fd": 5e-3,
    "fd_cs": 2e-2,
    "fd_shift": 1e-8,
    "convergence": 0.5,
}


@dataclass(frozen=True)
class Check:
    name: str
    residual: float
    tol: float

    @property
    def passed(self) -> bool:
        return bool(np.isfinite(self.residual)) and self.residual <= self.tol

    def to_dict(self) -> dict:
        return {"name": self.name, "residual": float(self.residual), "tol": float(self.tol), "pass": self.passed}


@dataclass
class SuiteReport:
    command: str
    config: dict
    checks: list[Check] = field(default_factory=list)
    extra: dict = field(default_factory=dict)
    wall_time: float = 0.0

    @property
    def passed(self) -> bool:
        return all(c.passed for c in self.checks)

    def add(self, name: str, residual: float, tol: float) -> Check:
        c = Check(name, float(residual), float(tol))
        self.checks.append(c)
        return c

    def extend(self, checks) -> None:
        self.checks.extend(checks)

    def to_dict(self) -> dict:
        out = {
            "schema": SCHEMA,
            "command": self.command,
            "config": self.config,
            "checks": [c.to_dict() for c in self.checks],
            "pass": self.passed,
        }
        if self.extra:
            out["extra"] = self.extra
        return out

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2) + "\n"

    def to_csv(self) -> str:
        buf = io.StringIO()
        w = csv.writer(buf, lineterminator="\n")
        w.writerow(["name", "residual", "tol", "pass"])
        for c in self.checks:
            w.writerow([c.name, repr(c.residual), repr(c.tol), str(c.passed).lower()])
        return buf.getvalue()

    def to_table(self) -> str:
        width = max((len(c.name) for c in self.checks), default=4)
        lines = [f"{'check':<{width}}  {'residual':>10}  {'tol':>8}  result"]
        for c in self.checks:
            lines.append(f"{c.name:<{width}}  {c.residual:>10.3e}  {c.tol:>8.1e}  {'PASS' if c.passed else 'FAIL'}")
        lines.append(f"overall: {'PASS' if self.passed else 'FAIL'} ({len(self.checks)} checks)")
        return "\n".join(lines) + "\n"

    def render(self, fmt: str) -> str:
        if fmt == "json":
            return self.to_json()
        if fmt == "csv":
            return self.to_csv()
        if fmt == "table":
            return self.to_table()
        raise ValueError(f"unknown format {fmt!r}")


def checks_from_relations(report, prefix: str = "") -> list[Check]:
    """Turn a :class:`RelationReport` into one :class:`Check` per relation."""
    return [Check(prefix + name, float(r), float(report.tol)) for name, r in report.residuals.items()]


def sweep_specs(k: int, seed: int = 0) -> list[tuple[str, object]]:
    """The representative specs swept at order ``k``.

    Linear ``(0, 1)``, ``(2, 5)``, ``(-2, 5)`` and a seeded random positive
    cyclic spec; the seed is mixed with ``k`` so each order gets its own draw.
    """
    rng = np.random.default_rng([seed, k])
    f = tuple(float(x) for x in rng.uniform(0.5, 2.0, k))
    return [
        ("linear(0,1)", LinearSpec(0.0, 1.0)),
        ("linear(2,5)", LinearSpec(2.0, 5.0)),
        ("linear(-2,5)", LinearSpec(-2.0, 5.0)),
        ("cyclic(seeded)", CyclicSpec(f)),
    ]


def _tabulated(k: int, n_max: int, seed: int) -> TabulatedSpec:
    rng = np.random.default_rng([seed, k, 1])
    return TabulatedSpec(rng.uniform(0.0, 2.0, (k, n_max + k + 1)))


def _algebra_checks(report: SuiteReport, ks, n_max, seed, tol) -> None:
    wk, susy, assembly, anti, inter = 0.0, 0.0, 0.0, 0.0, 0.0
    for k in ks:
        space = build_space(k, n_max)
        for _, spec in sweep_specs(k, seed):
            rep = build_rep(space, spec)
            wk = max(wk, verify_wk_relations(rep, tol=tol["algebra"]).max_residual)
            ham = build_hamiltonian(rep)
            charges = build_supercharges(rep)
            rel = verify_fsusy(rep, charges, ham, tol=tol["susy"])
            susy = max(susy, rel.max_residual)
            assembly = max(assembly, rel.residuals["assembly"])
            if k == 2:
                anti = max(anti, rel.residuals["anticommutator"])
            hs = hierarchy_spectra(ham, rep)
            inter = max(inter, hs.intertwining_residual)
    report.add("wk_relations", wk, tol["algebra"])

    tab = 0.0
    for k in ks:
        rep = build_rep(build_space(k, n_max), _tabulated(k, n_max, seed))
        tab = max(tab, verify_wk_relations(rep, tol=tol["algebra"]).max_residual)
    report.add("wk_relations_tabulated", tab, tol["algebra"])

    # Morse l=2 stops at level 2, so guard=k leaves nothing; a longer finite
    # chain and a guard of one cover the finite case.
    fin = 0.0
    for k in ks:
        space = build_space(k, n_max)
        fin = max(fin, verify_wk_relations(build_rep(space, LinearSpec(-2.0, 5.0)), guard=1).max_residual)
        fin = max(fin, verify_wk_relations(build_rep(space, LinearSpec(-2.0, 41.0))).max_residual)
    report.add("wk_relations_finite_chain", fin, tol["algebra"])

    report.add("fsusy_relations", susy, tol["susy"])
    report.add("k2_anticommutator", anti, tol["susy"])
    report.add("dual_construction", assembly, tol["algebra"])
    report.add("hierarchy_intertwining", inter, 1e-8)


_LINEAR_FAMILIES = (HarmonicOscillator(), PoschlTeller(2.0, 2.0), Morse(2))


def _translational_checks(report: SuiteReport, ks, n_max, tol) -> None:
    link, closed, si = 0.0, 0.0, 0.0
    n = np.arange(n_max + 1)
    for fam in _LINEAR_FAMILIES:
        p = fam.params
        for k in ks:
            link = max(link, sector_shift_check(k, p, n_max))
            for s in range(k):
                j = k if s == 0 else k - s
                sym = sector_symbol(p, k, j, n)
                closed = max(closed, float(np.max(np.abs(sym - closed_form_hierarchy(k, s, p, n)))))
            si = max(si, verify_translational_SI(fam, k))
    report.add("hierarchy_link", link, tol["algebra"])
    report.add("hierarchy_factorized_form", closed, tol["algebra"])
    report.add("translational_si", si, tol["algebra"])
    report.add("k2_reduction", max(k2_reduction_residual(f) for f in _LINEAR_FAMILIES), tol["exact"])

    flow = translational_flow()
    worst = 0.0
    for a in (-2.0, -1.0, 0.0, 1.0, 2.0):
        for b in (0.5, 1.0, 3.0, 5.0, 7.5):
            p = LinearSpec(a, b)
            for m in range(51):
                worst = max(worst, abs(si_energies(flow, p, m) - linear_F(m, p)))
    report.add("si_energy_accumulation", worst, tol["exact"])

    spec = 0.0
    for k in ks:
        space = build_space(k, n_max)
        for p in (LinearSpec(0.0, 1.0), LinearSpec(2.0, 5.0), LinearSpec(-2.0, 41.0)):
            rep = build_rep(space, p)
            d = np.real(np.diag(rep.XX))
            keep = space.levels <= rep.top
            ref = linear_F(space.levels[keep], p)
            spec = max(spec, float(np.max(np.abs(d[keep] - ref)) / max(1.0, np.max(np.abs(ref)))))
    report.add("linear_spectrum", spec, tol["algebra"])


def _cyclic_checks(report: SuiteReport, ks, n_max, seed, tol) -> None:
    closed, restricted, period, ids = 0.0, 0.0, 0.0, {}
    for k in ks:
        p = sweep_specs(k, seed)[-1][1]
        table = structure_table(p, k, n_max)
        for s in range(k):
            ns = np.arange(s, n_max + 1, k)
            ref = table[ns, s]
            closed = max(closed, float(np.max(np.abs(closed_form_F(p, s, ns) - ref))) / max(1.0, float(np.max(ref))))
        rep = build_rep(build_space(k, n_max), p)
        restricted = max(restricted, restricted_spectrum_check(rep, p))
        period = max(period, block_period_residual(p))
        for name, r in verify_cyclic_identities(rep, p, tol=tol["algebra"]).residuals.items():
            ids[name] = max(ids.get(name, 0.0), r)
    report.add("cyclic_closed_form_F", closed, tol["algebra"])
    report.add("cyclic_spectrum", restricted, tol["algebra"])
    report.add("block_period", period, tol["algebra"])

    k2 = 0.0
    for f in ((3.0, 1.0), (2.0, 2.0), tuple(sweep_specs(2, seed)[-1][1].f)):
        k2 = max(k2, k2_operator_check(build_rep(build_space(2, n_max), CyclicSpec(f))))
    report.add("k2_cyclic_operator", k2, tol["exact"])

    report.add("cyclic_level_shift", ids["level_shift"], tol["algebra"])
    report.add("cyclic_sector_symbol", ids["sector_formula"], tol["algebra"])
    report.add("cyclic_permutation_si", ids["permutation"], tol["algebra"])
    report.add("cyclic_unreduced_defect", ids["unreduced_permutation_defect"], tol["algebra"])
    xs = np.linspace(0.05, 6.0, 120)
    report.add("cs_partner_relation", cs_shape_invariance_residual(3.0, 1.0, xs), tol["exact"])


def _fd_checks(report: SuiteReport, tol) -> dict:
    details = {}
    cases = [
        ("fd_morse", PotentialModel(Morse(2)), tol["fd"]),
        ("fd_poschl_teller", PotentialModel(PoschlTeller(2.0, 2.0)), tol["fd"]),
        ("fd_oscillator_affine", PotentialModel(HarmonicOscillator()), tol["fd"]),
        ("fd_cs_dirichlet", CSPotentialModel(3.0, 1.0, 0), tol["fd_cs"]),
    ]
    for name, model, t in cases:
        res = crosscheck_family(model, tol=t)
        report.add(name, res.max_error, t)
        details[name] = res.to_dict()

    grid = Grid1D(-8.0, 8.0, 200)
    base = fd_eigenvalues(grid, lambda x: x**2, 20)
    shifted = fd_eigenvalues(grid, lambda x: x**2 + 3.7, 20)
    report.add("fd_constant_shift", float(np.max(np.abs(shifted - base - 3.7))), tol["exact"])

    ratio = grid_convergence_ratio(lambda x: x**2, 1.0, -8.0, 8.0, 399)
    report.add("fd_grid_convergence", abs(ratio - 4.0), tol["convergence"])
    details["fd_grid_convergence"] = {"ratio": ratio}

    shift = max(
        max(shape_shift_check(PoschlTeller(2.0, 2.0), k=2)),
        max(shape_shift_check(HarmonicOscillator(), k=3)),
        max(shape_shift_check(CSPotentialModel(3.0, 1.0), k=2)),
    )
    report.add("fd_shape_shift", shift, tol["fd_shift"])
    return details


def full_suite(seed: int = 0, n_max: int = 24, tolerances: dict | None = None, ks=(2, 3, 4, 5)) -> SuiteReport:
    """Run every identity and crosscheck at default sizes."""
    tol = dict(DEFAULT_TOLERANCES)
    tol.update(tolerances or {})
    t0 = time.perf_counter()
    report = SuiteReport(
        command="full-suite",
        config={"seed": seed, "n_max": n_max, "k": list(ks), "tolerances": tol},
    )
    _algebra_checks(report, ks, n_max, seed, tol)
    _translational_checks(report, ks, n_max, tol)
    _cyclic_checks(report, ks, n_max, seed, tol)
    report.extra["crosschecks"] = _fd_checks(report, tol)
    report.wall_time = time.perf_counter() - t0
    return report
