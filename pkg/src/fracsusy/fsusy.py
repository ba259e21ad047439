"""Supercharges, the order-k supersymmetric Hamiltonian and its sector hierarchy.

Sector Hamiltonians are labelled ``j = 1..k`` as in the algebraic formulas
(``H_k`` is ``H_0``) but stored by grade ``0..k-1``.  ``shift`` selects one of
the ``k`` circular relabellings of the supercharge choice; ``shift=0`` is the
standard one ``Q- = X-(1 - Pi_1)``, ``Q+ = X+(1 - Pi_0)``.
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field

import numpy as np

from .wh_algebra import (
    AlgebraRep,
    RelationReport,
    interior_projector,
    projectors,
    scaled_residual,
    structure_table,
    _check_guard,
)

__all__ = [
    "SuperchargePair",
    "SusyHamiltonian",
    "HierarchyReport",
    "build_supercharges",
    "sector_symbol",
    "build_hamiltonian",
    "verify_fsusy",
    "hierarchy_spectra",
]


@dataclass(frozen=True, eq=False)
class SuperchargePair:
    Qplus: np.ndarray
    Qminus: np.ndarray
    shift: int = 0


def build_supercharges(rep: AlgebraRep, shift: int = 0) -> SuperchargePair:
    """``Q- = X- (1 - Pi_{1+shift})`` and ``Q+ = X+ (1 - Pi_{shift})``."""
    k = rep.k
    pis = projectors(rep)
    eye = np.eye(rep.space.dim)
    qm = rep.Xminus @ (eye - pis[(1 + shift) % k])
    qp = rep.Xplus @ (eye - pis[shift % k])
    return SuperchargePair(Qplus=qp, Qminus=qm, shift=shift % k)


def sector_symbol(spec, k: int, j: int, n, shift: int = 0) -> np.ndarray:
    """Diagonal value of the sector Hamiltonian ``H_j`` at levels ``n``.

    ``H_j = (k-1) F_g(N) - sum_{t=2}^{k-1} (t-1) f_t(N-j+t)
    + (k-1) sum_{t=j}^{k-1} f_t(N-j+t)`` with ``g = (j + shift) mod k`` the
    grade on which ``H_j`` acts.  Sums with an upper limit below the lower one
    are empty.
    """
    if not 1 <= j <= k:
        raise ValueError(f"sector label j must lie in 1..{k}")
    n = np.asarray(n, dtype=int)
    grade = (j + shift) % k
    F = structure_table(spec, k, int(n.max(initial=0)))[n, grade]
    val = (k - 1) * F
    for t in range(2, k):
        val = val - (t - 1) * spec.gap((t + shift) % k, n - j + t)
    for t in range(j, k):
        val = val + (k - 1) * spec.gap((t + shift) % k, n - j + t)
    return np.asarray(val, dtype=float)


@dataclass(frozen=True, eq=False)
class SusyHamiltonian:
    """``H`` from the closed formula plus its sector decomposition.

    ``sector_H[g]`` is the diagonal of the sector Hamiltonian acting on grade
    ``g`` (evaluated on every level); ``assembly_residual`` is
    ``max|H - sum_g sector_H[g] Pi_g|``.
    """

    H: np.ndarray
    sector_H: list
    assembly_residual: float
    shift: int = 0


def build_hamiltonian(rep: AlgebraRep, shift: int = 0) -> SusyHamiltonian:
    """Build ``H`` twice, by the closed formula and by ``sum_s H_s Pi_s``."""
    k, spec = rep.k, rep.spec
    lv = rep.space.levels
    pis = projectors(rep)
    xx = rep.XX

    def f_of_N(t, arg_shift):
        return np.diag(spec.gap((t + shift) % k, lv + arg_shift))

    def pi(s):
        return pis[(s + shift) % k]

    H = (k - 1) * xx
    for s in range(3, k + 1):
        for t in range(2, s):
            H = H - (t - 1) * f_of_N(t, t - s) @ pi(s)
    for s in range(1, k):
        for t in range(s, k):
            H = H - (t - k) * f_of_N(t, t - s) @ pi(s)

    sector_H = [None] * k
    assembled = np.zeros_like(H)
    for j in range(1, k + 1):
        Hj = (k - 1) * xx
        for t in range(2, k):
            Hj = Hj - (t - 1) * f_of_N(t, t - j)
        for t in range(j, k):
            Hj = Hj + (k - 1) * f_of_N(t, t - j)
        assembled = assembled + Hj @ pi(j)
        sector_H[(j + shift) % k] = np.real(np.diag(Hj)).copy()
    resid = float(np.max(np.abs(H - assembled)))
    return SusyHamiltonian(H=H, sector_H=sector_H, assembly_residual=resid, shift=shift % k)


def verify_fsusy(
    rep: AlgebraRep,
    charges: SuperchargePair,
    ham: SusyHamiltonian,
    guard: int | None = None,
    tol: float = 1e-9,
) -> RelationReport:
    """Check the order-k superalgebra on the interior subspace.

    Hermiticity, adjointness, ``Q+^k = Q-^k = 0``, the multilinear relation
    ``sum_s Q-^(k-1-s) Q+ Q-^s = Q-^(k-2) H``, ``[H, Q+-] = 0`` and
    ``[H, Pi_s] = 0``.  At ``k = 2`` the anticommutator ``{Q-, Q+} = H`` is
    also checked directly.
    """
    guard = _check_guard(rep, guard)
    k = rep.k
    P = interior_projector(rep.space, guard, rep.top)
    Qp, Qm, H = charges.Qplus, charges.Qminus, ham.H
    mpow = np.linalg.matrix_power
    qscale = max(1.0, float(np.abs(Qp).max()))

    res = {}
    res["hermitian"] = scaled_residual(H, H.conj().T)
    res["adjoint"] = scaled_residual(Qm, Qp.conj().T)
    res["nilpotent_plus"] = scaled_residual(mpow(Qp, k), 0 * Qp, P, scale=qscale**k)
    res["nilpotent_minus"] = scaled_residual(mpow(Qm, k), 0 * Qm, P, scale=qscale**k)
    lhs = sum(mpow(Qm, k - 1 - s) @ Qp @ mpow(Qm, s) for s in range(k))
    res["multilinear"] = scaled_residual(lhs, mpow(Qm, k - 2) @ H, P)
    res["commute_plus"] = scaled_residual(H @ Qp, Qp @ H, P)
    res["commute_minus"] = scaled_residual(H @ Qm, Qm @ H, P)
    res["grading"] = max(scaled_residual(H @ pi, pi @ H) for pi in projectors(rep))
    res["assembly"] = ham.assembly_residual / max(1.0, float(np.abs(H).max()))
    if k == 2:
        res["anticommutator"] = scaled_residual(Qm @ Qp + Qp @ Qm, H, P)
    return RelationReport(tol=tol, interior_levels=(0, rep.top - guard), residuals=res)


@dataclass
class HierarchyReport:
    """Sector spectra of ``H`` and their pairing with the reference sector.

    ``spectra[g]`` lists ``(n, E)`` for grade ``g``; ``pairing[g]`` lists
    ``(n_g, n_ref, E)`` matches against the reference grade (the one holding
    ``H_0``); ``unpaired[g]`` and ``unpaired_reference[g]`` are the leftovers
    of that comparison.
    """

    k: int
    reference_grade: int
    tol: float
    spectra: dict[int, list[tuple[int, float]]]
    pairing: dict[int, list[tuple[int, int, float]]]
    unpaired: dict[int, list[tuple[int, float]]]
    unpaired_reference: dict[int, list[tuple[int, float]]]
    intertwining_residual: float
    relations: RelationReport = field(default=None)

    def to_dict(self) -> dict:
        def rows(items):
            return [list(r) for r in items]

        return {
            "k": self.k,
            "reference_grade": self.reference_grade,
            "tol": self.tol,
            "spectra": {str(g): rows(v) for g, v in self.spectra.items()},
            "pairing": {str(g): rows(v) for g, v in self.pairing.items()},
            "unpaired": {str(g): rows(v) for g, v in self.unpaired.items()},
            "unpaired_reference": {str(g): rows(v) for g, v in self.unpaired_reference.items()},
            "intertwining_residual": self.intertwining_residual,
            "relations": None if self.relations is None else self.relations.to_dict(),
        }

    def to_json(self, **kwargs) -> str:
        return json.dumps(self.to_dict(), **kwargs)


def _pair(levels, ref, tol):
    """Greedy match of two ascending ``(n, E)`` lists within ``tol``."""
    pairs, left, right = [], [], []
    i = j = 0
    while i < len(levels) and j < len(ref):
        (n_a, e_a), (n_b, e_b) = levels[i], ref[j]
        if abs(e_a - e_b) <= tol:
            pairs.append((n_a, n_b, e_a))
            i += 1
            j += 1
        elif e_a < e_b:
            left.append(levels[i])
            i += 1
        else:
            right.append(ref[j])
            j += 1
    left.extend(levels[i:])
    right.extend(ref[j:])
    return pairs, left, right


def hierarchy_spectra(
    ham: SusyHamiltonian,
    rep: AlgebraRep,
    tol: float = 1e-8,
    guard: int | None = None,
) -> HierarchyReport:
    """Diagonalize ``H`` in each grade sector and pair the sector spectra.

    Only levels ``n <= top`` enter.  The pairing is checked against the map
    induced by ``Q+``: for each interior eigenvector ``v`` with ``Q+ v != 0``
    the report records ``max ||H Q+ v - E Q+ v|| / ||Q+ v||``.
    """
    guard = _check_guard(rep, guard)
    k, space = rep.k, rep.space
    charges = build_supercharges(rep, shift=ham.shift)
    lv, gr = space.levels, space.grades
    spectra, vectors = {}, {}
    for g in range(k):
        idx = np.flatnonzero((gr == g) & (lv <= rep.top))
        block = ham.H[np.ix_(idx, idx)]
        evals, evecs = np.linalg.eigh(block)
        labels = lv[idx][np.argmax(np.abs(evecs), axis=0)]
        order = np.lexsort((labels, evals))
        spectra[g] = [(int(labels[i]), float(evals[i])) for i in order]
        full = np.zeros((space.dim, len(idx)), dtype=complex)
        full[idx, :] = evecs
        vectors[g] = (evals, labels, full)

    worst = 0.0
    for g, (evals, labels, full) in vectors.items():
        for i in np.flatnonzero(labels <= rep.top - guard):
            w = charges.Qplus @ full[:, i]
            norm = np.linalg.norm(w)
            if norm > 1e-12:
                worst = max(worst, float(np.linalg.norm(ham.H @ w - evals[i] * w) / norm))

    ref = ham.shift % k
    pairing, unpaired, unpaired_ref = {}, {}, {}
    for g in range(k):
        if g == ref:
            continue
        pairing[g], unpaired[g], unpaired_ref[g] = _pair(spectra[g], spectra[ref], tol)
    relations = verify_fsusy(rep, charges, ham, guard=guard)
    return HierarchyReport(
        k=k,
        reference_grade=ref,
        tol=tol,
        spectra=spectra,
        pairing=pairing,
        unpaired=unpaired,
        unpaired_reference=unpaired_ref,
        intertwining_residual=worst,
        relations=relations,
    )
