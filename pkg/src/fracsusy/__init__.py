"""Fractional supersymmetric quantum mechanics of order k.

Matrix representations of the graded Weyl-Heisenberg algebra, supercharges
and the hierarchy of isospectral sector Hamiltonians, the linear and cyclic
shape-invariance identities, and a finite-difference Schrodinger engine that
crosschecks the resulting potentials.
"""

from .exceptions import DomainError, InadmissibleSpec, NegativeStructureFunction
from .wh_algebra import (
    AlgebraRep,
    CyclicSpec,
    GradedSpace,
    LinearSpec,
    RelationReport,
    TabulatedSpec,
    build_rep,
    build_space,
    interior_projector,
    projectors,
    structure_F,
    verify_wk_relations,
)
from .fsusy import (
    HierarchyReport,
    SuperchargePair,
    SusyHamiltonian,
    build_hamiltonian,
    build_supercharges,
    hierarchy_spectra,
    verify_fsusy,
)
from .translational import (
    HarmonicOscillator,
    Morse,
    PoschlTeller,
    PotentialModel,
    classify_spectrum,
    linear_F,
    potential_value,
    sector_shift_check,
    si_energies,
    translational_flow,
    verify_translational_SI,
)
from .cyclic import (
    CSPotentialModel,
    circular_shift,
    cs_potential,
    cyclic_eigenvalue,
    dft_coeffs,
    restricted_spectrum_check,
    verify_cyclic_identities,
)
from .schrodinger import CrossCheckResult, Grid1D, crosscheck_family, fd_eigenvalues, shape_shift_check
from .suite import SuiteReport, full_suite

__version__ = "0.1.0"
