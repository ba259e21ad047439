r"""
Finite-difference crosscheck
============================

Diagonalize ``-d^2/dx^2 + V`` on a uniform grid and compare with the spectra
predicted by the algebra.
"""

from fracsusy import CSPotentialModel, HarmonicOscillator, Morse, PoschlTeller, PotentialModel, crosscheck_family, shape_shift_check
from fracsusy.schrodinger import grid_convergence_ratio

for model in (
    PotentialModel(Morse(2)),
    PotentialModel(PoschlTeller(2.0, 2.0)),
    PotentialModel(HarmonicOscillator()),
    CSPotentialModel(3.0, 1.0, 0),
):
    print(crosscheck_family(model).table(), end="\n\n")

# %%
# Higher members of the hierarchy are checked the same way.

print(crosscheck_family(PotentialModel(PoschlTeller(2.0, 2.0), k=3, s=2)).table())

# %%
# The partner potentials differ by a constant, so their FD spectra differ by
# that constant level by level on a shared grid.

print(shape_shift_check(PoschlTeller(2.0, 2.0), k=2))
print(shape_shift_check(CSPotentialModel(3.0, 1.0), k=2))

# %%
# Halving the spacing divides the ground-state error by about four.

print(grid_convergence_ratio(lambda x: x**2, 1.0, -8.0, 8.0, 399))
