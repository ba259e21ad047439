r"""
Translational shape invariance
==============================

The linear structure function ``aN + b`` gives the oscillator, Poschl-Teller
and Morse hierarchies.  Moving along the hierarchy is a shift ``b -> b + sa``.
"""

import matplotlib

matplotlib.use("Agg")
import matplotlib.pyplot as plt
import numpy as np

from fracsusy import Morse, PoschlTeller, PotentialModel, classify_spectrum, sector_shift_check, verify_translational_SI
from fracsusy.translational import closed_form_hierarchy

for fam in (PoschlTeller(2.0, 2.0), Morse(2)):
    print(type(fam).__name__, classify_spectrum(fam.params))

# %%
# The hierarchy link holds as an identity between diagonal operators, and its
# potential form holds pointwise.

for k in (2, 3, 4, 5):
    print(k, sector_shift_check(k, PoschlTeller(2, 2).params, 24), verify_translational_SI(Morse(2), k))

# %%
# Sector spectra of the order-3 Poschl-Teller hierarchy.

p = PoschlTeller(2.0, 2.0).params
for s in range(3):
    print(s, closed_form_hierarchy(3, s, p, np.arange(5)))

# %%
# The three order-3 Poschl-Teller partners.

xs = np.linspace(0.15 * np.pi, 0.85 * np.pi, 300)
fig, ax = plt.subplots()
for s in range(3):
    ax.plot(xs, PotentialModel(PoschlTeller(2.0, 2.0), k=3, s=s)(xs), label=f"V_{{3-{s}}}")
ax.set_xlabel("x")
ax.set_ylim(-10, 60)
ax.legend()
fig.savefig("poschl_teller_hierarchy.png", dpi=100)
