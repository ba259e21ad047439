r"""
Cyclic structure functions
==========================

Constant gaps ``f_s`` give a periodic block spectrum.  Restricted to states
with ``n = s mod k`` the eigenvalue of ``X+ X-`` is ``n k g_0 + sum_{i<s} f_i``.
"""

import io

import numpy as np

from fracsusy import CyclicSpec, build_rep, build_space, circular_shift, dft_coeffs, restricted_spectrum_check, verify_cyclic_identities
from fracsusy.cyclic import write_block_spectrum_csv

p = CyclicSpec((2.0, 3.0, 5.0))
g = dft_coeffs(p)
print("g:", np.round(g.g, 6), " block length:", 3 * g.g[0].real)

# %%
# Plot-ready rows ``global_index, n, s, energy``.

buf = io.StringIO()
write_block_spectrum_csv(p, 3, buf)
print(buf.getvalue())

# %%
# The matrix spectrum on the restricted space and the cyclic identities.

rep = build_rep(build_space(3, 24), p)
print("restricted spectrum residual:", restricted_spectrum_check(rep, p))
report = verify_cyclic_identities(rep, p)
print(report.residuals)

# %%
# Taken literally, without removing the constant and the ``k - 1`` factor of
# the sector Hamiltonians, the permutation identity is off by a constant.

print("unreduced residual:", report.notes["unreduced_permutation"])
print("h(f) =", circular_shift(p, 1).f)
