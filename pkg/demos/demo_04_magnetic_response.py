"""
Zero-temperature magnetization and susceptibility
=================================================

M = -dE/dB and chi = -d2E/dB2 for the ground state, as functions of the field
and of the flux. Same data the ``skpflux sweep`` command writes as CSV.
"""

# %%
import numpy as np

from skpflux import FieldConfig, PotentialParams, QuantumState
from skpflux.thermo import magnetization_zero_T, susceptibility_zero_T

p = PotentialParams(alpha=0.005)
q = QuantumState(0, 0)

print("    B        M0            chi0        (phi = 1)")
for B in np.linspace(1, 10, 7):
    f = FieldConfig(B, 1.0)
    print(f"{B:6.2f} {magnetization_zero_T(p, f, q):13.5e} {susceptibility_zero_T(p, f, q):13.5e}")

# %%
print("  phi       M0            chi0        (B = 1)")
for phi in np.linspace(0, 50, 11):
    f = FieldConfig(1.0, phi)
    print(f"{phi:6.1f} {magnetization_zero_T(p, f, q):13.5e} {susceptibility_zero_T(p, f, q):13.5e}")

# %%
# At these parameters |M0| shrinks with B and chi0 falls with B; against the
# flux both grow quickly past phi ~ 15 without levelling off.
