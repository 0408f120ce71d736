#%% imports
import numpy as np

from dkp_s3.modes import HelicityClass, ModeSpec, enumerate_modes, mode_triples
from dkp_s3.profiles import axial_phi2, radial_phi2

#%% closed-form levels for a massive field
M = 1.0
for mode, point in enumerate_modes(2, M, (HelicityClass.NONZERO_PLUS, HelicityClass.ZERO)):
    print(f"{mode.helicity_class.value:14s} m={mode.m:+d} n_r={mode.n_r} n_z={mode.n_z}  "
          f"lambda={point.lam:4.0f}  eps={point.epsilon:.6f}  sigma={point.sigma}")

#%% level n holds (n+1)^2 triples
for n in range(6):
    count = sum(1 for m, n_r, n_z in mode_triples(n) if abs(m) + n_r + n_z == n)
    print(n, count, (n + 1) ** 2)

#%% radial factors: sin^|m| r times a Jacobi polynomial in cos r
r = np.linspace(0, np.pi, 9)[1:-1]
for m, n_r in [(0, 0), (0, 1), (1, 0), (2, 1)]:
    p = radial_phi2(m, n_r)
    print(f"m={m} n_r={n_r} lam={p.lam:.0f}", np.round(p(r), 4))

#%% axial factors decay like cos^(n+1) z toward the poles
z = np.array([-1.5, -1.0, 0.0, 1.0, 1.5])
for n_z in range(3):
    prof = axial_phi2(ModeSpec(1, 0, n_z, M))
    print(f"n_z={n_z} s={prof.exponent_s:.0f}", np.round(prof(z), 4))

# value(-z) is the conjugate of value(z)
prof = axial_phi2(ModeSpec(0, 1, 3, M))
print(np.max(np.abs(prof(-z) - np.conj(prof(z)))))
