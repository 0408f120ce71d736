#%% imports
import numpy as np

from dkp_s3.geometry import geometry_check
from dkp_s3.modes import HelicityClass
from dkp_s3.oracles import Shift, axial_oracle, radial_oracle, spectrum_crosscheck

#%% radial separation constants from finite differences
for m in range(4):
    res = radial_oracle(m, count=3)
    exact = [(n + m) * (n + m + 1) for n in range(3)]
    print(m, np.round(res.eigenvalues, 8), exact, res.richardson_estimate.max())

#%% axial levels with and without the sigma = 0 shift
for lam in (0.0, 2.0, 6.0):
    print(lam, np.round(axial_oracle(lam, count=3).eigenvalues, 8),
          np.round(axial_oracle(lam, Shift.PLUS_ONE, count=3).eigenvalues, 8))

#%% composed spectrum against n + 1
for M, cls in [(0.0, HelicityClass.NONZERO_PLUS), (3.0, HelicityClass.NONZERO_MINUS), (2.0, HelicityClass.ZERO)]:
    table = spectrum_crosscheck(4, M, cls)
    print(cls.value, M, len(table.rows), f"{table.max_deviation:.2e}", table.skipped)

#%% background geometry
rep = geometry_check(100)
print(rep.tetrad_error, rep.christoffel_error, rep.nonzero_ricci)
