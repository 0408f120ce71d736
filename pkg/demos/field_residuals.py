#%% imports
from dkp_s3.assembler import AssemblyOptions, assemble
from dkp_s3.modes import HelicityClass, ModeSpec
from dkp_s3.verifier import Grid2D, verify_all

grid = Grid2D.chebyshev(64, 64)

#%% one mode per class, every applicable suite
modes = [
    ModeSpec(0, 0, 0, 1.0, HelicityClass.NONZERO_PLUS),
    ModeSpec(1, 1, 0, 3.0, HelicityClass.NONZERO_MINUS),
    ModeSpec(2, 0, 1, 0.0, HelicityClass.NONZERO_PLUS),  # massless
    ModeSpec(1, 0, 1, 2.0, HelicityClass.ZERO),
]
for mode in modes:
    fld = assemble(mode)
    print(mode.helicity_class.value, (mode.m, mode.n_r, mode.n_z), "M =", mode.M, "eps =", round(fld.epsilon, 6))
    for name, rep in verify_all(fld, grid).items():
        print(f"   {name:20s} {rep.max_relative:.2e} {'ok' if rep.passed else 'FAIL'}")

#%% numeric ladder inversion instead of the factorized side components
fld = assemble(ModeSpec(1, 1, 1, 1.0), AssemblyOptions(reconstruct_unbarred=True))
print({name: f"{rep.max_relative:.1e}" for name, rep in verify_all(fld, Grid2D.chebyshev(24, 24)).items()})

#%% a 0.1 per cent change in one component is visible
fld = assemble(ModeSpec(0, 1, 1, 1.0))
for name in ("Phi1", "Phi2", "E3", "H2"):
    reports = verify_all(fld.perturbed(name, 1.001), grid)
    failing = {k: v.failing() for k, v in reports.items() if not v.passed}
    print(name, failing)
