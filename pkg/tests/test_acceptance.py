"""One test per acceptance criterion, each at its stated tolerance.

Every test records a one-line verdict that the terminal summary prints
after the run, whether or not the assertion holds.
"""
import numpy as np
import pytest

from conftest import ACCEPTANCE
from dkp_s3.assembler import COMPONENTS, assemble
from dkp_s3.geometry import geometry_check
from dkp_s3.jets import Factor, Separable
from dkp_s3.modes import (HelicityClass, ModeSpec, energy_nonzero_sigma, enumerate_modes, mode_triples,
                          spectral_point)
from dkp_s3.oracles import radial_oracle, spectrum_crosscheck
from dkp_s3.profiles import axial_phi2, barred_pair, radial_phi2
from dkp_s3.verifier import (verify_all, verify_first_order_system, verify_helicity, verify_lorentz,
                             verify_second_order, verify_zero_sigma_chain)

PLUS, MINUS, ZERO = HelicityClass.NONZERO_PLUS, HelicityClass.NONZERO_MINUS, HelicityClass.ZERO
TOL = 1e-8


def record(number, passed, summary):
    ACCEPTANCE[number] = (bool(passed), summary)
    return passed


def worst(reports):
    name, rep = max(reports, key=lambda item: item[1].max_relative)
    return rep.max_relative, name


def assemblable(pairs):
    # sigma = 0 with n = 0 has eps^2 = M^2, where phi_2 is undefined
    return [mode for mode, _ in pairs if mode.helicity_class.nonzero or mode.principal_n > 0]


def massive_modes():
    return [mode for M in (1.0, 3.0) for mode, _ in enumerate_modes(3, M, (PLUS, MINUS))]


def test_radial_quantization():
    dev = 0.0
    bad = []
    for m in (0, 1, -1, 2, -2, 3, -3):
        res = radial_oracle(m, count=4, mesh=2000)
        for n_r in range(4):
            N = n_r + abs(m)
            lam = N * (N + 1)
            err = abs(res.eigenvalues[n_r] - lam)
            dev = max(dev, err / max(lam, 1.0))
            if err > max(1e-6 * lam, 1e-7):
                bad.append((m, n_r, err))
    assert record(1, not bad, f"radial oracle vs N(N+1), 28 levels, max scaled deviation {dev:.2e}"), bad


def test_energy_spectrum_nonzero_sigma():
    tables = [spectrum_crosscheck(4, M, cls) for M in (0.0, 1.0, 3.0) for cls in (PLUS, MINUS)]
    dev = max(t.max_deviation for t in tables)
    rows = sum(len(t.rows) for t in tables)
    assert record(2, dev <= 1e-6, f"sigma != 0 oracle spectrum, {rows} rows, max relative deviation {dev:.2e}")


def test_energy_spectrum_zero_sigma():
    tables = [spectrum_crosscheck(4, M, ZERO) for M in (1.0, 2.0)]
    dev = max(t.max_deviation for t in tables)
    rows = sum(len(t.rows) for t in tables)
    assert record(3, dev <= 1e-6, f"sigma = 0 shifted oracle spectrum, {rows} rows, max relative deviation {dev:.2e}")


def test_full_system_residuals(grid):
    reports = [(mode, verify_first_order_system(assemble(mode), grid=grid, tol=TOL)) for mode in massive_modes()]
    failed = [mode for mode, rep in reports if not rep.passed]
    value, mode = worst(reports)
    assert record(4, not failed, f"first-order system, {len(reports)} modes, worst relative residual {value:.2e}"), failed


def test_helicity_eigenequation(grid):
    reports = [(mode, verify_helicity(assemble(mode), grid=grid, tol=TOL)) for mode in massive_modes()]
    failed = [mode for mode, rep in reports if not rep.passed]
    value, _ = worst(reports)
    closure = 0.0
    for M in (0.0, 0.5, 1.0, 2.0, 3.0, 10.0):
        for mode, point in enumerate_modes(6, M, (PLUS, MINUS)):
            scale = max(1.0, point.epsilon ** 2)
            closure = max(closure, abs(point.sigma ** 2 + point.epsilon ** 2 - M ** 2) / scale)
    ok = not failed and closure <= 1e-12
    assert record(5, ok, f"helicity worst residual {value:.2e} over {len(reports)} modes, "
                         f"sigma^2 + eps^2 - M^2 worst {closure:.1e}"), failed


def _barred_identity(mode):
    rad = radial_phi2(mode.m, mode.n_r)
    ax = axial_phi2(mode)
    pair = barred_pair(rad, ax, spectral_point(mode).sigma)
    phi2 = Separable([(1.0, rad, Factor(ax.jet))])
    r = np.linspace(0.05, np.pi - 0.05, 41)
    z = np.linspace(-1.5, 1.5, 41)
    dz = phi2.evaluate(r, z, dz=1)
    total = pair.phi_bar_1.evaluate(r, z) + pair.phi_bar_3.evaluate(r, z) + dz
    return float(np.max(np.abs(total)) / np.max(np.abs(dz))) if np.max(np.abs(dz)) > 0 else float(np.max(np.abs(total)))


def test_lorentz_condition(grid):
    modes = [mode for M in (0.0, 1.0, 3.0) for mode in assemblable(enumerate_modes(3, M, (PLUS, MINUS, ZERO)))]
    reports = [(mode, verify_lorentz(assemble(mode), grid=grid, tol=TOL)) for mode in modes]
    failed = [mode for mode, rep in reports if not rep.passed]
    value, _ = worst(reports)
    identity = max(_barred_identity(mode) for mode in modes)
    ok = not failed and identity <= 1e-12
    assert record(6, ok, f"Lorentz worst residual {value:.2e} over {len(modes)} modes in three classes, "
                         f"barred identity worst {identity:.1e}"), failed


def test_massless_transition(grid):
    exact = all(energy_nonzero_sigma(0.0, m, n_r, n_z) == abs(m) + n_r + n_z + 1
                for m, n_r, n_z in mode_triples(6))
    tables = [spectrum_crosscheck(4, 0.0, cls) for cls in (PLUS, MINUS)]
    numeric = max(max(abs(row.numeric_epsilon - (row.mode.principal_n + 1)) / (row.mode.principal_n + 1)
                      for row in t.rows) for t in tables)
    modes = [mode for mode, _ in enumerate_modes(3, 0.0, (PLUS, MINUS))]
    reports = []
    for mode in modes:
        fld = assemble(mode)
        reports.append((mode, verify_first_order_system(fld, grid=grid, tol=TOL)))
        reports.append((mode, verify_helicity(fld, grid=grid, tol=TOL)))
        reports.append((mode, verify_lorentz(fld, grid=grid, tol=TOL)))
    failed = [mode for mode, rep in reports if not rep.passed]
    value, _ = worst(reports)
    ok = exact and numeric <= 1e-6 and not failed
    assert record(7, ok, f"M = 0: closed form exact {exact}, oracle deviation {numeric:.2e}, "
                         f"worst residual {value:.2e} over {len(modes)} modes"), failed


def test_zero_sigma_structure(grid):
    modes = [mode for M in (0.0, 1.0, 2.0) for mode in assemblable(enumerate_modes(3, M, (ZERO,)))]
    r, z = grid.r_points, grid.z_points
    h_zero = True
    reports = []
    for mode in modes:
        fld = assemble(mode)
        h_zero = h_zero and all(fld.component(h).is_zero and not np.any(fld.component(h).evaluate(r, z))
                                for h in ("H1", "H2", "H3"))
        reports.append((mode, verify_second_order(fld, "phi0_wave", grid, TOL)))
        reports.append((mode, verify_second_order(fld, "phibar_wave", grid, TOL)))
        reports.append((mode, verify_zero_sigma_chain(fld, grid, TOL)))
    failed = [mode for mode, rep in reports if not rep.passed]
    value, _ = worst(reports)
    assert record(8, h_zero and not failed, f"sigma = 0: H identically zero {h_zero}, Phi0/barred/chain worst "
                                            f"residual {value:.2e} over {len(modes)} modes"), failed


def test_geometry():
    rep = geometry_check(100, seed=0)
    ok = rep.tetrad_error <= 1e-12 and rep.christoffel_error <= 1e-6
    assert record(9, ok, f"100 points: tetrad {rep.tetrad_error:.1e}, Christoffel {rep.christoffel_error:.1e}")


def test_no_vacuous_passes(grid):
    modes = [ModeSpec(0, 0, 0, 1.0), ModeSpec(1, 0, 1, 1.0, MINUS), ModeSpec(-2, 1, 0, 3.0),
             ModeSpec(0, 1, 1, 0.0), ModeSpec(1, 1, 1, 0.0, MINUS),
             ModeSpec(0, 0, 1, 1.0, ZERO), ModeSpec(1, 0, 1, 2.0, ZERO), ModeSpec(0, 2, 0, 0.0, ZERO)]
    tried = 0
    missed = []
    weakest = np.inf
    for mode in modes:
        fld = assemble(mode)
        assert all(rep.passed for rep in verify_all(fld, grid, TOL).values()), mode
        for name in COMPONENTS:
            if fld.component(name).is_zero:
                continue  # scaling an identically zero component changes nothing
            tried += 1
            reports = verify_all(fld.perturbed(name, 1 + 1e-3), grid, TOL)
            signal = max(rep.max_relative for rep in reports.values())
            weakest = min(weakest, signal)
            if all(rep.passed for rep in reports.values()):
                missed.append((mode, name))
    assert record(10, not missed, f"{tried} single-component perturbations, all detected {not missed}, "
                                  f"weakest signal {weakest:.1e}"), missed
