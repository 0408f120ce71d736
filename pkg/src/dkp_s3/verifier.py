"""Pointwise residuals of the component equations on an interior (r, z) grid.

Every residual is assembled from its individual terms so that it can be
normalized by the largest term magnitude entering that equation.  All
derivatives are exact (Taylor jets), so the residual floor is set by
rounding alone.
"""
from dataclasses import dataclass, field

import numpy as np

from . import jets
from .jets import Jet
from .modes import HelicityClass
from .oracles import OracleResult, axial_oracle, radial_oracle, spectrum_crosscheck  # noqa: F401
from .profiles import GAMMA, LADDERS, AxialProfile, RadialProfile, ladder_coefficient, ladder_jet2

DEFAULT_TOL = 1e-8
DEFAULT_MARGIN = 1e-2


def chebyshev_points(lo, hi, n):
    """First-kind Chebyshev nodes mapped to (lo, hi); strictly interior, clustered at both ends."""
    k = np.arange(n)
    x = -np.cos(np.pi * (k + 0.5) / n)
    x = (x - x[::-1]) / 2  # exact mirror symmetry about the midpoint
    return (lo + hi) / 2 + (hi - lo) / 2 * x


@dataclass(frozen=True)
class Grid2D:
    r_points: np.ndarray
    z_points: np.ndarray
    margin_r: float = DEFAULT_MARGIN
    margin_z: float = DEFAULT_MARGIN

    def __post_init__(self):
        r = np.asarray(self.r_points, dtype=float)
        z = np.asarray(self.z_points, dtype=float)
        if r.ndim != 1 or z.ndim != 1 or r.size == 0 or z.size == 0:
            raise ValueError("grid axes must be non-empty 1-D arrays")
        if np.any(np.diff(r) <= 0) or np.any(np.diff(z) <= 0):
            raise ValueError("grid points must be strictly increasing")
        if r[0] < self.margin_r or r[-1] > np.pi - self.margin_r:
            raise ValueError("r points must lie inside (margin_r, pi - margin_r)")
        if z[0] < -np.pi / 2 + self.margin_z or z[-1] > np.pi / 2 - self.margin_z:
            raise ValueError("z points must lie inside (-pi/2 + margin_z, pi/2 - margin_z)")
        object.__setattr__(self, "r_points", r)
        object.__setattr__(self, "z_points", z)

    @classmethod
    def chebyshev(cls, nr=64, nz=64, margin_r=DEFAULT_MARGIN, margin_z=DEFAULT_MARGIN):
        r = chebyshev_points(margin_r, np.pi - margin_r, nr)
        z = chebyshev_points(-np.pi / 2 + margin_z, np.pi / 2 - margin_z, nz)
        return cls(r, z, margin_r, margin_z)

    @property
    def shape(self):
        return self.r_points.size, self.z_points.size


@dataclass(frozen=True)
class EquationResidual:
    max_abs: float
    rms: float
    worst_point: tuple
    scale: float
    relative: float
    term_magnitudes: dict

    def to_dict(self):
        return {
            "max_abs": self.max_abs,
            "rms": self.rms,
            "worst_point": list(self.worst_point),
            "scale": self.scale,
            "relative": self.relative,
            "term_magnitudes_at_worst": dict(self.term_magnitudes),
        }


@dataclass
class ResidualReport:
    suite: str
    per_equation: dict = field(default_factory=dict)
    scale: float = 0.0
    tolerance: float = DEFAULT_TOL

    @property
    def max_relative(self):
        return max((eq.relative for eq in self.per_equation.values()), default=0.0)

    @property
    def passed(self):
        return self.max_relative <= self.tolerance

    def failing(self):
        return [name for name, eq in self.per_equation.items() if eq.relative > self.tolerance]

    def to_dict(self):
        return {
            "suite": self.suite,
            "passed": self.passed,
            "tolerance": self.tolerance,
            "scale": self.scale,
            "max_relative": self.max_relative,
            "equations": {name: eq.to_dict() for name, eq in self.per_equation.items()},
        }


class _Collector:
    """Accumulates equations of one suite; points are (r, z) mesh indices."""

    def __init__(self, suite, r, z, scale, tol):
        self.report = ResidualReport(suite, scale=float(scale), tolerance=tol)
        self.r, self.z = r, z

    def add(self, name, terms):
        arrays = {label: np.broadcast_to(np.asarray(t), (self.r.size, self.z.size)) for label, t in terms}
        total = sum(arrays.values())
        absres = np.abs(total)
        mags = {label: float(np.max(np.abs(a))) for label, a in arrays.items()}
        scale = max(mags.values(), default=0.0)
        if scale == 0:
            scale = self.report.scale or 1.0
        idx = np.unravel_index(int(np.argmax(absres)), absres.shape)
        max_abs = float(absres[idx])
        worst = (float(self.r[idx[0]]), float(self.z[idx[1]]))
        self.report.per_equation[name] = EquationResidual(
            max_abs=max_abs,
            rms=float(np.sqrt(np.mean(absres ** 2))),
            worst_point=worst,
            scale=scale,
            relative=max_abs / scale,
            term_magnitudes={label: float(np.abs(a[idx])) for label, a in arrays.items()},
        )


class _FieldJets:
    """Bivariate jets of every component plus the mesh helpers the equations need."""

    def __init__(self, fld, grid, order_r=1, order_z=1):
        self.field = fld
        self.m = fld.mode.m
        self.r = grid.r_points
        self.z = grid.z_points
        self.jets = {name: comp.jet2(self.r, self.z, order_r, order_z)
                     for name, comp in fld.components().items()}
        self.R = self.r[:, None]
        zz = self.z[None, :]
        self.cos = np.cos(zz)
        self.tan = np.tan(zz)
        self.zjet_cos = jets.cos(Jet.variable(self.z, order_z))

    def scale(self):
        return max(float(np.max(np.abs(j.d(0, 0)))) for j in self.jets.values())

    def v(self, name):
        return self.jets[name].d(0, 0)

    def dz(self, name):
        return self.jets[name].d(0, 1)

    def ladder(self, which, name):
        s, _ = LADDERS[which]
        j = self.jets[name]
        c = ladder_coefficient(which, self.R, self.m)
        return GAMMA * (s * j.d(1, 0) + c * j.d(0, 0))

    def shifted_dz(self, name, k):
        """(d/dz - k tan z) applied to a component."""
        return self.dz(name) - k * self.tan * self.v(name)

    def rescaled(self, name, power):
        """Jet of cos^power z times a component."""
        return self.jets[name].mul_z(jets.power(self.zjet_cos, power))


def _grid_or_default(grid):
    return Grid2D.chebyshev() if grid is None else grid


def verify_first_order_system(fld, mode=None, grid=None, tol=DEFAULT_TOL):
    """All ten equations of the first-order component system."""
    grid = _grid_or_default(grid)
    mode = fld.mode if mode is None else mode
    fj = _FieldJets(fld, grid)
    eps = fld.epsilon
    kab, kcd = fld.rhs_coefficients
    c = fj.cos
    v, L, Dz = fj.v, fj.ladder, fj.shifted_dz
    col = _Collector("first_order_system", fj.r, fj.z, fj.scale(), tol)
    col.add("div_E", [("-b_minus E1", -L("b_minus", "E1")), ("-a_plus E3", -L("a_plus", "E3")),
                      ("-cos z (dz - 2 tan z) E2", -c * Dz("E2", 2)), ("-M cos z Phi0", -kab * c * v("Phi0"))])
    col.add("curl_H_1", [("i a H2", 1j * L("a", "H2")), ("i eps cos z E1", 1j * eps * c * v("E1")),
                         ("i cos z (dz - tan z) H1", 1j * c * Dz("H1", 1)), ("-M cos z Phi1", -kab * c * v("Phi1"))])
    col.add("curl_H_2", [("-i b_minus H1", -1j * L("b_minus", "H1")), ("i a_plus H3", 1j * L("a_plus", "H3")),
                         ("i eps cos z E2", 1j * eps * c * v("E2")), ("-M cos z Phi2", -kab * c * v("Phi2"))])
    col.add("curl_H_3", [("-i b H2", -1j * L("b", "H2")), ("i eps cos z E3", 1j * eps * c * v("E3")),
                         ("-i cos z (dz - tan z) H3", -1j * c * Dz("H3", 1)), ("-M cos z Phi3", -kab * c * v("Phi3"))])
    col.add("grad_1", [("a Phi0", L("a", "Phi0")), ("-i eps cos z Phi1", -1j * eps * c * v("Phi1")),
                       ("-M cos z E1", -kcd * c * v("E1"))])
    col.add("grad_2", [("-i eps Phi2", -1j * eps * v("Phi2")), ("-dz Phi0", -fj.dz("Phi0")),
                       ("-M E2", -kcd * v("E2"))])
    col.add("grad_3", [("b Phi0", L("b", "Phi0")), ("-i eps cos z Phi3", -1j * eps * c * v("Phi3")),
                       ("-M cos z E3", -kcd * c * v("E3"))])
    col.add("curl_Phi_1", [("-i a Phi2", -1j * L("a", "Phi2")), ("-i cos z (dz - tan z) Phi1", -1j * c * Dz("Phi1", 1)),
                           ("-M cos z H1", -kcd * c * v("H1"))])
    col.add("curl_Phi_2", [("i b_minus Phi1", 1j * L("b_minus", "Phi1")), ("-i a_plus Phi3", -1j * L("a_plus", "Phi3")),
                           ("-M cos z H2", -kcd * c * v("H2"))])
    col.add("curl_Phi_3", [("i b Phi2", 1j * L("b", "Phi2")), ("i cos z (dz - tan z) Phi3", 1j * c * Dz("Phi3", 1)),
                           ("-M cos z H3", -kcd * c * v("H3"))])
    return col.report


def verify_helicity(fld, sigma=None, grid=None, tol=DEFAULT_TOL):
    """Eigen-equation of the generalized helicity operator, component by component."""
    grid = _grid_or_default(grid)
    sigma = fld.sigma if sigma is None else sigma
    fj = _FieldJets(fld, grid)
    c = fj.cos
    v, L, Dz = fj.v, fj.ladder, fj.shifted_dz
    col = _Collector("helicity", fj.r, fj.z, fj.scale(), tol)
    col.add("scalar", [("sigma Phi0", sigma * v("Phi0"))])
    for block in ("Phi", "E", "H"):
        x1, x2, x3 = (f"{block}{k}" for k in (1, 2, 3))
        col.add(f"{block}_1", [(f"cos z (dz - tan z) {x1}", c * Dz(x1, 1)),
                               (f"-sigma cos z {x1}", -sigma * c * v(x1)), (f"a {x2}", L("a", x2))])
        col.add(f"{block}_2", [(f"-b_minus {x1}", -L("b_minus", x1)), (f"a_plus {x3}", L("a_plus", x3)),
                               (f"-sigma cos z {x2}", -sigma * c * v(x2))])
        col.add(f"{block}_3", [(f"-cos z (dz - tan z) {x3}", -c * Dz(x3, 1)),
                               (f"-sigma cos z {x3}", -sigma * c * v(x3)), (f"-b {x2}", -L("b", x2))])
    return col.report


def verify_lorentz(fld, mode=None, grid=None, tol=DEFAULT_TOL):
    """Divergence condition on the vector block, directly and in barred variables."""
    grid = _grid_or_default(grid)
    fj = _FieldJets(fld, grid)
    eps = fld.epsilon
    c = fj.cos
    v, L, Dz = fj.v, fj.ladder, fj.shifted_dz
    col = _Collector("lorentz", fj.r, fj.z, fj.scale(), tol)
    col.add("lorentz", [("-i eps Phi0", -1j * eps * v("Phi0")),
                        ("-b_minus Phi1 / cos z", -L("b_minus", "Phi1") / c),
                        ("-a_plus Phi3 / cos z", -L("a_plus", "Phi3") / c),
                        ("-(dz - 2 tan z) Phi2", -Dz("Phi2", 2))])
    bar1 = ladder_jet2("b_minus", fj.rescaled("Phi1", 1), fj.r, fj.m).d(0, 0)
    bar3 = ladder_jet2("a_plus", fj.rescaled("Phi3", 1), fj.r, fj.m).d(0, 0)
    dphi2 = fj.rescaled("Phi2", 2).d(0, 1)
    col.add("barred_sum", [("phi_bar_1", bar1), ("phi_bar_3", bar3), ("dz phi_2", dphi2),
                           ("i eps cos^2 z Phi0", 1j * eps * c ** 2 * v("Phi0"))])
    return col.report


SECOND_ORDER_KINDS = ("radial_legendre", "axial_nonzero_sigma", "axial_zero_sigma", "phi0_wave", "phibar_wave")


def _delta2(j, r, m):
    """Delta applied to a Jet2 (needs r-order >= 2); returns the mesh."""
    R = r[:, None]
    return 0.5 * (-j.d(2, 0) - np.cos(R) / np.sin(R) * j.d(1, 0) + m * m / np.sin(R) ** 2 * j.d(0, 0))


def _cos2_operator_terms(j, z, prefix):
    """Terms of d/dz cos^2 z d/dz acting on a Jet2 (needs z-order >= 2)."""
    Z = z[None, :]
    return [(f"cos^2 z dz^2 {prefix}", np.cos(Z) ** 2 * j.d(0, 2)),
            (f"-sin 2z dz {prefix}", -np.sin(2 * Z) * j.d(0, 1))]


def _radial_residual(profile, grid, tol):
    r = grid.r_points
    f, d1, d2 = profile.jet(r, 2).derivatives()
    m = profile.m
    zdummy = np.array([0.0])
    col = _Collector("radial_legendre", r, zdummy, float(np.max(np.abs(f))), tol)
    col.add("radial", [("f''", d2[:, None]), ("cot r f'", (np.cos(r) / np.sin(r) * d1)[:, None]),
                       ("-m^2/sin^2 r f", (-m * m / np.sin(r) ** 2 * f)[:, None]),
                       ("Lambda f", (profile.lam * f)[:, None])])
    return col.report


def _axial_residual(profile, grid, tol, kind):
    z = grid.z_points
    rdummy = np.array([0.0])
    f, d1, d2 = profile.auxiliary_jet(z, 2).derivatives()
    col = _Collector(kind, rdummy, z, float(np.max(np.abs(f))), tol)
    lam_term = -profile.lam / np.cos(z) ** 2 * f
    if kind == "axial_nonzero_sigma":
        if profile.divide_by_cos:
            raise ValueError("axial_nonzero_sigma applies to nonzero-sigma profiles")
        # -sigma^2 = eps^2 - M^2
        gap = -(profile.sigma ** 2)
        col.add("axial", [("f''", d2[None, :]), ("(eps^2 - M^2) f", (gap * f)[None, :]),
                          ("-Lambda/cos^2 z f", lam_term[None, :])])
        return col.report
    if not profile.divide_by_cos:
        raise ValueError("axial_zero_sigma applies to sigma = 0 profiles")
    col.add("auxiliary", [("f''", d2[None, :]), ("(eps^2 - M^2 + 1) f", (profile.gap * f)[None, :]),
                          ("-Lambda/cos^2 z f", lam_term[None, :])])
    p, p1, p2 = profile.jet(z, 2).derivatives()
    col.add("physical", [("P''", p2[None, :]), ("-2 tan z P'", (-2 * np.tan(z) * p1)[None, :]),
                         ("(eps^2 - M^2) P", ((profile.gap - 1) * p)[None, :]),
                         ("-Lambda/cos^2 z P", (-profile.lam / np.cos(z) ** 2 * p)[None, :])])
    return col.report


def verify_second_order(target, which, grid=None, tol=DEFAULT_TOL):
    """Residual of one named second-order equation for a profile or an assembled field."""
    grid = _grid_or_default(grid)
    if which not in SECOND_ORDER_KINDS:
        raise ValueError(f"unknown equation {which!r}; expected one of {SECOND_ORDER_KINDS}")
    if which == "radial_legendre":
        if not isinstance(target, RadialProfile):
            raise TypeError("radial_legendre needs a RadialProfile")
        return _radial_residual(target, grid, tol)
    if which in ("axial_nonzero_sigma", "axial_zero_sigma"):
        if not isinstance(target, AxialProfile):
            raise TypeError(f"{which} needs an AxialProfile")
        return _axial_residual(target, grid, tol, which)
    fld = target
    if fld.mode.helicity_class is not HelicityClass.ZERO:
        raise ValueError(f"{which} applies to sigma = 0 fields")
    gap = fld.epsilon ** 2 - fld.mode.M ** 2
    r, z = grid.r_points, grid.z_points
    c2 = np.cos(z)[None, :] ** 2
    if which == "phi0_wave":
        j = fld.Phi0.jet2(r, z, 2, 2)
        col = _Collector(which, r, z, float(np.max(np.abs(j.d(0, 0)))), tol)
        col.add("phi0", [("-2 Delta Phi0", -2 * _delta2(j, r, fld.mode.m))]
                + _cos2_operator_terms(j, z, "Phi0")
                + [("(eps^2 - M^2) cos^2 z Phi0", gap * c2 * j.d(0, 0))])
        return col.report
    col = _Collector(which, r, z, 0.0, tol)
    for label, comp, ladder in (("phi_bar_1", fld.Phi1, "b_minus"), ("phi_bar_3", fld.Phi3, "a_plus")):
        phi = comp.jet2(r, z, 3, 2).mul_z(jets.cos(Jet.variable(z, 2)))
        bar = ladder_jet2(ladder, phi, r, fld.mode.m)
        col.report.scale = max(col.report.scale, float(np.max(np.abs(bar.d(0, 0)))))
        col.add(label, [(f"-2 Delta {label}", -2 * _delta2(bar, r, fld.mode.m))]
                + _cos2_operator_terms(bar, z, label)
                + [(f"(eps^2 - M^2) cos^2 z {label}", gap * c2 * bar.d(0, 0))])
    return col.report


def verify_zero_sigma_chain(fld, grid=None, tol=DEFAULT_TOL):
    """Algebraic and differential relations tying Phi_0, phi_2 and the barred pair together."""
    if fld.mode.helicity_class is not HelicityClass.ZERO:
        raise ValueError("the chain applies to sigma = 0 fields")
    grid = _grid_or_default(grid)
    r, z = grid.r_points, grid.z_points
    m = fld.mode.m
    eps, M = fld.epsilon, fld.mode.M
    gap = eps ** 2 - M ** 2
    zc = jets.cos(Jet.variable(z, 3))
    c2 = np.cos(z)[None, :] ** 2

    def barred(comp, ladder, order_r, order_z):
        return ladder_jet2(ladder, comp.jet2(r, z, order_r + 1, order_z).mul_z(zc), r, m)

    phi0 = fld.Phi0.jet2(r, z, 2, 3)
    phi2 = fld.Phi2.jet2(r, z, 2, 2).mul_z(zc * zc)
    e2 = fld.E2.jet2(r, z, 0, 0).mul_z(zc * zc)
    bar1 = barred(fld.Phi1, "b_minus", 1, 1)
    bar3 = barred(fld.Phi3, "a_plus", 1, 1)
    ebar1 = barred(fld.E1, "b_minus", 0, 0)
    ebar3 = barred(fld.E3, "a_plus", 0, 0)
    dz_delta_phi0 = _delta2(phi0.diff_z(), r, m)

    col = _Collector("zero_sigma_chain", r, z, float(np.max(np.abs(phi0.d(0, 0)))), tol)
    col.add("bar_equal", [("phi_bar_1", bar1.d(0, 0)), ("-phi_bar_3", -bar3.d(0, 0))])
    col.add("e_bar_equal", [("e_bar_1", ebar1.d(0, 0)), ("-e_bar_3", -ebar3.d(0, 0))])
    col.add("delta_phi2", [("Delta phi_2", _delta2(phi2, r, m)), ("cos^2 z dz phi_bar", c2 * bar1.d(0, 1))])
    col.add("barred_sum", [("-2 phi_bar", -2 * bar1.d(0, 0)), ("-dz phi_2", -phi2.d(0, 1)),
                           ("-i eps cos^2 z Phi0", -1j * eps * c2 * phi0.d(0, 0))])
    col.add("e_bar", [("e_bar", ebar1.d(0, 0)), ("-(M / i eps) phi_bar", -(M / (1j * eps)) * bar1.d(0, 0))])
    col.add("e_2", [("e_2", e2.d(0, 0)), ("-(M / i eps) phi_2", -(M / (1j * eps)) * phi2.d(0, 0))])
    col.add("phi2_from_phi0", [("(eps^2 - M^2) phi_2", gap * phi2.d(0, 0)),
                               ("-i eps cos^2 z dz Phi0", -1j * eps * c2 * phi0.d(0, 1))])
    col.add("delta_phi0", [("i eps Delta Phi0", 1j * eps * _delta2(phi0, r, m)),
                           ("(eps^2 - M^2) phi_bar", gap * bar1.d(0, 0))])
    # Delta applied to phi_2 = i eps cos^2 z dz Phi0 / (eps^2 - M^2), then phi_2 eliminated
    col.add("chain_closure", [("-cos^2 z dz phi_bar", -c2 * bar1.d(0, 1)),
                              ("-i eps cos^2 z dz Delta Phi0 / (eps^2 - M^2)",
                               -1j * eps / gap * c2 * dz_delta_phi0)])
    return col.report


def verify_all(fld, grid=None, tol=DEFAULT_TOL):
    """Every residual suite that applies to the field's class, keyed by suite name."""
    grid = _grid_or_default(grid)
    reports = {
        "first_order_system": verify_first_order_system(fld, grid=grid, tol=tol),
        "helicity": verify_helicity(fld, grid=grid, tol=tol),
        "lorentz": verify_lorentz(fld, grid=grid, tol=tol),
    }
    if fld.mode.helicity_class is HelicityClass.ZERO:
        reports["phi0_wave"] = verify_second_order(fld, "phi0_wave", grid, tol)
        reports["phibar_wave"] = verify_second_order(fld, "phibar_wave", grid, tol)
        reports["zero_sigma_chain"] = verify_zero_sigma_chain(fld, grid, tol)
    return reports
