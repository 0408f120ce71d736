"""Assembly of the ten-component field (Phi_0, Phi, E, H) for one bound mode.

Conventions follow the reduced component system on the sphere: the vector
block is rescaled as Phi_1 = phi_1 / cos z, Phi_3 = phi_3 / cos z,
Phi_2 = phi_2 / cos^2 z, and the barred combinations b_- phi_1, a_+ phi_3
carry the helicity structure.  The unbarred radial factors follow from the
factorization 2 Delta = 2 b_- a = 2 a_+ b: for Lambda != 0,
phi_1(r) = (2 / Lambda) a R and phi_3(r) = (2 / Lambda) b R invert the barred
radial factor R exactly.  Numerical inversion of the ladder operators is
available as an alternative route.
"""
import math
import warnings
from dataclasses import dataclass, replace

import numpy as np
from scipy import integrate

from . import jets
from .errors import AssemblyError, DegenerateEnergyError, DomainError, InversionError
from .jets import Factor, Jet, Separable
from .modes import HelicityClass, ModeSpec, spectral_point
from .profiles import GAMMA, LADDERS, axial_phi2, ladder_coefficient, ladder_jet, radial_phi2

COMPONENTS = ("Phi0", "Phi1", "Phi2", "Phi3", "E1", "E2", "E3", "H1", "H2", "H3")


@dataclass(frozen=True)
class AssemblyOptions:
    """``reconstruct_unbarred=True`` rebuilds phi_1, phi_3 by numerical ladder inversion."""

    reconstruct_unbarred: bool = False
    ode_steps: int = 512
    margin: float = 1e-6

    def __post_init__(self):
        if self.ode_steps < 256:
            raise ValueError("ode_steps must be at least 256")
        if not self.margin > 0:
            raise ValueError("margin must be positive")


@dataclass(frozen=True)
class Field10:
    """Ten separable components plus the data needed to check them.

    ``rhs_coefficients`` are the factors multiplying the right-hand sides of
    the first-order system: (M, M) for massive fields, (0, 1) for the
    massless normalization where E and H absorb one power of M.
    """

    mode: ModeSpec
    epsilon: float
    sigma: complex
    lam: float
    Phi0: Separable
    Phi1: Separable
    Phi2: Separable
    Phi3: Separable
    E1: Separable
    E2: Separable
    E3: Separable
    H1: Separable
    H2: Separable
    H3: Separable
    rhs_coefficients: tuple = (1.0, 1.0)

    def component(self, name):
        if name not in COMPONENTS:
            raise KeyError(f"unknown component {name!r}")
        return getattr(self, name)

    def components(self):
        return {name: getattr(self, name) for name in COMPONENTS}

    def perturbed(self, name, factor):
        """Copy with one component multiplied by ``factor``."""
        return replace(self, **{name: self.component(name).scaled(factor)})

    def evaluate(self, r, z):
        """Component values on the mesh r x z."""
        return {name: comp.evaluate(r, z) for name, comp in self.components().items()}


ZERO = Separable()


def _cos_power_factor(profile, power, derivative=0, sigma=0j, sign=0):
    """Z cos^power z, or (sign sigma Z - Z') cos^power z / 2 when ``derivative`` is set."""
    def fn(z, order):
        zj = Jet.variable(z, order)
        if derivative:
            j = profile.jet(z, order + 1)
            base = (j * (sign * sigma) - j.diff()) * 0.5
        else:
            base = profile.jet(z, order)
        return base * jets.power(jets.cos(zj), power)
    return Factor(fn)


def _profile_derivative_factor(profile):
    def fn(z, order):
        return profile.jet(z, order + 1).diff()
    return Factor(fn, "dZ/dz")


def _ladder_factor(which, radial, m):
    return Factor(lambda r, order: ladder_jet(which, radial.jet(r, order + 1), r, m), f"{which} R")


def _half_tan_factor(sign):
    # regular solution of b_- f = 1 (sign -1) or a_+ f = 1 (sign +1) for m = 0
    def fn(r, order):
        rj = Jet.variable(r, order)
        return jets.tan(rj * 0.5) * (sign * math.sqrt(2))
    return Factor(fn, f"{sign:+d} sqrt2 tan(r/2)")


def _unbarred_factors(radial, m, opts):
    """Radial factors f_1, f_3 with b_- f_1 = R and a_+ f_3 = R."""
    if opts.reconstruct_unbarred:
        f1 = invert_ladder(radial, "b_minus", m, opts)
        f3 = invert_ladder(radial, "a_plus", m, opts)
        return (1.0, f1), (1.0, f3)
    if radial.lam == 0:
        return (1.0, _half_tan_factor(-1)), (1.0, _half_tan_factor(+1))
    scale = 2 / radial.lam
    return (scale, _ladder_factor("a", radial, m)), (scale, _ladder_factor("b", radial, m))


def _check_class(mode, nonzero):
    if mode.helicity_class.nonzero != nonzero:
        kind = "nonzero" if nonzero else "zero"
        raise AssemblyError(f"mode class {mode.helicity_class.value} is not a {kind}-sigma class")


def _vector_block(mode, opts):
    """Phi_1, Phi_2, Phi_3 for a nonzero-sigma mode, plus the spectral point."""
    point = spectral_point(mode)
    sigma = point.sigma
    radial = radial_phi2(mode.m, mode.n_r)
    axial = axial_phi2(mode)
    (c1, f1), (c3, f3) = _unbarred_factors(radial, mode.m, opts)
    phi1 = Separable([(c1, f1, _cos_power_factor(axial, -1, 1, sigma, -1))])
    phi3 = Separable([(c3, f3, _cos_power_factor(axial, -1, 1, sigma, +1))])
    phi2 = Separable([(1.0, radial, _cos_power_factor(axial, -2))])
    return point, phi1, phi2, phi3


def assemble_nonzero_sigma(mode, opts=AssemblyOptions()):
    """Massive field with sigma = +/- i sqrt(eps^2 - M^2); Phi_0 vanishes."""
    _check_class(mode, True)
    if mode.M == 0:
        raise DomainError("M = 0: use assemble_massless")
    point, p1, p2, p3 = _vector_block(mode, opts)
    M = mode.M
    ce = -1j * point.epsilon / M
    ch = -1j * point.sigma / M
    return Field10(mode, point.epsilon, point.sigma, point.lam,
                   ZERO, p1, p2, p3,
                   p1.scaled(ce), p2.scaled(ce), p3.scaled(ce),
                   p1.scaled(ch), p2.scaled(ch), p3.scaled(ch),
                   rhs_coefficients=(M, M))


def assemble_massless(mode, opts=AssemblyOptions()):
    """M = 0 field with sigma = +/- i eps; E = -i eps Phi and H = -i sigma Phi."""
    _check_class(mode, True)
    if mode.M != 0:
        raise DomainError("assemble_massless requires M = 0")
    point, p1, p2, p3 = _vector_block(mode, opts)
    ce = -1j * point.epsilon
    ch = -1j * point.sigma
    return Field10(mode, point.epsilon, point.sigma, point.lam,
                   ZERO, p1, p2, p3,
                   p1.scaled(ce), p2.scaled(ce), p3.scaled(ce),
                   p1.scaled(ch), p2.scaled(ch), p3.scaled(ch),
                   rhs_coefficients=(0.0, 1.0))


def assemble_zero_sigma(mode, opts=AssemblyOptions()):
    """sigma = 0 field built from the separable scalar Phi_0 = R(r) P(z); H vanishes."""
    _check_class(mode, False)
    point = spectral_point(mode)
    gap = point.epsilon ** 2 - mode.M ** 2
    if gap <= 0:
        raise DegenerateEnergyError(f"eps^2 = M^2 for {mode}: phi_2 is undefined")
    kappa = -1j * point.epsilon / gap
    radial = radial_phi2(mode.m, mode.n_r)
    axial = axial_phi2(mode)  # P = f / cos z
    phi0 = Separable([(1.0, radial, axial)])
    phi2 = Separable([(-kappa, radial, _profile_derivative_factor(axial))])
    if point.lam == 0:
        # a R = b R = 0: the barred combination and the side components vanish
        phi1 = phi3 = ZERO
    else:
        (c1, f1), (c3, f3) = _unbarred_factors(radial, mode.m, opts)
        lam2 = point.lam / 2
        phi1 = Separable([(kappa * c1 * lam2, f1, _cos_power_factor(axial, -1))])
        phi3 = Separable([(kappa * c3 * lam2, f3, _cos_power_factor(axial, -1))])
    ce = mode.M / (1j * point.epsilon)
    return Field10(mode, point.epsilon, 0j, point.lam,
                   phi0, phi1, phi2, phi3,
                   phi1.scaled(ce), phi2.scaled(ce), phi3.scaled(ce),
                   ZERO, ZERO, ZERO,
                   rhs_coefficients=(mode.M, mode.M))


def assemble(mode, opts=AssemblyOptions()):
    """Dispatch on helicity class and mass."""
    if mode.helicity_class is HelicityClass.ZERO:
        return assemble_zero_sigma(mode, opts)
    if mode.M == 0:
        return assemble_massless(mode, opts)
    return assemble_nonzero_sigma(mode, opts)


def _log_weight(which, m, r):
    """G(r) = (m log tan(r/2) + k log sin r) / s, an antiderivative of c(r) / s."""
    s, k = LADDERS[which]
    return (m * np.log(np.tan(r / 2)) + k * np.log(np.sin(r))) / s


def _regular_base(which, m):
    s, k = LADDERS[which]
    if (m + k) / s > 0:
        return 0.0
    if (k - m) / s > 0:
        return math.pi
    raise InversionError(f"{which} with m={m} has no endpoint where the homogeneous solution decays")


def _quad(fn, a, b, limit):
    with warnings.catch_warnings():
        warnings.simplefilter("error", integrate.IntegrationWarning)
        try:
            val, err = integrate.quad(fn, a, b, limit=limit, epsabs=1e-15, epsrel=1e-13)
        except integrate.IntegrationWarning as exc:
            raise InversionError(f"quadrature on [{a}, {b}] did not converge: {exc}") from None
    if not np.isfinite(val) or err > 1e-10 * max(1.0, abs(val)):
        raise InversionError(f"quadrature on [{a}, {b}] has error estimate {err}")
    return val


def invert_ladder(target, which, m, opts=AssemblyOptions()):
    """Solve gamma (s f' + c f) = target for the solution regular where the kernel blows up.

    ``target`` is any object with ``jet(r, order)``.  Values come from the
    integrating-factor solution f(r) = int_base^r t(u) exp(G(u) - G(r)) du / (gamma s),
    accumulated interval by interval from the regular endpoint; higher Taylor
    coefficients are recovered from the ODE itself.
    """
    if which not in ("b_minus", "a_plus"):
        raise ValueError("invert_ladder supports b_minus and a_plus")
    s, _ = LADDERS[which]
    base = _regular_base(which, m)
    cache = {}

    def t_scalar(u):
        return complex(np.asarray(target.jet(np.array([u]), 0).value)[0])

    def interval(a, b, g_b):
        def part(u, k):
            if u <= 0 or u >= math.pi:
                return 0.0  # the weight vanishes at the regular endpoint
            t = t_scalar(u)
            return (t.real, t.imag)[k] * math.exp(_log_weight(which, m, u) - g_b)
        re = _quad(lambda u: part(u, 0), a, b, opts.ode_steps)
        im = _quad(lambda u: part(u, 1), a, b, opts.ode_steps)
        return complex(re, im)

    def values(points):
        todo = sorted({float(x) for x in points} - cache.keys(), reverse=base > 0)
        # restart from the endpoint each call; intervals between sorted points keep quad cheap
        prev, acc, g_prev = base, 0j, None
        for x in todo:
            g_x = _log_weight(which, m, x)
            carry = acc * math.exp(g_prev - g_x) if g_prev is not None else 0j
            acc = carry + interval(prev, x, g_x)
            prev, g_prev = x, g_x
            cache[x] = acc / (GAMMA * s)
        return np.array([cache[float(x)] for x in points])

    def fn(r, order):
        r = np.asarray(r, dtype=float)
        flat = r.ravel()
        if np.any(flat <= opts.margin) or np.any(flat >= math.pi - opts.margin):
            raise DomainError("ladder inversion evaluated too close to r = 0 or r = pi")
        tj = target.jet(r, order)
        cj = ladder_coefficient(which, Jet.variable(r, order), m)
        coef = np.zeros((order + 1,) + r.shape, dtype=complex)
        coef[0] = values(flat).reshape(r.shape)
        for k in range(order):
            conv = sum(cj.coef[j] * coef[k - j] for j in range(k + 1))
            coef[k + 1] = (tj.coef[k] / GAMMA - conv) / (s * (k + 1))
        if not np.iscomplexobj(tj.coef):
            coef = coef.real
        return Jet(coef)

    return Factor(fn, f"{which}^-1 target")
