"""Separated scalar profiles and the first-order radial ladder operators.

The ladder family is ``gamma * (s d/dr + (m + k cos r) / sin r)`` with
gamma = 1/sqrt(2); ``a``-type operators have s = +1, ``b``-type s = -1, and
the suffix selects k (none: 0, ``_minus``: -1, ``_plus``: +1).
"""
import math
from dataclasses import dataclass

import numpy as np

from . import jets
from .errors import AssemblyError, DomainError
from .jets import Factor, Jet, Separable
from .modes import HelicityClass, spectral_point
from .specfun import HypParams, hyp2f1_jet

GAMMA = 1 / math.sqrt(2)
RADIAL_MARGIN = 1e-6

LADDERS = {
    "a": (1, 0),
    "a_minus": (1, -1),
    "a_plus": (1, 1),
    "b": (-1, 0),
    "b_minus": (-1, -1),
    "b_plus": (-1, 1),
}


def _check_r(r):
    r = np.asarray(r)
    if np.any(r <= RADIAL_MARGIN) or np.any(r >= np.pi - RADIAL_MARGIN):
        raise DomainError("ladder operators are singular at r = 0 and r = pi")


def ladder_coefficient(which, r, m):
    """The multiplicative part (m + k cos r) / sin r as a jet in r."""
    _, k = LADDERS[which]
    if isinstance(r, Jet):
        return (jets.cos(r) * k + m) / jets.sin(r)
    return (m + k * np.cos(r)) / np.sin(r)


def ladder_apply(which, f, df_dr, r, m):
    """Apply one ladder operator to a function given by its value and r-derivative."""
    _check_r(r)
    s, _ = LADDERS[which]
    return GAMMA * (s * np.asarray(df_dr) + ladder_coefficient(which, np.asarray(r), m) * f)


def ladder_jet(which, fjet, r, m):
    """Ladder operator acting on a jet in r; the result is one order lower."""
    s, _ = LADDERS[which]
    rj = Jet.variable(r, fjet.order)
    c = ladder_coefficient(which, rj, m)
    return (fjet.diff() * s + c * fjet) * GAMMA


def ladder_jet2(which, f2, r, m):
    """Ladder operator acting on a bivariate jet over the grid r x z."""
    s, _ = LADDERS[which]
    c = ladder_coefficient(which, Jet.variable(r, f2.orders[0]), m)
    return (f2.diff_r() * s + f2.mul_r(c)) * GAMMA


def delta_apply(f, df_dr, d2f_dr2, r, m):
    """Half the associated-Legendre operator: (-f'' - cot r f' + m^2 f / sin^2 r) / 2."""
    _check_r(r)
    r = np.asarray(r)
    return 0.5 * (-np.asarray(d2f_dr2) - np.cos(r) / np.sin(r) * df_dr + m * m / np.sin(r) ** 2 * f)


@dataclass(frozen=True)
class RadialProfile:
    """phi_2(r) = (sin r / 2)^|m| F(-n_r, 2|m| + 1 + n_r, |m| + 1; sign * sin^2(r/2))."""

    m: int
    n_r: int
    lam: float
    hyp: HypParams
    argument_sign: int = 1

    def jet(self, r, order):
        rj = Jet.variable(r, order)
        x = jets.sin(rj * 0.5)
        x = x * x * self.argument_sign
        pre = jets.power(jets.sin(rj) * 0.5, abs(self.m))
        return pre * hyp2f1_jet(self.hyp, x)

    def evaluate(self, r):
        j = self.jet(r, 1)
        return j.derivative(0), j.derivative(1)

    def __call__(self, r):
        return self.jet(r, 0).value


def radial_phi2(m, n_r, argument_sign=1):
    am = abs(m)
    N = n_r + am
    root = 2 * N + 1  # sqrt(1 + 4 Lambda)
    a = b = am / 2
    hyp = HypParams(a + b + 0.5 - root / 2, a + b + 0.5 + root / 2, 2 * a + 1)
    return RadialProfile(m, n_r, float(N * (N + 1)), hyp, argument_sign)


@dataclass(frozen=True)
class AxialProfile:
    """(cos z)^s F(alpha, beta, gamma; (1 + i tan z) / 2), optionally divided by cos z.

    ``gap`` is the constant in f'' + (gap - lam / cos^2 z) f = 0 satisfied by the
    undivided factor.  The sigma = 0 class uses gap = eps^2 - M^2 + 1 and
    reports the physical profile f / cos z.
    """

    exponent_s: float
    hyp: HypParams
    sigma: complex
    lam: float
    gap: float
    divide_by_cos: bool = False
    bound_state: bool = True

    def auxiliary_jet(self, z, order):
        zj = Jet.variable(z, order)
        y = jets.tan(zj) * 0.5j + 0.5
        c = jets.cos(zj)
        return jets.power(c, self.exponent_s) * hyp2f1_jet(self.hyp, y)

    def jet(self, z, order):
        f = self.auxiliary_jet(z, order)
        if self.divide_by_cos:
            f = f / jets.cos(Jet.variable(z, order))
        return f

    def evaluate(self, z):
        j = self.jet(z, 1)
        return j.derivative(0), j.derivative(1)

    def __call__(self, z):
        return self.jet(z, 0).value


def axial_profile(lam, gap, sigma=0j, divide_by_cos=False, growing=False):
    """Axial solution of f'' + (gap - lam/cos^2 z) f = 0 on the decaying branch.

    ``growing=True`` builds the rejected (cos z)^(-s) branch instead; it is
    never a bound state and only exists for diagnostics.
    """
    s = math.sqrt(gap)
    root = math.sqrt(4 * lam + 1)
    a = s / 2 if growing else -s / 2
    hyp = HypParams(2 * a + 0.5 + root / 2, 2 * a + 0.5 - root / 2, 2 * a + 1)
    if hyp.terminating_degree() is None:
        raise AssemblyError(f"axial series does not terminate for lam={lam}, gap={gap}")
    return AxialProfile(-2 * a, hyp, sigma, lam, gap, divide_by_cos, bound_state=not growing)


def axial_phi2(mode):
    """Bound-state axial factor for a mode; sigma = 0 returns Phi_0(z) = f / cos z."""
    point = spectral_point(mode)
    n = mode.principal_n
    if mode.helicity_class is HelicityClass.ZERO:
        return axial_profile(point.lam, float((n + 1) ** 2), 0j, divide_by_cos=True)
    return axial_profile(point.lam, float((n + 1) ** 2), point.sigma)


@dataclass(frozen=True)
class BarredPair:
    phi_bar_1: Separable
    phi_bar_3: Separable


def barred_axial(profile, sigma, sign):
    """Axial factor (sign * sigma - d/dz) Z / 2."""
    def fn(z, order):
        j = profile.jet(z, order + 1)
        return (j * (sign * sigma) - j.diff()) * 0.5
    return Factor(fn, f"({'+' if sign > 0 else '-'}sigma - d_z) Z / 2")


def barred_pair(radial, axial, sigma):
    """phi_bar_1 = (-sigma - d_z) phi_2 / 2 and phi_bar_3 = (+sigma - d_z) phi_2 / 2."""
    bar1 = Separable([(1.0, radial, barred_axial(axial, sigma, -1))])
    bar3 = Separable([(1.0, radial, barred_axial(axial, sigma, +1))])
    return BarredPair(bar1, bar3)
