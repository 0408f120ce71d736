"""Finite-difference eigenvalue oracles that never touch the closed-form profiles.

Both separated equations are written in self-adjoint (Liouville) form and
discretized with second-order stencils into symmetric tridiagonal matrices.
Each eigenvalue is computed on meshes n and 2n and Richardson-extrapolated,
(4 lam_2n - lam_n) / 3, with |lam_2n - lam_n| / 3 as the error estimate.
"""
import enum
import math
from dataclasses import dataclass, field

import numpy as np
from scipy.linalg import LinAlgError, eigh_tridiagonal

from .errors import ConvergenceError
from .modes import HelicityClass, enumerate_modes

MIN_MESH = 200
DEFAULT_MESH = 2000


class Shift(enum.Enum):
    NONE = "none"
    PLUS_ONE = "plus-one"


@dataclass(frozen=True)
class OracleResult:
    eigenvalues: np.ndarray
    mesh_size: int
    richardson_estimate: np.ndarray
    coarse: np.ndarray
    fine: np.ndarray

    def to_dict(self):
        return {
            "eigenvalues": [float(x) for x in self.eigenvalues],
            "mesh_size": self.mesh_size,
            "richardson_estimate": [float(x) for x in self.richardson_estimate],
        }


def _lowest(diag, off, weight, count):
    """Lowest eigenvalues of W^-1 A for symmetric tridiagonal A and diagonal W > 0."""
    root = np.sqrt(weight)
    try:
        vals = eigh_tridiagonal(diag / weight, off / (root[:-1] * root[1:]),
                                eigvals_only=True, select="i", select_range=(0, count - 1))
    except LinAlgError as exc:
        raise ConvergenceError(f"tridiagonal eigensolver failed: {exc}") from exc
    return np.sort(vals)


def _flux_form(p_faces, potential, weight, h, count):
    """-(p u')' + q u = lam w u on cells with zero flux through the outer faces."""
    n = weight.size
    diag = np.zeros(n)
    diag[:-1] += p_faces
    diag[1:] += p_faces
    return _lowest(diag / h ** 2 + potential, -p_faces / h ** 2, weight, count)


def _radial_mesh(m, count, n):
    # flux p = sin r vanishes at both ends, which imposes regularity there
    h = np.pi / n
    r = (np.arange(n) + 0.5) * h
    faces = np.sin(np.arange(1, n) * h)
    return _flux_form(faces, m * m / np.sin(r), np.sin(r), h, count)


def _axial_mesh(lam, count, n):
    # -u'' + lam / cos^2 z u = k u with u = 0 on both ends (decaying branch)
    h = np.pi / n
    z = -np.pi / 2 + np.arange(1, n) * h
    diag = 2 / h ** 2 + lam / np.cos(z) ** 2
    off = np.full(n - 2, -1 / h ** 2)
    return _lowest(diag, off, np.ones(n - 1), count)


def _axial_weighted_mesh(lam, count, n):
    # sigma = 0 form on the physical profile: -(cos^2 P')' + lam P = k cos^2 P
    h = np.pi / n
    z = -np.pi / 2 + (np.arange(n) + 0.5) * h
    faces = np.cos(-np.pi / 2 + np.arange(1, n) * h) ** 2
    return _flux_form(faces, np.full(n, float(lam)), np.cos(z) ** 2, h, count)


def _richardson(solve, count, mesh):
    if mesh < MIN_MESH:
        raise ValueError(f"mesh must be at least {MIN_MESH}")
    if count < 1:
        raise ValueError("count must be positive")
    coarse = solve(count, mesh)
    fine = solve(count, 2 * mesh)
    return OracleResult((4 * fine - coarse) / 3, 2 * mesh, np.abs(fine - coarse) / 3, coarse, fine)


def radial_oracle(m, count=4, mesh=DEFAULT_MESH):
    """Lowest ``count`` separation constants Lambda of 2 Delta on (0, pi)."""
    return _richardson(lambda k, n: _radial_mesh(m, k, n), count, mesh)


def axial_oracle(lam, shift=Shift.NONE, count=4, mesh=DEFAULT_MESH):
    """Lowest ``count`` axial eigenvalues: eps^2 - M^2, or eps^2 - M^2 + 1 with the sigma = 0 shift."""
    if lam < 0:
        raise ValueError("lambda must be nonnegative")
    shift = Shift(shift)
    if shift is Shift.NONE:
        return _richardson(lambda k, n: _axial_mesh(lam, k, n), count, mesh)
    res = _richardson(lambda k, n: _axial_weighted_mesh(lam, k, n), count, mesh)
    return OracleResult(res.eigenvalues + 1, res.mesh_size, res.richardson_estimate,
                        res.coarse + 1, res.fine + 1)


@dataclass(frozen=True)
class CrosscheckRow:
    mode: object
    analytic_epsilon: float
    numeric_epsilon: float
    analytic_root: float
    numeric_root: float
    relative_deviation: float
    error_estimate: float


@dataclass
class CrosscheckTable:
    M: float
    helicity_class: HelicityClass
    rows: list = field(default_factory=list)
    skipped: list = field(default_factory=list)

    @property
    def max_deviation(self):
        return max((row.relative_deviation for row in self.rows), default=0.0)

    def passed(self, tol=1e-6):
        return self.max_deviation <= tol


def spectrum_crosscheck(max_n, M=0.0, helicity_class=HelicityClass.NONZERO_PLUS, mesh=DEFAULT_MESH):
    """Compose radial and axial oracles for every mode up to ``max_n`` and compare with n + 1.

    The compared quantity is sqrt(eps^2 - M^2) for nonzero sigma and
    sqrt(eps^2 - M^2 + 1) for sigma = 0, both equal to n + 1 in closed form.
    """
    helicity_class = HelicityClass(helicity_class)
    shift = Shift.NONE if helicity_class.nonzero else Shift.PLUS_ONE
    table = CrosscheckTable(M, helicity_class)
    radial = {}
    axial = {}
    for mode, point in enumerate_modes(max_n, M, (helicity_class,)):
        am = abs(mode.m)
        if am not in radial:
            radial[am] = radial_oracle(am, count=max_n - am + 1, mesh=mesh)
        lam_res = radial[am]
        lam = max(float(lam_res.eigenvalues[mode.n_r]), 0.0)
        key = (am, mode.n_r)
        if key not in axial:
            axial[key] = axial_oracle(lam, shift, count=max_n - am - mode.n_r + 1, mesh=mesh)
        ax = axial[key]
        k = float(ax.eigenvalues[mode.n_z])
        numeric_root = math.sqrt(k)
        gap = k if shift is Shift.NONE else k - 1
        analytic_root = mode.principal_n + 1.0
        table.rows.append(CrosscheckRow(
            mode=mode,
            analytic_epsilon=point.epsilon,
            numeric_epsilon=math.sqrt(M * M + gap) if M * M + gap > 0 else 0.0,
            analytic_root=analytic_root,
            numeric_root=numeric_root,
            relative_deviation=abs(numeric_root - analytic_root) / analytic_root,
            error_estimate=float(ax.richardson_estimate[mode.n_z]) / (2 * numeric_root),
        ))
    if not helicity_class.nonzero and M == 0:
        # the n = 0 state has eps = 0 and is dropped from the enumeration
        table.skipped.append("m=0 n_r=0 n_z=0: degenerate energy")
    return table

