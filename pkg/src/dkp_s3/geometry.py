"""Static background: the unit 3-sphere in quasi-cylindrical coordinates.

Coordinates are ordered ``(t, r, phi, z)`` with r in (0, pi), z in
(-pi/2, pi/2); curvature radius and speed of light are both 1.  Spatial
connection arrays are indexed over ``(r, phi, z)``.
"""
from dataclasses import dataclass, field

import numpy as np

from .errors import DomainError

BOUNDARY_MARGIN = 1e-6
FD_STEP = 1e-5
MINKOWSKI = np.diag([1.0, -1.0, -1.0, -1.0])


@dataclass(frozen=True)
class Coordinates:
    t: float
    r: float
    phi: float
    z: float

    def __post_init__(self):
        check_interior(self.r, self.z)


@dataclass
class ConnectionSet:
    christoffel: np.ndarray
    ricci_rotation: dict = field(default_factory=dict)


def check_interior(r, z, margin=BOUNDARY_MARGIN):
    r = np.asarray(r)
    z = np.asarray(z)
    if np.any(r <= margin) or np.any(r >= np.pi - margin):
        raise DomainError(f"r must lie in ({margin}, pi - {margin})")
    if np.any(np.abs(z) >= np.pi / 2 - margin):
        raise DomainError(f"|z| must stay below pi/2 - {margin}")


def metric_at(r, z):
    check_interior(r, z)
    c2 = np.cos(z) ** 2
    return np.diag([1.0, -c2, -c2 * np.sin(r) ** 2, -1.0])


def metric_determinant(r, z):
    return np.linalg.det(metric_at(r, z))


def tetrad_at(r, z):
    """Diagonal tetrad; row a holds the contravariant components e_(a)^beta."""
    check_interior(r, z)
    cz = np.cos(z)
    return np.diag([1.0, 1.0 / cz, 1.0 / (cz * np.sin(r)), 1.0])


def tetrad_gram(r, z):
    """e_(a)^alpha e_(b)^beta g_{alpha beta}; equals the Minkowski metric."""
    e = tetrad_at(r, z)
    return e @ metric_at(r, z) @ e.T


def christoffel_closed_form(r, z):
    check_interior(r, z)
    sr, cr = np.sin(r), np.cos(r)
    sz, cz = np.sin(z), np.cos(z)
    tz = sz / cz
    gamma = np.zeros((3, 3, 3))
    # upper index r
    gamma[0, 0, 2] = gamma[0, 2, 0] = -tz
    gamma[0, 1, 1] = -sr * cr
    # upper index phi
    gamma[1, 0, 1] = gamma[1, 1, 0] = cr / sr
    gamma[1, 1, 2] = gamma[1, 2, 1] = -tz
    # upper index z
    gamma[2, 0, 0] = sz * cz
    gamma[2, 1, 1] = sz * cz * sr ** 2
    ricci = {
        "122": 1.0 / (cz * np.tan(r)),
        "311": -tz,
        "322": -tz,
    }
    return ConnectionSet(gamma, ricci)


def _metric_gradient(r, z, h):
    """d g_{mu nu} / d x^alpha by central differences; index order [alpha, mu, nu]."""
    dg = np.zeros((4, 4, 4))
    dg[1] = (metric_at(r + h, z) - metric_at(r - h, z)) / (2 * h)
    dg[3] = (metric_at(r, z + h) - metric_at(r, z - h)) / (2 * h)
    return dg


def christoffel_4d_numeric(r, z, h=FD_STEP):
    """Full 4D Christoffel symbols Gamma^lambda_{alpha beta} from metric differences."""
    check_interior(r, z, margin=BOUNDARY_MARGIN + h)
    ginv = np.linalg.inv(metric_at(r, z))
    dg = _metric_gradient(r, z, h)
    # lower[mu, j, k] = d_j g_{mu k} + d_k g_{mu j} - d_mu g_{jk}
    lower = np.einsum("jmk->mjk", dg) + np.einsum("kmj->mjk", dg) - dg
    return 0.5 * np.einsum("lm,mjk->ljk", ginv, lower)


def ricci_rotation_numeric(r, z, h=FD_STEP):
    """All gamma_{abc} = -(nabla_alpha e_(a)beta) e_(b)^beta e_(c)^alpha, indices 0..3."""
    check_interior(r, z, margin=BOUNDARY_MARGIN + h)

    def lowered(rr, zz):
        return tetrad_at(rr, zz) @ metric_at(rr, zz)

    de = np.zeros((4, 4, 4))  # [alpha, a, beta]
    de[1] = (lowered(r + h, z) - lowered(r - h, z)) / (2 * h)
    de[3] = (lowered(r, z + h) - lowered(r, z - h)) / (2 * h)
    gam = christoffel_4d_numeric(r, z, h)
    e_low = lowered(r, z)
    # nabla_alpha e_(a)beta = d_alpha e_(a)beta - Gamma^lambda_{alpha beta} e_(a)lambda
    cov = np.einsum("xab->axb", de) - np.einsum("lxb,al->axb", gam, e_low)
    e = tetrad_at(r, z)
    return -np.einsum("axy,by,cx->abc", cov, e, e)


def christoffel_numeric(r, z, h=FD_STEP):
    full = christoffel_4d_numeric(r, z, h)
    rot = ricci_rotation_numeric(r, z, h)
    ricci = {"122": rot[1, 2, 2], "311": rot[3, 1, 1], "322": rot[3, 2, 2]}
    return ConnectionSet(full[1:, 1:, 1:], ricci)


def nonzero_ricci_rotation(r, z, h=FD_STEP, threshold=1e-6):
    """Every gamma_{abc} above ``threshold`` relative to the largest one, keyed "abc".

    The threshold sits well above the finite-difference noise (about 1e-8).
    """
    rot = ricci_rotation_numeric(r, z, h)
    cutoff = threshold * max(1.0, float(np.max(np.abs(rot))))
    out = {}
    for a in range(4):
        for b in range(4):
            for c in range(4):
                if abs(rot[a, b, c]) > cutoff:
                    out[f"{a}{b}{c}"] = rot[a, b, c]
    return out


@dataclass
class GeometryReport:
    points: int
    tetrad_error: float
    christoffel_error: float
    ricci_error: float
    determinant_error: float
    symmetry_error: float
    nonzero_ricci: list

    def passed(self, tetrad_tol=1e-12, christoffel_tol=1e-6, determinant_tol=1e-12):
        return (self.tetrad_error <= tetrad_tol and self.christoffel_error <= christoffel_tol
                and self.ricci_error <= christoffel_tol and self.determinant_error <= determinant_tol
                and self.symmetry_error == 0)


def random_interior_points(n, seed=0, margin=1e-2):
    rng = np.random.default_rng(seed)
    r = rng.uniform(margin, np.pi - margin, n)
    z = rng.uniform(-np.pi / 2 + margin, np.pi / 2 - margin, n)
    return r, z


def geometry_check(n_points=100, seed=0, h=FD_STEP, margin=1e-2):
    """Worst errors of the background identities over random interior points."""
    tet = chr_err = ric = det = sym = 0.0
    support = set()
    for r, z in zip(*random_interior_points(n_points, seed, margin)):
        tet = max(tet, float(np.max(np.abs(tetrad_gram(r, z) - MINKOWSKI))))
        closed = christoffel_closed_form(r, z)
        numeric = christoffel_numeric(r, z, h)
        chr_err = max(chr_err, float(np.max(np.abs(closed.christoffel - numeric.christoffel))))
        ric = max(ric, max(abs(closed.ricci_rotation[k] - numeric.ricci_rotation[k]) for k in closed.ricci_rotation))
        sym = max(sym, float(np.max(np.abs(closed.christoffel - closed.christoffel.transpose(0, 2, 1)))))
        expected = np.cos(z) ** 4 * np.sin(r) ** 2
        det = max(det, abs(-metric_determinant(r, z) - expected))
        support.update(nonzero_ricci_rotation(r, z, h))
    return GeometryReport(n_points, tet, chr_err, ric, det, sym, sorted(support))
