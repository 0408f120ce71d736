"""Quantum numbers and closed-form spectra for the three helicity classes."""
import enum
import math
from dataclasses import dataclass

from .errors import DegenerateEnergyError, DomainError


class HelicityClass(enum.Enum):
    NONZERO_PLUS = "nonzero-plus"
    NONZERO_MINUS = "nonzero-minus"
    ZERO = "zero-sigma"

    @property
    def nonzero(self):
        return self is not HelicityClass.ZERO


class Branch(enum.Enum):
    PLUS = 1
    MINUS = -1


@dataclass(frozen=True)
class ModeSpec:
    m: int
    n_r: int
    n_z: int
    M: float = 0.0
    helicity_class: HelicityClass = HelicityClass.NONZERO_PLUS

    def __post_init__(self):
        if self.n_r < 0 or self.n_z < 0:
            raise ValueError("n_r and n_z must be nonnegative")
        if self.M < 0:
            raise ValueError("mass must be nonnegative")

    @property
    def principal_n(self):
        return self.n_r + self.n_z + abs(self.m)

    @property
    def radial_N(self):
        return self.n_r + abs(self.m)

    @property
    def branch(self):
        if self.helicity_class is HelicityClass.NONZERO_MINUS:
            return Branch.MINUS
        return Branch.PLUS


@dataclass(frozen=True)
class SpectralPoint:
    lam: float
    epsilon: float
    sigma: complex
    principal_n: int


def lambda_of(m, n_r):
    """Separation constant N(N+1), N = n_r + |m|."""
    if n_r < 0:
        raise ValueError("n_r must be nonnegative")
    N = n_r + abs(m)
    return float(N * (N + 1))


def energy_nonzero_sigma(M, m, n_r, n_z):
    n = n_r + n_z + abs(m)
    return math.sqrt(M * M + (n + 1) ** 2)


def energy_zero_sigma(M, m, n_r, n_z):
    n = n_r + n_z + abs(m)
    eps2 = M * M - 1 + (n + 1) ** 2
    if eps2 <= 0:
        raise DegenerateEnergyError(
            f"sigma = 0 mode with M = {M}, n = {n} has epsilon^2 = {eps2}: no propagating state")
    return math.sqrt(eps2)


def sigma_of(epsilon, M, branch=Branch.PLUS):
    """Helicity eigenvalue +/- i sqrt(epsilon^2 - M^2) for epsilon >= M."""
    gap = epsilon * epsilon - M * M
    if gap < 0:
        # roundoff at threshold
        if gap > -1e-12 * max(1.0, M * M):
            gap = 0.0
        else:
            raise DomainError(f"epsilon = {epsilon} below threshold M = {M}")
    return complex(0.0, branch.value * math.sqrt(gap))


def spectral_point(mode):
    lam = lambda_of(mode.m, mode.n_r)
    if mode.helicity_class is HelicityClass.ZERO:
        eps = energy_zero_sigma(mode.M, mode.m, mode.n_r, mode.n_z)
        sigma = 0j
    else:
        eps = energy_nonzero_sigma(mode.M, mode.m, mode.n_r, mode.n_z)
        # sigma^2 = M^2 - eps^2 = -(n+1)^2 exactly; avoid cancellation in eps^2 - M^2
        sigma = complex(0.0, mode.branch.value * (mode.principal_n + 1))
    return SpectralPoint(lam, eps, sigma, mode.principal_n)


def mode_triples(max_n):
    """All (m, n_r, n_z) with n_r + n_z + |m| <= max_n."""
    out = []
    for n in range(max_n + 1):
        for m in range(-n, n + 1):
            for n_r in range(n - abs(m) + 1):
                out.append((m, n_r, n - abs(m) - n_r))
    return out


def _sort_key(item):
    mode, point = item
    return (point.epsilon, abs(mode.m), mode.n_r, mode.n_z, mode.m, mode.helicity_class.value)


def enumerate_modes(max_n, M=0.0, classes=(HelicityClass.NONZERO_PLUS,)):
    """Modes up to principal number ``max_n`` with their spectral data.

    Degenerate sigma = 0 states (epsilon^2 <= 0) are left out.
    """
    if max_n < 0:
        raise ValueError("max_n must be nonnegative")
    out = []
    for cls in classes:
        for m, n_r, n_z in mode_triples(max_n):
            mode = ModeSpec(m, n_r, n_z, M, cls)
            try:
                out.append((mode, spectral_point(mode)))
            except DegenerateEnergyError:
                continue
    return sorted(out, key=_sort_key)
