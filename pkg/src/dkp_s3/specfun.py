"""Gauss hypergeometric series F(alpha, beta, gamma; x) and its derivatives.

Bound-state profiles only ever need terminating series, which are summed
exactly for any finite argument.  Non-terminating series are supported inside
the unit disk for testing and small-argument work.
"""
from dataclasses import dataclass

import numpy as np

from .errors import ConvergenceError, PoleError
from .jets import Jet

# Integer detection threshold for quantized parameters.
INTEGER_TOL = 1e-12
DEFAULT_TOL = 1e-14
MAX_TERMS = 100_000


def _nonpositive_integer(a):
    """Return n if a == -n for a nonnegative integer n (within INTEGER_TOL), else None."""
    a = complex(a)
    if abs(a.imag) >= INTEGER_TOL:
        return None
    n = round(-a.real)
    if n >= 0 and abs(a.real + n) < INTEGER_TOL:
        return n
    return None


def _clean(a):
    a = complex(a)
    return a.real if a.imag == 0 else a


@dataclass(frozen=True)
class HypParams:
    alpha: complex
    beta: complex
    gamma: complex

    def swapped(self):
        return HypParams(self.beta, self.alpha, self.gamma)

    def shifted(self, k):
        return HypParams(self.alpha + k, self.beta + k, self.gamma + k)

    def terminating_degree(self):
        """Degree of the polynomial when alpha or beta is a nonpositive integer."""
        degrees = [n for n in (_nonpositive_integer(self.alpha), _nonpositive_integer(self.beta))
                   if n is not None]
        return min(degrees) if degrees else None

    def check_poles(self):
        n = self.terminating_degree()
        g = _nonpositive_integer(self.gamma)
        if g is None:
            return
        if n is None or g < n:
            raise PoleError(f"gamma = {self.gamma} is a pole reached before termination (degree {n})")


def pochhammer(a, k):
    """Rising factorial (a)_k = a (a+1) ... (a+k-1)."""
    if k < 0:
        raise ValueError("k must be nonnegative")
    out = 1
    for j in range(k):
        out *= a + j
    return _clean(out) if isinstance(out, complex) else out


def polynomial_coefficients(params):
    """Coefficients c_k of the terminating series, built from Pochhammer symbols."""
    n = params.terminating_degree()
    if n is None:
        raise ValueError("series does not terminate")
    params.check_poles()
    a, b, g = (_clean(p) for p in (params.alpha, params.beta, params.gamma))
    if _nonpositive_integer(a) != n:
        a, b = b, a
    coeffs = []
    fact = 1
    for k in range(n + 1):
        if k:
            fact *= k
        coeffs.append(pochhammer(a, k) * pochhammer(b, k) / (pochhammer(g, k) * fact))
    return coeffs


def horner(coeffs, x):
    x = np.asarray(x)
    out = np.zeros_like(x, dtype=np.result_type(x, *coeffs)) + coeffs[-1]
    for c in reversed(coeffs[:-1]):
        out = out * x + c
    return out


def hyp2f1(params, x, tol=DEFAULT_TOL):
    """Sum F(alpha, beta, gamma; x) term by term; ``x`` may be an array."""
    x = np.asarray(x)
    a, b, g = (_clean(p) for p in (params.alpha, params.beta, params.gamma))
    n = params.terminating_degree()
    params.check_poles()
    dtype = np.result_type(x, a, b, g, float)
    total = np.ones(x.shape, dtype=dtype)
    term = np.ones(x.shape, dtype=dtype)
    if n is not None:
        for k in range(n):
            term = term * ((a + k) * (b + k) / ((g + k) * (k + 1))) * x
            total = total + term
        return total

    if np.any(np.abs(x) >= 1):
        raise ConvergenceError("non-terminating series requires |x| < 1")
    small = np.zeros(x.shape, dtype=int)
    for k in range(MAX_TERMS):
        term = term * ((a + k) * (b + k) / ((g + k) * (k + 1))) * x
        total = total + term
        below = np.abs(term) < tol * np.abs(total)
        small = np.where(below, small + 1, 0)
        if np.all(small >= 3):
            return total
    raise ConvergenceError(f"series did not converge within {MAX_TERMS} terms")


def hyp2f1_derivative(params, x, tol=DEFAULT_TOL, order=1):
    """d^order F / dx^order via (alpha)_k (beta)_k / (gamma)_k F(alpha+k, beta+k, gamma+k; x)."""
    x = np.asarray(x)
    if order == 0:
        return hyp2f1(params, x, tol)
    params.check_poles()
    n = params.terminating_degree()
    if n is not None and order > n:
        return np.zeros(x.shape, dtype=np.result_type(x, _clean(params.alpha), _clean(params.beta), float))
    c = pochhammer(params.alpha, order) * pochhammer(params.beta, order) / pochhammer(params.gamma, order)
    return c * hyp2f1(params.shifted(order), x, tol)


def hyp2f1_jet(params, xjet, tol=DEFAULT_TOL):
    """Compose F with an argument expansion, giving F(x(t)) and its t-derivatives."""
    derivs = [hyp2f1_derivative(params, xjet.value, tol, k) for k in range(xjet.order + 1)]
    return Jet.compose(xjet, derivs)
