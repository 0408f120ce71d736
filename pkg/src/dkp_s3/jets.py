"""Truncated Taylor arithmetic used for exact derivatives of closed-form profiles.

A :class:`Jet` stores ``coef[k] = f^(k)(x) / k!`` for every sample point, so
products and compositions follow the usual power-series rules.  :class:`Jet2`
is the bivariate analogue on an (r, z) tensor grid.
"""
from math import factorial

import numpy as np


def _cauchy(a, b, order):
    out = np.zeros((order + 1,) + np.broadcast_shapes(a.shape[1:], b.shape[1:]),
                   dtype=np.result_type(a, b))
    for k in range(order + 1):
        for i in range(k + 1):
            out[k] = out[k] + a[i] * b[k - i]
    return out


class Jet:
    """Univariate truncated Taylor expansion evaluated at an array of points."""

    __slots__ = ("coef",)

    def __init__(self, coef):
        self.coef = np.asarray(coef)

    @classmethod
    def variable(cls, x, order):
        x = np.asarray(x, dtype=float)
        coef = np.zeros((order + 1,) + x.shape)
        coef[0] = x
        if order >= 1:
            coef[1] = 1.0
        return cls(coef)

    @classmethod
    def constant(cls, value, shape, order):
        coef = np.zeros((order + 1,) + tuple(shape), dtype=np.result_type(value, float))
        coef[0] = value
        return cls(coef)

    @property
    def order(self):
        return self.coef.shape[0] - 1

    @property
    def value(self):
        return self.coef[0]

    def derivative(self, k=0):
        return self.coef[k] * factorial(k)

    def derivatives(self):
        return [self.derivative(k) for k in range(self.order + 1)]

    def truncate(self, order):
        return Jet(self.coef[: order + 1])

    def diff(self):
        """Jet of f' (one order lower)."""
        k = np.arange(1, self.order + 1).reshape((-1,) + (1,) * (self.coef.ndim - 1))
        return Jet(self.coef[1:] * k)

    def __neg__(self):
        return Jet(-self.coef)

    def __add__(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            return Jet(self.coef[: n + 1] + other.coef[: n + 1])
        coef = self.coef.astype(np.result_type(self.coef, other), copy=True)
        coef[0] = coef[0] + other
        return Jet(coef)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, Jet):
            n = min(self.order, other.order)
            return Jet(_cauchy(self.coef, other.coef, n))
        return Jet(self.coef * other)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, Jet):
            return self * other.reciprocal()
        return Jet(self.coef / other)

    def __rtruediv__(self, other):
        return self.reciprocal() * other

    def compose(self, derivs):
        """Return g(self) given ``derivs[j] = g^(j)`` evaluated at ``self.value``."""
        n = self.order
        delta = self.coef.copy()
        delta[0] = 0
        out = np.zeros((n + 1,) + np.broadcast_shapes(self.coef.shape[1:], np.shape(derivs[0])),
                       dtype=np.result_type(self.coef, *derivs))
        out[0] = derivs[0]
        power = delta
        for j in range(1, n + 1):
            out = out + power * (derivs[j] / factorial(j))
            power = _cauchy(power, delta, n)
        return Jet(out)

    def reciprocal(self):
        u = self.value
        return self.compose([(-1) ** j * factorial(j) * u ** (-j - 1) for j in range(self.order + 1)])


def sin(u):
    x = u.value
    return u.compose([np.sin(x + j * np.pi / 2) for j in range(u.order + 1)])


def cos(u):
    x = u.value
    return u.compose([np.cos(x + j * np.pi / 2) for j in range(u.order + 1)])


def tan(u):
    return sin(u) / cos(u)


def power(u, p):
    """u**p for real p; u must be nonzero (positive if p is not an integer)."""
    x = u.value
    derivs = []
    c = 1.0
    for j in range(u.order + 1):
        derivs.append(c * x ** (p - j) if c != 0 else np.zeros_like(x))
        c *= p - j
    return u.compose(derivs)


class Jet2:
    """Bivariate truncated Taylor expansion on an (r, z) tensor grid.

    ``coef[i, j]`` has shape ``(nr, nz)`` and equals ``d_r^i d_z^j f / (i! j!)``.
    """

    __slots__ = ("coef",)

    def __init__(self, coef):
        self.coef = np.asarray(coef)

    @classmethod
    def outer(cls, rjet, zjet, scale=1.0):
        rc, zc = rjet.coef, zjet.coef
        coef = rc[:, None, :, None] * zc[None, :, None, :]
        return cls(coef * scale)

    @classmethod
    def zeros(cls, order_r, order_z, nr, nz):
        return cls(np.zeros((order_r + 1, order_z + 1, nr, nz), dtype=complex))

    @property
    def orders(self):
        return self.coef.shape[0] - 1, self.coef.shape[1] - 1

    def d(self, i=0, j=0):
        return self.coef[i, j] * (factorial(i) * factorial(j))

    def _trim(self, kr, kz):
        return self.coef[: kr + 1, : kz + 1]

    def __neg__(self):
        return Jet2(-self.coef)

    def __add__(self, other):
        if isinstance(other, Jet2):
            kr = min(self.orders[0], other.orders[0])
            kz = min(self.orders[1], other.orders[1])
            return Jet2(self._trim(kr, kz) + other._trim(kr, kz))
        coef = self.coef.astype(np.result_type(self.coef, other), copy=True)
        coef[0, 0] = coef[0, 0] + other
        return Jet2(coef)

    __radd__ = __add__

    def __sub__(self, other):
        return self + (-other)

    def __mul__(self, other):
        if not isinstance(other, Jet2):
            return Jet2(self.coef * other)
        kr = min(self.orders[0], other.orders[0])
        kz = min(self.orders[1], other.orders[1])
        a, b = self._trim(kr, kz), other._trim(kr, kz)
        out = np.zeros_like(a, dtype=np.result_type(a, b))
        for i in range(kr + 1):
            for j in range(kz + 1):
                acc = 0
                for p in range(i + 1):
                    for q in range(j + 1):
                        acc = acc + a[p, q] * b[i - p, j - q]
                out[i, j] = acc
        return Jet2(out)

    __rmul__ = __mul__

    def mul_r(self, rjet):
        """Multiply by a function of r alone."""
        kr = min(self.orders[0], rjet.order)
        c = self.coef[: kr + 1]
        out = np.zeros(c.shape, dtype=np.result_type(c, rjet.coef))
        for i in range(kr + 1):
            for p in range(i + 1):
                out[i] = out[i] + rjet.coef[p][None, :, None] * c[i - p]
        return Jet2(out)

    def mul_z(self, zjet):
        """Multiply by a function of z alone."""
        kz = min(self.orders[1], zjet.order)
        c = self.coef[:, : kz + 1]
        out = np.zeros(c.shape, dtype=np.result_type(c, zjet.coef))
        for j in range(kz + 1):
            for q in range(j + 1):
                out[:, j] = out[:, j] + zjet.coef[q][None, None, :] * c[:, j - q]
        return Jet2(out)

    def diff_r(self):
        k = np.arange(1, self.orders[0] + 1).reshape(-1, 1, 1, 1)
        return Jet2(self.coef[1:] * k)

    def diff_z(self):
        k = np.arange(1, self.orders[1] + 1).reshape(1, -1, 1, 1)
        return Jet2(self.coef[:, 1:] * k)


class Factor:
    """A one-variable function given by its jet: ``fn(x, order) -> Jet``."""

    __slots__ = ("fn", "label")

    def __init__(self, fn, label=""):
        self.fn = fn
        self.label = label

    def jet(self, x, order):
        return self.fn(np.asarray(x, dtype=float), order)

    def __repr__(self):
        return f"Factor({self.label!r})"


class Separable:
    """Sum of terms ``coef * radial(r) * axial(z)`` on the tensor grid r x z."""

    def __init__(self, terms=()):
        self.terms = tuple(terms)

    @property
    def is_zero(self):
        return all(coef == 0 for coef, _, _ in self.terms)

    def scaled(self, factor):
        return Separable((coef * factor, rad, ax) for coef, rad, ax in self.terms)

    def jet2(self, r, z, order_r=1, order_z=1):
        r = np.asarray(r, dtype=float)
        z = np.asarray(z, dtype=float)
        out = Jet2.zeros(order_r, order_z, r.size, z.size)
        for coef, rad, ax in self.terms:
            if coef == 0:
                continue
            out = out + Jet2.outer(rad.jet(r, order_r), ax.jet(z, order_z), coef)
        return out

    def evaluate(self, r, z, dr=0, dz=0):
        """Mesh of d_r^dr d_z^dz f, shape (len(r), len(z))."""
        r = np.atleast_1d(r)
        z = np.atleast_1d(z)
        return self.jet2(r, z, dr, dz).d(dr, dz)
