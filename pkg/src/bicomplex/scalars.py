"""Bicomplex and hyperbolic scalars.

A bicomplex number is stored as the real quadruple ``(x0, x1, x2, x3)`` of
``w = x0 + i*x1 + j*x2 + k*x3`` with ``i*i = j*j = -1`` and ``k = i*j``,
``k*k = 1``.  Writing ``z1 = x0 + i*x1`` and ``z2 = x2 + i*x3`` gives
``w = z1 + z2*j``.

The idempotent basis ``e1 = (1+k)/2``, ``e2 = (1-k)/2`` turns every
bicomplex number into a pair of complex numbers::

    w = w1*e1 + w2*e2,   w1 = z1 - i*z2,   w2 = z1 + i*z2

and ring operations act independently on ``w1`` and ``w2``.

Besides the scalar classes this module carries vectorized helpers that act
on float arrays whose trailing axis has length 4; the vector and matrix
types are built on those.
"""
from __future__ import annotations

import enum
import math
from dataclasses import dataclass
from typing import NamedTuple

import numpy as np

from .errors import NotInvertible

#: relative threshold below which an idempotent component counts as zero
ZERO_TOL = 1e-14
#: absolute slack for membership in the nonnegative hyperbolic cone
NONNEG_TOL = 1e-12


# --------------------------------------------------------------------------
# array-level helpers, trailing axis = (x0, x1, x2, x3)
# --------------------------------------------------------------------------

def as_quadruples(a) -> np.ndarray:
    arr = np.asarray(a, dtype=np.float64)
    if arr.shape[-1:] != (4,):
        raise ValueError(f"expected trailing axis of length 4, got shape {arr.shape}")
    return arr


def bc_split(a):
    """Idempotent coordinates ``(w1, w2)`` of an array of quadruples."""
    a = as_quadruples(a)
    x0, x1, x2, x3 = a[..., 0], a[..., 1], a[..., 2], a[..., 3]
    w1 = (x0 + x3) + 1j * (x1 - x2)
    w2 = (x0 - x3) + 1j * (x1 + x2)
    return w1, w2


def bc_join(w1, w2) -> np.ndarray:
    """Inverse of :func:`bc_split`."""
    w1 = np.asarray(w1, dtype=np.complex128)
    w2 = np.asarray(w2, dtype=np.complex128)
    if w1.shape != w2.shape:
        from .errors import DimensionMismatch

        raise DimensionMismatch(f"component shapes differ: {w1.shape} vs {w2.shape}")
    out = np.empty(w1.shape + (4,))
    out[..., 0] = 0.5 * (w1.real + w2.real)
    out[..., 1] = 0.5 * (w1.imag + w2.imag)
    out[..., 2] = 0.5 * (w2.imag - w1.imag)
    out[..., 3] = 0.5 * (w1.real - w2.real)
    return out


def bc_mul(a, b) -> np.ndarray:
    """Ring product computed directly on quadruples (no idempotent split)."""
    a = as_quadruples(a)
    b = as_quadruples(b)
    a0, a1, a2, a3 = np.moveaxis(a, -1, 0)
    b0, b1, b2, b3 = np.moveaxis(b, -1, 0)
    return np.stack(
        [
            a0 * b0 - a1 * b1 - a2 * b2 + a3 * b3,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        ],
        axis=-1,
    )


_BAR = np.array([1.0, -1.0, 1.0, -1.0])
_PLUS = np.array([1.0, 1.0, -1.0, -1.0])
_STAR = np.array([1.0, -1.0, -1.0, 1.0])


def bc_conj_bar(a) -> np.ndarray:
    return as_quadruples(a) * _BAR


def bc_conj_plus(a) -> np.ndarray:
    return as_quadruples(a) * _PLUS


def bc_conj_star(a) -> np.ndarray:
    return as_quadruples(a) * _STAR


def bc_modulus(a) -> np.ndarray:
    """Modulus via the idempotent formula ``sqrt((|w1|^2 + |w2|^2) / 2)``."""
    w1, w2 = bc_split(a)
    a, b = np.abs(w1), np.abs(w2)
    m = np.maximum(a, b)
    safe = np.where(m > 0, m, 1.0)
    # scaled so tiny nonzero inputs do not underflow to zero
    return m * np.sqrt(0.5 * ((a / safe) ** 2 + (b / safe) ** 2))


# --------------------------------------------------------------------------
# scalar types
# --------------------------------------------------------------------------

class IdempotentPair(NamedTuple):
    """Complex coordinates of a bicomplex number along ``e1`` and ``e2``."""

    w1: complex
    w2: complex


def _coerce(value) -> "Bicomplex":
    if isinstance(value, Bicomplex):
        return value
    if isinstance(value, Hyperbolic):
        return value.embed()
    if isinstance(value, (bool, np.bool_)):
        raise TypeError("booleans are not bicomplex numbers")
    if isinstance(value, (int, float, np.integer, np.floating)):
        return Bicomplex(float(value))
    if isinstance(value, (complex, np.complexfloating)):
        return Bicomplex(value.real, value.imag)
    return NotImplemented


@dataclass(frozen=True, slots=True)
class Bicomplex:
    """Immutable bicomplex scalar ``x0 + i*x1 + j*x2 + k*x3``.

    Python ``complex`` values and reals mix in as elements of ``C(i)``.
    """

    x0: float = 0.0
    x1: float = 0.0
    x2: float = 0.0
    x3: float = 0.0

    def __post_init__(self):
        for name in ("x0", "x1", "x2", "x3"):
            object.__setattr__(self, name, float(getattr(self, name)))

    # construction ----------------------------------------------------------
    @classmethod
    def from_complex_pair(cls, z1: complex, z2: complex) -> "Bicomplex":
        """Build ``z1 + z2*j`` from two elements of ``C(i)``."""
        z1, z2 = complex(z1), complex(z2)
        return cls(z1.real, z1.imag, z2.real, z2.imag)

    @classmethod
    def from_idempotent(cls, w1: complex, w2: complex) -> "Bicomplex":
        return cls(*bc_join(w1, w2))

    @classmethod
    def from_array(cls, values) -> "Bicomplex":
        return cls(*as_quadruples(values))

    # views -----------------------------------------------------------------
    @property
    def z1(self) -> complex:
        return complex(self.x0, self.x1)

    @property
    def z2(self) -> complex:
        return complex(self.x2, self.x3)

    def to_array(self) -> np.ndarray:
        return np.array([self.x0, self.x1, self.x2, self.x3])

    def to_list(self) -> list[float]:
        return [self.x0 + 0.0, self.x1 + 0.0, self.x2 + 0.0, self.x3 + 0.0]

    def split(self) -> IdempotentPair:
        z1, z2 = self.z1, self.z2
        return IdempotentPair(z1 - 1j * z2, z1 + 1j * z2)

    def is_hyperbolic(self, tol: float = 0.0) -> bool:
        scale = tol * max(1.0, self.modulus())
        return abs(self.x1) <= scale and abs(self.x2) <= scale

    def to_hyperbolic(self, tol: float = 0.0) -> "Hyperbolic":
        """Extract the hyperbolic part; raises if ``i``/``j`` parts exceed *tol*."""
        if not self.is_hyperbolic(tol):
            raise ValueError(f"{self!r} is not hyperbolic")
        return Hyperbolic(self.x0, self.x3)

    # ring ------------------------------------------------------------------
    def __add__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return Bicomplex(self.x0 + other.x0, self.x1 + other.x1,
                         self.x2 + other.x2, self.x3 + other.x3)

    __radd__ = __add__

    def __neg__(self):
        return Bicomplex(-self.x0, -self.x1, -self.x2, -self.x3)

    def __pos__(self):
        return self

    def __sub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self + (-other)

    def __rsub__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other - self

    def __mul__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        a0, a1, a2, a3 = self.x0, self.x1, self.x2, self.x3
        b0, b1, b2, b3 = other.x0, other.x1, other.x2, other.x3
        return Bicomplex(
            a0 * b0 - a1 * b1 - a2 * b2 + a3 * b3,
            a0 * b1 + a1 * b0 - a2 * b3 - a3 * b2,
            a0 * b2 + a2 * b0 - a1 * b3 - a3 * b1,
            a0 * b3 + a3 * b0 + a1 * b2 + a2 * b1,
        )

    __rmul__ = __mul__

    def __truediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return self * other.invert()

    def __rtruediv__(self, other):
        other = _coerce(other)
        if other is NotImplemented:
            return other
        return other * self.invert()

    def __pow__(self, exponent: int):
        if not isinstance(exponent, (int, np.integer)):
            return NotImplemented
        base = self if exponent >= 0 else self.invert()
        w1, w2 = base.split()
        e = abs(int(exponent))
        return Bicomplex.from_idempotent(w1 ** e, w2 ** e)

    # conjugations ----------------------------------------------------------
    def conj_bar(self) -> "Bicomplex":
        """``conj(z1) + conj(z2)*j``."""
        return Bicomplex(self.x0, -self.x1, self.x2, -self.x3)

    def conj_plus(self) -> "Bicomplex":
        """``z1 - z2*j``."""
        return Bicomplex(self.x0, self.x1, -self.x2, -self.x3)

    def conj_star(self) -> "Bicomplex":
        """``conj(z1) - conj(z2)*j``; conjugates both idempotent coordinates."""
        return Bicomplex(self.x0, -self.x1, -self.x2, self.x3)

    # metric ----------------------------------------------------------------
    def modulus(self) -> float:
        w1, w2 = self.split()
        a, b = abs(w1), abs(w2)
        m = max(a, b)
        if m == 0.0:
            return 0.0
        return m * math.sqrt(0.5 * ((a / m) ** 2 + (b / m) ** 2))

    def __abs__(self) -> float:
        return self.modulus()

    def _zero_flags(self) -> tuple[bool, bool]:
        w1, w2 = self.split()
        tau = ZERO_TOL * self.modulus()
        return abs(w1) <= tau, abs(w2) <= tau

    def is_zero_divisor(self) -> bool:
        z1, z2 = self._zero_flags()
        return z1 != z2

    def invert(self) -> "Bicomplex":
        if self.x0 == self.x1 == self.x2 == self.x3 == 0.0:
            raise NotInvertible("zero has no inverse", component=(1, 2))
        w1, w2 = self.split()
        z1, z2 = self._zero_flags()
        if z1 or z2:
            which = 1 if z1 else 2
            raise NotInvertible(
                f"zero divisor: idempotent component {which} vanishes", component=which
            )
        return Bicomplex.from_idempotent(1.0 / w1, 1.0 / w2)

    def __repr__(self):
        return f"Bicomplex({self.x0!r}, {self.x1!r}, {self.x2!r}, {self.x3!r})"


class Order(enum.Enum):
    """Outcome of the componentwise partial order on hyperbolic numbers."""

    LE = "le"
    EQ = "eq"
    GE = "ge"
    INCOMPARABLE = "incomparable"


@dataclass(frozen=True, slots=True)
class Hyperbolic:
    """Hyperbolic number ``h1 + k*h2`` with real coefficients.

    ``a1 = h1 + h2`` and ``a2 = h1 - h2`` are its coordinates along ``e1`` and
    ``e2``; the nonnegative cone is ``a1 >= 0 and a2 >= 0``.
    """

    h1: float = 0.0
    h2: float = 0.0

    def __post_init__(self):
        object.__setattr__(self, "h1", float(self.h1))
        object.__setattr__(self, "h2", float(self.h2))

    @classmethod
    def from_idempotent(cls, a1: float, a2: float) -> "Hyperbolic":
        return cls(0.5 * (a1 + a2), 0.5 * (a1 - a2))

    @property
    def a1(self) -> float:
        return self.h1 + self.h2

    @property
    def a2(self) -> float:
        return self.h1 - self.h2

    def idempotent(self) -> tuple[float, float]:
        return self.a1, self.a2

    def embed(self) -> Bicomplex:
        return Bicomplex(self.h1, 0.0, 0.0, self.h2)

    def to_list(self) -> list[float]:
        return [self.h1 + 0.0, self.h2 + 0.0]

    def __add__(self, other):
        if isinstance(other, (int, float)):
            other = Hyperbolic(other)
        if not isinstance(other, Hyperbolic):
            return NotImplemented
        return Hyperbolic(self.h1 + other.h1, self.h2 + other.h2)

    __radd__ = __add__

    def __neg__(self):
        return Hyperbolic(-self.h1, -self.h2)

    def __sub__(self, other):
        if isinstance(other, (int, float)):
            other = Hyperbolic(other)
        if not isinstance(other, Hyperbolic):
            return NotImplemented
        return Hyperbolic(self.h1 - other.h1, self.h2 - other.h2)

    def __mul__(self, other):
        if isinstance(other, (int, float)):
            return Hyperbolic(self.h1 * other, self.h2 * other)
        if not isinstance(other, Hyperbolic):
            return NotImplemented
        return Hyperbolic(self.h1 * other.h1 + self.h2 * other.h2,
                          self.h1 * other.h2 + self.h2 * other.h1)

    __rmul__ = __mul__

    def is_nonneg(self, tol: float = NONNEG_TOL) -> bool:
        return self.a1 >= -tol and self.a2 >= -tol

    def compare(self, other: "Hyperbolic", tol: float = NONNEG_TOL) -> Order:
        return hyperbolic_compare(self, other, tol)

    def sqrt(self) -> "Hyperbolic":
        """Square root in the nonnegative cone, taken per idempotent coordinate."""
        if not self.is_nonneg():
            raise ValueError(f"{self!r} is not in the nonnegative hyperbolic cone")
        return Hyperbolic.from_idempotent(math.sqrt(max(self.a1, 0.0)),
                                          math.sqrt(max(self.a2, 0.0)))

    def modulus(self) -> float:
        return self.embed().modulus()


# --------------------------------------------------------------------------
# functional API
# --------------------------------------------------------------------------

ZERO = Bicomplex()
ONE = Bicomplex(1.0)
I = Bicomplex(0.0, 1.0)
J = Bicomplex(0.0, 0.0, 1.0)
K = Bicomplex(0.0, 0.0, 0.0, 1.0)
E1 = Bicomplex(0.5, 0.0, 0.0, 0.5)
E2 = Bicomplex(0.5, 0.0, 0.0, -0.5)


def idempotent_split(w: Bicomplex) -> IdempotentPair:
    return w.split()


def idempotent_join(pair) -> Bicomplex:
    w1, w2 = pair
    return Bicomplex.from_idempotent(w1, w2)


def conj_bar(w: Bicomplex) -> Bicomplex:
    return w.conj_bar()


def conj_plus(w: Bicomplex) -> Bicomplex:
    return w.conj_plus()


def conj_star(w: Bicomplex) -> Bicomplex:
    return w.conj_star()


def modulus(w: Bicomplex) -> float:
    return w.modulus()


def invert(w: Bicomplex) -> Bicomplex:
    return w.invert()


def is_zero_divisor(w: Bicomplex) -> bool:
    return w.is_zero_divisor()


def hyperbolic_is_nonneg(h: Hyperbolic, tol: float = NONNEG_TOL) -> bool:
    return h.is_nonneg(tol)


def hyperbolic_compare(h: Hyperbolic, g: Hyperbolic, tol: float = NONNEG_TOL) -> Order:
    """Componentwise order on the ``e1``/``e2`` coordinates of ``h - g``."""
    d1, d2 = h.a1 - g.a1, h.a2 - g.a2
    ge = d1 >= -tol and d2 >= -tol
    le = d1 <= tol and d2 <= tol
    if ge and le:
        return Order.EQ
    if ge:
        return Order.GE
    if le:
        return Order.LE
    return Order.INCOMPARABLE
