"""Bicomplex and hyperbolic number arithmetic.

A bicomplex number Z = z1 + j z2 (z1, z2 complex, i and j commuting units with
i^2 = j^2 = -1) is stored through its idempotent representation

    Z = alpha e+ + beta e-,   alpha = z1 - i z2,   beta = z1 + i z2,

where e+ = (1 + ij)/2 and e- = (1 - ij)/2. Every operation below works on the
pair (alpha, beta) componentwise; the cartesian pair (z1, z2) is a view.
"""

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np

from ..exceptions import ParseError, ZeroDivisor


Scalar = Union[int, float, complex]

ZERO_DIVISOR_TOL = 1e-12
HYPERBOLIC_TOL = 1e-10


@dataclass(frozen=True)
class Bicomplex:
    """A bicomplex number in idempotent coordinates."""

    alpha: complex
    beta: complex

    def __post_init__(self) -> None:
        object.__setattr__(self, "alpha", complex(self.alpha))
        object.__setattr__(self, "beta", complex(self.beta))

    # Constructors

    @classmethod
    def from_cartesian(cls, z1: Scalar, z2: Scalar = 0.0) -> "Bicomplex":
        """Build Z = z1 + j z2."""
        z1 = complex(z1)
        z2 = complex(z2)
        return cls(z1 - 1j * z2, z1 + 1j * z2)

    @classmethod
    def from_idempotent(cls, alpha: Scalar, beta: Scalar) -> "Bicomplex":
        """Build Z = alpha e+ + beta e-."""
        return cls(alpha, beta)

    @classmethod
    def scalar(cls, value: Scalar) -> "Bicomplex":
        """Embed a complex number (both idempotent parts equal)."""
        return cls(value, value)

    # Cartesian view

    @property
    def z1(self) -> complex:
        """Coefficient of 1."""
        return (self.alpha + self.beta) / 2

    @property
    def z2(self) -> complex:
        """Coefficient of j."""
        return 1j * (self.alpha - self.beta) / 2

    def idempotent_split(self) -> tuple[complex, complex]:
        """Return (alpha, beta) with Z = alpha e+ + beta e-."""
        return self.alpha, self.beta

    # Conjugations

    def conj_dagger(self) -> "Bicomplex":
        """Conjugate with respect to j: z1 - j z2."""
        return Bicomplex(self.beta, self.alpha)

    def conj_tilde(self) -> "Bicomplex":
        """Conjugate with respect to i: conj(z1) + j conj(z2)."""
        return Bicomplex(self.beta.conjugate(), self.alpha.conjugate())

    def conj_star(self) -> "Bicomplex":
        """Conjugate with respect to ij: conj(z1) - j conj(z2)."""
        return Bicomplex(self.alpha.conjugate(), self.beta.conjugate())

    # Arithmetic

    def __add__(self, other: Union["Bicomplex", Scalar]) -> "Bicomplex":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Bicomplex(self.alpha + other.alpha, self.beta + other.beta)

    __radd__ = __add__

    def __sub__(self, other: Union["Bicomplex", Scalar]) -> "Bicomplex":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Bicomplex(self.alpha - other.alpha, self.beta - other.beta)

    def __rsub__(self, other: Scalar) -> "Bicomplex":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return other - self

    def __neg__(self) -> "Bicomplex":
        return Bicomplex(-self.alpha, -self.beta)

    def __mul__(self, other: Union["Bicomplex", Scalar]) -> "Bicomplex":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, other)

    __rmul__ = __mul__

    def __truediv__(self, other: Union["Bicomplex", Scalar]) -> "Bicomplex":
        other = _coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return mul(self, try_invert(other))

    # Predicates

    def modulus(self) -> float:
        """Euclidean norm in R^4: sqrt(|z1|^2 + |z2|^2)."""
        return modulus(self)

    def is_zero_divisor(self, tol: float = ZERO_DIVISOR_TOL) -> bool:
        """True when Z is zero or a zero divisor (alpha = 0 or beta = 0)."""
        a, b = abs(self.alpha), abs(self.beta)
        return min(a, b) <= tol * (1.0 + max(a, b))

    def zero_divisor_factor(self, tol: float = ZERO_DIVISOR_TOL) -> tuple[complex, int]:
        """
        Write a zero divisor as lambda (1 + s ij).

        Returns:
            (lambda, s) with s = +1 when Z lies on C e+ and -1 when it lies on C e-

        Raises:
            ValueError: When Z is invertible
        """
        if not self.is_zero_divisor(tol):
            raise ValueError(f"{self!r} is invertible, not a zero divisor")
        if abs(self.beta) <= abs(self.alpha):
            return self.alpha / 2, 1
        return self.beta / 2, -1

    def close(self, other: "Bicomplex", tol: float = 1e-12) -> bool:
        """Tolerance comparison relative to the larger modulus."""
        scale = max(1.0, modulus(self), modulus(other))
        return modulus(self - other) <= tol * scale

    # Serialization

    def to_list(self) -> list[float]:
        """JSON encoding [re(z1), im(z1), re(z2), im(z2)]."""
        z1, z2 = self.z1, self.z2
        return [z1.real, z1.imag, z2.real, z2.imag]

    @classmethod
    def from_list(cls, values: Sequence[float]) -> "Bicomplex":
        """Decode the four-element JSON array."""
        if len(values) != 4:
            raise ParseError(f"Bicomplex needs 4 reals, got {len(values)}")
        return cls.from_cartesian(complex(values[0], values[1]), complex(values[2], values[3]))

    def __repr__(self) -> str:
        return f"Bicomplex(alpha={self.alpha!r}, beta={self.beta!r})"


@dataclass(frozen=True)
class Hyperbolic:
    """A hyperbolic number p e+ + m e- with real p, m."""

    p: float
    m: float

    def is_positive(self, tol: float = 0.0) -> bool:
        """Membership in D+ (both idempotent parts nonnegative)."""
        return self.p >= -tol and self.m >= -tol

    def is_real(self, rel_tol: float = 1e-9) -> bool:
        """True when p == m, i.e. the number lies on the real axis."""
        return math.isclose(self.p, self.m, rel_tol=rel_tol, abs_tol=rel_tol)

    def to_bicomplex(self) -> Bicomplex:
        return Bicomplex(self.p, self.m)

    def __add__(self, other: "Hyperbolic") -> "Hyperbolic":
        return Hyperbolic(self.p + other.p, self.m + other.m)

    def __mul__(self, other: "Hyperbolic") -> "Hyperbolic":
        return Hyperbolic(self.p * other.p, self.m * other.m)

    def to_dict(self) -> dict[str, float]:
        return {"plus": self.p, "minus": self.m}


ONE = Bicomplex(1, 1)
UNIT_I = Bicomplex(1j, 1j)
UNIT_J = Bicomplex.from_cartesian(0, 1)
UNIT_IJ = Bicomplex(1, -1)
E_PLUS = Bicomplex(1, 0)
E_MINUS = Bicomplex(0, 1)


def _coerce(value: Union[Bicomplex, Scalar]) -> Bicomplex:
    if isinstance(value, Bicomplex):
        return value
    if isinstance(value, (int, float, complex, np.number)):
        return Bicomplex.scalar(complex(value))
    return NotImplemented


def idempotent_split(z: Bicomplex) -> tuple[complex, complex]:
    """Return (alpha, beta) = (z1 - i z2, z1 + i z2)."""
    return z.idempotent_split()


def from_idempotent(pair: tuple[complex, complex]) -> Bicomplex:
    """Inverse of idempotent_split."""
    return Bicomplex(pair[0], pair[1])


def conj_dagger(z: Bicomplex) -> Bicomplex:
    return z.conj_dagger()


def conj_tilde(z: Bicomplex) -> Bicomplex:
    return z.conj_tilde()


def conj_star(z: Bicomplex) -> Bicomplex:
    return z.conj_star()


def mul(z: Bicomplex, w: Bicomplex) -> Bicomplex:
    """Product, componentwise in idempotent coordinates."""
    return Bicomplex(z.alpha * w.alpha, z.beta * w.beta)


def mul_cartesian(z: Bicomplex, w: Bicomplex) -> Bicomplex:
    """Product by polynomial expansion in (z1, z2) with j^2 = -1."""
    z1, z2, w1, w2 = z.z1, z.z2, w.z1, w.z2
    return Bicomplex.from_cartesian(z1 * w1 - z2 * w2, z1 * w2 + z2 * w1)


def modulus(z: Bicomplex) -> float:
    """|Z| with |Z|^2 = |z1|^2 + |z2|^2 = (|alpha|^2 + |beta|^2) / 2."""
    return math.sqrt((abs(z.alpha) ** 2 + abs(z.beta) ** 2) / 2)


def try_invert(z: Bicomplex, tol: float = ZERO_DIVISOR_TOL) -> Bicomplex:
    """
    Invert Z componentwise.

    Raises:
        ZeroDivisor: When alpha or beta vanishes (ZZ^dagger = 0)
    """
    if z.is_zero_divisor(tol):
        raise ZeroDivisor(f"{z!r} is a zero divisor (alpha={z.alpha}, beta={z.beta})")
    return Bicomplex(1 / z.alpha, 1 / z.beta)


def is_hyperbolic_positive(z: Bicomplex, tol: float = HYPERBOLIC_TOL) -> bool:
    """True iff both idempotent parts are real and nonnegative (Z in D+)."""
    slack = tol * (1.0 + modulus(z))
    return (
        abs(z.alpha.imag) <= slack
        and abs(z.beta.imag) <= slack
        and z.alpha.real >= -slack
        and z.beta.real >= -slack
    )


def random_bicomplex(rng: np.random.Generator, scale: float = 1.0) -> Bicomplex:
    """Draw Z with independent standard normal real coordinates."""
    x = rng.standard_normal(4) * scale
    return Bicomplex.from_cartesian(complex(x[0], x[1]), complex(x[2], x[3]))
