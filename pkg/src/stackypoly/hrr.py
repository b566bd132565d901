"""Euler characteristics of line bundles on ``CP(1,b)`` and ``CP(a,a)``.

The K-theory of ``CP(a,ab)`` is supported at the ``ab``-th roots of unity,
and the Riemann-Roch sum splits into one term per root. Only the two
families with ``a = 1`` or ``b = 1`` are covered. The sums are evaluated
numerically in ``mpmath`` at 50 significant digits and rounded; the
independent integer check is the monomial count of
:func:`stackypoly.quantization.section_basis`.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

import mpmath

from .quantization import section_basis
from .stacky import derive_triple, weighted_projective

DPS = 50
RESIDUAL_TOL = mpmath.mpf("1e-6")
IMAG_TOL = mpmath.mpf("1e-9")


class PrecisionError(ArithmeticError):
    """A root-of-unity sum failed its residual checks."""


@dataclass(frozen=True)
class WpsDatum:
    a: int
    b: int
    tau: int

    def __post_init__(self):
        if self.a < 1 or self.b < 1:
            raise ValueError("a and b must be positive")
        if self.a != 1 and self.b != 1:
            raise ValueError(f"CP({self.a},{self.a * self.b}) is outside the families a = 1 or b = 1")

    @property
    def label(self) -> str:
        return f"CP({self.a},{self.a * self.b})"


@dataclass(frozen=True)
class EulerResult:
    datum: WpsDatum
    chi_formula: mpmath.mpf
    chi_rounded: int
    chi_count: int

    @property
    def agree(self) -> bool:
        return self.chi_rounded == self.chi_count

    @property
    def residual(self) -> mpmath.mpf:
        return abs(self.chi_formula - self.chi_rounded)


def _finish(datum: WpsDatum, value: mpmath.mpc) -> EulerResult:
    if abs(value.imag) >= IMAG_TOL:
        raise PrecisionError(f"{datum.label}, tau={datum.tau}: imaginary residue {value.imag}")
    real = value.real
    rounded = int(mpmath.nint(real))
    if abs(real - rounded) >= RESIDUAL_TOL:
        raise PrecisionError(f"{datum.label}, tau={datum.tau}: {real} is not near an integer")
    S = weighted_projective(datum.a, datum.b, Fraction(datum.tau, datum.a * datum.b))
    count = section_basis(S, derive_triple(S)).q_dim
    return EulerResult(datum, real, rounded, count)


def euler_cp1b(b: int, tau: int) -> EulerResult:
    """``chi(CP(1,b), l^tau)``; should equal ``floor(tau/b) + 1``.

    For ``b = 1`` the twisted-sector sum is empty.
    """
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    datum = WpsDatum(1, b, tau)
    with mpmath.workdps(DPS):
        zeta = mpmath.exp(2j * mpmath.pi / b)
        twisted = mpmath.mpc(0)
        for k in range(1, b):
            twisted += zeta ** (k * tau) / (1 - zeta ** (k * (b - 1)))
        value = mpmath.mpf(2 * tau + 1 + b) / (2 * b) + twisted / b
        return _finish(datum, mpmath.mpc(value))


def euler_cpaa(a: int, tau: int) -> EulerResult:
    """``chi(CP(a,a), l^tau)``; should equal ``tau/a + 1`` if ``a | tau``, else 0."""
    if tau < 0:
        raise ValueError("tau must be nonnegative")
    datum = WpsDatum(a, 1, tau)
    with mpmath.workdps(DPS):
        zeta = mpmath.exp(2j * mpmath.pi / a)
        value = sum((zeta ** (k * tau) for k in range(a)), mpmath.mpc(0)) * mpmath.mpf(tau + a) / a**2
        return _finish(datum, mpmath.mpc(value))


def closed_form_cp1b(b: int, tau: int) -> int:
    return tau // b + 1


def closed_form_cpaa(a: int, tau: int) -> int:
    return tau // a + 1 if tau % a == 0 else 0


def euler_characteristic(a: int, b: int, tau: int) -> EulerResult:
    """Dispatch to the family formula for ``CP(a, ab)``."""
    if a == 1:
        return euler_cp1b(b, tau)
    if b == 1:
        return euler_cpaa(a, tau)
    raise ValueError(f"CP({a},{a * b}) is outside the families a = 1 or b = 1")
