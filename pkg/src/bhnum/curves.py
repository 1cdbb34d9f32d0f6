"""Curve descriptors and their local expansion data at infinity.

Two families, each with a single point at infinity:

  cyclo   y**a = x**b - 1 with gcd(a, b) = 1, a, b >= 2;  weight w = a*b
  minusx  y**2 = x**(2g+1) - x with g >= 1;               weight w = 4*g

With t the local parameter at infinity, x = t**-a exactly and y =
sigma * t**-b * (1 - t**w)**(1/a) expanded binomially, where sigma = -1
for even a and +1 for odd a (for odd a only the +1 branch exists over the
rationals, so the even-a sign convention cannot be carried over; odd-a
curves are handled on that branch and flagged experimental downstream).
For minusx read a = 2, b = 2g + 1 in these formulas; its weight 4g comes
from (1 - t**(4g))**(1/2) because the extra -x term retunes the binomial
step.

The distinguished exponent pair (i, j) with b*j - a*i = 1 makes
x**(i-1) dx / (a y**j) a differential with neither zero nor pole at
infinity; u(t) is its normalized integral, u = t + higher, and everything
downstream inverts that u.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .numtheory import mod_inverse
from .series import TruncSeries, binomial_series

__all__ = [
    "CurveError",
    "CurveSpec",
    "canonical_exponents",
    "differential_pullback",
    "parse_curve",
    "u_series",
    "xy_of_t",
]


class CurveError(ValueError):
    """Malformed or unsupported curve description."""


def canonical_exponents(a: int, b: int) -> tuple[int, int]:
    """The unique (i, j) with b*j - a*i = 1, 1 <= j <= a - 1.

    This is the exponent pair of the distinguished differential
    x**(i-1) dx / (a y**j) on y**a = x**b - 1.
    """
    if a < 2 or b < 2:
        raise CurveError("exponents must be at least 2")
    if gcd(a, b) != 1:
        raise CurveError(f"exponents must be coprime, got gcd({a}, {b}) != 1")
    j = mod_inverse(b % a, a)
    i = (b * j - 1) // a
    return i, j


@dataclass(frozen=True, slots=True)
class CurveSpec:
    """y**a = x**b - 1 ('cyclo') or y**2 = x**b - x with odd b ('minusx').

    x has pole order a at infinity and y pole order b, for both families
    (minusx stores a = 2, b = 2g + 1).
    """

    family: str
    a: int
    b: int

    def __post_init__(self) -> None:
        if self.family == "cyclo":
            if self.a < 2 or self.b < 2:
                raise CurveError("cyclo exponents must be at least 2")
            if gcd(self.a, self.b) != 1:
                raise CurveError(
                    f"cyclo exponents must be coprime, got a={self.a}, b={self.b}"
                )
        elif self.family == "minusx":
            if self.a != 2:
                raise CurveError("minusx curves are hyperelliptic, a must be 2")
            if self.b < 3 or self.b % 2 == 0:
                raise CurveError("minusx needs b = 2g + 1 with g >= 1")
        else:
            raise CurveError(f"unknown curve family {self.family!r}")

    @classmethod
    def cyclotomic(cls, a: int, b: int) -> "CurveSpec":
        return cls("cyclo", a, b)

    @classmethod
    def minus_x(cls, g: int) -> "CurveSpec":
        if g < 1:
            raise CurveError("minusx genus must be at least 1")
        return cls("minusx", 2, 2 * g + 1)

    @property
    def weight(self) -> int:
        """Step of the coefficient support pattern: a*b, or 4g for minusx."""
        if self.family == "cyclo":
            return self.a * self.b
        return 2 * (self.b - 1)

    @property
    def genus_if_hyperelliptic(self) -> int:
        if self.a != 2:
            raise CurveError("not a hyperelliptic model")
        return (self.b - 1) // 2

    @property
    def exponent_pair(self) -> tuple[int, int]:
        """(i, j) of the distinguished differential x**(i-1) dx / (a y**j)."""
        if self.family == "cyclo":
            return canonical_exponents(self.a, self.b)
        return (self.b - 1) // 2, 1

    @property
    def y_leading_sign(self) -> int:
        return -1 if self.a % 2 == 0 else 1

    @property
    def is_experimental(self) -> bool:
        """True off the proven ground: every curve except cyclo(2, 5)."""
        return not (self.family == "cyclo" and self.a == 2 and self.b == 5)

    def __str__(self) -> str:
        if self.family == "cyclo":
            return f"cyclo:a={self.a},b={self.b}"
        return f"minusx:g={(self.b - 1) // 2}"


def parse_curve(text: str) -> CurveSpec:
    """Parse 'cyclo:a=2,b=5' or 'minusx:g=1' descriptors."""
    head, _, tail = text.strip().partition(":")
    fields = {}
    for part in tail.split(","):
        key, _, value = part.partition("=")
        if not value or not value.lstrip("-").isdigit():
            raise CurveError(f"cannot parse curve descriptor {text!r}")
        fields[key.strip()] = int(value)
    if head == "cyclo":
        if sorted(fields) != ["a", "b"]:
            raise CurveError(f"cyclo descriptor needs a= and b=, got {text!r}")
        return CurveSpec.cyclotomic(fields["a"], fields["b"])
    if head == "minusx":
        if sorted(fields) != ["g"]:
            raise CurveError(f"minusx descriptor needs g=, got {text!r}")
        return CurveSpec.minus_x(fields["g"])
    raise CurveError(f"unknown curve family in {text!r}")


def xy_of_t(curve: CurveSpec, order: int) -> tuple[TruncSeries, TruncSeries]:
    """(x(t), y(t)) at infinity, each exact through t**order."""
    x = TruncSeries.monomial(-curve.a, 1, order)
    y = (
        binomial_series(curve.weight, Fraction(1, curve.a), order + curve.b)
        .shift(-curve.b)
        .scale(curve.y_leading_sign)
    )
    return x, y


def differential_pullback(curve: CurveSpec, order: int) -> TruncSeries:
    """The distinguished differential written in t, as a series in t.

    Computed honestly from the x(t), y(t) expansions as
    x**(i-1) * dx/dt / (a * y**j); no closed form is assumed.  The result
    has valuation 0 and leading coefficient sigma = -y_leading_sign**j
    (+1 on even-a curves with odd j); u_series() integrates the
    sigma-normalized version.
    """
    i, j = curve.exponent_pair
    slack = 2 * (curve.a + curve.b * j) + 2
    x, y = xy_of_t(curve, order + slack)
    numer = x.power(i - 1) * x.derive()
    pulled = numer * y.power(j).invert() * Fraction(1, curve.a)
    return pulled.truncate(order)


def u_series(curve: CurveSpec, order: int) -> TruncSeries:
    """The normalized integral u(t) = t + higher, exact through t**order.

    u is the integral of (1 - t**w)**(-j/a) dt, the sign-normalized
    pullback of the distinguished differential.
    """
    if order < 1:
        raise CurveError("u series needs order at least 1")
    _, j = curve.exponent_pair
    integrand = binomial_series(curve.weight, Fraction(-j, curve.a), order - 1)
    return integrand.integrate()
