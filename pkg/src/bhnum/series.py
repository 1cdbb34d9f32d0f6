"""Truncated Laurent series over exact rationals.

A series is stored as (base_exponent, coefficients, trunc_order): the
coefficient of t**(base_exponent + i) sits at index i, and the series is
known exactly modulo O(t**(trunc_order + 1)).  Canonical form strips
leading zero coefficients; the zero series stores no coefficients and sets
base_exponent = trunc_order + 1, so base + len(coefficients) - 1 ==
trunc_order holds for every instance.  That convention makes
base_exponent a valid valuation lower bound even for the zero series.

Truncation bookkeeping is deliberately pessimistic.  Every operation
returns the weakest order it can justify (a product is exact only through
min(trunc_a + val_b, trunc_b + val_a), a derivative loses one order, an
inverse of a series with valuation v loses 2v, and so on), and coeff()
refuses to read past trunc_order.  Exactness is never overstated; when an
algorithm genuinely knows a series to be an exact polynomial it widens the
window explicitly via _padded.

Coefficients are fractions.Fraction throughout.  Floats are rejected.

Two multiplication kernels produce identical results: a schoolbook
convolution on Fractions, and an integer-normalized path that clears
denominators once per operand, convolves machine/big integers, and
restores a single shared denominator.  BHNUM_MUL=fraction|int selects one
(default: int, which benchmarks several times faster on the dense series
that arise here).  Reversion likewise ships two algorithms selected by
BHNUM_REVERT=lagrange|newton|auto; see revert().
"""

from __future__ import annotations

import os
from dataclasses import dataclass
from fractions import Fraction
from math import gcd, lcm

__all__ = [
    "SeriesError",
    "TruncSeries",
    "binomial_series",
    "conv_coeff",
    "revert",
    "support_modulus",
]


class SeriesError(ValueError):
    """A series operation's precondition was violated."""


_ZERO = Fraction(0)
_ONE = Fraction(1)


def _as_fraction(x) -> Fraction:
    if type(x) is Fraction:
        return x
    if isinstance(x, int):
        return Fraction(x)
    if isinstance(x, Fraction):
        return x
    raise SeriesError(f"coefficients must be exact rationals, got {type(x).__name__}")


def _mul_mode() -> str:
    mode = os.environ.get("BHNUM_MUL", "int")
    if mode not in ("int", "fraction"):
        raise SeriesError(f"BHNUM_MUL must be 'int' or 'fraction', got {mode!r}")
    return mode


@dataclass(frozen=True, slots=True)
class TruncSeries:
    base_exponent: int
    coefficients: tuple[Fraction, ...]
    trunc_order: int

    def __post_init__(self) -> None:
        if self.base_exponent + len(self.coefficients) - 1 != self.trunc_order:
            raise SeriesError(
                "inconsistent series: base %d + %d coefficients does not end at "
                "trunc order %d"
                % (self.base_exponent, len(self.coefficients), self.trunc_order)
            )
        if self.coefficients and self.coefficients[0] == 0:
            raise SeriesError("leading stored coefficient must be nonzero")

    # -- constructors ---------------------------------------------------

    @staticmethod
    def _make(base: int, coeffs: list[Fraction], trunc: int) -> "TruncSeries":
        """Canonicalize: strip leading zeros, collapse to the zero series."""
        i = 0
        while i < len(coeffs) and coeffs[i] == 0:
            i += 1
        if i == len(coeffs):
            return TruncSeries(trunc + 1, (), trunc)
        return TruncSeries(base + i, tuple(coeffs[i:]), trunc)

    @classmethod
    def zero(cls, trunc_order: int) -> "TruncSeries":
        return cls(trunc_order + 1, (), trunc_order)

    @classmethod
    def monomial(cls, exponent: int, coeff, trunc_order: int) -> "TruncSeries":
        if exponent > trunc_order:
            raise SeriesError("monomial exponent exceeds truncation order")
        c = _as_fraction(coeff)
        if c == 0:
            return cls.zero(trunc_order)
        coeffs = [c] + [_ZERO] * (trunc_order - exponent)
        return cls(exponent, tuple(coeffs), trunc_order)

    @classmethod
    def one(cls, trunc_order: int) -> "TruncSeries":
        return cls.monomial(0, _ONE, trunc_order)

    @classmethod
    def from_terms(cls, terms, trunc_order: int) -> "TruncSeries":
        """Series with the given {exponent: coefficient} terms.

        Every exponent must lie at or below trunc_order; claiming a term
        beyond the exactness window would be a caller bug.
        """
        items = [(e, _as_fraction(c)) for e, c in dict(terms).items() if c != 0]
        if not items:
            return cls.zero(trunc_order)
        hi = max(e for e, _ in items)
        if hi > trunc_order:
            raise SeriesError(f"term at t^{hi} exceeds truncation order {trunc_order}")
        lo = min(e for e, _ in items)
        coeffs = [_ZERO] * (trunc_order - lo + 1)
        for e, c in items:
            coeffs[e - lo] = c
        return cls._make(lo, coeffs, trunc_order)

    # -- accessors ------------------------------------------------------

    def is_zero(self) -> bool:
        return not self.coefficients

    def coeff(self, exponent: int) -> Fraction:
        """Coefficient of t**exponent.  Reading past trunc_order raises."""
        if exponent > self.trunc_order:
            raise SeriesError(
                f"coefficient at t^{exponent} is beyond truncation order "
                f"{self.trunc_order}"
            )
        if exponent < self.base_exponent:
            return _ZERO
        return self.coefficients[exponent - self.base_exponent]

    def terms(self) -> list[tuple[int, Fraction]]:
        """Nonzero (exponent, coefficient) pairs, ascending."""
        base = self.base_exponent
        return [(base + i, c) for i, c in enumerate(self.coefficients) if c]

    def support(self) -> tuple[int, ...]:
        return tuple(e for e, _ in self.terms())

    def agrees_through(self, other: "TruncSeries", order: int | None = None) -> bool:
        """Coefficient-wise equality through min of the truncation windows."""
        bound = min(self.trunc_order, other.trunc_order)
        if order is not None:
            bound = min(bound, order)
        lo = min(self.base_exponent, other.base_exponent)
        for e in range(lo, bound + 1):
            if self.coeff(e) != other.coeff(e):
                return False
        return True

    # -- ring operations ------------------------------------------------

    def __neg__(self) -> "TruncSeries":
        return TruncSeries(
            self.base_exponent, tuple(-c for c in self.coefficients), self.trunc_order
        )

    def __add__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            other = TruncSeries.monomial(0, other, self.trunc_order)
        trunc = min(self.trunc_order, other.trunc_order)
        lo = min(self.base_exponent, other.base_exponent)
        if lo > trunc:
            return TruncSeries.zero(trunc)
        coeffs = [_ZERO] * (trunc - lo + 1)
        for s in (self, other):
            for i, c in enumerate(s.coefficients):
                e = s.base_exponent + i
                if e > trunc:
                    break
                if c:
                    coeffs[e - lo] += c
        return TruncSeries._make(lo, coeffs, trunc)

    __radd__ = __add__

    def __sub__(self, other) -> "TruncSeries":
        if not isinstance(other, TruncSeries):
            other = TruncSeries.monomial(0, other, self.trunc_order)
        return self + (-other)

    def __rsub__(self, other) -> "TruncSeries":
        return (-self) + other

    def scale(self, c) -> "TruncSeries":
        c = _as_fraction(c)
        if c == 0 or self.is_zero():
            return TruncSeries.zero(self.trunc_order)
        return TruncSeries(
            self.base_exponent,
            tuple(c * x for x in self.coefficients),
            self.trunc_order,
        )

    def __mul__(self, other) -> "TruncSeries":
        if isinstance(other, TruncSeries):
            return self._mul(other)
        return self.scale(other)

    def __rmul__(self, other) -> "TruncSeries":
        return self.scale(other)

    def _mul(self, other: "TruncSeries", cap: int | None = None) -> "TruncSeries":
        # Exact through min(trunc_a + val_b, trunc_b + val_a); the unknown
        # tail of each factor shifts by the other's valuation.
        trunc = min(
            self.trunc_order + other.base_exponent,
            other.trunc_order + self.base_exponent,
        )
        if cap is not None:
            trunc = min(trunc, cap)
        if self.is_zero() or other.is_zero():
            return TruncSeries.zero(trunc)
        base = self.base_exponent + other.base_exponent
        if base > trunc:
            return TruncSeries.zero(trunc)
        if _mul_mode() == "int":
            coeffs = _convolve_int(self, other, base, trunc)
        else:
            coeffs = _convolve_fraction(self, other, base, trunc)
        return TruncSeries._make(base, coeffs, trunc)

    def power(self, n: int, cap: int | None = None) -> "TruncSeries":
        """self**n by binary powering; negative n inverts first."""
        if n < 0:
            return self.invert().power(-n, cap=cap)
        if n == 0:
            return TruncSeries.one(self.trunc_order if cap is None else cap)
        result = None
        square = self
        while True:
            if n & 1:
                result = square if result is None else result._mul(square, cap=cap)
            n >>= 1
            if not n:
                return result
            square = square._mul(square, cap=cap)

    # -- shifts and reshaping --------------------------------------------

    def shift(self, d: int) -> "TruncSeries":
        """Multiply by t**d."""
        return TruncSeries(
            self.base_exponent + d, self.coefficients, self.trunc_order + d
        )

    def truncate(self, new_trunc: int) -> "TruncSeries":
        """Forget coefficients above new_trunc."""
        if new_trunc >= self.trunc_order:
            return self
        if new_trunc < self.base_exponent:
            return TruncSeries.zero(new_trunc)
        keep = new_trunc - self.base_exponent + 1
        return TruncSeries._make(
            self.base_exponent, list(self.coefficients[:keep]), new_trunc
        )

    def _padded(self, new_trunc: int) -> "TruncSeries":
        """Widen the exactness window by appending zero coefficients.

        Only valid when the caller knows the series is an exact polynomial
        (e.g. a Newton iterate treated as such); this is the one deliberate
        escape hatch from pessimistic bookkeeping.
        """
        if new_trunc <= self.trunc_order:
            return self
        if self.is_zero():
            return TruncSeries.zero(new_trunc)
        pad = (_ZERO,) * (new_trunc - self.trunc_order)
        return TruncSeries(
            self.base_exponent, self.coefficients + pad, new_trunc
        )

    # -- calculus ---------------------------------------------------------

    def derive(self) -> "TruncSeries":
        """Termwise derivative; exact one order less than the input."""
        trunc = self.trunc_order - 1
        if self.is_zero():
            return TruncSeries.zero(trunc)
        base = self.base_exponent
        coeffs = [(base + i) * c for i, c in enumerate(self.coefficients)]
        return TruncSeries._make(base - 1, coeffs, trunc)

    def integrate(self) -> "TruncSeries":
        """Termwise antiderivative with zero constant term.

        A nonzero coefficient on t**-1 has no Laurent antiderivative and
        raises.
        """
        if self.base_exponent <= -1 <= self.trunc_order and self.coeff(-1) != 0:
            raise SeriesError("series has a t^-1 term; no Laurent antiderivative")
        trunc = self.trunc_order + 1
        if self.is_zero():
            return TruncSeries.zero(trunc)
        base = self.base_exponent
        coeffs = [
            c / (base + i + 1) if base + i != -1 else _ZERO
            for i, c in enumerate(self.coefficients)
        ]
        return TruncSeries._make(base + 1, coeffs, trunc)

    # -- inversion and composition ----------------------------------------

    def invert(self) -> "TruncSeries":
        """Multiplicative inverse, exact through trunc_order - 2*valuation.

        Newton iteration x <- x*(2 - U*x) on the normalized unit part U;
        each iterate is treated as the exact polynomial it is, so the
        quadratic convergence is legitimate rather than a bookkeeping leak.
        """
        if self.is_zero():
            raise SeriesError("cannot invert the zero series")
        v = self.base_exponent
        c0 = self.coefficients[0]
        unit = self.shift(-v).scale(1 / c0)
        n = unit.trunc_order
        inv = TruncSeries.one(0)
        m = 0
        while m < n:
            m = min(2 * m + 1, n)
            x = inv._padded(m)
            prod = unit.truncate(m)._mul(x, cap=m)
            inv = x._mul(2 - prod, cap=m)
        return inv.shift(-v).scale(1 / c0)

    def compose(self, inner: "TruncSeries") -> "TruncSeries":
        """self(inner(t)), for inner with positive valuation.

        A Laurent self (negative base exponent) additionally requires
        inner to have valuation exactly 1, since composing t**-k with a
        higher-valuation series would leave the result's low-order window
        unknowable.  The walk over self's support reuses incremental gap
        powers of inner, so sparse outer series cost proportionally less.
        """
        if inner.is_zero():
            raise SeriesError("composition inner series must have a leading term")
        d = inner.base_exponent
        if d < 1:
            raise SeriesError("composition inner series must vanish at t=0")
        if self.base_exponent < 0 and d != 1:
            raise SeriesError(
                "Laurent composition requires an inner series of valuation 1"
            )
        support = self.terms()
        nonconst = [e for e, _ in support if e != 0]
        # Error sources: self's own tail enters at d*(trunc_self+1); inner's
        # tail first pollutes the k-th power at trunc_inner + d*(k-1).
        trunc = d * (self.trunc_order + 1) - 1
        if nonconst:
            trunc = min(trunc, inner.trunc_order + d * (min(nonconst) - 1))
        acc = TruncSeries.zero(trunc)
        gap_powers: dict[int, TruncSeries] = {}

        def gap_power(k: int) -> TruncSeries:
            if k not in gap_powers:
                gap_powers[k] = inner.power(k, cap=trunc)
            return gap_powers[k]

        cur = None
        cur_exp = 0
        for e, c in support:
            if e == 0:
                acc = acc + TruncSeries.monomial(0, c, trunc)
                continue
            if cur is None:
                cur = gap_power(e)
            else:
                cur = cur._mul(gap_power(e - cur_exp), cap=trunc)
            cur_exp = e
            acc = acc + cur.scale(c)
        return acc

    # -- display ----------------------------------------------------------

    def __str__(self) -> str:
        parts = []
        for e, c in self.terms()[:8]:
            if e == 0:
                parts.append(str(c))
            else:
                mag = f"t^{e}" if e != 1 else "t"
                parts.append(mag if c == 1 else f"-{mag}" if c == -1 else f"{c}*{mag}")
        if len(self.terms()) > 8:
            parts.append("...")
        parts.append(f"O(t^{self.trunc_order + 1})")
        return " + ".join(parts) if parts else "0"

    def __repr__(self) -> str:
        return f"TruncSeries({self})"


# -- multiplication kernels ------------------------------------------------


def _convolve_fraction(a: TruncSeries, b: TruncSeries, base: int, trunc: int):
    za = a.terms()
    zb = b.terms()
    if len(za) > len(zb):
        za, zb = zb, za
    out = [_ZERO] * (trunc - base + 1)
    for ea, ca in za:
        lim = trunc - ea
        for eb, cb in zb:
            if eb > lim:
                break
            out[ea + eb - base] += ca * cb
    return out


def _convolve_int(a: TruncSeries, b: TruncSeries, base: int, trunc: int):
    # Clear denominators once per operand, convolve plain integers, then
    # restore a single shared denominator.  Fraction construction at the end
    # performs the only gcd per output coefficient.
    den_a = lcm(*(c.denominator for c in a.coefficients), 1)
    den_b = lcm(*(c.denominator for c in b.coefficients), 1)
    za = [
        (a.base_exponent + i, c.numerator * (den_a // c.denominator))
        for i, c in enumerate(a.coefficients)
        if c
    ]
    zb = [
        (b.base_exponent + i, c.numerator * (den_b // c.denominator))
        for i, c in enumerate(b.coefficients)
        if c
    ]
    if len(za) > len(zb):
        za, zb = zb, za
    acc = [0] * (trunc - base + 1)
    for ea, ca in za:
        lim = trunc - ea
        for eb, cb in zb:
            if eb > lim:
                break
            acc[ea + eb - base] += ca * cb
    den = den_a * den_b
    return [Fraction(v, den) if v else _ZERO for v in acc]


def conv_coeff(a: TruncSeries, b: TruncSeries, exponent: int) -> Fraction:
    """Single product coefficient [t**exponent](a*b) without the full product.

    The exponent must lie inside the window a full product would certify.
    """
    window = min(
        a.trunc_order + b.base_exponent, b.trunc_order + a.base_exponent
    )
    if exponent > window:
        raise SeriesError(
            f"product coefficient at t^{exponent} is beyond the provable "
            f"window {window}"
        )
    total = _ZERO
    for ea, ca in a.terms():
        eb = exponent - ea
        if b.base_exponent <= eb <= b.trunc_order:
            cb = b.coefficients[eb - b.base_exponent]
            if cb:
                total += ca * cb
    return total


# -- structure helpers -------------------------------------------------------


def support_modulus(s: TruncSeries) -> int:
    """gcd of the gaps between nonzero exponents; 0 for a (near-)monomial.

    A positive value c means the support lies in base_exponent + c*Z, the
    pattern that lets reversion and composition skip provably-zero slots.
    """
    exps = s.support()
    g = 0
    for e in exps[1:]:
        g = gcd(g, e - exps[0])
    return g


def binomial_series(m: int, alpha, order: int) -> TruncSeries:
    """(1 - t**m)**alpha as a truncated series, exact through t**order."""
    if m < 1:
        raise SeriesError("binomial series exponent step must be positive")
    if order < 0:
        raise SeriesError("truncation order must be non-negative")
    alpha = _as_fraction(alpha)
    terms = {0: _ONE}
    term = _ONE
    k = 0
    while (k + 1) * m <= order:
        k += 1
        term *= Fraction(k - 1, k) - alpha / k
        terms[k * m] = term
    return TruncSeries.from_terms(terms, order)


# -- reversion ----------------------------------------------------------------


def revert(s: TruncSeries, algorithm: str | None = None) -> TruncSeries:
    """Compositional inverse g with s(g(t)) = t, exact as deep as s itself.

    Requires s = t + higher-order terms with leading coefficient exactly 1.
    Two independent algorithms are available (BHNUM_REVERT or the explicit
    argument): 'lagrange' computes g_n = [t**(n-1)](t/s)**n / n with
    incremental powers stepping by the support modulus, and 'newton' runs
    the doubling iteration g <- g - g'*(s(g) - t).  'auto' picks Lagrange
    for patterned support (where skipping off-pattern n is a large win,
    and measured faster on dense input as well) and Newton otherwise.
    """
    if s.is_zero() or s.base_exponent != 1 or s.coefficients[0] != 1:
        raise SeriesError("reversion requires a series t + O(t^2)")
    if algorithm is None:
        algorithm = os.environ.get("BHNUM_REVERT", "auto")
    if algorithm == "auto":
        algorithm = "lagrange" if support_modulus(s) != 1 else "newton"
    if algorithm == "lagrange":
        return _revert_lagrange(s)
    if algorithm == "newton":
        return _revert_newton(s)
    raise SeriesError(f"unknown reversion algorithm {algorithm!r}")


def _revert_lagrange(s: TruncSeries) -> TruncSeries:
    n_max = s.trunc_order
    step = support_modulus(s)
    if step == 0:
        # s is exactly t through its window.
        return TruncSeries.monomial(1, 1, n_max)
    p = s.shift(-1).invert()
    cap = n_max - 1
    p_step = p.power(step, cap=cap)
    terms: dict[int, Fraction] = {}
    cur = p
    n = 1
    while True:
        c = cur.coeff(n - 1) / n
        if c:
            terms[n] = c
        if n + step > n_max:
            break
        cur = cur._mul(p_step, cap=cap)
        n += step
    return TruncSeries.from_terms(terms, n_max)


def _revert_newton(s: TruncSeries) -> TruncSeries:
    n_max = s.trunc_order
    g = TruncSeries.monomial(1, 1, 1)
    m = 1
    while m < n_max:
        m = min(2 * m, n_max)
        gh = g._padded(m)
        err = s.truncate(m).compose(gh) - TruncSeries.monomial(1, 1, m)
        g = (gh - gh.derive()._mul(err, cap=m)).truncate(m)
    return g
