"""Congruence verification over the weight-graded number tables.

Three classical-style statements are machine-checked for the curve
y**2 = x**5 - 1 (weight 10):

  * a von Staudt-Clausen analogue: subtracting a computed fractional
    contribution A_p**(N/(p-1)) / p (times 1/4! mod p on the D side) for
    each prime p <= N + 1 with p = 1 mod 5 and p - 1 | N leaves an
    integer;
  * a Kummer-style congruence mod p**a between the normalized numbers
    C_N / N at weights in arithmetic progression of step p - 1;
  * the p-integrality of C_N / N and D_N / N at primes p = 1 mod 5 with
    p - 1 not dividing N.

Congruence of rationals mod p**a always means: the p-adic valuation of
the difference is at least a.  Verifiers refuse tables computed on any
other curve rather than silently apply an invariant A_p outside its
proven ground; the empirical denominator_probe is the tool for exploring
those.  The same decomposition engine, run with contribution -1/p at
every prime with p - 1 | 2n, reproduces the classical von Staudt-Clausen
statement for Bernoulli numbers and anchors the machinery.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction

from .curves import CurveSpec
from .generator import BHTable
from .numtheory import (
    PrimeResidueClass,
    binomial,
    is_prime,
    mod_inverse,
    padic_valuation,
    primes_in_class,
)

__all__ = [
    "MissingWeightError",
    "VerifierDomainError",
    "ap_invariant",
    "classical_vsc_bernoulli",
    "denominator_probe",
    "integrality_scan",
    "kummer_check",
    "vsc_decompose",
]

REPORT_VERSION = 1

_MAIN_CURVE = CurveSpec.cyclotomic(2, 5)


class VerifierDomainError(ValueError):
    """Input outside the proven ground of the statement being checked."""


class MissingWeightError(ValueError):
    """The table lacks weights the check needs; carries them in .weights."""

    def __init__(self, message: str, weights: list[int]):
        super().__init__(message)
        self.weights = weights


def _require_main_curve(table: BHTable, what: str) -> None:
    if table.curve != _MAIN_CURVE:
        raise VerifierDomainError(
            f"{what} is only proven for {_MAIN_CURVE}; refusing "
            f"{table.curve} (use denominator_probe for exploration)"
        )


def _require_weights(table: BHTable, needed: list[int], what: str) -> None:
    missing = sorted(n for n in needed if n not in table.rows)
    if missing:
        raise MissingWeightError(
            f"{what} needs weights {missing} not present in the table "
            f"(available up to {table.order - 2})",
            missing,
        )


def ap_invariant(p: int) -> int:
    """A_p = (-1)**((p-1)/10) * C((p-1)/2, (p-1)/10) for p = 1 mod 5.

    The prime invariant entering the fractional contributions; the sign
    alternates with the parity of (p-1)/10.
    """
    if not is_prime(p):
        raise VerifierDomainError(f"{p} is not prime")
    if p % 5 != 1:
        raise VerifierDomainError(f"A_p needs p = 1 mod 5, got {p}")
    e = (p - 1) // 10
    return (-1) ** e * binomial((p - 1) // 2, e)


# -- shared decomposition engine ----------------------------------------------


def _decompose(value: Fraction, contributions: list[tuple[int, Fraction]]):
    """Subtract per-prime fractional parts; return (remainder, integral?)."""
    remainder = value
    for _, part in contributions:
        remainder -= part
    return remainder, remainder.denominator == 1


def _fmt(q: Fraction) -> str:
    return str(q)


@dataclass(frozen=True, slots=True)
class VscContribution:
    p: int
    exponent: int
    ap: int
    c_part: Fraction
    d_part: Fraction


@dataclass(frozen=True, slots=True)
class VscReport:
    weight: int
    contributions: tuple[VscContribution, ...]
    g_remainder: Fraction
    h_remainder: Fraction
    passed: bool

    def summary_line(self) -> str:
        flag = "pass" if self.passed else "FAIL"
        return (
            f"VSC N={self.weight} {flag} G={_fmt(self.g_remainder)} "
            f"H={_fmt(self.h_remainder)}"
        )

    def to_json_dict(self) -> dict:
        return {
            "format": "bhnum.report.vsc",
            "version": REPORT_VERSION,
            "weight": self.weight,
            "contributions": [
                {
                    "p": c.p,
                    "exponent": c.exponent,
                    "ap": str(c.ap),
                    "c_part": [str(c.c_part.numerator), str(c.c_part.denominator)],
                    "d_part": [str(c.d_part.numerator), str(c.d_part.denominator)],
                }
                for c in self.contributions
            ],
            "g_remainder": [
                str(self.g_remainder.numerator),
                str(self.g_remainder.denominator),
            ],
            "h_remainder": [
                str(self.h_remainder.numerator),
                str(self.h_remainder.denominator),
            ],
            "passed": self.passed,
        }


def vsc_decompose(table: BHTable, weight: int) -> VscReport:
    """Check the von Staudt-Clausen analogue at one weight.

    Relevant primes: p <= N + 1, p = 1 mod 5, p - 1 | N.  The C-side
    contribution is A_p**(N/(p-1)) / p, the D-side one carries the extra
    factor 1/4! inverted mod p.  Both remainders must be integers.
    """
    _require_main_curve(table, "the von Staudt-Clausen analogue")
    _require_weights(table, [weight], "vsc_decompose")
    contributions = []
    for p in primes_in_class(weight + 1, PrimeResidueClass(5, 1)):
        if weight % (p - 1) != 0:
            continue
        e = weight // (p - 1)
        ap = ap_invariant(p)
        ape = pow(ap, e)
        c_part = Fraction(ape, p)
        d_part = Fraction(mod_inverse(24, p) * ape, p)
        contributions.append(VscContribution(p, e, ap, c_part, d_part))
    g_rem, g_ok = _decompose(table.c(weight), [(c.p, c.c_part) for c in contributions])
    h_rem, h_ok = _decompose(table.d(weight), [(c.p, c.d_part) for c in contributions])
    return VscReport(weight, tuple(contributions), g_rem, h_rem, g_ok and h_ok)


@dataclass(frozen=True, slots=True)
class BernoulliVscReport:
    index: int
    primes: tuple[int, ...]
    remainder: Fraction
    passed: bool

    def summary_line(self) -> str:
        flag = "pass" if self.passed else "FAIL"
        return f"VSC-BERNOULLI 2n={self.index} {flag} R={_fmt(self.remainder)}"


def classical_vsc_bernoulli(index: int, value: Fraction) -> BernoulliVscReport:
    """The classical statement: B_2n + sum over (p-1) | 2n of 1/p is integral.

    Runs through the same decomposition engine as vsc_decompose, with
    contribution -1/p at every prime p with p - 1 | 2n; it anchors the
    engine against two centuries of literature.
    """
    if index < 2 or index % 2:
        raise VerifierDomainError(f"index must be an even integer >= 2, got {index}")
    primes = [p for p in range(2, index + 2) if index % (p - 1) == 0 and is_prime(p)]
    remainder, ok = _decompose(value, [(p, Fraction(-1, p)) for p in primes])
    return BernoulliVscReport(index, tuple(primes), remainder, ok)


# -- Kummer-style congruences --------------------------------------------------


@dataclass(frozen=True, slots=True)
class KummerReport:
    p: int
    depth: int
    index: int
    weights: tuple[int, ...]
    c_combination: Fraction
    d_combination: Fraction
    c_valuation: float
    d_valuation: float
    passed: bool

    def summary_line(self) -> str:
        flag = "pass" if self.passed else "FAIL"
        return (
            f"KUMMER p={self.p} a={self.depth} n={self.index} {flag} "
            f"valC={self.c_valuation} valD={self.d_valuation}"
        )

    def to_json_dict(self) -> dict:
        return {
            "format": "bhnum.report.kummer",
            "version": REPORT_VERSION,
            "p": self.p,
            "depth": self.depth,
            "index": self.index,
            "weights": list(self.weights),
            "c_combination": [
                str(self.c_combination.numerator),
                str(self.c_combination.denominator),
            ],
            "d_combination": [
                str(self.d_combination.numerator),
                str(self.d_combination.denominator),
            ],
            "c_valuation": str(self.c_valuation),
            "d_valuation": str(self.d_valuation),
            "passed": self.passed,
        }


def kummer_check(table: BHTable, p: int, depth: int, index: int) -> KummerReport:
    """Check the Kummer-style congruence mod p**depth at base weight 10*index.

    The alternating binomial combination sum_r (-1)**r * C(a, r) *
    A_p**(a-r) * X_W / W over the weights W = 10*n + r*(p-1), r = 0..a,
    must have p-adic valuation at least a, both for X = C and X = D.
    Inadmissible inputs raise: p must be a prime = 1 mod 5 with p - 1 not
    dividing 10*n, and 10*n - 2 >= a.
    """
    _require_main_curve(table, "the Kummer-style congruence")
    if depth < 1 or index < 1:
        raise VerifierDomainError("depth and index must be positive")
    ap = ap_invariant(p)  # validates p
    n10 = 10 * index
    if n10 % (p - 1) == 0:
        raise VerifierDomainError(
            f"p - 1 = {p - 1} divides 10n = {n10}; the congruence needs "
            "p - 1 not dividing 10n"
        )
    if n10 - 2 < depth:
        raise VerifierDomainError(f"10n - 2 = {n10 - 2} is below depth {depth}")
    weights = [n10 + r * (p - 1) for r in range(depth + 1)]
    _require_weights(table, weights, f"kummer_check(p={p}, a={depth}, n={index})")
    c_sum = Fraction(0)
    d_sum = Fraction(0)
    for r, w in enumerate(weights):
        coeff = (-1) ** r * binomial(depth, r) * pow(ap, depth - r)
        c_sum += coeff * table.c_over_n(w)
        d_sum += coeff * table.d_over_n(w)
    c_val = padic_valuation(c_sum, p)
    d_val = padic_valuation(d_sum, p)
    return KummerReport(
        p,
        depth,
        index,
        tuple(weights),
        c_sum,
        d_sum,
        c_val,
        d_val,
        c_val >= depth and d_val >= depth,
    )


# -- integrality ----------------------------------------------------------------


@dataclass(frozen=True, slots=True)
class IntegralityRow:
    p: int
    weight: int
    c_valuation: float
    d_valuation: float
    passed: bool

    def summary_line(self) -> str:
        flag = "pass" if self.passed else "FAIL"
        return (
            f"INTEGRALITY p={self.p} N={self.weight} {flag} "
            f"valC={self.c_valuation} valD={self.d_valuation}"
        )


@dataclass(frozen=True, slots=True)
class IntegralityReport:
    prime_limit: int
    rows: tuple[IntegralityRow, ...]
    passed: bool

    def to_json_dict(self) -> dict:
        return {
            "format": "bhnum.report.integrality",
            "version": REPORT_VERSION,
            "prime_limit": self.prime_limit,
            "rows": [
                {
                    "p": r.p,
                    "weight": r.weight,
                    "c_valuation": str(r.c_valuation),
                    "d_valuation": str(r.d_valuation),
                    "passed": r.passed,
                }
                for r in self.rows
            ],
            "passed": self.passed,
        }


def integrality_scan(table: BHTable, prime_limit: int) -> IntegralityReport:
    """Scan v_p(C_N / N) >= 0 and v_p(D_N / N) >= 0 over the table.

    Covers primes p <= prime_limit with p = 1 mod 5 and p - 1 not dividing
    N; rows come out sorted by (p, N) regardless of traversal order.
    """
    _require_main_curve(table, "the integrality statement")
    if prime_limit < 1:
        raise VerifierDomainError("prime limit must be positive")
    rows = []
    for p in primes_in_class(prime_limit, PrimeResidueClass(5, 1)):
        for n in table.weights():
            if n % (p - 1) == 0:
                continue
            c_val = padic_valuation(table.c_over_n(n), p)
            d_val = padic_valuation(table.d_over_n(n), p)
            rows.append(IntegralityRow(p, n, c_val, d_val, c_val >= 0 and d_val >= 0))
    rows.sort(key=lambda r: (r.p, r.weight))
    return IntegralityReport(prime_limit, tuple(rows), all(r.passed for r in rows))


# -- empirical denominator probe --------------------------------------------------


_TRIAL_LIMIT = 10**7


def _trial_factor(n: int) -> tuple[list[int], int]:
    """Distinct prime factors found by trial division, plus the cofactor.

    A cofactor of 1 means the factorization is complete; anything larger
    resisted both trial division up to the limit and a deterministic
    primality certificate, and the caller must report it.
    """
    primes = []
    for p in (2, 3):
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
    p, step = 5, 2
    while n > 1 and p <= _TRIAL_LIMIT and p * p <= n:
        if n % p == 0:
            primes.append(p)
            while n % p == 0:
                n //= p
        p += step
        step = 6 - step
    if n > 1 and (p * p > n or (n < 1 << 64 and is_prime(n))):
        primes.append(n)
        n = 1
    return primes, n


@dataclass(frozen=True, slots=True)
class ProbeRow:
    weight: int
    c_primes: tuple[int, ...]
    d_primes: tuple[int, ...]
    predicted: tuple[int, ...]
    matches: bool
    unfactored: tuple[int, ...]

    def summary_line(self) -> str:
        def fmt(ps):
            return "{" + ",".join(str(p) for p in ps) + "}"

        flag = "match" if self.matches else "DIFFER"
        line = (
            f"PROBE N={self.weight} c={fmt(self.c_primes)} d={fmt(self.d_primes)} "
            f"predicted={fmt(self.predicted)} {flag}"
        )
        if self.unfactored:
            line += f" unfactored={fmt(self.unfactored)}"
        return line


@dataclass(frozen=True, slots=True)
class ProbeReport:
    curve: str
    heuristic: bool
    rows: tuple[ProbeRow, ...]

    def to_json_dict(self) -> dict:
        return {
            "format": "bhnum.report.probe",
            "version": REPORT_VERSION,
            "curve": self.curve,
            "heuristic": self.heuristic,
            "rows": [
                {
                    "weight": r.weight,
                    "c_primes": list(r.c_primes),
                    "d_primes": list(r.d_primes),
                    "predicted": list(r.predicted),
                    "matches": r.matches,
                    "unfactored": [str(u) for u in r.unfactored],
                }
                for r in self.rows
            ],
        }


def denominator_probe(table: BHTable) -> ProbeReport:
    """Factor the denominators of C_N/N, D_N/N and compare to a prediction.

    The prediction is {p <= N + 1 : p = 1 mod b, p - 1 | N} on cyclo
    curves, and the same with p = 1 mod w on minusx curves; outside
    cyclo(2, 5) both are extrapolations, so the report is flagged
    heuristic.  Any denominator part that resists trial division is
    reported explicitly rather than dropped.
    """
    c = table.curve
    if c.family == "cyclo":
        cls = PrimeResidueClass(c.b, 1 % c.b)
    else:
        cls = PrimeResidueClass(c.weight, 1)
    rows = []
    for n in table.weights():
        c_primes, c_rest = _trial_factor(table.c_over_n(n).denominator)
        d_primes, d_rest = _trial_factor(table.d_over_n(n).denominator)
        predicted = [
            p for p in primes_in_class(n + 1, cls) if n % (p - 1) == 0
        ]
        unfactored = tuple(r for r in (c_rest, d_rest) if r > 1)
        matches = (
            not unfactored
            and sorted(c_primes) == predicted
            and sorted(d_primes) == predicted
        )
        rows.append(
            ProbeRow(
                n,
                tuple(sorted(c_primes)),
                tuple(sorted(d_primes)),
                tuple(predicted),
                matches,
                unfactored,
            )
        )
    return ProbeReport(str(c), c.is_experimental, rows)
