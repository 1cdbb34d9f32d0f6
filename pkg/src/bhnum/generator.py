"""Laurent expansions of x(u), y(u) and the number tables read off them.

x(u) and y(u) are the functional inverses attached to a curve: u(t) is the
normalized Abelian integral from curves.u_series, t(u) its compositional
inverse, and x, y are the local expansions x = t**-a, y = sigma * t**-b *
(1 - t**w)**(1/a) pushed through t(u).  Their Laurent coefficients carry
the generalized Bernoulli-Hurwitz numbers:

    C_N = N * (N - a)! * [u**(N - a)] x(u)
    D_N = N * (N - b)! * [u**(N - b)] y(u)

for N a positive multiple of the weight w.  The (N - a)! here is the
factorial matching the actual Laurent slot of weight N; see
extract_numbers.

Two independent expansion routes are provided.  expand_by_reversion runs
the definition above.  expand_by_ode never inverts a series: for
hyperelliptic models (a = 2) the curve equation forces

    A' ** 2 = 4 * (A**(2g+1) - c)        c = 1 (cyclo) or A (minusx)

on A = x(u) up to the factor A**(2g-2), and the coefficients of A solve a
linear recurrence degree by degree.  Agreement of the two routes is the
main internal cross-check.

Coefficient support is sparse: x lives on exponents congruent to -a mod w
and y on -b mod w.  That symmetry is asserted on every expansion, never
assumed by the arithmetic.
"""

from __future__ import annotations

import json
import logging
import os
import tempfile
from dataclasses import dataclass, field
from fractions import Fraction
from math import factorial
from pathlib import Path

from .curves import CurveSpec, parse_curve, u_series, xy_of_t
from .series import TruncSeries, binomial_series, conv_coeff, revert

__all__ = [
    "BHTable",
    "CacheError",
    "CrossCheckError",
    "Expansion",
    "ExpansionError",
    "UnsupportedMethodError",
    "bernoulli",
    "expand_by_ode",
    "expand_by_reversion",
    "expand_checked",
    "extract_numbers",
    "hurwitz",
]

logger = logging.getLogger("bhnum.generator")

TABLE_FORMAT = "bhnum.table"
TABLE_VERSION = 1


class ExpansionError(ValueError):
    """An expansion violated a structural invariant."""


class UnsupportedMethodError(ValueError):
    """The requested expansion method does not apply to this curve."""


class CrossCheckError(RuntimeError):
    """Two independent computation routes disagreed."""


class CacheError(ValueError):
    """A table file is malformed or from an incompatible writer."""


@dataclass(frozen=True, slots=True)
class Expansion:
    """x(u), y(u) for a curve, each exact at least through u**order.

    Construction re-checks the leading terms and the support pattern, so a
    tampered or buggy expansion cannot flow further.
    """

    curve: CurveSpec
    x_series: TruncSeries
    y_series: TruncSeries
    method: str
    order: int

    def __post_init__(self) -> None:
        c = self.curve
        w = c.weight
        for name, s, pole, lead in (
            ("x", self.x_series, c.a, Fraction(1)),
            ("y", self.y_series, c.b, Fraction(c.y_leading_sign)),
        ):
            if s.trunc_order < self.order:
                raise ExpansionError(
                    f"{name} series is only exact through u^{s.trunc_order}, "
                    f"claimed order {self.order}"
                )
            if s.base_exponent != -pole or s.coeff(-pole) != lead:
                raise ExpansionError(
                    f"{name} series must start with {lead} * u^{-pole}"
                )
            for e, _ in s.terms():
                if (e + pole) % w != 0:
                    raise ExpansionError(
                        f"{name} series has a term at u^{e}, breaking the "
                        f"support pattern {-pole} mod {w}"
                    )


def expand_by_reversion(curve: CurveSpec, order: int) -> Expansion:
    """Expand x(u), y(u) by inverting the Abelian integral directly."""
    if order < 1:
        raise ExpansionError("expansion order must be at least 1")
    a, b, w = curve.a, curve.b, curve.weight
    depth = order + max(a, b) + 1
    t_of_u = revert(u_series(curve, depth))
    t_inv = t_of_u.invert()
    x = t_inv.power(a).truncate(order)
    unit = binomial_series(w, Fraction(1, a), order + b).compose(t_of_u)
    y = (t_inv.power(b) * unit).scale(curve.y_leading_sign).truncate(order)
    return Expansion(curve, x, y, "reversion", order)


def _ode_fallback_coeff(curve: CurveSpec, exponent: int) -> Fraction:
    exp = expand_by_reversion(curve, exponent)
    return exp.x_series.coeff(exponent)


def expand_by_ode(curve: CurveSpec, order: int) -> Expansion:
    """Expand x(u), y(u) through the first-order ODE the curve imposes.

    Writing A for x(u) and g for the genus, A**(2g-2) * A'**2 -
    4*A**(2g+1) + 4*c vanishes identically (c = 1 for cyclo, c = A for
    minusx).  Each unknown coefficient of A enters the residual linearly
    at one degree, with a computed (never assumed) linear response; a
    vanishing response with vanishing residual falls back to the reversion
    value for that single coefficient, and an inconsistent equation
    raises.  The final residual is checked to vanish through the full
    provable window.
    """
    if curve.a != 2:
        raise UnsupportedMethodError(
            "the ODE route needs a hyperelliptic model (a = 2), got "
            f"{curve}"
        )
    if order < 1:
        raise ExpansionError("expansion order must be at least 1")
    g = curve.genus_if_hyperelliptic
    w = curve.weight
    is_minusx = curve.family == "minusx"
    depth = order + 2 * g - 1
    terms: dict[int, Fraction] = {-2: Fraction(1)}

    def residual(a_ser: TruncSeries) -> TruncSeries:
        a1 = a_ser.derive()
        lead = a1 * a1
        if g >= 2:
            # Skipped for g = 1 rather than multiplied by a truncated 1,
            # which would needlessly narrow the window.
            lead = a_ser.power(2 * g - 2) * lead
        r = lead - a_ser.power(2 * g + 1).scale(4)
        if is_minusx:
            return r + a_ser.scale(4)
        if r.trunc_order < 0:
            return r  # the +4 constant sits above the window
        return r + 4

    e = w - 2
    while e <= depth:
        a_ser = TruncSeries.from_terms(terms, depth)
        a1 = a_ser.derive()
        m = e - 4 * g
        rho = residual(a_ser).coeff(m)
        # Response of the residual slot m to a unit bump of the coefficient
        # at u**e, assembled from single convolution slots (m - e = -4g).
        if g == 1:
            lam = 2 * e * a1.coeff(m - e + 1) - 12 * conv_coeff(a_ser, a_ser, m - e)
        else:
            a2 = a_ser * a_ser
            p1 = a2 if g == 2 else a_ser.power(2 * g - 2)
            podd = a_ser if g == 2 else a_ser.power(2 * g - 3)
            lam = 2 * e * conv_coeff(p1, a1, m - e + 1)
            lam += (2 * g - 2) * conv_coeff(podd, a1 * a1, m - e)
            lam -= 4 * (2 * g + 1) * conv_coeff(p1, a2, m - e)
        if is_minusx and m == e:
            lam += 4
        if lam == 0:
            if rho != 0:
                raise ExpansionError(
                    f"degree-{e} recurrence is inconsistent (residual {rho})"
                )
            logger.warning(
                "degenerate recurrence at u^%d for %s; taking the reversion "
                "value for this coefficient",
                e,
                curve,
            )
            c = _ode_fallback_coeff(curve, e)
        else:
            c = -rho / lam
        if c:
            terms[e] = c
        e += w

    a_ser = TruncSeries.from_terms(terms, depth)
    final = residual(a_ser)
    if not final.is_zero():
        raise ExpansionError(
            f"ODE residual does not vanish through u^{final.trunc_order}: "
            f"{final}"
        )
    y = a_ser.derive()
    if g >= 2:
        y = a_ser.power(g - 1) * y
    y = y.scale(Fraction(1, 2))
    return Expansion(curve, a_ser, y, "ode", order)


def expand_checked(curve: CurveSpec, order: int) -> Expansion:
    """Expansion cross-checked between the two routes where both apply.

    Hyperelliptic curves run both reversion and the ODE recurrence and
    must agree coefficient for coefficient; any discrepancy raises
    CrossCheckError.  Other curves get the reversion route alone.
    """
    by_rev = expand_by_reversion(curve, order)
    if curve.a != 2:
        return by_rev
    by_ode = expand_by_ode(curve, order)
    if not by_rev.x_series.agrees_through(by_ode.x_series):
        raise CrossCheckError(f"x(u) differs between reversion and ODE for {curve}")
    if not by_rev.y_series.agrees_through(by_ode.y_series):
        raise CrossCheckError(f"y(u) differs between reversion and ODE for {curve}")
    return Expansion(
        curve, by_rev.x_series, by_rev.y_series, "reversion+ode", order
    )


# -- number tables -----------------------------------------------------------


@dataclass
class BHTable:
    """Exact table of (C_N, D_N) for N = w, 2w, ... up to order - 2.

    rows maps the weight N to the pair (C_N, D_N).  The order field
    records the expansion order the table was read from, which bounds the
    available weights; treat instances as immutable.
    """

    curve: CurveSpec
    order: int
    method: str
    rows: dict[int, tuple[Fraction, Fraction]] = field(default_factory=dict)

    def weights(self) -> list[int]:
        return sorted(self.rows)

    def c(self, weight: int) -> Fraction:
        return self.rows[weight][0]

    def d(self, weight: int) -> Fraction:
        return self.rows[weight][1]

    def c_over_n(self, weight: int) -> Fraction:
        return self.rows[weight][0] / weight

    def d_over_n(self, weight: int) -> Fraction:
        return self.rows[weight][1] / weight

    def restrict(self, max_weight: int) -> "BHTable":
        """Sub-table of the weights <= max_weight."""
        if max_weight > self.order - 2:
            raise ValueError(
                f"table only reaches weight {self.order - 2}, "
                f"cannot restrict to {max_weight}"
            )
        rows = {n: cd for n, cd in self.rows.items() if n <= max_weight}
        return BHTable(self.curve, max_weight + 2, self.method, rows)

    def to_json_dict(self) -> dict:
        return {
            "format": TABLE_FORMAT,
            "version": TABLE_VERSION,
            "curve": str(self.curve),
            "weight_step": self.curve.weight,
            "order": self.order,
            "method": self.method,
            "rows": [
                {
                    "weight": n,
                    "c": [str(self.rows[n][0].numerator), str(self.rows[n][0].denominator)],
                    "d": [str(self.rows[n][1].numerator), str(self.rows[n][1].denominator)],
                }
                for n in self.weights()
            ],
        }

    def dumps(self) -> str:
        return json.dumps(self.to_json_dict(), indent=2, sort_keys=True) + "\n"

    @classmethod
    def from_json_dict(cls, doc: dict) -> "BHTable":
        if not isinstance(doc, dict) or doc.get("format") != TABLE_FORMAT:
            raise CacheError("not a number-table document")
        if doc.get("version") != TABLE_VERSION:
            raise CacheError(f"unsupported table version {doc.get('version')!r}")
        try:
            curve = parse_curve(doc["curve"])
            order = doc["order"]
            method = doc["method"]
            rows = {}
            for row in doc["rows"]:
                n = row["weight"]
                cn, cd = (int(s) for s in row["c"])
                dn, dd = (int(s) for s in row["d"])
                rows[n] = (Fraction(cn, cd), Fraction(dn, dd))
        except (KeyError, TypeError, ValueError) as exc:
            raise CacheError(f"malformed table document: {exc}") from None
        table = cls(curve, order, method, rows)
        w = curve.weight
        expected = list(range(w, order - 1, w))
        if table.weights() != expected:
            raise CacheError(
                "table rows are not the full ladder of weight multiples "
                f"up to {order - 2}"
            )
        return table

    @classmethod
    def loads(cls, text: str) -> "BHTable":
        try:
            doc = json.loads(text)
        except json.JSONDecodeError as exc:
            raise CacheError(f"table file is not valid JSON: {exc}") from None
        return cls.from_json_dict(doc)

    def write(self, path: str | Path) -> None:
        """Atomic whole-file replace; a reader never sees a partial table."""
        path = Path(path)
        path.parent.mkdir(parents=True, exist_ok=True)
        fd, tmp = tempfile.mkstemp(dir=path.parent, suffix=".tmp")
        try:
            with os.fdopen(fd, "w") as fh:
                fh.write(self.dumps())
            os.replace(tmp, path)
        except BaseException:
            os.unlink(tmp)
            raise

    @classmethod
    def read(cls, path: str | Path) -> "BHTable":
        return cls.loads(Path(path).read_text())


def extract_numbers(expansion: Expansion) -> BHTable:
    """Read the number table off an expansion.

    The weight-N numbers sit in the Laurent slots u**(N-a) of x and
    u**(N-b) of y; the normalization multiplies the slot coefficient by
    N * (N - a)! resp. N * (N - b)!, the factorial belonging to the slot
    that actually carries the coefficient.  Rows run over multiples of w
    up to order - 2, keeping a safety margin inside the exactness window.
    """
    c = expansion.curve
    w = c.weight
    rows: dict[int, tuple[Fraction, Fraction]] = {}
    n = w
    while n <= expansion.order - 2:
        cn = n * factorial(n - c.a) * expansion.x_series.coeff(n - c.a)
        dn = n * factorial(n - c.b) * expansion.y_series.coeff(n - c.b)
        rows[n] = (cn, dn)
        n += w
    return BHTable(c, expansion.order, expansion.method, rows)


# -- classical anchors ---------------------------------------------------------


def bernoulli(count: int) -> list[Fraction]:
    """[B_2, B_4, ..., B_{2*count}] from the expansion of 1/sin(u)**2.

    1/sin(u)**2 = 1/u**2 + sum (-1)**(n+1) * 2**(2n) * B_{2n} / (2n) *
    u**(2n-2) / (2n-2)! is the genus-zero instance of the x(u) machinery
    (the curve y**2 = x**2 - 1 with its integral u = arcsin-type); the
    list doubles as an independent oracle target for the series engine.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if count == 0:
        return []
    order = 2 * count + 1
    sin_u = TruncSeries.from_terms(
        {
            k: Fraction((-1) ** (k // 2), factorial(k))
            for k in range(1, order + 1, 2)
        },
        order,
    )
    inv_sq = (sin_u * sin_u).invert()
    out = []
    for n in range(1, count + 1):
        slot = inv_sq.coeff(2 * n - 2)
        out.append(
            Fraction((-1) ** (n + 1) * 2 * n * factorial(2 * n - 2), 2 ** (2 * n))
            * slot
        )
    return out


def hurwitz(count: int) -> list[Fraction]:
    """[H_4, H_8, ..., H_{4*count}], the lemniscatic analogue of bernoulli().

    H_{4n} = C_{4n} / 2**(4n) read off the y**2 = x**3 - x table, whose
    x(u) is the Weierstrass pe-function with square period lattice.
    """
    if count < 0:
        raise ValueError("count must be non-negative")
    if count == 0:
        return []
    table = extract_numbers(expand_by_reversion(CurveSpec.minus_x(1), 4 * count + 2))
    return [table.c(4 * n) / 2 ** (4 * n) for n in range(1, count + 1)]
