"""Closed-form genus bounds, evaluated exactly with :class:`fractions.Fraction`."""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction
from math import factorial

PLANAR_CASE = "planar (small instance, genus 0)"


@dataclass(frozen=True)
class BoundsReport:
    family: str
    m: int
    n: int
    lower: Fraction
    upper: Fraction
    formula_case: str
    old_upper: Fraction | None = None
    comparison: int | None = None

    @property
    def lower_bound(self) -> int:
        """Genus is an integer, so the lower bound rounds up."""
        return math.ceil(self.lower)

    @property
    def upper_bound(self) -> int:
        return math.floor(self.upper)

    @property
    def old_upper_bound(self) -> int | None:
        return None if self.old_upper is None else math.floor(self.old_upper)

    def to_json(self) -> dict:
        out = {
            "family": self.family,
            "m": self.m,
            "n": self.n,
            "lower": self.lower_bound,
            "upper": self.upper_bound,
            "lower_exact": [self.lower.numerator, self.lower.denominator],
            "upper_exact": [self.upper.numerator, self.upper.denominator],
            "formula_case": self.formula_case,
        }
        if self.old_upper is not None:
            out["old_upper"] = self.old_upper_bound
            out["old_upper_exact"] = [self.old_upper.numerator, self.old_upper.denominator]
        if self.comparison is not None:
            out["embedding_genus_witness"] = self.comparison
        return out


def girth_lower_bound(v: int, e: int, girth: int) -> Fraction:
    """``(e (1 - 2/girth) - v) / 2 + 1`` for a connected graph of given girth."""
    if girth < 3:
        raise ValueError("girth must be at least 3")
    return Fraction(1, 2) * (e * (1 - Fraction(2, girth)) - v) + 1


def _planar(family, m, n):
    return BoundsReport(family, m, n, Fraction(0), Fraction(0), PLANAR_CASE)


def pn_bounds(n: int) -> BoundsReport:
    """Pancake graph P_n: previous lower/upper bounds and the improved upper bound."""
    if n <= 3:
        return _planar("pn", 1, n)
    f = factorial(n)
    lower = f * Fraction(n - 4, 6) + 1
    upper = f * Fraction(3 * n - 10, 12) + 1
    old = f * Fraction(n - 3, 4) - Fraction(n, 2) + 1
    return BoundsReport("pn", 1, n, lower, upper, "n > 3", old_upper=old)


def bpn_bounds(n: int) -> BoundsReport:
    if n <= 2:
        return _planar("bpn", 2, n)
    f = factorial(n)
    scale = Fraction(2) ** (n - 4)
    lower = scale * (3 * n - 8) * f + 1
    upper = scale * (4 * n - 9) * f + 1
    return BoundsReport("bpn", 2, n, lower, upper, "n > 2")


def pmn_lower(m: int, n: int) -> tuple[Fraction, str]:
    f = factorial(n)
    if m in (3, 4, 5):
        return Fraction(1, 2) * m ** (n - 1) * ((m - 2) * n - m) * f + 1, "girth m (m in {3,4,5})"
    return Fraction(1, 6) * m**n * (2 * n - 3) * f + 1, "girth 6 (m >= 6)"


def pmn_bounds(m: int, n: int) -> BoundsReport:
    if m < 3:
        raise ValueError("P_m(n) bounds need m >= 3")
    if n == 1:
        return _planar("pmn", m, n)
    lower, lower_case = pmn_lower(m, n)
    f = factorial(n)
    if m % 2 == 0:
        upper = Fraction(1, 2) * m ** (n - 1) * (m * n - m - n) * f + 1
        case = "m even"
    else:
        upper = Fraction(1, 2) * m ** (n - 1) * (2 * m * n - 2 * m - n - 1) * f + 1
        case = "m odd"
    return BoundsReport("pmn", m, n, lower, upper, f"{lower_case}; {case}")


def pm2_upper(m: int) -> BoundsReport:
    """Sharper bound for P_m(2), split by the parity of m and whether 3 | m."""
    if m < 3:
        raise ValueError("P_m(2) bounds need m >= 3")
    odd, triple = m % 2 == 1, m % 3 == 0
    coeff = {
        (True, True): Fraction(3),
        (True, False): Fraction(2),
        (False, True): Fraction(7, 2),
        (False, False): Fraction(5, 2),
    }[(odd, triple)]
    upper = m * m - coeff * m + 1
    if upper.denominator != 1:
        raise ArithmeticError(f"non-integer P_m(2) bound at m={m}")
    lower, lower_case = pmn_lower(m, 2)
    case = f"{lower_case}; m {'odd' if odd else 'even'}, {'3 | m' if triple else '3 does not divide m'}"
    return BoundsReport("pmn", m, 2, lower, upper, case)


def family_bounds(family: str, m: int | None = None, n: int = 1) -> BoundsReport:
    """Tightest available bounds for a family instance."""
    if family == "pn":
        return pn_bounds(n)
    if family == "bpn":
        return bpn_bounds(n)
    if family == "pmn":
        if n == 2:
            return pm2_upper(m)
        return pmn_bounds(m, n)
    raise ValueError(f"unknown family {family!r}")


TABLE_COLUMNS = {
    1: ("n", "lower bound", "new upper bound", "floor(old upper bound)"),
    2: ("n", "lower bound", "upper bound"),
    3: ("m", "n", "lower bound", "upper bound"),
    4: ("m", "ceil(lower bound)", "upper bound"),
}
TABLE3_PARAMS = [(m, n) for n in (3, 4, 5) for m in (3, 4, 5, 6)]


def make_table(which: int) -> list[tuple[int, ...]]:
    """Rows of the published bound tables, rounded as printed."""
    if which == 1:
        return [
            (n, r.lower_bound, r.upper_bound, r.old_upper_bound)
            for n, r in ((n, pn_bounds(n)) for n in range(4, 13))
        ]
    if which == 2:
        return [(n, r.lower_bound, r.upper_bound) for n, r in ((n, bpn_bounds(n)) for n in range(3, 13))]
    if which == 3:
        return [(m, n, r.lower_bound, r.upper_bound) for m, n in TABLE3_PARAMS for r in [pmn_bounds(m, n)]]
    if which == 4:
        return [(m, r.lower_bound, r.upper_bound) for m, r in ((m, pm2_upper(m)) for m in range(3, 13))]
    raise ValueError(f"no table {which}")


def format_table(which: int, fmt: str = "json"):
    rows = make_table(which)
    cols = TABLE_COLUMNS[which]
    if fmt == "json":
        return {"table": which, "columns": list(cols), "rows": [list(r) for r in rows]}
    if fmt == "csv":
        lines = [",".join(cols)] + [",".join(map(str, r)) for r in rows]
        return "\n".join(lines) + "\n"
    if fmt == "markdown":
        lines = ["| " + " | ".join(cols) + " |", "|" + "---|" * len(cols)]
        lines += ["| " + " | ".join(map(str, r)) + " |" for r in rows]
        return "\n".join(lines) + "\n"
    raise ValueError(f"unknown table format {fmt!r}")
