"""Certified tail bounds and interval values.

A :class:`TailMajorant` is a pointwise bound ``a_nu**p <= coef * nu**exponent
* ratio**nu`` valid for every block order beyond a profile's cutoff. Diagonal
operators map majorants to majorants, so derivative and Poisson profiles keep
certified tails without any family-specific analysis.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

# explicit summation is cheaper than worrying about loose bounds below this
_EXPLICIT_TERMS = 2_000_000


@dataclass(frozen=True)
class Interval:
    """Closed interval ``[lower, upper]``; ``upper = inf`` marks an uncertified tail."""

    lower: float
    upper: float

    def __post_init__(self):
        if not (self.lower <= self.upper or math.isnan(self.upper)):
            raise ValueError(f"empty interval [{self.lower}, {self.upper}]")

    @property
    def certified(self) -> bool:
        return math.isfinite(self.upper)

    @property
    def width(self) -> float:
        return self.upper - self.lower

    def __contains__(self, x: float) -> bool:
        return self.lower <= x <= self.upper

    def scaled(self, c: float) -> "Interval":
        c = abs(c)
        return Interval(self.lower * c, self.upper * c)

    @classmethod
    def from_power_sums(cls, head: float, tail: float, p: float) -> "Interval":
        """Interval for ``(head + tail)**(1/p)`` with ``tail`` an upper-only term."""
        lo = head ** (1.0 / p)
        if not math.isfinite(tail):
            return cls(lo, math.inf)
        hi = (head + tail) ** (1.0 / p)
        return cls(lo, max(lo, hi))


@dataclass(frozen=True)
class TailMajorant:
    """Bound ``coef * nu**exponent * ratio**nu`` on ``a_nu**p`` for large ``nu``."""

    coef: float
    exponent: float
    ratio: float = 1.0

    def __post_init__(self):
        if self.coef < 0 or not 0.0 <= self.ratio <= 1.0:
            raise ValueError(f"invalid majorant {self}")

    def times_power(self, e: float) -> "TailMajorant":
        return TailMajorant(self.coef, self.exponent + e, self.ratio)

    def times_geometric(self, x: float) -> "TailMajorant":
        return TailMajorant(self.coef, self.exponent, self.ratio * x)

    def scaled(self, c: float) -> "TailMajorant":
        return TailMajorant(self.coef * c, self.exponent, self.ratio)

    def log_term(self, nu):
        nu = np.asarray(nu, dtype=float)
        with np.errstate(divide="ignore"):
            lr = math.log(self.ratio) if self.ratio > 0 else -math.inf
            return math.log(self.coef) + self.exponent * np.log(nu) + nu * lr

    def term(self, nu) -> float:
        if self.coef == 0:
            return 0.0
        return float(np.exp(self.log_term(nu)))

    def sum(self, start: int, stop: float = math.inf) -> float:
        """Upper bound for the sum of the majorant over ``start <= nu <= stop``."""
        start = max(int(start), 1)
        if stop < start or self.coef == 0.0 or self.ratio == 0.0:
            return 0.0
        e, x = self.exponent, self.ratio
        if x == 1.0:
            return self.coef * _power_sum_bound(e, start, stop)
        # t -> t**e x**t is unimodal with peak at e / -log(x)
        peak = e / -math.log(x) if e > 0 else 0.0
        head_end = max(start - 1, math.ceil(2.0 * peak))
        if stop - start < _EXPLICIT_TERMS:
            head_end = stop
        head_end = min(head_end, stop)
        total = 0.0
        if head_end >= start:
            count = head_end - start + 1
            if count <= _EXPLICIT_TERMS:
                nu = np.arange(start, head_end + 1, dtype=float)
                total += math.fsum(np.exp(self.log_term(nu)))
            else:
                total += count * self.term(max(peak, start))
        first = head_end + 1
        if first > stop:
            return total
        theta = x * (1.0 + 1.0 / first) ** max(e, 0.0)
        if theta >= 1.0:
            return math.inf
        return total + self.term(first) / (1.0 - theta)


def _power_sum_bound(e: float, start: int, stop: float) -> float:
    """Upper bound for ``sum_{nu=start}^{stop} nu**e`` by integral comparison."""
    if math.isinf(stop):
        if e >= -1.0:
            return math.inf
        return start**e + start ** (e + 1.0) / (-e - 1.0)
    stop = int(stop)
    if stop - start < _EXPLICIT_TERMS:
        nu = np.arange(start, stop + 1, dtype=float)
        return math.fsum(nu**e)
    if e == -1.0:
        integral = math.log(stop / start)
    else:
        integral = (stop ** (e + 1.0) - start ** (e + 1.0)) / (e + 1.0)
    edge = start**e if e <= 0 else float(stop) ** e
    return edge + integral
