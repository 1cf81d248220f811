"""Shared numeric thresholds and resource budgets."""

from __future__ import annotations

from dataclasses import dataclass, field


@dataclass(frozen=True)
class Budget:
    """Limits on full multi-index enumeration."""

    max_dimension: int = 4
    max_elements: int = 10**7


@dataclass(frozen=True)
class Thresholds:
    """Verdict thresholds for big-O ratio tests and rate fits.

    ``trend_slope`` bounds the fitted log-slope of a ratio sequence taken in
    the asymptotic direction; ``trend_fraction`` selects the tail portion of
    the grid used for that fit.
    """

    trend_slope: float = 0.05
    trend_fraction: float = 0.5
    slope_band: float = 0.05
    ratio_band: float = 0.1
    identity_tol: float = 1e-11
    inequality_tol: float = 1e-12

    def as_dict(self) -> dict:
        return {
            "trend_slope": self.trend_slope,
            "trend_fraction": self.trend_fraction,
            "slope_band": self.slope_band,
            "ratio_band": self.ratio_band,
        }


DEFAULT_BUDGET = Budget()
DEFAULT_THRESHOLDS = Thresholds()


@dataclass(frozen=True)
class Grids:
    """Dyadic default grids: rho_j = 1 - 2**-j, n_j = 2**j, h_j = 2**-j."""

    rho_exponents: tuple[int, int] = (1, 14)
    n_exponents: tuple[int, int] = (2, 16)
    h_exponents: tuple[int, int] = (1, 20)
    extra: dict = field(default_factory=dict)

    def rho_grid(self) -> list[float]:
        lo, hi = self.rho_exponents
        return [1.0 - 2.0**-j for j in range(lo, hi + 1)]

    def n_grid(self) -> list[int]:
        lo, hi = self.n_exponents
        return [2**j for j in range(lo, hi + 1)]

    def h_grid(self) -> list[float]:
        lo, hi = self.h_exponents
        return [2.0**-j for j in range(lo, hi + 1)]


DEFAULT_GRIDS = Grids()
