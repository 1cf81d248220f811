"""Numerical checks of the equivalence statements between approximation rates.

Each experiment evaluates both sides of an O(.) statement on a parameter grid
and turns them into :class:`RateReport` objects: the value intervals, the
omega-based majorant, their ratios, a fitted log-log slope and a verdict.
Parameters are always the natural asymptotic variable: ``n`` for Fejer-type
statements, ``t = 1 - rho`` for Abel-Poisson-type statements and ``h`` for
shift statements.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence, Union

import numpy as np

from . import calculus, summation
from .calculus import PsiWeight
from .config import DEFAULT_GRIDS, DEFAULT_THRESHOLDS, Thresholds
from .moduli import Modulus, check_basic_conditions, check_condition_B, membership_ratios, ratio_verdict
from .spectrum import BlockProfile, Spectrum, profile_of, sp_norm
from .summation import SummationMethod
from .tails import Interval


class PreconditionError(ValueError):
    """The modulus or function does not meet an experiment's hypotheses."""


@dataclass(frozen=True)
class RateReport:
    quantity_name: str
    parameters: list
    values: list
    bound_values: list
    ratios: list
    fitted_slope: float | None
    trend_slope: float
    verdict: str
    direction: str = "zero"
    thresholds: dict = field(default_factory=dict)
    full_grid_slope: float | None = None

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"

    def rows(self):
        for t, v, b, q in zip(self.parameters, self.values, self.bound_values, self.ratios):
            yield t, v.lower, v.upper, b, q

    def to_dict(self) -> dict:
        return {
            "statement": self.quantity_name,
            "verdict": self.verdict,
            "fitted_slope": self.fitted_slope,
            "full_grid_slope": self.full_grid_slope,
            "trend_slope": self.trend_slope,
            "direction": self.direction,
            "thresholds": self.thresholds,
            "points": [
                {"parameter": t, "value_low": lo, "value_high": hi, "bound": b, "ratio": q}
                for t, lo, hi, b, q in self.rows()
            ],
        }


@dataclass(frozen=True)
class TheoremOutcome:
    statement_ids: list
    reports: dict
    equivalence_verdict: dict
    y_supported: bool = False

    @property
    def passed(self) -> bool:
        return all(r.passed for r in self.reports.values())


def fit_slope(parameters: Sequence[float], values: Sequence[float], window: float = 1.0, direction: str = "zero") -> float | None:
    """Least-squares slope of ``log value`` against ``log parameter``.

    Only the asymptotic ``window`` fraction of the grid enters the fit (the
    smallest parameters for ``direction="zero"``, the largest otherwise).
    """
    x = np.asarray(parameters, float)
    y = np.asarray(values, float)
    order = np.argsort(-x if direction == "zero" else x)
    keep = order[int(len(x) * (1.0 - window)) :]
    x, y = x[keep], y[keep]
    live = (y > 0) & np.isfinite(y)
    if live.sum() < 4:
        return None
    return float(np.polyfit(np.log(x[live]), np.log(y[live]), 1)[0])


def big_O_ratio_test(
    values: Sequence[tuple[float, Interval]],
    bound: Union[Callable[[float], float], Sequence[float]],
    name: str = "quantity",
    direction: str = "zero",
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> RateReport:
    """Evidence for ``value = O(bound)`` as the parameter tends to 0 or infinity.

    The verdict uses the ratio trend over the asymptotic end of the grid; the
    reported ``fitted_slope`` is the rate of ``value.upper`` itself.
    """
    if len(values) < 4:
        raise ValueError("need at least 4 grid points")
    if direction not in ("zero", "infinity"):
        raise ValueError("direction must be 'zero' or 'infinity'")
    params = [float(t) for t, _ in values]
    intervals = [v for _, v in values]
    bounds = [float(b) for b in bound] if not callable(bound) else [float(bound(t)) for t in params]
    if min(bounds) <= 0:
        raise ValueError("bound must be positive on the grid")
    ratios = [v.upper / b for v, b in zip(intervals, bounds)]
    t = np.asarray(params)
    u = 1.0 / t if direction == "zero" else t
    verdict, trend = ratio_verdict(u, np.asarray(ratios), thresholds)
    uppers = [v.upper for v in intervals]
    return RateReport(
        name,
        params,
        intervals,
        bounds,
        ratios,
        fit_slope(params, uppers, thresholds.trend_fraction, direction),
        trend,
        verdict,
        direction,
        thresholds.as_dict(),
        fit_slope(params, uppers),
    )


def _require_modulus(omega: Modulus) -> None:
    basic = check_basic_conditions(omega)
    if basic.verdict == "fail":
        raise PreconditionError(f"{omega.name} violates conditions 1)-4): {basic.details['checks']}")
    cond_b = check_condition_B(omega)
    if cond_b.verdict != "pass":
        raise PreconditionError(f"{omega.name} fails condition B (trend {cond_b.details['trend_slope']:.3f})")


def _membership_report(g: Spectrum, omega: Modulus, p: float, h_grid, name: str, thresholds) -> RateReport:
    norms, _ = membership_ratios(g, omega, p, h_grid)
    return big_O_ratio_test(list(zip(h_grid, norms)), omega, name, "zero", thresholds)


def _equivalences(reports: dict, y_supported: bool) -> dict:
    v1, v2, v3 = (reports[k].passed for k in ("statement1", "statement2", "statement3"))
    out = {
        "1<=>2": "pass" if v1 == v2 else "fail",
        "(1 or 2)=>3": "pass" if not (v1 or v2) or v3 else "fail",
    }
    if y_supported:
        out["3=>1"] = "pass" if not v3 or v1 else "fail"
    return out


def _grids(rho_grid, h_grid):
    rho_grid = list(DEFAULT_GRIDS.rho_grid() if rho_grid is None else rho_grid)
    h_grid = list(DEFAULT_GRIDS.h_grid() if h_grid is None else h_grid)
    if any(b <= a for a, b in zip(rho_grid, rho_grid[1:])):
        raise ValueError("rho_grid must increase towards 1")
    return rho_grid, h_grid


def proposition1_experiment(
    f: Spectrum,
    p: float,
    omega: Modulus,
    n_grid: Sequence[int] | None = None,
    h_grid: Sequence[float] | None = None,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> TheoremOutcome:
    """Partial sums of ``f_[1]`` against ``n omega(1/n)`` and Fejer error against ``omega(1/n)``."""
    _require_modulus(omega)
    n_grid = list(DEFAULT_GRIDS.n_grid() if n_grid is None else n_grid)
    h_grid = list(DEFAULT_GRIDS.h_grid() if h_grid is None else h_grid)
    prof = profile_of(f, p)
    derivative = calculus.psi_derivative(prof, PsiWeight.falling_factorial(1))
    partial = [(n, sp_norm(summation.apply(SummationMethod.partial(n), derivative))) for n in n_grid]
    fejer = [(n, summation.approximation_error(SummationMethod.fejer(n), prof)) for n in n_grid]
    reports = {
        "statement1": big_O_ratio_test(partial, [n * omega(1.0 / n) for n in n_grid], "statement1", "infinity", thresholds),
        "statement2": big_O_ratio_test(fejer, [omega(1.0 / n) for n in n_grid], "statement2", "infinity", thresholds),
        "statement3": _membership_report(f, omega, p, h_grid, "statement3", thresholds),
    }
    return TheoremOutcome(
        ["statement1", "statement2", "statement3"], reports, _equivalences(reports, f.y_supported), f.y_supported
    )


def theorem1_experiment(
    f: Spectrum,
    p: float,
    r: int,
    omega: Modulus,
    rho_grid: Sequence[float] | None = None,
    h_grid: Sequence[float] | None = None,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> TheoremOutcome:
    """Abel-Poisson-Taylor error, Poisson integral of ``f_[r]`` and smoothness of ``f_[r-1]``."""
    if r < 1:
        raise ValueError("r must be >= 1")
    _require_modulus(omega)
    rho_grid, h_grid = _grids(rho_grid, h_grid)
    prof = profile_of(f, p)
    t = [1.0 - rho for rho in rho_grid]
    errors = [summation.approximation_error(SummationMethod.taylor(rho, r), prof) for rho in rho_grid]
    poisson = [calculus.poisson_of_bracket_derivative_norm(prof, calculus.PoissonParams(rho, r)) for rho in rho_grid]
    lower = calculus.psi_derivative(f, PsiWeight.falling_factorial(r - 1))
    reports = {
        "statement1": big_O_ratio_test(
            list(zip(t, errors)), [x ** (r - 1) * omega(x) for x in t], "statement1", "zero", thresholds
        ),
        "statement2": big_O_ratio_test(
            list(zip(t, poisson)), [omega(x) / x for x in t], "statement2", "zero", thresholds
        ),
        "statement3": _membership_report(lower, omega, p, h_grid, "statement3", thresholds),
    }
    return TheoremOutcome(
        ["statement1", "statement2", "statement3"], reports, _equivalences(reports, f.y_supported), f.y_supported
    )


def theorem2_experiment(
    f: Spectrum,
    p: float,
    s: float,
    omega: Modulus,
    rho_grid: Sequence[float] | None = None,
    h_grid: Sequence[float] | None = None,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> TheoremOutcome:
    """Generalised Abel-Poisson error, Poisson integral of ``f^(s)`` and smoothness of ``f^(s-1)``."""
    if s < 1:
        raise ValueError("s must be >= 1")
    _require_modulus(omega)
    rho_grid, h_grid = _grids(rho_grid, h_grid)
    prof = profile_of(f, p)
    t = [1.0 - rho for rho in rho_grid]
    errors = [summation.approximation_error(SummationMethod.abel_poisson(rho, s), prof) for rho in rho_grid]
    poisson = [calculus.poisson_norm_of_derivative(prof, PsiWeight.radial_power(s), rho) for rho in rho_grid]
    lower = calculus.psi_derivative(f, PsiWeight.radial_power(s - 1))
    reports = {
        "statement1": big_O_ratio_test(list(zip(t, errors)), [omega(x) for x in t], "statement1", "zero", thresholds),
        "statement2": big_O_ratio_test(
            list(zip(t, poisson)), [omega(x) / x for x in t], "statement2", "zero", thresholds
        ),
        "statement3": _membership_report(lower, omega, p, h_grid, "statement3", thresholds),
    }
    return TheoremOutcome(
        ["statement1", "statement2", "statement3"], reports, _equivalences(reports, f.y_supported), f.y_supported
    )


def equivalence7_experiment(
    f: Spectrum | BlockProfile,
    p: float,
    s: float,
    rho_grid: Sequence[float] | None = None,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
    tail_points: int = 3,
) -> RateReport:
    """Ratio of ``||f - P_{rho,s} f||**p`` to ``||f^(s-1) - P_{rho,1} f^(s-1)||**p``.

    Passes when the last ``tail_points`` ratios lie within ``1 +- ratio_band``
    and the distance to 1 shrinks along the grid's asymptotic half.
    """
    if s < 1:
        raise ValueError("s must be >= 1")
    rho_grid = list(DEFAULT_GRIDS.rho_grid() if rho_grid is None else rho_grid)
    prof = f if isinstance(f, BlockProfile) else profile_of(f, p)
    top = sp_norm(calculus.psi_derivative(prof, PsiWeight.radial_power(s)))
    if not top.certified:
        raise PreconditionError("the s-th derivative has no certified finite S^p norm")
    lower = calculus.psi_derivative(prof, PsiWeight.radial_power(s - 1))
    values, bounds = [], []
    for rho in rho_grid:
        num = summation.approximation_error(SummationMethod.abel_poisson(rho, s), prof)
        den = summation.approximation_error(SummationMethod.abel_poisson(rho, 1.0), lower)
        values.append(Interval(num.lower**p, num.upper**p))
        bounds.append(den.upper**p)
    ratios = [v.upper / b for v, b in zip(values, bounds)]
    band = thresholds.ratio_band
    dist = np.abs(np.asarray(ratios) - 1.0)
    half = len(ratios) // 2
    inside = bool((dist[-tail_points:] <= band).all())
    trending = bool(dist[-1] <= dist[half] + 1e-15)
    t = [1.0 - rho for rho in rho_grid]
    uppers = [v.upper for v in values]
    return RateReport(
        "equivalence7",
        t,
        values,
        bounds,
        ratios,
        fit_slope(t, uppers, thresholds.trend_fraction),
        float(np.polyfit(np.log(1.0 / np.asarray(t[half:])), np.log(np.maximum(dist[half:], 1e-300)), 1)[0])
        if len(t) - half >= 2
        else math.nan,
        "pass" if inside and trending else "fail",
        "zero",
        {**thresholds.as_dict(), "tail_points": tail_points},
        fit_slope(t, uppers),
    )


def fejer_abel_bound(prof: BlockProfile, n: int, big_n: int) -> tuple[float, float]:
    """Both sides of the Abel-summation bound for the p-th power Fejer error.

    Returns ``(lhs, rhs)`` with ``lhs = ||f - sigma_n f||**p`` (upper end) and
    ``rhs = p sum_{nu=n}^{N} nu**(-p-1) ||S_nu f_[1]||**p
    + N**-p ||S_N f_[1]||**p + sum_{nu > N} a_nu**p``.
    """
    if not 1 <= n < big_n <= prof.cutoff:
        raise ValueError("need 1 <= n < N <= cutoff")
    p = prof.p
    lhs = summation.approximation_error(SummationMethod.fejer(n), prof).upper ** p
    nu = prof.orders
    cumulative = np.cumsum((nu * prof.values) ** p)
    span = np.arange(n, big_n + 1)
    rhs = (
        p * math.fsum(span ** (-p - 1.0) * cumulative[span])
        + cumulative[big_n] / big_n**p
        + math.fsum(prof.values[big_n + 1 :] ** p)
        + prof.tail_bound
    )
    return lhs, rhs
