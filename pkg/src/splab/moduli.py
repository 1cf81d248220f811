"""Majorants omega, their admissibility conditions, and class-membership probes.

Asymptotic statements cannot be decided from finitely many probes, so every
check here returns evidence (the probed ratios) together with a verdict
derived from fixed thresholds.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Callable, Sequence

import numpy as np
from scipy import integrate

from .config import DEFAULT_THRESHOLDS, Thresholds
from .spectrum import Spectrum, shift_difference_norm

# largest y with exp(-y) comfortably representable
_Y_MAX = 690.0


class ModulusEvaluationError(ValueError):
    """omega returned a negative or non-finite value."""


@dataclass(frozen=True)
class Modulus:
    kind: str
    alpha: float = 1.0
    beta: float = 0.0
    evaluator: Callable[[float], float] | None = field(default=None, compare=False)
    name: str = ""

    @classmethod
    def power(cls, alpha: float) -> "Modulus":
        if not 0.0 < alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        return cls("power", alpha=float(alpha), name=f"power({alpha:g})")

    @classmethod
    def power_log(cls, alpha: float, beta: float) -> "Modulus":
        """``t**alpha * (1 + log(1/t))**beta``."""
        if not 0.0 < alpha <= 1.0:
            raise ValueError("alpha must lie in (0, 1]")
        return cls("power_log", alpha=float(alpha), beta=float(beta), name=f"power_log({alpha:g},{beta:g})")

    @classmethod
    def custom(cls, evaluator: Callable[[float], float], name: str = "custom") -> "Modulus":
        return cls("custom", evaluator=evaluator, name=name)

    @classmethod
    def inverse_log(cls) -> "Modulus":
        """``1 / log(e / t)``: satisfies 1)-4) but not the tail condition."""
        return cls.custom(_inverse_log, name="inverse_log")

    def __call__(self, t):
        t_arr = np.asarray(t, dtype=float)
        if self.kind == "power":
            out = t_arr**self.alpha
        elif self.kind == "power_log":
            with np.errstate(divide="ignore"):
                logs = np.where(t_arr > 0, 1.0 - np.log(np.where(t_arr > 0, t_arr, 1.0)), 1.0)
            out = np.where(t_arr > 0, t_arr**self.alpha * logs**self.beta, 0.0)
        else:
            out = np.vectorize(lambda x: float(self.evaluator(float(x))), otypes=[float])(t_arr)
        return float(out) if np.ndim(out) == 0 else out


def _inverse_log(t: float) -> float:
    return 0.0 if t == 0 else 1.0 / (1.0 - math.log(t))


@dataclass(frozen=True)
class ConditionReport:
    condition: str
    grid: list
    worst_ratio: float
    verdict: str
    ratios: list = field(default_factory=list)
    details: dict = field(default_factory=dict)

    @property
    def passed(self) -> bool:
        return self.verdict == "pass"


def _evaluate(omega: Modulus, t: np.ndarray) -> np.ndarray:
    vals = np.asarray(omega(t), dtype=float)
    if not np.isfinite(vals).all():
        raise ModulusEvaluationError(f"{omega.name} is not finite on the probe grid")
    if (vals < 0).any():
        raise ModulusEvaluationError(f"{omega.name} takes negative values")
    return vals


def check_basic_conditions(omega: Modulus, grid_size: int = 1024) -> ConditionReport:
    """Check continuity, monotonicity, positivity and the limit at 0.

    Monotonicity and positivity are checked exactly on the dyadic grid;
    continuity and the limit are heuristic and can only yield ``inconclusive``.
    """
    if grid_size < 16:
        raise ValueError("grid_size must be >= 16")
    m = 1 << math.ceil(math.log2(grid_size))
    coarse = np.arange(1, m + 1) / m
    fine = np.arange(1, 2 * m + 1) / (2 * m)
    small = 2.0 ** -np.arange(60, 0, -1)
    grid = np.unique(np.concatenate((small, fine)))
    vals = _evaluate(omega, grid)
    scale = vals.max() if vals.max() > 0 else 1.0

    drops = vals[:-1] - vals[1:]
    monotone = bool((drops <= 1e-14 * scale).all())
    with np.errstate(divide="ignore", invalid="ignore"):
        step_ratios = np.where(vals[1:] > 0, vals[:-1] / vals[1:], np.inf)
    positive = bool((vals > 0).all())

    # continuity: jumps on [1/m, 1] must shrink when the grid is refined
    jump_coarse = np.abs(np.diff(_evaluate(omega, coarse))).max()
    jump_fine = np.abs(np.diff(_evaluate(omega, fine[1:]))).max()
    continuous = bool(jump_fine <= 0.75 * jump_coarse + 1e-14 * scale)

    try:
        at_zero = float(omega(0.0))
    except (ValueError, ZeroDivisionError, OverflowError):
        at_zero = math.nan
    tiny = _evaluate(omega, small[:8])
    vanishing = bool(tiny[0] <= 0.1 * scale and (np.diff(tiny) >= 0).all())
    if math.isfinite(at_zero) and at_zero > 1e-12 * scale:
        vanishing = False

    checks = {"1_continuous": continuous, "2_nondecreasing": monotone, "3_positive": positive, "4_vanishing_at_0": vanishing}
    if not (monotone and positive):
        verdict = "fail"
    elif continuous and vanishing:
        verdict = "pass"
    elif omega.kind == "custom":
        verdict = "inconclusive"
    else:
        verdict = "fail"
    if math.isfinite(at_zero) and at_zero > 1e-12 * scale:
        verdict = "fail"
    return ConditionReport(
        "conditions_1_to_4",
        grid.tolist(),
        float(step_ratios.max()),
        verdict,
        details={"checks": checks, "omega_at_0": at_zero},
    )


def _tail_integral(omega: Modulus, m: int) -> float:
    """Upper bound for ``sum_{v > m} omega(1/v)/v`` by integral comparison."""
    if omega.kind == "power":
        return m ** -omega.alpha / omega.alpha
    # int_m^inf omega(1/t)/t dt = int_{log m}^inf omega(e^-y) dy
    value, _ = integrate.quad(lambda y: float(omega(math.exp(-y))), math.log(m), _Y_MAX, limit=400)
    return value


def _trend_slope(x: np.ndarray, y: np.ndarray) -> float:
    return float(np.polyfit(np.log(x), np.log(y), 1)[0])


def condition_B_ratios(omega: Modulus, n_grid: Sequence[int], tail_terms: int = 10**4) -> np.ndarray:
    ratios = []
    for n in n_grid:
        v = np.arange(n + tail_terms, n, -1, dtype=float)
        head = math.fsum(_evaluate(omega, 1.0 / v) / v)
        ratios.append((head + _tail_integral(omega, n + tail_terms)) / float(omega(1.0 / n)))
    return np.array(ratios)


def check_condition_B(
    omega: Modulus,
    n_grid: Sequence[int] | None = None,
    tail_terms: int = 10**4,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
) -> ConditionReport:
    """Probe ``sum_{v>n} omega(1/v)/v = O(omega(1/n))`` on a dyadic ``n`` grid.

    Each ratio is an explicit partial sum of ``tail_terms`` terms plus an
    integral bound for the remainder. The verdict fails when the ratios grow
    (fitted log-slope against ``n`` above ``thresholds.trend_slope``).
    """
    if n_grid is None:
        n_grid = [2**j for j in range(2, 17)]
    if min(n_grid) < 1:
        raise ValueError("n must be >= 1")
    if tail_terms < 10**4:
        raise ValueError("tail_terms must be >= 10**4")
    ratios = condition_B_ratios(omega, n_grid, tail_terms)
    slope = _trend_slope(np.asarray(n_grid, float), ratios)
    bounded = bool(np.isfinite(ratios).all())
    verdict = "pass" if bounded and slope <= thresholds.trend_slope else "fail"
    increasing = bool((np.diff(ratios) > 0).all())
    return ConditionReport(
        "condition_B",
        list(n_grid),
        float(ratios.max()),
        verdict,
        ratios.tolist(),
        {"trend_slope": slope, "strictly_increasing": increasing, "tail_terms": tail_terms},
    )


def membership_ratios(f: Spectrum, omega: Modulus, p: float, h_grid: Sequence[float], form: str = "auto"):
    norms = [shift_difference_norm(f, h, p, form=form) for h in h_grid]
    ratios = np.array([nrm.upper / float(omega(h)) for nrm, h in zip(norms, h_grid)])
    return norms, ratios


def estimate_class_membership(
    f: Spectrum,
    omega: Modulus,
    p: float,
    h_grid: Sequence[float] | None = None,
    thresholds: Thresholds = DEFAULT_THRESHOLDS,
    form: str = "auto",
) -> ConditionReport:
    """Evidence for ``||f - f_h||_{S^p} = O(omega(h))`` as ``h -> 0``."""
    if h_grid is None:
        h_grid = [2.0**-j for j in range(1, 21)]
    h = np.asarray(h_grid, dtype=float)
    if (h <= 0).any() or (h > 1).any() or (np.diff(h) >= 0).any():
        raise ValueError("h_grid must decrease within (0, 1]")
    _, ratios = membership_ratios(f, omega, p, h_grid, form)
    verdict, slope = ratio_verdict(1.0 / h, ratios, thresholds)
    return ConditionReport(
        "membership",
        h.tolist(),
        float(ratios.max()),
        verdict,
        ratios.tolist(),
        {"trend_slope": slope, "omega": omega.name, "p": p},
    )


def ratio_verdict(u: np.ndarray, ratios: np.ndarray, thresholds: Thresholds = DEFAULT_THRESHOLDS):
    """Verdict for a ratio sequence along an asymptotic variable ``u -> inf``.

    Returns ``(verdict, trend_slope)``. Uncertified (infinite) ratios give
    ``inconclusive``; identically zero ratios pass trivially.
    """
    ratios = np.asarray(ratios, dtype=float)
    if not np.isfinite(ratios).all():
        return "inconclusive", math.nan
    if (ratios < 0).any():
        raise ValueError("ratios must be nonnegative")
    start = int(len(ratios) * (1.0 - thresholds.trend_fraction))
    tail_u, tail_r = np.asarray(u, float)[start:], ratios[start:]
    live = tail_r > 0
    if live.sum() < 2:
        return "pass", 0.0
    slope = _trend_slope(tail_u[live], tail_r[live])
    return ("pass" if slope <= thresholds.trend_slope else "fail"), slope
