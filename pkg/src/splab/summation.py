"""Triangular summation methods and their S^p error functionals.

Every method multiplies block ``nu`` by a scalar ``m_nu`` in [0, 1]; the error
``||f - method(f)||_{S^p}`` is therefore ``(sum (1 - m_nu)**p a_nu**p)**(1/p)``.
The complements ``1 - m_nu`` are evaluated directly (never as ``1 - m``
when that would cancel) because rate fits see them at ``1e-10`` scale.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Sequence, Union

import numpy as np
from scipy.special import gammaln

from .spectrum import BlockProfile, Spectrum
from .tails import Interval

_SERIES_RTOL = 1e-18
_MAX_SERIES_TERMS = 4096


@dataclass(frozen=True)
class SummationMethod:
    """One of ``partial(n)``, ``fejer(n)``, ``abel_poisson(rho, s)``, ``taylor(rho, r)``."""

    tag: str
    n: int = 0
    rho: float = 0.0
    s: float = 1.0
    r: int = 1

    def __post_init__(self):
        if self.tag == "partial":
            if self.n < 0:
                raise ValueError("partial sums need n >= 0")
        elif self.tag == "fejer":
            if self.n < 1:
                raise ValueError("Fejer sums need n >= 1")
        elif self.tag in ("abel_poisson", "taylor"):
            if not 0.0 <= self.rho < 1.0:
                raise ValueError("rho must lie in [0, 1)")
            if self.tag == "abel_poisson" and self.s <= 0:
                raise ValueError("s must be > 0")
            if self.tag == "taylor" and (self.r < 1 or self.r != int(self.r)):
                raise ValueError("r must be a positive integer")
        else:
            raise ValueError(f"unknown method {self.tag!r}")

    @classmethod
    def partial(cls, n: int) -> "SummationMethod":
        return cls("partial", n=int(n))

    @classmethod
    def fejer(cls, n: int) -> "SummationMethod":
        return cls("fejer", n=int(n))

    @classmethod
    def abel_poisson(cls, rho: float, s: float = 1.0) -> "SummationMethod":
        return cls("abel_poisson", rho=float(rho), s=float(s))

    @classmethod
    def taylor(cls, rho: float, r: int = 1) -> "SummationMethod":
        return cls("taylor", rho=float(rho), r=int(r))

    @property
    def finite(self) -> bool:
        return self.tag in ("partial", "fejer")

    def describe(self) -> dict:
        keys = {"partial": ("n",), "fejer": ("n",), "abel_poisson": ("rho", "s"), "taylor": ("rho", "r")}
        return {"tag": self.tag, **{k: getattr(self, k) for k in keys[self.tag]}}


@dataclass(frozen=True)
class MultiplierRow:
    method: SummationMethod
    values: np.ndarray
    complements: np.ndarray


def _log_comb_small_k(nu: np.ndarray, k: int) -> np.ndarray:
    # sum of logs stays accurate for nu ~ 1e5 where gammaln differences lose digits
    out = np.full(nu.shape, -math.lgamma(k + 1))
    for j in range(k):
        out = out + np.log(nu - j)
    return out


def _rho_logs(rho: float) -> tuple[float, float]:
    delta = 1.0 - rho
    log_rho = math.log1p(-delta) if rho > 0.5 else math.log(rho)
    return log_rho, math.log(delta)


def _abel_pair(exponents: np.ndarray, rho: float) -> tuple[np.ndarray, np.ndarray]:
    if rho == 0.0:
        m = np.where(exponents == 0, 1.0, 0.0)
        return m, 1.0 - m
    x = exponents * _rho_logs(rho)[0]
    return np.exp(x), -np.expm1(x)


def _lambda_terms(nu: np.ndarray, r: int, rho: float) -> np.ndarray:
    """Terms ``C(nu, k) (1-rho)**k rho**(nu-k)`` for ``k = 0..r-1`` (rows)."""
    log_rho, log_delta = _rho_logs(rho)
    rows = [np.exp(_log_comb_small_k(nu, k) + k * log_delta + (nu - k) * log_rho) for k in range(r)]
    return np.array(rows)


def _complement_series(nu: np.ndarray, r: int, rho: float) -> np.ndarray:
    """``sum_{k=r}^{nu} C(nu, k) (1-rho)**k rho**(nu-k)`` for small complements."""
    log_rho, log_delta = _rho_logs(rho)
    terms = []
    total = np.zeros_like(nu)
    for k in range(r, r + _MAX_SERIES_TERMS):
        live = nu >= k
        if not live.any():
            break
        with np.errstate(invalid="ignore", divide="ignore"):
            logs = _log_comb_small_k(np.where(live, nu, k), k) + k * log_delta + (nu - k) * log_rho
        t = np.where(live, np.exp(logs), 0.0)
        terms.append(t)
        total = total + t
        mode_passed = k > nu * (1.0 - rho) + 1.0
        if np.all(~live | (mode_passed & (t <= _SERIES_RTOL * total))):
            break
    stacked = np.sort(np.array(terms), axis=0)
    return stacked.sum(axis=0)


def taylor_pair(nu: np.ndarray, r: int, rho: float) -> tuple[np.ndarray, np.ndarray]:
    """``(lambda_{nu,r}, 1 - lambda_{nu,r})`` for ``nu >= r``, both accurate."""
    nu = np.asarray(nu, dtype=float)
    if r == 1:
        return _abel_pair(nu, rho)
    if rho == 0.0:
        return np.zeros_like(nu), np.ones_like(nu)
    lam = np.sort(_lambda_terms(nu, r, rho), axis=0).sum(axis=0)
    comp = 1.0 - lam
    small = lam > 0.5
    if small.any():
        comp[small] = _complement_series(nu[small], r, rho)
    return lam, comp


def lambda_coeff(nu: int, r: int, rho: float) -> float:
    """``lambda_{nu,r}(rho) = sum_{k<r} C(nu, k) (1-rho)**k rho**(nu-k)``."""
    if not (nu >= r >= 1) or not 0.0 <= rho < 1.0:
        raise ValueError("need nu >= r >= 1 and 0 <= rho < 1")
    if rho == 0.0:
        return 0.0
    terms = _lambda_terms(np.array([float(nu)]), r, rho)[:, 0]
    return math.fsum(sorted(terms))


def multipliers(method: SummationMethod, up_to: int) -> MultiplierRow:
    """Block multipliers ``m_0..m_{up_to}`` and their complements ``1 - m_nu``."""
    if up_to < 0:
        raise ValueError("up_to must be >= 0")
    nu = np.arange(up_to + 1, dtype=float)
    if method.tag == "partial":
        m = (nu <= method.n).astype(float)
        comp = 1.0 - m
    elif method.tag == "fejer":
        comp = np.minimum(nu / (method.n + 1), 1.0)
        m = 1.0 - comp
    elif method.tag == "abel_poisson":
        m, comp = _abel_pair(nu**method.s, method.rho)
        m[0], comp[0] = 1.0, 0.0
    else:
        m, comp = np.ones_like(nu), np.zeros_like(nu)
        tail = nu >= method.r
        m[tail], comp[tail] = taylor_pair(nu[tail], method.r, method.rho)
    return MultiplierRow(method, m, comp)


def apply(method: SummationMethod, f: Union[Spectrum, BlockProfile]):
    """Apply the method blockwise to a spectrum or profile."""
    if isinstance(f, BlockProfile):
        row = multipliers(method, f.cutoff)
        values = f.values * row.values
        if method.finite and method.n <= f.cutoff:
            return f.replace(values=values, tail_bound=0.0, majorant=None)
        return f.replace(values=values)
    row = multipliers(method, f.cutoff)
    coefficients = f.coefficients * row.values[f.orders]
    if method.finite and method.n <= f.cutoff:
        return f.replace(coefficients=coefficients, tail_bound=0.0, majorant=None, exact=True, tail_p=None)
    return f.replace(coefficients=coefficients)


def approximation_error(method: SummationMethod, f: BlockProfile) -> Interval:
    """``||f - method(f)||_{S^p}`` as a certified interval.

    The error multiplier never exceeds 1, so the profile's own tail bound
    certifies everything beyond the cutoff; with a majorant the Abel-type
    methods use the sharper multiplier bounds of ``_error_tail``.
    """
    p = f.p
    if method.tag == "fejer":
        n = method.n
        nu = f.orders[1 : n + 1]
        near = math.fsum((nu * f.values[1 : n + 1]) ** p) / (n + 1) ** p
        far = math.fsum(f.values[n + 1 :] ** p)
        head = near + far
    else:
        head = f.power_sum(multipliers(method, f.cutoff).complements)
    return Interval.from_power_sums(head, _error_tail(method, f), p)


def _error_tail(method: SummationMethod, f: BlockProfile) -> float:
    # 1 - rho**(nu**s) <= nu**s log(1/rho);  1 - lambda_{nu,r} <= C(nu, r) (1-rho)**r <= nu**r (1-rho)**r / r!
    if f.majorant is None or method.finite or method.rho == 0.0:
        return f.tail_bound
    if method.tag == "abel_poisson" or method.r == 1:
        e, factor = (method.s if method.tag == "abel_poisson" else 1.0), -_rho_logs(method.rho)[0]
    else:
        e, factor = method.r, (1.0 - method.rho) ** method.r / math.factorial(method.r)
    sharper = f.majorant.times_power(e * f.p).scaled(factor**f.p).sum(f.cutoff + 1)
    return min(f.tail_bound, sharper)


@dataclass(frozen=True)
class IdentityReport:
    name: str
    max_error: float
    tolerance: float
    worst_rho: float | None

    @property
    def passed(self) -> bool:
        return self.max_error <= self.tolerance


def binomial_terms(nu: int, rho: float) -> np.ndarray:
    """All terms ``C(nu, k) (1-rho)**k rho**(nu-k)``, ``k = 0..nu``, endpoints exact."""
    return binomial_matrix(nu, [rho])[0]


def binomial_matrix(nu: int, rhos: Sequence[float]) -> np.ndarray:
    """Rows of :func:`binomial_terms` for each ``rho``."""
    k = np.arange(nu + 1, dtype=float)
    rhos = np.asarray(rhos, dtype=float)
    out = np.empty((len(rhos), nu + 1))
    inner = (rhos > 0.0) & (rhos < 1.0)
    out[rhos == 0.0] = (k == nu).astype(float)
    out[rhos == 1.0] = (k == 0).astype(float)
    if inner.any():
        r = rhos[inner]
        log_rho = np.where(r > 0.5, np.log1p(-(1.0 - r)), np.log(r))
        log_delta = np.log(1.0 - r)
        logc = gammaln(nu + 1.0) - gammaln(k + 1.0) - gammaln(nu - k + 1.0)
        out[inner] = np.exp(logc + np.outer(log_delta, k) + np.outer(log_rho, nu - k))
    return out


def verify_identity_8(nu: int, rho_grid: Sequence[float], tol: float = 1e-11) -> IdentityReport:
    """Max deviation of ``sum_k C(nu,k)(1-rho)**k rho**(nu-k)`` from 1 over the grid."""
    if nu < 0:
        raise ValueError("nu must be >= 0")
    worst, at = 0.0, None
    for rho, row in zip(rho_grid, binomial_matrix(nu, rho_grid)):
        err = abs(math.fsum(row) - 1.0)
        if at is None or err > worst:
            worst, at = err, rho
    return IdentityReport(f"binomial_identity(nu={nu})", worst, tol, at)


def verify_inequality_12(nu: int, r: int, rho_grid: Sequence[float], tol: float = 1e-12) -> IdentityReport:
    """Max of ``sum_{k>=r} C(nu,k)(1-rho)**k rho**(nu-k) - C(nu,r)(1-rho)**r``.

    The grid is extended with the endpoints 0 and 1.
    """
    if not nu >= r >= 1:
        raise ValueError("need nu >= r >= 1")
    grid = sorted(set(rho_grid) | {0.0, 1.0})
    worst, at = -math.inf, None
    for rho, row in zip(grid, binomial_matrix(nu, grid)):
        lhs = math.fsum(row[r:])
        rhs = math.comb(nu, r) * (1.0 - rho) ** r
        if lhs - rhs > worst:
            worst, at = lhs - rhs, rho
    return IdentityReport(f"tail_inequality(nu={nu}, r={r})", max(worst, 0.0), tol, at)
