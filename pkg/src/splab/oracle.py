"""Slow brute-force references for the main numerical routines.

Everything here uses plain loops, ``math.comb`` and naive summation on
purpose: an oracle that shares the main path's tricks could share its bugs.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Callable

from .spectrum import BlockProfile, ResourceError, Spectrum
from .summation import SummationMethod


class UnknownSeriesError(KeyError):
    """Requested reference series is not in the registry."""


@dataclass(frozen=True)
class OracleConfig:
    max_cutoff: int = 10**4
    fd_step: float = 1e-4
    tolerance: float = 1e-12

    def __post_init__(self):
        if not 0 < self.max_cutoff <= 10**6:
            raise ValueError("max_cutoff must lie in 1..10**6")
        if not 0.0 < self.fd_step <= 1e-2:
            raise ValueError("fd_step must lie in (0, 1e-2]")


DEFAULT_ORACLE = OracleConfig()


def naive_multiplier(method: SummationMethod, nu: int) -> float:
    """Block multiplier straight from the operator definitions."""
    if method.tag == "partial":
        return 1.0 if nu <= method.n else 0.0
    if method.tag == "fejer":
        return 1.0 - nu / (method.n + 1) if nu <= method.n else 0.0
    if method.tag == "abel_poisson":
        return 1.0 if nu == 0 else method.rho ** (nu**method.s)
    if nu < method.r:
        return 1.0
    rho = method.rho
    total = 0.0
    for k in range(method.r):
        total += math.comb(nu, k) * (1.0 - rho) ** k * rho ** (nu - k)
    return total


def naive_complement(method: SummationMethod, nu: int) -> float:
    """``1 - m_nu``; the Taylor case sums the binomial terms ``k >= r`` directly."""
    if method.tag != "taylor" or nu < method.r:
        return 1.0 - naive_multiplier(method, nu)
    rho = method.rho
    total = 0.0
    for k in range(method.r, nu + 1):
        total += math.comb(nu, k) * (1.0 - rho) ** k * rho ** (nu - k)
    return total


def naive_error(method: SummationMethod, f: Spectrum, p: float, config: OracleConfig = DEFAULT_ORACLE) -> float:
    """``||f - method(f)||_{S^p}`` by coefficientwise subtraction."""
    if not f.exact:
        raise ValueError("naive_error needs a finitely supported spectrum")
    if len(f) > config.max_cutoff:
        raise ResourceError(f"{len(f)} coefficients exceed oracle limit {config.max_cutoff}")
    total = 0.0
    for k, c in zip(f.indices, f.coefficients):
        nu = int(sum(abs(int(x)) for x in k))
        if method.tag == "taylor":
            diff = naive_complement(method, nu) * c
        else:
            diff = c - naive_multiplier(method, nu) * c
        total += abs(diff) ** p
    return total ** (1.0 / p)


def fd_radial_derivative(f: BlockProfile, r: int, rho: float, step: float | None = None) -> float:
    """S^p norm of ``d^r/d rho^r P(f)`` from central differences of each block.

    Block ``nu`` contributes ``rho**nu a_nu``; the r-th central difference
    uses nodes ``rho + (r/2 - k) step``. Stored blocks only (tail ignored).
    """
    step = DEFAULT_ORACLE.fd_step if step is None else step
    if r < 0:
        raise ValueError("r must be >= 0")
    if len(f.values) > 10**6:
        raise ResourceError("profile longer than 10**6 blocks")
    if not (0.0 <= rho - r * step and rho + r * step < 1.0):
        raise ValueError("rho +- r*step must stay inside [0, 1)")
    nodes = [(k, rho + (r / 2.0 - k) * step) for k in range(r + 1)]
    total = 0.0
    for nu, a in enumerate(f.values):
        if a == 0.0:
            continue
        diff = 0.0
        for k, x in nodes:
            diff += (-1) ** k * math.comb(r, k) * x**nu
        total += abs(a * diff / step**r) ** f.p
    return total ** (1.0 / f.p)


@dataclass(frozen=True)
class Reference:
    value: float
    error_bound: float
    note: str


def _geometric_block_sum(q: float = 0.5, p: float = 1.0) -> Reference:
    # d = 1: block nu >= 1 has two coefficients of size q**nu
    x = q**p
    return Reference(2.0 * x / (1.0 - x), 0.0, "closed form 2 q^p/(1-q^p)")


def _zeta_tail(s: float = 1.5, n: int = 1, cutoff: int = 10**5) -> Reference:
    if s <= 1:
        raise ValueError("s must exceed 1")
    head = 0.0
    for nu in range(n + 1, cutoff + 1):
        head += nu**-s
    # int_{N}^{inf} t^-s dt bounds the remainder from above, int_{N+1}^{inf} from below
    upper = cutoff ** (1 - s) / (s - 1)
    lower = (cutoff + 1) ** (1 - s) / (s - 1)
    mid = 0.5 * (upper + lower)
    return Reference(head + mid, 0.5 * (upper - lower), "partial sum plus integral comparison tail")


def _fejer_power_error(beta: float = 1.0, n: int = 1024, p: float = 2.0, cutoff: int = 10**6) -> Reference:
    total = 0.0
    for nu in range(1, cutoff + 1):
        m = min(nu / (n + 1), 1.0)
        total += (m * nu**-beta) ** p
    e = beta * p
    upper = cutoff ** (1 - e) / (e - 1)
    lower = (cutoff + 1) ** (1 - e) / (e - 1)
    lo = total + lower
    hi = total + upper
    return Reference(0.5 * (lo ** (1 / p) + hi ** (1 / p)), 0.5 * (hi ** (1 / p) - lo ** (1 / p)), "cutoff partial sum")


def _power_shift_norm(beta: float = 1.0, h: float = 0.01, p: float = 2.0, cutoff: int = 10**6) -> Reference:
    # d = 1 power family: block nu holds +-nu with modulus nu**-beta 2**(-1/p)
    total = 0.0
    for nu in range(1, cutoff + 1):
        total += abs(2.0 * math.sin(nu * h / 2.0)) ** p * nu ** (-beta * p)
    e = beta * p
    remainder = 2.0**p * cutoff ** (1 - e) / (e - 1)
    lo, hi = total ** (1 / p), (total + remainder) ** (1 / p)
    return Reference(0.5 * (lo + hi), 0.5 * (hi - lo), "cutoff partial sum, |2 sin| <= 2 tail")


REGISTRY: dict[str, Callable[..., Reference]] = {
    "geometric_block_sum": _geometric_block_sum,
    "zeta_tail": _zeta_tail,
    "fejer_power_error": _fejer_power_error,
    "power_shift_norm": _power_shift_norm,
}


def series_reference(name: str, **params) -> Reference:
    """Look up a reference value with an explicit error bound."""
    try:
        builder = REGISTRY[name]
    except KeyError:
        raise UnknownSeriesError(f"unknown series {name!r}; known: {sorted(REGISTRY)}") from None
    return builder(**params)
