"""psi-derivatives and the Poisson integral acting blockwise.

Both operators are diagonal in the block decomposition, so they act on a
spectrum by rescaling each coefficient according to its block order and on a
profile by rescaling ``a_nu``. Tail majorants are transformed alongside.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field
from typing import Mapping, Union

import numpy as np

from .spectrum import BlockProfile, Spectrum, sp_norm
from .tails import Interval, TailMajorant


class PsiZeroError(ZeroDivisionError):
    """psi vanishes on a carried block outside the declared zero set."""


@dataclass(frozen=True)
class PsiWeight:
    """Radial weight ``psi(k) = psi(|k|_1)``.

    ``kind`` is ``"radial_power"`` (``nu**-r``), ``"falling_factorial"``
    (``(nu - r)! / nu!``) or ``"custom"`` (explicit table, zero elsewhere).
    """

    kind: str
    r: float = 0.0
    table: Mapping[int, float] = field(default_factory=dict)

    def __post_init__(self):
        if self.kind not in ("radial_power", "falling_factorial", "custom"):
            raise ValueError(f"unknown psi kind {self.kind!r}")
        if self.r < 0:
            raise ValueError("r must be >= 0")
        if self.kind == "falling_factorial" and self.r != int(self.r):
            raise ValueError("falling_factorial needs integer r")

    @classmethod
    def radial_power(cls, r: float) -> "PsiWeight":
        return cls("radial_power", float(r))

    @classmethod
    def falling_factorial(cls, r: int) -> "PsiWeight":
        return cls("falling_factorial", int(r))

    @classmethod
    def custom(cls, table: Mapping[int, float]) -> "PsiWeight":
        return cls("custom", 0.0, dict(table))

    @property
    def zero_set_orders(self) -> frozenset[int]:
        if self.r == 0 and self.kind != "custom":
            return frozenset()
        if self.kind == "radial_power":
            return frozenset({0})
        if self.kind == "falling_factorial":
            return frozenset(range(int(self.r)))
        return frozenset(nu for nu, v in self.table.items() if v == 0)

    def __call__(self, nu: int) -> float:
        if self.kind == "custom":
            return float(self.table.get(nu, 0.0))
        if nu in self.zero_set_orders:
            return 0.0
        if self.r == 0:
            return 1.0
        if self.kind == "radial_power":
            return float(nu) ** -self.r
        return math.exp(-_log_falling(np.array([nu], float), int(self.r))[0])

    def log_inverse(self, nu: np.ndarray) -> np.ndarray:
        """``log(1 / |psi(nu)|)``; entries where psi vanishes are ``nan``."""
        nu = np.asarray(nu, dtype=float)
        out = np.full(nu.shape, np.nan)
        zero = np.isin(nu, list(self.zero_set_orders))
        live = ~zero
        if self.kind == "custom":
            vals = np.array([self.table.get(int(n), 0.0) for n in nu[live]], float)
            with np.errstate(divide="ignore"):
                logs = -np.log(np.abs(vals))
            out[live] = np.where(vals == 0, np.nan, logs)
        elif self.r == 0:
            out[live] = 0.0
        elif self.kind == "radial_power":
            out[live] = self.r * np.log(nu[live])
        else:
            out[live] = _log_falling(nu[live], int(self.r))
        return out

    def inverse_weights(self, nu: np.ndarray) -> np.ndarray:
        """``1 / |psi(nu)|`` with zero-set blocks mapped to 0; may overflow to inf."""
        nu = np.asarray(nu, dtype=float)
        if self.kind == "falling_factorial" and self.r > 0:
            w = np.ones_like(nu)
            with np.errstate(over="ignore"):
                for j in range(int(self.r)):
                    w = w * (nu - j)
            w[nu < self.r] = 0.0
            return w
        if self.kind == "radial_power" and self.r > 0:
            w = np.zeros_like(nu)
            pos = nu > 0
            w[pos] = nu[pos] ** self.r
            return w
        logs = self.log_inverse(nu)
        with np.errstate(over="ignore"):
            return np.where(np.isnan(logs), 0.0, np.exp(np.nan_to_num(logs, nan=0.0)))

    def growth_exponent(self) -> float | None:
        """``e`` with ``1 / |psi(nu)| <= nu**e``; ``None`` when unknown."""
        if self.kind == "custom":
            return None
        return self.r


def _log_falling(nu: np.ndarray, r: int) -> np.ndarray:
    """``log(nu! / (nu - r)!)`` for ``nu >= r``."""
    out = np.zeros_like(nu, dtype=float)
    for j in range(r):
        out += np.log(nu - j)
    return out


def _scale_blocks(values: np.ndarray, psi: PsiWeight) -> np.ndarray:
    nu = np.arange(len(values), dtype=float)
    w = psi.inverse_weights(nu)
    if np.isfinite(w).all() and w.max(initial=0.0) < 1e300:
        return values * w
    # log-domain fallback for huge falling factorials
    logs = np.nan_to_num(psi.log_inverse(nu), nan=-np.inf)
    with np.errstate(divide="ignore"):
        out = np.exp(np.log(np.abs(values)) + logs)
    return np.where(values == 0, 0.0, out)


def _check_support(carried: np.ndarray, psi: PsiWeight) -> None:
    if psi.kind != "custom":
        return
    zero = psi.zero_set_orders
    for nu in np.unique(carried):
        if int(nu) not in zero and psi.table.get(int(nu), 0.0) == 0.0:
            raise PsiZeroError(f"psi vanishes at carried block nu={int(nu)}")


def _derived_majorant(majorant: TailMajorant | None, psi: PsiWeight, p: float):
    e = psi.growth_exponent()
    if majorant is None or e is None:
        return None
    return majorant.times_power(e * p)


def psi_derivative(f: Union[Spectrum, BlockProfile], psi: PsiWeight):
    """The canonical psi-derivative: blocks divided by psi, zero-set blocks zeroed.

    The tail stays certified when ``f`` carries a majorant and ``psi`` has
    known polynomial growth; otherwise the result's tail is ``inf``.
    """
    if isinstance(f, BlockProfile):
        carried = np.flatnonzero(f.values)
        _check_support(carried, psi)
        if psi.kind != "custom" and psi.r == 0:
            return f
        values = _scale_blocks(f.values, psi)
        majorant = _derived_majorant(f.majorant, psi, f.p)
        tail = majorant.sum(f.cutoff + 1) if majorant is not None else math.inf
        if f.tail_bound == 0 and f.majorant is None:
            tail = 0.0
        return f.replace(values=values, tail_bound=tail, majorant=majorant)

    carried = f.orders[np.abs(f.coefficients) > 0]
    _check_support(carried, psi)
    if psi.kind != "custom" and psi.r == 0:
        return f
    scale = _scale_blocks(np.ones(f.cutoff + 1), psi)
    coefficients = f.coefficients * scale[f.orders] if len(f) else f.coefficients
    if f.exact:
        return f.replace(coefficients=coefficients)
    majorant = _derived_majorant(f.majorant, psi, f.tail_p) if f.tail_p else None
    tail = majorant.sum(f.cutoff + 1) if majorant is not None else math.inf
    return f.replace(coefficients=coefficients, tail_bound=tail, majorant=majorant)


@dataclass(frozen=True)
class PoissonParams:
    rho: float
    r: int = 0

    def __post_init__(self):
        if not 0.0 <= self.rho < 1.0:
            raise ValueError("rho must lie in [0, 1)")
        if self.r < 0 or self.r != int(self.r):
            raise ValueError("r must be a nonnegative integer")


def _rho_powers(rho: float, exponents: np.ndarray) -> np.ndarray:
    if rho == 0.0:
        return np.where(exponents == 0, 1.0, 0.0)
    return np.exp(exponents * math.log(rho))


def poisson_transform(f: BlockProfile, params: PoissonParams | float) -> BlockProfile:
    """Profile of ``P(f)(rho, .)``: ``a_nu -> rho**nu a_nu``."""
    if not isinstance(params, PoissonParams):
        params = PoissonParams(float(params))
    rho = params.rho
    values = f.values * _rho_powers(rho, f.orders)
    tail = f.tail_bound * rho ** ((f.cutoff + 1) * f.p) if math.isfinite(f.tail_bound) else math.inf
    majorant = None
    if f.majorant is not None:
        majorant = f.majorant.times_geometric(rho**f.p)
        tail = min(tail, majorant.sum(f.cutoff + 1))
    return f.replace(values=values, tail_bound=tail, majorant=majorant)


def poisson_radial_derivative_norm(f: BlockProfile, params: PoissonParams) -> Interval:
    """S^p norm of ``d^r/d rho^r P(f)(rho, .)``."""
    rho, r = params.rho, params.r
    nu = f.orders
    weights = PsiWeight.falling_factorial(r).inverse_weights(nu) if r else np.ones_like(nu)
    shifted = np.maximum(nu - r, 0.0)
    powers = np.where(nu >= r, _rho_powers(rho, shifted), 0.0)
    head = f.power_sum(weights * powers)
    tail = _radial_tail(f, rho, r)
    return Interval.from_power_sums(head, tail, f.p)


def _radial_tail(f: BlockProfile, rho: float, r: int) -> float:
    if f.tail_bound == 0.0 and f.majorant is None:
        return 0.0
    if f.majorant is None:
        return math.inf
    p = f.p
    if rho == 0.0:
        # only nu = r survives
        return f.majorant.term(r) * math.factorial(r) ** p if f.cutoff < r else 0.0
    # (nu!/(nu-r)!)**p rho**((nu-r)p) <= rho**(-rp) nu**(rp) rho**(nu p)
    maj = f.majorant.times_power(r * p).times_geometric(rho**p).scaled(rho ** (-r * p))
    return maj.sum(f.cutoff + 1)


def poisson_of_bracket_derivative_norm(f: BlockProfile, params: PoissonParams) -> Interval:
    """S^p norm of ``P(f_[r])(rho, .) = rho**r d^r/d rho^r P(f)(rho, .)``.

    Evaluated by composing the falling-factorial derivative with the Poisson
    multiplier; agrees with ``rho**r * poisson_radial_derivative_norm`` blockwise.
    """
    derivative = psi_derivative(f, PsiWeight.falling_factorial(params.r))
    return sp_norm(poisson_transform(derivative, PoissonParams(params.rho)))


def poisson_norm_of_derivative(f: BlockProfile, psi: PsiWeight, rho: float) -> Interval:
    """``||P(f^psi)(rho, .)||_{S^p}`` for any radial psi."""
    return sp_norm(poisson_transform(psi_derivative(f, psi), PoissonParams(rho)))
