"""Catalog of test functions with closed-form block profiles and tail rules."""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .config import DEFAULT_BUDGET, Budget
from .spectrum import BlockProfile, ResourceError, Spectrum, block_count, enumerate_ball
from .tails import TailMajorant


class FamilyError(ValueError):
    """Unknown family or parameters outside the family's admissible range."""


CATALOG = {
    "geometric": {
        "params": {"q": "(0, 1)", "d": "1..4"},
        "coefficients": "|c_k| = q**|k|_1",
        "tail": "a_nu**p <= 2**d d nu**(d-1) q**(nu p), summed with a ratio bound",
        "y_supported": False,
    },
    "power": {
        "params": {"beta": "> 1/p", "d": "1..4"},
        "coefficients": "a_nu = nu**-beta spread evenly over block nu (a_0 = 0)",
        "tail": "a_nu**p = nu**(-beta p), integral comparison",
        "y_supported": "only for d = 1",
    },
    "single_block": {
        "params": {"nu0": ">= 0", "d": "1..4"},
        "coefficients": "c_k = 1 at k = (nu0, 0, ..., 0), zero elsewhere",
        "tail": "exact (finite support)",
        "y_supported": True,
    },
    "lacunary": {
        "params": {"base": "integer >= 2", "d": "1..4"},
        "coefficients": "c_k = 2**-j at k = (base**j, 0, ..., 0)",
        "tail": "geometric: sum_{j > J} 2**(-j p)",
        "y_supported": True,
    },
    "y_power": {
        "params": {"beta": "> 1/p", "d": "1..4"},
        "coefficients": "a_nu = nu**-beta spread evenly over the nonnegative part of block nu",
        "tail": "a_nu**p = nu**(-beta p), integral comparison",
        "y_supported": True,
    },
}

_DEFAULT_POWER_CUTOFF = {1: 10**5, 2: 1000, 3: 100, 4: 40}


def _nonneg_count(d: int, nu: int) -> int:
    return math.comb(nu + d - 1, d - 1)


def _nonneg_block(d: int, nu: int) -> np.ndarray:
    if d == 1:
        return np.array([[nu]], dtype=np.int64)
    rows = [np.concatenate(([first], rest)) for first in range(nu, -1, -1) for rest in _nonneg_block(d - 1, nu - first)]
    return np.array(rows, dtype=np.int64)


@dataclass(frozen=True)
class FamilySpec:
    name: str
    d: int = 1
    q: float = 0.5
    beta: float = 1.0
    nu0: int = 3
    base: int = 2
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        if self.name not in CATALOG:
            raise FamilyError(f"unknown family {self.name!r}; choose from {sorted(CATALOG)}")
        if not 1 <= self.d <= 4:
            raise FamilyError("d must lie in 1..4")
        if self.name == "geometric" and not 0.0 < self.q < 1.0:
            raise FamilyError("q must lie in (0, 1)")
        if self.name == "single_block" and self.nu0 < 0:
            raise FamilyError("nu0 must be >= 0")
        if self.name == "lacunary" and (self.base < 2 or self.base != int(self.base)):
            raise FamilyError("base must be an integer >= 2")

    @property
    def y_supported(self) -> bool:
        return self.name in ("single_block", "lacunary", "y_power") or (self.name == "power" and self.d == 1)

    def describe(self) -> dict:
        keys = {"geometric": ("q",), "power": ("beta",), "y_power": ("beta",), "single_block": ("nu0",), "lacunary": ("base",)}
        return {"name": self.name, "d": self.d, **{k: getattr(self, k) for k in keys[self.name]}}

    def check(self, p: float) -> None:
        if self.name in ("power", "y_power") and self.beta * p <= 1.0:
            raise FamilyError(f"beta = {self.beta} must exceed 1/p = {1.0 / p:g} for a finite S^p norm")

    def default_cutoff(self, p: float) -> int:
        if self.name in ("power", "y_power"):
            return _DEFAULT_POWER_CUTOFF[self.d]
        if self.name == "single_block":
            return self.nu0
        if self.name == "lacunary":
            return self.base**12
        # smallest N with certified tail below 1e-12
        maj = self.majorant(p)
        n = 1
        while maj.sum(n + 1) > 1e-12:
            n += 1
        return n

    def majorant(self, p: float) -> TailMajorant | None:
        if self.name == "geometric":
            # block size <= 2**d * C(nu+d-1, d-1) <= 2**d * d * nu**(d-1)
            return TailMajorant(2.0**self.d * self.d, self.d - 1.0, self.q**p)
        if self.name in ("power", "y_power"):
            return TailMajorant(1.0, -self.beta * p, 1.0)
        if self.name == "lacunary":
            return TailMajorant(1.0, -p * math.log(2.0) / math.log(self.base), 1.0)
        return None

    def profile_values(self, p: float, cutoff: int) -> np.ndarray:
        nu = np.arange(cutoff + 1, dtype=float)
        if self.name == "geometric":
            counts = np.array([block_count(self.d, int(k)) for k in range(cutoff + 1)], float)
            return counts ** (1.0 / p) * self.q**nu
        if self.name in ("power", "y_power"):
            out = np.zeros(cutoff + 1)
            out[1:] = nu[1:] ** -self.beta
            return out
        out = np.zeros(cutoff + 1)
        if self.name == "single_block":
            if self.nu0 <= cutoff:
                out[self.nu0] = 1.0
            return out
        j = 0
        while self.base**j <= cutoff:
            out[self.base**j] = 2.0**-j
            j += 1
        return out

    def tail_bound(self, p: float, cutoff: int) -> float:
        if self.name == "single_block":
            return 0.0 if self.nu0 <= cutoff else 1.0
        if self.name == "lacunary":
            j = math.floor(math.log(cutoff, self.base) + 1e-12) if cutoff >= 1 else -1
            x = 2.0**-p
            return x ** (j + 1) / (1.0 - x)
        return self.majorant(p).sum(cutoff + 1)

    def profile(self, p: float, cutoff: int | None = None) -> BlockProfile:
        """Closed-form block profile."""
        self.check(p)
        cutoff = self.default_cutoff(p) if cutoff is None else cutoff
        return BlockProfile(
            p,
            self.profile_values(p, cutoff),
            self.tail_bound(p, cutoff),
            self.majorant(p),
            self.d,
            self.y_supported,
        )

    def spectrum(
        self, p: float, cutoff: int | None = None, seed: int | None = None, budget: Budget = DEFAULT_BUDGET
    ) -> Spectrum:
        """Coefficient-level instance; phases are +1 unless ``seed`` is given."""
        self.check(p)
        cutoff = self.default_cutoff(p) if cutoff is None else cutoff
        if self.name == "geometric":
            idx = enumerate_ball(self.d, cutoff, budget)
            amp = self.q ** np.abs(idx).sum(axis=1).astype(float)
        elif self.name in ("power", "y_power"):
            idx, amp = self._power_coefficients(p, cutoff, budget)
        else:
            support = [n for n, a in enumerate(self.profile_values(p, cutoff)) if a > 0]
            idx = np.zeros((len(support), self.d), dtype=np.int64)
            idx[:, 0] = support
            amp = self.profile_values(p, cutoff)[support]
        amp = amp.astype(complex)
        if seed is not None:
            amp = amp * np.exp(1j * np.random.default_rng(seed).uniform(0.0, 2.0 * math.pi, len(amp)))
        tail = self.tail_bound(p, cutoff)
        exact = tail == 0.0 and self.name == "single_block"
        return Spectrum(
            self.d,
            idx,
            amp,
            cutoff,
            tail_bound=tail,
            tail_p=None if exact else p,
            majorant=None if exact else self.majorant(p),
            exact=exact,
            y_supported=self.y_supported,
        )

    def _power_coefficients(self, p, cutoff, budget):
        if self.name == "power":
            idx = enumerate_ball(self.d, cutoff, budget)
            nu = np.abs(idx).sum(axis=1)
            counts = np.array([block_count(self.d, int(k)) for k in range(cutoff + 1)], float)
        else:
            total = sum(_nonneg_count(self.d, k) for k in range(1, cutoff + 1))
            if total > budget.max_elements:
                raise ResourceError(f"{total} indices exceed budget {budget.max_elements}")
            idx = np.concatenate([_nonneg_block(self.d, k) for k in range(1, cutoff + 1)], axis=0)
            nu = idx.sum(axis=1)
            counts = np.array([_nonneg_count(self.d, k) for k in range(cutoff + 1)], float)
        amp = np.zeros(len(idx))
        live = nu > 0
        amp[live] = nu[live] ** -self.beta * counts[nu[live]] ** (-1.0 / p)
        return idx, amp


def family_from_dict(spec: dict) -> FamilySpec:
    return FamilySpec(**spec)
