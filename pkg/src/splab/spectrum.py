"""Multi-index spectra, triangular blocks and S^p norms.

A function is represented purely by its Fourier coefficients. Block ``nu``
collects the multi-indices ``k`` with ``|k|_1 = nu``; the block profile
``a_nu = (sum_{|k|_1 = nu} |c_k|**p)**(1/p)`` determines every S^p quantity
of a radial summation method.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from typing import Mapping, Sequence, Union

import numpy as np

from .config import DEFAULT_BUDGET, Budget
from .tails import Interval, TailMajorant

MultiIndex = tuple[int, ...]


class ResourceError(RuntimeError):
    """Raised when a full enumeration would exceed the element budget."""


class TailMismatchError(ValueError):
    """Raised when a tail certificate cannot be converted to the requested p."""


def order(k: Sequence[int]) -> int:
    """The l1 length ``|k|_1`` of a multi-index."""
    return sum(abs(int(j)) for j in k)


def in_Y(k: Sequence[int]) -> bool:
    """True when all coordinates are >= 0 or all are < 0."""
    return all(j >= 0 for j in k) or all(j < 0 for j in k)


def block_count(d: int, nu: int) -> int:
    """Number of ``k`` in Z^d with ``|k|_1 = nu`` (closed form)."""
    if d < 1 or nu < 0:
        raise ValueError("need d >= 1 and nu >= 0")
    if nu == 0:
        return 1
    return sum(
        2**j * math.comb(d, j) * math.comb(nu - 1, j - 1) for j in range(1, min(d, nu) + 1)
    )


def _check_budget(d: int, count: int, budget: Budget) -> None:
    if d > budget.max_dimension:
        raise ResourceError(f"dimension {d} exceeds budget {budget.max_dimension}")
    if count > budget.max_elements:
        raise ResourceError(f"{count} indices exceed budget {budget.max_elements}")


def _block_rows(d: int, nu: int) -> list[MultiIndex]:
    if d == 1:
        return [(-nu,), (nu,)] if nu else [(0,)]
    rows = []
    for first in range(-nu, nu + 1):
        for rest in _block_rows(d - 1, nu - abs(first)):
            rows.append((first,) + rest)
    return rows


def enumerate_block(d: int, nu: int, budget: Budget = DEFAULT_BUDGET) -> list[MultiIndex]:
    """All ``k`` in Z^d with ``|k|_1 = nu`` in lexicographic order."""
    if d < 1 or nu < 0:
        raise ValueError("need d >= 1 and nu >= 0")
    _check_budget(d, block_count(d, nu), budget)
    return _block_rows(d, nu)


def enumerate_ball(d: int, cutoff: int, budget: Budget = DEFAULT_BUDGET) -> np.ndarray:
    """Integer array of all indices with ``|k|_1 <= cutoff``, block by block."""
    total = sum(block_count(d, nu) for nu in range(cutoff + 1))
    _check_budget(d, total, budget)
    if d == 1:
        nu = np.arange(1, cutoff + 1)
        rows = np.empty((2 * cutoff + 1, 1), dtype=np.int64)
        rows[0, 0] = 0
        rows[1::2, 0] = -nu
        rows[2::2, 0] = nu
        return rows
    blocks = [np.array(_block_rows(d, nu), dtype=np.int64) for nu in range(cutoff + 1)]
    return np.concatenate(blocks, axis=0)


@dataclass(frozen=True, eq=False)
class Spectrum:
    """Finitely stored Fourier coefficients plus a certified tail.

    ``tail_bound`` bounds ``sum_{|k|_1 > cutoff} |c_k|**tail_p``; ``majorant``
    (optional) bounds the block masses ``a_nu**tail_p`` beyond the cutoff and
    lets diagonal operators re-certify their tails.
    """

    dimension: int
    indices: np.ndarray
    coefficients: np.ndarray
    cutoff: int
    tail_bound: float = 0.0
    tail_p: float | None = None
    majorant: TailMajorant | None = None
    exact: bool = True
    y_supported: bool = False

    def __post_init__(self):
        idx = np.asarray(self.indices, dtype=np.int64).reshape(-1, self.dimension)
        coef = np.asarray(self.coefficients, dtype=complex).reshape(-1)
        if self.dimension < 1:
            raise ValueError("dimension must be >= 1")
        if len(idx) != len(coef):
            raise ValueError("indices and coefficients differ in length")
        orders = np.abs(idx).sum(axis=1)
        if len(idx) and orders.max() > self.cutoff:
            raise ValueError("stored index beyond cutoff")
        if len(idx) and len(np.unique(idx, axis=0)) != len(idx):
            raise ValueError("duplicate multi-index")
        if self.tail_bound < 0 or math.isnan(self.tail_bound):
            raise ValueError("tail_bound must be nonnegative")
        if self.exact and self.tail_bound != 0:
            raise ValueError("exact spectrum cannot carry a tail")
        if self.y_supported and len(idx):
            mask = _y_mask(idx)
            if not mask.all():
                raise ValueError("y_supported spectrum has indices outside Y")
        # canonical order: by block, then lexicographic
        keys = [idx[:, j] for j in range(self.dimension - 1, -1, -1)] + [orders]
        perm = np.lexsort(keys) if len(idx) else np.arange(0)
        idx, coef, orders = idx[perm], coef[perm], orders[perm]
        for arr in (idx, coef, orders):
            arr.setflags(write=False)
        object.__setattr__(self, "indices", idx)
        object.__setattr__(self, "coefficients", coef)
        object.__setattr__(self, "_orders", orders)

    @classmethod
    def from_dict(
        cls,
        d: int,
        coefficients: Mapping[Sequence[int], complex],
        cutoff: int | None = None,
        **kwargs,
    ) -> "Spectrum":
        keys = [tuple(int(j) for j in k) for k in coefficients]
        if any(len(k) != d for k in keys):
            raise ValueError("multi-index dimension mismatch")
        if cutoff is None:
            cutoff = max((order(k) for k in keys), default=0)
        idx = np.array(keys, dtype=np.int64).reshape(-1, d)
        coef = np.array(list(coefficients.values()), dtype=complex)
        return cls(d, idx, coef, cutoff, **kwargs)

    @classmethod
    def empty(cls, d: int, cutoff: int = 0) -> "Spectrum":
        return cls(d, np.zeros((0, d), dtype=np.int64), np.zeros(0, dtype=complex), cutoff)

    @property
    def orders(self) -> np.ndarray:
        return self._orders

    def __len__(self) -> int:
        return len(self.coefficients)

    def as_dict(self) -> dict[MultiIndex, complex]:
        return {tuple(int(j) for j in k): complex(c) for k, c in zip(self.indices, self.coefficients)}

    def replace(self, **changes) -> "Spectrum":
        fields = dict(
            dimension=self.dimension,
            indices=self.indices,
            coefficients=self.coefficients,
            cutoff=self.cutoff,
            tail_bound=self.tail_bound,
            tail_p=self.tail_p,
            majorant=self.majorant,
            exact=self.exact,
            y_supported=self.y_supported,
        )
        fields.update(changes)
        return Spectrum(**fields)

    def tail_for(self, p: float) -> tuple[float, TailMajorant | None]:
        """Tail bound and majorant valid for exponent ``p``."""
        if self.exact:
            return 0.0, None
        if self.tail_p is None or math.isinf(self.tail_bound):
            return math.inf, None
        if p == self.tail_p:
            return self.tail_bound, self.majorant
        if p > self.tail_p:
            # l^{p0} embeds contractively in l^p for p >= p0
            return self.tail_bound ** (p / self.tail_p), None
        raise TailMismatchError(f"tail certified for p={self.tail_p}, cannot convert to p={p}")


def _y_mask(idx: np.ndarray) -> np.ndarray:
    return (idx >= 0).all(axis=1) | (idx < 0).all(axis=1)


@dataclass(frozen=True, eq=False)
class BlockProfile:
    """Block norms ``a_0..a_N`` in S^p with a certified tail for ``nu > N``."""

    p: float
    values: np.ndarray
    tail_bound: float = 0.0
    majorant: TailMajorant | None = None
    d: int = 1
    y_supported: bool = False

    def __post_init__(self):
        if self.p < 1:
            raise ValueError("p must be >= 1")
        vals = np.array(self.values, dtype=float).reshape(-1)
        if len(vals) == 0:
            raise ValueError("profile needs at least a_0")
        if (vals < 0).any() or not np.isfinite(vals).all():
            raise ValueError("block norms must be finite and nonnegative")
        if self.tail_bound < 0 or math.isnan(self.tail_bound):
            raise ValueError("tail_bound must be nonnegative")
        vals.setflags(write=False)
        object.__setattr__(self, "values", vals)

    @classmethod
    def from_majorant(cls, p, values, majorant, **kwargs) -> "BlockProfile":
        values = np.asarray(values, dtype=float)
        tail = majorant.sum(len(values)) if majorant is not None else math.inf
        return cls(p, values, tail, majorant, **kwargs)

    @property
    def cutoff(self) -> int:
        return len(self.values) - 1

    @property
    def orders(self) -> np.ndarray:
        return np.arange(len(self.values), dtype=float)

    @property
    def certified(self) -> bool:
        return math.isfinite(self.tail_bound)

    def replace(self, **changes) -> "BlockProfile":
        fields = dict(
            p=self.p,
            values=self.values,
            tail_bound=self.tail_bound,
            majorant=self.majorant,
            d=self.d,
            y_supported=self.y_supported,
        )
        fields.update(changes)
        return BlockProfile(**fields)

    def power_sum(self, weights=None) -> float:
        """Compensated ``sum_nu (w_nu a_nu)**p`` over stored blocks."""
        terms = self.values if weights is None else self.values * weights
        return math.fsum(terms**self.p)


def profile_of(f: Spectrum, p: float) -> BlockProfile:
    """Block profile of a spectrum in S^p."""
    if p < 1:
        raise ValueError("p must be >= 1")
    tail, majorant = f.tail_for(p)
    mags = np.abs(f.coefficients) ** p
    sums = np.zeros(f.cutoff + 1)
    if len(mags):
        bounds = np.flatnonzero(np.diff(f.orders)) + 1
        starts = np.concatenate(([0], bounds))
        for start, chunk in zip(starts, np.split(mags, bounds)):
            sums[f.orders[start]] = math.fsum(chunk) if len(chunk) > 1 else chunk[0]
    return BlockProfile(p, sums ** (1.0 / p), tail, majorant, f.dimension, f.y_supported)


def sp_norm(f: Union[Spectrum, BlockProfile], p: float | None = None) -> Interval:
    """The S^p norm as ``[lower, upper]`` using the certified tail."""
    if isinstance(f, BlockProfile):
        if p is not None and p != f.p:
            raise ValueError(f"profile computed for p={f.p}, not p={p}")
        return Interval.from_power_sums(f.power_sum(), f.tail_bound, f.p)
    if p is None:
        raise ValueError("p is required for a spectrum")
    if p < 1:
        raise ValueError("p must be >= 1")
    tail, _ = f.tail_for(p)
    head = math.fsum(np.abs(f.coefficients) ** p)
    return Interval.from_power_sums(head, tail, p)


def _shift_tail(tail: float, majorant: TailMajorant | None, cutoff: int, h: float, p: float) -> float:
    # |1 - e^{i h s}| <= min(|h| nu, 2) since |s(k)| <= |k|_1
    if majorant is None:
        return 2.0**p * tail
    h = abs(h)
    knee = math.floor(2.0 / h)
    near = 0.0
    if knee > cutoff:
        near = h**p * majorant.times_power(p).sum(cutoff + 1, knee)
    far = 2.0**p * majorant.sum(max(cutoff, knee) + 1)
    return min(near + far, 2.0**p * tail)


def shift_multiplier(theta) -> np.ndarray:
    """``|1 - exp(i theta)| = |2 sin(theta / 2)|``."""
    return np.abs(2.0 * np.sin(np.asarray(theta, dtype=float) / 2.0))


def shift_difference_norm(f: Spectrum, h: float, p: float, form: str = "auto") -> Interval:
    """``||f - f_h||_{S^p}`` for the diagonal shift ``x -> x + h (1, ..., 1)``.

    ``form`` selects the evaluation: ``"general"`` uses the signed index sums
    ``s(k)``; ``"sine"`` uses block norms and is exact only for Y-supported
    spectra; ``"auto"`` picks ``"sine"`` when the spectrum is Y-supported.
    """
    if form == "auto":
        form = "sine" if f.y_supported else "general"
    if h == 0:
        return Interval(0.0, 0.0)
    tail, majorant = f.tail_for(p)
    if form == "general":
        s = f.indices.sum(axis=1).astype(float)
        terms = (np.abs(f.coefficients) * shift_multiplier(h * s)) ** p
        head = math.fsum(terms)
    elif form == "sine":
        if not f.y_supported:
            raise ValueError("sine form requires a Y-supported spectrum")
        prof = profile_of(f, p)
        head = prof.power_sum(shift_multiplier(h * prof.orders))
    else:
        raise ValueError(f"unknown form {form!r}")
    return Interval.from_power_sums(head, _shift_tail(tail, majorant, f.cutoff, h, p), p)


def project_Y(f: Spectrum) -> Spectrum:
    """Zero every coefficient whose index lies outside Y."""
    mask = _y_mask(f.indices) if len(f) else np.zeros(0, dtype=bool)
    return f.replace(indices=f.indices[mask], coefficients=f.coefficients[mask], y_supported=True)
