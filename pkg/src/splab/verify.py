"""Identity and cross-check suite behind ``splab verify``."""

from __future__ import annotations

import contextlib
import time
from dataclasses import asdict, dataclass
from typing import Callable, Iterator

import numpy as np

from . import calculus, oracle, summation
from .calculus import PoissonParams
from .spectrum import BlockProfile, Spectrum, block_count, enumerate_ball, enumerate_block, profile_of
from .summation import SummationMethod


@dataclass(frozen=True)
class Check:
    name: str
    passed: bool
    value: float
    tolerance: float
    seconds: float = 0.0


def rho_grid_99() -> list[float]:
    return [j / 100 for j in range(1, 100)]


def random_exact_spectrum(rng: np.random.Generator, d: int, cutoff: int, density: float = 0.6) -> Spectrum:
    """Random complex coefficients on a random subset of the l1 ball."""
    idx = enumerate_ball(d, cutoff)
    keep = rng.random(len(idx)) < density
    keep[rng.integers(len(idx))] = True
    idx = idx[keep]
    coef = rng.normal(size=len(idx)) + 1j * rng.normal(size=len(idx))
    return Spectrum(d, idx, coef, cutoff)


def random_method(rng: np.random.Generator, cutoff: int) -> list[SummationMethod]:
    n = int(rng.integers(1, cutoff + 2))
    rho = float(rng.uniform(0.05, 0.95))
    return [
        SummationMethod.partial(n),
        SummationMethod.fejer(n),
        SummationMethod.abel_poisson(rho, float(rng.choice([1.0, 1.5, 2.0]))),
        SummationMethod.taylor(rho, int(rng.integers(1, 5))),
    ]


def relative_gap(a: float, b: float) -> float:
    scale = max(abs(a), abs(b))
    return 0.0 if scale == 0.0 else abs(a - b) / scale


def oracle_agreement(count: int = 100, seed: int = 0, max_d: int = 3) -> dict[str, float]:
    """Worst relative gap between approximation_error and naive_error per method."""
    rng = np.random.default_rng(seed)
    worst: dict[str, float] = {}
    for _ in range(count):
        d = int(rng.integers(1, max_d + 1))
        cutoff = int(rng.integers(1, {1: 60, 2: 12, 3: 6}[d] + 1))
        p = float(rng.choice([1.0, 1.5, 2.0, 3.0]))
        f = random_exact_spectrum(rng, d, cutoff)
        prof = profile_of(f, p)
        for method in random_method(rng, cutoff):
            main = summation.approximation_error(method, prof).upper
            ref = oracle.naive_error(method, f, p)
            worst[method.tag] = max(worst.get(method.tag, 0.0), relative_gap(main, ref))
    return worst


def random_profile(rng: np.random.Generator, length: int = 1000, p: float = 2.0) -> BlockProfile:
    return BlockProfile(p, rng.random(length) * np.exp(-0.01 * np.arange(length)))


def two_route_gap(prof: BlockProfile, r: int, rho_grid) -> float:
    """Composed route against ``rho**r`` times the radial derivative norm."""
    worst = 0.0
    for rho in rho_grid:
        composed = calculus.poisson_of_bracket_derivative_norm(prof, PoissonParams(rho, r)).upper
        radial = rho**r * calculus.poisson_radial_derivative_norm(prof, PoissonParams(rho, r)).upper
        worst = max(worst, relative_gap(composed, radial))
    return worst


def fd_convergence(r: int, rho: float = 0.5, step: float = 1e-3) -> float:
    """Ratio of finite-difference discrepancies at ``step/2`` and ``step``."""
    prof = BlockProfile(2.0, 0.9 ** np.arange(40.0))
    exact = calculus.poisson_radial_derivative_norm(prof, PoissonParams(rho, r)).upper
    coarse = abs(oracle.fd_radial_derivative(prof, r, rho, step) - exact)
    fine = abs(oracle.fd_radial_derivative(prof, r, rho, step / 2) - exact)
    return fine / coarse


@contextlib.contextmanager
def injected_fault(name: str | None) -> Iterator[None]:
    """Temporarily corrupt the main path (mutation check for the suite)."""
    if name is None:
        yield
        return
    if name != "lambda_short":
        raise ValueError(f"unknown fault {name!r}")
    original = summation._lambda_terms

    def short(nu, r, rho):
        return original(nu, max(r - 2, 0), rho) if r > 2 else np.zeros((1, len(nu)))

    summation._lambda_terms = short
    try:
        yield
    finally:
        summation._lambda_terms = original


def _timed(name: str, tol: float, fn: Callable[[], float], passes: Callable[[float], bool] | None = None) -> Check:
    start = time.perf_counter()
    value = float(fn())
    ok = passes(value) if passes else value <= tol
    return Check(name, bool(ok), value, tol, round(time.perf_counter() - start, 3))


def _identity8(lo: int, hi: int, grid) -> float:
    return max(summation.verify_identity_8(nu, grid).max_error for nu in range(lo, hi + 1))


def _inequality12(r: int, top: int, grid) -> float:
    return max(summation.verify_inequality_12(nu, r, grid).max_error for nu in range(r, top + 1))


def _lambda_complement(r: int, grid) -> float:
    nu = np.arange(r, 2001, dtype=float)
    worst = 0.0
    for rho in grid:
        lam, comp = summation.taylor_pair(nu, r, rho)
        worst = max(worst, float(np.abs(lam + comp - 1.0).max()))
    return worst


def _taylor_abel(grid, top: int) -> float:
    worst = 0.0
    for rho in grid:
        a = summation.multipliers(SummationMethod.abel_poisson(rho, 1.0), top)
        t = summation.multipliers(SummationMethod.taylor(rho, 1), top)
        worst = max(worst, float(np.abs(a.values - t.values).max()), float(np.abs(a.complements - t.complements).max()))
    return worst


def _taylor_oracle(r: int, grid) -> float:
    worst = 0.0
    for rho in grid:
        row = summation.multipliers(SummationMethod.taylor(rho, r), 120)
        for nu in range(121):
            ref = oracle.naive_complement(SummationMethod.taylor(rho, r), nu)
            worst = max(worst, relative_gap(row.complements[nu], ref))
    return worst


def _block_counts(top_d: int, top_nu: int) -> float:
    bad = sum(block_count(d, nu) != len(enumerate_block(d, nu)) for d in range(1, top_d + 1) for nu in range(top_nu + 1))
    return float(bad)


def _phase_invariance() -> float:
    from .families import FamilySpec

    fam = FamilySpec("geometric", d=2, q=0.6)
    plain = profile_of(fam.spectrum(2.0, 20), 2.0).values
    rotated = profile_of(fam.spectrum(2.0, 20, seed=7), 2.0).values
    return float(np.abs(plain - rotated).max() / plain.max())


def _series(name: str, main: float, **params) -> float:
    ref = oracle.series_reference(name, **params)
    return abs(main - ref.value) - ref.error_bound


def run_checks(quick: bool = False, fault: str | None = None) -> list[Check]:
    """Run the suite; ``quick`` keeps only cheap representatives."""
    grid = rho_grid_99()
    coarse = grid[::7] if quick else grid
    top = 50 if quick else 200
    checks: list[Check] = []
    with injected_fault(fault):
        chunks = [(0, top)] if quick else [(0, 50), (51, 100), (101, 150), (151, 200)]
        for lo, hi in chunks:
            checks.append(_timed(f"binomial_identity_nu_{lo}_{hi}", 1e-11, lambda: _identity8(lo, hi, grid)))
        for r in range(1, 6):
            checks.append(_timed(f"tail_inequality_r{r}", 1e-12, lambda: _inequality12(r, top, grid)))
        for r in range(2, 6):
            checks.append(_timed(f"lambda_plus_complement_r{r}", 1e-14, lambda: _lambda_complement(r, coarse)))
        checks.append(_timed("taylor1_equals_abel1", 1e-15, lambda: _taylor_abel(coarse, 10**3 if quick else 10**4)))
        for r in range(2, 5):
            checks.append(_timed(f"taylor_multiplier_oracle_r{r}", 1e-12, lambda: _taylor_oracle(r, coarse[::3])))
        prof = random_profile(np.random.default_rng(1))
        for r in range(1, 4):
            checks.append(_timed(f"poisson_two_routes_r{r}", 1e-12, lambda: two_route_gap(prof, r, coarse)))
        for r in range(1, 4):
            checks.append(
                _timed(f"fd_second_order_r{r}", 0.3, lambda: fd_convergence(r), lambda v: 0.2 <= v <= 0.3)
            )
        start = time.perf_counter()
        worst = oracle_agreement(20 if quick else 100)
        spent = round((time.perf_counter() - start) / 4, 3)
        for tag in ("partial", "fejer", "abel_poisson", "taylor"):
            value = float(worst[tag])
            checks.append(Check(f"oracle_agreement_{tag}", value <= 1e-12, value, 1e-12, spent))
        checks.append(_timed("block_count_enumeration", 0.0, lambda: _block_counts(4, 12 if quick else 40)))
        checks.append(_timed("phase_invariance", 1e-14, _phase_invariance))
        if not quick:
            checks.append(_timed("series_geometric", 0.0, lambda: _series("geometric_block_sum", 2.0)))
            checks.append(_timed("series_zeta_tail", 0.0, _zeta_check))
    return checks


def _zeta_check() -> float:
    from .tails import TailMajorant

    bound = TailMajorant(1.0, -1.5, 1.0).sum(10**5 + 1)
    ref = oracle.series_reference("zeta_tail", s=1.5, n=10**5, cutoff=10**6)
    # the certified bound must cover the reference and stay within 1e-3 relative
    return 0.0 if ref.value <= bound <= ref.value * (1 + 1e-3) else 1.0


def summary(checks: list[Check]) -> dict:
    return {
        "passed": all(c.passed for c in checks),
        "count": len(checks),
        "failed": [c.name for c in checks if not c.passed],
        "checks": [asdict(c) for c in checks],
    }

