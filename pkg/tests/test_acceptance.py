"""Acceptance suite: one test and one printed PASS/FAIL line per criterion.

Under pytest the lines are repeated in the terminal summary; the module also
runs standalone with ``python3 tests/test_acceptance.py``.
"""

import time
from pathlib import Path

import numpy as np
import pytest

from splab import calculus, oracle, summation
from splab.calculus import PoissonParams
from splab.cli import main
from splab.experiments import equivalence7_experiment, proposition1_experiment, theorem1_experiment
from splab.families import FamilySpec
from splab.moduli import Modulus, check_condition_B
from splab.summation import SummationMethod
from splab.verify import oracle_agreement, random_profile, relative_gap, rho_grid_99

RHO_GRID = [1.0 - 2.0**-j for j in range(1, 15)]
SLOPE_BAND = 0.05


LINES: dict[int, str] = {}


def announce(number: int, title: str, ok: bool, detail: str) -> None:
    line = f"[acceptance {number:2d}] {'PASS' if ok else 'FAIL'}  {title}: {detail}"
    LINES[number] = line
    print(line)


@pytest.fixture(scope="module")
def family_r1():
    # a_nu = nu**-(alpha + 1/p) with alpha = 0.5, p = 2
    return FamilySpec("power", d=1, beta=0.5 + 1 / 2).spectrum(2.0, 10**5)


def test_binomial_identities():
    start = time.perf_counter()
    grid = rho_grid_99()
    ident = max(summation.verify_identity_8(nu, grid).max_error for nu in range(201))
    ineq = max(
        summation.verify_inequality_12(nu, r, grid).max_error for r in range(1, 6) for nu in range(r, 201)
    )
    seconds = time.perf_counter() - start
    ok = ident <= 1e-11 and ineq <= 1e-12 and seconds < 10
    announce(1, "binomial identity and tail inequality", ok, f"identity {ident:.2e}, violation {ineq:.2e}, {seconds:.1f}s")
    assert ok


def test_taylor_one_is_abel_one(tmp_path):
    worst = 0.0
    for rho in rho_grid_99() + RHO_GRID:
        a = summation.multipliers(SummationMethod.abel_poisson(rho, 1.0), 10**4)
        t = summation.multipliers(SummationMethod.taylor(rho, 1), 10**4)
        worst = max(worst, float(np.abs(a.values - t.values).max()))
    out1, out2 = tmp_path / "thm1", tmp_path / "thm2"
    main(["experiment", "thm1", "--r", "1", "--out", str(out1)])
    main(["experiment", "thm2", "--s", "1", "--out", str(out2)])
    same = all(
        (out1 / f"thm1_statement{k}.csv").read_bytes() == (out2 / f"thm2_statement{k}.csv").read_bytes()
        for k in (1, 2, 3)
    )
    ok = worst <= 1e-15 and same
    announce(2, "Taylor r=1 equals Abel-Poisson s=1", ok, f"row gap {worst:.1e}, CSVs identical: {same}")
    assert ok


def test_poisson_two_routes_and_fd():
    rng = np.random.default_rng(2024)
    worst = 0.0
    for r in (1, 2, 3):
        prof = random_profile(rng, 1000)
        for rho in rho_grid_99():
            composed = calculus.poisson_of_bracket_derivative_norm(prof, PoissonParams(rho, r)).upper
            radial = rho**r * calculus.poisson_radial_derivative_norm(prof, PoissonParams(rho, r)).upper
            worst = max(worst, relative_gap(composed, radial))
    orders = []
    for r in (1, 2, 3):
        prof = random_profile(rng, 200)
        exact = calculus.poisson_radial_derivative_norm(prof, PoissonParams(0.5, r)).upper
        e1 = abs(oracle.fd_radial_derivative(prof, r, 0.5, 1e-3) - exact)
        e2 = abs(oracle.fd_radial_derivative(prof, r, 0.5, 5e-4) - exact)
        orders.append(e2 / e1)
    second_order = all(0.2 <= q <= 0.3 for q in orders)
    ok = worst <= 1e-12 and second_order
    ratios = ", ".join(f"{q:.3f}" for q in orders)
    announce(3, "Poisson derivative routes", ok, f"route gap {worst:.1e}, step-halving ratios {ratios}")
    assert ok


def test_oracle_equivalence():
    start = time.perf_counter()
    worst = oracle_agreement(count=100, seed=7, max_d=3)
    seconds = time.perf_counter() - start
    ok = max(worst.values()) <= 1e-12 and seconds < 30 and len(worst) == 4
    announce(4, "approximation_error vs naive oracle", ok, f"worst rel gap {max(worst.values()):.1e}, {seconds:.1f}s")
    assert ok


def test_taylor_rates_r1(family_r1):
    start = time.perf_counter()
    out = theorem1_experiment(family_r1, 2.0, 1, Modulus.power(0.5), RHO_GRID)
    seconds = time.perf_counter() - start
    e, dpois, memb = (out.reports[k] for k in ("statement1", "statement2", "statement3"))
    ratios = np.asarray(memb.ratios)
    bounded = ratios.max() < 2 * np.median(ratios)
    ok = (
        abs(e.fitted_slope - 0.5) <= SLOPE_BAND
        and abs(dpois.fitted_slope + 0.5) <= SLOPE_BAND
        and bounded
        and seconds < 60
    )
    detail = (
        f"error slope {e.fitted_slope:.4f}, Poisson slope {dpois.fitted_slope:.4f}, "
        f"membership max/median {ratios.max() / np.median(ratios):.2f}, {seconds:.1f}s"
    )
    announce(5, "Abel-Poisson-Taylor rates, r=1", ok, detail)
    assert ok


def test_taylor_rates_r2():
    f = FamilySpec("power", d=1, beta=1.5 + 1 / 2).spectrum(2.0, 10**5)
    out = theorem1_experiment(f, 2.0, 2, Modulus.power(0.5), RHO_GRID)
    e = out.reports["statement1"]
    ok = abs(e.fitted_slope - 1.5) <= SLOPE_BAND and e.passed
    announce(6, "Abel-Poisson-Taylor rates, r=2", ok, f"error slope {e.fitted_slope:.4f}, bound verdict {e.verdict}")
    assert ok


def test_equivalence_ratio():
    prof = FamilySpec("geometric", d=2, q=0.5).profile(2.0)
    grid = [1.0 - 2.0**-j for j in (8, 10, 12)]
    rep = equivalence7_experiment(prof, 2.0, 2.0, grid)
    r8, r10, r12 = rep.ratios
    ok = 0.9 <= r10 <= 1.1 and abs(r12 - 1) < abs(r8 - 1)
    announce(7, "equivalence of error functionals", ok, f"ratios {r8:.4f}, {r10:.4f}, {r12:.4f}")
    assert ok


def test_partial_sum_fejer_coupling(family_r1):
    good = proposition1_experiment(family_r1, 2.0, Modulus.power(0.5))
    bad = proposition1_experiment(family_r1, 2.0, Modulus.power(0.9))
    a, b = good.reports["statement1"], good.reports["statement2"]
    control = not bad.reports["statement1"].passed and not bad.reports["statement2"].passed
    ok = (
        abs(a.fitted_slope - 0.5) <= SLOPE_BAND
        and abs(b.fitted_slope + 0.5) <= SLOPE_BAND
        and a.passed
        and b.passed
        and control
    )
    detail = f"A slope {a.fitted_slope:.4f}, B slope {b.fitted_slope:.4f}, power(0.9) rejected: {control}"
    announce(8, "partial-sum and Fejer coupling", ok, detail)
    assert ok


def test_condition_B_checker():
    alphas = [round(0.1 * k, 1) for k in range(1, 11)]
    powers = all(check_condition_B(Modulus.power(a)).passed for a in alphas)
    inv = check_condition_B(Modulus.inverse_log(), n_grid=[2**j for j in range(2, 17)])
    ok = powers and inv.verdict == "fail" and inv.details["strictly_increasing"]
    announce(9, "condition B checker", ok, f"power family passes: {powers}, 1/log(e/t) trend {inv.details['trend_slope']:.3f}")
    assert ok


def test_deterministic_outputs(tmp_path):
    runs = []
    for tag in ("a", "b"):
        out = tmp_path / tag
        main(["experiment", "thm1", "--cutoff", "5000", "--h-grid", "1..10", "--out", str(out)])
        main(["experiment", "equiv7", "--out", str(out)])
        runs.append({p.name: p.read_bytes() for p in sorted(Path(out).iterdir())})
    ok = runs[0] == runs[1] and len(runs[0]) == 6
    announce(10, "deterministic experiment outputs", ok, f"{len(runs[0])} files compared, identical: {runs[0] == runs[1]}")
    assert ok


if __name__ == "__main__":
    import tempfile

    fam = FamilySpec("power", d=1, beta=1.0).spectrum(2.0, 10**5)
    checks = [
        lambda: test_binomial_identities(),
        lambda: test_taylor_one_is_abel_one(Path(tempfile.mkdtemp())),
        lambda: test_poisson_two_routes_and_fd(),
        lambda: test_oracle_equivalence(),
        lambda: test_taylor_rates_r1(fam),
        lambda: test_taylor_rates_r2(),
        lambda: test_equivalence_ratio(),
        lambda: test_partial_sum_fejer_coupling(fam),
        lambda: test_condition_B_checker(),
        lambda: test_deterministic_outputs(Path(tempfile.mkdtemp())),
    ]
    failures = 0
    for check in checks:
        try:
            check()
        except AssertionError:
            failures += 1
    raise SystemExit(1 if failures else 0)
