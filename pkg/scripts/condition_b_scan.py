"""Tabulate condition B ratios for a few moduli."""

import argparse

import numpy as np

from splab.moduli import Modulus, check_basic_conditions, check_condition_B

MODULI = {
    "power(0.1)": Modulus.power(0.1),
    "power(0.5)": Modulus.power(0.5),
    "power(1)": Modulus.power(1.0),
    "power_log(0.5,0.5)": Modulus.power_log(0.5, 0.5),
    "power_log(1,-1)": Modulus.power_log(1.0, -1.0),
    "inverse_log": Modulus.inverse_log(),
}


def main():
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--jmax", type=int, default=16, help="largest n = 2**jmax")
    args = parser.parse_args()
    grid = [2**j for j in range(2, args.jmax + 1)]
    print(f"{'modulus':<20} {'1)-4)':<8} {'B':<6} {'trend':>8}  ratios at n = 4, 2**8, 2**{args.jmax}")
    for name, omega in MODULI.items():
        basic = check_basic_conditions(omega)
        rep = check_condition_B(omega, grid)
        r = np.asarray(rep.ratios)
        print(
            f"{name:<20} {basic.verdict:<8} {rep.verdict:<6} {rep.details['trend_slope']:8.4f}"
            f"  {r[0]:.4f}, {r[min(6, len(r) - 1)]:.4f}, {r[-1]:.4f}"
        )


if __name__ == "__main__":
    main()
