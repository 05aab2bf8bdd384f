#!/usr/bin/env python3
"""Worst relative moment error of n-point Gauss rules, n = 1..nmax."""
import argparse
from fractions import Fraction

import mpmath

from kpearson.quadrature import moment_errors
from kpearson.weights import jacobi01, jacobi_sym, laguerre

WEIGHTS = {
    "legendre": jacobi_sym(0, 0),
    "jacobi_sym(1/2,-1/3)": jacobi_sym(Fraction(1, 2), Fraction(-1, 3)),
    "jacobi01(2,1/3)": jacobi01(2, Fraction(1, 3)),
    "laguerre(0)": laguerre(0),
    "laguerre(5/2)": laguerre(Fraction(5, 2)),
}


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--nmax", type=int, default=10)
    ap.add_argument("--precision", type=int, default=34)
    args = ap.parse_args()
    print(f"{'weight':24s} " + " ".join(f"{n:>9d}" for n in range(1, args.nmax + 1)))
    for name, w in WEIGHTS.items():
        errs = [max(moment_errors(w, n, args.precision)) for n in range(1, args.nmax + 1)]
        print(f"{name:24s} " + " ".join(f"{mpmath.nstr(e, 2):>9s}" for e in errs))


if __name__ == "__main__":
    main()
