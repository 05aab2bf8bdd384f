#!/usr/bin/env python3
"""Timing and first candidates of the symmetrizer search per family."""
import argparse
import time

from kpearson.families import FAMILIES, get_family, resolve_params, system
from kpearson.pearson import raw_system, search_symmetrizer


def main():
    ap = argparse.ArgumentParser(description=__doc__)
    ap.add_argument("--deg-bound", type=int, default=1)
    ap.add_argument("--show", type=int, default=1, help="candidates printed per family")
    ap.add_argument("families", nargs="*", default=list(FAMILIES))
    args = ap.parse_args()
    for name in args.families:
        fam = get_family(name)
        sys_ = system(fam, resolve_params(fam))
        t0 = time.perf_counter()
        cands = search_symmetrizer(raw_system(sys_), sys_, deg_bound=args.deg_bound)
        dt = time.perf_counter() - t0
        print(f"{name:20s} {len(cands):4d} candidates  {dt:6.2f}s")
        for c in cands[:args.show]:
            print(f"    S   = {c.S.to_json()['S']}")
            print(f"    Phi = {c.pair.to_json()['Phi']}  Psi = {c.pair.to_json()['Psi']}")


if __name__ == "__main__":
    main()
