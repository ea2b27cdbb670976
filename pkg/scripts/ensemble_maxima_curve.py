#!/usr/bin/env python3
"""Tabulate the extremal structure of diag(p, 1-p) across p.

Writes a CSV with, per p: the largest attainable ensemble nonorthogonality,
the branch that attains it, the weight of a maximally nonorthogonal pair
when one exists, and the unlocking costs at the ensemble-optimal z = 1/2.
"""

import argparse
import sys

import numpy as np

from nonortho.hidden import max_ensemble, max_ensemble_branch, max_pair_z
from nonortho.unlock import unlock_report


def main() -> int:
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--points", type=int, default=201)
    parser.add_argument("--out", default="-", help="output path, '-' for stdout")
    args = parser.parse_args()

    lines = ["p,max_ensemble,branch,max_pair_z,U_at_half,I,E_at_half,ratio_U_at_half"]
    for p in np.linspace(0.5, 1.0, args.points):
        p = float(p)
        z = max_pair_z(p)
        rep = unlock_report(p, 0.5)
        ratio = "" if rep.ratio_u is None else f"{rep.ratio_u:.12g}"
        lines.append(
            f"{p:.12g},{max_ensemble(p):.12g},{max_ensemble_branch(p)},"
            f"{'' if z is None else f'{z:.12g}'},"
            f"{rep.u_bits:.12g},{rep.i_bits:.12g},{rep.e_bits:.12g},{ratio}")
    text = "\n".join(lines) + "\n"
    if args.out == "-":
        sys.stdout.write(text)
    else:
        with open(args.out, "w") as handle:
            handle.write(text)
    return 0


if __name__ == "__main__":
    sys.exit(main())
