#!/usr/bin/env python3
"""Orbit size for two tilted planes, as tilt angle and tolerance vary.

Alternating projections between two planes in R^3 that share a line
converge to that line at rate cos^2(angle) per round trip.  The induced
orbit is therefore always finite, but its size grows like
log(tol) / log(cos^2 angle) as the tilt shrinks or the state tolerance
tightens.  This prints measured orbit sizes next to that estimate; it
makes no assertions.
"""

import argparse
import math

import numpy as np

from gqt.errors import OrbitCapExceeded
from gqt.quantum import DensityState, Projector, close_orbit


def two_plane_system(angle):
    e0 = np.array([1, 0, 0], dtype=complex)
    e1 = np.array([0, 1, 0], dtype=complex)
    tilted = np.array([0, math.cos(angle), math.sin(angle)], dtype=complex)
    p = Projector(np.outer(e0, e0.conj()) + np.outer(e1, e1.conj()))
    q = Projector(np.outer(e0, e0.conj()) + np.outer(tilted, tilted.conj()))
    vec = (e0 + e1) / math.sqrt(2)
    seed = DensityState(np.outer(vec, vec.conj()))
    return seed, [("P", p), ("Q", q)]


def orbit_size(angle, tol, cap):
    seed, props = two_plane_system(angle)
    try:
        orbit = close_orbit([seed], props, cap=cap, tol=tol)
    except OrbitCapExceeded:
        return None
    return len(orbit.model.space)


def chain_estimate(angle, tol):
    # steps until the off-axis component falls below tol
    return math.ceil(math.log(tol) / (2.0 * math.log(math.cos(angle))))


def main(argv=None):
    parser = argparse.ArgumentParser(description=__doc__)
    parser.add_argument("--cap", type=int, default=4096, help="orbit cap (default 4096)")
    parser.add_argument(
        "--angles", type=float, nargs="*", default=[1.2, 0.9, 0.7, 0.5, 0.35, 0.25]
    )
    parser.add_argument("--tols", type=float, nargs="*", default=[1e-6, 1e-9, 1e-12])
    args = parser.parse_args(argv)

    print(f"two-plane orbit sizes, cap {args.cap} ('>' means the cap was exceeded)")
    cells = "".join(f"  tol={t:<8.0e}" for t in args.tols)
    print(f"{'angle':>7}{cells}  est. chain length")
    for angle in args.angles:
        row = [f"{angle:7.3f}"]
        for tol in args.tols:
            n = orbit_size(angle, tol, args.cap)
            row.append(f"  {n if n is not None else '>' + str(args.cap):>12}")
        estimates = "/".join(str(chain_estimate(angle, t)) for t in args.tols)
        row.append(f"  {estimates}")
        print("".join(row))


if __name__ == "__main__":
    main()
