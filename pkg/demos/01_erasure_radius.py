"""
Bit-erasure radius of proportional assignment
=============================================

How many erased bits can a Reed-Solomon code absorb when every candidate of
a partially erased symbol gets a multiplicity proportional to its
probability?  We compare the closed forms with the exact search, look at
the coded-modulation variant and bracket the exact frame error rate.
"""

import numpy as np

from rsasd import rs_code, bec_radius, bec_radius_oracle, mod_radius, fer_bounds, exact_fer_bec
from rsasd.regions import baseline_radii

## Radius against rate for N = 255
print("K     asd  (branch)    oracle  bm")
for k in (239, 223, 191, 129, 128, 100, 77, 65):
    params = rs_code(255, k, 8)
    r = bec_radius(params)
    print(f"{k:<5} {r.e_star:<4} {r.branch:<11} {bec_radius_oracle(params):<7} "
          f"{baseline_radii(params)['bm_erasures']}")

## The even spread is the worst case
params = rs_code(255, 239, 8)
r = bec_radius(params)
print("\nworst pattern at the radius:", r.pattern.counts[:3], "eta =", float(r.pattern.eta()))

## Erasure events on u-bit modulation symbols
for u in (1, 2, 4, 8):
    print(f"u={u}: {mod_radius(params, u)} events (symbol erasure decoding: {255 - 239})")

## Exact FER and its bounds
print("\neps      lower      exact      upper")
for eps in np.linspace(0.005, 0.03, 6):
    b = fer_bounds(params, eps)
    print(f"{eps:.3f}  {b['lower']:.3e}  {exact_fer_bec(params, eps):.3e}  {b['upper']:.3e}")
