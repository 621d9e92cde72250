"""
Two-level multiplicities on a bit-flip channel
==============================================

The hard decision of each symbol gets ``m0`` and its ``m`` one-bit
neighbours get ``t * m0``.  The guaranteed radius as a function of ``t``
peaks where a line through ``(1, N)`` touches a hyperbola.
"""

import numpy as np

from rsasd import rs_code, bsc_optimal, bsc_radius_at
from rsasd.regions import baseline_radii, gs_radius

## Sweep t for RS(255, 55)
params = rs_code(255, 55, 8)
t = np.round(np.arange(0, 1, 1e-3), 3)
radius = bsc_radius_at(params, t)
best = int(np.argmax(radius))
sol = bsc_optimal(params)
base = baseline_radii(params)
print(f"grid optimum t={t[best]} radius={radius[best]:.2f}")
print(f"tangent      t={sol.t_star:.4f} radius={sol.d:.2f}")
print(f"BM {base['bm_errors']}, GS {base['gs_errors']}, ASD {sol.d_floor}")

## A coarse look at the curve
for tt in (0.0, 0.1, 0.18, 0.3, 0.5, 0.7, 0.9):
    print(f"  t={tt:<4} {bsc_radius_at(params, tt):7.2f}")

## Gain over GS across rates
print("\nK     floor(d)  GS   gain  t*      note")
for k in (239, 223, 191, 167, 128, 77, 55, 30, 29):
    p = rs_code(255, k, 8)
    s = bsc_optimal(p)
    note = "all errors" if s.full_correction else ("" if s.certified else "t* > 1/2")
    print(f"{k:<5} {s.d_floor:<9} {gs_radius(p):<4} {s.d_floor - gs_radius(p):<5} "
          f"{s.t_star:.3f}   {note}")

## First-order approximation at high rate
for k in (223, 239, 251):
    s = bsc_optimal(rs_code(255, k, 8))
    print(f"K={k}: d={s.d:.3f}  approx={s.d_tilde:.3f}")
