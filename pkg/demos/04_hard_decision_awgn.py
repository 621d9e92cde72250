"""
Frame error rate after hard decisions on AWGN
=============================================

BPSK over AWGN followed by a hard decision is a binary symmetric channel.
For RS(15, 3) we compare the optimal two-level assignment with GS and
bounded-distance decoding, first exactly and then by simulation.
"""

import numpy as np

from rsasd import rs_code, Strategy, TrialConfig, run_fer
from rsasd.channels import ChannelSpec
from rsasd.sim import exact_fer_flip, qawgn_crossover

params = rs_code(15, 3, 4)
names = ("bsc_opt", "gs", "bm")
strategies = {n: Strategy.parse(n) for n in names}
print("two-level coefficient:", strategies["bsc_opt"].resolve(params).t)

## Exact curves
db = np.arange(2.0, 11.01, 1.0)
p = qawgn_crossover(db, params.rate)
print("\nEb/N0   p        ASD        GS         HDD")
for d, pi in zip(db, p):
    row = [exact_fer_flip(params, pi, strategies[n]) for n in names]
    print(f"{d:5.1f}  {pi:.4f}  " + "  ".join(f"{v:.3e}" for v in row))

## Monte Carlo at one point
pi = float(qawgn_crossover(6.0, params.rate))
for n in names:
    est = run_fer(TrialConfig(params, ChannelSpec.bsc(pi), strategies[n], 100_000, seed=1))
    print(f"{n:8s} fer={est.fer:.2e}  95% CI [{est.ci_lo:.2e}, {est.ci_hi:.2e}]")
