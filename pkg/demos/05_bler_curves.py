"""BLER of half-rate length-1296 codes built from G6L and G6H.

Both codes use the same block length, rate and exact BEC(0.5)
construction; they differ only in the size-3 factor.  With SC decoding on
BPSK-AWGN the G6H code, whose kernel has the larger exponent, has much
lower error rates as the SNR grows.  Pass a trial count to tighten the
estimates (the default of 2000 per point takes under a minute).
"""

import sys

from polarkit import construct_code, run_sweep
from polarkit.polar import write_csv

trials = int(sys.argv[1]) if len(sys.argv) > 1 else 2000
grid = [1.0, 2.0, 3.0, 4.0]

curves = {}
for expr in ("G6L^4", "G6H^4"):
    spec = construct_code(expr, 0.5, 0.5)
    print(f"{expr}: N={spec.block_length}, K={spec.info_positions.size}")
    curves[expr] = run_sweep(spec, "awgn", grid, trials, master_seed=1)
    write_csv(curves[expr], f"bler_{expr.replace('^', '_')}.csv")

print(f"\n{'Eb/N0':>6}  {'G6L^4':>24}  {'G6H^4':>24}")
for lo, hi in zip(curves["G6L^4"], curves["G6H^4"]):
    fmt = lambda r: f"{r.bler:.4f} [{r.wilson_95_low:.4f},{r.wilson_95_high:.4f}]"
    print(f"{lo.param:>6.1f}  {fmt(lo):>24}  {fmt(hi):>24}")
