"""Iteration counts against the analytic bound.

Stars finish in two iterations whatever the degree: the center is stuck at
once and every leaf turns tight in the next round.  Random rank-3 hypergraphs
with a small epsilon exercise the raise path more.
"""

from mwhvc import make_params, run
from mwhvc.generators import gen_random_rank
from mwhvc.suites import bench_rows

print("delta  mode     alpha   iterations  bound")
for row in bench_rows([2**k for k in range(4, 15, 2)], modes=("global", "refined")):
    print(f"{row['delta']:5d}  {row['alpha_mode']:7s}  {row['alpha_decimal']:.3f}  "
          f"{row['iterations']:10d}  {row['bound']:5d}")

print("\nrandom rank-3, eps = 1/10")
for n in (20, 80, 320, 1280):
    h = gen_random_rank(n, 4 * n, 3, 1000, seed=1)
    for mode in ("global", "local"):
        p = make_params(h, "1/10", mode)
        r = run(h, p, record_deals=False)
        print(f"n={n:5d} delta={h.stats.delta:3d} {mode:6s} iterations={r.iterations:3d} "
              f"bound={p.iteration_bound():4d} raises={sum(r.raise_counts)}")
