"""Solve a small weighted set cover through the hypergraph reduction.

Subsets become vertices and elements become edges, so the rank is the
maximum element frequency.
"""

from mwhvc import from_set_cover, make_params, run
from mwhvc.generators import gen_set_cover_random
from mwhvc.verify import brute_force_opt

s = gen_set_cover_random(n_elements=15, m=8, f=3, weight_max=9, seed=7)
for i, (w, xs) in enumerate(s.subsets):
    print(f"S{i}: w={w} {sorted(xs)}")

h = from_set_cover(s)
p = make_params(h, epsilon="1/2")
r = run(h, p)
opt, witness = brute_force_opt(h)

print(f"\nf = {h.stats.f}, chosen subsets {list(r.cover)} weight {r.cover_weight}")
print(f"optimum {opt} via {list(witness)}; guarantee (f+eps)*opt = {(p.f + p.epsilon) * opt}")
assert s.is_cover(r.cover)
