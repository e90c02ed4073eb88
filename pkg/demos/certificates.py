"""The dual values are a certificate: no oracle is needed to bound the ratio.

Every run returns an edge packing (the delta values).  Its total is a lower
bound on any cover, so cover_weight / sum(delta) bounds the true ratio from
above even on instances too large to brute force.
"""

from fractions import Fraction

from mwhvc import make_params, run
from mwhvc.generators import gen_random_rank
from mwhvc.verify import certificate, check_ratio

for n in (50, 200, 1000):
    h = gen_random_rank(n, 3 * n, 4, 100, seed=n)
    for eps in ("1/10", "1"):
        p = make_params(h, eps)
        r = run(h, p, record_deals=False)
        cert = certificate(r)
        rep = check_ratio(h, cert, p.epsilon, p.f)
        ratio = Fraction(cert.cover_weight) / cert.dual_sum
        print(f"n={n:5d} eps={eps:>4}  iterations={r.iterations:3d}  "
              f"cover={cert.cover_weight:6d}  dual={float(cert.dual_sum):10.2f}  "
              f"ratio<={float(ratio):.3f}  (f+eps={float(p.f + p.epsilon):.1f})  ok={rep.ok}")
