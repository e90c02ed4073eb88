"""Per-round message traffic and the bit budget of one run."""

from collections import Counter

from mwhvc import make_params, run
from mwhvc.generators import gen_random_rank

h = gen_random_rank(12, 20, 3, 50, seed=3)
r = run(h, make_params(h, "1/2"), keep_messages=True)
stats = r.messages

print(f"n={h.n} m={h.m} W={h.max_weight} f={h.stats.f}: budget {stats.budget} bits per message")
print(f"{r.iterations} iterations, {r.rounds} rounds, {stats.total_messages} messages, "
      f"widest {stats.max_bits} bits")
for kind, count in sorted(Counter(m.kind.value for m in r.ledger.messages).items()):
    print(f"  {kind:13s} {count}")
print("messages per round:", stats.to_json()["per_round"])
