"""Step through the two-vertex instance one iteration at a time."""

from mwhvc import Hypergraph, make_params
from mwhvc.engine import init, step

h = Hypergraph(2, (1, 1), [(0, 1)])
p = make_params(h, epsilon=1)
print(f"beta = {p.beta}, alpha = {p.alpha} (~{float(p.alpha):.4f})")

state = init(h, p)
e = state.edges[0]
print(f"init: v_e = {e.min_vertex}, deal = {e.deal}, delta = {e.delta}")

while not all(e.covered for e in state.edges):
    ev = step(state)
    print(f"iteration {ev.iteration}: joins={list(ev.joins)} covered={list(ev.covered_edges)} "
          f"stuck={list(ev.stuck_vertices)} raises={list(ev.raises)} delta={e.delta}")

print("cover:", list(state.cover))
