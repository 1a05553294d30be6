# %% [markdown]
# # Side information and message passing
#
# Scalar linear index coding gives achievable rates for the same networks.
# Passing messages over a backhaul trades budget for rate.

# %%
from timmp.catalog import chordal_topology, clique_feeder_digraph, pair_feeder_digraph
from timmp.graphs import build_conflict_digraph, triangular_topology
from timmp.sic import critical_arcs, passing_is_helpful, reduce_instance
from timmp.tradeoff import breakpoints, tradeoff_curve

# %%
for d in (clique_feeder_digraph(), pair_feeder_digraph()):
    red = reduce_instance(d)
    print(red.kept, red.rate, red.case, red.certified)

# %%
d = build_conflict_digraph(chordal_topology())
for arc in sorted(d.arcs):
    v = passing_is_helpful(d, arc)
    print(arc, v.helpful, v.rate_before, v.rate_after)

# %%
for arc, label in sorted(critical_arcs(d).items()):
    print(arc, label.label)

# %% [markdown]
# Triangular network with four users: rate against passing budget.

# %%
curve = tradeoff_curve(triangular_topology(4), 6)
for p, r, X in curve:
    print(p, r, X)
print(breakpoints(curve))
