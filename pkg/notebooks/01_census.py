# %% [markdown]
# # Small-network census
#
# Every conflict digraph on up to four users, one per isomorphism class,
# analysed for its symmetric degrees of freedom.

# %%
from collections import Counter

from timmp.census import generate_census, reduction_pipeline, run_census, summary_line
from timmp.graphs import canonical_form

# %%
for n in range(1, 5):
    print(n, len(generate_census(n)))

# %% [markdown]
# Each record carries the case label, both dichromatic numbers and whether
# the achievable symmetric DoF meets the outer bound.

# %%
records = run_census(4, use_cache=False)
print(summary_line(records))
print(Counter(r.case for r in records))

# %%
for r in records[:5]:
    print(r.id, r.case, r.chi_A, r.chi_Af, r.dsym_achievable, r.dsym_outer, r.status)

# %% [markdown]
# Dropping reducible users and non-critical arcs, then perfect digraphs,
# leaves a handful of instances that need a closer look.

# %%
for d in reduction_pipeline(generate_census(4)):
    print(canonical_form(d)[0], sorted(d.arcs))
