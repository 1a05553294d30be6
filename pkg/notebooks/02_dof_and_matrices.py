# %% [markdown]
# # Degrees of freedom and dicycle matrices
#
# The outer region is cut out by clique and chordless-dicycle constraints.
# Its integrality is tied to the dicycle-vertex incidence matrix.

# %%
from timmp.catalog import c52_digraph, directed_cycle, j3_digraph, pentagram_digraph
from timmp.coloring import dichromatic_number, fractional_dichromatic
from timmp.dof import classify_case, dof_region, symmetric_dof
from timmp.polyhedra import circulant, find_mni_submatrix, is_ideal, projective

# %%
for K in range(2, 7):
    print(f"C_{K}", fractional_dichromatic(directed_cycle(K))[0])

# %%
for name, d in [("c52", c52_digraph()), ("j3", j3_digraph()), ("pentagram", pentagram_digraph())]:
    sym = symmetric_dof(d)
    print(name, classify_case(d).case, dichromatic_number(d)[0], fractional_dichromatic(d)[0],
          sym.achievable, sym.outer, sym.status)

# %% [markdown]
# A three-cycle's region has only 0/1 vertices: each one is an acyclic set.

# %%
for p in dof_region(directed_cycle(3)).extreme_points:
    print(tuple(str(x) for x in p))

# %% [markdown]
# Circulants ``c(n, 2)`` are ideal exactly for even ``n``.

# %%
for n in range(3, 9):
    print(f"c({n},2)", is_ideal(circulant(n, 2)).result)
print("j3", is_ideal(projective(3)).result, find_mni_submatrix(projective(3)))
