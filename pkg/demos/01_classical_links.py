# %% [markdown]
# Classical intrinsic linking, checked on random straight-line embeddings.
#
# Every embedding of K6 has an odd number of linked disjoint triangle
# pairs, every embedding of K3,3,1 links a triangle with a square, and the
# Arf invariants of the 360 Hamiltonian cycles of K7 sum to 1 mod 2.

# %%
from linklab import (cg_k6_checksum, complete_graph, find_triangle_square_k331, k331,
                     k7_arf_checksum, random_embedding)
from linklab.graphcore import disjoint_cycle_pairs
from linklab.spatial import linking_number

# %%
e = random_embedding(complete_graph(6), seed=11)
for t1, t2 in disjoint_cycle_pairs(e.host, 3, 3):
    print(t1, t2, "lk =", linking_number(e, t1, t2))
print("K6 checksum:", cg_k6_checksum(e))

# %%
e = random_embedding(k331(), seed=2)
tri, sq, lk = find_triangle_square_k331(e)
print(f"K3,3,1: triangle {tri} and square {sq} link with lk = {lk}")

# %%
for seed in range(3):
    print("K7 seed", seed, "Arf checksum:", k7_arf_checksum(random_embedding(complete_graph(7), seed)))
