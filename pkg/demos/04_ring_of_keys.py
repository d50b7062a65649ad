# %% [markdown]
# Splicing keys on a ring until the linking number is a multiple of n.
#
# L is a long rectangle; each key Z_i is a torus curve winding lk_i times
# around one of its sides.  A zero-sum window picks the keys, then pairs
# are spliced until one cycle remains (or a spliced piece already works).

# %%
from linklab.modsplice import reduce_to_multiple_of_n, sequence_table, synthetic_scene

# %%
for row in sequence_table(range(2, 10)):
    print(row)

# %%
n, targets = 6, [1, 2, 3, 4, 5, 6]
scene = synthetic_scene(n, targets, seed=0)
res = reduce_to_multiple_of_n(scene, n)
print("selected keys:", res.selected, "final lk:", res.lk, "k =", res.k, "early exit:", res.early_exit)

# %%
for step in res.history:
    if step["kind"] == "pair":
        print(step["ids"], "lk(A_i) =", step["lk_A"], "case", step["case"], "->", step["outcome"])

# %%
res = reduce_to_multiple_of_n(synthetic_scene(8, [1] * 8, seed=3), 8)
print("eight unit keys:", res.lk, "pairing depth", max(h.get("new_depth", 0) for h in res.history))
