# %% [markdown]
# The glued graphs F(126) and F(115), and the knotted-link search on them.
#
# Each copy of F gets a certified-knotted cycle through its a-b-c path.
# Collapsing those cycles leaves K6 (resp. K3,3,1) on the labelled
# vertices; its linked pair is expanded back, giving a two-component link
# with a knotted component.

# %%
import time

from linklab import build_F, build_F115, build_F126, random_embedding, theorem1_pipeline
from linklab.io import load_fixture
from linklab.linkhunt import f115_pipeline, find_knotted_cycle_through_path

# %%
f = build_F()
g126, g115 = build_F126(f), build_F115(f)
print("F:", f.graph.n, "vertices;", "F126:", g126.n, "F115:", g115.n)

# %%
t = time.perf_counter()
report = theorem1_pipeline(random_embedding(g126, seed=0), budget_per_copy=400)
print(report.stages, report.checksums, "certificates used:", report.budget_consumed,
      f"({time.perf_counter() - t:.2f}s)")

# %%
report = f115_pipeline(random_embedding(g115, seed=1), budget_per_copy=400)
print(report.stages, report.checksums)

# %% [markdown]
# The hand-built D4 ring scene: cycles 1, 3 and 2, 4 are linked pairs, so
# some cycle through a-b-c is knotted.

# %%
search = find_knotted_cycle_through_path(load_fixture("d4_ring"), (0, 14, 11), 15, budget=16)
print("found:", search.found, "cycle:", search.cycle)
print("determinants searched:", [d for _, d in search.log])

# %% [markdown]
# With no budget nothing is certified and every stage is inconclusive,
# which is never reported as a contradiction.

# %%
print(theorem1_pipeline(random_embedding(g126, seed=0), 0).stages)
