# %% [markdown]
# Determinant, Arf invariant and Fox colorings for the shipped knot fixtures.
# A determinant other than 1 certifies a knot; 1 proves nothing.

# %%
import json
from importlib import resources

from linklab.invariants import certify_knotted, fox_coloring_count, gauss_code
from linklab.io import load_fixture
from linklab.spatial import gauss_data

# %%
for name in ("trefoil", "figure_eight", "trefoil_sum", "unknot_square"):
    meta = json.loads(resources.files("linklab").joinpath(f"data/{name}.json").read_text())
    e = load_fixture(name)
    d = gauss_data(e, meta["cycle"], direction=meta["direction"])
    code = gauss_code(d)
    cert = certify_knotted(code, primes=(3, 5, 7))
    print(f"{name:14s} crossings={len(d.crossings):2d} det={cert.determinant} arf={cert.arf} "
          f"{cert.verdict} colorings={cert.colorings}")

# %% [markdown]
# The determinant does not depend on the projection direction.

# %%
e = load_fixture("figure_eight")
print([certify_knotted(gauss_data(e, tuple(range(16)), seed=s)).determinant for s in range(5)])

# %%
print(fox_coloring_count(gauss_code(gauss_data(load_fixture("trefoil"), tuple(range(12)))), 3))
