# %% [markdown]
# # Verifying the identity catalog
#
# Every entry has two (sometimes three) sides built over a common working
# table.  A report records the first differing monomial, if any.

# %%
import time

import numpy as np

from qtrunc.identities import CATALOG, Budget, MonoSpec, get, sweep, verify

budget = Budget(30, (-15, 15))
rep = verify(get("MTH2"), dict(k=2, a=MonoSpec.q(1), b=MonoSpec.q(2, -1)), budget)
print(rep.to_dict())

# %% [markdown]
# Time per entry over its standard sweep, at a reduced budget.

# %%
rows = []
for tag in CATALOG:
    t0 = time.perf_counter()
    ok = all(verify(get(tag), b, budget).equal for b in sweep(tag))
    rows.append((tag, len(sweep(tag)), ok, time.perf_counter() - t0))
secs = np.array([r[3] for r in rows])
for tag, n, ok, s in sorted(rows, key=lambda r: -r[3])[:8]:
    print(f"{tag:14s} {n:3d} bindings  equal={ok}  {s:6.2f}s")
print("total", secs.sum().round(1), "s; all equal:", all(r[2] for r in rows))
