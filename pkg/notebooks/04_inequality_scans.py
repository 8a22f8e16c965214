# %% [markdown]
# # Inequality and unimodality scans
#
# Scans return every failing cell.  The proven inequalities are clean away
# from the boundary; the few cells listed below come from constant terms.

# %%
from qtrunc.analysis import scan_cor_ineq, scan_corn, scan_unimodal, unimodal_rows

for family in ("I", "II"):
    for which in ("nonneg", "shift_minus", "shift_plus"):
        r = scan_cor_ineq(family, which, 3, 25, 25)
        print(r.scan, r.count, r.violations)

# %%
for stat in ("JE", "JT", "JG"):
    r = scan_corn(stat, 3, 20, 20)
    print(r.scan, "violations:", r.violations)

# %% [markdown]
# The truncated three-colour rows look like this; every row scanned so far is
# unimodal.

# %%
rows = unimodal_rows(2, 8)
for n, seq in rows.items():
    print(n, seq)
print(scan_unimodal(3, 25).violations)
