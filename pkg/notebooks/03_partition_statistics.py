# %% [markdown]
# # Partition statistics and their generating functions
#
# Each colored statistic is counted twice: by walking partitions and by
# expanding its product.  The tables agree.

# %%
import numpy as np

from qtrunc.partitions import count_Mk, alternating_p_sum, enumerate_table, gf_coefficients

for stat in ("JE", "JT", "JG"):
    same = gf_coefficients(stat, 14).counts == enumerate_table(stat, 14).counts
    print(stat, "agrees with enumeration:", same)

# %% [markdown]
# The three-colour table as an array: rows are n, columns are m.

# %%
a, off = gf_coefficients("JT", 8).array(8)
np.set_printoptions(linewidth=160)
print(a)
print("row sums", a.sum(axis=1))

# %% [markdown]
# The alternating sum of partition numbers against the brute-force count.

# %%
for k in range(1, 4):
    print(k, [alternating_p_sum(k, n) - count_Mk(k, n) for n in range(0, 12)])
