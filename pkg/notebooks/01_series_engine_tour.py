# %% [markdown]
# # A tour of the truncated series engine
#
# Series live over a table of variables.  The grading variable q carries the
# truncation; Laurent variables carry a window; small variables add their
# positive exponents to the weight that decides when inversion stops.

# %%
from qtrunc.qobjects import INF, inverse_pochhammer, pochhammer, q_binomial
from qtrunc.series import invert, laurent, qtable, to_text

t = qtable(12)
q = t.mono(q=1)
euler = pochhammer(q, INF, t)
print(to_text(euler))

# %% [markdown]
# Inverting the Euler product gives the partition numbers.

# %%
partitions = invert(euler)
print([partitions.coeff((n,)) for n in range(13)])

# %% [markdown]
# A bivariate table: the triple product with a small Laurent variable z.

# %%
tz = qtable(10, laurent("z", -4, 4, small=True))
qz, z = tz.mono(q=1), tz.mono(z=1)
theta = pochhammer(z, INF, tz, into=pochhammer(qz / z, INF, tz, into=pochhammer(qz, INF, tz)))
for exps, c in sorted(theta.items()):
    print(c, exps)

# %% [markdown]
# One over the triple product needs the small flag: the factor 1 - z has
# weight 1 only because z counts towards the weight.

# %%
inv = inverse_pochhammer(z, INF, tz, into=inverse_pochhammer(qz / z, INF, tz, into=inverse_pochhammer(qz, INF, tz)))
print(len(inv), "terms up to q^10")

# %% [markdown]
# Gaussian polynomials are built by recurrence and never by division.

# %%
print(to_text(q_binomial(6, 3, qtable(20))))
