# %% [markdown]
# # Quadratic hyponormality of a back-stepped power
#
# The test runs through polynomials `d_n(t)` built by a three-term recursion.
# Positive quadratic hyponormality asks that every coefficient of every
# `d_n` be nonnegative.

# %%
from fractions import Fraction as F

from wshift import beta_family, c_table, d_poly, pqh_check, pqh_threshold_family, qh_window

w = beta_family(2, F(9, 10))
for n in range(3):
    print(n, d_poly(w, n))

# %% [markdown]
# Running the coefficient table with the back-step weight left as a symbol
# `x` gives each coefficient as a polynomial in `x`. The binding constraints
# sit at small `n`, which yields the threshold exactly.

# %%
for lp in range(1, 9):
    print(lp, pqh_threshold_family(lp))

# %% [markdown]
# At the threshold the table is nonnegative, with a zero coefficient marking
# the boundary. Slightly above it a coefficient turns negative, and here the
# windowed quadratic hyponormality test fails as well.

# %%
print(pqh_check(w))
print(pqh_check(beta_family(2, F(91, 100))))
print(qh_window(beta_family(2, F(91, 100)), 10))
print(min(v for _, _, v in c_table(w, 20).entries()))
