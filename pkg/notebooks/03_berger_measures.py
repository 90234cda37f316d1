# %% [markdown]
# # Berger measures
#
# Measures here are finite sums of atoms and monomial densities `a t^q dt`
# on [0, 1], which is enough to carry every transform exactly.

# %%
from fractions import Fraction as F

from wshift import (
    backstep_measure,
    backstep_subnormal_threshold,
    monomial_density,
    multi_backstep_check,
    piece_measure,
    power_backstep_subnormal_threshold,
    pushforward_power,
)

mu = monomial_density(2, 1)  # 2t dt, the Bergman-tail measure
print(pushforward_power(mu, 2))
print(piece_measure(mu, 2, 1))

# %% [markdown]
# A back-step stays subnormal while `s <= 1 / integral(1/t dmu)`. The new
# measure puts the leftover mass at the origin.

# %%
print(backstep_subnormal_threshold(mu))
print(backstep_measure(mu, F(1, 4)))

# %% [markdown]
# The threshold for powers does not move for this family.

# %%
print([str(power_backstep_subnormal_threshold(mu, lp)) for lp in range(1, 9)])

# %% [markdown]
# Two back-steps need `1/t^2` to be integrable, which fails for `2t dt` but
# holds for `3t^2 dt`.

# %%
print(multi_backstep_check(mu, [F(1, 2), F(1, 3)]))
print(multi_backstep_check(monomial_density(3, 2), [F(2, 3), F(1, 2)]))
