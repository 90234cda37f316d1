# %% [markdown]
# # How far can a back-step go?
#
# For a subnormal base, prepending a squared weight `s` keeps the shift
# k-hyponormal exactly up to an explicit threshold. The threshold comes from a
# bordered Hankel matrix with corner `1/s`, so it is a single exact rational.

# %%
from fractions import Fraction as F

from wshift import (
    backstep,
    backstep_k_threshold,
    bergman,
    is_k_hyponormal_window,
    power_backstep_k_threshold,
)

b = bergman()
for k in range(1, 5):
    print(k, backstep_k_threshold(b, k))

# %% [markdown]
# The thresholds shrink with k. Right at the threshold every window passes;
# nudging above it breaks the very first window.

# %%
s = backstep_k_threshold(b, 2)
print(is_k_hyponormal_window(backstep(b, s), 2, 25))
print(is_k_hyponormal_window(backstep(b, s + F(1, 10**6)), 2, 25))

# %% [markdown]
# Powers of the extension tolerate a larger first weight.

# %%
print(f"{'power':>5}  {'hyponormal':>10}  {'2-hyponormal':>12}")
for lp in range(1, 9):
    h1 = power_backstep_k_threshold(b, lp, 1)
    h2 = power_backstep_k_threshold(b, lp, 2)
    print(f"{lp:>5}  {str(h1):>10}  {str(h2):>12}")
