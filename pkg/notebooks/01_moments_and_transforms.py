# %% [markdown]
# # Weight sequences, moments and transforms
#
# Every sequence is stored by its squared weights, and every number is a
# `Fraction`. The Bergman-tail shift has squared weights (n+2)/(n+3).

# %%
from fractions import Fraction as F

from wshift import backstep, bergman, packet, power_decompose, schur

b = bergman()
print("squared weights:", [str(s) for s in b.weights_sq(6)])
print("moments:        ", [str(g) for g in b.moments(6)])

# %% [markdown]
# A back-step prepends one squared weight. The moments of the result are
# the old ones scaled by the new weight, shifted right by one.

# %%
ext = backstep(b, F(1, 2))
print([str(g) for g in ext.moments(6)])

# %% [markdown]
# The square of a shift splits into two pieces, each a weighted shift in its
# own right, built from products of consecutive weights.

# %%
for i, piece in enumerate(power_decompose(b, 2)):
    print(f"piece {i}:", [str(s) for s in piece.weights_sq(4)])

assert packet(b, 2, 1).weights_sq(4) == power_decompose(b, 2)[1].weights_sq(4)

# %% [markdown]
# Schur products multiply weights entrywise, so moments multiply too.

# %%
sq = schur(b, b)
print([str(g) for g in sq.moments(5)])
assert all(sq.moment(n) == b.moment(n) ** 2 for n in range(20))
