# %% [markdown]
# # Magnus expansions of free-group words
#
# Each generator `a` goes to `1 + a` in a ring of non-commuting power series,
# cut off at a degree bound. A word's expansion is the product of its letters'
# images, and an inverse letter becomes a geometric series.

# %%
from freefilt import Alphabet, ZZ, integers_mod, magnus_expand, parse

AB = Alphabet.standard(2)

for text in ["a", "a^-1", "[a,b]", "[[a,b],a]", "a^4"]:
    w = parse(AB, text)
    print(f"{text:>10}  ->  {magnus_expand(w, ZZ, 4)}")

# %% [markdown]
# A commutator starts at degree 2 and a double commutator at degree 3, which
# is the pattern the lower central series criterion reads off.
# Over Z/8 the coefficients of a^4 (4, 6, 4, 1) reduce mod 8:

# %%
print(magnus_expand(parse(AB, "a^4"), integers_mod(8), 5))

# %% [markdown]
# The expansion is multiplicative, so expanding a product equals multiplying
# the expansions.

# %%
u, v = parse(AB, "a b^-1 a"), parse(AB, "[b,a] a^2")
lhs = magnus_expand(u * v, ZZ, 5)
rhs = magnus_expand(u, ZZ, 5) * magnus_expand(v, ZZ, 5)
print("multiplicative:", lhs == rhs)
