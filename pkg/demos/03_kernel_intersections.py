# %% [markdown]
# # Filtration terms as kernel intersections
#
# The n-th term is also the set of words killed by every homomorphism into a
# unipotent matrix group: U_n(F_p) for p-Zassenhaus and G(n,p) for lower
# p-central. For small cases we enumerate all homomorphisms and compare them
# with the coefficient test word by word.

# %%
from freefilt import LowerPCentral, Zassenhaus
from freefilt.kerint import cross_validate

for kind in (Zassenhaus(2), LowerPCentral(2)):
    rep = cross_validate(kind, 3, 2, 6, "exhaustive")
    print(rep.summary())

# %% [markdown]
# U_n(Z) is infinite, so for the lower central series a finite "witness"
# family is used. Each witness sends generators to I + E_{1,2} + ... along the
# superdiagonal and reads one Magnus coefficient off the top-right corner.

# %%
from freefilt import LOWER_CENTRAL, Alphabet, IdealChain, hom_eval, parse
from freefilt.kerint import witness_hom

AB = Alphabet.standard(2)
phi = witness_hom((0, 1), IdealChain.lower_central(3), AB)
print(hom_eval(phi, parse(AB, "[a,b]")))
print(cross_validate(LOWER_CENTRAL, 3, 2, 6, "witness").summary())
