# %% [markdown]
# # Series of small unipotent groups
#
# The targets themselves have short series: the p-Zassenhaus series of
# U_n(F_p) and the lower p-central series of G(n,p) reach the trivial group
# by term n. We compute them from Cayley tables by subgroup closure.

# %%
from freefilt import FullUnipotent, LowerPCentral, Zassenhaus, gnp, prime_field
from freefilt.finite_series import FiniteGroupTable, filtration_series_finite, nilpotency_probe

for n in (2, 3, 4):
    for p in (2, 3):
        desc = FullUnipotent(prime_field(p), n)
        res = filtration_series_finite(FiniteGroupTable.from_descriptor(desc), Zassenhaus(p))
        print(f"{str(desc):>10}  {str(Zassenhaus(p)):>10}  sizes {res.sizes}")

for n, p in ((2, 2), (3, 2), (2, 3), (3, 3)):
    desc = gnp(n, p)
    res = filtration_series_finite(FiniteGroupTable.from_descriptor(desc), LowerPCentral(p))
    print(f"{str(desc):>10}  {str(LowerPCentral(p)):>10}  sizes {res.sizes}")

# %% [markdown]
# U_3(F_2) is the dihedral group of order 8; its second lower 2-central term
# is the center, of order 2.
#
# U_n(Z) can't be enumerated, so we sample nested commutators instead.

# %%
from freefilt import ZZ

print("U3(Z), 3-fold:", nilpotency_probe(FullUnipotent(ZZ, 3), 3, 500))
print("U4(Z), 4-fold:", nilpotency_probe(FullUnipotent(ZZ, 4), 4, 200))
print("U3(Z), 2-fold:", nilpotency_probe(FullUnipotent(ZZ, 3), 2, 50))
