# %% [markdown]
# # Deciding filtration membership from Magnus coefficients
#
# A word lies in the n-th term of a filtration exactly when each coefficient
# of degree t < n is killed by the t-th ideal of a chain:
#
# * lower central: integer coefficients, all zero below degree n
# * p-Zassenhaus: coefficients mod p, all zero below degree n
# * lower p-central: c_I divisible by p^(n - |I|)

# %%
from freefilt import LOWER_CENTRAL, Alphabet, LowerPCentral, Zassenhaus, parse
from freefilt.criteria import membership_violation

AB = Alphabet.standard(2)
cases = [
    ("[a,b]", LOWER_CENTRAL, 3),
    ("[[a,b],a]", LOWER_CENTRAL, 3),
    ("a^2", LowerPCentral(2), 3),
    ("a^4", LowerPCentral(2), 3),
    ("a^4", Zassenhaus(2), 3),
    ("a^2 [a,b]", Zassenhaus(2), 2),
]
for text, kind, n in cases:
    v = membership_violation(parse(AB, text), kind, n)
    if v is None:
        verdict = "member"
    else:
        ideal = "0" if v.modulus == 0 else f"{v.modulus}Z"
        verdict = f"fails at {v.index}: {v.value} not in {ideal}"
    print(f"{text:>10}  {str(kind):>10}  n={n}:  {verdict}")

# %% [markdown]
# The same series can be sampled from the other side: `filtration_generators`
# builds words from powers and commutators following the recursive
# definitions, and every one of them passes the coefficient test.

# %%
from freefilt import filtration_generators, filtration_member

for kind in (LOWER_CENTRAL, Zassenhaus(3), LowerPCentral(2)):
    words = filtration_generators(kind, 3, AB, 12)
    ok = all(filtration_member(w, kind, 3) for w in words)
    print(f"{str(kind):>10}: {len(words)} sampled words, all members: {ok}")
