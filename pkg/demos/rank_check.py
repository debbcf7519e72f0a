"""
Rank p^m away from the singular locus
======================================

"""

import random
from fractions import Fraction

from fcpm import charvar

# everything here lives in the covering coordinates z with z_k^p = x_k;
# at a generic z the symbol ideal cuts out a graded quotient whose
# Hilbert function is the coefficient list of (1 + t + ... + t^(p-1))^m,
# so the total dimension, the holonomic rank, is p^m
p, m = 2, 2
d_max = charvar.default_dmax(p, m)
pt = charvar.specialize(p, m, (Fraction(1, 3), Fraction(1, 5)))
H = charvar.hilbert_function(p, m, pt, d_max)
print("H at z=(1/3, 1/5) :", H)
print("expected          :", charvar.expected_hilbert(p, m, d_max))
res = charvar.rank_at(p, m, pt)
print("rank              :", res.rank, " drop:", res.drop)

# where the product of linear forms vanishes, here 1 - z1 - z2 = 0, the
# quotient loses dimensions and the checker flags the drop
sing = charvar.specialize(p, m, (Fraction(1, 2), Fraction(1, 2)))
print("\nat z=(1/2, 1/2) on the locus")
res = charvar.rank_at(p, m, sing)
print("rank              :", res.rank, " drop:", res.drop)

# quotienting by the first k symbols only gives the partial ladder
# (1 - t^p)^k / (1 - t)^m, a regular-sequence fingerprint
rng = random.Random(31)
gen = charvar.random_generic_point(p, m, rng)
for k in range(1, m):
    dims = charvar.partial_quotient_dims(p, m, gen, k, d_max)
    print(f"partial k={k}       :", dims,
          " expected:", charvar.expected_partial(p, m, k, d_max))

# the same machinery at a larger shape
H3 = charvar.hilbert_function(3, 2, charvar.random_generic_point(3, 2, rng),
                              charvar.default_dmax(3, 2))
print("\np=3 m=2 H         :", H3, " total:", sum(H3))
