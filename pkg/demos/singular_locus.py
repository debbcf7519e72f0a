"""
The singular-locus polynomial R(x)
===================================

"""

import random
from fractions import Fraction

from fcpm import singular

# R(x) is the integer polynomial of degree p^(m-1) cutting out the
# non-coordinate part of the singular locus; it comes from a product of
# p^m linear forms in covering coordinates z with z_k^p = x_k
for p, m in ((2, 2), (3, 2), (2, 3)):
    rx = singular.build_R_x(p, m)
    print(f"p={p} m={m} degree {rx.total_degree()}")
    print("  ", singular.poly_to_string(rx))

# the locus contains the image of the hyperplane 1 - sum z = 0, which
# gives easy exact points on R = 0
rng = random.Random(9)
for _ in range(3):
    z = singular.unirational_point(2, 2, rng)
    x = tuple(v ** 2 for v in z)
    print("x =", [str(v) for v in x], " R(x) =", singular.evaluate_R_x(2, 2, x))

# membership test for arbitrary points, exact or floating
print("on locus (1/4,1/4):", singular.on_singular_locus((Fraction(1, 4), Fraction(1, 4)), 2, 2))
print("on locus (1/3,1/5):", singular.on_singular_locus((Fraction(1, 3), Fraction(1, 5)), 2, 2))

# restricting the last variable to zero collapses the polynomial to the
# p-th power of the one-size-smaller one
r32 = singular.build_R_x(3, 2)
r31 = singular.build_R_x(3, 1)
restricted = {e[:1]: c for e, c in r32.terms.items() if e[1] == 0}
cubed = dict((r31 ** 3).terms)
print("restriction identity holds:", restricted == cubed)
