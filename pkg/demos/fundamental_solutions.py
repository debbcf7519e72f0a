"""
The p^m fundamental solutions and their annihilators
=====================================================

"""

import random

from fcpm.params import (all_labels, mu_table, random_generic_parameters,
                         solution_exponents, transform_parameters)
from fcpm import diffops, series

# each label J in (Z_p)^m indexes one solution: a monomial prefactor
# x^mu(J) times the same kind of series with reflected parameters
ps = random_generic_parameters(2, 2, random.Random(12))
print("p =", ps.p, " m =", ps.m, " labels:", [l.display() for l in all_labels(2, 2)])

# the exponent table is pairwise distinct for generic parameters, which
# is what makes the solution set a basis
for disp, mu in mu_table(ps).items():
    print("mu", disp, "=", [str(v) for v in mu])

# the reflected parameter set behind one label
label = next(l for l in all_labels(2, 2) if l.display() == (1, 0))
ps_ref = transform_parameters(ps, label)
print("\nreflected a       :", [str(v) for v in ps_ref.a])
mu, sigma = solution_exponents(ps, label)
print("prefactor exponent:", [str(v) for v in mu])

# numeric evaluation of the solution at a small point
val = series.evaluate_phi(ps, label, (0.05, 0.02))
print("phi value         :", val)

# every solution is annihilated by the order-p operator attached to each
# variable; the residual of the truncated series is exactly zero
for lab in all_labels(2, 2):
    r = diffops.annihilation_residual(ps, lab, 8)
    print("residual", lab.display(), "=", r)
