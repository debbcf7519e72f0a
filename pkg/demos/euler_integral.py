"""
Coefficients through the Euler-type integral
=============================================

"""

import random

from fcpm import integral, series
from fcpm.params import random_generic_parameters

# the building block: the Dirichlet integral over the simplex, computed
# two independent ways, by Gauss-Jacobi quadrature after a simplex-to-cube
# map and in closed form from the complex gamma function
res = integral.dirichlet_integral(1.3 + 0.2j, [0.7 - 0.1j, 2.1 + 0.4j])
print("quadrature        :", res.quadrature)
print("closed form       :", res.closed_form)
print("rel difference    :", abs(res.quadrature - res.closed_form) / abs(res.closed_form))

# the gamma function used by the closed form handles complex arguments
print("\nGamma(0.5)        :", integral.gamma_value(0.5))
print("Gamma(1+2i)       :", integral.gamma_value(1 + 2j))

# a series coefficient equals a ratio of these integrals; the hypotheses
# (no parameter may be a nonpositive or conflicting integer) are checked
# up front
ps = random_generic_parameters(2, 2, random.Random(11))
problems = integral.check_integral_hypotheses(ps)
print("\nhypotheses ok     :", problems == ())
for n in ((0, 0), (1, 0), (2, 1), (3, 3)):
    via = integral.coefficient_via_integral(ps, n)
    direct = complex(series.coefficient(ps, n))
    print(f"A{n}: integral {via.real:+.12f}  series {direct.real:+.12f}"
          f"  rel err {abs(via - direct) / abs(direct):.2e}")
