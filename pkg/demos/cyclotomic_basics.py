"""
Cyclotomic polynomials and q-integer quotients
==============================================

A quotient of q-integers that happens to be a polynomial is a product of
cyclotomic factors.  Which factors survive is decided by divisor counting.
"""

from cgfpos import QuotientSpec, cyclotomic_poly, expand_quotient, polynomiality_delta
from cgfpos.polyq import min_coefficient

############################################################
# The first cyclotomic polynomial with a coefficient outside {-1, 0, 1}

phi = cyclotomic_poly(105)
print("degree", phi.degree, "min coefficient", min_coefficient(phi))
print([k for k, c in enumerate(phi.coeffs) if c == -2])

############################################################
# [4][5] / [2][3] is not a polynomial, [4][6] / [2][3] is.

for A, B in [((4, 5), (2, 3)), ((4, 6), (2, 3))]:
    s = QuotientSpec(A, B)
    print(A, B, "delta:", polynomiality_delta(s), "expansion:", expand_quotient(s))

############################################################
# The q-binomial [6 choose 3] counts partitions in a 3 x 3 box by size.

p = expand_quotient(QuotientSpec((4, 5, 6), (1, 2, 3)))
print(list(p.coeffs), "total", p(1))
