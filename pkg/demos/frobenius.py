"""
Numerical semigroups
====================

Apery sets give membership in O(1) and the Frobenius number directly.
"""

from cgfpos import GeneratorSet, apery_set, frobenius_number, selmer_bound

############################################################
# The chicken nugget semigroup

S = GeneratorSet([6, 9, 20])
print("apery:", apery_set(S))
print("largest gap:", frobenius_number(S), "bound:", selmer_bound(S))
print([x for x in range(50) if x not in S])

############################################################
# Generators with a common factor are divided through first

T = GeneratorSet([6, 10, 30])
print(T.gcd, T.reduced, 40 in T, 41 in T)

############################################################
# How loose is the bound?

for gens in ([3, 5], [4, 7, 9], [10, 11, 12, 13], [7, 50]):
    S = GeneratorSet(gens)
    print(gens, frobenius_number(S), selmer_bound(S))
