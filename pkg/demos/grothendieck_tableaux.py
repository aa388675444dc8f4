"""Counting Grothendieck P-tableaux and checking them against the algebra.

For the poset 2+1 (a two-element chain next to a single point) the
incomparability graph is the path on three vertices.  Each coefficient of
the Kromatic function in the symmetric Grothendieck basis should be the
number of tableaux, and the signed sum over P-arrays should agree.
"""

from kromsym.gasharov import enumerate_p_tableaux, verify_theorem
from kromsym.posets import chain, poset_sum
from kromsym.symcore import partitions

poset = poset_sum(chain(2), chain(1))

for d in range(3, 6):
    for lam in partitions(d):
        rep = verify_theorem(poset, lam)
        print(f"{lam!r:<12} tableaux={rep.tableau_count:<4} arrays={rep.signed_sum:<4} coefficient={rep.groth_coeff}")

print()
print("the four tableaux of shape (1,1,1):")
for t in enumerate_p_tableaux(poset, (1, 1, 1)):
    print("  ", [list(map(repr, row)) for row in t.rows])
