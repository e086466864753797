"""Two groups of order 3^9 with the same character table.

G(GF(27)) and G(F) for the proper commutative semifield F of order 27
have identical character tables and equal |Agemo_1|, but their censuses
of maximal abelian subgroups differ (28 against 4).
"""

from sfgroups.census import abelian_census, zv_analysis
from sfgroups.characters import brauer_pair, character_table
from sfgroups.classify import enumerate_semifields
from sfgroups.group import SemifieldGroup
from sfgroups.semifield import seminuclei

field, proper = enumerate_semifields(3, 3).representatives
G, H = SemifieldGroup(field), SemifieldGroup(proper)

T = character_table(H)
print(f"{T.size} irreducible characters, degrees {sorted(set(T.degrees.tolist()))}")
print("exact orthogonality:", T.first_orthogonality() and T.second_orthogonality())

v = brauer_pair(G, H)
print("Brauer pair:", v.holds, v.checks)

for name, K, S in [("field", G, field), ("proper", H, proper)]:
    z = zv_analysis(K)
    print(
        f"{name}: census {abelian_census(K).count}, |Mid| = {seminuclei(S).mid.order}, "
        f"Z(v) members {z.m}, r = {z.r}"
    )
