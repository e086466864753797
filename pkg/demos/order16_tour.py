"""Classify the semifields of order 16 and compare their groups.

Run with ``python3 demos/order16_tour.py``.  Takes about half a minute.
"""

from sfgroups.census import abelian_census
from sfgroups.classify import enumerate_semifields
from sfgroups.group import SemifieldGroup, group_profile
from sfgroups.isomorphism import groups_isomorphic_semifield
from sfgroups.semifield import seminuclei

report = enumerate_semifields(2, 4)
print("isotopism classes, merged classes, commutative:", report.counts())
print("search:", {k: report.stats[k] for k in ("nodes", "leaves", "isotopy_tests")})

for S in report.representatives:
    G = SemifieldGroup(S)
    census = abelian_census(G)
    prof = group_profile(G, census.count)
    kind = "field" if S.is_associative() else "proper"
    print(f"\n{S.label} ({kind}), seminuclei orders {seminuclei(S).orders}")
    print(f"  |G| = {G.order}, classes = {prof.class_count}, maximal abelians = {census.count}")
    print(f"  |Z(C_G(g))| histogram: {dict(prof.centralizer_center_histogram)}")

# the two proper groups agree on every coarse invariant but are not isomorphic
a, b = report.representatives[1:]
print("\nG(F1) ~ G(F2)?", groups_isomorphic_semifield(a, b).holds)
