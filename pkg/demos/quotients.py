"""Central quotients of G(GF(8)): which ones stay semi-extraspecial."""

from sfgroups import linalg
from sfgroups.group import SemifieldGroup, check_extraspecial, check_ses, check_ultraspecial
from sfgroups.semifield import make_field

F = make_field(2, 3)
for k in range(3):
    N = next(iter(linalg.enumerate_subspaces(3, k, 2)))
    G = SemifieldGroup(F, N)
    print(
        f"|N| = {N.order}: |G| = 2^{2 * G.n + G.b}, s.e.s. {check_ses(G).holds}, "
        f"extraspecial {check_extraspecial(G).holds}, ultraspecial {check_ultraspecial(G).holds}"
    )
