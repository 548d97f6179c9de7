"""
Isomorphic Hall algebras from different exact structures
=========================================================

On A_2 + A_2 the two structures with one mesh each have isomorphic Hall
algebras, but only after swapping the two components of the quiver.
"""

from exacthall import ExactStructure, HallElement, ar_quiver, multiply
from exacthall.hall import pairs_up_to
from exacthall.suites import map_object, relabeling

ar = ar_quiver("disjoint-a2")
e1, e2 = ExactStructure.of(ar, 1), ExactStructure.of(ar, 2)
f = relabeling(ar, [2, 3, 0, 1])
print("F on indecomposables:", {ar.indecs[i].label: ar.indecs[j].label for i, j in enumerate(f)})

pairs = pairs_up_to(ar, 4)
under_f = sum(
    HallElement({map_object(f, b): v for b, v in multiply(e1, a, c, 2).items()})
    != multiply(e2, map_object(f, a), map_object(f, c), 2)
    for a, c in pairs
)
under_id = sum(multiply(e1, a, c, 2) != multiply(e2, a, c, 2) for a, c in pairs)
print(f"{len(pairs)} products: {under_f} differ under F, {under_id} differ under the identity")
