"""
Exact structures, Grothendieck groups and cones
===============================================

Every exact structure on rep(A_3) is a subset of the three meshes. For a
pair E' <= E we print the cone C generated by the lost mesh classes and
the dual cone D of degree functions degenerating H(E) to H(E').
"""

from exacthall import cone_C, cone_D, enumerate_structures, k0_quotient, weight_function
from exacthall.cones import linear_text
from exacthall.exact import projectives
from exacthall.quiver import ar_quiver

ar = ar_quiver("a3")
names = [f"x{i + 1}" for i in range(ar.n_indecs)]

for e in enumerate_structures(ar):
    k0 = k0_quotient(e)
    rels = ", ".join(linear_text(r, names) for r in k0.relations) or "none"
    proj = " ".join(f"M{i + 1}" for i in sorted(projectives(e)))
    print(f"E_{e.label:<5} projectives {proj:<20} K0 = Z^6 / ({rels})")

structs = {e.label: e for e in enumerate_structures(ar)}
e12, e1 = structs["1,2"], structs["1"]
print("\nC(E12, E1) =", [linear_text(g, names) for g in cone_C(e12, e1).generators])
d = cone_D(e12, e1)
print("D(E12, E1):", "; ".join(d.describe()))
print("closure dim", d.closure_dimension, "lineality dim", d.lineality_dimension)
print("weight function", weight_function(e12, e1).weights)
