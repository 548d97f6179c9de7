"""
Degenerations between Hall algebras
===================================

For every pair E' <= E of exact structures on A_3 the weight function
w = sum of dim Hom(P, -) over the new projectives P filters H(E); the top
degree parts of the products reproduce the H(E') table.
"""

import time

from exacthall import Valuation, classify_valuation, verify_degeneration, verify_valuation_degeneration
from exacthall.exact import comparable_pairs, enumerate_structures, ExactStructure
from exacthall.quiver import ar_quiver

ar = ar_quiver("a3")
t0 = time.time()
for e, f in comparable_pairs(enumerate_structures(ar)):
    rep = verify_degeneration(e, f, p=2, max_dim=4)
    print(f"H({e.label:>3}) ~> H({f.label:>3}): {rep.checked} products, {'ok' if rep.ok else 'MISMATCH'}")
print(f"{time.time() - t0:.1f}s")

# an arbitrary valuation lands on the structure it is characteristic for
w = Valuation((0, 0, 0, 0, 2, 1))
emax = ExactStructure.maximal(ar)
cls = classify_valuation(w, emax)
print("\nmesh values", cls.mesh_values, "->", cls.kind)
print("degeneration holds:", verify_valuation_degeneration(emax, w, 2, 4).ok)
