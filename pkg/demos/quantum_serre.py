"""
Twisted Hall algebra of A_2 and the quantum Serre relations
===========================================================

Hall polynomials are recovered by interpolating extension counts over
several primes; twisting by nu^<A, C> with q = nu^2 gives the positive part
of the quantum group, where the quantum Serre relations hold.
"""

import sympy

from exacthall import ExactStructure, HallAlgebra, ObjClass, ar_quiver, interpolate_polynomial
from exacthall.hall import NU

ar = ar_quiver("a2")
emax = ExactStructure.maximal(ar)
n = ar.n_indecs
s1, s2, p1 = (ObjClass.of(n, ar.lookup(x).id) for x in ("S1", "S2", "P1"))
print("coefficient of [P1] in [S1][S2]:", interpolate_polynomial(emax, s1, s2, p1))

alg = HallAlgebra(emax, p=None, twisted=True)
E1, E2 = alg.basis(s1), alg.basis(s2)
print("[S1]*[S2] =", alg.mul(E1, E2))
for a, b in ((E1, E2), (E2, E1)):
    r = alg.mul_all(a, a, b) - alg.mul_all(a, b, a).scale(NU + 1 / NU) + alg.mul_all(b, a, a)
    print("Serre residue:", sympy.simplify(sum(r.values(), sympy.Integer(0))) if len(r) else 0)
