"""
Hall algebra of A_3 with two exact structures
=============================================

The quiver 1 -> 2 <- 3 has six indecomposables M1..M6 and three meshes.
We multiply generators in the structures generated by meshes {1, 2} and {1}.
"""

from fractions import Fraction

from exacthall import ExactStructure, HallAlgebra, HallElement, ObjClass, ar_quiver, format_object

ar = ar_quiver("a3")
for u in ar.indecs:
    print(f"M{u.id + 1} = {u.label}")

for k, m in enumerate(ar.meshes, 1):
    print(f"mesh {k}: {m.tau_end.label} >-> {' + '.join(x.label for x in m.middle)} ->> {m.end.label}")


def show(x):
    return " + ".join(f"{v} [{format_object(ar, b)}]" for b, v in x.items())


def gen(k):
    return HallElement.basis(ObjClass.of(ar.n_indecs, k - 1))


for q in (2, 3):
    for e in (ExactStructure.of(ar, 1, 2), ExactStructure.of(ar, 1)):
        alg = HallAlgebra(e, q)
        print(f"\nq = {q}, structure {e.label}")
        print("  [M4][M1] =", show(alg.mul(gen(4), gen(1))))
        print("  [M1][M4] =", show(alg.mul(gen(1), gen(4))))
        print("  [M5][M2] =", show(alg.mul(gen(5), gen(2))))
        # the (M2:M5) commutator vanishes once mesh 2 is dropped
        comm = alg.mul(gen(5), gen(2)) - alg.mul(gen(2), gen(5))
        print("  [M5][M2] - [M2][M5] =", show(comm) or "0")
        comm = alg.mul(gen(4), gen(1)) - alg.mul(gen(1), gen(4)).scale(Fraction(q))
        print("  [M4][M1] - q[M1][M4] =", show(comm))
