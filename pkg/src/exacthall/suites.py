"""Named verification suites: small-quiver relations and structural checks.

Each suite returns a :class:`SuiteResult`; a check carries a short diff when
it fails. The CLI ``verify`` command prints these and exits 1 on failure.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Sequence

from .cones import cone_C, cone_D, cone_D_nonempty, degree_cone_oracle, face_lattice, k0_quotient, membership
from .degen import classify_valuation, verify_degeneration, weight_function
from .exact import (
    ExactStructure,
    comparable_pairs,
    defect_vector,
    enumerate_structures,
    injectives,
    projectives,
    structure_with_injectives,
    structure_with_projectives,
)
from .fqrep import ObjClass, category
from .hall import NU, HallAlgebra, HallElement, check_associativity, multiply, pairs_up_to, triples_up_to
from .quiver import ARQuiver, ar_quiver


@dataclass
class Check:
    name: str
    ok: bool
    detail: str = ""


@dataclass
class SuiteResult:
    suite: str
    checks: list[Check] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return all(c.ok for c in self.checks)

    def add(self, name: str, ok: bool, detail: str = "") -> None:
        self.checks.append(Check(name, bool(ok), "" if ok else detail))

    def lines(self) -> list[str]:
        out = []
        for c in self.checks:
            out.append(f"{'PASS' if c.ok else 'FAIL'}  {c.name}")
            if c.detail:
                out.extend("      " + ln for ln in c.detail.splitlines())
        out.append(f"{self.suite}: {sum(c.ok for c in self.checks)}/{len(self.checks)} checks passed")
        return out


def _obj(ar: ARQuiver, *names: str) -> ObjClass:
    return ObjClass.of(ar.n_indecs, *(ar.lookup(n).id for n in names))


def _elem(ar: ARQuiver, *terms: tuple[object, Sequence[str]]) -> HallElement:
    return HallElement([(_obj(ar, *names), c) for c, names in terms])


def _diff(got: HallElement, want: HallElement) -> str:
    return f"got  {got}\nwant {want}"


# -- A_2 --------------------------------------------------------------------


def quantum_serre_residue(ar: ARQuiver, i: str, j: str) -> HallElement:
    """E_i^2 E_j - (nu + 1/nu) E_i E_j E_i + E_j E_i^2 in the twisted maximal algebra."""
    alg = HallAlgebra(ExactStructure.maximal(ar), p=None, twisted=True)
    ei, ej = alg.basis(_obj(ar, i)), alg.basis(_obj(ar, j))
    lhs = alg.mul_all(ei, ei, ej) + alg.mul_all(ej, ei, ei)
    mid = alg.mul_all(ei, ej, ei).scale(NU + 1 / NU)
    return lhs - mid


def suite_a2(ar: ARQuiver | None = None, primes: Sequence[int] = (2, 3), max_dim: int = 4) -> SuiteResult:
    ar = ar or ar_quiver("a2")
    res = SuiteResult("a2")
    structs = enumerate_structures(ar)
    res.add("2 exact structures", len(structs) == 2, f"found {len(structs)}")
    emax, eadd = ExactStructure.maximal(ar), ExactStructure.split(ar)
    for q in primes:
        got = multiply(emax, _obj(ar, "S1"), _obj(ar, "S2"), q)
        want = _elem(ar, (Fraction(1), ("S1", "S2")), (Fraction(q - 1), ("P1",)))
        res.add(f"[S1]*[S2] in H(max), q={q}", got == want, _diff(got, want))
        got = multiply(eadd, _obj(ar, "S1"), _obj(ar, "S2"), q)
        want = _elem(ar, (Fraction(1), ("S1", "S2")))
        res.add(f"[S1]*[S2] in H(add), q={q}", got == want, _diff(got, want))
        got = multiply(emax, _obj(ar, "S2"), _obj(ar, "S1"), q)
        res.add(f"[S2]*[S1] split in H(max), q={q}", got == want, _diff(got, want))
    for e in structs:
        rep = check_associativity(e, triples_up_to(ar, max_dim), 2)
        res.add(f"associativity of H({e.label}), {rep.checked} triples", rep.ok, f"{len(rep.violations)} violations")
    rep = verify_degeneration(emax, eadd, 2, max_dim)
    res.add("gr of H(max) is the skew polynomial table", rep.ok, f"{len(rep.mismatches)} mismatches")
    r = quantum_serre_residue(ar, "S1", "S2")
    res.add("quantum Serre relation (1,2) in twisted H(max)", len(r) == 0, f"residue {r}")
    r = quantum_serre_residue(ar, "S2", "S1")
    res.add("quantum Serre relation (2,1) in twisted H(max)", len(r) == 0, f"residue {r}")
    return res


# -- A_3 --------------------------------------------------------------------


def a3_relations(ar: ARQuiver, q: int) -> list[tuple[str, HallElement, HallElement]]:
    """(name, computed, expected) for the A_3 generator relations at the prime q."""
    e12, e1 = ExactStructure.of(ar, 1, 2), ExactStructure.of(ar, 1)
    out = []
    one, qm1 = Fraction(1), Fraction(q - 1)
    m = {k: _obj(ar, f"M{k}") for k in range(1, 7)}
    for e, tag in ((e12, "12"), (e1, "1")):
        alg = HallAlgebra(e, q)
        b = {k: alg.basis(v) for k, v in m.items()}
        got = alg.mul(b[4], b[1])
        want = _elem(ar, (one, ("M1", "M4")), (qm1, ("M2", "M3")))
        out.append((f"[M4]*_{tag}[M1]", got, want))
        got = alg.mul(b[1], b[4])
        out.append((f"[M1]*_{tag}[M4]", got, _elem(ar, (Fraction(1, q), ("M1", "M4")))))
        got = alg.mul(b[4], b[1]) - alg.mul(b[1], b[4]).scale(Fraction(q))
        out.append((f"commutator (M1:M4) in E{tag}", got, alg.mul(b[2], b[3]).scale(qm1)))
        got = alg.mul(b[5], b[2])
        if tag == "12":
            want = _elem(ar, (one, ("M2", "M5")), (qm1, ("M4",)))
            cwant = _elem(ar, (qm1, ("M4",)))
        else:
            want = _elem(ar, (one, ("M2", "M5")))
            cwant = HallElement()
        out.append((f"[M5]*_{tag}[M2]", got, want))
        got = alg.mul(b[5], b[2]) - alg.mul(b[2], b[5])
        out.append((f"commutator (M2:M5) in E{tag}", got, cwant))
    return out


def q_commuting_pairs(e: ExactStructure, q: int) -> list[tuple[int, int, HallElement, HallElement]]:
    """Failures of [Mi][Mj] = |Hom(Mi,Mj)|^-1 [Mi + Mj] over pairs with Ext^1_E vanishing both ways."""
    ar = e.ar
    cat = category(ar, q)
    n = ar.n_indecs
    bad = []
    for i in range(n):
        for j in range(n):
            a, c = ObjClass.of(n, i), ObjClass.of(n, j)
            prods = (multiply(e, a, c, q), multiply(e, c, a, q))
            if any(len(x) > 1 for x in prods):
                continue
            want = HallElement({a + c: Fraction(1, q ** cat.hom(a, c))})
            if prods[0] != want:
                bad.append((i, j, prods[0], want))
    return bad


def is_sink_centered_a3(ar: ARQuiver) -> bool:
    """Whether ``ar`` is the A_3 orientation 1 -> 2 <- 3."""
    return ar.quiver.n == 3 and sorted(ar.quiver.arrow_indices) == [(0, 1), (2, 1)]


def a3_cone_checks(ar: ARQuiver, res: SuiteResult) -> None:
    e12, e1 = ExactStructure.of(ar, 1, 2), ExactStructure.of(ar, 1)
    k1, k12 = k0_quotient(e1), k0_quotient(e12)
    want1 = ((1, -1, -1, 1, 0, 0),)
    want12 = ((1, -1, -1, 1, 0, 0), (0, 1, 0, -1, 1, 0))
    res.add("K0(E1) = Z^6 / (x1 - x2 - x3 + x4)", k1.relations == want1 and k1.torsion == (), f"{k1}")
    res.add(
        "K0(E12) = Z^6 / (x1 - x2 - x3 + x4, x2 - x4 + x5)",
        k12.relations == want12 and k12.torsion == () and k12.rank == 4,
        f"{k12}",
    )
    c = cone_C(e12, e1)
    res.add("C(E12, E1) is the ray of x2 - x4 + x5", c.generators == ((0, 1, 0, -1, 1, 0),), f"{c.generators}")
    d = cone_D(e12, e1)
    desc = d.describe()
    res.add("D(E12, E1) = {d2 - d4 + d5 > 0, d1 - d2 - d3 + d4 = 0}",
            desc == ["d2-d4+d5 > 0", "d1-d2-d3+d4 = 0"], f"{desc}")
    w = weight_function(e12, e1)
    res.add("weight_function(E12, E1) lies in D", membership(w.weights, d), f"w = {w.weights}")
    res.add("closure of D has dimension 5", d.closure_dimension == 5, f"{d.closure_dimension}")
    res.add("lineality space of D has dimension 4", d.lineality_dimension == 4, f"{d.lineality_dimension}")


def suite_a3(ar: ARQuiver | None = None, primes: Sequence[int] = (2, 3), max_dim: int = 4) -> SuiteResult:
    ar = ar or ar_quiver("a3")
    res = SuiteResult("a3")
    res.add("6 indecomposables, 3 meshes", (ar.n_indecs, len(ar.meshes)) == (6, 3))
    res.add("8 exact structures", len(enumerate_structures(ar)) == 8)
    for q in primes:
        for name, got, want in a3_relations(ar, q):
            res.add(f"{name}, q={q}", got == want, _diff(got, want))
        bad = q_commuting_pairs(ExactStructure.of(ar, 1, 2), q)
        res.add(f"q-commuting generator pairs in E12, q={q}", not bad, f"{len(bad)} failures")
    a3_cone_checks(ar, res)
    return res


# -- disjoint A_2 -----------------------------------------------------------


def relabeling(ar: ARQuiver, perm: Sequence[int]) -> list[int]:
    """Indecomposable map induced by the vertex permutation ``perm`` (vertex i goes to perm[i])."""
    out = []
    for u in ar.indecs:
        d = [0] * ar.quiver.n
        for i, x in enumerate(u.dim):
            d[perm[i]] = x
        out.append(ar.by_dim[tuple(d)].id)
    return out


def map_object(f: Sequence[int], c: ObjClass) -> ObjClass:
    out = [0] * len(c.counts)
    for i, m in enumerate(c.counts):
        out[f[i]] += m
    return ObjClass(tuple(out))


def table_transport_failures(
    e: ExactStructure, e2: ExactStructure, f: Sequence[int], p: int, max_dim: int
) -> list[tuple[ObjClass, ObjClass]]:
    """Pairs (A, C) where F([A] *_e [C]) differs from [F A] *_e2 [F C]."""
    bad = []
    for a, c in pairs_up_to(e.ar, max_dim):
        lhs = HallElement({map_object(f, b): v for b, v in multiply(e, a, c, p).items()})
        if lhs != multiply(e2, map_object(f, a), map_object(f, c), p):
            bad.append((a, c))
    return bad


def suite_disjoint_a2(ar: ARQuiver | None = None, primes: Sequence[int] = (2, 3), max_dim: int = 4) -> SuiteResult:
    ar = ar or ar_quiver("disjoint-a2")
    res = SuiteResult("disjoint-a2")
    res.add("4 exact structures", len(enumerate_structures(ar)) == 4)
    meshes = [(m.tau_end.id, tuple(x.id for x in m.middle), m.end.id) for m in ar.meshes]
    want = [
        (ar.lookup("S2").id, (ar.lookup("P1").id,), ar.lookup("S1").id),
        (ar.lookup("S4").id, (ar.lookup("P3").id,), ar.lookup("S3").id),
    ]
    res.add("meshes S2 > P1 > S1 and S4 > P3 > S3", meshes == want, f"{meshes}")
    e1, e2 = ExactStructure.of(ar, 1), ExactStructure.of(ar, 2)
    f = relabeling(ar, [2, 3, 0, 1])
    ident = list(range(ar.n_indecs))
    names = {ar.lookup(a).id: ar.lookup(b).id for a, b in
             (("S1", "S3"), ("S2", "S4"), ("P1", "P3"), ("S3", "S1"), ("S4", "S2"), ("P3", "P1"))}
    res.add("F swaps S1/S3, S2/S4, P1/P3", all(f[k] == v for k, v in names.items()), f"{f}")
    for q in primes:
        bad = table_transport_failures(e1, e2, f, q, max_dim)
        res.add(f"F maps the H(E1) table onto the H(E2) table, q={q}", not bad, f"{len(bad)} entries differ")
        bad = table_transport_failures(e1, e2, ident, q, max_dim)
        res.add(f"the identity on objects does not, q={q}", bool(bad), "tables agree under the identity")
    faces = {fc.bitmask for fc in face_lattice(ExactStructure.maximal(ar))}
    res.add("E1 and E2 are different faces of C", faces == {0, 1, 2, 3}, f"{faces}")
    return res


# -- lattice / cones / degenerations on any quiver ----------------------------


def suite_lattice(ar: ARQuiver | None = None, **_) -> SuiteResult:
    ar = ar or ar_quiver("a2")
    res = SuiteResult("lattice")
    structs = enumerate_structures(ar)
    m = len(ar.meshes)
    res.add(f"{len(structs)} structures = 2^{m}", len(structs) == 2**m)
    res.add("distinct structures", len({s.meshes for s in structs}) == len(structs))
    boolean = all(
        a.meet(b).meshes == a.meshes & b.meshes
        and a.join(b).meshes == a.meshes | b.meshes
        and a.meet(a.complement()).is_split
        and a.join(a.complement()).is_maximal
        and (a <= b) == (a.meet(b).meshes == a.meshes)
        for a in structs
        for b in structs
    )
    res.add("meet, join and complement form a Boolean lattice", boolean)
    n = ar.n_indecs
    proj_ok = all(
        projectives(e) == frozenset(range(n)) - e.ends
        and structure_with_projectives(projectives(e), ExactStructure.maximal(ar)) == e
        and structure_with_injectives(injectives(e), ExactStructure.maximal(ar)) == e
        for e in structs
    )
    res.add("structures are recovered from their projectives and from their injectives", proj_ok)
    mono = all(projectives(e) <= projectives(f) for e, f in comparable_pairs(structs))
    res.add("E' <= E implies P(E) is contained in P(E')", mono)
    defects = all(
        defect_vector(ar, ObjClass.of(n, mm.tau_end.id), ObjClass.of(n, *(x.id for x in mm.middle)),
                      ObjClass.of(n, mm.end.id))
        == tuple(int(u == mm.end.id) for u in range(n))
        for mm in ar.meshes
    )
    res.add("the defect of each mesh is the indicator of its end", defects)
    faces = face_lattice(ExactStructure.maximal(ar))
    res.add("faces of C(max, add) match the structures", {f.meshes for f in faces} == {s.meshes for s in structs})
    return res


def suite_cones(ar: ARQuiver | None = None, primes: Sequence[int] = (2,), max_dim: int = 4) -> SuiteResult:
    ar = ar or ar_quiver("a3")
    res = SuiteResult("cones")
    if is_sink_centered_a3(ar):
        a3_cone_checks(ar, res)
    structs = enumerate_structures(ar)
    pairs = comparable_pairs(structs)
    simplicial = all(cone_C(e, f).is_simplicial for e, f in pairs)
    res.add(f"C is simplicial for all {len(pairs)} comparable pairs", simplicial)
    bad = []
    for e, f in pairs:
        d = cone_D(e, f)
        w = weight_function(e, f)
        if not (cone_D_nonempty(d) and membership(w.weights, d)):
            bad.append((e.label, f.label))
        elif classify_valuation(w, e).characteristic_for != f:
            bad.append((e.label, f.label))
    res.add("D is nonempty and contains the weight function", not bad, f"{bad}")
    bad = []
    p = primes[0]
    for e, f in pairs:
        w = weight_function(e, f)
        if not degree_cone_oracle(e, f, w.weights, p, max_dim):
            bad.append((e.label, f.label))
    res.add("weight functions pass the conflation-level degree oracle", not bad, f"{bad}")
    return res


def suite_degen(ar: ARQuiver | None = None, primes: Sequence[int] = (2,), max_dim: int = 4) -> SuiteResult:
    ar = ar or ar_quiver("a3")
    res = SuiteResult("degen")
    structs = enumerate_structures(ar)
    for p in primes:
        for e, f in comparable_pairs(structs):
            rep = verify_degeneration(e, f, p, max_dim)
            detail = "\n".join(f"[{a.counts}]*[{c.counts}]: " + _diff(g, w) for a, c, g, w in rep.mismatches[:3])
            res.add(f"gr H({e.label}) = H({f.label}), q={p}, {rep.checked} pairs", rep.ok, detail)
    return res


SUITES: dict[str, Callable[..., SuiteResult]] = {
    "a2": suite_a2,
    "a3": suite_a3,
    "disjoint-a2": suite_disjoint_a2,
    "lattice": suite_lattice,
    "cones": suite_cones,
    "degen": suite_degen,
}


def run_suite(name: str, ar: ARQuiver | None = None, **kw) -> SuiteResult:
    if name not in SUITES:
        raise KeyError(name)
    return SUITES[name](ar, **kw)
