"""Valuations on Iso(A), filtrations of Hall algebras and their associated graded tables.

A valuation is additive on direct sums, so it is stored by its values on
indecomposables. On a conflation ``X >-> Y ->> Z`` of E the defect
``w(X) - w(Y) + w(Z)`` equals ``sum_U b_U * w(mesh_U)`` with ``b_U >= 0``,
hence everything is decided on the meshes of E.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from typing import Iterable, Sequence

import yaml

from .errors import QuiverError, StructureOrderError
from .exact import ExactStructure, conflation_in, hom_table
from .fqrep import ObjClass, category
from .hall import HallElement, multiply, pairs_up_to
from .quiver import ARQuiver


@dataclass(frozen=True)
class Valuation:
    """N-valued function on indecomposables, extended additively to all objects."""

    weights: tuple[int, ...]

    def __post_init__(self):
        if any(w < 0 for w in self.weights):
            raise ValueError("valuation weights must be non-negative")

    @classmethod
    def zero(cls, n: int) -> "Valuation":
        return cls((0,) * n)

    def __call__(self, c: ObjClass) -> int:
        return sum(w * m for w, m in zip(self.weights, c.counts))

    def __add__(self, other: "Valuation") -> "Valuation":
        return Valuation(tuple(a + b for a, b in zip(self.weights, other.weights)))

    def mesh_value(self, ar: ARQuiver, k: int) -> int:
        """w(tau U) - w(middle) + w(U) on the k-th mesh."""
        return sum(w * x for w, x in zip(self.weights, ar.meshes[k].kclass(ar.n_indecs)))


def hom_valuation(ar: ARQuiver, x: int) -> Valuation:
    """w_X = dim Hom(X, -) for an indecomposable X."""
    return Valuation(tuple(hom_table(ar)[x]))


@dataclass(frozen=True)
class ValuationClass:
    """Outcome of :func:`classify_valuation`."""

    is_valuation: bool
    characteristic_for: ExactStructure | None = None
    mesh_values: tuple[int, ...] = ()

    @property
    def kind(self) -> str:
        if not self.is_valuation:
            return "not-quasi"
        return f"characteristic-for {self.characteristic_for.label}"


def classify_valuation(w: Valuation, e: ExactStructure) -> ValuationClass:
    """Decide whether ``w`` is an E-valuation and for which E' it is E'-characteristic.

    ``w`` is an E-valuation iff it is non-negative on every mesh of E; it is
    then characteristic for the structure generated by the meshes of E on
    which it vanishes.
    """
    vals = tuple(w.mesh_value(e.ar, k) for k in range(len(e.ar.meshes)))
    if any(vals[k] < 0 for k in e.meshes):
        return ValuationClass(False, None, vals)
    sub = ExactStructure(e.ar, frozenset(k for k in e.meshes if vals[k] == 0))
    return ValuationClass(True, sub, vals)


def weight_function(e: ExactStructure, e_sub: ExactStructure) -> Valuation:
    """Sum of dim Hom(P, -) over indecomposables projective in ``e_sub`` but not in ``e``."""
    if not e_sub <= e:
        raise StructureOrderError(f"{e_sub.label} is not below {e.label}")
    h = hom_table(e.ar)
    new_proj = e.ends - e_sub.ends
    n = e.ar.n_indecs
    return Valuation(tuple(sum(h[pr][v] for pr in new_proj) for v in range(n)))


def graded_part(prod: HallElement, a: ObjClass, c: ObjClass, w: Valuation) -> HallElement:
    """Top-degree terms of [A] * [C]: those [B] with w(B) = w(A) + w(C)."""
    top = w(a) + w(c)
    return prod.truncate(lambda b: w(b) == top)


def associated_graded(
    e: ExactStructure, w: Valuation, p: int, pairs: Iterable[tuple[ObjClass, ObjClass]] | None = None, max_dim: int = 4
) -> dict[tuple[ObjClass, ObjClass], HallElement]:
    """Structure-constant table of gr_w H(E) on the given pairs (default: total dim <= max_dim)."""
    if not classify_valuation(w, e).is_valuation:
        raise ValueError(f"weights {w.weights} do not define a valuation for {e.label}")
    if pairs is None:
        pairs = pairs_up_to(e.ar, max_dim)
    return {(a, c): graded_part(multiply(e, a, c, p), a, c, w) for a, c in pairs}


@dataclass
class DegenerationReport:
    source: str
    target: str
    p: int
    checked: int = 0
    mismatches: list[tuple[ObjClass, ObjClass, HallElement, HallElement]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.mismatches


def compare_tables(e: ExactStructure, target: ExactStructure, w: Valuation, p: int, max_dim: int) -> DegenerationReport:
    rep = DegenerationReport(e.label, target.label, p)
    pairs = pairs_up_to(e.ar, max_dim)
    gr = associated_graded(e, w, p, pairs)
    for a, c in pairs:
        want = multiply(target, a, c, p)
        rep.checked += 1
        if gr[(a, c)] != want:
            rep.mismatches.append((a, c, gr[(a, c)], want))
    return rep


def verify_degeneration(e: ExactStructure, e_sub: ExactStructure, p: int, max_dim: int = 4) -> DegenerationReport:
    """gr of H(E) under weight_function(E, E') against the H(E') table."""
    return compare_tables(e, e_sub, weight_function(e, e_sub), p, max_dim)


def verify_valuation_degeneration(e: ExactStructure, w: Valuation, p: int, max_dim: int = 4) -> DegenerationReport:
    """gr of H(E) under an arbitrary E-valuation against the structure it is characteristic for."""
    cls = classify_valuation(w, e)
    if not cls.is_valuation:
        raise ValueError(f"weights {w.weights} do not define a valuation for {e.label}")
    return compare_tables(e, cls.characteristic_for, w, p, max_dim)


def conflation_triples(
    e: ExactStructure, p: int, max_dim: int
) -> list[tuple[ObjClass, ObjClass, ObjClass]]:
    """Iso-class triples (X, Y, Z) carrying an E-conflation X >-> Y ->> Z, certified by extension counts."""
    cat = category(e.ar, p)
    out = []
    for z, x in pairs_up_to(e.ar, max_dim):
        for y in multiply(e, z, x, p):
            out.append((x, y, z))
    assert all(cat.ext_count(z, x, y) > 0 for x, y, z in out)
    return out


@dataclass
class QuasiValuationReport:
    structure: str
    p: int
    conflations_checked: int = 0
    violations: list[tuple[ObjClass, ObjClass, ObjClass]] = field(default_factory=list)
    equalities: int = 0
    additivity_failures: list[tuple[ObjClass, ObjClass, int, int]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def endomorphism_quasivaluation_check(
    e: ExactStructure, p: int, samples: Sequence[tuple[ObjClass, ObjClass, ObjClass]] | None = None, max_dim: int = 4
) -> QuasiValuationReport:
    """Check |End(Y)| <= |End(X + Z)| on conflations, and record where |End| fails to be additive."""
    cat = category(e.ar, p)
    if samples is None:
        samples = conflation_triples(e, p, max_dim)

    def end(c):
        return p ** cat.hom(c, c)

    rep = QuasiValuationReport(e.label, p)
    for x, y, z in samples:
        rep.conflations_checked += 1
        lhs, rhs = end(y), end(x + z)
        if lhs > rhs:
            rep.violations.append((x, y, z))
        elif lhs == rhs:
            rep.equalities += 1
    n = e.ar.n_indecs
    for i in range(n):
        for j in range(i, n):
            a, b = ObjClass.of(n, i), ObjClass.of(n, j)
            fs, fa, fb = end(a + b), end(a), end(b)
            if fs != fa + fb:
                rep.additivity_failures.append((a, b, fs, fa + fb))
    return rep


def load_valuation(ar: ARQuiver, text: str) -> Valuation:
    """Valuation from a YAML/JSON mapping of indecomposable labels to non-negative integers."""
    doc = yaml.safe_load(text)
    if not isinstance(doc, dict):
        raise QuiverError("valuation file must map indecomposable labels to integers")
    weights = [0] * ar.n_indecs
    for k, v in doc.items():
        if not isinstance(v, int) or v < 0:
            raise QuiverError(f"weight for {k!r} must be a non-negative integer")
        weights[ar.lookup(str(k)).id] = v
    return Valuation(tuple(weights))
