"""Exact structures on rep(Q) as subsets of AR conflations.

For a representation-finite hereditary category every exact structure is
determined by which AR conflations it contains, and a conflation
``X >-> Y ->> Z`` of the maximal structure lies in the structure ``E_S``
exactly when its contravariant defect only has composition factors
``S_U`` with ``U`` an end of a mesh in ``S``. The multiplicity of ``S_U``
is the Hom-dimension alternating sum

    b_U = dim Hom(U, Z) - dim Hom(U, Y) + dim Hom(U, X),

so membership depends on isomorphism classes only.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from itertools import combinations
from typing import Iterable, Sequence

from .errors import BudgetExceeded, QuiverError
from .fqrep import ObjClass, category
from .quiver import ARQuiver, dim_of

DefectVector = tuple[int, ...]

#: Maximal number of meshes for which all 2^m structures are listed.
DEFAULT_LATTICE_BUDGET = 16


@dataclass(frozen=True)
class ExactStructure:
    """The exact structure generated by the AR conflations with the given mesh indices."""

    ar: ARQuiver
    meshes: frozenset[int]

    def __post_init__(self):
        if not self.meshes <= frozenset(range(len(self.ar.meshes))):
            raise ValueError(f"mesh indices {sorted(self.meshes)} out of range")

    @classmethod
    def maximal(cls, ar: ARQuiver) -> "ExactStructure":
        return cls(ar, frozenset(range(len(ar.meshes))))

    @classmethod
    def split(cls, ar: ARQuiver) -> "ExactStructure":
        return cls(ar, frozenset())

    @classmethod
    def of(cls, ar: ARQuiver, *mesh_numbers: int) -> "ExactStructure":
        """Structure from 1-based mesh numbers, e.g. ``of(ar, 1, 2)`` is E_12."""
        return cls(ar, frozenset(k - 1 for k in mesh_numbers))

    @property
    def ends(self) -> frozenset[int]:
        """Indecomposables that are not projective in this structure."""
        return frozenset(self.ar.meshes[k].end.id for k in self.meshes)

    @property
    def tau_ends(self) -> frozenset[int]:
        return frozenset(self.ar.meshes[k].tau_end.id for k in self.meshes)

    @property
    def is_split(self) -> bool:
        return not self.meshes

    @property
    def is_maximal(self) -> bool:
        return len(self.meshes) == len(self.ar.meshes)

    def __le__(self, other: "ExactStructure") -> bool:
        return self.meshes <= other.meshes

    def __lt__(self, other: "ExactStructure") -> bool:
        return self.meshes < other.meshes

    def meet(self, other: "ExactStructure") -> "ExactStructure":
        return ExactStructure(self.ar, self.meshes & other.meshes)

    def join(self, other: "ExactStructure") -> "ExactStructure":
        return ExactStructure(self.ar, self.meshes | other.meshes)

    def complement(self) -> "ExactStructure":
        return ExactStructure(self.ar, frozenset(range(len(self.ar.meshes))) - self.meshes)

    @property
    def label(self) -> str:
        if self.is_split:
            return "add"
        if self.is_maximal:
            return "max"
        return ",".join(str(k + 1) for k in sorted(self.meshes))

    def __repr__(self) -> str:
        return f"ExactStructure({self.label})"


def parse_structure(ar: ARQuiver, text: str) -> ExactStructure:
    """``max``, ``add`` or comma-separated 1-based mesh numbers in knitting order."""
    text = text.strip()
    if text == "max":
        return ExactStructure.maximal(ar)
    if text in ("add", ""):
        return ExactStructure.split(ar)
    try:
        nums = [int(x) for x in text.split(",")]
    except ValueError:
        raise QuiverError(f"bad structure selector {text!r}") from None
    if any(k < 1 or k > len(ar.meshes) for k in nums):
        raise QuiverError(f"structure {text!r}: mesh numbers must lie in 1..{len(ar.meshes)}")
    return ExactStructure.of(ar, *nums)


def hom_table(ar: ARQuiver) -> list[list[int]]:
    """dim Hom(U, V) for indecomposables U, V (field independent for Dynkin quivers)."""
    return category(ar, 2).H


def defect_vector(ar: ARQuiver, x: ObjClass, y: ObjClass, z: ObjClass) -> DefectVector:
    """Multiplicities b_U of the simple functors in the contravariant defect of X >-> Y ->> Z."""
    dx, dy, dz = (dim_of(ar, o.counts) for o in (x, y, z))
    if tuple(a + b for a, b in zip(dx, dz)) != dy:
        raise ValueError("dim X + dim Z must equal dim Y")
    h = hom_table(ar)
    n = ar.n_indecs

    def hom_from(u, o):
        return sum(h[u][v] * m for v, m in enumerate(o.counts) if m)

    return tuple(hom_from(u, z) - hom_from(u, y) + hom_from(u, x) for u in range(n))


def defect_by_mesh_solve(ar: ARQuiver, x: ObjClass, y: ObjClass, z: ObjClass) -> DefectVector | None:
    """Cross-check: solve [X] - [Y] + [Z] = sum_U b_U [mesh_U] over Q, b indexed by indecs."""
    n = ar.n_indecs
    target = [Fraction(a - b + c) for a, b, c in zip(x.counts, y.counts, z.counts)]
    gens = [m.kclass(n) for m in ar.meshes]
    # augmented system: columns are mesh generators
    rows = [[Fraction(g[i]) for g in gens] + [target[i]] for i in range(n)]
    ncol = len(gens)
    piv_cols = []
    r = 0
    for c in range(ncol):
        piv = next((i for i in range(r, n) if rows[i][c] != 0), None)
        if piv is None:
            continue
        rows[r], rows[piv] = rows[piv], rows[r]
        rows[r] = [v / rows[r][c] for v in rows[r]]
        for i in range(n):
            if i != r and rows[i][c] != 0:
                f = rows[i][c]
                rows[i] = [a - f * b for a, b in zip(rows[i], rows[r])]
        piv_cols.append(c)
        r += 1
    if any(rows[i][ncol] != 0 for i in range(r, n)):
        return None
    coeff = [Fraction(0)] * ncol
    for i, c in enumerate(piv_cols):
        coeff[c] = rows[i][ncol]
    out = [0] * n
    for k, m in enumerate(ar.meshes):
        if coeff[k].denominator != 1:
            return None
        out[m.end.id] = int(coeff[k])
    return tuple(out)


def conflation_in(e: ExactStructure, x: ObjClass, y: ObjClass, z: ObjClass) -> bool:
    """Whether the (assumed existing) maximal-structure conflation X >-> Y ->> Z lies in ``e``.

    The caller certifies that such a conflation exists, e.g. by a positive
    extension count; only isomorphism classes are needed.
    """
    b = defect_vector(e.ar, x, y, z)
    ends = e.ends
    return all(u in ends for u, bu in enumerate(b) if bu)


def projectives(e: ExactStructure) -> frozenset[int]:
    return frozenset(range(e.ar.n_indecs)) - e.ends


def injectives(e: ExactStructure) -> frozenset[int]:
    return frozenset(range(e.ar.n_indecs)) - e.tau_ends


def enumerate_structures(ar: ARQuiver, budget: int = DEFAULT_LATTICE_BUDGET) -> list[ExactStructure]:
    """All 2^m exact structures, ordered by size and then lexicographically."""
    m = len(ar.meshes)
    if m > budget:
        raise BudgetExceeded(f"2^{m} exact structures exceed the lattice budget 2^{budget}")
    return [ExactStructure(ar, frozenset(s)) for k in range(m + 1) for s in combinations(range(m), k)]


def structure_with_projectives(b: Iterable[int], e: ExactStructure) -> ExactStructure:
    """Largest structure below ``e`` in which every indecomposable in ``b`` is projective."""
    b = set(b)
    return ExactStructure(e.ar, frozenset(k for k in e.meshes if e.ar.meshes[k].end.id not in b))


def structure_with_injectives(b: Iterable[int], e: ExactStructure) -> ExactStructure:
    """Largest structure below ``e`` in which every indecomposable in ``b`` is injective."""
    b = set(b)
    return ExactStructure(e.ar, frozenset(k for k in e.meshes if e.ar.meshes[k].tau_end.id not in b))


def comparable_pairs(structures: Sequence[ExactStructure]) -> list[tuple[ExactStructure, ExactStructure]]:
    """All (E, E') with E' <= E."""
    return [(e, f) for e in structures for f in structures if f <= e]
