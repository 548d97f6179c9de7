"""K-theoretic and degree cones of a pair of exact structures.

Coordinates ``x_1..x_N`` of the additive Grothendieck group are indexed by
indecomposables in knitting order; degree functions ``d`` live in the dual
space with the same indexing. All arithmetic is exact.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from typing import Sequence

import sympy
from sympy.matrices.normalforms import smith_normal_form

from .errors import BudgetExceeded, StructureOrderError
from .exact import ExactStructure, conflation_in
from .hall import multiply, pairs_up_to

KClass = tuple[int, ...]


def _rank(rows: Sequence[Sequence[int]], n: int) -> int:
    if not rows:
        return 0
    return sympy.Matrix([list(r) for r in rows]).rank()


def mesh_classes(e: ExactStructure) -> list[KClass]:
    n = e.ar.n_indecs
    return [e.ar.meshes[k].kclass(n) for k in sorted(e.meshes)]


@dataclass(frozen=True)
class K0Presentation:
    """Z^N modulo ``relations``; ``invariants`` are the nonzero Smith invariant factors."""

    n: int
    relations: tuple[KClass, ...]
    invariants: tuple[int, ...]

    @property
    def rank(self) -> int:
        return self.n - len(self.invariants)

    @property
    def torsion(self) -> tuple[int, ...]:
        return tuple(d for d in self.invariants if d > 1)


def k0_quotient(e: ExactStructure) -> K0Presentation:
    """K_0(E) as Z^N modulo the mesh relations of E."""
    n = e.ar.n_indecs
    rels = tuple(mesh_classes(e))
    if not rels:
        return K0Presentation(n, (), ())
    snf = smith_normal_form(sympy.Matrix([list(r) for r in rels]), domain=sympy.ZZ)
    inv = tuple(abs(int(snf[i, i])) for i in range(min(snf.shape)) if snf[i, i] != 0)
    return K0Presentation(n, rels, inv)


def _require_order(e: ExactStructure, e_sub: ExactStructure) -> None:
    if not e_sub <= e:
        raise StructureOrderError(f"{e_sub.label} is not below {e.label}")


@dataclass(frozen=True)
class ConeC:
    """Cone generated by conflation classes of E \\ E' (the AR ones suffice)."""

    n: int
    generators: tuple[KClass, ...]

    @property
    def dimension(self) -> int:
        return _rank(self.generators, self.n)

    @property
    def is_simplicial(self) -> bool:
        return self.dimension == len(self.generators)


def cone_C(e: ExactStructure, e_sub: ExactStructure) -> ConeC:
    _require_order(e, e_sub)
    n = e.ar.n_indecs
    gens = tuple(e.ar.meshes[k].kclass(n) for k in sorted(e.meshes - e_sub.meshes))
    cone = ConeC(n, gens)
    if not cone.is_simplicial:
        raise AssertionError("mesh generators are linearly dependent")
    return cone


@dataclass(frozen=True)
class ConeD:
    """Degree functions with d.g > 0 on ``strict`` rows and d.h = 0 on ``equalities`` rows."""

    n: int
    strict: tuple[KClass, ...]
    equalities: tuple[KClass, ...]

    @property
    def closure_dimension(self) -> int:
        # D is non-empty (strict rows are independent of the equalities), so its closure
        # spans the whole solution space of the equalities
        return self.n - _rank(self.equalities, self.n)

    @property
    def lineality_dimension(self) -> int:
        return self.n - _rank(self.equalities + self.strict, self.n)

    def describe(self, names: Sequence[str] | None = None) -> list[str]:
        names = names or [f"d{i + 1}" for i in range(self.n)]
        return [linear_text(r, names) + " > 0" for r in self.strict] + [
            linear_text(r, names) + " = 0" for r in self.equalities
        ]


def linear_text(row: Sequence[int], names: Sequence[str]) -> str:
    parts = []
    for c, nm in zip(row, names):
        if c:
            parts.append(("+" if c > 0 else "-") + (f"{abs(c)}*" if abs(c) != 1 else "") + nm)
    s = "".join(parts) or "0"
    return s[1:] if s.startswith("+") else s


def cone_D(e: ExactStructure, e_sub: ExactStructure) -> ConeD:
    _require_order(e, e_sub)
    n = e.ar.n_indecs
    strict = tuple(e.ar.meshes[k].kclass(n) for k in sorted(e.meshes - e_sub.meshes))
    eqs = tuple(mesh_classes(e_sub))
    return ConeD(n, strict, eqs)


def _dot(d: Sequence, v: Sequence[int]):
    return sum(Fraction(a) * b for a, b in zip(d, v))


def membership(d: Sequence, cone: ConeD) -> bool:
    """Exact check of the equalities and strict inequalities (no tolerance)."""
    if len(d) != cone.n:
        raise ValueError(f"degree vector must have length {cone.n}")
    return all(_dot(d, h) == 0 for h in cone.equalities) and all(_dot(d, g) > 0 for g in cone.strict)


def fourier_motzkin_feasible(ineqs: Sequence[tuple[Sequence, object]], nvars: int) -> bool:
    """Feasibility of {x : row . x >= rhs for every (row, rhs)} by Fourier-Motzkin elimination."""
    sys = [([Fraction(a) for a in row], Fraction(rhs)) for row, rhs in ineqs]
    for j in range(nvars):
        pos, neg, zero = [], [], []
        for row, rhs in sys:
            (pos if row[j] > 0 else neg if row[j] < 0 else zero).append((row, rhs))
        new = list(zero)
        for rp, bp in pos:
            for rn, bn in neg:
                a, b = rp[j], -rn[j]
                new.append(([b * x + a * y for x, y in zip(rp, rn)], b * bp + a * bn))
        # drop exact duplicates to keep the system small
        seen, sys = set(), []
        for row, rhs in new:
            key = (tuple(row), rhs)
            if key not in seen:
                seen.add(key)
                sys.append((row, rhs))
    return all(rhs <= 0 for _, rhs in sys)


def cone_D_nonempty(cone: ConeD) -> bool:
    """Debug oracle: by homogeneity, d.g > 0 may be replaced by d.g >= 1."""
    ineqs = [(g, 1) for g in cone.strict]
    ineqs += [(h, 0) for h in cone.equalities] + [([-x for x in h], 0) for h in cone.equalities]
    return fourier_motzkin_feasible(ineqs, cone.n)


def degree_cone_oracle(e: ExactStructure, e_sub: ExactStructure, d: Sequence, p: int = 2, max_dim: int = 4) -> bool:
    """Membership decided from every certified E-conflation up to ``max_dim`` rather than from meshes.

    ``d`` is accepted iff ``d([X] - [Y] + [Z])`` vanishes on conflations of E'
    and is positive on conflations of E \\ E'.
    """
    _require_order(e, e_sub)
    for z, x in pairs_up_to(e.ar, max_dim):
        for y in multiply(e, z, x, p):
            cls = [a - b + c for a, b, c in zip(x.counts, y.counts, z.counts)]
            val = _dot(d, cls)
            if conflation_in(e_sub, x, y, z):
                if val != 0:
                    return False
            elif val <= 0:
                return False
    return True


@dataclass(frozen=True)
class Face:
    """Face of the simplicial cone C^E spanned by the mesh generators in ``meshes``."""

    meshes: frozenset[int]
    structure: ExactStructure

    @property
    def bitmask(self) -> int:
        return sum(1 << k for k in self.meshes)


def face_lattice(e: ExactStructure, budget: int = 16) -> list[Face]:
    """All 2^|S| faces of C^{E, E^add}; the face spanned by T corresponds to E_T.

    Each subset is certified to be a face by the exposing functional
    weight_function(E, E_T), which vanishes on T and is positive elsewhere.
    """
    from .degen import weight_function

    if len(e.meshes) > budget:
        raise BudgetExceeded(f"2^{len(e.meshes)} faces exceed budget")
    ms = sorted(e.meshes)
    n = e.ar.n_indecs
    out = []
    for mask in range(1 << len(ms)):
        t = frozenset(ms[i] for i in range(len(ms)) if mask >> i & 1)
        sub = ExactStructure(e.ar, t)
        w = weight_function(e, sub)
        for k in ms:
            v = _dot(w.weights, e.ar.meshes[k].kclass(n))
            if (k in t and v != 0) or (k not in t and v <= 0):
                raise AssertionError(f"subset {sorted(t)} is not exposed as a face")
        out.append(Face(t, sub))
    return out

