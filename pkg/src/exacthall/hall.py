"""Hall algebras of exact structures on rep(Q) over F_p.

The product uses extension counts divided by Hom counts:

    [A] * [C] = sum_B |Ext^1_E(A, C)_B| / |Hom(A, C)| [B],

where ``Ext^1_E(A, C)_B`` counts the classes of E-conflations C >-> B ->> A.
For a subset structure E the relative count equals the absolute one when
the conflation lies in E and vanishes otherwise, so one table of absolute
extension counts per prime serves every structure.

Coefficients are exact ``Fraction`` values at a fixed prime. The twisted
algebra needs sqrt(q), so its coefficients are Laurent polynomials in
``NU`` (sympy), built from Hall polynomials interpolated across primes.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import product
from typing import Callable, Iterable, Iterator, Mapping, Sequence, Union

import sympy

from .errors import InterpolationError
from .exact import ExactStructure, conflation_in
from .fqrep import ObjClass, category
from .quiver import ARQuiver, dim_of, euler_form

NU = sympy.Symbol("nu")
Q = sympy.Symbol("q")

#: Primes used for Hall polynomial interpolation, in order.
INTERPOLATION_PRIMES = (2, 3, 5, 7, 11, 13)

Coeff = Union[Fraction, sympy.Expr]


def _is_zero(x: Coeff) -> bool:
    if isinstance(x, sympy.Basic):
        return sympy.expand(x) == 0
    return x == 0


def _norm(x: Coeff) -> Coeff:
    return sympy.expand(x) if isinstance(x, sympy.Basic) else x


class HallElement(Mapping[ObjClass, Coeff]):
    """Finite linear combination of isomorphism classes; zero terms are pruned."""

    __slots__ = ("_terms",)

    def __init__(self, terms: Mapping[ObjClass, Coeff] | Iterable[tuple[ObjClass, Coeff]] = ()):
        items = terms.items() if isinstance(terms, Mapping) else terms
        acc: dict[ObjClass, Coeff] = {}
        for k, v in items:
            acc[k] = acc[k] + v if k in acc else v
        self._terms = {k: _norm(v) for k, v in acc.items() if not _is_zero(v)}

    @classmethod
    def basis(cls, c: ObjClass) -> "HallElement":
        return cls({c: Fraction(1)})

    def __getitem__(self, k: ObjClass) -> Coeff:
        return self._terms[k]

    def coeff(self, k: ObjClass) -> Coeff:
        return self._terms.get(k, Fraction(0))

    def __iter__(self) -> Iterator[ObjClass]:
        return iter(sorted(self._terms, key=lambda c: c.counts, reverse=True))

    def __len__(self) -> int:
        return len(self._terms)

    def __add__(self, other: "HallElement") -> "HallElement":
        return HallElement(list(self._terms.items()) + list(other._terms.items()))

    def __neg__(self) -> "HallElement":
        return HallElement({k: -v for k, v in self._terms.items()})

    def __sub__(self, other: "HallElement") -> "HallElement":
        return self + (-other)

    def scale(self, s: Coeff) -> "HallElement":
        return HallElement({k: s * v for k, v in self._terms.items()})

    def __rmul__(self, s: Coeff) -> "HallElement":
        return self.scale(s)

    def __eq__(self, other) -> bool:
        if not isinstance(other, HallElement):
            return NotImplemented
        return len(self - other) == 0

    def __hash__(self):
        return hash(frozenset(self._terms))

    def truncate(self, keep: Callable[[ObjClass], bool]) -> "HallElement":
        return HallElement({k: v for k, v in self._terms.items() if keep(k)})

    def __repr__(self) -> str:
        if not self._terms:
            return "0"
        return " + ".join(f"({self._terms[k]})[{','.join(map(str, k.counts))}]" for k in self)


def coefficient_of(e: ExactStructure, a: ObjClass, c: ObjClass, b: ObjClass, p: int) -> Fraction:
    """Structure constant: coefficient of [B] in [A] * [C] in H(E) over F_p."""
    cat = category(e.ar, p)
    n = cat.ext_count(a, c, b)
    if not n or not (b == a + c or conflation_in(e, c, b, a)):
        return Fraction(0)
    return Fraction(n, p ** cat.hom(a, c))


def middle_terms(ar: ARQuiver, a: ObjClass, c: ObjClass, p: int = 2) -> tuple[ObjClass, ...]:
    return category(ar, p).classes_of_dim(dim_of(ar, (a + c).counts))


_product_cache: dict[tuple, HallElement] = {}


def multiply(e: ExactStructure, a: ObjClass, c: ObjClass, p: int) -> HallElement:
    """[A] * [C] in H(E) over F_p with exact rational coefficients."""
    key = (e.ar, e.meshes, a, c, p)
    hit = _product_cache.get(key)
    if hit is not None:
        return hit
    cat = category(e.ar, p)
    terms = {}
    hom = p ** cat.hom(a, c)
    for b in middle_terms(e.ar, a, c, p):
        n = cat.ext_count(a, c, b)
        if n and (b == a + c or conflation_in(e, c, b, a)):
            terms[b] = Fraction(n, hom)
    out = HallElement(terms)
    _product_cache[key] = out
    return out


def ext_polynomial(ar: ARQuiver, a: ObjClass, c: ObjClass, b: ObjClass, primes: Sequence[int] = INTERPOLATION_PRIMES):
    """Polynomial in Q interpolating |Ext^1(A, C)_B| at the given primes.

    The degree is raised one point at a time until two consecutive
    interpolants agree.
    """
    pts: list[tuple[int, int]] = []
    prev = None
    for p in primes:
        pts.append((p, category(ar, p).ext_count(a, c, b)))
        cur = sympy.expand(sympy.interpolate(pts, Q)) if len(pts) > 1 else sympy.Integer(pts[0][1])
        if prev is not None and sympy.expand(cur - prev) == 0:
            return cur
        prev = cur
    raise InterpolationError(f"no stable interpolant through {pts}")


def interpolate_polynomial(e: ExactStructure, a: ObjClass, c: ObjClass, b: ObjClass) -> sympy.Expr:
    """Structure constant as a function of q: (Hall polynomial) / q^dim Hom(A, C)."""
    if b != a + c and not conflation_in(e, c, b, a):
        # still certify that the absolute count is polynomial, then gate it
        ext_polynomial(e.ar, a, c, b)
        return sympy.Integer(0)
    hom = category(e.ar, 2).hom(a, c)
    return sympy.expand(ext_polynomial(e.ar, a, c, b) / Q**hom)


def twisted_constants(e: ExactStructure, a: ObjClass, c: ObjClass) -> dict[ObjClass, sympy.Expr]:
    """Untwisted structure constants as polynomials in NU (q = NU^2)."""
    out = {}
    for b in middle_terms(e.ar, a, c):
        if category(e.ar, 2).ext_count(a, c, b) == 0:
            continue
        f = interpolate_polynomial(e, a, c, b)
        if f != 0:
            out[b] = sympy.expand(f.subs(Q, NU**2))
    return out


def multiply_twisted(
    e: ExactStructure, a: ObjClass, c: ObjClass, euler: Callable[[ObjClass, ObjClass], int] | None = None
) -> HallElement:
    """[A] * [C] scaled by NU ** <A, C>, with the additive Euler form by default."""
    if euler is None:
        euler = euler_pairing(e.ar)
    s = NU ** euler(a, c)
    return HallElement({b: s * v for b, v in twisted_constants(e, a, c).items()})


def euler_pairing(ar: ARQuiver) -> Callable[[ObjClass, ObjClass], int]:
    def form(a: ObjClass, c: ObjClass) -> int:
        return euler_form(ar.quiver, dim_of(ar, a.counts), dim_of(ar, c.counts))

    return form


@dataclass
class HallAlgebra:
    """H(E) (or its twisted version when ``p`` is None) with bilinear products of elements."""

    structure: ExactStructure
    p: int | None = 2
    twisted: bool = False

    def __post_init__(self):
        if self.twisted and self.p is not None:
            raise ValueError("the twisted algebra is over Q(nu); pass p=None")
        if not self.twisted and self.p is None:
            raise ValueError("untwisted products need a prime p")

    @property
    def n(self) -> int:
        return self.structure.ar.n_indecs

    def one(self) -> HallElement:
        return HallElement.basis(ObjClass.zero(self.n))

    def basis(self, c: ObjClass) -> HallElement:
        return HallElement.basis(c)

    def gen(self, *ids: int) -> HallElement:
        return HallElement.basis(ObjClass.of(self.n, *ids))

    def product(self, a: ObjClass, c: ObjClass) -> HallElement:
        if self.twisted:
            return multiply_twisted(self.structure, a, c)
        return multiply(self.structure, a, c, self.p)

    def mul(self, x: HallElement, y: HallElement) -> HallElement:
        terms: list[tuple[ObjClass, Coeff]] = []
        for a, ca in x.items():
            for c, cc in y.items():
                for b, cb in self.product(a, c).items():
                    terms.append((b, ca * cc * cb))
        return HallElement(terms)

    def mul_all(self, *xs: HallElement) -> HallElement:
        out = self.one()
        for x in xs:
            out = self.mul(out, x)
        return out


@dataclass
class AssociativityReport:
    structure: str
    p: int
    checked: int = 0
    violations: list[tuple[ObjClass, ObjClass, ObjClass, HallElement, HallElement]] = field(default_factory=list)

    @property
    def ok(self) -> bool:
        return not self.violations


def check_associativity(
    e: ExactStructure, triples: Iterable[tuple[ObjClass, ObjClass, ObjClass]], p: int = 2
) -> AssociativityReport:
    """Compare ([a][b])[c] with [a]([b][c]) on every triple; violations carry both sides."""
    alg = HallAlgebra(e, p)
    rep = AssociativityReport(e.label, p)
    for a, b, c in triples:
        xa, xb, xc = alg.basis(a), alg.basis(b), alg.basis(c)
        left = alg.mul(alg.mul(xa, xb), xc)
        right = alg.mul(xa, alg.mul(xb, xc))
        rep.checked += 1
        if left != right:
            rep.violations.append((a, b, c, left, right))
    return rep


def objects_up_to(ar: ARQuiver, max_total_dim: int, include_zero: bool = True) -> list[ObjClass]:
    """All isomorphism classes of total dimension at most ``max_total_dim``."""
    cat = category(ar, 2)
    out = []
    for d in product(range(max_total_dim + 1), repeat=ar.quiver.n):
        if sum(d) <= max_total_dim and (include_zero or any(d)):
            out.extend(cat.classes_of_dim(d))
    return sorted(out, key=lambda c: (sum(dim_of(ar, c.counts)), tuple(-x for x in c.counts)))


def total_dim(ar: ARQuiver, c: ObjClass) -> int:
    return sum(dim_of(ar, c.counts))


def pairs_up_to(ar: ARQuiver, max_total_dim: int) -> list[tuple[ObjClass, ObjClass]]:
    objs = objects_up_to(ar, max_total_dim)
    return [(a, c) for a in objs for c in objs if total_dim(ar, a) + total_dim(ar, c) <= max_total_dim]


def triples_up_to(ar: ARQuiver, max_total_dim: int) -> list[tuple[ObjClass, ObjClass, ObjClass]]:
    objs = objects_up_to(ar, max_total_dim)
    dims = {o: total_dim(ar, o) for o in objs}
    return [
        (a, b, c)
        for a in objs
        for b in objs
        if dims[a] + dims[b] <= max_total_dim
        for c in objs
        if dims[a] + dims[b] + dims[c] <= max_total_dim
    ]


def product_table(e: ExactStructure, pairs: Iterable[tuple[ObjClass, ObjClass]], p: int) -> dict:
    return {(a, c): multiply(e, a, c, p) for a, c in pairs}
