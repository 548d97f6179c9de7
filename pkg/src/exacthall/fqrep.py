"""Explicit quiver representations over F_p and brute-force counting.

This is the oracle layer: Hom and Ext^1 spaces are computed from the
commutation constraints of actual matrices, subrepresentations are
enumerated as tuples of arrow-stable subspaces, and extension classes are
enumerated as cocycle representatives. Everything higher up (Hall products,
exact structures) only consumes the integer counts produced here.
"""

from __future__ import annotations

import random
from collections import Counter
from dataclasses import dataclass
from functools import lru_cache
from itertools import product
from typing import Iterator, Sequence

from .errors import BudgetExceeded, DecompositionError, QuiverError, RealizationError
from .fqlinalg import FqMatrix, _subspaces, gl_order, is_invertible, is_prime, kernel_basis_rows, rank_rows, rref_rows
from .quiver import ARQuiver, DimVector, Quiver, dim_of, knit_ar_quiver

#: Default cap on the number of candidates any single enumeration may visit.
DEFAULT_BUDGET = 2_000_000


@dataclass(frozen=True)
class ObjClass:
    """Isomorphism class of an object: multiplicities indexed by ``ARQuiver.indecs``."""

    counts: tuple[int, ...]

    @classmethod
    def zero(cls, n: int) -> "ObjClass":
        return cls((0,) * n)

    @classmethod
    def of(cls, n: int, *ids: int) -> "ObjClass":
        c = [0] * n
        for i in ids:
            c[i] += 1
        return cls(tuple(c))

    def __add__(self, other: "ObjClass") -> "ObjClass":
        return ObjClass(tuple(a + b for a, b in zip(self.counts, other.counts)))

    def __bool__(self) -> bool:
        return any(self.counts)

    def support(self) -> tuple[int, ...]:
        return tuple(i for i, m in enumerate(self.counts) if m)

    def summands(self) -> Iterator[int]:
        for i, m in enumerate(self.counts):
            for _ in range(m):
                yield i


@dataclass(frozen=True)
class RepMat:
    """Representation: one matrix over F_p per arrow (rows = target dim, cols = source dim)."""

    quiver: Quiver
    dim: DimVector
    maps: tuple[FqMatrix, ...]
    p: int

    def __post_init__(self):
        if len(self.dim) != self.quiver.n or len(self.maps) != len(self.quiver.arrows):
            raise ValueError("representation does not match the quiver")
        for (s, t), m in zip(self.quiver.arrow_indices, self.maps):
            if (m.rows, m.cols) != (self.dim[t], self.dim[s]) or m.p != self.p:
                raise ValueError("arrow matrix has the wrong shape or field")

    @property
    def total_dim(self) -> int:
        return sum(self.dim)

    @property
    def key(self) -> tuple:
        return (self.dim, tuple(m.entries for m in self.maps))


def make_rep(q: Quiver, dim: Sequence[int], mats: Sequence[Sequence[Sequence[int]]], p: int) -> RepMat:
    """Build a RepMat from nested integer lists (one matrix per arrow)."""
    dim = tuple(dim)
    maps = tuple(
        FqMatrix.from_rows(m, p, cols=dim[s]) if dim[t] else FqMatrix.zeros(0, dim[s], p)
        for (s, t), m in zip(q.arrow_indices, mats)
    )
    return RepMat(q, dim, maps, p)


def zero_rep(q: Quiver, dim: Sequence[int], p: int) -> RepMat:
    dim = tuple(dim)
    return RepMat(q, dim, tuple(FqMatrix.zeros(dim[t], dim[s], p) for s, t in q.arrow_indices), p)


def direct_sum(m: RepMat, n: RepMat) -> RepMat:
    if m.quiver != n.quiver or m.p != n.p:
        raise ValueError("quiver/field mismatch")
    q, p = m.quiver, m.p
    dim = tuple(a + b for a, b in zip(m.dim, n.dim))
    maps = []
    for (s, t), a, b in zip(q.arrow_indices, m.maps, n.maps):
        rows = [list(r) + [0] * n.dim[s] for r in a.entries]
        rows += [[0] * m.dim[s] + list(r) for r in b.entries]
        maps.append(FqMatrix.from_rows(rows, p, cols=dim[s]) if rows else FqMatrix.zeros(0, dim[s], p))
    return RepMat(q, dim, tuple(maps), p)


def _constraint_rows(m: RepMat, n: RepMat) -> tuple[list[list[int]], int]:
    """Rows of the linear map (f_v) -> (N_a f_s - f_t M_a)_a.

    Variables are the entries of f_v : M_v -> N_v (an n_v x m_v matrix),
    laid out vertex by vertex. Returned as (equation rows, number of variables).
    """
    if m.quiver != n.quiver or m.p != n.p:
        raise ValueError("quiver/field mismatch")
    q, p = m.quiver, m.p
    offset = []
    nv = 0
    for v in range(q.n):
        offset.append(nv)
        nv += n.dim[v] * m.dim[v]
    rows = []
    for (s, t), ma, na in zip(q.arrow_indices, m.maps, n.maps):
        ms, nt = m.dim[s], n.dim[t]
        ns, mt = n.dim[s], m.dim[t]
        for r in range(nt):
            for c in range(ms):
                row = [0] * nv
                # (N_a f_s)[r][c] = sum_k N_a[r][k] f_s[k][c]
                for k in range(ns):
                    x = na.entries[r][k]
                    if x:
                        row[offset[s] + k * ms + c] += x
                # (f_t M_a)[r][c] = sum_k f_t[r][k] M_a[k][c]
                for k in range(mt):
                    x = ma.entries[k][c]
                    if x:
                        row[offset[t] + r * mt + k] -= x
                rows.append([x % p for x in row])
    return rows, nv


def hom_dim(m: RepMat, n: RepMat) -> int:
    """dim Hom(M, N) = nullity of the commutation constraints."""
    rows, nv = _constraint_rows(m, n)
    return nv - rank_rows(rows, m.p, nv)


def ext1_dim(m: RepMat, n: RepMat) -> int:
    """dim Ext^1(M, N) = corank of the same constraint map (the quiver algebra is hereditary)."""
    rows, nv = _constraint_rows(m, n)
    return len(rows) - rank_rows(rows, m.p, nv)


def hom_basis(m: RepMat, n: RepMat) -> list[tuple[int, ...]]:
    rows, nv = _constraint_rows(m, n)
    if not rows:
        return [tuple(int(i == j) for j in range(nv)) for i in range(nv)]
    return kernel_basis_rows(rows, m.p, nv)


def aut_count(m: RepMat, budget: int | None = DEFAULT_BUDGET) -> int:
    """|Aut(M)| by enumerating End(M) and testing invertibility vertex by vertex."""
    p = m.p
    basis = hom_basis(m, m)
    if budget is not None and p ** len(basis) > budget:
        raise BudgetExceeded(f"|End(M)| = {p}^{len(basis)} exceeds budget {budget}")
    blocks = []
    off = 0
    for d in m.dim:
        blocks.append((off, d))
        off += d * d
    count = 0
    for coeffs in product(range(p), repeat=len(basis)):
        f = [0] * off
        for c, b in zip(coeffs, basis):
            if c:
                for i, x in enumerate(b):
                    if x:
                        f[i] += c * x
        ok = True
        for o, d in blocks:
            if d and not is_invertible([f[o + r * d : o + (r + 1) * d] for r in range(d)], p, d):
                ok = False
                break
        count += ok
    return count


class RepCategory:
    """Representations of a Dynkin quiver over F_p, with memoised counting.

    Holds one realization per indecomposable, the Hom-dimension matrix
    ``H[U][V] = dim Hom(U, V)`` and caches keyed by immutable values, so
    concurrent use only ever writes the same value for the same key.
    """

    def __init__(self, ar: ARQuiver, p: int, seed: int = 0, budget: int | None = DEFAULT_BUDGET):
        if not is_prime(p):
            raise ValueError(f"{p} is not prime")
        self.ar = ar
        self.quiver = ar.quiver
        self.p = p
        self.seed = seed
        self.budget = budget
        self.n = ar.n_indecs
        self.indec_reps = [self._realize_indec(u.id) for u in ar.indecs]
        self.H = [[hom_dim(a, b) for b in self.indec_reps] for a in self.indec_reps]
        for i in range(self.n):
            if self.H[i][i] != 1 or any(self.H[i][j] for j in range(i)):
                raise AssertionError("Hom matrix is not unitriangular in knitting order")
        self._support = [frozenset(v for v, x in enumerate(u.dim) if x) for u in ar.indecs]
        self._decomp_cache: dict[tuple, ObjClass] = {}
        self._sub_cache: dict[tuple, Counter] = {}
        self._ext_cache: dict[tuple, Counter] = {}
        self._classes_cache: dict[DimVector, tuple[ObjClass, ...]] = {}

    # -- realization -------------------------------------------------------

    def _realize_indec(self, i: int) -> RepMat:
        dim = self.ar.indecs[i].dim
        q, p = self.quiver, self.p
        rng = random.Random(f"{self.seed}:{p}:{dim}")
        shapes = [(dim[t], dim[s]) for s, t in q.arrow_indices]
        for _ in range(2000):
            mats = [[[rng.randrange(p) for _ in range(c)] for _ in range(r)] for r, c in shapes]
            rep = make_rep(q, dim, mats, p)
            if hom_dim(rep, rep) == 1:
                return rep
        # Exhaustive fallback; only viable for tiny dimension vectors.
        nentries = sum(r * c for r, c in shapes)
        if self.budget is not None and p**nentries > self.budget:
            raise RealizationError(f"could not realize indecomposable of dimension {dim}")
        for flat in product(range(p), repeat=nentries):
            mats, k = [], 0
            for r, c in shapes:
                mats.append([list(flat[k + a * c : k + (a + 1) * c]) for a in range(r)])
                k += r * c
            rep = make_rep(q, dim, mats, p)
            if hom_dim(rep, rep) == 1:
                return rep
        raise RealizationError(f"no indecomposable of dimension {dim} over F_{p}")

    def realize(self, c: ObjClass) -> RepMat:
        rep = zero_rep(self.quiver, (0,) * self.quiver.n, self.p)
        for i in c.summands():
            rep = direct_sum(rep, self.indec_reps[i])
        return rep

    # -- decomposition -----------------------------------------------------

    def decompose(self, m: RepMat) -> ObjClass:
        """Krull-Schmidt multiplicities from dim Hom(U, M) for every indecomposable U."""
        key = m.key
        hit = self._decomp_cache.get(key)
        if hit is not None:
            return hit
        supp = {v for v, x in enumerate(m.dim) if x}
        h = [hom_dim(self.indec_reps[u], m) if self._support[u] & supp else 0 for u in range(self.n)]
        # H is upper unitriangular: back-substitute from the last indecomposable.
        mult = [0] * self.n
        for u in reversed(range(self.n)):
            mult[u] = h[u] - sum(self.H[u][v] * mult[v] for v in range(u + 1, self.n))
            if mult[u] < 0:
                raise DecompositionError(f"negative multiplicity for indecomposable {u}")
        out = ObjClass(tuple(mult))
        if dim_of(self.ar, out.counts) != m.dim:
            raise DecompositionError("multiplicities do not reproduce the dimension vector")
        self._decomp_cache[key] = out
        return out

    # -- class-level invariants -------------------------------------------

    def hom(self, a: ObjClass, c: ObjClass) -> int:
        """dim Hom between direct sums, by bilinearity of the indecomposable table."""
        return sum(x * y * self.H[i][j] for i, x in enumerate(a.counts) if x for j, y in enumerate(c.counts) if y)

    def aut_order(self, a: ObjClass) -> int:
        """|Aut| of a direct sum of bricks: p^(dim rad End) * prod |GL_m(p)|."""
        rad = self.hom(a, a) - sum(m * m for m in a.counts)
        out = self.p**rad
        for m in a.counts:
            out *= gl_order(m, self.p)
        return out

    def classes_of_dim(self, dim: Sequence[int]) -> tuple[ObjClass, ...]:
        """All isomorphism classes with the given dimension vector."""
        dim = tuple(dim)
        hit = self._classes_cache.get(dim)
        if hit is not None:
            return hit
        roots = [u.dim for u in self.ar.indecs]
        out: list[ObjClass] = []

        def rec(i: int, rest: list[int], acc: list[int]):
            if not any(rest):
                out.append(ObjClass(tuple(acc) + (0,) * (self.n - len(acc))))
                return
            if i == self.n:
                return
            r = roots[i]
            k = 0
            while True:
                rec(i + 1, rest, acc + [k])
                k += 1
                rest = [a - b for a, b in zip(rest, r)]
                if any(x < 0 for x in rest):
                    break

        rec(0, list(dim), [])
        res = tuple(sorted(out, key=lambda c: c.counts, reverse=True))
        self._classes_cache[dim] = res
        return res

    # -- subobjects and Hall numbers --------------------------------------

    def subobject_table(self, b: RepMat, sub_dim: Sequence[int]) -> Counter:
        """Counter of (quotient class, sub class) over subrepresentations of dim ``sub_dim``."""
        sub_dim = tuple(sub_dim)
        key = (b.key, sub_dim)
        hit = self._sub_cache.get(key)
        if hit is not None:
            return hit
        table: Counter = Counter()
        for sub, quot in iter_subreps(b, sub_dim, self.budget):
            table[(self.decompose(quot), self.decompose(sub))] += 1
        self._sub_cache[key] = table
        return table

    def subobject_count(self, b: RepMat, sub: ObjClass, quot: ObjClass) -> int:
        """Hall number: subobjects B' of B with B' ~ sub and B/B' ~ quot."""
        sd, qd = dim_of(self.ar, sub.counts), dim_of(self.ar, quot.counts)
        if tuple(x + y for x, y in zip(sd, qd)) != b.dim:
            return 0
        return self.subobject_table(b, sd)[(quot, sub)]

    def hall_number(self, a: ObjClass, c: ObjClass, b: ObjClass) -> int:
        """g^B_{A,C}: subobjects of B isomorphic to C with quotient isomorphic to A."""
        return self.subobject_count(self.realize(b), c, a)

    def ext_count(self, a: ObjClass, c: ObjClass, b: ObjClass) -> int:
        """|Ext^1(A, C)_B| from the Hall number via the Riedtmann-Peng conversion."""
        if dim_of(self.ar, a.counts) != tuple(
            x - y for x, y in zip(dim_of(self.ar, b.counts), dim_of(self.ar, c.counts))
        ):
            return 0
        g = self.hall_number(a, c, b)
        if not g:
            return 0
        num = g * self.p ** self.hom(a, c) * self.aut_order(a) * self.aut_order(c)
        den = self.aut_order(b)
        if num % den:
            raise AssertionError(f"non-integral extension count {num}/{den}")
        return num // den

    # -- direct enumeration of extensions ----------------------------------

    def extension_table(self, a: ObjClass, c: ObjClass) -> Counter:
        """Counter of middle-term classes over all of Ext^1(A, C), one cocycle per class."""
        key = (a, c)
        hit = self._ext_cache.get(key)
        if hit is not None:
            return hit
        ra, rc = self.realize(a), self.realize(c)
        table: Counter = Counter()
        for mid in iter_extensions(ra, rc, self.budget):
            table[self.decompose(mid)] += 1
        self._ext_cache[key] = table
        return table

    def ext_count_direct(self, a: ObjClass, c: ObjClass, b: ObjClass) -> int:
        return self.extension_table(a, c)[b]

    def ext1(self, a: ObjClass, c: ObjClass) -> int:
        return ext1_dim(self.realize(a), self.realize(c))


@lru_cache(maxsize=None)
def category(ar: ARQuiver, p: int, seed: int = 0) -> RepCategory:
    """Shared RepCategory per (AR quiver, prime, seed)."""
    return RepCategory(ar, p, seed)


def iter_subreps(b: RepMat, sub_dim: DimVector, budget: int | None = DEFAULT_BUDGET):
    """Yield (sub, quotient) RepMat pairs for every subrepresentation of dimension ``sub_dim``.

    Subspaces are in reduced row-echelon form, so coordinates of a vector in a
    subspace are its entries at the pivot columns, and the non-pivot columns
    give a canonical complement used to write down the quotient.
    """
    q, p = b.quiver, b.p
    n = q.n
    if any(e < 0 or e > d for e, d in zip(sub_dim, b.dim)):
        return
    choices = []
    total = 1
    for v in range(n):
        opts = []
        for basis in _subspaces(p, b.dim[v], sub_dim[v]):
            piv = tuple(r.index(1) for r in basis)
            npiv = tuple(c for c in range(b.dim[v]) if c not in piv)
            opts.append((basis, piv, npiv))
        total *= len(opts)
        choices.append(opts)
    if budget is not None and total > budget:
        raise BudgetExceeded(f"{total} subspace tuples exceed budget {budget}")
    arrows = q.arrow_indices
    cols = [tuple(m.transpose().entries) for m in b.maps]  # columns of each arrow matrix
    # arrows to check once both endpoints are fixed, by the later vertex
    check_at: list[list[int]] = [[] for _ in range(n)]
    for k, (s, t) in enumerate(arrows):
        check_at[max(s, t)].append(k)

    def reduce(vec, sub):
        basis, piv, _ = sub
        out = list(vec)
        for row, pc in zip(basis, piv):
            f = out[pc]
            if f:
                out = [(x - f * y) % p for x, y in zip(out, row)]
        return out

    def image(k, vec):
        # B_a applied to a column vector ``vec``
        m = b.maps[k].entries
        return [sum(x * y for x, y in zip(r, vec)) % p for r in m]

    def stable(k, pick):
        s, t = arrows[k]
        for u in pick[s][0]:
            if any(reduce(image(k, u), pick[t])):
                return False
        return True

    pick: list = [None] * n

    def rec(v):
        if v == n:
            yield tuple(pick)
            return
        for opt in choices[v]:
            pick[v] = opt
            if all(stable(k, pick) for k in check_at[v]):
                yield from rec(v + 1)
        pick[v] = None

    for sel in rec(0):
        sub_maps, quot_maps = [], []
        for k, (s, t) in enumerate(arrows):
            bs, _, nps = sel[s]
            _, pt, npt = sel[t]
            imgs = [image(k, u) for u in bs]
            sub_cols = [[w[c] for c in pt] for w in imgs]
            sub_maps.append([[sub_cols[j][i] for j in range(len(bs))] for i in range(len(pt))])
            q_cols = [[x for i, x in enumerate(reduce(cols[k][c], sel[t])) if i in npt] for c in nps]
            quot_maps.append([[q_cols[j][i] for j in range(len(nps))] for i in range(len(npt))])
        qdim = tuple(d - e for d, e in zip(b.dim, sub_dim))
        yield make_rep(q, sub_dim, sub_maps, p), make_rep(q, qdim, quot_maps, p)


def iter_extensions(a: RepMat, c: RepMat, budget: int | None = DEFAULT_BUDGET):
    """Yield one middle term C >-> B ->> A for each class of Ext^1(A, C).

    Cocycles are tuples of maps xi_a : A_s -> C_t; coboundaries are the image
    of f -> C_a f_s - f_t A_a. Unit vectors at the non-pivot coordinates of
    the coboundary space span a complement, giving one cocycle per class.
    """
    q, p = a.quiver, a.p
    rows, nv = _constraint_rows(a, c)
    neq = len(rows)
    image = [list(col) for col in zip(*rows)] if rows and nv else []
    red, piv = rref_rows(image, p, neq) if image else ([], [])
    free = [i for i in range(neq) if i not in set(piv)]
    if budget is not None and p ** len(free) > budget:
        raise BudgetExceeded(f"|Ext^1| = {p}^{len(free)} exceeds budget {budget}")
    dim = tuple(x + y for x, y in zip(c.dim, a.dim))
    # equation coordinates are laid out arrow by arrow as (r in C_t, col in A_s)
    blocks = []
    off = 0
    for s, t in q.arrow_indices:
        blocks.append(off)
        off += c.dim[t] * a.dim[s]
    for coeffs in product(range(p), repeat=len(free)):
        xi = [0] * neq
        for i, x in zip(free, coeffs):
            xi[i] = x
        mats = []
        for k, (s, t) in enumerate(q.arrow_indices):
            cs, as_ = c.dim[s], a.dim[s]
            ct, at = c.dim[t], a.dim[t]
            top = [
                list(c.maps[k].entries[r]) + [xi[blocks[k] + r * as_ + j] for j in range(as_)] for r in range(ct)
            ]
            bottom = [[0] * cs + list(a.maps[k].entries[r]) for r in range(at)]
            mats.append(top + bottom)
        yield make_rep(q, dim, mats, p)


def realize(c: ObjClass, p: int, ar: ARQuiver, seed: int = 0) -> RepMat:
    return category(ar, p, seed).realize(c)


def decompose(m: RepMat, ar: ARQuiver | None = None) -> ObjClass:
    ar = ar or knit_ar_quiver(m.quiver)
    return category(ar, m.p).decompose(m)


def subobject_count(b: RepMat, sub: ObjClass, quot: ObjClass, ar: ARQuiver | None = None) -> int:
    ar = ar or knit_ar_quiver(b.quiver)
    return category(ar, b.p).subobject_count(b, sub, quot)


def ext_count(a: ObjClass, c: ObjClass, b: ObjClass, p: int, ar: ARQuiver) -> int:
    """|Ext^1(A, C)_B| over F_p (Riedtmann-Peng conversion of the Hall number)."""
    return category(ar, p).ext_count(a, c, b)


def parse_object(ar: ARQuiver, text: str) -> ObjClass:
    """Object from ``+``-separated indecomposable labels, each optionally ``k*label``; ``0`` is zero."""
    counts = [0] * ar.n_indecs
    text = text.strip()
    if text in ("0", ""):
        return ObjClass(tuple(counts))
    for part in text.split("+"):
        part = part.strip()
        mult, _, name = part.rpartition("*")
        try:
            k = int(mult) if mult else 1
        except ValueError:
            raise QuiverError(f"bad multiplicity in {part!r}") from None
        if k < 0:
            raise QuiverError(f"negative multiplicity in {part!r}")
        counts[ar.lookup(name.strip()).id] += k
    return ObjClass(tuple(counts))


def format_object(ar: ARQuiver, c: ObjClass) -> str:
    """Canonical text for an object, inverse to :func:`parse_object`."""
    parts = [(f"{m}*" if m > 1 else "") + ar.indecs[i].label for i, m in enumerate(c.counts) if m]
    return "+".join(parts) or "0"
