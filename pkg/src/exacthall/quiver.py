"""Dynkin quivers, their indecomposables and the knitted Auslander-Reiten quiver.

A quiver is accepted only if its underlying graph is a disjoint union of
simply-laced Dynkin diagrams, so the representation category is additively
finite and every indecomposable has a one-dimensional endomorphism ring.
Indecomposables are identified with positive roots (Gabriel), and are
discovered by knitting: starting from the projectives, the dimension vector
of ``tau^-1 X`` is the sum over the direct successors of ``X`` minus ``X``.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from functools import cached_property, lru_cache
from importlib.resources import files
from pathlib import Path
from typing import Iterable, Sequence

import yaml

from .errors import CyclicQuiverError, NotDynkinError, QuiverError, QuiverParseError

DimVector = tuple[int, ...]


@dataclass(frozen=True)
class Quiver:
    """Finite quiver given by vertex labels and (source, target) label pairs."""

    vertices: tuple[str, ...]
    arrows: tuple[tuple[str, str], ...]
    aliases: tuple[tuple[str, str], ...] = ()

    def __post_init__(self):
        if len(set(self.vertices)) != len(self.vertices):
            raise QuiverParseError("duplicate vertex labels")
        for s, t in self.arrows:
            if s not in self.vertices or t not in self.vertices:
                raise QuiverParseError(f"arrow {s}->{t} uses an unknown vertex")
        validate(self)

    @cached_property
    def index(self) -> dict[str, int]:
        return {v: i for i, v in enumerate(self.vertices)}

    @cached_property
    def arrow_indices(self) -> tuple[tuple[int, int], ...]:
        return tuple((self.index[s], self.index[t]) for s, t in self.arrows)

    @property
    def n(self) -> int:
        return len(self.vertices)

    @cached_property
    def topological_order(self) -> tuple[int, ...]:
        """Vertex indices with every arrow pointing forward (ties by label order)."""
        order = _toposort(self.n, self.arrow_indices)
        assert order is not None
        return tuple(order)

    @cached_property
    def paths(self) -> tuple[tuple[int, ...], ...]:
        """``paths[i][j]`` is the number of paths from vertex i to vertex j."""
        n = self.n
        out = [[0] * n for _ in range(n)]
        for i in reversed(self.topological_order):
            out[i][i] = 1
            for s, t in self.arrow_indices:
                if s == i:
                    for j in range(n):
                        out[i][j] += out[t][j]
        return tuple(tuple(r) for r in out)

    def projective_dim(self, i: int) -> DimVector:
        return tuple(self.paths[i][j] for j in range(self.n))

    def injective_dim(self, i: int) -> DimVector:
        return tuple(self.paths[j][i] for j in range(self.n))

    def simple_dim(self, i: int) -> DimVector:
        return tuple(int(j == i) for j in range(self.n))


def _toposort(n: int, arrows: Sequence[tuple[int, int]]) -> list[int] | None:
    indeg = [0] * n
    for _, t in arrows:
        indeg[t] += 1
    ready = [i for i in range(n) if indeg[i] == 0]
    order = []
    while ready:
        ready.sort()
        i = ready.pop(0)
        order.append(i)
        for s, t in arrows:
            if s == i:
                indeg[t] -= 1
                if indeg[t] == 0:
                    ready.append(t)
    return order if len(order) == n else None


def validate(q: Quiver) -> None:
    """Raise if ``q`` is cyclic, not simply-laced, or not of Dynkin type."""
    arrows = [(q.vertices.index(s), q.vertices.index(t)) for s, t in q.arrows]
    if any(s == t for s, t in arrows) or _toposort(len(q.vertices), arrows) is None:
        raise CyclicQuiverError("quiver has an oriented cycle")
    seen = set()
    for s, t in arrows:
        key = frozenset((s, t))
        if key in seen:
            raise NotDynkinError(f"multiple edges between {q.vertices[s]} and {q.vertices[t]}")
        seen.add(key)
    if not _positive_definite(symmetrized_cartan(len(q.vertices), arrows)):
        raise NotDynkinError("underlying graph is not a union of simply-laced Dynkin diagrams")


def symmetrized_cartan(n: int, arrows: Iterable[tuple[int, int]]) -> list[list[int]]:
    c = [[2 * int(i == j) for j in range(n)] for i in range(n)]
    for s, t in arrows:
        c[s][t] -= 1
        c[t][s] -= 1
    return c


def _positive_definite(m: list[list[int]]) -> bool:
    # Exact Gaussian elimination: symmetric m is positive definite iff every pivot is > 0.
    a = [[Fraction(x) for x in r] for r in m]
    n = len(a)
    for k in range(n):
        if a[k][k] <= 0:
            return False
        for i in range(k + 1, n):
            f = a[i][k] / a[k][k]
            for j in range(k, n):
                a[i][j] -= f * a[k][j]
    return True


def parse_quiver(text: str) -> Quiver:
    """Parse a quiver document (YAML / JSON) with ``vertices`` and ``arrows`` keys.

    Optional ``aliases`` maps extra names to canonical dimension-vector labels.
    """
    try:
        doc = yaml.safe_load(text)
    except yaml.YAMLError as exc:
        raise QuiverParseError(f"not a valid document: {exc}") from None
    if not isinstance(doc, dict) or "vertices" not in doc or "arrows" not in doc:
        raise QuiverParseError("document must be a mapping with 'vertices' and 'arrows'")
    verts, arrows = doc["vertices"], doc["arrows"]
    if not isinstance(verts, list) or not isinstance(arrows, list):
        raise QuiverParseError("'vertices' and 'arrows' must be lists")
    labels = []
    for v in verts:
        if isinstance(v, (list, dict)) or v is None:
            raise QuiverParseError(f"bad vertex label {v!r}")
        s = str(v)
        if not s or any(ch.isspace() for ch in s):
            raise QuiverParseError(f"vertex label {s!r} must be nonempty without whitespace")
        labels.append(s)
    pairs = []
    for a in arrows:
        if not isinstance(a, list) or len(a) != 2:
            raise QuiverParseError(f"arrow {a!r} must be a [source, target] pair")
        pairs.append((str(a[0]), str(a[1])))
    aliases = doc.get("aliases") or {}
    if not isinstance(aliases, dict):
        raise QuiverParseError("'aliases' must be a mapping")
    return Quiver(tuple(labels), tuple(pairs), tuple((str(k), str(v)) for k, v in aliases.items()))


def euler_form(q: Quiver, d: Sequence[int], e: Sequence[int]) -> int:
    """Additive Euler form <d, e> = sum_i d_i e_i - sum_{a: i->j} d_i e_j."""
    if len(d) != q.n or len(e) != q.n:
        raise ValueError(f"dimension vectors must have length {q.n}")
    return sum(x * y for x, y in zip(d, e)) - sum(d[s] * e[t] for s, t in q.arrow_indices)


def positive_roots(q: Quiver) -> list[DimVector]:
    """Positive roots of the underlying root system, closed under simple reflections."""
    n = q.n
    simple = [q.simple_dim(i) for i in range(n)]

    def sym(d, e):
        return euler_form(q, d, e) + euler_form(q, e, d)

    roots = set(simple)
    frontier = list(simple)
    while frontier:
        nxt = []
        for r in frontier:
            for i in range(n):
                c = sym(r, simple[i])
                s = tuple(x - c * int(j == i) for j, x in enumerate(r))
                if all(x >= 0 for x in s) and any(s) and s not in roots:
                    roots.add(s)
                    nxt.append(s)
        frontier = nxt
    return sorted(roots, key=lambda r: (sum(r), r))


@dataclass(frozen=True)
class Indec:
    """Indecomposable representation, identified by its dimension vector."""

    id: int
    dim: DimVector

    @property
    def label(self) -> str:
        return ".".join(map(str, self.dim))


@dataclass(frozen=True)
class Mesh:
    """AR conflation ``tau_end >-> middle ->> end``."""

    tau_end: Indec
    middle: tuple[Indec, ...]
    end: Indec

    def kclass(self, n_indecs: int) -> tuple[int, ...]:
        """[tau Z] - [middle] + [Z] in the additive Grothendieck group."""
        v = [0] * n_indecs
        v[self.tau_end.id] += 1
        v[self.end.id] += 1
        for m in self.middle:
            v[m.id] -= 1
        return tuple(v)


@dataclass(frozen=True)
class ARQuiver:
    """Knitted AR quiver: indecomposables in discovery order and all meshes."""

    quiver: Quiver
    indecs: tuple[Indec, ...]
    meshes: tuple[Mesh, ...]
    projectives_max: frozenset[int]
    injectives_max: frozenset[int]
    irreducible: tuple[tuple[int, int], ...] = field(repr=False)

    @property
    def ordering(self) -> tuple[int, ...]:
        return tuple(u.id for u in self.indecs)

    @property
    def n_indecs(self) -> int:
        return len(self.indecs)

    @cached_property
    def mesh_by_end(self) -> dict[int, int]:
        return {m.end.id: k for k, m in enumerate(self.meshes)}

    @cached_property
    def by_dim(self) -> dict[DimVector, Indec]:
        return {u.dim: u for u in self.indecs}

    def tau(self, i: int) -> int | None:
        k = self.mesh_by_end.get(i)
        return None if k is None else self.meshes[k].tau_end.id

    def projective(self, vertex: int) -> Indec:
        return self.by_dim[self.quiver.projective_dim(vertex)]

    def injective(self, vertex: int) -> Indec:
        return self.by_dim[self.quiver.injective_dim(vertex)]

    def simple(self, vertex: int) -> Indec:
        return self.by_dim[self.quiver.simple_dim(vertex)]

    @cached_property
    def names(self) -> dict[str, int]:
        """Every accepted label for an indecomposable, mapped to its id.

        Canonical labels are dimension-vector strings such as ``1.1.0``.
        Also accepted: ``M<k>`` (1-based knitting order), ``S<v>``, ``P<v>``,
        ``I<v>`` for simples, projectives and injectives at vertex ``v``, and
        any aliases declared in the quiver document.
        """
        out: dict[str, int] = {}
        for u in self.indecs:
            out[u.label] = u.id
            out[f"M{u.id + 1}"] = u.id
        for i, v in enumerate(self.quiver.vertices):
            out.setdefault(f"S{v}", self.simple(i).id)
            out.setdefault(f"P{v}", self.projective(i).id)
            out.setdefault(f"I{v}", self.injective(i).id)
        for alias, target in self.quiver.aliases:
            if target not in out:
                raise QuiverParseError(f"alias {alias!r} points at unknown indecomposable {target!r}")
            out[alias] = out[target]
        return out

    def lookup(self, name: str) -> Indec:
        try:
            return self.indecs[self.names[name]]
        except KeyError:
            raise QuiverError(f"unknown indecomposable label {name!r}") from None


def indecomposables(q: Quiver) -> list[Indec]:
    """One Indec per positive root, in knitting discovery order."""
    return list(knit_ar_quiver(q).indecs)


def knit_ar_quiver(q: Quiver) -> ARQuiver:
    """Knit the AR quiver of ``rep(q)`` starting from the indecomposable projectives."""
    n = q.n
    # Radical summands before the projective cover; sinks (simple projectives) first.
    proj_order = _toposort(n, [(t, s) for s, t in q.arrow_indices])
    dims: list[DimVector] = []
    preds: list[list[int]] = []
    proj_of_vertex: dict[int, int] = {}
    for i in proj_order:
        proj_of_vertex[i] = len(dims)
        dims.append(q.projective_dim(i))
        preds.append([])
    for i in proj_order:
        for s, t in q.arrow_indices:
            if s == i:
                preds[proj_of_vertex[i]].append(proj_of_vertex[t])
    # Projectives whose radical contains a given projective.
    proj_succ: dict[int, list[int]] = {k: [] for k in range(len(dims))}
    for k, ps in enumerate(preds):
        for w in ps:
            proj_succ[w].append(k)

    injective_dims = {q.injective_dim(i) for i in range(n)}
    tau_inv: dict[int, int | None] = {}
    succ: dict[int, list[int]] = {}
    resolved: set[int] = set()
    while len(resolved) < len(dims):
        x = next(
            (k for k in range(len(dims)) if k not in resolved and all(w in resolved for w in preds[k])),
            None,
        )
        if x is None:
            raise AssertionError("knitting stalled: AR quiver is not directed")
        out = [tau_inv[w] for w in preds[x] if tau_inv[w] is not None] + proj_succ[x]
        succ[x] = out
        cand = tuple(sum(dims[y][j] for y in out) - dims[x][j] for j in range(n))
        is_inj = dims[x] in injective_dims
        if is_inj:
            tau_inv[x] = None
        else:
            if not all(c >= 0 for c in cand) or not any(cand) or euler_form(q, cand, cand) != 1:
                raise AssertionError(f"knitting produced a non-root {cand} from {dims[x]}")
            tau_inv[x] = len(dims)
            dims.append(cand)
            preds.append(list(out))
            proj_succ[len(dims) - 1] = []
        resolved.add(x)

    indecs = tuple(Indec(k, d) for k, d in enumerate(dims))
    if sorted(dims) != sorted(positive_roots(q)):
        raise AssertionError("knitted indecomposables disagree with the positive roots")
    meshes = []
    for z in range(len(dims)):
        # tau Z is the unique X with tau^-1 X = Z; its successors form the middle term.
        xs = [x for x, y in tau_inv.items() if y == z]
        if xs:
            (x,) = xs
            mid = tuple(indecs[y] for y in sorted(succ[x]))
            meshes.append(Mesh(indecs[x], mid, indecs[z]))
    meshes.sort(key=lambda m: m.end.id)
    projectives = frozenset(proj_of_vertex.values())
    injectives = frozenset(k for k in range(len(dims)) if dims[k] in injective_dims)
    irreducible = tuple(sorted((x, y) for x in succ for y in succ[x]))
    for m in meshes:
        total = [0] * n
        for u in m.middle:
            total = [a + b for a, b in zip(total, u.dim)]
        assert tuple(a + b for a, b in zip(m.tau_end.dim, m.end.dim)) == tuple(total)
    return ARQuiver(q, indecs, tuple(meshes), projectives, injectives, irreducible)


def dim_of(ar: ARQuiver, counts: Sequence[int]) -> DimVector:
    """Dimension vector of the object with multiplicity vector ``counts``."""
    out = [0] * ar.quiver.n
    for u, m in zip(ar.indecs, counts):
        if m:
            for j, x in enumerate(u.dim):
                out[j] += m * x
    return tuple(out)


#: Quiver documents shipped with the package, by name.
BUILTIN_QUIVERS = ("a2", "a3", "a3-linear", "disjoint-a2", "d4")


def builtin_quiver_text(name: str) -> str:
    if name not in BUILTIN_QUIVERS:
        raise QuiverError(f"unknown builtin quiver {name!r}; choose from {', '.join(BUILTIN_QUIVERS)}")
    return files("exacthall").joinpath("quivers", f"{name}.yaml").read_text()


def load_quiver(source: str) -> Quiver:
    """Quiver from a builtin name (``a3``) or from a path to a quiver document."""
    if source in BUILTIN_QUIVERS:
        return parse_quiver(builtin_quiver_text(source))
    path = Path(source)
    try:
        text = path.read_text()
    except OSError as exc:
        raise QuiverParseError(f"cannot read quiver file {source!r}: {exc.strerror}") from None
    return parse_quiver(text)


@lru_cache(maxsize=None)
def ar_quiver(source: str) -> ARQuiver:
    """Cached ``knit_ar_quiver(load_quiver(source))``."""
    return knit_ar_quiver(load_quiver(source))
