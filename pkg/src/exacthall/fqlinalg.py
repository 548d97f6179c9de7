"""Exact linear algebra over prime fields F_p.

Matrices are small (desk-scale representation theory), so everything is
plain Python integer arithmetic on tuples of rows. Row vectors throughout.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterator, Sequence

from .errors import BudgetExceeded

Row = tuple[int, ...]

#: Default cap on ``p ** ambient_dim`` for subspace enumeration (2^6 at p=2).
DEFAULT_SUBSPACE_BUDGET = 2**6


def is_prime(n: int) -> bool:
    if n < 2:
        return False
    i = 2
    while i * i <= n:
        if n % i == 0:
            return False
        i += 1
    return True


@dataclass(frozen=True)
class FqMatrix:
    """Dense matrix over F_p with entries reduced mod p."""

    p: int
    rows: int
    cols: int
    entries: tuple[Row, ...]

    def __post_init__(self):
        if not is_prime(self.p):
            raise ValueError(f"modulus {self.p} is not prime")
        if len(self.entries) != self.rows or any(len(r) != self.cols for r in self.entries):
            raise ValueError("entries do not match the declared shape")
        if any(x < 0 or x >= self.p for r in self.entries for x in r):
            raise ValueError("entries must be reduced mod p")

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, cols: int | None = None) -> "FqMatrix":
        entries = tuple(tuple(int(x) % p for x in r) for r in rows)
        if cols is None:
            cols = len(entries[0]) if entries else 0
        return cls(p, len(entries), cols, entries)

    @classmethod
    def zeros(cls, rows: int, cols: int, p: int) -> "FqMatrix":
        return cls(p, rows, cols, tuple((0,) * cols for _ in range(rows)))

    @classmethod
    def identity(cls, n: int, p: int) -> "FqMatrix":
        return cls(p, n, n, tuple(tuple(int(i == j) for j in range(n)) for i in range(n)))

    def __matmul__(self, other: "FqMatrix") -> "FqMatrix":
        if self.cols != other.rows or self.p != other.p:
            raise ValueError("incompatible matrices")
        return FqMatrix(self.p, self.rows, other.cols, matmul(self.entries, other.entries, self.p, other.cols))

    def column(self, j: int) -> Row:
        return tuple(r[j] for r in self.entries)

    def transpose(self) -> "FqMatrix":
        if not self.rows:
            return FqMatrix(self.p, self.cols, 0, tuple(() for _ in range(self.cols)))
        return FqMatrix(self.p, self.cols, self.rows, tuple(zip(*self.entries)))


def matmul(a: Sequence[Row], b: Sequence[Row], p: int, bcols: int) -> tuple[Row, ...]:
    out = []
    for r in a:
        acc = [0] * bcols
        for k, x in enumerate(r):
            if x:
                for j, y in enumerate(b[k]):
                    if y:
                        acc[j] += x * y
        out.append(tuple(v % p for v in acc))
    return tuple(out)


def rref_rows(rows: Sequence[Sequence[int]], p: int, ncols: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row-echelon form of ``rows``; returns (nonzero rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    for c in range(ncols):
        piv = next((i for i in range(r, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = pow(m[r][c], -1, p)
        if inv != 1:
            m[r] = [(x * inv) % p for x in m[r]]
        pr = m[r]
        for i in range(len(m)):
            if i != r and m[i][c]:
                f = m[i][c]
                m[i] = [(x - f * y) % p for x, y in zip(m[i], pr)]
        pivots.append(c)
        r += 1
        if r == len(m):
            break
    return m[:r], pivots


def rank_rows(rows: Sequence[Sequence[int]], p: int, ncols: int) -> int:
    # Forward elimination only; cheaper than a full rref.
    m = [[x % p for x in r] for r in rows if any(r)]
    rank = 0
    for c in range(ncols):
        piv = next((i for i in range(rank, len(m)) if m[i][c]), None)
        if piv is None:
            continue
        m[rank], m[piv] = m[piv], m[rank]
        pr = m[rank]
        inv = pow(pr[c], -1, p)
        for i in range(rank + 1, len(m)):
            if m[i][c]:
                f = (m[i][c] * inv) % p
                m[i] = [(x - f * y) % p for x, y in zip(m[i], pr)]
        rank += 1
        if rank == len(m):
            break
    return rank


def rank(m: FqMatrix) -> int:
    """Rank of ``m`` over F_p."""
    return rank_rows(m.entries, m.p, m.cols)


def kernel_basis_rows(rows: Sequence[Sequence[int]], p: int, ncols: int) -> list[Row]:
    red, pivots = rref_rows(rows, p, ncols)
    free = [c for c in range(ncols) if c not in set(pivots)]
    basis = []
    for f in free:
        v = [0] * ncols
        v[f] = 1
        for r, c in zip(red, pivots):
            v[c] = (-r[f]) % p
        basis.append(tuple(v))
    return basis


def kernel_basis(m: FqMatrix) -> list[Row]:
    """Basis of the right null space {x : m x = 0}; its size is cols - rank."""
    return kernel_basis_rows(m.entries, m.p, m.cols)


def solve(m: FqMatrix, b: Sequence[int]) -> Row | None:
    """One solution x of ``m x = b``, or None when the system is inconsistent."""
    if len(b) != m.rows:
        raise ValueError("right-hand side has the wrong length")
    aug = [list(r) + [bi % m.p] for r, bi in zip(m.entries, b)]
    red, pivots = rref_rows(aug, m.p, m.cols + 1)
    if pivots and pivots[-1] == m.cols:
        return None
    x = [0] * m.cols
    for r, c in zip(red, pivots):
        x[c] = r[m.cols]
    return tuple(x)


def is_invertible(rows: Sequence[Sequence[int]], p: int, n: int) -> bool:
    return rank_rows(rows, p, n) == n


def gaussian_binomial(d: int, k: int, q: int) -> int:
    """Number of k-dimensional subspaces of F_q^d."""
    if k < 0 or k > d:
        return 0
    num = den = 1
    for i in range(k):
        num *= q ** (d - i) - 1
        den *= q ** (i + 1) - 1
    return num // den


def enumerate_subspaces(
    p: int, ambient_dim: int, sub_dim: int, budget: int | None = DEFAULT_SUBSPACE_BUDGET
) -> Iterator[tuple[Row, ...]]:
    """Yield every ``sub_dim``-dimensional subspace of F_p^ambient_dim once.

    Each subspace is given by its reduced row-echelon basis. Pivot sets are
    enumerated in lexicographic order; within a pivot set, the free entries
    (to the right of each pivot, outside the other pivot columns) run over F_p.

    Raises:
        BudgetExceeded: if ``p ** ambient_dim`` exceeds ``budget``.
    """
    if not 0 <= sub_dim <= ambient_dim:
        raise ValueError(f"need 0 <= k <= d, got k={sub_dim}, d={ambient_dim}")
    if budget is not None and p**ambient_dim > budget:
        raise BudgetExceeded(f"p^d = {p}^{ambient_dim} exceeds subspace budget {budget}")
    yield from _subspaces(p, ambient_dim, sub_dim)


def _subspaces(p: int, d: int, k: int) -> Iterator[tuple[Row, ...]]:
    if k == 0:
        yield ()
        return
    for pivots in combinations(range(d), k):
        pset = set(pivots)
        slots = [(i, c) for i, pc in enumerate(pivots) for c in range(pc + 1, d) if c not in pset]
        for vals in product(range(p), repeat=len(slots)):
            rows = [[0] * d for _ in range(k)]
            for i, pc in enumerate(pivots):
                rows[i][pc] = 1
            for (i, c), v in zip(slots, vals):
                rows[i][c] = v
            yield tuple(tuple(r) for r in rows)


def gl_order(n: int, q: int) -> int:
    """|GL_n(F_q)|."""
    out = 1
    for i in range(n):
        out *= q**n - q**i
    return out
