"""Linear algebra over the prime field F_p: reduced echelon forms and subspaces."""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, product
from typing import Iterable, Sequence

from ..errors import DomainError
from .guard import check_size

Vector = tuple[int, ...]


def _inv(x: int, p: int) -> int:
    return pow(x, p - 2, p)


def rref_rows(rows: Iterable[Sequence[int]], ncols: int, p: int) -> tuple[list[list[int]], list[int]]:
    """Reduced row echelon form of the given rows; returns (nonzero rows, pivot columns)."""
    m = [[x % p for x in r] for r in rows]
    pivots: list[int] = []
    r = 0
    nrows = len(m)
    for c in range(ncols):
        if r == nrows:
            break
        piv = None
        for i in range(r, nrows):
            if m[i][c]:
                piv = i
                break
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        row = m[r]
        if row[c] != 1:
            s = _inv(row[c], p)
            row = [(x * s) % p for x in row]
            m[r] = row
        for i in range(nrows):
            if i != r and m[i][c]:
                f = m[i][c]
                other = m[i]
                m[i] = [(a - f * b) % p for a, b in zip(other, row)]
        pivots.append(c)
        r += 1
    return m[:r], pivots


@dataclass(frozen=True)
class FpMatrix:
    entries: tuple[tuple[int, ...], ...]
    p: int
    ncols: int

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[int]], p: int, ncols: int | None = None) -> "FpMatrix":
        rows = [tuple(x % p for x in r) for r in rows]
        if ncols is None:
            if not rows:
                raise DomainError("empty matrix needs an explicit column count")
            ncols = len(rows[0])
        if any(len(r) != ncols for r in rows):
            raise DomainError("ragged matrix")
        return cls(tuple(rows), p, ncols)

    @classmethod
    def identity(cls, n: int, p: int) -> "FpMatrix":
        return cls.from_rows([[int(i == j) for j in range(n)] for i in range(n)], p, n)

    @classmethod
    def zero(cls, rows: int, cols: int, p: int) -> "FpMatrix":
        return cls.from_rows([[0] * cols for _ in range(rows)], p, cols)

    @property
    def dims(self) -> tuple[int, int]:
        return len(self.entries), self.ncols

    def __matmul__(self, other: "FpMatrix") -> "FpMatrix":
        if self.ncols != len(other.entries):
            raise DomainError("dimension mismatch in product")
        cols = list(zip(*other.entries)) if other.entries else [()] * other.ncols
        rows = [[sum(a * b for a, b in zip(r, c)) % self.p for c in cols] for r in self.entries]
        return FpMatrix.from_rows(rows, self.p, other.ncols)


def rank_rref(m: FpMatrix) -> tuple[int, FpMatrix]:
    rows, piv = rref_rows(m.entries, m.ncols, m.p)
    rows = rows + [[0] * m.ncols for _ in range(len(m.entries) - len(rows))]
    return len(piv), FpMatrix.from_rows(rows, m.p, m.ncols)


@dataclass(frozen=True)
class Subspace:
    """A subspace of F_p^n stored by its reduced echelon basis (the canonical representative)."""

    basis: tuple[Vector, ...]
    ambient_dim: int
    p: int

    @classmethod
    def span(cls, vectors: Iterable[Sequence[int]], ambient_dim: int, p: int) -> "Subspace":
        rows, _ = rref_rows(vectors, ambient_dim, p)
        return cls(tuple(tuple(r) for r in rows), ambient_dim, p)

    @classmethod
    def zero(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls((), ambient_dim, p)

    @classmethod
    def full(cls, ambient_dim: int, p: int) -> "Subspace":
        return cls(
            tuple(tuple(int(i == j) for j in range(ambient_dim)) for i in range(ambient_dim)),
            ambient_dim,
            p,
        )

    @property
    def dim(self) -> int:
        return len(self.basis)

    def __lt__(self, other: "Subspace") -> bool:  # canonical ordering for deterministic output
        return (self.dim, self.basis) < (other.dim, other.basis)

    def pivots(self) -> list[int]:
        return [next(i for i, x in enumerate(r) if x) for r in self.basis]

    def __add__(self, other: "Subspace") -> "Subspace":
        self._compatible(other)
        return Subspace.span(self.basis + other.basis, self.ambient_dim, self.p)

    def intersect(self, other: "Subspace") -> "Subspace":
        """Zassenhaus: reduce [[u, u], [w, 0]]; rows with zero left half span U ∩ W."""
        self._compatible(other)
        n = self.ambient_dim
        if not self.basis or not other.basis:
            return Subspace.zero(n, self.p)
        rows = [list(u) + list(u) for u in self.basis] + [list(w) + [0] * n for w in other.basis]
        red, piv = rref_rows(rows, 2 * n, self.p)
        inter = [r[n:] for r, c in zip(red, piv) if c >= n]
        return Subspace.span(inter, n, self.p)

    def contains_vector(self, vec: Sequence[int]) -> bool:
        vec = [x % self.p for x in vec]
        if not any(vec):
            return True
        return Subspace.span(self.basis + (tuple(vec),), self.ambient_dim, self.p).dim == self.dim

    def __le__(self, other: "Subspace") -> bool:  # containment, not the dataclass ordering
        self._compatible(other)
        if self.dim > other.dim:
            return False
        return (self + other).dim == other.dim

    def issubset(self, other: "Subspace") -> bool:
        return self <= other

    def image(self, matrix: Sequence[Sequence[int]]) -> "Subspace":
        """Image under x -> matrix @ x (matrix given as a list of rows)."""
        n = self.ambient_dim
        vecs = [[sum(matrix[i][j] * u[j] for j in range(n)) % self.p for i in range(len(matrix))] for u in self.basis]
        return Subspace.span(vecs, len(matrix), self.p)

    def _compatible(self, other: "Subspace"):
        if self.ambient_dim != other.ambient_dim or self.p != other.p:
            raise DomainError("subspaces live in different ambient spaces")

    def to_json(self) -> list[list[int]]:
        return [list(r) for r in self.basis]


def enumerate_subspaces(ambient_dim: int, dim: int, p: int) -> list[Subspace]:
    """Every dim-dimensional subspace of F_p^ambient_dim, one echelon representative each,
    in lexicographic order of the echelon bases."""
    if not 0 <= dim <= ambient_dim:
        raise DomainError(f"need 0 <= k <= d, got k={dim}, d={ambient_dim}")
    check_size(p**ambient_dim, f"enumerate_subspaces(d={ambient_dim}, p={p})")
    n, k = ambient_dim, dim
    out = []
    for piv in combinations(range(n), k):
        pivset = set(piv)
        free = [(i, c) for i, pc in enumerate(piv) for c in range(pc + 1, n) if c not in pivset]
        for values in product(range(p), repeat=len(free)):
            rows = [[0] * n for _ in range(k)]
            for i, pc in enumerate(piv):
                rows[i][pc] = 1
            for (i, c), x in zip(free, values):
                rows[i][c] = x
            out.append(Subspace(tuple(tuple(r) for r in rows), n, p))
    out.sort(key=lambda s: s.basis)
    return out


def all_subspaces(ambient_dim: int, p: int) -> list[Subspace]:
    return [s for k in range(ambient_dim + 1) for s in enumerate_subspaces(ambient_dim, k, p)]
