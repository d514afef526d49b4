"""Vector bundles on the projective line over F_p, recorded by splitting type.

The point x is fixed at 0 in the affine chart. A section of O(a)(m) is a
polynomial of degree <= a + m; evaluating at 0 picks its constant term, so the
evaluation map H^0(V(m)) -> V_x is assembled summand by summand.
"""

from __future__ import annotations

from collections import Counter
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import combinations_with_replacement
from typing import Iterable, Mapping, Sequence

from .core.fp import Subspace, enumerate_subspaces, rref_rows
from .core.laurent import gauss_binomial_count
from .errors import BoundaryError, DomainError

DEFAULT_BOUND = 8


@dataclass(frozen=True, order=True)
class SplittingType:
    degrees: tuple[int, ...]

    def __post_init__(self):
        if not self.degrees:
            raise DomainError("a splitting type needs rank >= 1")
        object.__setattr__(self, "degrees", tuple(sorted((int(a) for a in self.degrees), reverse=True)))

    @classmethod
    def of(cls, *degrees: int) -> "SplittingType":
        return cls(tuple(degrees))

    @property
    def rank(self) -> int:
        return len(self.degrees)

    @property
    def total_degree(self) -> int:
        return sum(self.degrees)

    def twist(self, m: int) -> "SplittingType":
        return SplittingType(tuple(a + m for a in self.degrees))

    def to_json(self) -> list[int]:
        return list(self.degrees)

    def __str__(self):
        return "(" + ",".join(map(str, self.degrees)) + ")"


def h0_twist(t: SplittingType, m: int) -> int:
    """dim H^0(V(m)) = sum_i max(0, a_i + m + 1)."""
    return sum(max(0, a + m + 1) for a in t.degrees)


def evaluation_matrix(t: SplittingType, m: int, p: int) -> list[list[int]]:
    """Rows = images in V_x of the monomial basis of H^0(V(m)); only constant terms survive."""
    d = t.rank
    rows = []
    for i, a in enumerate(t.degrees):
        for j in range(a + m + 1):
            rows.append([int(s == i and j == 0) for s in range(d)])
    return rows


def evaluation_kernel_dim(t: SplittingType, w: Subspace, m: int) -> int:
    """dim ker(H^0(V(m)) -> V_x / W), i.e. h^0 of the elementary transform twisted by m."""
    rows = evaluation_matrix(t, m, w.p)
    h0 = len(rows)
    if h0 == 0:
        return 0
    span_rank = len(rref_rows(rows + [list(b) for b in w.basis], t.rank, w.p)[1])
    return h0 - (span_rank - w.dim)


def elementary_transform(t: SplittingType, w: Subspace) -> SplittingType:
    """Splitting type of the sheaf of sections of V whose value at x lies in W.

    The type is read off from m -> h^0(V'(m)) by second differences.
    """
    d = t.rank
    if w.ambient_dim != d:
        raise DomainError(f"fiber has dimension {d}, subspace lives in dimension {w.ambient_dim}")
    hi_deg, lo_deg = t.degrees[0], t.degrees[-1]
    # result degrees lie in [lo_deg - 1, hi_deg]; m = -deg - 1 .. -deg + 1 brackets them
    m_lo = -hi_deg - 2
    m_hi = -(lo_deg - 1) + 1
    h = {m: evaluation_kernel_dim(t, w, m) for m in range(m_lo - 1, m_hi + 1)}
    first = {m: h[m] - h[m - 1] for m in range(m_lo, m_hi + 1)}  # #{b_j >= -m}
    degrees = []
    for m in range(m_lo + 1, m_hi + 1):
        mult = first[m] - first[m - 1]
        if mult < 0:
            raise AssertionError("non-convex h0 function")
        degrees.extend([-m] * mult)
    if len(degrees) != d:
        raise AssertionError(f"reconstructed {len(degrees)} summands from a rank-{d} bundle")
    return SplittingType(tuple(degrees))


@lru_cache(maxsize=None)
def pushforward(t: SplittingType, k: int, p: int) -> tuple[tuple[SplittingType, int], ...]:
    """Multiset of transforms of t over all W with dim W = d - k, as sorted (type, count) pairs."""
    d = t.rank
    if not 1 <= k <= d:
        raise DomainError(f"k must lie in 1..{d}, got {k}")
    counts = Counter(elementary_transform(t, w) for w in enumerate_subspaces(d, d - k, p))
    return tuple(sorted(counts.items()))


@dataclass(frozen=True)
class DegreeWindow:
    """Splitting types of one rank with total degree in [min_deg, max_deg]
    and every summand degree in [-bound, bound]."""

    rank: int
    min_deg: int
    max_deg: int
    p: int
    bound: int = DEFAULT_BOUND

    def __post_init__(self):
        if self.min_deg > self.max_deg:
            raise DomainError("empty degree window")
        if self.rank < 1:
            raise DomainError("rank must be positive")

    def contains(self, t: SplittingType) -> bool:
        return (
            t.rank == self.rank
            and self.min_deg <= t.total_degree <= self.max_deg
            and all(-self.bound <= a <= self.bound for a in t.degrees)
        )

    def types(self) -> list[SplittingType]:
        out = []
        for combo in combinations_with_replacement(range(self.bound, -self.bound - 1, -1), self.rank):
            if self.min_deg <= sum(combo) <= self.max_deg:
                out.append(SplittingType(combo))
        out.sort(key=lambda t: (-t.total_degree, t.degrees))
        return out

    @property
    def width(self) -> int:
        return self.max_deg - self.min_deg

    @classmethod
    def parse(cls, rank: int, text: str, p: int, bound: int = DEFAULT_BOUND) -> "DegreeWindow":
        lo, hi = text.split(":")
        return cls(rank, int(lo), int(hi), p, bound)


def hecke_apply(k: int, f: Mapping[SplittingType, int], window: DegreeWindow) -> dict[SplittingType, int]:
    """Push a finitely supported function forward along V -> A_x(V, W), dim W = d - k.

    Degree D maps to degree D - k. Any target outside the window raises BoundaryError.
    """
    out: Counter = Counter()
    for t, coeff in f.items():
        if not coeff:
            continue
        if not window.contains(t):
            raise DomainError(f"{t} is not inside the window")
        for target, count in pushforward(t, k, window.p):
            if not window.contains(target):
                raise BoundaryError(f"T_{k} sends {t} to {target}, outside the window")
            out[target] += coeff * count
    return {t: c for t, c in sorted(out.items()) if c}


@dataclass
class HeckeMatrix:
    """Matrix of T_k on the delta basis of a window; entry (target, source) counts subspaces.

    Columns whose image leaves the window are truncated and left out of `complete`.
    """

    k: int
    labels: list[SplittingType]
    entries: dict[tuple[SplittingType, SplittingType], int]
    complete: set[SplittingType] = field(default_factory=set)

    def column(self, source: SplittingType) -> dict[SplittingType, int]:
        return {r: c for (r, s), c in self.entries.items() if s == source}

    def to_json(self) -> dict:
        index = {t: i for i, t in enumerate(self.labels)}
        coo = sorted((index[r], index[s], c) for (r, s), c in self.entries.items())
        return {
            "k": self.k,
            "labels": [t.to_json() for t in self.labels],
            "entries": [list(x) for x in coo],
            "complete_columns": sorted(index[t] for t in self.complete),
        }


def hecke_matrix(k: int, window: DegreeWindow) -> HeckeMatrix:
    labels = window.types()
    entries: dict = {}
    complete = set()
    for s in labels:
        whole = True
        for target, count in pushforward(s, k, window.p):
            if window.contains(target):
                entries[(target, s)] = count
            else:
                whole = False
        if whole:
            complete.add(s)
    return HeckeMatrix(k, labels, entries, complete)


def compose_columns(outer: HeckeMatrix, inner: HeckeMatrix, source: SplittingType) -> dict[SplittingType, int] | None:
    """Column `source` of outer @ inner, or None if truncation could have touched it."""
    if source not in inner.complete:
        return None
    out: Counter = Counter()
    for mid, c1 in inner.column(source).items():
        if mid not in outer.complete:
            return None
        for target, c2 in outer.column(mid).items():
            out[target] += c1 * c2
    return {t: c for t, c in out.items() if c}


def satake_check(d: int, p: int, window: DegreeWindow) -> dict:
    """Compare T_k T_l with T_l T_k on every column where neither composite is truncated."""
    if window.rank != d:
        raise DomainError("window rank differs from d")
    mats = {k: hecke_matrix(k, window) for k in range(1, d + 1)}
    pairs = []
    all_zero = True
    for k in range(1, d + 1):
        for l in range(k + 1, d + 1):
            checked = 0
            mismatches = 0
            for s in window.types():
                kl = compose_columns(mats[k], mats[l], s)
                lk = compose_columns(mats[l], mats[k], s)
                if kl is None or lk is None:
                    continue
                checked += 1
                if kl != lk:
                    mismatches += 1
            all_zero &= mismatches == 0
            pairs.append({"k": k, "l": l, "columns_checked": checked, "mismatched_columns": mismatches})
    return {"d": d, "p": p, "window": [window.min_deg, window.max_deg], "commutators_zero": all_zero, "pairs": pairs}


def degree_law_holds(matrix: HeckeMatrix) -> bool:
    return all(r.total_degree == s.total_degree - matrix.k for (r, s) in matrix.entries)


def column_sum_expected(d: int, k: int, p: int) -> int:
    return gauss_binomial_count(d, d - k, p)


@dataclass(frozen=True)
class HNFiltration:
    """Steps (j, multiplicity): F_j / F_{j-1} is a sum of `multiplicity` copies of O(-j)."""

    steps: tuple[tuple[int, int], ...]

    @property
    def rank(self) -> int:
        return sum(m for _, m in self.steps)

    def to_splitting_type(self) -> SplittingType:
        return SplittingType(tuple(-j for j, m in self.steps for _ in range(m)))


def hn_filtration(t: SplittingType) -> HNFiltration:
    counts = Counter(t.degrees)
    return HNFiltration(tuple(sorted((-a, m) for a, m in counts.items())))


def _check_chain(flag: Sequence[Subspace]) -> None:
    for a, b in zip(flag, flag[1:]):
        if not a <= b:
            raise DomainError("flag is not an increasing chain")


def generic_position(flag1: Sequence[Subspace], flag2: Sequence[Subspace]) -> bool:
    """True iff dim(F_i ∩ F'_j) = max(0, dim F_i + dim F'_j - d) for every pair."""
    if not flag1 or not flag2:
        return True
    d = flag1[0].ambient_dim
    if any(s.ambient_dim != d for s in list(flag1) + list(flag2)):
        raise DomainError("flags live in different ambient spaces")
    _check_chain(flag1)
    _check_chain(flag2)
    for a in flag1:
        for b in flag2:
            if a.intersect(b).dim != max(0, a.dim + b.dim - d):
                return False
    return True


def parse_type(values: Iterable[int]) -> SplittingType:
    return SplittingType(tuple(values))
