"""Lattices and periodic lattice flags in a truncated model of K^d over F_q.

Window convention.  A window of depth M has basis e_{s,j} for s in 0..d-1 and
j in -M..M-1, standing for z^j e_s, so it models z^{-M}Λ / z^{M}Λ.  The shift z
raises j by one and kills j = M-1.  The standard lattice Λ is the span of the
e_{s,j} with j >= 0.  A lattice L with z^M Λ ⊆ L ⊆ z^{-M} Λ is stored as its
image in the window: a z-stable subspace in canonical echelon form.

Coordinate (s, j) sits at index (j + M) * d + s, so multiplying by z is a shift
of the coordinate vector by d places.
"""

from __future__ import annotations

from dataclasses import dataclass
from functools import cached_property, lru_cache

from ..core.guard import check_size
from ..errors import BoundaryError, DomainError
from .linalg import SubspaceOps, make_backend


def _is_prime(q: int) -> bool:
    return q >= 2 and all(q % k for k in range(2, int(q**0.5) + 1))


class Window:
    """Subspace arithmetic for lattices between z^{M}Λ and z^{-M}Λ."""

    def __init__(self, d: int, q: int, M: int):
        self.d, self.q, self.M = d, q, M
        self.dim = 2 * M * d
        self.backend = make_backend(self.dim, q)
        self.ops = SubspaceOps(self.backend)

    def index(self, s: int, j: int) -> int:
        return (j + self.M) * self.d + s

    def unit(self, s: int, j: int):
        return self.backend.unit(self.index(s, j))

    @lru_cache(maxsize=None)
    def level(self, lo: int) -> tuple:
        """z^{lo} Λ inside the window."""
        lo = max(lo, -self.M)
        return self.ops.span([self.unit(s, j) for j in range(lo, self.M) for s in range(self.d)])

    @cached_property
    def standard(self) -> tuple:
        return self.level(0)

    def z(self, lat: tuple) -> tuple:
        return self.ops.span([self.backend.shift(v, self.d) for v in lat])

    def zinv(self, lat: tuple) -> tuple:
        """Preimage z^{-1} L; needs L ⊆ z^{-(M-1)} Λ to be representable."""
        if not self.inside(lat, self.M - 1):
            raise BoundaryError(f"z^-1 of a lattice touching z^-{self.M} Λ leaves the depth-{self.M} window")
        top = [self.unit(s, self.M - 1) for s in range(self.d)]
        return self.ops.span([self.backend.shift(v, -self.d) for v in lat] + top)

    def inside(self, lat: tuple, k: int) -> bool:
        """L ⊆ z^{-k} Λ."""
        cut = (self.M - k) * self.d
        return not any(self.backend.support_below(v, cut) for v in lat)

    def contains_level(self, lat: tuple, k: int) -> bool:
        """z^{k} Λ ⊆ L."""
        return self.ops.leq(self.level(k), lat)

    def between(self, lat: tuple, k: int) -> bool:
        """z^k Λ ⊆ L ⊆ z^{-k} Λ."""
        return self.inside(lat, k) and self.contains_level(lat, k)

    def is_lattice(self, sub: tuple) -> bool:
        return self.ops.leq(self.z(sub), sub)

    def preimage(self, sub: tuple) -> tuple:
        """{x : z x ∈ sub} computed in the window (z kills the top level)."""
        b = self.backend
        low_free = self.ops.meet(sub, self.level(-self.M + 1))
        top = [self.unit(s, self.M - 1) for s in range(self.d)]
        return self.ops.span([b.shift(v, -self.d) for v in low_free] + top)

    def embed(self, lat: tuple, src: "Window") -> tuple:
        """Image in this window of a lattice stored in a shallower window."""
        if src.d != self.d or src.q != self.q or src.M > self.M:
            raise DomainError("can only embed into a deeper window of the same model")
        off = (self.M - src.M) * self.d
        b = self.backend
        vecs = [b.from_coords([0] * off + src.backend.coords(v) + [0] * off) for v in lat]
        return self.ops.span(vecs + list(self.level(src.M)))

    def coords(self, v) -> dict:
        """Nonzero coordinates keyed by (s, j)."""
        out = {}
        for i, x in enumerate(self.backend.coords(v)):
            if x:
                out[(i % self.d, i // self.d - self.M)] = x
        return out

    def lattice_to_json(self, lat: tuple) -> list:
        return [[[s, j, x] for (s, j), x in sorted(self.coords(v).items())] for v in lat]


@dataclass(frozen=True)
class TruncatedModel:
    d: int
    n: int
    q: int
    N: int

    def __post_init__(self):
        if self.d < 1 or self.n < 1 or self.N < 1:
            raise DomainError("d, n and N must be positive")
        if not _is_prime(self.q):
            raise DomainError(f"q = {self.q} is not prime")

    @property
    def ambient_dim(self) -> int:
        return 2 * self.N * self.d

    @cached_property
    def window(self) -> Window:
        return window_for(self.d, self.q, self.N)

    def deeper(self, M: int) -> Window:
        return window_for(self.d, self.q, M)

    def to_json(self):
        return {"d": self.d, "n": self.n, "q": self.q, "N": self.N}


@lru_cache(maxsize=None)
def window_for(d: int, q: int, M: int) -> Window:
    return Window(d, q, M)


@lru_cache(maxsize=None)
def _lattices_by_dim(d: int, q: int, N: int) -> tuple:
    check_size(q ** (2 * N * d), "lattice census (q^(2Nd))")
    w = window_for(d, q, N)
    layers = [((),)]
    for _ in range(2 * N * d):
        nxt = set()
        for sub in layers[-1]:
            nxt.update(w.ops.lines_between(sub, w.preimage(sub)))
        layers.append(tuple(sorted(nxt)))
    return tuple(layers)


def enumerate_lattices(model: TruncatedModel, dim: int) -> list:
    """All z-stable subspaces of the window with the given dimension."""
    if not 0 <= dim <= model.ambient_dim:
        raise DomainError(f"dimension {dim} outside 0..{model.ambient_dim}")
    return list(_lattices_by_dim(model.d, model.q, model.N)[dim])


@dataclass(frozen=True, order=True)
class PeriodicFlag:
    """F_0 ⊆ ... ⊆ F_{n-1} ⊆ z^{-1} F_0 stored in a window of depth M."""

    lattices: tuple
    M: int

    @property
    def n(self) -> int:
        return len(self.lattices)

    def dims(self) -> tuple:
        return tuple(len(x) for x in self.lattices)

    def jumps(self, d: int) -> tuple:
        """dim F_i / F_{i-1} for i = 0..n-1, with F_{-1} = z F_{n-1}."""
        dims = self.dims()
        return tuple(dims[i] - (dims[i - 1] if i else dims[-1] - d) for i in range(self.n))

    def to_json(self, d: int, q: int):
        w = window_for(d, q, self.M)
        return {"window": self.M, "dims": list(self.dims()), "lattices": [w.lattice_to_json(x) for x in self.lattices]}


def is_flag(window: Window, lattices) -> bool:
    ops = window.ops
    if not all(window.is_lattice(x) for x in lattices):
        return False
    if any(not ops.leq(a, b) for a, b in zip(lattices, lattices[1:])):
        return False
    return ops.leq(window.z(lattices[-1]), lattices[0])


def _dims_consistent(dims, d) -> bool:
    return all(a <= b for a, b in zip(dims, dims[1:])) and dims[-1] <= dims[0] + d


def enumerate_flags(model: TruncatedModel, dims) -> list[PeriodicFlag]:
    dims = tuple(int(x) for x in dims)
    if len(dims) != model.n:
        raise DomainError(f"dimension vector needs {model.n} entries")
    if any(not 0 <= x <= model.ambient_dim for x in dims):
        raise DomainError(f"dimensions must lie in 0..{model.ambient_dim}")
    if not _dims_consistent(dims, model.d):
        return []
    return list(_flags_cached(model, dims))


@lru_cache(maxsize=None)
def _flags_cached(model: TruncatedModel, dims: tuple) -> tuple:
    w = model.window
    ops = w.ops
    layers = [enumerate_lattices(model, k) for k in dims]
    out = []

    def grow(chain):
        i = len(chain)
        if i == model.n:
            if ops.leq(w.z(chain[-1]), chain[0]):
                out.append(PeriodicFlag(tuple(chain), model.N))
            return
        for lat in layers[i]:
            if ops.leq(chain[-1], lat):
                grow(chain + [lat])

    for first in layers[0]:
        grow([first])
    return tuple(sorted(out))


def dimension_vectors(model: TruncatedModel) -> list[tuple]:
    from itertools import product

    top = model.ambient_dim
    return [v for v in product(range(top + 1), repeat=model.n) if _dims_consistent(v, model.d)]


def all_flags(model: TruncatedModel) -> list[PeriodicFlag]:
    check_size(model.q ** (2 * model.N * model.d), "flag census (q^(2Nd))")
    out = []
    for v in dimension_vectors(model):
        out.extend(_flags_cached(model, v))
    return out


def is_interior(model: TruncatedModel, flag: PeriodicFlag, depth: int = 1) -> bool:
    """Every lattice stays `depth` steps away from z^{±N} Λ."""
    w = window_for(model.d, model.q, flag.M)
    k = model.N - depth
    return all(w.between(x, k) for x in flag.lattices)


def interior_flags(model: TruncatedModel, depth: int = 1) -> list[PeriodicFlag]:
    return [f for f in all_flags(model) if is_interior(model, f, depth)]


def embed_flag(flag: PeriodicFlag, model: TruncatedModel, M: int) -> PeriodicFlag:
    src = window_for(model.d, model.q, flag.M)
    dst = window_for(model.d, model.q, M)
    return PeriodicFlag(tuple(dst.embed(x, src) for x in flag.lattices), M)
