"""Relative position of two periodic flags and the window automorphism group."""

from __future__ import annotations

import random
from dataclasses import dataclass, field
from functools import lru_cache
from itertools import product

from ..core.fp import rref_rows
from ..errors import DomainError
from .lattice import PeriodicFlag, TruncatedModel, Window, all_flags, window_for


@dataclass(frozen=True)
class PeriodicMatrix:
    """Entries a_{ij} for 0 <= i < n and j in Z, extended by a_{i+n,j+n} = a_{ij}.

    Only nonzero entries are stored, which makes the number of nonvanishing
    diagonals finite by construction.
    """

    n: int
    entries: tuple = field(default=())  # sorted ((i, j), a) pairs

    @classmethod
    def from_dict(cls, n: int, data: dict) -> "PeriodicMatrix":
        return cls(n, tuple(sorted((k, v) for k, v in data.items() if v)))

    def as_dict(self) -> dict:
        return dict(self.entries)

    def entry(self, i: int, j: int) -> int:
        k, r = divmod(i, self.n)
        return self.as_dict().get((r, j - k * self.n), 0)

    def row_sum(self, i: int) -> int:
        k, r = divmod(i, self.n)
        return sum(a for (ii, _), a in self.entries if ii == r)

    def col_sum(self, j: int) -> int:
        return sum(a for (i, jj), a in self.entries if (jj - j) % self.n == 0)

    def period_sum(self) -> int:
        return sum(a for _, a in self.entries)

    def diagonals(self) -> list[int]:
        return sorted({j - i for (i, j), _ in self.entries})

    def to_json(self):
        return {"n": self.n, "entries": [[i, j, a] for (i, j), a in self.entries]}

    def __str__(self):
        return " ".join(f"a[{i},{j}]={a}" for (i, j), a in self.entries)


def validate_periodic_matrix(m: PeriodicMatrix, d: int, n: int) -> bool:
    if m.n != n:
        return False
    for (i, j), a in m.entries:
        if not isinstance(a, int) or isinstance(a, bool) or a < 0:
            return False
        if not 0 <= i < n:
            return False
    return m.period_sum() == d


class _ChainView:
    """F_i for every integer i, realised inside a deep window."""

    def __init__(self, w: Window, flag: PeriodicFlag, model: TruncatedModel):
        self.w = w
        self.n = flag.n
        src = window_for(model.d, model.q, flag.M)
        self.base = [w.embed(x, src) for x in flag.lattices]
        self.cache: dict[int, tuple] = {}

    def __getitem__(self, i: int) -> tuple:
        hit = self.cache.get(i)
        if hit is None:
            k, r = divmod(i, self.n)
            hit = self.base[r]
            for _ in range(abs(k)):
                hit = self.w.zinv(hit) if k > 0 else self.w.z(hit)
            self.cache[i] = hit
        return hit


@lru_cache(maxsize=4096)
def _chain_view(w: Window, flag: PeriodicFlag, model: TruncatedModel) -> _ChainView:
    return _ChainView(w, flag, model)


def orbit_invariant(F: PeriodicFlag, G: PeriodicFlag, model: TruncatedModel) -> PeriodicMatrix:
    """a_{ij} = dim F_i ∩ G_j / (F_{i-1} ∩ G_j + F_i ∩ G_{j-1}).

    Rows run over one period 0..n-1; columns over every j where the quotient
    can be nonzero, computed in a window deep enough to hold all of them.
    """
    if F.n != model.n or G.n != model.n:
        raise DomainError("flags do not belong to this model")
    if F.M != G.M:
        raise DomainError("flags live in different windows")
    N, n = F.M, model.n
    w = window_for(model.d, model.q, 3 * N + 2)
    ops = w.ops
    f, g = _chain_view(w, F, model), _chain_view(w, G, model)
    out = {}
    lo, hi = -(2 * N + 1) * n, (2 * N + 1) * n + n
    for i in range(n):
        prev = ops.meet(f[i], g[lo - 1])
        for j in range(lo, hi):
            top = ops.meet(f[i], g[j])
            if len(top) > len(prev):
                a = len(top) - len(ops.add(ops.meet(f[i - 1], g[j]), prev))
                if a:
                    out[(i, j)] = a
            prev = top
    return PeriodicMatrix.from_dict(n, out)


# automorphisms of z^{-N}Λ / z^{N}Λ commuting with z


@dataclass(frozen=True)
class WindowAutomorphism:
    """g = sum_k g_k z^k with d x d blocks g_k over F_q, g_0 invertible."""

    d: int
    q: int
    N: int
    blocks: tuple  # 2N blocks, each a tuple of d rows

    def images(self, w: Window) -> list:
        """Image of every window basis vector, in basis order."""
        b = w.backend
        out = []
        for idx in range(w.dim):
            j, s = divmod(idx, self.d)
            j -= w.M
            coords = [0] * w.dim
            for k, blk in enumerate(self.blocks):
                jj = j + k
                if jj >= w.M:
                    break
                for t in range(self.d):
                    c = blk[t][s]
                    if c:
                        pos = w.index(t, jj)
                        coords[pos] = (coords[pos] + c) % self.q
            out.append(b.from_coords(coords))
        return out

    def apply_flag(self, flag: PeriodicFlag) -> PeriodicFlag:
        w = window_for(self.d, self.q, flag.M)
        imgs = _image_table(self, w)
        b = w.backend
        lats = tuple(w.ops.span([b.combine(b.coords(v), imgs) for v in lat]) for lat in flag.lattices)
        return PeriodicFlag(lats, flag.M)


_IMAGE_CACHE: dict = {}


def _image_table(g: WindowAutomorphism, w: Window):
    key = (g, w.M)
    hit = _IMAGE_CACHE.get(key)
    if hit is None:
        if len(_IMAGE_CACHE) > 4096:
            _IMAGE_CACHE.clear()
        hit = g.images(w)
        _IMAGE_CACHE[key] = hit
    return hit


def _invertible(rows, q) -> bool:
    return len(rref_rows(rows, len(rows), q)[1]) == len(rows)


def random_automorphism(model: TruncatedModel, rng: random.Random) -> WindowAutomorphism:
    d, q, N = model.d, model.q, model.N
    while True:
        g0 = tuple(tuple(rng.randrange(q) for _ in range(d)) for _ in range(d))
        if _invertible([list(r) for r in g0], q):
            break
    rest = [tuple(tuple(rng.randrange(q) for _ in range(d)) for _ in range(d)) for _ in range(2 * N - 1)]
    return WindowAutomorphism(d, q, N, (g0, *rest))


def all_automorphisms(model: TruncatedModel) -> list[WindowAutomorphism]:
    """Every element of GL_d(F_q[z]/z^{2N}); only sensible for tiny models."""
    from ..core.guard import check_size

    d, q, N = model.d, model.q, model.N
    check_size(q ** (2 * N * d * d), "window automorphism census")
    blocks = [tuple(tuple(c[r * d : (r + 1) * d]) for r in range(d)) for c in product(range(q), repeat=d * d)]
    invertible = [b for b in blocks if _invertible([list(r) for r in b], q)]
    return [WindowAutomorphism(d, q, N, (g0, *rest)) for g0 in invertible for rest in product(blocks, repeat=2 * N - 1)]


def shift_flag(flag: PeriodicFlag, model: TruncatedModel, k: int) -> PeriodicFlag | None:
    """z^k F when it stays inside the window, else None."""
    w = window_for(model.d, model.q, flag.M)
    lats = []
    for lat in flag.lattices:
        for _ in range(abs(k)):
            if k > 0:
                if not w.contains_level(lat, flag.M - 1):
                    return None
                lat = w.z(lat)
            else:
                if not w.inside(lat, flag.M - 1):
                    return None
                lat = w.zinv(lat)
        lats.append(lat)
    return PeriodicFlag(tuple(lats), flag.M)


def orbit_completeness(model: TruncatedModel) -> dict:
    """Group flag pairs by invariant and by orbit of (window automorphisms, z-shifts).

    Complete means the two partitions agree: equal invariants imply one orbit.
    """
    flags = all_flags(model)
    index = {f: i for i, f in enumerate(flags)}
    pairs = [(a, b) for a in flags for b in flags]
    parent = {p: p for p in pairs}

    def find(x):
        while parent[x] != x:
            parent[x] = parent[parent[x]]
            x = parent[x]
        return x

    def union(a, b):
        ra, rb = find(a), find(b)
        if ra != rb:
            parent[ra] = rb

    moves = [("aut", g) for g in all_automorphisms(model)] + [("shift", 1), ("shift", -1)]
    for a, b in pairs:
        for kind, g in moves:
            if kind == "aut":
                img = (g.apply_flag(a), g.apply_flag(b))
            else:
                fa, fb = shift_flag(a, model, g), shift_flag(b, model, g)
                if fa is None or fb is None:
                    continue
                img = (fa, fb)
            if img[0] in index and img[1] in index:
                union((a, b), img)
    classes: dict = {}
    for a, b in pairs:
        classes.setdefault(orbit_invariant(a, b, model), set()).add(find((a, b)))
    split = {str(k): len(v) for k, v in classes.items() if len(v) > 1}
    return {"pairs": len(pairs), "invariants": len(classes), "orbits": len({find(p) for p in pairs}), "complete": not split, "split": split}
