"""Subspace arithmetic over F_q for lattice windows.

Two interchangeable backends: vectors are Python ints (bit i = coordinate i)
for q = 2, and tuples of residues otherwise.  Subspaces are canonical reduced
echelon bases stored as tuples, so they can be hashed and compared directly.
"""

from __future__ import annotations

from itertools import product

from ..core.fp import rref_rows


class F2Backend:
    q = 2

    def __init__(self, dim: int):
        self.dim = dim
        self.mask = (1 << dim) - 1

    def unit(self, i: int) -> int:
        return 1 << i

    def coords(self, v: int) -> list[int]:
        return [(v >> i) & 1 for i in range(self.dim)]

    def from_coords(self, c) -> int:
        out = 0
        for i, x in enumerate(c):
            if x % 2:
                out |= 1 << i
        return out

    def rref(self, vecs) -> tuple:
        piv: dict[int, int] = {}
        for v in vecs:
            while v:
                h = v.bit_length() - 1
                r = piv.get(h)
                if r is None:
                    piv[h] = v
                    break
                v ^= r
        keys = sorted(piv)
        for i, h in enumerate(keys):
            row = piv[h]
            for k in keys[i + 1 :]:
                if (piv[k] >> h) & 1:
                    piv[k] ^= row
        # fully reduce lower rows against higher pivots as well
        for i, h in enumerate(keys):
            row = piv[h]
            for k in keys[:i]:
                if (row >> k) & 1:
                    row ^= piv[k]
            piv[h] = row
        return tuple(piv[h] for h in reversed(keys))

    def reduce(self, basis: tuple, v: int) -> int:
        for r in basis:
            if (v >> (r.bit_length() - 1)) & 1:
                v ^= r
        return v

    def shift(self, v: int, k: int) -> int:
        return (v << k) & self.mask if k >= 0 else v >> (-k)

    def combine(self, coeffs, vecs) -> int:
        out = 0
        for c, v in zip(coeffs, vecs):
            if c % 2:
                out ^= v
        return out

    def intersect(self, a: tuple, b: tuple) -> tuple:
        w = self.dim
        rows = self.rref([(x << w) | x for x in a] + [x << w for x in b])
        return self.rref([r & self.mask for r in rows if r >> w == 0])

    def support_below(self, v: int, pos: int) -> bool:
        """Whether v has a nonzero coordinate with index < pos."""
        return bool(v & ((1 << pos) - 1))


class FqBackend:
    def __init__(self, dim: int, q: int):
        self.dim = dim
        self.q = q

    def unit(self, i: int) -> tuple:
        return tuple(1 if k == i else 0 for k in range(self.dim))

    def coords(self, v) -> list[int]:
        return list(v)

    def from_coords(self, c) -> tuple:
        return tuple(x % self.q for x in c)

    def rref(self, vecs) -> tuple:
        vecs = [list(v) for v in vecs]
        if not vecs:
            return ()
        # pivots on the highest index first, mirroring the F2 backend ordering
        rows, _ = rref_rows([v[::-1] for v in vecs], self.dim, self.q)
        return tuple(tuple(r[::-1]) for r in rows)

    def reduce(self, basis: tuple, v) -> tuple:
        v = list(v)
        for r in basis:
            h = max(i for i, x in enumerate(r) if x)
            c = v[h]
            if c:
                v = [(x - c * y) % self.q for x, y in zip(v, r)]
        return tuple(v)

    def shift(self, v, k: int) -> tuple:
        if k >= 0:
            return tuple([0] * k + list(v[: self.dim - k]))
        return tuple(list(v[-k:]) + [0] * (-k))

    def combine(self, coeffs, vecs) -> tuple:
        out = [0] * self.dim
        for c, v in zip(coeffs, vecs):
            if c:
                out = [(x + c * y) % self.q for x, y in zip(out, v)]
        return tuple(out)

    def intersect(self, a: tuple, b: tuple) -> tuple:
        z = [0] * self.dim
        # Zassenhaus with the duplicated block placed in the high half
        big = FqBackend(2 * self.dim, self.q)
        rows = big.rref([tuple(list(x) + list(x)) for x in a] + [tuple(z + list(x)) for x in b])
        low = [r[: self.dim] for r in rows if not any(r[self.dim :])]
        return self.rref(low)

    def support_below(self, v, pos: int) -> bool:
        return any(v[:pos])


def make_backend(dim: int, q: int):
    return F2Backend(dim) if q == 2 else FqBackend(dim, q)


class SubspaceOps:
    """Canonical-basis subspace operations on top of a backend."""

    def __init__(self, backend):
        self.b = backend
        self.q = backend.q

    def span(self, vecs) -> tuple:
        return self.b.rref(vecs)

    def add(self, x: tuple, y: tuple) -> tuple:
        return self.b.rref(list(x) + list(y))

    def meet(self, x: tuple, y: tuple) -> tuple:
        return self.b.intersect(x, y)

    def contains(self, x: tuple, v) -> bool:
        r = self.b.reduce(x, v)
        return not r if isinstance(r, int) else not any(r)

    def leq(self, x: tuple, y: tuple) -> bool:
        return all(self.contains(y, v) for v in x)

    def complement(self, big: tuple, small: tuple) -> tuple:
        """Vectors of `big` spanning a complement of `small` inside it."""
        reduced = [self.b.reduce(small, v) for v in big]
        return self.b.rref(reduced)

    def _normalized_coeffs(self, r: int):
        for c in product(range(self.q), repeat=r):
            nz = next((x for x in c if x), 0)
            if nz == 1:
                yield c

    def lines_between(self, small: tuple, big: tuple) -> list[tuple]:
        """All subspaces H with small < H <= big and dim H = dim small + 1."""
        w = self.complement(big, small)
        return sorted({self.add(small, (self.b.combine(c, w),)) for c in self._normalized_coeffs(len(w))})

    def hyperplanes_between(self, small: tuple, big: tuple) -> list[tuple]:
        """All subspaces H with small <= H < big and dim H = dim big - 1."""
        w = self.complement(big, small)
        r = len(w)
        out = set()
        for phi in self._normalized_coeffs(r):
            i0 = next(i for i, x in enumerate(phi) if x)
            kernel = []
            for k in range(r):
                if k == i0:
                    continue
                coeffs = [0] * r
                coeffs[k] = 1
                coeffs[i0] = (-phi[k]) % self.q
                kernel.append(self.b.combine(coeffs, w))
            out.add(self.add(small, tuple(kernel)))
        return sorted(out)
