"""Generalized Cartan matrices shared by the curve and presentation layers."""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from math import gcd

from .errors import DomainError


@dataclass(frozen=True)
class GeneralizedCartanMatrix:
    rows: tuple[tuple[int, ...], ...]

    def __post_init__(self):
        n = len(self.rows)
        if n == 0 or any(len(r) != n for r in self.rows):
            raise DomainError("Cartan matrix must be square and nonempty")
        for i in range(n):
            if self.rows[i][i] != 2:
                raise DomainError(f"diagonal entry {i} is not 2")
            for j in range(n):
                if i == j:
                    continue
                if self.rows[i][j] > 0:
                    raise DomainError(f"positive off-diagonal entry at ({i},{j})")
                if (self.rows[i][j] == 0) != (self.rows[j][i] == 0):
                    raise DomainError(f"asymmetric zero pattern at ({i},{j})")

    @classmethod
    def of(cls, rows) -> "GeneralizedCartanMatrix":
        return cls(tuple(tuple(int(x) for x in r) for r in rows))

    @property
    def size(self) -> int:
        return len(self.rows)

    def __getitem__(self, ij):
        i, j = ij
        return self.rows[i][j]

    def principal(self, keep) -> "GeneralizedCartanMatrix":
        keep = list(keep)
        return GeneralizedCartanMatrix(tuple(tuple(self.rows[i][j] for j in keep) for i in keep))

    def is_symmetric(self) -> bool:
        n = self.size
        return all(self.rows[i][j] == self.rows[j][i] for i in range(n) for j in range(n))

    def symmetrizers(self) -> tuple[int, ...]:
        """Coprime positive d with d_i a_ij symmetric; raises if none exists."""
        n = self.size
        d: list[Fraction | None] = [None] * n
        for start in range(n):
            if d[start] is not None:
                continue
            d[start] = Fraction(1)
            stack = [start]
            while stack:
                i = stack.pop()
                for j in range(n):
                    if i == j or self.rows[i][j] == 0:
                        continue
                    want = d[i] * self.rows[i][j] / self.rows[j][i]
                    if d[j] is None:
                        d[j] = want
                        stack.append(j)
                    elif d[j] != want:
                        raise DomainError("matrix is not symmetrizable")
        den = 1
        for x in d:
            den = den * x.denominator // gcd(den, x.denominator)
        ints = [int(x * den) for x in d]
        g = 0
        for x in ints:
            g = gcd(g, x)
        return tuple(x // g for x in ints)

    def to_json(self):
        return [list(r) for r in self.rows]
