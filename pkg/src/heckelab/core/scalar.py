"""Exact scalars a + b*v with v^2 = p.

Coefficients are rationals so that v^-1 = v/p stays inside the ring; every
value that the relation checkers compare lives in Z[1/p][v]/(v^2 - p).
"""

from __future__ import annotations

from fractions import Fraction

from ..errors import DomainError


def _frac(x) -> Fraction:
    return x if isinstance(x, Fraction) else Fraction(x)


class ScalarExt:
    __slots__ = ("a", "b", "p")

    def __init__(self, a=0, b=0, p: int = 2):
        self.a = _frac(a)
        self.b = _frac(b)
        self.p = p

    @classmethod
    def v_power(cls, k: int, p: int) -> "ScalarExt":
        """v^k, with v^2 = p."""
        half, odd = divmod(k, 2)
        scale = Fraction(p) ** half
        return cls(0, scale, p) if odd else cls(scale, 0, p)

    @classmethod
    def from_laurent(cls, f, p: int) -> "ScalarExt":
        a = Fraction(0)
        b = Fraction(0)
        for e, c in f.items():
            half, odd = divmod(e, 2)
            x = c * Fraction(p) ** half
            if odd:
                b += x
            else:
                a += x
        return cls(a, b, p)

    def _check(self, other: "ScalarExt"):
        if other.p != self.p:
            raise DomainError(f"mixing v^2={self.p} with v^2={other.p}")

    def _lift(self, other):
        if isinstance(other, ScalarExt):
            self._check(other)
            return other
        if isinstance(other, (int, Fraction)):
            return ScalarExt(other, 0, self.p)
        return None

    def __add__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ScalarExt(self.a + o.a, self.b + o.b, self.p)

    __radd__ = __add__

    def __sub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ScalarExt(self.a - o.a, self.b - o.b, self.p)

    def __rsub__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return o - self

    def __neg__(self):
        return ScalarExt(-self.a, -self.b, self.p)

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            return ScalarExt(self.a * other, self.b * other, self.p)
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return ScalarExt(
            self.a * o.a + self.p * self.b * o.b,
            self.a * o.b + self.b * o.a,
            self.p,
        )

    __rmul__ = __mul__

    def inverse(self) -> "ScalarExt":
        norm = self.a * self.a - self.p * self.b * self.b
        if norm == 0:
            raise ZeroDivisionError("ScalarExt zero divisor")
        return ScalarExt(self.a / norm, -self.b / norm, self.p)

    def __truediv__(self, other):
        o = self._lift(other)
        if o is None:
            return NotImplemented
        return self * o.inverse()

    def __pow__(self, n: int):
        if n < 0:
            return self.inverse() ** (-n)
        result = ScalarExt(1, 0, self.p)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def __bool__(self):
        return not self.is_zero()

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            return self.b == 0 and self.a == other
        if not isinstance(other, ScalarExt):
            return NotImplemented
        return self.p == other.p and self.a == other.a and self.b == other.b

    def __hash__(self):
        return hash((self.a, self.b, self.p))

    def size(self) -> Fraction:
        """Magnitude used to pick the largest residual entry."""
        return abs(self.a) + abs(self.b)

    def to_json(self) -> dict:
        return {"a": str(self.a), "b": str(self.b), "p": self.p}

    @classmethod
    def from_json(cls, data: dict) -> "ScalarExt":
        return cls(Fraction(data["a"]), Fraction(data["b"]), int(data["p"]))

    def __repr__(self):
        return f"ScalarExt({self.a}, {self.b}, p={self.p})"

    def __str__(self):
        if self.b == 0:
            return str(self.a)
        if self.a == 0:
            return f"{self.b}*v"
        return f"{self.a} + {self.b}*v"
