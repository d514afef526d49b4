"""Laurent polynomials in a formal variable v with exact integer (or rational) coefficients."""

from __future__ import annotations

from fractions import Fraction
from typing import Iterable, Mapping

from ..errors import DomainError


def _norm(c):
    if isinstance(c, Fraction) and c.denominator == 1:
        return int(c.numerator)
    return c


class LaurentPoly:
    """Immutable element of Z[v, v^-1] (rational coefficients are tolerated).

    Zero coefficients are never stored, so the zero polynomial has an empty map.
    """

    __slots__ = ("_c", "_hash")

    def __init__(self, coeffs: Mapping[int, int] | None = None):
        c = {}
        if coeffs:
            for e, x in coeffs.items():
                if x:
                    c[int(e)] = _norm(x)
        self._c = c
        self._hash = None

    @classmethod
    def _raw(cls, c: dict) -> "LaurentPoly":
        obj = cls.__new__(cls)
        obj._c = c
        obj._hash = None
        return obj

    @classmethod
    def const(cls, c) -> "LaurentPoly":
        return cls({0: c})

    @classmethod
    def monomial(cls, exp: int, coeff=1) -> "LaurentPoly":
        return cls({exp: coeff})

    @classmethod
    def coerce(cls, x) -> "LaurentPoly":
        if isinstance(x, LaurentPoly):
            return x
        if isinstance(x, (int, Fraction)):
            return cls.const(x)
        raise TypeError(f"cannot coerce {type(x).__name__} to LaurentPoly")

    @property
    def coeffs(self) -> dict[int, int]:
        return dict(self._c)

    def items(self):
        return sorted(self._c.items())

    def __getitem__(self, e: int):
        return self._c.get(e, 0)

    def is_zero(self) -> bool:
        return not self._c

    def __bool__(self) -> bool:
        return bool(self._c)

    def degree_range(self) -> tuple[int, int]:
        if not self._c:
            raise DomainError("zero polynomial has no degree")
        return min(self._c), max(self._c)

    # ring operations
    def __add__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        c = dict(self._c)
        for e, x in other._c.items():
            y = c.get(e, 0) + x
            if y:
                c[e] = _norm(y)
            else:
                c.pop(e, None)
        return LaurentPoly._raw(c)

    __radd__ = __add__

    def __neg__(self):
        return LaurentPoly._raw({e: -x for e, x in self._c.items()})

    def __sub__(self, other):
        try:
            other = LaurentPoly.coerce(other)
        except TypeError:
            return NotImplemented
        return self + (-other)

    def __rsub__(self, other):
        return LaurentPoly.coerce(other) - self

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            if not other:
                return LaurentPoly._raw({})
            return LaurentPoly._raw({e: _norm(x * other) for e, x in self._c.items()})
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        c: dict[int, int] = {}
        for e1, x1 in self._c.items():
            for e2, x2 in other._c.items():
                e = e1 + e2
                c[e] = c.get(e, 0) + x1 * x2
        return LaurentPoly._raw({e: _norm(x) for e, x in c.items() if x})

    __rmul__ = __mul__

    def __pow__(self, n: int):
        if n < 0:
            if len(self._c) == 1:
                (e, x), = self._c.items()
                if x in (1, -1):
                    return LaurentPoly._raw({e * n: x ** (-n) if n % 2 == 0 else x})
            raise DomainError("only units (±v^k) have negative powers")
        result = LaurentPoly.const(1)
        base = self
        while n:
            if n & 1:
                result = result * base
            base = base * base
            n >>= 1
        return result

    def shift(self, k: int) -> "LaurentPoly":
        """Multiply by v^k."""
        return LaurentPoly._raw({e + k: x for e, x in self._c.items()})

    def bar(self) -> "LaurentPoly":
        """The ring involution v -> v^-1."""
        return LaurentPoly._raw({-e: x for e, x in self._c.items()})

    def __eq__(self, other):
        if isinstance(other, (int, Fraction)):
            other = LaurentPoly.const(other)
        if not isinstance(other, LaurentPoly):
            return NotImplemented
        return self._c == other._c

    def __hash__(self):
        if self._hash is None:
            self._hash = hash(frozenset(self._c.items()))
        return self._hash

    def content(self):
        """Gcd of the integer coefficients (denominators must be cleared first)."""
        from math import gcd

        g = 0
        for x in self._c.values():
            if isinstance(x, Fraction):
                raise DomainError("content of a non-integral polynomial")
            g = gcd(g, x)
        return g

    def denominator(self) -> int:
        from math import lcm

        m = 1
        for x in self._c.values():
            if isinstance(x, Fraction):
                m = lcm(m, x.denominator)
        return m

    def substitute(self, value):
        """Evaluate at v = value, where value lives in any ring with pow and +."""
        total = None
        for e, x in self._c.items():
            term = (value ** e) * x
            total = term if total is None else total + term
        if total is None:
            return value ** 0 * 0
        return total

    def at(self, p: int):
        """Image in Z[v]/(v^2 - p), i.e. v becomes a formal square root of p."""
        from .scalar import ScalarExt

        return ScalarExt.from_laurent(self, p)

    def to_json(self) -> dict[str, int]:
        out = {}
        for e, x in sorted(self._c.items()):
            if isinstance(x, Fraction):
                raise DomainError("rational coefficients cannot be serialized")
            out[str(e)] = x
        return out

    @classmethod
    def from_json(cls, data: Mapping[str, int] | int) -> "LaurentPoly":
        if isinstance(data, int):
            return cls.const(data)
        return cls({int(e): int(x) for e, x in data.items()})

    def __repr__(self):
        return f"LaurentPoly({dict(sorted(self._c.items()))})"

    def __str__(self):
        if not self._c:
            return "0"
        parts = []
        for e, x in sorted(self._c.items(), reverse=True):
            if e == 0:
                mono = ""
            elif e == 1:
                mono = "v"
            else:
                mono = f"v^{e}"
            if mono and x == 1:
                parts.append(mono)
            elif mono and x == -1:
                parts.append("-" + mono)
            else:
                parts.append(f"{x}{'*' + mono if mono else ''}")
        return " + ".join(parts).replace("+ -", "- ")


V = LaurentPoly.monomial(1)
ONE = LaurentPoly.const(1)
ZERO = LaurentPoly()


def laurent_arith(a: LaurentPoly, b: LaurentPoly | None, op: str):
    """Dispatch table over the ring operations: add, mul, neg, eq, bar."""
    if op == "add":
        return a + b
    if op == "mul":
        return a * b
    if op == "neg":
        return -a
    if op == "eq":
        return a == b
    if op == "bar":
        return a.bar()
    raise DomainError(f"unknown operation {op!r}")


def qint(n: int) -> LaurentPoly:
    """Balanced quantum integer [n] = v^(n-1) + v^(n-3) + ... + v^(1-n)."""
    if n == 0:
        return ZERO
    if n < 0:
        return -qint(-n)
    return LaurentPoly({n - 1 - 2 * i: 1 for i in range(n)})


_BINOM_CACHE: dict[tuple[int, int], LaurentPoly] = {}


def gauss_binomial(n: int, k: int) -> LaurentPoly:
    """Bar-invariant Gaussian binomial, built with the q-Pascal rule
    [n k] = v^k [n-1 k] + v^(k-n) [n-1 k-1]."""
    if n < 0 or k < 0:
        raise DomainError("gauss_binomial needs nonnegative arguments")
    if k > n:
        raise DomainError(f"gauss_binomial: k={k} exceeds n={n}")
    if k == 0 or k == n:
        return ONE
    key = (n, k)
    hit = _BINOM_CACHE.get(key)
    if hit is not None:
        return hit
    val = gauss_binomial(n - 1, k).shift(k) + gauss_binomial(n - 1, k - 1).shift(k - n)
    _BINOM_CACHE[key] = val
    return val


def gauss_binomial_count(n: int, k: int, p: int) -> int:
    """Number of k-dimensional subspaces of F_p^n: v^(k(n-k)) [n k] at v^2 = p."""
    poly = gauss_binomial(n, k).shift(k * (n - k))
    total = 0
    for e, c in poly.items():
        if e % 2:
            raise AssertionError("unbalanced Gaussian binomial has an odd exponent")
        total += c * p ** (e // 2)
    return total


def sum_polys(polys: Iterable[LaurentPoly]) -> LaurentPoly:
    c: dict[int, int] = {}
    for f in polys:
        for e, x in f._c.items():
            c[e] = c.get(e, 0) + x
    return LaurentPoly._raw({e: _norm(x) for e, x in c.items() if x})
