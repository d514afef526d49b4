"""Noncommutative polynomials over Z[q, q^-1] with central C and D.

A term is keyed by (word, C exponent, D exponent, q exponent) and carries a
rational coefficient.  Flat keys keep the heavy expansions cheap; grouped
LaurentPoly coefficients are produced only for display and serialization.
"""

from __future__ import annotations

from dataclasses import dataclass, field
from fractions import Fraction
from math import gcd, lcm
from typing import Callable, Iterable, NamedTuple

from ..core.laurent import LaurentPoly

KINDS = ("E", "F", "H", "K", "Kinv")
_INVERSE = {"K": "Kinv", "Kinv": "K"}


class Gen(NamedTuple):
    """A generator symbol; a plain tuple so that hashing words stays cheap."""

    kind: str
    alpha: int
    index: int = 0

    def __str__(self):
        if self.kind in ("K", "Kinv"):
            return f"{self.kind}[{self.alpha}]"
        return f"{self.kind}[{self.alpha},{self.index}]"

    def to_json(self):
        return [self.kind, self.alpha, self.index]

    @classmethod
    def from_json(cls, data) -> "Gen":
        kind, alpha, index = data
        if kind not in KINDS:
            raise ValueError(f"unknown generator kind {kind!r}")
        return cls(str(kind), int(alpha), int(index))


Word = tuple  # tuple[Gen, ...]


def _norm(x):
    if isinstance(x, Fraction) and x.denominator == 1:
        return int(x.numerator)
    return x


class NCPoly:
    __slots__ = ("terms",)

    def __init__(self, terms: dict | None = None):
        self.terms = {k: _norm(v) for k, v in (terms or {}).items() if v}

    @classmethod
    def _raw(cls, terms: dict) -> "NCPoly":
        obj = cls.__new__(cls)
        obj.terms = terms
        return obj

    @classmethod
    def gen(cls, g: Gen) -> "NCPoly":
        return cls._raw({((g,), 0, 0, 0): 1})

    @classmethod
    def word(cls, gens: Iterable[Gen], coeff=1, q=0, c=0, d=0) -> "NCPoly":
        return cls({(tuple(gens), c, d, q): coeff})

    @classmethod
    def scalar(cls, coeff=1, q=0, c=0, d=0) -> "NCPoly":
        return cls({((), c, d, q): coeff})

    @classmethod
    def from_laurent(cls, f: LaurentPoly, word: Word = (), c=0, d=0) -> "NCPoly":
        return cls({(tuple(word), c, d, e): x for e, x in f.items()})

    def is_zero(self) -> bool:
        return not self.terms

    def __bool__(self):
        return bool(self.terms)

    def __add__(self, other: "NCPoly") -> "NCPoly":
        out = dict(self.terms)
        accumulate(out, other)
        return NCPoly._raw(out)

    def __neg__(self) -> "NCPoly":
        return NCPoly._raw({k: -v for k, v in self.terms.items()})

    def __sub__(self, other: "NCPoly") -> "NCPoly":
        return self + (-other)

    def __mul__(self, other) -> "NCPoly":
        if isinstance(other, (int, Fraction)):
            if not other:
                return NCPoly()
            return NCPoly._raw({k: _norm(v * other) for k, v in self.terms.items()})
        if not isinstance(other, NCPoly):
            return NotImplemented
        out: dict = {}
        get = out.get
        right = list(other.terms.items())
        for (w1, c1, d1, q1), x1 in self.terms.items():
            for (w2, c2, d2, q2), x2 in right:
                k = (w1 + w2, c1 + c2, d1 + d2, q1 + q2)
                out[k] = get(k, 0) + x1 * x2
        return NCPoly._raw({k: v for k, v in out.items() if v})

    def __rmul__(self, other):
        if isinstance(other, (int, Fraction)):
            return self * other
        return NotImplemented

    def twist(self, q=0, c=0, d=0) -> "NCPoly":
        """Multiply by the central unit q^q C^c D^d."""
        return NCPoly._raw({(w, c0 + c, d0 + d, q0 + q): x for (w, c0, d0, q0), x in self.terms.items()})

    def times_laurent(self, f: LaurentPoly) -> "NCPoly":
        return NCPoly.from_laurent(f) * self

    def __eq__(self, other):
        return isinstance(other, NCPoly) and self.terms == other.terms

    def __hash__(self):
        return hash(frozenset(self.terms.items()))

    def generators(self) -> set[Gen]:
        return {g for (w, _, _, _) in self.terms for g in w}

    def grouped(self) -> dict[tuple, LaurentPoly]:
        """(word, C exp, D exp) -> q-coefficient."""
        acc: dict[tuple, dict] = {}
        for (w, c, d, q), x in self.terms.items():
            acc.setdefault((w, c, d), {})[q] = x
        return {k: LaurentPoly(v) for k, v in sorted(acc.items(), key=lambda kv: _mono_key(kv[0]))}

    def map_terms(self, fn: Callable[[tuple], tuple]) -> "NCPoly":
        out: dict = {}
        for k, v in self.terms.items():
            k2 = fn(k)
            out[k2] = out.get(k2, 0) + v
        return NCPoly({k: v for k, v in out.items() if v})

    def set_d(self, value: int = 1) -> "NCPoly":
        """Specialize the central D to 1 (only value 1 is meaningful here)."""
        if value != 1:
            raise ValueError("only D -> 1 is supported")
        return self.map_terms(lambda k: (k[0], k[1], 0, k[3]))

    def substitute(self, table: dict[Gen, "NCPoly"]) -> "NCPoly":
        out = NCPoly()
        for (w, c, d, q), x in self.terms.items():
            piece = NCPoly.scalar(x, q=q, c=c, d=d)
            for g in w:
                piece = piece * table.get(g, NCPoly.gen(g))
            out = out + piece
        return out

    def reduce_inverses(self) -> "NCPoly":
        """Cancel adjacent K[a] Kinv[a] pairs in every word."""

        def red(word):
            stack: list[Gen] = []
            for g in word:
                if stack and g.kind in _INVERSE and stack[-1].kind == _INVERSE[g.kind] and stack[-1].alpha == g.alpha:
                    stack.pop()
                else:
                    stack.append(g)
            return tuple(stack)

        return self.map_terms(lambda k: (red(k[0]), k[1], k[2], k[3]))

    def __repr__(self):
        return f"NCPoly({format_poly(self)})"


def accumulate(target: dict, poly: NCPoly, scale=1, q=0, c=0, d=0) -> None:
    """target += scale * q^q C^c D^d * poly, in place."""
    get = target.get
    for (w, c0, d0, q0), x in poly.terms.items():
        k = (w, c0 + c, d0 + d, q0 + q)
        s = get(k, 0) + x * scale
        if s:
            target[k] = s
        else:
            del target[k]


def _mono_key(m):
    w, c, d = m
    return (len(w), w, c, d)


def format_poly(p: NCPoly) -> str:
    if not p.terms:
        return "0"
    parts = []
    for (w, c, d), f in p.grouped().items():
        factors = []
        if c:
            factors.append(f"C^{c}")
        if d:
            factors.append(f"D^{d}")
        factors.extend(str(g) for g in w)
        mono = "*".join(factors)
        coeff = str(f).replace("v", "q")
        if not mono:
            parts.append(f"({coeff})")
        elif coeff == "1":
            parts.append(mono)
        else:
            parts.append(f"({coeff})*{mono}")
    return " + ".join(parts)


@dataclass(frozen=True)
class Relation:
    """An identity lhs = rhs; `family` names the template it came from."""

    family: str
    lhs: NCPoly
    rhs: NCPoly
    slot: tuple = field(default=())

    @property
    def difference(self) -> NCPoly:
        return self.lhs - self.rhs

    def generators(self) -> set[Gen]:
        return self.lhs.generators() | self.rhs.generators()

    def is_trivial(self) -> bool:
        return self.difference.is_zero()

    def normalized(self) -> "Relation":
        """The form `primitive integral polynomial = 0` with lowest q-exponent 0 and positive lead."""
        return Relation(self.family, NCPoly._raw(dict(self.key())), NCPoly(), self.slot)

    def key(self) -> frozenset:
        """Canonical form of lhs - rhs up to units ±q^k and rational scaling."""
        diff = dict(self.lhs.terms)
        accumulate(diff, self.rhs, -1)
        if not diff:
            return frozenset()
        den = lcm(*(x.denominator for x in diff.values()))
        ints = {k: x.numerator * (den // x.denominator) for k, x in diff.items()}
        g = gcd(*ints.values())
        qmin = min(k[3] for k in ints)
        lead = min(ints, key=lambda k: (_mono_key(k[:3]), k[3]))
        if ints[lead] < 0:
            g = -g
        return frozenset(((w, c, d, q - qmin), x // g) for (w, c, d, q), x in ints.items())

    def __str__(self):
        return f"{format_poly(self.lhs)} = {format_poly(self.rhs)}"


def relation_keys(relations: Iterable[Relation]) -> set[frozenset]:
    return {r.key() for r in relations if not r.is_trivial()}
