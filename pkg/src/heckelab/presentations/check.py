"""Exact evaluation of relations on linear operators."""

from __future__ import annotations

import re
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Callable, Hashable, Iterable

from ..core.laurent import LaurentPoly, qint
from ..core.scalar import ScalarExt
from ..errors import DomainError, UnassignedSymbolError
from .ncpoly import Gen, Relation


class LaurentRing:
    kind = "laurent"

    def from_laurent(self, f: LaurentPoly):
        return f

    @property
    def one(self):
        return LaurentPoly.const(1)

    @property
    def zero(self):
        return LaurentPoly()

    def q_power(self, k: int):
        return LaurentPoly.monomial(k)

    def size(self, x) -> Fraction:
        return Fraction(sum(abs(c) for _, c in x.items()))

    def element_to_json(self, x):
        return x.to_json()

    def element_from_json(self, data):
        return LaurentPoly.from_json(data)

    def to_json(self):
        return {"kind": "laurent"}


class ScalarRing:
    """Z[v]/(v^2 - p) with q evaluated at v."""

    kind = "scalar"

    def __init__(self, p: int):
        self.p = p

    def from_laurent(self, f: LaurentPoly):
        return f.at(self.p)

    @property
    def one(self):
        return ScalarExt(1, 0, self.p)

    @property
    def zero(self):
        return ScalarExt(0, 0, self.p)

    def q_power(self, k: int):
        return ScalarExt.v_power(k, self.p)

    def size(self, x) -> Fraction:
        return x.size()

    def element_to_json(self, x):
        return x.to_json()

    def element_from_json(self, data):
        if isinstance(data, dict) and "a" in data:
            return ScalarExt.from_json({**data, "p": self.p})
        return LaurentPoly.from_json(data).at(self.p)

    def to_json(self):
        return {"kind": "scalar", "p": self.p}


def ring_from_json(data):
    if data is None or data.get("kind", "laurent") == "laurent":
        return LaurentRing()
    if data["kind"] == "scalar":
        return ScalarRing(int(data["p"]))
    raise DomainError(f"unknown ring {data!r}")


Vec = dict  # state -> ring element


class LinearOp:
    """A linear operator given column by column; columns are cached."""

    def __init__(self, column: Callable[[Hashable], Vec]):
        self._column = column
        self._cache: dict = {}

    def column(self, s) -> Vec:
        col = self._cache.get(s)
        if col is None:
            col = self._column(s)
            self._cache[s] = col
        return col

    def apply(self, vec: Vec) -> Vec:
        out: Vec = {}
        for s, x in vec.items():
            for t, y in self.column(s).items():
                v = out[t] + x * y if t in out else x * y
                if v:
                    out[t] = v
                else:
                    del out[t]
        return out


class SparseOp(LinearOp):
    def __init__(self, columns: dict):
        clean = {s: {t: y for t, y in col.items() if y} for s, col in columns.items()}
        super().__init__(lambda s: clean.get(s, {}))
        self.columns = clean

    @classmethod
    def from_matrix(cls, rows) -> "SparseOp":
        cols: dict = {}
        for i, row in enumerate(rows):
            for j, x in enumerate(row):
                if x:
                    cols.setdefault(j, {})[i] = x
        return cls(cols)

    @classmethod
    def diagonal(cls, entries: dict) -> "SparseOp":
        return cls({s: {s: x} for s, x in entries.items()})

    def entries(self):
        for s, col in self.columns.items():
            for t, y in col.items():
                yield t, s, y

    def to_rows(self, n: int, zero):
        rows = [[zero] * n for _ in range(n)]
        for t, s, y in self.entries():
            rows[t][s] = y
        return rows


ZERO_OP = SparseOp({})


class IdentityOp(LinearOp):
    def __init__(self):
        super().__init__(lambda s: None)

    def column(self, s):
        raise NotImplementedError

    def apply(self, vec: Vec) -> Vec:
        return dict(vec)


_GEN_RE = re.compile(r"^(E|F|H|K|Kinv)\[(-?\d+)(?:,(-?\d+))?\]$")


def parse_gen(text: str) -> Gen:
    m = _GEN_RE.match(text.replace(" ", ""))
    if not m:
        raise DomainError(f"cannot parse generator {text!r}")
    return Gen(m.group(1), int(m.group(2)), int(m.group(3) or 0))


@dataclass
class Representation:
    """Operators for generators on a common basis.

    `defaults` maps a generator kind to "zero" or "identity" for symbols that
    are not listed explicitly (useful for indexed families).
    """

    ring: object
    states: list
    ops: dict = field(default_factory=dict)
    defaults: dict = field(default_factory=dict)
    C: object = None
    D: object = None

    def op(self, g: Gen) -> LinearOp:
        if g in self.ops:
            return self.ops[g]
        mode = self.defaults.get(g.kind)
        if mode == "zero":
            return ZERO_OP
        if mode == "identity":
            return IdentityOp()
        raise UnassignedSymbolError(f"no operator assigned to {g}")

    def central(self, c: int, d: int):
        x = self.ring.one
        if c:
            if self.C is None:
                raise UnassignedSymbolError("central C is not assigned")
            x = x * self.C**c
        if d:
            if self.D is None:
                raise UnassignedSymbolError("central D is not assigned")
            x = x * self.D**d
        return x

    def to_json(self):
        n = len(self.states)
        index = {s: i for i, s in enumerate(self.states)}
        mats = {}
        for g, op in sorted(self.ops.items()):
            if not isinstance(op, SparseOp):
                raise DomainError("only explicit matrices can be serialized")
            rows = [[None] * n for _ in range(n)]
            for t, s, y in op.entries():
                rows[index[t]][index[s]] = self.ring.element_to_json(y)
            mats[str(g)] = [[0 if x is None else x for x in r] for r in rows]
        out = {"dim": n, "ring": self.ring.to_json(), "matrices": mats, "defaults": dict(self.defaults)}
        if self.C is not None:
            out["C"] = self.ring.element_to_json(self.C)
        if self.D is not None:
            out["D"] = self.ring.element_to_json(self.D)
        return out

    @classmethod
    def from_json(cls, data) -> "Representation":
        ring = ring_from_json(data.get("ring"))
        n = int(data["dim"])
        ops = {}
        for name, rows in data.get("matrices", {}).items():
            if len(rows) != n or any(len(r) != n for r in rows):
                raise DomainError(f"matrix for {name} is not {n}x{n}")
            conv = [[ring.element_from_json(x) for x in r] for r in rows]
            ops[parse_gen(name)] = SparseOp.from_matrix(conv)
        C = ring.element_from_json(data["C"]) if "C" in data else None
        D = ring.element_from_json(data["D"]) if "D" in data else None
        return cls(ring, list(range(n)), ops, dict(data.get("defaults", {})), C, D)


@dataclass
class RelationResult:
    rid: str
    holds: bool
    max_residual: object
    nonzero: int

    def to_json(self, ring):
        return {
            "id": self.rid,
            "holds": self.holds,
            "max_residual": None if self.max_residual is None else ring.element_to_json(self.max_residual),
            "nonzero_entries": self.nonzero,
        }


@dataclass
class RelationReport:
    ring: object
    results: list[RelationResult]

    @property
    def all_hold(self) -> bool:
        return all(r.holds for r in self.results)

    def failures(self) -> list[RelationResult]:
        return [r for r in self.results if not r.holds]

    def to_json(self):
        return {
            "all_hold": self.all_hold,
            "checked": len(self.results),
            "failed": len(self.failures()),
            "relations": [r.to_json(self.ring) for r in self.results],
        }


def relation_id(rel: Relation) -> str:
    return f"{rel.family}{list(rel.slot)}" if rel.slot else rel.family


def evaluate_on(rel: Relation, rep: Representation, s, memo: dict | None = None) -> Vec:
    """(lhs - rhs) applied to the basis vector at state s."""
    ring = rep.ring
    memo = {} if memo is None else memo
    out: Vec = {}

    def word_image(word) -> Vec:
        key = (word, s)
        if key in memo:
            return memo[key]
        if not word:
            res = {s: ring.one}
        else:
            res = rep.op(word[0]).apply(word_image(word[1:]))
        memo[key] = res
        return res

    for sign, side in ((1, rel.lhs), (-1, rel.rhs)):
        for (word, c, d), f in side.grouped().items():
            coeff = ring.from_laurent(f) * rep.central(c, d) * sign
            img = word_image(word)
            if not img:
                continue
            for t, x in img.items():
                v = out[t] + coeff * x if t in out else coeff * x
                if v:
                    out[t] = v
                else:
                    del out[t]
    return out


def check_representation(relations: Iterable[Relation], rep: Representation, basis=None) -> RelationReport:
    basis = rep.states if basis is None else list(basis)
    ring = rep.ring
    results = []
    memos = {s: {} for s in basis}
    for rel in relations:
        worst, count = None, 0
        for s in basis:
            for x in evaluate_on(rel, rep, s, memos[s]).values():
                count += 1
                if worst is None or ring.size(x) > ring.size(worst):
                    worst = x
        results.append(RelationResult(relation_id(rel), count == 0, worst, count))
    return RelationReport(ring, results)


def weight_representation(m: int, ring=None) -> Representation:
    """(m+1)-dimensional U_q(sl2) module on v_0..v_m with K v_j = q^(m-2j) v_j."""
    if m < 0:
        raise DomainError("highest weight must be nonnegative")
    ring = ring or LaurentRing()
    conv = ring.from_laurent
    E = SparseOp({j: {j - 1: conv(qint(m - j + 1))} for j in range(1, m + 1)})
    F = SparseOp({j: {j + 1: conv(qint(j + 1))} for j in range(m)})
    K = SparseOp.diagonal({j: ring.q_power(m - 2 * j) for j in range(m + 1)})
    Kinv = SparseOp.diagonal({j: ring.q_power(2 * j - m) for j in range(m + 1)})
    ops = {Gen("E", 0): E, Gen("F", 0): F, Gen("K", 0): K, Gen("Kinv", 0): Kinv}
    return Representation(ring, list(range(m + 1)), ops)


def zero_representation(dim: int, ring=None, with_d: bool = True) -> Representation:
    """E = F = H = 0 and K = C = D = Id."""
    ring = ring or LaurentRing()
    defaults = {"E": "zero", "F": "zero", "H": "zero", "K": "identity", "Kinv": "identity"}
    return Representation(ring, list(range(dim)), {}, defaults, ring.one, ring.one if with_d else None)
