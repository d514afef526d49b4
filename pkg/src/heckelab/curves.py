"""Configurations of rational curves and their affine ADE type.

Node labelling for the catalog (node 0 is always the affine node):
  A_n^(1): cycle 0-1-...-n-0 (n = 1 is a double edge)
  D_n^(1): chain 1-2-...-(n-2), with n-1 and n on node n-2 and node 0 on node 2
  E_6^(1): 1-3-4-5-6, 2-4, node 0 on node 2
  E_7^(1): 1-3-4-5-6-7, 2-4, node 0 on node 1
  E_8^(1): 1-3-4-5-6-7-8, 2-4, node 0 on node 8
"""

from __future__ import annotations

import json
from dataclasses import dataclass, field
from fractions import Fraction
from functools import lru_cache
from math import gcd

import networkx as nx

from .cartan import GeneralizedCartanMatrix
from .errors import DomainError, UnsupportedConfigError


@dataclass(frozen=True)
class CurveConfig:
    size: int
    pairwise: tuple[tuple[int, ...], ...]
    self_int: tuple[int, ...]
    names: tuple[str, ...] = ()
    # excluded fibre types: a non-rational or singular component, or non-transverse meetings
    smooth_rational: bool = True
    transverse: bool = True

    def __post_init__(self):
        if len(self.pairwise) != self.size or any(len(r) != self.size for r in self.pairwise):
            raise DomainError("pairwise intersection table has the wrong shape")
        if len(self.self_int) != self.size:
            raise DomainError("one self-intersection per node is required")
        for i in range(self.size):
            if self.pairwise[i][i] != 0:
                raise DomainError("pairwise table must have zero diagonal")
            for j in range(self.size):
                if self.pairwise[i][j] != self.pairwise[j][i] or self.pairwise[i][j] < 0:
                    raise DomainError("pairwise intersections must be symmetric and nonnegative")

    @classmethod
    def from_edges(cls, size: int, edges, self_int=-2, **kw) -> "CurveConfig":
        rows = [[0] * size for _ in range(size)]
        for e in edges:
            u, v = int(e[0]), int(e[1])
            mult = int(e[2]) if len(e) > 2 else 1
            if u == v or not (0 <= u < size and 0 <= v < size):
                raise DomainError(f"bad edge {e!r}")
            rows[u][v] += mult
            rows[v][u] += mult
        if isinstance(self_int, int):
            self_int = [self_int] * size
        return cls(size, tuple(map(tuple, rows)), tuple(int(x) for x in self_int), **kw)

    @classmethod
    def from_json(cls, data) -> "CurveConfig":
        if isinstance(data, str):
            data = json.loads(data)
        nodes = data["nodes"]
        size = nodes if isinstance(nodes, int) else len(nodes)
        names = () if isinstance(nodes, int) else tuple(str(x) for x in nodes)
        index = {n: i for i, n in enumerate(names)} if names else None

        def idx(x):
            if index is not None and str(x) in index:
                return index[str(x)]
            return int(x)

        edges = [(idx(e[0]), idx(e[1]), *e[2:]) for e in data.get("edges", [])]
        si = data.get("self_intersection", -2)
        if isinstance(si, dict):
            si = [int(si.get(n, -2)) for n in (names or [str(i) for i in range(size)])]
        return cls.from_edges(
            size,
            edges,
            si,
            names=names,
            smooth_rational=bool(data.get("smooth_rational", True)),
            transverse=bool(data.get("transverse", True)),
        )

    def to_json(self):
        edges = [
            [i, j, self.pairwise[i][j]] for i in range(self.size) for j in range(i + 1, self.size) if self.pairwise[i][j]
        ]
        out = {"nodes": list(self.names) if self.names else self.size, "edges": edges, "self_intersection": list(self.self_int)}
        if not self.smooth_rational:
            out["smooth_rational"] = False
        if not self.transverse:
            out["transverse"] = False
        return out


def cartan_from_config(cfg: CurveConfig) -> GeneralizedCartanMatrix:
    if not cfg.smooth_rational:
        raise UnsupportedConfigError("components must be smooth rational curves")
    if not cfg.transverse:
        raise UnsupportedConfigError("components must meet transversally")
    if any(s != -2 for s in cfg.self_int):
        raise UnsupportedConfigError("only self-intersection -2 is supported")
    n = cfg.size
    rows = [[2 if i == j else -cfg.pairwise[i][j] for j in range(n)] for i in range(n)]
    return GeneralizedCartanMatrix.of(rows)


# exact linear algebra


def _det(rows) -> Fraction:
    m = [[Fraction(x) for x in r] for r in rows]
    n = len(m)
    det = Fraction(1)
    for c in range(n):
        piv = next((r for r in range(c, n) if m[r][c] != 0), None)
        if piv is None:
            return Fraction(0)
        if piv != c:
            m[c], m[piv] = m[piv], m[c]
            det = -det
        det *= m[c][c]
        for r in range(c + 1, n):
            f = m[r][c] / m[c][c]
            if f:
                for k in range(c, n):
                    m[r][k] -= f * m[c][k]
    return det


def _nullspace(rows) -> list[list[Fraction]]:
    m = [[Fraction(x) for x in r] for r in rows]
    n_rows, n_cols = len(m), len(m[0]) if m else 0
    pivots = []
    r = 0
    for c in range(n_cols):
        piv = next((i for i in range(r, n_rows) if m[i][c] != 0), None)
        if piv is None:
            continue
        m[r], m[piv] = m[piv], m[r]
        inv = 1 / m[r][c]
        m[r] = [x * inv for x in m[r]]
        for i in range(n_rows):
            if i != r and m[i][c] != 0:
                f = m[i][c]
                m[i] = [a - f * b for a, b in zip(m[i], m[r])]
        pivots.append(c)
        r += 1
    basis = []
    for free in (c for c in range(n_cols) if c not in pivots):
        vec = [Fraction(0)] * n_cols
        vec[free] = Fraction(1)
        for i, pc in enumerate(pivots):
            vec[pc] = -m[i][free]
        basis.append(vec)
    return basis


def _primitive(vec) -> tuple[int, ...]:
    den = 1
    for x in vec:
        den = den * x.denominator // gcd(den, x.denominator)
    ints = [int(x * den) for x in vec]
    g = 0
    for x in ints:
        g = gcd(g, x)
    ints = [x // g for x in ints]
    if any(x < 0 for x in ints) and all(x <= 0 for x in ints):
        ints = [-x for x in ints]
    return tuple(ints)


def _symmetrized(a: GeneralizedCartanMatrix):
    try:
        d = a.symmetrizers()
    except DomainError:
        return None
    return [[d[i] * a[i, j] for j in range(a.size)] for i in range(a.size)]


def is_positive_definite(rows) -> bool:
    """Sylvester's criterion on a symmetric matrix with exact determinants."""
    return all(_det([r[:k] for r in rows[:k]]) > 0 for k in range(1, len(rows) + 1))


def null_vector(a: GeneralizedCartanMatrix) -> tuple[int, ...] | None:
    basis = _nullspace(a.rows)
    if len(basis) != 1:
        return None
    return _primitive(basis[0])


def _is_finite_type(a: GeneralizedCartanMatrix, keep) -> bool:
    sub = a.principal(keep)
    sym = _symmetrized(sub)
    return sym is not None and is_positive_definite(sym)


def _graph(a: GeneralizedCartanMatrix, keep=None) -> nx.Graph:
    nodes = list(range(a.size)) if keep is None else list(keep)
    g = nx.Graph()
    g.add_nodes_from(nodes)
    for i in nodes:
        for j in nodes:
            if i < j and a[i, j]:
                g.add_edge(i, j, w=(a[i, j], a[j, i]) if i < j else (a[j, i], a[i, j]))
    return g


# catalog


def catalog_edges(family: str, rank: int) -> list[tuple[int, int, int]]:
    n = rank
    if family == "A":
        if n < 1:
            raise DomainError("A_n^(1) needs n >= 1")
        if n == 1:
            return [(0, 1, 2)]
        return [(i, (i + 1) % (n + 1), 1) for i in range(n + 1)]
    if family == "D":
        if n < 4:
            raise DomainError("D_n^(1) needs n >= 4")
        edges = [(i, i + 1, 1) for i in range(1, n - 2)]
        return edges + [(n - 2, n - 1, 1), (n - 2, n, 1), (0, 2, 1)]
    if family == "E":
        if n not in (6, 7, 8):
            raise DomainError("E_n^(1) needs n in {6, 7, 8}")
        chain = [1, 3] + list(range(4, n + 1))
        edges = [(chain[i], chain[i + 1], 1) for i in range(len(chain) - 1)] + [(2, 4, 1)]
        attach = {6: 2, 7: 1, 8: 8}[n]
        return edges + [(0, attach, 1)]
    raise DomainError(f"unknown family {family!r}")


def catalog_matrix(family: str, rank: int) -> GeneralizedCartanMatrix:
    cfg = CurveConfig.from_edges(rank + 1, catalog_edges(family, rank))
    return cartan_from_config(cfg)


def catalog_types(max_rank: int) -> list[tuple[str, int]]:
    out = [("A", n) for n in range(1, max_rank + 1)]
    out += [("D", n) for n in range(4, max_rank + 1)]
    out += [("E", n) for n in (6, 7, 8) if n <= max_rank]
    return out


@lru_cache(maxsize=None)
def _catalog_graph(family: str, rank: int) -> nx.Graph:
    return _graph(catalog_matrix(family, rank))


@dataclass(frozen=True)
class AffineTypeTag:
    family: str
    rank: int
    null_vector: tuple[int, ...] = field(compare=False, default=())

    def __str__(self):
        return f"{self.family}_{self.rank}^(1)"

    def to_json(self, a: GeneralizedCartanMatrix | None = None):
        out = {"family": self.family, "rank": self.rank, "type": str(self), "null_vector": list(self.null_vector)}
        if a is not None:
            removed = default_removed_node(a, self.null_vector)
            out["removed"] = removed
            out["multiplicities"] = list(multiplicities(a, removed))
        return out


def classify_affine(a) -> AffineTypeTag | None:
    """Affine A/D/E type of a GCM, or None when it is not one of them."""
    if not isinstance(a, GeneralizedCartanMatrix):
        a = GeneralizedCartanMatrix.of(a)
    n = a.size
    if n < 2 or not a.is_symmetric():
        return None
    nv = null_vector(a)
    if nv is None or any(x <= 0 for x in nv):
        return None
    for drop in range(n):
        if not _is_finite_type(a, [i for i in range(n) if i != drop]):
            return None
    g = _graph(a)
    match = lambda x, y: x["w"] == y["w"]  # noqa: E731
    for family, rank in catalog_types(n - 1):
        if rank + 1 != n:
            continue
        if nx.is_isomorphic(g, _catalog_graph(family, rank), edge_match=match):
            return AffineTypeTag(family, rank, nv)
    return None


def default_removed_node(a: GeneralizedCartanMatrix, nv=None) -> int:
    nv = nv or null_vector(a)
    return next(i for i, x in enumerate(nv) if x == 1)


def multiplicities(a, removed: int) -> tuple[int, ...]:
    """Coordinates of the null vector on the remaining nodes, normalized to 1 at `removed`."""
    if not isinstance(a, GeneralizedCartanMatrix):
        a = GeneralizedCartanMatrix.of(a)
    if classify_affine(a) is None:
        raise DomainError("multiplicities need an affine A/D/E matrix")
    if not 0 <= removed < a.size:
        raise DomainError(f"node {removed} out of range")
    keep = [i for i in range(a.size) if i != removed]
    if not nx.is_connected(_graph(a, keep)):
        raise DomainError("removing the node disconnects the diagram")
    if not _is_finite_type(a, keep):
        raise DomainError("remaining diagram is not of finite type")
    nv = null_vector(a)
    if nv[removed] != 1:
        # normalizing to 1 would leave non-integral coordinates, which are not a highest root
        raise DomainError(f"null vector coordinate at node {removed} is {nv[removed]}, not 1")
    return tuple(nv[i] for i in keep)


def k0_exponent(d: int, stats: dict, n: dict) -> int:
    """v-exponent d - sum n_i (a_i - c_i) of the extra diagonal operator."""
    if set(stats) != set(n):
        raise DomainError("stats and multiplicities are indexed by different node sets")
    return d - sum(n[i] * (stats[i][0] - stats[i][1]) for i in n)


# Kodaira fibre types


def kodaira_config(symbol: str) -> CurveConfig:
    s = symbol.strip()
    if s == "A":
        return CurveConfig.from_edges(1, [], self_int=0, smooth_rational=False)
    if s == "C1":
        return CurveConfig.from_edges(1, [], self_int=0, smooth_rational=False)
    if s == "C2":
        return CurveConfig.from_edges(2, [(0, 1, 2)], transverse=False)
    if s == "C3":
        return CurveConfig.from_edges(3, [(0, 1, 1), (1, 2, 1), (0, 2, 1)], transverse=False)
    table = {"IV*": ("E", 6), "III*": ("E", 7), "II*": ("E", 8)}
    if s in table:
        fam, rank = table[s]
        return CurveConfig.from_edges(rank + 1, catalog_edges(fam, rank))
    if s.startswith("I") and s.endswith("*"):
        k = int(s[1:-1])
        return CurveConfig.from_edges(k + 5, catalog_edges("D", k + 4))
    if s.startswith("I"):
        k = int(s[1:])
        if k < 2:
            raise UnsupportedConfigError(f"fibre type {s} has a singular component")
        return CurveConfig.from_edges(k, catalog_edges("A", k - 1))
    raise DomainError(f"unknown fibre symbol {symbol!r}")


def classify_config(cfg: CurveConfig) -> dict:
    a = cartan_from_config(cfg)
    tag = classify_affine(a)
    if tag is None:
        return {"affine": False}
    return {"affine": True, **tag.to_json(a)}
