"""Builders for quantum Kac-Moody presentations and their toroidal analogues."""

from __future__ import annotations

from dataclasses import dataclass, field
from itertools import combinations

from ..cartan import GeneralizedCartanMatrix
from ..core.laurent import LaurentPoly, gauss_binomial
from ..errors import DomainError
from .ncpoly import Gen, NCPoly, Relation

KM = "km"
TOROIDAL = "toroidal"
EXTENDED = "extended"
SL2_CLOSED = "sl2-closed"

Q_MINUS_QINV = LaurentPoly({1: 1, -1: -1})

# shapes of generating-function relation templates
GF_SHAPES = ("KK+", "KK-", "K+K-", "K+E", "K-E", "K+F", "K-F", "EF", "EE", "FF", "SerreE", "SerreF")


@dataclass(frozen=True)
class GFRelation:
    """One generating-function identity for the pair (alpha, beta).

    `m` is the theta parameter (or a_{alpha beta} for Serre shapes) and
    `dpow` the exponent of D in the theta argument.
    """

    shape: str
    alpha: int
    beta: int
    m: int
    dpow: int = 0

    def __post_init__(self):
        if self.shape not in GF_SHAPES:
            raise DomainError(f"unknown relation shape {self.shape!r}")

    def to_json(self):
        return {"shape": self.shape, "alpha": self.alpha, "beta": self.beta, "m": self.m, "dpow": self.dpow}

    @classmethod
    def from_json(cls, data) -> "GFRelation":
        return cls(data["shape"], int(data["alpha"]), int(data["beta"]), int(data["m"]), int(data.get("dpow", 0)))


@dataclass
class Presentation:
    kind: str
    cartan: GeneralizedCartanMatrix
    relations: list[Relation]
    gf_relations: list[GFRelation] = field(default_factory=list)
    central: tuple[str, ...] = ()
    symmetrizers: tuple[int, ...] = ()
    # the sl2 closed form is indexed by the 3x3 double-extended matrix, which is not a GCM
    matrix: tuple[tuple[int, ...], ...] = ()

    def __post_init__(self):
        if not self.matrix:
            self.matrix = self.cartan.rows

    @property
    def nodes(self) -> range:
        return range(len(self.matrix))

    def generator_families(self) -> list[str]:
        r = len(self.matrix) - 1
        if self.kind in (KM, SL2_CLOSED):
            fams = [f"{k}[{i}]" for k in ("E", "F") for i in self.nodes]
            fams += [f"{k}[{i}]" for k in ("K", "Kinv") for i in self.nodes]
            return fams
        fams = [f"E[a,k], F[a,k] (a=0..{r}, k in Z)", f"H[a,l] (a=0..{r}, l != 0)", f"K[a], Kinv[a] (a=0..{r})"]
        return fams + [f"{c}^(+-1)" for c in self.central]

    def declares(self, g: Gen) -> bool:
        if g.alpha not in self.nodes:
            return False
        if self.kind in (KM, SL2_CLOSED):
            return g.kind != "H" and g.index == 0
        if g.kind == "H":
            return g.index != 0
        return g.kind in ("E", "F") or g.index == 0

    def expand(self, truncation: int) -> list[Relation]:
        from .expand import expand_gf_relation

        out = list(self.relations)
        for gf in self.gf_relations:
            out.extend(expand_gf_relation(gf, truncation))
        return out


def _K(i):
    return NCPoly.gen(Gen("K", i))


def _Kinv(i):
    return NCPoly.gen(Gen("Kinv", i))


def inverse_relations(nodes) -> list[Relation]:
    one = NCPoly.scalar(1)
    out = []
    for i in nodes:
        out.append(Relation("KKinv", _K(i) * _Kinv(i), one, (i,)))
        out.append(Relation("KinvK", _Kinv(i) * _K(i), one, (i,)))
    return out


def serre_poly(x_i: NCPoly, x_j: NCPoly, a_ij: int, sign_q: int = 0) -> NCPoly:
    """sum_m (-1)^m [s m] x_i^(s-m) x_j x_i^m with s = 1 - a_ij; sign_q=+-2 gives (-q^+-2)^m weights."""
    s = 1 - a_ij
    total = NCPoly()
    for m in range(s + 1):
        coeff = gauss_binomial(s, m) * LaurentPoly.monomial(sign_q * m, (-1) ** m)
        word = NCPoly.scalar(1)
        for _ in range(s - m):
            word = word * x_i
        word = word * x_j
        for _ in range(m):
            word = word * x_i
        total = total + word.times_laurent(coeff)
    return total


def _ef_relation(i, j, e, f, ki, kinv) -> Relation:
    lhs = (e * f - f * e).times_laurent(Q_MINUS_QINV)
    rhs = (ki - kinv) if i == j else NCPoly()
    return Relation("EF", lhs, rhs, (i, j))


def presentation_quantum_km(cartan) -> Presentation:
    if not isinstance(cartan, GeneralizedCartanMatrix):
        cartan = GeneralizedCartanMatrix.of(cartan)
    n = cartan.size
    E = [NCPoly.gen(Gen("E", i)) for i in range(n)]
    F = [NCPoly.gen(Gen("F", i)) for i in range(n)]
    rels = inverse_relations(range(n))
    for i, j in combinations(range(n), 2):
        rels.append(Relation("KK", _K(i) * _K(j), _K(j) * _K(i), (i, j)))
    for i in range(n):
        for j in range(n):
            a = cartan[i, j]
            rels.append(Relation("KE", _K(i) * E[j] * _Kinv(i), E[j].twist(q=a), (i, j)))
            rels.append(Relation("KF", _K(i) * F[j] * _Kinv(i), F[j].twist(q=-a), (i, j)))
    for i in range(n):
        for j in range(n):
            rels.append(_ef_relation(i, j, E[i], F[j], _K(i), _Kinv(i)))
    for i in range(n):
        for j in range(n):
            if i != j:
                rels.append(Relation("SerreE", serre_poly(E[i], E[j], cartan[i, j]), NCPoly(), (i, j)))
                rels.append(Relation("SerreF", serre_poly(F[i], F[j], cartan[i, j]), NCPoly(), (i, j)))
    return Presentation(KM, cartan, rels)


def _require_affine(cartan: GeneralizedCartanMatrix):
    from ..curves import classify_affine

    if classify_affine(cartan) is None:
        raise DomainError("toroidal presentations need an affine Cartan matrix")


def _gf_families(n: int, theta_m, serre_a, dpow) -> list[GFRelation]:
    out = []
    for a in range(n):
        for b in range(n):
            if a <= b:
                out.append(GFRelation("KK+", a, b, 0))
                out.append(GFRelation("KK-", a, b, 0))
            m, d = theta_m(a, b), dpow(a, b)
            out.append(GFRelation("K+K-", a, b, m, d))
            for shape in ("K+E", "K-E", "K+F", "K-F"):
                out.append(GFRelation(shape, a, b, m, d))
            out.append(GFRelation("EF", a, b, 0))
            out.append(GFRelation("EE", a, b, m, d))
            out.append(GFRelation("FF", a, b, m, d))
            if a != b:
                out.append(GFRelation("SerreE", a, b, serre_a(a, b)))
                out.append(GFRelation("SerreF", a, b, serre_a(a, b)))
    return out


def presentation_toroidal(cartan, symmetrizers=None) -> Presentation:
    if not isinstance(cartan, GeneralizedCartanMatrix):
        cartan = GeneralizedCartanMatrix.of(cartan)
    _require_affine(cartan)
    d = tuple(symmetrizers) if symmetrizers is not None else cartan.symmetrizers()
    n = cartan.size
    if len(d) != n:
        raise DomainError("one symmetrizer per node is required")
    for i in range(n):
        for j in range(n):
            if d[i] * cartan[i, j] != d[j] * cartan[j, i]:
                raise DomainError("symmetrizers do not symmetrize the matrix")
    gfs = _gf_families(n, lambda a, b: d[a] * cartan[a, b], lambda a, b: cartan[a, b], lambda a, b: 0)
    return Presentation(TOROIDAL, cartan, inverse_relations(range(n)), gfs, ("C",), d)


def affine_a_matrix(n: int) -> GeneralizedCartanMatrix:
    """Affine A_{n-1}^(1) on nodes Z/n; n = 2 gives the (2,-2) matrix."""
    if n < 2:
        raise DomainError("need n >= 2")
    rows = [[0] * n for _ in range(n)]
    for i in range(n):
        rows[i][i] = 2
        if n == 2:
            rows[i][1 - i] = -2
        else:
            rows[i][(i + 1) % n] = -1
            rows[i][(i - 1) % n] = -1
    return GeneralizedCartanMatrix.of(rows)


def twist_matrix(n: int) -> list[list[int]]:
    """m_ab = delta_{a,b+1} - delta_{a+1,b} over Z/n."""
    if n < 2:
        raise DomainError("need n >= 2")
    return [[int(a % n == (b + 1) % n) - int((a + 1) % n == b % n) for b in range(n)] for a in range(n)]


def presentation_extended_toroidal(n: int) -> Presentation:
    cartan = affine_a_matrix(n)
    mm = twist_matrix(n)
    gfs = _gf_families(n, lambda a, b: cartan[a, b], lambda a, b: cartan[a, b], lambda a, b: mm[a][b])
    return Presentation(EXTENDED, cartan, inverse_relations(range(n)), gfs, ("C", "D"), (1,) * n)


SL2_DOUBLE_EXTENDED = ((2, -2, 2), (-2, 2, -2), (2, -2, 2))


def presentation_sl2_toroidal_closed() -> Presentation:
    """The closed-form relations listed for the sl2 toroidal algebra on E_i, F_i, K_i, i = 0, 1, 2."""
    a = SL2_DOUBLE_EXTENDED
    n = 3
    E = [NCPoly.gen(Gen("E", i)) for i in range(n)]
    F = [NCPoly.gen(Gen("F", i)) for i in range(n)]
    rels = inverse_relations(range(n))
    for i, j in combinations(range(n), 2):
        rels.append(Relation("KK", _K(i) * _K(j), _K(j) * _K(i), (i, j)))
    for i in range(n):
        for j in range(n):
            rels.append(Relation("KE", _K(i) * E[j] * _Kinv(i), E[j].twist(q=a[i][j]), (i, j)))
            rels.append(Relation("KF", _K(i) * F[j] * _Kinv(i), F[j].twist(q=-a[i][j]), (i, j)))
    rels.append(Relation("EE", E[2] * E[0], (E[0] * E[2]).twist(q=-2), (2, 0)))
    rels.append(Relation("FF", F[2] * F[0], (F[0] * F[2]).twist(q=-2), (2, 0)))
    for i in range(n):
        for j in range(n):
            if abs(j - i) <= 1:
                rels.append(_ef_relation(i, j, E[i], F[j], _K(i), _Kinv(i)))
            if abs(j - i) == 1:
                rels.append(Relation("SerreE", serre_poly(E[i], E[j], -2), NCPoly(), (i, j)))
                rels.append(Relation("SerreF", serre_poly(F[i], F[j], -2), NCPoly(), (i, j)))
            if abs(j - i) == 2:
                sgn = 2 if j - i == 2 else -2
                rels.append(Relation("SerreEF", serre_poly(E[i], F[j], -2, sgn), NCPoly(), (i, j)))
                rels.append(Relation("SerreFE", serre_poly(F[i], E[j], -2, sgn), NCPoly(), (i, j)))
    return Presentation(SL2_CLOSED, affine_a_matrix(2), rels, matrix=a)
