"""Modified Hecke operators E, F, K on finite incidence models.

Down edges realize the operator T (a grows by one, c drops by one) and up
edges its adjoint-like partner T*.  E sums over up edges, F over down edges.
"""

from __future__ import annotations

import itertools
from dataclasses import dataclass, field
from fractions import Fraction

from .cartan import GeneralizedCartanMatrix
from .core.fp import Subspace, all_subspaces
from .core.guard import check_size
from .core.scalar import ScalarExt
from .errors import CalibrationError, DomainError
from .presentations.build import presentation_quantum_km
from .presentations.check import RelationReport, Representation, ScalarRing, SparseOp, check_representation
from .presentations.ncpoly import Gen


@dataclass
class IncidenceModel:
    states: list
    p: int
    components: list = field(default_factory=lambda: [0])
    stats: dict = field(default_factory=dict)  # comp -> state -> (a, b, c)
    down: dict = field(default_factory=dict)  # comp -> [(src, dst, mult)]
    up: dict = field(default_factory=dict)

    def validate(self) -> None:
        index = set(self.states)
        for i in self.components:
            st = self.stats.get(i)
            if st is None or set(st) != index:
                raise DomainError(f"component {i} lacks stats for some state")
            for s, (a, b, c) in st.items():
                if min(a, b, c) < 0:
                    raise DomainError(f"negative stat at state {s!r}")
            for src, dst, mult in self.down.get(i, []):
                a, b, c = st[src]
                if st[dst] != (a + 1, b, c - 1) or mult <= 0:
                    raise DomainError(f"down edge {src!r} -> {dst!r} breaks the transition law")
            for src, dst, mult in self.up.get(i, []):
                a, b, c = st[src]
                if st[dst] != (a - 1, b, c + 1) or mult <= 0:
                    raise DomainError(f"up edge {src!r} -> {dst!r} breaks the transition law")

    def to_json(self) -> dict:
        name = {s: str(k) for k, s in enumerate(self.states)}
        return {
            "p": self.p,
            "states": [name[s] for s in self.states],
            "labels": {name[s]: _label(s) for s in self.states},
            "components": list(self.components),
            "stats": {str(i): {name[s]: list(v) for s, v in self.stats[i].items()} for i in self.components},
            "down_edges": {str(i): [[name[a], name[b], m] for a, b, m in self.down.get(i, [])] for i in self.components},
            "up_edges": {str(i): [[name[a], name[b], m] for a, b, m in self.up.get(i, [])] for i in self.components},
        }

    @classmethod
    def from_json(cls, data) -> "IncidenceModel":
        comps = [int(i) for i in data.get("components", [0])]
        labels = data.get("labels", {})
        if len(set(labels.values())) != len(labels):
            labels = {}
        name = lambda s: str(labels.get(str(s), s))  # noqa: E731
        states = [name(s) for s in data["states"]]
        stats = {i: {name(s): tuple(v) for s, v in data["stats"][str(i)].items()} for i in comps}

        def edges(key, i):
            return [(name(a), name(b), int(m)) for a, b, m in data.get(key, {}).get(str(i), [])]

        model = cls(states, int(data["p"]), comps, stats, {i: edges("down_edges", i) for i in comps}, {i: edges("up_edges", i) for i in comps})
        model.validate()
        return model


def _label(s) -> str:
    if isinstance(s, Subspace):
        return "<" + ",".join("".join(map(str, r)) for r in s.basis) + ">"
    return str(s)


def single_state_model(a: int, b: int, c: int, p: int) -> IncidenceModel:
    return IncidenceModel(["*"], p, [0], {0: {"*": (a, b, c)}}, {0: []}, {0: []})


def grassmann_sl2_model(d: int, p: int) -> IncidenceModel:
    """All subspaces U of F_p^d with c = dim U, a = d - dim U, b = 0.

    A down edge goes from U to each hyperplane of U, so c drops by one as the
    transition law requires; up edges are the reverses.
    """
    check_size(p**d, "ambient space of the Grassmannian model")
    states = all_subspaces(d, p)
    by_dim: dict[int, list[Subspace]] = {}
    for s in states:
        by_dim.setdefault(s.dim, []).append(s)
    down, up = [], []
    for k in range(1, d + 1):
        for big in by_dim[k]:
            for small in by_dim[k - 1]:
                if small <= big:
                    down.append((big, small, 1))
                    up.append((small, big, 1))
    stats = {s: (d - s.dim, 0, s.dim) for s in states}
    model = IncidenceModel(states, p, [0], {0: stats}, {0: down}, {0: up})
    model.validate()
    return model


def product_model(m1: IncidenceModel, m2: IncidenceModel) -> IncidenceModel:
    """Tensor product: states are pairs, components of each factor act on their own coordinate."""
    if m1.p != m2.p:
        raise DomainError("factors must share p")
    check_size(len(m1.states) * len(m2.states), "product model states")
    states = list(itertools.product(m1.states, m2.states))
    comps, stats, down, up = [], {}, {}, {}
    for side, model in ((0, m1), (1, m2)):
        for i in model.components:
            cid = len(comps)
            comps.append(cid)
            stats[cid] = {s: model.stats[i][s[side]] for s in states}

            def lift(edges, side=side):
                out = []
                for src, dst, mult in edges:
                    for other in (m2.states if side == 0 else m1.states):
                        if side == 0:
                            out.append(((src, other), (dst, other), mult))
                        else:
                            out.append(((other, src), (other, dst), mult))
                return out

            down[cid] = lift(model.down.get(i, []))
            up[cid] = lift(model.up.get(i, []))
    model = IncidenceModel(states, m1.p, comps, stats, down, up)
    model.validate()
    return model


@dataclass(frozen=True)
class ExponentCalibration:
    """Offsets eps = alpha*c + beta*a + gamma (half-integers) added to the E and F v-exponents."""

    e: tuple[Fraction, Fraction, Fraction] = (Fraction(0), Fraction(0), Fraction(0))
    f: tuple[Fraction, Fraction, Fraction] = (Fraction(0), Fraction(0), Fraction(0))

    @staticmethod
    def _eval(coeffs, a, c) -> Fraction:
        alpha, beta, gamma = coeffs
        return alpha * c + beta * a + gamma

    def eps_e(self, a, c) -> Fraction:
        return self._eval(self.e, a, c)

    def eps_f(self, a, c) -> Fraction:
        return self._eval(self.f, a, c)

    def to_json(self):
        return {"E": [str(x) for x in self.e], "F": [str(x) for x in self.f]}


ZERO_CALIBRATION = ExponentCalibration()


def _int_exp(x: Fraction) -> int:
    if x.denominator != 1:
        raise DomainError("non-integral v-exponent")
    return int(x)


def build_efk(model: IncidenceModel, i=0, calib: ExponentCalibration = ZERO_CALIBRATION):
    """(E_i, F_i, K_i, K_i^-1) as sparse operators over Z[v]/(v^2 - p)."""
    if i not in model.components:
        raise DomainError(f"unknown component {i!r}")
    st = model.stats[i]
    p = model.p
    e_cols: dict = {}
    for src, dst, mult in model.up.get(i, []):
        a, b, c = st[src]
        exp = _int_exp(-c + calib.eps_e(a, c))
        col = e_cols.setdefault(dst, {})
        col[src] = col.get(src, ScalarExt(0, 0, p)) + ScalarExt.v_power(exp, p) * mult
    f_cols: dict = {}
    for src, dst, mult in model.down.get(i, []):
        a, b, c = st[src]
        exp = _int_exp(-a + calib.eps_f(a, c))
        col = f_cols.setdefault(dst, {})
        col[src] = col.get(src, ScalarExt(0, 0, p)) + ScalarExt.v_power(exp, p) * mult
    k = SparseOp.diagonal({s: ScalarExt.v_power(a - c, p) for s, (a, b, c) in st.items()})
    kinv = SparseOp.diagonal({s: ScalarExt.v_power(c - a, p) for s, (a, b, c) in st.items()})
    return SparseOp(e_cols), SparseOp(f_cols), k, kinv


def representation_of(model: IncidenceModel, ops: dict) -> Representation:
    table = {}
    for idx, (e, f, k, kinv) in ops.items():
        table.update({Gen("E", idx): e, Gen("F", idx): f, Gen("K", idx): k, Gen("Kinv", idx): kinv})
    return Representation(ScalarRing(model.p), list(model.states), table)


def check_quantum_relations(model: IncidenceModel, ops: dict, gcm) -> RelationReport:
    """ops maps node index (0..n-1 of gcm) to (E, F, K, Kinv)."""
    if not isinstance(gcm, GeneralizedCartanMatrix):
        gcm = GeneralizedCartanMatrix.of(gcm)
    if sorted(ops) != list(range(gcm.size)):
        raise DomainError("operators must be indexed by the Cartan matrix nodes")
    rels = presentation_quantum_km(gcm).relations
    return check_representation(rels, representation_of(model, ops))


def grading_holds(model: IncidenceModel, i, e: SparseOp, f: SparseOp, k: SparseOp) -> bool:
    """E lowers c_i by one, F raises it by one, K is diagonal."""
    c = {s: v[2] for s, v in model.stats[i].items()}
    return (
        all(c[t] == c[s] - 1 for t, s, _ in e.entries())
        and all(c[t] == c[s] + 1 for t, s, _ in f.entries())
        and all(t == s for t, s, _ in k.entries())
    )


_GRID = [Fraction(-1), Fraction(-1, 2), Fraction(0), Fraction(1, 2), Fraction(1)]


def calibration_grid():
    """All grid points, smallest L1 norm first, ties broken lexicographically."""
    pts = list(itertools.product(_GRID, repeat=6))
    pts.sort(key=lambda x: (sum(abs(t) for t in x), x))
    return pts


def calibrate_sl2(model: IncidenceModel, i=0) -> ExponentCalibration:
    best = None
    for pt in calibration_grid():
        calib = ExponentCalibration(pt[:3], pt[3:])
        try:
            ops = build_efk(model, i, calib)
        except DomainError:
            continue
        report = check_quantum_relations(model, {0: ops}, [[2]])
        if report.all_hold:
            return calib
        if best is None or len(report.failures()) < len(best[1].failures()):
            best = (calib, report)
    raise CalibrationError("no grid calibration satisfies the sl2 relations", report=best[1] if best else None)
