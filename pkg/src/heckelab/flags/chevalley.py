"""Chevalley-type operators e_a, f_a, k_a on functions of periodic flags.

Operators act on the basis of delta functions.  The column of e_a at a flag G
lists the flags F that agree with G away from position a and have
G_a ⊂ F_a ⊆ G_{a+1} with one extra dimension; f_a goes the other way, to
hyperplanes G_{a-1} ⊆ F_a ⊂ G_a.  Within a periodic flag z F_a ⊆ F_{a-1}
always holds, so every such subspace is again a lattice.

Each entry carries v^(x j_a(F) + y j_{a+1}(F) + c), where F is the flag the
function is evaluated at and j are its dimension jumps.  The exponents
(x, y, c) for e and for f are found by a grid search.

Moves are computed in a window deeper than the model by `margin` steps, which
keeps words of length <= margin exact on functions supported on interior flags.
"""

from __future__ import annotations

from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache

from ..core.scalar import ScalarExt
from ..errors import BoundaryError, CalibrationError, DomainError
from ..presentations.build import affine_a_matrix, presentation_quantum_km
from ..presentations.check import LinearOp, Representation, ScalarRing, check_representation
from ..presentations.ncpoly import Gen
from ..surface import calibration_grid
from .lattice import PeriodicFlag, TruncatedModel, embed_flag, interior_flags, window_for


@dataclass(frozen=True)
class FlagCalibration:
    e: tuple = (0, 0, 0)
    f: tuple = (0, 0, 0)

    def to_json(self):
        return {"e": [str(x) for x in self.e], "f": [str(x) for x in self.f]}


class FlagSpace:
    """Flags of a model realised in a window of depth N + margin."""

    def __init__(self, model: TruncatedModel, margin: int):
        if margin < 0:
            raise DomainError("margin must be nonnegative")
        self.model = model
        self.margin = margin
        self.M = model.N + margin
        self.w = window_for(model.d, model.q, self.M)

    def lift(self, flag: PeriodicFlag) -> PeriodicFlag:
        return flag if flag.M == self.M else embed_flag(flag, self.model, self.M)

    def _below(self, G: PeriodicFlag, a: int) -> tuple:
        if a:
            return G.lattices[a - 1]
        last = G.lattices[-1]
        if not self.w.contains_level(last, self.M - 1):
            raise BoundaryError(f"flag reaches the depth-{self.M} floor (margin {self.margin})")
        return self.w.z(last)

    def _above(self, G: PeriodicFlag, a: int) -> tuple:
        if a + 1 < G.n:
            return G.lattices[a + 1]
        return self.w.zinv(G.lattices[0])

    def raise_at(self, G: PeriodicFlag, a: int) -> list[PeriodicFlag]:
        lats = G.lattices
        out = []
        for new in self.w.ops.lines_between(lats[a], self._above(G, a)):
            out.append(PeriodicFlag(lats[:a] + (new,) + lats[a + 1 :], self.M))
        return out

    def lower_at(self, G: PeriodicFlag, a: int) -> list[PeriodicFlag]:
        lats = G.lattices
        out = []
        for new in self.w.ops.hyperplanes_between(self._below(G, a), lats[a]):
            out.append(PeriodicFlag(lats[:a] + (new,) + lats[a + 1 :], self.M))
        return out

    def jumps(self, F: PeriodicFlag, a: int) -> tuple[int, int]:
        j = F.jumps(self.model.d)
        return j[a], j[(a + 1) % F.n]


def _weight(exps, ja, jb, q) -> ScalarExt:
    x, y, c = exps
    e = Fraction(x) * ja + Fraction(y) * jb + Fraction(c)
    if e.denominator != 1:
        raise DomainError("half-integral exponent")
    return ScalarExt.v_power(int(e), q)


@dataclass
class ChevalleyOps:
    e: LinearOp
    f: LinearOp
    k: LinearOp
    kinv: LinearOp


def chevalley_ops(space: FlagSpace, a: int, calib: FlagCalibration = FlagCalibration()) -> ChevalleyOps:
    n, q = space.model.n, space.model.q
    if not 0 <= a < n:
        raise DomainError(f"index {a} outside Z/{n}")

    def e_col(G):
        col = {}
        for F in space.raise_at(G, a):
            col[F] = _weight(calib.e, *space.jumps(F, a), q)
        return col

    def f_col(G):
        col = {}
        for F in space.lower_at(G, a):
            col[F] = _weight(calib.f, *space.jumps(F, a), q)
        return col

    def k_col(sign):
        def col(G):
            ja, jb = space.jumps(G, a)
            return {G: ScalarExt.v_power(sign * (ja - jb), q)}

        return col

    return ChevalleyOps(LinearOp(e_col), LinearOp(f_col), LinearOp(k_col(1)), LinearOp(k_col(-1)))


def flag_representation(space: FlagSpace, calib: FlagCalibration, basis) -> Representation:
    ops = {}
    for a in range(space.model.n):
        c = chevalley_ops(space, a, calib)
        ops[Gen("E", a)] = c.e
        ops[Gen("F", a)] = c.f
        ops[Gen("K", a)] = c.k
        ops[Gen("Kinv", a)] = c.kinv
    ring = ScalarRing(space.model.q)
    return Representation(ring, list(basis), ops)


def default_margin(n: int) -> int:
    """Longest word in the Chevalley relations of affine A_{n-1}."""
    return 4 if n == 2 else 3


@dataclass
class AffineRelationReport:
    report: object
    margin: int
    window: int
    basis_size: int
    calibration: FlagCalibration

    @property
    def all_hold(self) -> bool:
        return self.report.all_hold

    def to_json(self):
        out = self.report.to_json()
        out.update(
            {
                "margin": self.margin,
                "window": self.window,
                "interior_flags": self.basis_size,
                "calibration": self.calibration.to_json(),
            }
        )
        return out


def _relations(n: int, families=None):
    rels = presentation_quantum_km(affine_a_matrix(n)).relations
    if families is not None:
        rels = [r for r in rels if r.family in families]
    return rels


def _interior_basis(space: FlagSpace, depth: int, limit=None):
    basis = [space.lift(f) for f in interior_flags(space.model, depth)]
    return basis if limit is None else basis[:limit]


def calibrate_chevalley(model: TruncatedModel, margin: int = 2, sample: int | None = 40) -> FlagCalibration:
    """First grid point (smallest L1 norm) satisfying the E-F and K relations."""
    if model.n < 2:
        raise DomainError("calibration needs n >= 2")
    space = FlagSpace(model, margin)
    basis = _interior_basis(space, 1, sample)
    if not basis:
        raise CalibrationError("no interior flags to calibrate on", report=None)
    rels = _relations(model.n, {"EF", "KE", "KF"})
    best = None
    for pt in calibration_grid():
        calib = FlagCalibration(pt[:3], pt[3:])
        try:
            rep = flag_representation(space, calib, basis)
            report = check_representation(rels, rep)
        except DomainError:
            continue
        if report.all_hold:
            return calib
        if best is None or len(report.failures()) < len(best.failures()):
            best = report
    raise CalibrationError("no grid calibration satisfies the flag relations", report=best)


def check_affine_relations(
    model: TruncatedModel,
    calib: FlagCalibration | None = None,
    margin: int | None = None,
    depth: int = 1,
) -> AffineRelationReport:
    """Affine A_{n-1} Chevalley relations on functions supported on interior flags."""
    if model.n < 2:
        raise DomainError("affine relations need n >= 2")
    calib = calibrate_chevalley(model) if calib is None else calib
    margin = default_margin(model.n) if margin is None else margin
    while True:
        space = FlagSpace(model, margin)
        basis = _interior_basis(space, depth)
        rep = flag_representation(space, calib, basis)
        try:
            report = check_representation(_relations(model.n), rep)
        except BoundaryError:
            # a word escaped the window; widen it and start over
            margin += 1
            continue
        return AffineRelationReport(report, margin, space.M, len(basis), calib)
