"""Directional expansions of theta_m(z) = (q^m z - 1)/(z - q^m)."""

from __future__ import annotations

from dataclasses import dataclass

from ..core.laurent import LaurentPoly
from ..errors import DomainError

AT_INFINITY = "inf"
AT_ZERO = "zero"


@dataclass(frozen=True)
class ThetaSeries:
    """coeffs[j] multiplies z^-j (direction inf) or z^j (direction zero)."""

    m: int
    direction: str
    coeffs: tuple[LaurentPoly, ...]

    @property
    def order(self) -> int:
        return len(self.coeffs)

    def __mul__(self, other: "ThetaSeries") -> list[LaurentPoly]:
        if self.direction != other.direction:
            raise DomainError("cannot multiply expansions in different directions")
        n = min(self.order, other.order)
        out = []
        for k in range(n):
            acc = LaurentPoly()
            for j in range(k + 1):
                acc = acc + self.coeffs[j] * other.coeffs[k - j]
            out.append(acc)
        return out

    def to_json(self):
        return {"m": self.m, "direction": self.direction, "coeffs": [c.to_json() for c in self.coeffs]}


def _q(e: int) -> LaurentPoly:
    return LaurentPoly.monomial(e)


def theta_coeff(m: int, direction: str, j: int) -> LaurentPoly:
    sign = 1 if direction == AT_INFINITY else -1
    if direction not in (AT_INFINITY, AT_ZERO):
        raise DomainError(f"unknown direction {direction!r}")
    if j < 0:
        return LaurentPoly()
    if j == 0:
        return _q(sign * m)
    return _q(sign * m * (j + 1)) - _q(sign * m * (j - 1))


def theta_expand(m: int, direction: str, order: int) -> ThetaSeries:
    if order < 0:
        raise DomainError("order must be nonnegative")
    return ThetaSeries(m, direction, tuple(theta_coeff(m, direction, j) for j in range(order)))


def matches_rational(series: ThetaSeries) -> bool:
    """Cross-multiply by (z - q^m) and compare with q^m z - 1 on all determined coefficients."""
    m, c = series.m, series.coeffs
    qm = _q(m)
    if series.direction == AT_INFINITY:
        # (z - q^m) sum c_j z^-j: coefficient of z^(1-k) is c_k - q^m c_(k-1)
        want = {0: qm, 1: LaurentPoly.const(-1)}
        for k in range(len(c)):
            got = c[k] - (qm * c[k - 1] if k else LaurentPoly())
            if got != want.get(k, LaurentPoly()):
                return False
        return True
    # (z - q^m) sum c_j z^j: coefficient of z^k is c_(k-1) - q^m c_k
    want = {0: LaurentPoly.const(-1), 1: qm}
    for k in range(len(c)):
        got = (c[k - 1] if k else LaurentPoly()) - qm * c[k]
        if got != want.get(k, LaurentPoly()):
            return False
    return True
