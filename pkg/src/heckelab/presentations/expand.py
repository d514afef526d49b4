"""Coefficient relations of the generating-function identities.

Conventions: K+(z) = sum_{a>=0} psi_a z^-a and K-(z) = sum_{a>=0} phi_a z^a,
E(z) = sum_k E_k z^-k.  A relation "at truncation N" is the coefficient of a
slot whose indices all have magnitude at most N; coefficients themselves are
exact (psi_a is expanded to whatever order the slot needs).
"""

from __future__ import annotations

from functools import lru_cache
from itertools import permutations
from fractions import Fraction
from math import factorial

from ..core.laurent import LaurentPoly, gauss_binomial
from ..errors import DomainError
from .build import Q_MINUS_QINV, GFRelation
from .ncpoly import Gen, NCPoly, Relation, accumulate
from .theta import AT_INFINITY, AT_ZERO, theta_coeff


def _compositions(r: int):
    if r == 0:
        yield ()
        return
    for first in range(1, r + 1):
        for rest in _compositions(r - first):
            yield (first,) + rest


@lru_cache(maxsize=None)
def _exp_coeff(alpha: int, r: int, sign: int) -> NCPoly:
    """r! times the coefficient of z^(-sign r) in exp((q - q^-1) sum_k H(sign k) z^(-sign k))."""
    out: dict = {}
    fr = factorial(r)
    for comp in _compositions(r):
        n = len(comp)
        word = tuple(Gen("H", alpha, sign * k) for k in comp)
        scale = fr // factorial(n)
        for e, x in (Q_MINUS_QINV**n).items():
            out[(word, 0, 0, e)] = x * scale
    return NCPoly._raw(out)


# Scaled coefficients Psi_r = r! psi_r keep all arithmetic integral; every
# relation below is multiplied through by the matching factorials.


@lru_cache(maxsize=None)
def _Psi(alpha: int, r: int) -> NCPoly:
    if r < 0:
        return NCPoly()
    return NCPoly.gen(Gen("K", alpha)) * _exp_coeff(alpha, r, 1)


@lru_cache(maxsize=None)
def _Phi(alpha: int, r: int) -> NCPoly:
    if r < 0:
        return NCPoly()
    return NCPoly.gen(Gen("Kinv", alpha)) * _exp_coeff(alpha, r, -1)


def psi(alpha: int, r: int) -> NCPoly:
    """Coefficient of z^-r in K+_alpha(z); zero for r < 0."""
    return _Psi(alpha, r) * Fraction(1, factorial(max(r, 0)))


def phi(alpha: int, r: int) -> NCPoly:
    """Coefficient of z^r in K-_alpha(z); zero for r < 0."""
    return _Phi(alpha, r) * Fraction(1, factorial(max(r, 0)))


def _falling(a: int, j: int) -> int:
    """a! / (a - j)!"""
    return factorial(a) // factorial(a - j)


@lru_cache(maxsize=4096)
def _psi_phi(alpha: int, a: int, beta: int, b: int, psi_first: bool) -> NCPoly:
    if psi_first:
        return _Psi(alpha, a) * _Phi(beta, b)
    return _Phi(beta, b) * _Psi(alpha, a)


def _E(kind: str, alpha: int, k: int) -> NCPoly:
    return NCPoly.gen(Gen(kind, alpha, k))


def _theta(m: int, direction: str, j: int) -> NCPoly:
    return NCPoly.from_laurent(theta_coeff(m, direction, j))


def _rng(n: int):
    return range(-n, n + 1)


def _kk(rel: GFRelation, n: int):
    f = _Psi if rel.shape == "KK+" else _Phi
    a_, b_ = rel.alpha, rel.beta
    for a in range(n + 1):
        for b in range(n + 1):
            if a_ == b_ and a >= b:
                continue
            yield Relation(rel.shape, f(a_, a) * f(b_, b), f(b_, b) * f(a_, a), (a_, b_, a, b))


def _kpkm(rel: GFRelation, n: int):
    # theta_m(C^-2 D^y z/w) K+_a(z) K-_b(w) = theta_m(C^2 D^y z/w) K-_b(w) K+_a(z), expanded in w/z
    al, be, m, y = rel.alpha, rel.beta, rel.m, rel.dpow
    for a in range(n + 1):
        for b in range(n + 1):
            lhs: dict = {}
            rhs: dict = {}
            for j in range(min(a, b) + 1):
                f = _falling(a, j) * _falling(b, j)
                for e, x in theta_coeff(m, AT_INFINITY, j).items():
                    accumulate(lhs, _psi_phi(al, a - j, be, b - j, True), x * f, q=e, c=2 * j, d=-y * j)
                    accumulate(rhs, _psi_phi(al, a - j, be, b - j, False), x * f, q=e, c=-2 * j, d=-y * j)
            yield Relation(rel.shape, NCPoly._raw(lhs), NCPoly._raw(rhs), (al, be, a, b))


def _ke(rel: GFRelation, n: int):
    shape = rel.shape
    plus = shape[1] == "+"
    kind = shape[2]
    al, be, y = rel.alpha, rel.beta, rel.dpow
    m = rel.m if kind == "E" else -rel.m
    # central twist exponent of C inside theta
    cx = (1 if plus else -1) * (1 if kind == "E" else -1)
    k = _Psi if plus else _Phi
    for a in range(n + 1):
        for b in _rng(n):
            rhs: dict = {}
            for j in range(a + 1):
                if plus:
                    t, idx, tw = theta_coeff(m, AT_INFINITY, j), b + j, -j
                else:
                    t, idx, tw = theta_coeff(m, AT_ZERO, j), b - j, j
                prod = _E(kind, be, idx) * k(al, a - j)
                f = _falling(a, j)
                for e, x in t.items():
                    accumulate(rhs, prod, x * f, q=e, c=cx * tw, d=y * tw)
            yield Relation(shape, k(al, a) * _E(kind, be, b), NCPoly._raw(rhs), (al, be, a, b))


def _ef(rel: GFRelation, n: int):
    al, be = rel.alpha, rel.beta
    for k in _rng(n):
        for l in _rng(n):
            e, f = _E("E", al, k), _E("F", be, l)
            lhs = (e * f - f * e).times_laurent(Q_MINUS_QINV)
            rhs = NCPoly()
            if al == be:
                lhs = lhs * factorial(abs(k + l))
                rhs = _Psi(al, k + l).twist(c=k - l) - _Phi(al, -k - l).twist(c=l - k)
            yield Relation("EF", lhs, rhs, (al, be, k, l))


def _ee(rel: GFRelation, n: int):
    # (lam z - q^m w) X_a(z) X_b(w) = (q^m lam z - w) X_b(w) X_a(z), coefficient of z^(1-a) w^(1-b)
    kind = rel.shape[0]
    al, be, y = rel.alpha, rel.beta, rel.dpow
    m = rel.m if kind == "E" else -rel.m
    for a in _rng(n):
        for b in _rng(n):
            x = lambda g, i: _E(kind, g, i)  # noqa: E731
            lhs = (x(al, a) * x(be, b - 1)).twist(d=y) - (x(al, a - 1) * x(be, b)).twist(q=m)
            rhs = (x(be, b - 1) * x(al, a)).twist(q=m, d=y) - x(be, b) * x(al, a - 1)
            yield Relation(rel.shape, lhs, rhs, (al, be, a, b))


def _multisets(values, size, start=0):
    if size == 0:
        yield ()
        return
    for i in range(start, len(values)):
        for rest in _multisets(values, size - 1, i):
            yield (values[i],) + rest


def _serre(rel: GFRelation, n: int):
    kind = rel.shape[-1]
    al, be = rel.alpha, rel.beta
    s = 1 - rel.m
    coeffs = [gauss_binomial(s, i) * (-1) ** i for i in range(s + 1)]
    for ks in _multisets(list(_rng(n)), s):
        for l in _rng(n):
            total: dict = {}
            mid = (Gen(kind, be, l),)
            for perm in set(permutations(ks)):
                gens = tuple(Gen(kind, al, k) for k in perm)
                for i in range(s + 1):
                    word = gens[:i] + mid + gens[i:]
                    for e, x in coeffs[i].items():
                        total[(word, 0, 0, e)] = x
            yield Relation(rel.shape, NCPoly._raw(total), NCPoly(), (al, be) + ks + (l,))


_DISPATCH = {
    "KK+": _kk,
    "KK-": _kk,
    "K+K-": _kpkm,
    "K+E": _ke,
    "K-E": _ke,
    "K+F": _ke,
    "K-F": _ke,
    "EF": _ef,
    "EE": _ee,
    "FF": _ee,
    "SerreE": _serre,
    "SerreF": _serre,
}


def expand_gf_relation(rel: GFRelation, truncation: int) -> list[Relation]:
    """All nontrivial coefficient relations of `rel` with slot indices bounded by `truncation`."""
    if truncation < 0:
        raise DomainError("truncation must be nonnegative")
    return list(_expand_cached(rel, truncation))


@lru_cache(maxsize=512)
def _expand_cached(rel: GFRelation, truncation: int) -> tuple[Relation, ...]:
    return tuple(r for r in _DISPATCH[rel.shape](rel, truncation) if not r.is_trivial())


def slot_magnitude(rel: Relation) -> int:
    """Largest slot index magnitude (the first two slot entries are node labels)."""
    return max((abs(x) for x in rel.slot[2:]), default=0)
