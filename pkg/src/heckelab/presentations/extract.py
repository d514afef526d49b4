"""Subalgebras U1, U2 of the toroidal presentation and comparisons between relation sets."""

from __future__ import annotations

from dataclasses import dataclass

from ..errors import DomainError
from .build import EXTENDED, TOROIDAL, Presentation, presentation_quantum_km
from .ncpoly import Gen, NCPoly, Relation

U1 = "U1"
U2 = "U2"


def in_u1(g: Gen) -> bool:
    return g.kind != "H" and g.index == 0


def in_u2(g: Gen) -> bool:
    return g.alpha != 0


@dataclass
class Subalgebra:
    which: str
    parent: Presentation
    relations: list[Relation]
    truncation: int

    def contains_generator(self, g: Gen) -> bool:
        return self.parent.declares(g) and (in_u1(g) if self.which == U1 else in_u2(g))


def subalgebra_extract(p: Presentation, which: str, truncation: int = 0) -> Subalgebra:
    """Relations of `p` at the given truncation that only involve generators of the subalgebra."""
    if p.kind not in (TOROIDAL, EXTENDED):
        raise DomainError("subalgebra extraction needs a toroidal presentation")
    if which not in (U1, U2):
        raise DomainError(f"unknown subalgebra {which!r}")
    test = in_u1 if which == U1 else in_u2
    rels = [r for r in p.expand(truncation) if all(test(g) for g in r.generators())]
    return Subalgebra(which, p, rels, truncation)


def generator_intersection(sub1: Subalgebra, sub2: Subalgebra, universe) -> set[Gen]:
    return {g for g in universe if sub1.contains_generator(g) and sub2.contains_generator(g)}


def conjugation_key(rel: Relation) -> frozenset:
    """Key of a relation after cancelling K Kinv pairs and clearing a trailing Kinv.

    Turns K X Kinv = c X into K X = c X K so that conjugation and
    commutation forms of the same identity compare equal.
    """
    diff = (rel.lhs - rel.rhs).reduce_inverses()
    if diff.is_zero():
        return frozenset()
    tails = sorted(w[-1] for (w, _, _, _) in diff.terms if w and w[-1].kind == "Kinv")
    if tails:
        diff = (diff * NCPoly.gen(Gen("K", tails[0].alpha))).reduce_inverses()
    return Relation(rel.family, diff, NCPoly()).key()


def conjugation_keys(relations) -> set[frozenset]:
    return {k for k in (conjugation_key(r) for r in relations) if k}


def u1_contains_km(p: Presentation) -> tuple[bool, list[Relation]]:
    """Whether every relation of the quantum KM algebra on p.cartan appears among U1's induced relations."""
    have = conjugation_keys(subalgebra_extract(p, U1).relations)
    missing = [r for r in presentation_quantum_km(p.cartan).relations if conjugation_key(r) and conjugation_key(r) not in have]
    return not missing, missing


def specialize_d(relations) -> list[Relation]:
    """Apply D -> 1 to each relation, dropping those that become trivial."""
    out = []
    for r in relations:
        s = Relation(r.family, r.lhs.set_d(), r.rhs.set_d(), r.slot)
        if not s.is_trivial():
            out.append(s)
    return out


# sl2 toroidal: closed generators 0, 1, 2 against Drinfeld-type ones; E_2 is the
# loop-shifted E_{0,-1} and F_2 is F_{0,1}
SL2_IDENTIFICATION = {
    Gen("E", 0, 0): Gen("E", 0),
    Gen("E", 1, 0): Gen("E", 1),
    Gen("E", 0, -1): Gen("E", 2),
    Gen("F", 0, 0): Gen("F", 0),
    Gen("F", 1, 0): Gen("F", 1),
    Gen("F", 0, 1): Gen("F", 2),
    Gen("K", 0): Gen("K", 0),
    Gen("K", 1): Gen("K", 1),
    Gen("Kinv", 0): Gen("Kinv", 0),
    Gen("Kinv", 1): Gen("Kinv", 1),
}


def sl2_closed_image(rel: Relation) -> Relation | None:
    """Rewrite a coefficient relation in closed-form generators, if all its generators have an image."""
    if any(g not in SL2_IDENTIFICATION for g in rel.generators()):
        return None
    if any(k[1] or k[2] for side in (rel.lhs, rel.rhs) for k in side.terms):
        return None
    table = {g: NCPoly.gen(h) for g, h in SL2_IDENTIFICATION.items()}
    return Relation(rel.family, rel.lhs.substitute(table), rel.rhs.substitute(table), rel.slot)
