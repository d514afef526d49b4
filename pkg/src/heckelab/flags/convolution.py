"""Convolution of integer functions on pairs of window flags."""

from __future__ import annotations

import random

from .lattice import PeriodicFlag, TruncatedModel, all_flags
from .orbits import orbit_invariant, random_automorphism

# A flag-pair function is a dict {(F, F'): int} with zero values omitted.


def delta_diagonal(flags) -> dict:
    return {(f, f): 1 for f in flags}


def invariant_table(model: TruncatedModel, flags=None) -> dict:
    flags = all_flags(model) if flags is None else flags
    return {(a, b): orbit_invariant(a, b, model) for a in flags for b in flags}


def orbit_indicator(table: dict, invariant) -> dict:
    return {pair: 1 for pair, inv in table.items() if inv == invariant}


def convolve(f: dict, g: dict) -> dict:
    """(f*g)(F, F'') = sum over middle flags F' of f(F, F') g(F', F'')."""
    rows: dict = {}
    for (a, b), x in g.items():
        rows.setdefault(a, []).append((b, x))
    out: dict = {}
    for (a, mid), x in f.items():
        for c, y in rows.get(mid, ()):
            key = (a, c)
            v = out.get(key, 0) + x * y
            if v:
                out[key] = v
            else:
                out.pop(key, None)
    return out


def is_automorphism_invariant(h: dict, model: TruncatedModel, samples: int = 20, seed: int = 0) -> bool:
    """h(gF, gF') = h(F, F') for sampled window automorphisms g."""
    rng = random.Random(seed)
    flags = sorted({p for pair in h for p in pair})
    if not flags:
        return True
    for _ in range(samples):
        g = random_automorphism(model, rng)
        for (a, b), x in h.items():
            if h.get((g.apply_flag(a), g.apply_flag(b)), 0) != x:
                return False
    return True


def is_invariant_constant(h: dict, table: dict) -> bool:
    """h is constant on each level set of the orbit invariant."""
    seen: dict = {}
    for pair, inv in table.items():
        v = h.get(pair, 0)
        if seen.setdefault(inv, v) != v:
            return False
    return True


def function_to_json(h: dict, index: dict) -> list:
    return sorted([index[a], index[b], x] for (a, b), x in h.items())


def composable_indicators(table: dict, flags, rng: random.Random, count: int = 3) -> list[dict]:
    """Indicators of the orbits of (F0, F1), (F1, F2), ... for a random flag walk,
    so consecutive products are nonzero."""
    walk = [rng.choice(flags) for _ in range(count + 1)]
    return [orbit_indicator(table, table[(walk[i], walk[i + 1])]) for i in range(count)]
