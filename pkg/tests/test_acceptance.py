"""One test per acceptance criterion; all comparisons are exact."""

import random
import time

from heckelab.bundles import DegreeWindow, degree_law_holds, hecke_apply, hecke_matrix, satake_check
from heckelab.core.laurent import LaurentPoly
from heckelab.curves import catalog_matrix, classify_affine, classify_config, kodaira_config, multiplicities, null_vector
from heckelab.errors import DomainError
from heckelab.flags import (
    TruncatedModel,
    all_flags,
    check_affine_relations,
    composable_indicators,
    convolve,
    delta_diagonal,
    invariant_table,
    orbit_completeness,
    orbit_invariant,
    random_automorphism,
    validate_periodic_matrix,
)
from heckelab.presentations import (
    AT_INFINITY,
    AT_ZERO,
    Gen,
    SparseOp,
    affine_a_matrix,
    check_representation,
    expand_gf_relation,
    presentation_extended_toroidal,
    presentation_quantum_km,
    presentation_sl2_toroidal_closed,
    presentation_toroidal,
    relation_keys,
    sl2_closed_image,
    specialize_d,
    theta_expand,
    weight_representation,
)
from heckelab.presentations.theta import matches_rational
from heckelab.surface import build_efk, calibrate_sl2, check_quantum_relations, grassmann_sl2_model, product_model


def test_01_satake_commutativity():
    start = time.perf_counter()
    for d in (2, 3):
        for p in (2, 3):
            window = DegreeWindow(d, -6, 0, p)
            assert window.width >= 6
            res = satake_check(d, p, window)
            assert res["commutators_zero"]
            pairs = {(x["k"], x["l"]) for x in res["pairs"]}
            assert pairs == {(k, l) for k in range(1, d + 1) for l in range(k + 1, d + 1)}
            assert all(x["columns_checked"] > 0 and x["mismatched_columns"] == 0 for x in res["pairs"])
    assert time.perf_counter() - start < 60


def test_02_degree_law():
    for d in (1, 2, 3):
        for p in (2, 3):
            window = DegreeWindow(d, -8, 0, p, bound=6)
            for k in range(1, d + 1):
                m = hecke_matrix(k, window)
                assert degree_law_holds(m)
                for t in window.types():
                    if t in m.complete:
                        out = hecke_apply(k, {t: 1}, window)
                        assert out and all(s.total_degree == t.total_degree - k for s in out)


def test_03_grassmann_sl2_realization():
    start = time.perf_counter()
    calibs = set()
    for d in (2, 3, 4):
        for p in (2, 3):
            model = grassmann_sl2_model(d, p)
            calib = calibrate_sl2(model)
            calibs.add(calib)
            report = check_quantum_relations(model, {0: build_efk(model, 0, calib)}, [[2]])
            assert report.all_hold and len(report.results) == 5
    assert len(calibs) == 1
    assert time.perf_counter() - start < 60


def _commutator_zero(x, y, states):
    for s in states:
        a = x.apply(y.apply({s: 1}))
        b = y.apply(x.apply({s: 1}))
        keys = set(a) | set(b)
        if any(a.get(t, 0) != b.get(t, 0) for t in keys):
            return False
    return True


def test_04_two_commuting_copies():
    m = product_model(grassmann_sl2_model(2, 2), grassmann_sl2_model(2, 2))
    ops = {i: build_efk(m, i) for i in (0, 1)}
    assert check_quantum_relations(m, ops, [[2, 0], [0, 2]]).all_hold
    for x in ops[0]:
        for y in ops[1]:
            assert _commutator_zero(x, y, m.states)


def test_05_presentation_checker_soundness():
    start = time.perf_counter()
    rels = presentation_quantum_km([[2]]).relations
    for m in range(4):
        rep = weight_representation(m)
        assert check_representation(rels, rep).all_hold
        one = LaurentPoly.const(1)
        for g, op in list(rep.ops.items()):
            for i in range(m + 1):
                for j in range(m + 1):
                    cols = {s: dict(c) for s, c in op.columns.items()}
                    col = cols.setdefault(j, {})
                    col[i] = col.get(i, LaurentPoly()) + one
                    bad = dict(rep.ops)
                    bad[g] = SparseOp(cols)
                    perturbed = type(rep)(rep.ring, rep.states, bad)
                    assert not check_representation(rels, perturbed).all_hold, (m, g, i, j)
    assert time.perf_counter() - start < 30


def test_06_theta_identities():
    for m in range(-4, 5):
        for order in range(1, 13):
            for direction in (AT_INFINITY, AT_ZERO):
                prod = theta_expand(m, direction, order) * theta_expand(-m, direction, order)
                assert prod == [LaurentPoly.const(1)] + [LaurentPoly()] * (order - 1)
                assert matches_rational(theta_expand(m, direction, order))


def test_07_relation_extraction_and_d_specialization():
    tor2 = presentation_toroidal(affine_a_matrix(2))
    ee = next(g for g in tor2.gf_relations if g.shape == "EE" and g.alpha == g.beta == 0)
    images = {r.key() for r in map(sl2_closed_image, expand_gf_relation(ee, 0)) if r is not None}
    closed = next(r for r in presentation_sl2_toroidal_closed().relations if r.family == "EE")
    assert str(closed) == "E[2,0]*E[0,0] = (q^-2)*E[0,0]*E[2,0]"
    assert closed.key() in images
    for n in (2, 3):
        ext = presentation_extended_toroidal(n)
        tor = presentation_toroidal(affine_a_matrix(n), (1,) * n)
        for N in range(7):
            assert relation_keys(specialize_d(ext.expand(N))) == relation_keys(tor.expand(N)), (n, N)


def test_08_affine_classification():
    expected = [("A", n) for n in range(1, 5)] + [("D", 4), ("E", 6), ("E", 7), ("E", 8)]
    for family, rank in expected:
        a = catalog_matrix(family, rank)
        tag = classify_affine(a)
        assert (tag.family, tag.rank) == (family, rank)
        nv = null_vector(a)
        assert all(x > 0 for x in nv)
        removed = nv.index(1)
        mult = multiplicities(a, removed)
        assert list(mult) == [nv[i] for i in range(a.size) if i != removed]
    for symbol in ("A", "C1", "C2", "C3", "I1"):
        try:
            classify_config(kodaira_config(symbol))
        except DomainError:
            continue
        raise AssertionError(f"{symbol} was not rejected")
    assert classify_affine([[2, -1], [-1, 2]]) is None
    assert classify_affine([[2, -3], [-3, 2]]) is None


def test_09_orbit_invariants():
    start = time.perf_counter()
    model = TruncatedModel(2, 2, 2, 1)
    flags = all_flags(model)
    rng = random.Random(2024)
    for _ in range(100):
        g = random_automorphism(model, rng)
        a, b = rng.choice(flags), rng.choice(flags)
        assert orbit_invariant(g.apply_flag(a), g.apply_flag(b), model) == orbit_invariant(a, b, model)
    for a in flags:
        for b in flags:
            inv = orbit_invariant(a, b, model)
            assert validate_periodic_matrix(inv, 2, 2)
            assert [inv.row_sum(i) for i in range(2)] == list(a.jumps(2))
            assert [inv.col_sum(j) for j in range(2)] == list(b.jumps(2))
    assert orbit_completeness(TruncatedModel(1, 2, 2, 1))["complete"]
    assert time.perf_counter() - start < 120


def test_10_convolution_algebra():
    model = TruncatedModel(2, 2, 2, 1)
    flags = all_flags(model)
    table = invariant_table(model, flags)
    unit = delta_diagonal(flags)
    rng = random.Random(11)
    for _ in range(5):
        f, g, h = composable_indicators(table, flags, rng, 3)
        assert convolve(unit, f) == f and convolve(f, unit) == f
        assert convolve(convolve(f, g), h) == convolve(f, convolve(g, h))


def test_11_affine_relations_from_flags():
    start = time.perf_counter()
    res = check_affine_relations(TruncatedModel(2, 2, 2, 2))
    assert res.all_hold
    ids = {r.rid for r in res.report.results}
    assert {"SerreE[0, 1]", "SerreE[1, 0]", "SerreF[0, 1]", "SerreF[1, 0]", "EF[0, 0]", "EF[1, 1]"} <= ids
    assert res.basis_size > 0
    assert time.perf_counter() - start < 300
