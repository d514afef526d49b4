import random

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckelab.core import enumerate_subspaces
from heckelab.core.scalar import ScalarExt
from heckelab.errors import DomainError, ResourceError
from heckelab.flags import (
    FlagCalibration,
    FlagSpace,
    PeriodicMatrix,
    TruncatedModel,
    all_flags,
    calibrate_chevalley,
    check_affine_relations,
    chevalley_ops,
    composable_indicators,
    convolve,
    delta_diagonal,
    enumerate_flags,
    enumerate_lattices,
    interior_flags,
    invariant_table,
    is_automorphism_invariant,
    is_flag,
    orbit_completeness,
    orbit_invariant,
    random_automorphism,
    shift_flag,
    validate_periodic_matrix,
)
from heckelab.flags.lattice import window_for

SMALL = TruncatedModel(2, 2, 2, 1)


@pytest.fixture(scope="module")
def small_table():
    return invariant_table(SMALL, all_flags(SMALL))


def z_stable_bruteforce(d, q, N, k):
    """All k-dim subspaces of F_q^(2Nd) stable under e_(s,j) -> e_(s,j+1)."""
    dim = 2 * N * d
    out = []
    for sub in enumerate_subspaces(dim, k, q):
        ok = True
        for row in sub.basis:
            img = [0] * d + list(row[: dim - d])
            if not sub.contains_vector(img):
                ok = False
                break
        if ok:
            out.append(sub)
    return out


class TestLattices:
    def test_dim_zero(self):
        assert enumerate_lattices(SMALL, 0) == [()]

    @pytest.mark.parametrize("q,N", [(2, 1), (2, 3), (3, 2)])
    def test_single_string_one_per_dim(self, q, N):
        m = TruncatedModel(1, 1, q, N)
        assert [len(enumerate_lattices(m, k)) for k in range(2 * N + 1)] == [1] * (2 * N + 1)

    @pytest.mark.parametrize("q", [2, 3])
    def test_bruteforce_dim2(self, q):
        m = TruncatedModel(2, 1, q, 1)
        assert len(enumerate_lattices(m, 2)) == len(z_stable_bruteforce(2, q, 1, 2))

    def test_bruteforce_value(self):
        # 35 planes in F_2^4, of which 7 are stable
        assert sum(1 for _ in enumerate_subspaces(4, 2, 2)) == 35
        assert len(enumerate_lattices(SMALL, 2)) == 7

    def test_all_dims_bruteforce(self):
        m = TruncatedModel(2, 1, 2, 1)
        for k in range(5):
            assert len(enumerate_lattices(m, k)) == len(z_stable_bruteforce(2, 2, 1, k))

    def test_lattices_are_z_stable(self):
        w = SMALL.window
        for k in range(5):
            assert all(w.is_lattice(x) for x in enumerate_lattices(SMALL, k))

    def test_out_of_range(self):
        with pytest.raises(DomainError):
            enumerate_lattices(SMALL, 5)

    def test_guard(self, monkeypatch):
        monkeypatch.setenv("HECKELAB_MAX_ENUM", "10")
        with pytest.raises(ResourceError):
            enumerate_lattices(TruncatedModel(2, 1, 3, 3), 1)

    def test_bad_model(self):
        with pytest.raises(DomainError):
            TruncatedModel(2, 2, 4, 1)
        with pytest.raises(DomainError):
            TruncatedModel(0, 2, 2, 1)


class TestFlags:
    def test_n1_d1(self):
        m = TruncatedModel(1, 1, 2, 2)
        assert [len(enumerate_flags(m, (k,))) for k in range(5)] == [1] * 5

    def test_n2_d1_census(self):
        m = TruncatedModel(1, 2, 2, 1)
        lattices = {k: enumerate_lattices(m, k) for k in range(3)}
        w = m.window
        brute = 0
        for a in range(3):
            for b in range(3):
                for x in lattices[a]:
                    for y in lattices[b]:
                        brute += is_flag(w, (x, y))
        assert brute == len(all_flags(m)) == 5

    def test_decreasing_is_empty(self):
        assert enumerate_flags(SMALL, (3, 1)) == []

    def test_wrap_violation_is_empty(self):
        assert enumerate_flags(SMALL, (0, 3)) == []

    def test_bad_vector(self):
        with pytest.raises(DomainError):
            enumerate_flags(SMALL, (1,))
        with pytest.raises(DomainError):
            enumerate_flags(SMALL, (0, 9))

    def test_all_are_flags(self):
        w = SMALL.window
        assert all(is_flag(w, f.lattices) for f in all_flags(SMALL))

    def test_jumps_sum_to_d(self):
        for f in all_flags(SMALL):
            assert sum(f.jumps(2)) == 2

    def test_interior(self):
        assert len(interior_flags(TruncatedModel(2, 2, 2, 2))) == len(all_flags(SMALL))

    def test_shift(self):
        m = TruncatedModel(1, 1, 2, 2)
        f = enumerate_flags(m, (2,))[0]
        g = shift_flag(f, m, 1)
        assert g.dims() == (1,)
        assert shift_flag(g, m, -1) == f
        top = enumerate_flags(m, (4,))[0]
        assert shift_flag(top, m, -1) is None


class TestInvariant:
    def test_equal_flags_diagonal(self):
        for f in all_flags(SMALL):
            inv = orbit_invariant(f, f, SMALL)
            want = {(i, i): j for i, j in enumerate(f.jumps(2)) if j}
            assert inv.as_dict() == want

    def test_n1_d1_single_entry(self):
        m = TruncatedModel(1, 1, 2, 1)
        for f in all_flags(m):
            assert orbit_invariant(f, f, m).as_dict() == {(0, 0): 1}

    def test_all_pairs_valid_with_sums(self, small_table):
        for (a, b), inv in small_table.items():
            assert validate_periodic_matrix(inv, 2, 2)
            ja, jb = a.jumps(2), b.jumps(2)
            for i in range(2):
                assert inv.row_sum(i) == ja[i]
                assert inv.col_sum(i) == jb[i]

    def test_periodic_extension(self):
        m = PeriodicMatrix.from_dict(2, {(0, 1): 1, (1, -2): 1})
        assert m.entry(2, 3) == 1 and m.entry(3, 0) == 1 and m.entry(-2, -1) == 1
        assert m.diagonals() == [-3, 1]

    @settings(max_examples=30, deadline=None)
    @given(st.integers(0, 10**6))
    def test_automorphism_invariance(self, seed):
        rng = random.Random(seed)
        flags = all_flags(SMALL)
        g = random_automorphism(SMALL, rng)
        a, b = rng.choice(flags), rng.choice(flags)
        assert orbit_invariant(g.apply_flag(a), g.apply_flag(b), SMALL) == orbit_invariant(a, b, SMALL)

    def test_automorphisms_permute_flags(self):
        flags = set(all_flags(SMALL))
        g = random_automorphism(SMALL, random.Random(3))
        assert {g.apply_flag(f) for f in flags} == flags

    def test_completeness_small(self):
        out = orbit_completeness(TruncatedModel(1, 2, 2, 1))
        assert out["complete"] and out["invariants"] == out["orbits"]

    def test_model_mismatch(self):
        f = all_flags(SMALL)[0]
        with pytest.raises(DomainError):
            orbit_invariant(f, f, TruncatedModel(2, 3, 2, 1))


class TestValidate:
    def test_diagonal(self):
        assert validate_periodic_matrix(PeriodicMatrix.from_dict(2, {(0, 0): 1, (1, 1): 1}), 2, 2)

    def test_negative(self):
        assert not validate_periodic_matrix(PeriodicMatrix(2, (((0, 0), 3), ((1, 1), -1))), 2, 2)

    @pytest.mark.parametrize("total", [1, 3])
    def test_wrong_sum(self, total):
        m = PeriodicMatrix.from_dict(2, {(0, 0): total})
        assert not validate_periodic_matrix(m, 2, 2)

    def test_wrong_period(self):
        assert not validate_periodic_matrix(PeriodicMatrix.from_dict(1, {(0, 0): 2}), 2, 2)


class TestConvolution:
    def test_unit(self, small_table):
        flags = all_flags(SMALL)
        unit = delta_diagonal(flags)
        rng = random.Random(0)
        for f in composable_indicators(small_table, flags, rng, 3):
            assert convolve(unit, f) == f == convolve(f, unit)

    @pytest.mark.parametrize("seed", range(4))
    def test_associative(self, small_table, seed):
        flags = all_flags(SMALL)
        f, g, h = composable_indicators(small_table, flags, random.Random(seed), 3)
        fg = convolve(f, g)
        assert fg
        assert convolve(fg, h) == convolve(f, convolve(g, h))

    def test_product_is_automorphism_invariant(self, small_table):
        flags = all_flags(SMALL)
        f, g = composable_indicators(small_table, flags, random.Random(7), 2)
        assert is_automorphism_invariant(convolve(f, g), SMALL, samples=5)


class TestChevalley:
    def test_e_empty_without_room(self):
        m = TruncatedModel(2, 2, 2, 2)
        space = FlagSpace(m, 2)
        ops = chevalley_ops(space, 0)
        # F_0 = F_1: no line between F_0 and F_1
        f = next(x for x in interior_flags(m) if x.dims()[0] == x.dims()[1])
        assert ops.e.column(space.lift(f)) == {}

    def test_k_trivial_on_equal_jumps(self):
        m = TruncatedModel(2, 2, 2, 2)
        space = FlagSpace(m, 2)
        ops = chevalley_ops(space, 1)
        f = next(space.lift(x) for x in interior_flags(m) if x.jumps(2) == (1, 1))
        assert ops.k.column(f) == {f: ScalarExt(1, 0, 2)}

    def test_gradings(self):
        m = TruncatedModel(2, 3, 2, 1)
        space = FlagSpace(m, 2)
        for a in range(3):
            ops = chevalley_ops(space, a)
            for f in all_flags(m)[:30]:
                g = space.lift(f)
                for h in ops.e.column(g):
                    assert [y - x for x, y in zip(g.dims(), h.dims())] == [int(i == a) for i in range(3)]
                for h in ops.f.column(g):
                    assert [y - x for x, y in zip(g.dims(), h.dims())] == [-int(i == a) for i in range(3)]

    def test_index_range(self):
        with pytest.raises(DomainError):
            chevalley_ops(FlagSpace(SMALL, 1), 2)

    def test_calibration_n3(self):
        calib = calibrate_chevalley(TruncatedModel(2, 3, 2, 2))
        assert calib == FlagCalibration((0, -1, 0), (-1, 0, 0))

    def test_relations_n2_d2(self):
        res = check_affine_relations(TruncatedModel(2, 2, 2, 2))
        assert res.all_hold
        assert any(r.rid.startswith("SerreE") for r in res.report.results)
        assert res.margin == 4 and res.basis_size == 44

    def test_relations_n2_d1(self):
        assert check_affine_relations(TruncatedModel(1, 2, 2, 2)).all_hold

    def test_commuting_nodes_n4(self):
        res = check_affine_relations(TruncatedModel(1, 4, 2, 1), calib=FlagCalibration((0, -1, 0), (-1, 0, 0)))
        assert res.all_hold
        assert any(r.rid == "SerreE[0, 2]" for r in res.report.results)

    def test_wrong_calibration_fails(self):
        res = check_affine_relations(TruncatedModel(2, 2, 2, 2), calib=FlagCalibration((0, 0, 0), (0, 0, 0)))
        assert not res.all_hold

    def test_small_margin_is_widened(self):
        res = check_affine_relations(TruncatedModel(2, 2, 2, 2), margin=0)
        assert res.all_hold and res.margin >= 1

    def test_window_helpers(self):
        w = window_for(1, 2, 2)
        lam = w.standard
        assert len(lam) == 2 and len(w.z(lam)) == 1 and len(w.zinv(lam)) == 3
