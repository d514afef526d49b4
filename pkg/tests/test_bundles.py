from itertools import product

import pytest
from hypothesis import given, settings
from hypothesis import strategies as st

from heckelab.bundles import (
    DegreeWindow,
    SplittingType,
    column_sum_expected,
    degree_law_holds,
    elementary_transform,
    evaluation_kernel_dim,
    generic_position,
    h0_twist,
    hecke_apply,
    hecke_matrix,
    hn_filtration,
    satake_check,
)
from heckelab.core import Subspace, all_subspaces, enumerate_subspaces
from heckelab.errors import BoundaryError, DomainError

T = SplittingType.of


class TestH0:
    def test_examples(self):
        assert h0_twist(T(0), 0) == 1
        assert h0_twist(T(1, 0, -1), 0) == 3
        assert h0_twist(T(-2), 1) == 0


class TestElementaryTransform:
    def test_line_bundle_zero_subspace(self):
        for a in range(-3, 4):
            assert elementary_transform(T(a), Subspace.zero(1, 3)) == T(a - 1)

    def test_trivial_rank_two_all_lines(self):
        # direct kernel computation: m=0 gives 1, m=1 gives 3, which is O + O(-1)
        for w in enumerate_subspaces(2, 1, 2):
            assert [evaluation_kernel_dim(T(0, 0), w, m) for m in (-1, 0, 1)] == [0, 1, 3]
            assert elementary_transform(T(0, 0), w) == T(0, -1)

    def test_full_fiber_is_identity(self):
        for t in [T(3, 1, -2), T(0, 0, 0), T(5)]:
            assert elementary_transform(t, Subspace.full(t.rank, 3)) == t

    def test_dimension_mismatch(self):
        with pytest.raises(DomainError):
            elementary_transform(T(1, 0), Subspace.zero(3, 2))

    @pytest.mark.parametrize("t", [T(1, 0), T(2, -1), T(1, 1, 0), T(2, 0, -1), T(0, 0, 0)])
    @pytest.mark.parametrize("p", [2, 3])
    def test_degree_law_and_h0_consistency(self, t, p):
        for w in all_subspaces(t.rank, p):
            out = elementary_transform(t, w)
            assert out.total_degree == t.total_degree - (t.rank - w.dim)
            for m in range(-6, 6):
                assert h0_twist(out, m) == evaluation_kernel_dim(t, w, m)
            # V(-x) ⊂ A ⊂ V forces interlacing a_i - 1 <= b_i <= a_i
            assert all(a - 1 <= b <= a for a, b in zip(t.degrees, out.degrees))

    def test_generic_line_lowers_top(self):
        # O(1)+O(0): the coordinate line of O(1) keeps O(1), every other line gives O(0)+O(0)
        outs = sorted(str(elementary_transform(T(1, 0), w)) for w in enumerate_subspaces(2, 1, 3))
        assert outs == ["(0,0)", "(0,0)", "(0,0)", "(1,-1)"]


class TestHecke:
    def test_rank_one_shift(self):
        w = DegreeWindow(1, -3, 0, 2)
        assert hecke_apply(1, {T(0): 1}, w) == {T(-1): 1}

    def test_rank_two_example(self):
        w = DegreeWindow(2, -4, 0, 2)
        assert hecke_apply(1, {T(0, 0): 1}, w) == {T(0, -1): 3}

    def test_k_equals_d_twists_down(self):
        w = DegreeWindow(3, -9, 3, 3)
        t = T(1, 0, 0)
        assert hecke_apply(3, {t: 1}, w) == {t.twist(-1): 1}

    def test_boundary(self):
        w = DegreeWindow(2, -1, 0, 2)
        with pytest.raises(BoundaryError):
            hecke_apply(1, {T(0, -1): 1}, w)
        with pytest.raises(DomainError):
            hecke_apply(1, {T(5, 5): 1}, w)

    def test_rank_one_matrix_is_lower_shift(self):
        m = hecke_matrix(1, DegreeWindow(1, -2, 0, 2))
        assert m.labels == [T(0), T(-1), T(-2)]
        assert m.entries == {(T(-1), T(0)): 1, (T(-2), T(-1)): 1}
        assert m.complete == {T(0), T(-1)}

    def test_matrix_entry(self):
        m = hecke_matrix(1, DegreeWindow(2, -4, 0, 2))
        assert m.entries[(T(0, -1), T(0, 0))] == 3

    @pytest.mark.parametrize("d,p", [(1, 2), (2, 2), (2, 3), (3, 2), (3, 3)])
    def test_column_sums_and_degree_law(self, d, p):
        window = DegreeWindow(d, -5, 0, p, bound=4)
        for k in range(1, d + 1):
            m = hecke_matrix(k, window)
            assert degree_law_holds(m)
            assert m.complete
            # brute force: count (d-k)-subspaces by spanning all tuples of vectors
            vectors = list(product(range(p), repeat=d))
            brute = {Subspace.span(c, d, p) for c in product(vectors, repeat=d - k)}
            brute = [s for s in brute if s.dim == d - k]
            for s in m.complete:
                assert sum(m.column(s).values()) == len(brute) == column_sum_expected(d, k, p)

    def test_satake_small(self):
        report = satake_check(2, 2, DegreeWindow(2, -6, 0, 2))
        assert report["commutators_zero"]
        assert all(pair["columns_checked"] > 0 for pair in report["pairs"])

    def test_json_shape(self):
        m = hecke_matrix(1, DegreeWindow(2, -2, 0, 2, bound=2))
        data = m.to_json()
        assert data["labels"][0] == [1, -1] or data["labels"][0] == [0, 0]
        assert all(len(x) == 3 for x in data["entries"])


class TestHN:
    def test_examples(self):
        assert hn_filtration(T(1, 0, 0, -1)).steps == ((-1, 1), (0, 2), (1, 1))
        assert len(hn_filtration(T(0, 0, 0)).steps) == 1
        assert len(hn_filtration(T(5, -5)).steps) == 2

    @settings(max_examples=100)
    @given(st.lists(st.integers(-10, 10), min_size=1, max_size=6))
    def test_roundtrip(self, degs):
        t = SplittingType(tuple(degs))
        f = hn_filtration(t)
        assert f.rank == t.rank
        assert f.to_splitting_type() == t
        slopes = [j for j, _ in f.steps]
        assert slopes == sorted(set(slopes))


def full_flags(d, p):
    out = [[]]
    for k in range(1, d + 1):
        nxt = []
        for flag in out:
            prev = flag[-1] if flag else Subspace.zero(d, p)
            for s in enumerate_subspaces(d, k, p):
                if prev <= s:
                    nxt.append(flag + [s])
        out = nxt
    return out


class TestGenericPosition:
    def test_two_lines(self):
        a = Subspace.span([[1, 0]], 2, 3)
        b = Subspace.span([[1, 1]], 2, 3)
        assert generic_position([a], [b])

    def test_identical_full_flags(self):
        flag = full_flags(3, 2)[0]
        assert not generic_position(flag, flag)

    def test_non_chain(self):
        a = Subspace.span([[1, 0, 0]], 3, 2)
        b = Subspace.span([[0, 1, 0], [0, 0, 1]], 3, 2)
        with pytest.raises(DomainError):
            generic_position([a, b], [a])

    @pytest.mark.parametrize("d,p", [(2, 2), (2, 3), (3, 2)])
    def test_census_matches_big_cell(self, d, p):
        # flags opposite to a fixed one form the big Bruhat cell, of size p^(d(d-1)/2)
        flags = full_flags(d, p)
        n_flags = 1
        for i in range(1, d + 1):
            n_flags *= (p**i - 1) // (p - 1)
        assert len(flags) == n_flags
        generic = sum(generic_position(f, g) for f in flags for g in flags)
        assert generic == n_flags * p ** (d * (d - 1) // 2)
