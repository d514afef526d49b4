from fractions import Fraction

import pytest

from heckelab.core import all_subspaces
from heckelab.core.laurent import gauss_binomial_count
from heckelab.core.scalar import ScalarExt
from heckelab.errors import CalibrationError, DomainError
from heckelab.presentations.check import SparseOp
from heckelab.surface import (
    ZERO_CALIBRATION,
    ExponentCalibration,
    IncidenceModel,
    build_efk,
    calibrate_sl2,
    calibration_grid,
    check_quantum_relations,
    grading_holds,
    grassmann_sl2_model,
    product_model,
    single_state_model,
)


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("p", [2, 3])
def test_grassmann_state_count(d, p):
    model = grassmann_sl2_model(d, p)
    assert len(model.states) == sum(gauss_binomial_count(d, k, p) for k in range(d + 1))


def test_grassmann_edges_count_incidences():
    model = grassmann_sl2_model(3, 2)
    # each 2-plane of F_2^3 has 3 lines, there are 7 planes; plus 7 lines over zero, 1 full space over 7 planes
    assert len(model.down[0]) == 7 + 7 * 3 + 7
    assert len(model.up[0]) == len(model.down[0])


def test_transition_law_enforced():
    model = grassmann_sl2_model(2, 2)
    bad = IncidenceModel(model.states, 2, [0], model.stats, {0: [(model.states[0], model.states[0], 1)]}, {0: []})
    with pytest.raises(DomainError):
        bad.validate()


def test_json_round_trip():
    model = grassmann_sl2_model(2, 3)
    data = model.to_json()
    again = IncidenceModel.from_json(data)
    assert again.to_json() == data


def test_grid_order_starts_at_zero():
    grid = calibration_grid()
    assert grid[0] == (0,) * 6
    norms = [sum(abs(x) for x in pt) for pt in grid]
    assert norms == sorted(norms)
    assert len(grid) == 5**6


@pytest.mark.parametrize("d", [1, 2, 3])
@pytest.mark.parametrize("p", [2, 3])
def test_zero_calibration_satisfies_relations(d, p):
    model = grassmann_sl2_model(d, p)
    e, f, k, kinv = build_efk(model)
    assert grading_holds(model, 0, e, f, k)
    assert check_quantum_relations(model, {0: (e, f, k, kinv)}, [[2]]).all_hold


def test_calibrated_exponents_are_zero():
    assert calibrate_sl2(grassmann_sl2_model(2, 2)) == ZERO_CALIBRATION


def test_wrong_calibration_fails():
    model = grassmann_sl2_model(2, 2)
    calib = ExponentCalibration((0, 0, 1), (0, 0, 0))
    report = check_quantum_relations(model, {0: build_efk(model, 0, calib)}, [[2]])
    assert not report.all_hold
    assert any(r.rid.startswith("EF") for r in report.failures())


def test_half_integer_exponent_rejected():
    model = grassmann_sl2_model(1, 2)
    with pytest.raises(DomainError):
        build_efk(model, 0, ExponentCalibration((0, 0, Fraction(1, 2)), (0, 0, 0)))


def test_perturbing_an_entry_breaks_relations():
    model = grassmann_sl2_model(2, 2)
    e, f, k, kinv = build_efk(model)
    cols = {s: dict(c) for s, c in e.columns.items()}
    src = next(iter(cols))
    tgt = next(iter(cols[src]))
    cols[src][tgt] = cols[src][tgt] + ScalarExt(1, 0, 2)
    assert not check_quantum_relations(model, {0: (SparseOp(cols), f, k, kinv)}, [[2]]).all_hold


def test_single_state_without_edges_cannot_calibrate():
    # [E, F] = 0 while (K - K^-1)/(v - v^-1) = 1 for a = 1, c = 0
    with pytest.raises(CalibrationError) as info:
        calibrate_sl2(single_state_model(1, 0, 0, 2))
    assert info.value.report is not None


def test_single_state_balanced_is_trivial_rep():
    model = single_state_model(1, 0, 1, 3)
    assert check_quantum_relations(model, {0: build_efk(model)}, [[2]]).all_hold


def test_unknown_component():
    with pytest.raises(DomainError):
        build_efk(grassmann_sl2_model(1, 2), 5)


class TestProduct:
    def test_two_commuting_copies(self):
        m = product_model(grassmann_sl2_model(2, 2), grassmann_sl2_model(1, 2))
        ops = {i: build_efk(m, i) for i in (0, 1)}
        report = check_quantum_relations(m, ops, [[2, 0], [0, 2]])
        assert report.all_hold
        # the mixed relations really are commutators, e.g. E_0 E_1 = E_1 E_0
        assert any(r.rid.startswith("SerreE") for r in report.results)

    def test_product_with_wrong_cartan_fails(self):
        m = product_model(grassmann_sl2_model(1, 2), grassmann_sl2_model(1, 2))
        ops = {i: build_efk(m, i) for i in (0, 1)}
        assert not check_quantum_relations(m, ops, [[2, -1], [-1, 2]]).all_hold

    def test_p_mismatch(self):
        with pytest.raises(DomainError):
            product_model(grassmann_sl2_model(1, 2), grassmann_sl2_model(1, 3))

    def test_state_count(self):
        m = product_model(grassmann_sl2_model(2, 2), grassmann_sl2_model(2, 2))
        assert len(m.states) == 25


def test_states_are_subspaces():
    model = grassmann_sl2_model(2, 2)
    assert sorted(model.states) == sorted(all_subspaces(2, 2))
