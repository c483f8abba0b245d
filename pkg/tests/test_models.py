import pytest

from lefschetz_lab.cohomology import CohomologyEngine
from lefschetz_lab.foliated import validate_model
from lefschetz_lab.models import CATALOG_NAMES, get_model

from helpers import by_labels


def test_names():
    assert set(CATALOG_NAMES) == {"heisenberg_contact", "abelian_cosymplectic", "sol_hyperbolic", "kt_product"}


def test_unknown_name():
    with pytest.raises(KeyError):
        get_model("nope")


def test_foliation_first(catalog_entry):
    m = catalog_entry.model
    assert all(not m.omega.coefficient((i, j)) for i in range(m.p) for j in range(m.frame.m))


def test_pipeline_reproduces_expected(catalog_entry):
    exp, m = catalog_entry.expected, catalog_entry.model
    assert validate_model(m).ok
    eng = CohomologyEngine(m)
    assert eng.mc.kappa == by_labels(m, exp["kappa"])
    assert eng.mc.phi0 == by_labels(m, exp["phi0"]) if exp["phi0"] else not eng.mc.phi0
    assert eng.complex.dims == exp["basic_dims"]
    assert eng.tautness_check() == exp["taut"]
    assert eng.dims("dB") == exp["H_B"]
    assert eng.dims("dKappa") == exp["H_kappa"]
    rep = eng.hard_lefschetz_check()
    assert (rep.condition1, rep.condition2) == exp["hard_lefschetz"]
    if "lefschetz_rank_r1" in exp:
        assert eng.lefschetz_on_cohomology(1).rank == exp["lefschetz_rank_r1"]


def test_sol_expected_values():
    exp = get_model("sol_hyperbolic").expected
    assert exp["taut"] is False and exp["H_B"] == [1, 1, 0] and exp["H_kappa"] == [0, 0, 0]


def test_kt_expected_values():
    exp = get_model("kt_product").expected
    assert exp["taut"] is True and exp["hard_lefschetz"] == (False, False)
