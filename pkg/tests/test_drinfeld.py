import pytest

from iqflag.drinfeld import (
    CheckReport,
    Evaluator,
    RelationId,
    cells_for,
    check_relation,
    relation_catalog,
    run_suite,
    summarize,
)
from iqflag.flagcomb import Composition
from iqflag.iqops import SeriesConvention
from iqflag.repmodule import ModuleElement, monomial_symmetrization
from iqflag.symalg import RatFun


def one(v):
    v = Composition(v)
    return ModuleElement.single(v, RatFun(1, d=v.d))


def test_catalog_rank_one():
    cat = relation_catalog(1)
    assert {r.tag for r in cat} == {"KK", "ThTh", "KB", "BTh", "BBii"}
    assert RelationId("BBii", 1) in cat


def test_catalog_rank_two():
    cat = relation_catalog(2)
    assert RelationId("Serre1", 2, 1) in cat and RelationId("Serre1", 2, 3) in cat
    assert RelationId("Serre0", 1, 2) in cat
    assert all(r.i != 2 for r in cat if r.tag == "Btaui")
    assert [r for r in cat if r.tag == "BBii"] == [RelationId("BBii", 2)]
    assert cat == sorted(cat, key=lambda r: ("KK ThTh KB BTh Btaui BB0 BBii Serre0 Serre1".split().index(r.tag), r))


def test_original_toggle():
    cat = relation_catalog(2, original_forms=True)
    orig = [r for r in cat if r.form == "original"]
    assert {r.tag for r in orig} == {"BBii", "Serre1"}
    assert all(r.label().endswith("[orig]") for r in orig)


def test_relation_id_validation():
    with pytest.raises(ValueError):
        RelationId("Nope", 1)
    with pytest.raises(ValueError):
        RelationId("BBii", 1, form="other")


def test_cells():
    assert len(cells_for(RelationId("KK", 1, 1), 2)) == 5
    assert len(cells_for(RelationId("BBii", 1), 1)) == 9
    assert len(cells_for(RelationId("Serre1", 2, 1), 1)) == 27
    assert cells_for(RelationId("BB0", 1, 2), 0) == [(0, 0)]


def test_bbii_smallest_instance():
    r = check_relation(RelationId("BBii", 1), (1, 0), one((1, 1)))
    assert r.passed and r.witness is None


def test_bb0_rank_two_example():
    assert check_relation(RelationId("BB0", 1, 2), (0, 0), one((0, 1, 1, 0))).passed
    assert check_relation(RelationId("BB0", 1, 2), (0, 0), one((1, 0, 0, 1))).passed


@pytest.mark.parametrize("j", [1, 3])
def test_serre1_example(j):
    assert check_relation(RelationId("Serre1", 2, j), (0, 0, 0), one((1, 1, 1, 1))).passed


def test_suite_rank_one_window_one():
    reports = run_suite(1, 1, 1, [one((1, 1))])
    assert reports and all(r.passed for r in reports)


def test_window_zero_commuting():
    reports = run_suite(2, 1, 0, tags=["KK", "ThTh"])
    assert reports and all(r.passed for r in reports)


def test_mutated_twist_is_caught():
    bad = SeriesConvention(scale=((1, 2),))
    reports = run_suite(2, 1, 1, tags=["BB0"], conv=bad)
    fails = [r for r in reports if not r.passed]
    assert fails
    assert not fails[0].witness.is_zero()


def test_node_n_bindings():
    f = monomial_symmetrization((1, 1), (1,))
    check, hat = Evaluator(f, node_n="check"), Evaluator(f, node_n="hat")
    v = Composition((1, 1))
    for k in range(6):
        assert check.series("T", 1, v, k) == hat.series("T", 1, v, k)
    with pytest.raises(ValueError):
        Evaluator(f, node_n="other")


def test_check_of_hat_reading_fails():
    reports = run_suite(1, 1, 2, tags=["BBii"], node_n="check-of-hat")
    assert any(not r.passed for r in reports)


def test_original_forms_fail_with_rational_witness():
    reports = run_suite(1, 1, 1, [one((1, 1))], relations=[RelationId("BBii", 1, form="original")])
    fails = [r for r in reports if not r.passed]
    assert fails
    (_, g), = fails[0].witness.items()
    assert g.den_factors()


def test_report_json_round_trip():
    r = check_relation(RelationId("BB0", 1, 2), (1, 0), one((0, 1, 1, 0)), conv=SeriesConvention(scale=((1, 2),)))
    back = CheckReport.from_json(r.to_json(), 2, 1)
    assert back.to_json() == r.to_json()


def test_deterministic_order_and_parallel():
    a = run_suite(2, 1, 1, tags=["BTh", "BB0"], jobs=1)
    b = run_suite(2, 1, 1, tags=["BTh", "BB0"], jobs=2)
    assert [x.to_json() for x in a] == [y.to_json() for y in b]
    s = summarize(a)
    assert all(v["fail"] == 0 for v in s.values())
