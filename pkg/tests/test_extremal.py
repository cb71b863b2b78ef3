import pytest

from logcoef import closed_forms as cf
from logcoef.extremal import EXTREMALS, all_extremals, gamma1_extremal, gamma2_extremal, gamma3_extremal, target_triple


@pytest.fixture(scope="module")
def results():
    return {(r.spec.class_id, r.spec.target): r for r in all_extremals()}


@pytest.mark.parametrize("cid", ["F1", "F2", "F3"])
def test_gamma3_witness(results, cid):
    r = results[(cid, "gamma3")]
    assert r.achieved == pytest.approx(float(cf.GAMMA3_BOUND[cid]), abs=1e-10)
    assert r.membership > 0


@pytest.mark.parametrize("cid,value", [("F1", 4 / 9), ("F2", 1 / 2), ("F3", 2 / 5)])
def test_gamma2_witness(results, cid, value):
    r = results[(cid, "gamma2")]
    assert r.achieved == pytest.approx(value, abs=1e-12)
    assert r.membership > 0


@pytest.mark.parametrize("cid,value", [("F1", 3 / 4), ("F2", 1 / 2), ("F3", 3 / 4)])
def test_gamma1_witness(results, cid, value):
    r = results[(cid, "gamma1")]
    assert r.achieved == pytest.approx(value, abs=1e-12)
    assert r.membership > 0


def test_f2_gamma1_flagged():
    r = gamma1_extremal("F2")
    assert r.achieved / float(cf.GAMMA1_BOUND_PRINTED["F2"]) == pytest.approx(2.0)
    assert r.discrepancies


def test_f3_published_witnesses_fall_short():
    r3 = gamma3_extremal("F3")
    assert r3.published is not None
    assert r3.published.achieved == pytest.approx(0.0777868, abs=1e-7)
    r2 = gamma2_extremal("F3")
    assert r2.published.achieved == pytest.approx(0.26, abs=1e-12)


def test_unflagged_witnesses_have_no_discrepancies(results):
    for key in [("F1", "gamma3"), ("F2", "gamma3"), ("F1", "gamma2"), ("F1", "gamma1")]:
        assert results[key].discrepancies == []


def test_target_triple_sign():
    assert target_triple("F1")[1] == 1
    assert target_triple("F3")[1] == -1


def test_registry_and_serialisation(results):
    assert set(EXTREMALS) == {"gamma1", "gamma2", "gamma3"}
    d = results[("F3", "gamma3")].to_dict()
    assert "published_witness" in d and d["ratio"] == pytest.approx(1.0, abs=1e-10)
