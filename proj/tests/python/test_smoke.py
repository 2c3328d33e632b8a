"""Smoke tests for the _auctionlab extension module.

The build drops the extension next to the other CMake artifacts; the test
runner passes that directory via AUCTIONLAB_EXT_DIR.  An installed wheel works
too (the module is then importable as auctionlab._auctionlab).
"""

import json
import os
import sys

import pytest

ext_dir = os.environ.get("AUCTIONLAB_EXT_DIR")
if ext_dir:
    sys.path.insert(0, ext_dir)

al = pytest.importorskip("_auctionlab")


def test_version():
    assert al.__version__ == "0.1.0"


def test_named_instances_parse():
    names = al.market_names()
    assert "er" in names and "rational-pair" in names
    for name in names:
        inst = json.loads(al.named_instance(name))
        assert inst["buyers"], name


def test_equal_revenue_reserve_revenue():
    rep = al.eval_mechanism(al.named_instance("er"), "bour")
    assert rep["mechanism"] == "bour"
    assert abs(rep["revenue"] - 1.0) < 1e-6
    assert rep["method"] in ("closed-form", "quadrature")


def test_mc_evaluation_is_seeded():
    inst = al.named_instance("spa-dup-asym")
    a = al.eval_mechanism(inst, "bom", mc=100000, seed=5)
    b = al.eval_mechanism(inst, "bom", mc=100000, seed=5)
    assert a == b
    assert a["method"] == "monte-carlo"
    assert a["mc_samples"] == 100000


def test_family_classification():
    prof = al.classify(al.named_instance("f1"))
    assert prof == {
        "regular": False,
        "mhr": False,
        "quasi-regular": True,
        "quasi-mhr": False,
    }
    rep = al.check_family(al.named_instance("f1"), "quasi-regular")
    assert rep["passes"] is True


def test_order_stat_closure():
    rep = al.order_stat_check(al.named_instance("rational-pair"), 2, "quasi-regular")
    assert rep["passes"] is True


def test_prophet_ratio():
    rep = al.prophet(al.named_instance("exp"), 100)
    assert 1.9 < rep["ratio"] <= 2.0


def test_learning_track():
    rows = al.learn(al.named_instance("rational-pair"), [100], trials=3, seed=7)
    assert rows[0]["m"] == 100
    assert 0.9 < rows[0]["eur_ratio"] <= 1.0


def test_downward_closed_modes():
    inst = al.named_instance("rational-pair")
    rep = al.eval_downward_closed(inst, "lazy", mc=20000, seed=11)
    assert rep["revenue"] > 0.0
    assert "welfare" in rep["diagnostics"]


def test_constant():
    assert abs(al.bosp_boup_constant() - 0.3817) < 1e-4


def test_reproduce():
    rep = al.reproduce("hierarchy", 42)
    assert rep["all_pass"] is True
    assert rep["text"].startswith("reproduce: hierarchy")


def test_validation_errors_map_to_value_error():
    with pytest.raises(ValueError):
        al.eval_mechanism(al.named_instance("er"), "vickrey")
    with pytest.raises(ValueError):
        al.eval_mechanism("{not json", "bom")
