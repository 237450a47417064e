from fractions import Fraction

import pytest

import fpp


def test_datum():
    d = fpp.datum("G2")
    assert d["rank"] == 2
    assert d["cartan"] == [[2, -1], [-3, 2]]
    assert d["positive_roots"] == 6
    assert d["weyl_order"] == 12
    assert fpp.datum("F4")["weyl_order"] == 1152


def test_weight_arithmetic():
    assert fpp.pairing("F4", "1,1,-1,0", 3) == "-1"
    assert fpp.to_root_coords("G2", [0, 1]) == ["3", "2"]
    assert fpp.height("G2", "0,1") == "5"
    assert fpp.is_dominant("F4", "0,0,0,2")
    assert not fpp.is_dominant("F4", [1, 1, -1, 0])
    assert fpp.usual_coords("B5", "0,0,0,0,1") == ["1/2"] * 5
    assert fpp.from_usual("C3", [1, 1, 0]) == ["0", "1", "0"]
    # Fractions round-trip through their exact text.
    assert fpp.pairing("G2", [Fraction(1, 2), Fraction(-3, 4)], 2) == "-3/4"


def test_dominantize():
    dominant, word = fpp.dominantize("G2", "-1,1")
    assert dominant == ["1", "0"]
    assert word == [1]
    dominant, word = fpp.dominantize("F4", "3/4,3/4,-1,1")
    assert dominant == ["1/2", "1/4", "1/2", "0"]
    assert word == [2, 3]
    dominant, word = fpp.dominantize("G2", "2,0")
    assert word == []


def test_words():
    assert fpp.reduce_word("A2", [1, 2, 1, 2]) == [2, 1]
    assert fpp.weyl_length("G2", [2, 1, 2, 1, 2]) == 5
    assert len(fpp.longest_element("G2", [1, 2])) == 6
    assert fpp.module_support("G2", "-5/2,2", [2]) == [1, 2]


def test_hermitian():
    assert fpp.is_hermitian_pair("G2", "-5/2,2", "-7/2,2")
    assert not fpp.is_hermitian_pair("A1", "3", "1")
    assert fpp.modules_equivalent("A1", "1", "0", "-1", "0")
    assert not fpp.modules_equivalent("A1", "1", "0", "1", "1")


def test_levi():
    mf = fpp.levi("F4", "0,0,1,0")
    assert mf["nodes"] == [1, 2, 4]
    assert [c["family"] + str(c["rank"]) for c in mf["components"]] == ["A2", "A1"]
    mcx = fpp.mcx("B8", "2,0,0,3,0,1,0,1")
    assert mcx["nodes"] == [2, 3, 5, 7, 8]
    assert fpp.is_bottom_layer("F4", "0,0,1,0", "0,0,0,2")
    assert not fpp.is_bottom_layer("F4", "0,0,1,0", "1,1,-1,0")
    assert fpp.indefinite_gammas("G2", "1,0") == [["2", "0"]]


def test_input_errors():
    with pytest.raises(ValueError):
        fpp.datum("Z9")
    with pytest.raises(ValueError):
        fpp.dominantize("G2", "1,x")


def test_verify_case():
    reports = fpp.verify_case("g2-eta10")
    assert [r["status"] for r in reports] == ["verified", "verified"]
    assert reports[1]["count"] == 10
    reduction = fpp.verify_case("g2-reduction-a0")
    assert reduction[0]["status"] == "verified"


def test_verify_classical_and_sweep():
    rep = fpp.verify_classical("C3", samples=500, seed=42)
    assert rep["status"] == "verified"
    assert rep["samples"]["tested"] > 100
    sweep = fpp.verify_sweep("G2", cap=3)
    assert sweep["status"] == "verified"
    assert sweep["count"] == 16
