"""Smoke tests for the python bindings: the example pipeline end to end."""

import pytest

import skylattice as sky


@pytest.fixture(scope="module")
def sides():
    parent = sky.load_relation(sky.pokemon_csv(), sky.pokemon_schema_json())
    side1, side2, dropped = sky.split(parent)
    assert dropped == 0
    return side1, side2


def test_relation_surface(sides):
    side1, _ = sides
    assert side1.row_count == 10
    assert side1.criteria == ["Rarity", "Duration", "Loss"]
    assert side1.dims(1) == ["UU", "A", "D"]
    assert side1.project(7, "RD") == [9.0, 85.0]


def test_skyline_and_skycube(sides):
    side1, side2 = sides
    assert sky.skyline(side1, "RDL") == [1, 3, 6]
    assert sky.skyline(side2, "L") == [1, 3, 6, 9]
    assert sky.skyline(side1, "RD") == sky.skyline_bruteforce(side1, "RD")

    cube = sky.full_skycube(side1)
    assert cube["RL"] == [1, 3, 4, 6]
    assert cube["DL"] == [1]
    assert cube["-"] == []


def test_materialization_roundtrip(sides):
    side1, side2 = sides
    m1 = sky.materialize(side1)
    assert m1.concept_count == 7
    assert m1.closure("DL") == "RDL"
    assert m1.query("DL") == [1]

    m2 = sky.materialize(side2)
    assert m2.concept_count == 5
    assert m2.query("RD") == [1, 6]

    reloaded = sky.materialization_from_text(m1.to_text())
    for label in ["-", "R", "D", "L", "RD", "RL", "DL", "RDL"]:
        assert reloaded.query(label) == m1.query(label)


def test_emerging_pipeline(sides):
    side1, side2 = sides
    assert sky.detect_invariant_measures(side1, side2) == ["Rarity"]

    merged = sky.merge(sky.materialize(side1), sky.materialize(side2), side1, side2)
    assert merged.row_count == 20
    abridged = sky.abridge(merged)
    assert abridged.row_count == 5

    thresholds = {"Duration": (35.0, 35.0), "Loss": (45.0, 45.0)}
    cells = sky.emerging(abridged, thresholds)
    finite = [c for c in cells if c["measures"]["Loss"]["rate"] != float("inf")]
    assert len(finite) == 7
    by_dims = {tuple(d if d else "ALL" for d in c["dims"]): c for c in finite}
    ou = by_dims[("OU", "ALL", "ALL")]
    assert round(ou["measures"]["Duration"]["rate"], 2) == 2.33
    assert round(ou["measures"]["Loss"]["rate"], 2) == 3.0
    assert ou["direction"] == "decline"

    border = sky.emerging(abridged, thresholds, variant="l-border")
    closed = sky.emerging(abridged, thresholds, variant="closed")
    closed_l = sky.emerging(abridged, thresholds, variant="closed-l")
    assert len(border) == 6
    assert len(closed) == 4
    assert len(closed_l) == 9


def test_generator_and_sampler():
    a = sky.generate_synthetic(50, 4, 8, seed=3)
    b = sky.generate_synthetic(50, 4, 8, seed=3)
    assert [a.values(i) for i in range(1, 51)] == [b.values(i) for i in range(1, 51)]

    q = sky.sample_query(6, seed=9)
    assert 1 <= len(q) <= 6

    m = sky.materialize(a)
    for label in ["A", "AB", "ABCD"]:
        assert m.query(label) == sky.skyline_bruteforce(a, label)
