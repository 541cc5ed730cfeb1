"""End-to-end smoke tests for the augmatch extension module."""

import json

import pytest

import augmatch


def test_formula_roundtrip_and_oracle():
    text = "p o3s 3 1\n1 2 3 0\n"
    canonical = augmatch.parse_formula(text)
    assert augmatch.parse_formula(canonical) == canonical
    sols = augmatch.brute_force_assignments(canonical)
    assert sorted(sols) == [
        [False, False, True],
        [False, True, False],
        [True, False, False],
    ]
    for values in sols:
        assert augmatch.satisfies(canonical, values)
    assert not augmatch.satisfies(canonical, [True, True, False])


def test_compile_solve_verify_extract():
    instance_json, provenance_json = augmatch.compile_formula("p o3s 3 1\n1 2 3 0\n")
    assert augmatch.validate_instance(instance_json) is None

    result = augmatch.solve(instance_json)
    assert result["decision"] == "AUGMENTABLE"
    assert result["witness"] is not None
    assert augmatch.verify(instance_json, result["witness"]) is None

    values = augmatch.extract_assignment(provenance_json, instance_json, result["witness"])
    assert augmatch.satisfies("p o3s 3 1\n1 2 3 0\n", values)
    assert sum(values) == 1

    # A contradictory clause compiles but cannot be completed.
    bad_instance, _ = augmatch.compile_formula("p o3s 1 1\n1 1 1 0\n")
    assert augmatch.solve(bad_instance)["decision"] == "NOT_AUGMENTABLE"


def test_color_erasure_preserves_decision():
    instance_json, _ = augmatch.compile_formula("p o3s 2 1\n1 2 2 0\n")
    colored = augmatch.solve(instance_json)
    uncolored = augmatch.solve(augmatch.erase_colors(instance_json))
    assert colored["decision"] == uncolored["decision"]


def test_gadget_contracts():
    report_ok, counterexamples = augmatch.gadget_contract_report("junction")
    assert report_ok, counterexamples
    blueprint = json.loads(augmatch.gadget_blueprint("lane", "cells=2"))
    assert {p["name"] for p in blueprint["ports"]} == {"in", "out"}


def test_constructive_matchers():
    assert augmatch.sweep_matching([(0, 0), (1, 5), (2, 1), (3, 4)]) == [(0, 1), (2, 3)]
    pairing = dict(augmatch.min_length_matching([(0, 0), (4, 0)], [(1, 1), (3, 1)]))
    assert pairing == {0: 0, 1: 1}
    with pytest.raises(Exception):
        augmatch.sweep_matching([(0, 0), (1, 1), (2, 2), (5, 0)])  # collinear triple


def test_cubic_pipeline():
    points = {
        "mode": "uncolored",
        "vertices": [
            {"id": 0, "x": "0/1", "y": "0/1", "color": None},
            {"id": 1, "x": "10/1", "y": "0/1", "color": None},
        ],
        "edges": [],
    }
    graph_json = augmatch.transform_to_cubic(json.dumps(points))
    result = augmatch.solve_cubic(graph_json)
    assert result["decision"] == "AUGMENTABLE"
    added = json.loads(result["witness"])["added_edges"]
    assert added == [[0, 5]]
    ok, messages = augmatch.verify_cubic(graph_json, [(0, 5)])
    assert ok, messages
    ok_missing, messages_missing = augmatch.verify_cubic(graph_json, [])
    assert not ok_missing
    assert any("DegreeViolation" in m for m in messages_missing)


def test_render_svg():
    instance = {
        "mode": "colored",
        "vertices": [
            {"id": 0, "x": "0/1", "y": "0/1", "color": "cross"},
            {"id": 1, "x": "4/1", "y": "0/1", "color": "circle"},
        ],
        "edges": [[0, 1]],
    }
    svg = augmatch.render_svg(json.dumps(instance))
    assert svg.startswith("<?xml")
    assert "<svg" in svg
    assert svg.count("class=\"vertex\"") == 2
    assert augmatch.render_svg(json.dumps(instance)) == svg
