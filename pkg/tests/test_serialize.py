import json

import pytest
from hypothesis import given, settings

from strategies import tensors
from triad.lie_bridge import adjoint_module, sub_adjacent
from triad.maps import derivation_space
from triad.reps_ext import cocycle_space, regular_module
from triad.serialize import (
    SchemaError,
    algebra_from_json,
    algebra_to_json,
    cocycle_from_json,
    cocycle_to_json,
    dumps,
    lie_from_json,
    lie_module_from_json,
    lie_module_to_json,
    lie_to_json,
    loads,
    mapspace_to_json,
    module_from_json,
    module_to_json,
)


@settings(max_examples=50, deadline=None)
@given(tensors(max_dim=5))
def test_algebra_round_trip(A):
    text = dumps(algebra_to_json(A))
    B = algebra_from_json(loads(text))
    assert B == A
    assert dumps(algebra_to_json(B)) == text


def test_module_and_cocycle_round_trip(a3, n4):
    dm = regular_module(n4)
    assert module_from_json(loads(dumps(module_to_json(dm)))) == dm
    for c in cocycle_space(a3):
        assert cocycle_from_json(loads(dumps(cocycle_to_json(c)))) == c
    L = sub_adjacent(n4)
    assert lie_from_json(loads(dumps(lie_to_json(L)))) == L
    M = adjoint_module(L)
    assert lie_module_from_json(loads(dumps(lie_module_to_json(M)))) == M


def test_mapspace_json(a3):
    obj = mapspace_to_json(derivation_space(a3))
    assert obj["kind"] == "Der" and obj["dim"] == len(obj["basis"]) == 5
    assert all(isinstance(x, str) for row in obj["basis"][0] for x in row)


def test_malformed_json_reports_position():
    with pytest.raises(SchemaError, match="line 2, column"):
        loads('{"dim": 3,\n "products": [,]}')


def test_inconsistent_duplicate_names_triple():
    obj = {"dim": 3, "products": [
        {"i": 1, "j": 2, "k": 3, "out": {"1": "1"}},
        {"i": 2, "j": 1, "k": 3, "out": {"1": "1"}},
    ]}
    with pytest.raises(SchemaError, match=r"\(1, 2, 3\)"):
        algebra_from_json(obj)
    # the swapped entry with the opposite sign is consistent
    obj["products"][1]["out"] = {"1": "-1"}
    assert algebra_from_json(obj).dim == 3


@pytest.mark.parametrize("obj,msg", [
    ({"products": []}, "missing 'dim'"),
    ({"dim": 3, "products": [{"i": 1, "j": 2, "k": 4, "out": {}}]}, "outside 1..3"),
    ({"dim": 3, "products": [{"i": 1, "j": 2, "k": 3, "out": {"1": 0.5}}]}, "rational string"),
    ({"dim": 3, "products": [{"i": 1, "j": 1, "k": 3, "out": {"1": "1"}}]}, "repeats"),
    ({"dim": 3, "skew": "full", "products": []}, "3-Lie"),
    ({"dim": -1}, "non-negative"),
])
def test_schema_errors(obj, msg):
    with pytest.raises(SchemaError, match=msg):
        algebra_from_json(obj)


def test_canonical_output_is_sorted(a3):
    text = dumps(algebra_to_json(a3))
    assert json.loads(text) == {"dim": 3, "label": "A3",
                                "products": [{"i": 1, "j": 2, "k": 2, "out": {"3": "1"}}]}
