from __future__ import annotations

import json
import random

import pytest

from cobkit.generators import gen_semilagrangian, random_params
from cobkit.io import (
    FormatError,
    decode_int,
    decode_matrix,
    dumps_presentation,
    loads_presentation,
    matrix_from_json,
    presentation_from_dict,
    presentation_to_dict,
    read_presentation,
    write_presentation,
)
from cobkit.linalg import IntMatrix
from cobkit.triplet import Z4_EXAMPLE, TripletPresentation


def test_integers_are_decimal_strings():
    d = presentation_to_dict(Z4_EXAMPLE)
    assert d["A"] == [["1", "1"], ["1", "-3"]]
    assert d["version"] == 1


def test_huge_integers_round_trip():
    big = 3 ** 200
    T = TripletPresentation.build(0, 0, 1, A=[[big]])
    assert loads_presentation(dumps_presentation(T)).A[0, 0] == big


@pytest.mark.parametrize("seed", range(10))
def test_generated_round_trip(seed, tmp_path):
    T = gen_semilagrangian(random_params(random.Random(seed)))
    path = tmp_path / "t.json"
    write_presentation(T, path)
    assert read_presentation(path) == T


def test_empty_blocks_round_trip():
    T = TripletPresentation.build(0, 3, 0)
    d = json.loads(dumps_presentation(T))
    assert d["A"] == [] and d["C"] == [[], [], []]
    assert loads_presentation(dumps_presentation(T)) == T


def test_floats_and_bools_rejected():
    for bad in (1.0, True, "1.5", "x", None):
        with pytest.raises(FormatError):
            decode_int(bad)
    d = presentation_to_dict(Z4_EXAMPLE)
    d["A"][0][0] = 1.0
    with pytest.raises(FormatError):
        presentation_from_dict(d)


def test_shape_mismatch_rejected():
    d = presentation_to_dict(Z4_EXAMPLE)
    d["B"] = [["1"]]
    with pytest.raises(FormatError, match="block B"):
        presentation_from_dict(d)


def test_missing_field_and_version():
    d = presentation_to_dict(Z4_EXAMPLE)
    del d["n_link"]
    with pytest.raises(FormatError, match="n_link"):
        presentation_from_dict(d)
    d = presentation_to_dict(Z4_EXAMPLE)
    d["version"] = 2
    with pytest.raises(FormatError):
        presentation_from_dict(d)
    with pytest.raises(FormatError):
        loads_presentation("{not json")


def test_matrix_json_forms():
    assert matrix_from_json([["1", "1"], ["0", "1"]]) == IntMatrix([[1, 1], [0, 1]])
    assert matrix_from_json({"matrix": [[0, 1], [-1, 1]]}) == IntMatrix([[0, 1], [-1, 1]])
    assert decode_matrix([], (0, 2)).shape == (0, 2)
    with pytest.raises(FormatError):
        matrix_from_json({"rows": []})
