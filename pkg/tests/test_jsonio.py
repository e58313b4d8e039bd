from fractions import Fraction as F

import pytest

from toda.exact import ExactScalar, ZExpr
from toda.groups import UnipotentCoords
from toda.jsonio import (
    coords_to_json,
    matrix_to_json,
    parse_coords,
    parse_fraction,
    parse_scalar,
    scalar_to_json,
    scalar_to_object,
    solution_input_from_json,
    zexpr_from_json,
    zexpr_to_json,
)
from toda.lie import Algebra


@pytest.mark.parametrize(
    "text,expected",
    [
        ("1/2+3i/4", ExactScalar(F(1, 2), F(3, 4))),
        ("1+i", ExactScalar(F(1), F(1))),
        ("-i", ExactScalar(F(0), F(-1))),
        ("2", ExactScalar(F(2), F(0))),
        ("i/3", ExactScalar(F(0), F(1, 3))),
        ("-5/7-2i/9", ExactScalar(F(-5, 7), F(-2, 9))),
        ("0", ExactScalar(F(0), F(0))),
    ],
)
def test_parse_scalar(text, expected):
    assert parse_scalar(text) == expected


def test_scalar_round_trip():
    vals = [
        ExactScalar(F(1, 2), F(3, 4)),
        ExactScalar(F(-2), F(0)),
        ExactScalar(F(0), F(-1)),
        ExactScalar(F(0), F(0)),
        ExactScalar(F(22, 7), F(-1, 100)),
    ]
    for v in vals:
        assert parse_scalar(scalar_to_json(v)) == v
        assert parse_scalar(scalar_to_object(v)) == v


def test_parse_fraction():
    assert parse_fraction("-1/2") == F(-1, 2)
    assert parse_fraction("3") == F(3)


def test_zexpr_round_trip():
    e = ZExpr.monomial(ExactScalar(F(1, 2), F(-1, 3)), F(5, 2), F(-1)) + ZExpr.one()
    assert zexpr_from_json(zexpr_to_json(e)) == e


def test_coords_round_trip():
    alg = Algebra("B", 2)
    coords = UnipotentCoords(alg, {(3, 0): ExactScalar(F(1), F(1)), (1, 0): ExactScalar(F(-1, 2), F(0))})
    blob = coords_to_json(coords)
    assert blob == {"c10": "-1/2", "c30": "1+i"}
    assert parse_coords(alg, blob) == coords


def test_matrix_to_json():
    from toda.groups import form_matrix

    assert matrix_to_json(form_matrix(2)) == [["0", "1"], ["-1", "0"]]


def test_solution_input_from_json():
    config, params = solution_input_from_json(
        {
            "family": "B",
            "rank": 2,
            "gamma": ["-1/2", "1/4"],
            "lambda": ["1", "2"],
            "coords": {"c30": "1+i"},
        }
    )
    assert config.k == 5
    assert params.lambdas == (1, 2)
    assert params.coords.get(3, 0) == ExactScalar(F(1), F(1))


def test_solution_input_defaults():
    config, params = solution_input_from_json({"family": "C", "rank": 2, "gamma": ["0", "0"]})
    assert params.lambdas == (1, 1)
    assert not params.coords.values
