"""Parsing and JSON-friendly rendering of the exact data types.

Wire formats: rationals are strings "p" or "p/q"; complex scalars are
compact strings like "1/2+3i/4" (object form {"re": "p/q", "im": "p/q"} is
also accepted); expressions are arrays of monomial records; matrices are
row-major arrays of scalar strings; coordinates are {"c10": "1+i", ...}.
"""

from __future__ import annotations

import re
from fractions import Fraction
from typing import Mapping, Sequence

from .config import TodaConfig, make_config
from .exact import ExactScalar, Monomial, ZExpr, format_fraction, format_scalar
from .groups import GroupElement, UnipotentCoords
from .lie import Algebra


def parse_fraction(text: str) -> Fraction:
    return Fraction(str(text).strip())


_IMAG_PART = re.compile(r"^([+-]?)(\d*)i(?:/(\d+))?$")


def parse_scalar(text) -> ExactScalar:
    """Parse "1/2+3i/4", "-i", "2", "i/3" or an {"re","im"} object."""
    if isinstance(text, Mapping):
        return ExactScalar(parse_fraction(text.get("re", "0")), parse_fraction(text.get("im", "0")))
    if isinstance(text, ExactScalar):
        return text
    if isinstance(text, (int, Fraction)):
        return ExactScalar.of(text)
    s = str(text).replace(" ", "")
    if not s:
        raise ValueError("empty scalar")
    # Split into signed chunks.
    chunks = re.findall(r"[+-]?[^+-]+", s)
    re_part = Fraction(0)
    im_part = Fraction(0)
    for chunk in chunks:
        m = _IMAG_PART.match(chunk)
        if m:
            sign = -1 if m.group(1) == "-" else 1
            num = int(m.group(2)) if m.group(2) else 1
            den = int(m.group(3)) if m.group(3) else 1
            im_part += Fraction(sign * num, den)
        else:
            re_part += Fraction(chunk)
    return ExactScalar(re_part, im_part)


def scalar_to_json(s: ExactScalar) -> str:
    return format_scalar(s)


def scalar_to_object(s: ExactScalar) -> dict:
    return {"re": format_fraction(s.re), "im": format_fraction(s.im)}


def zexpr_to_json(e: ZExpr) -> list[dict]:
    return [
        {
            "coeff": scalar_to_object(t.coeff),
            "exp_z": format_fraction(t.exp_z),
            "exp_zbar": format_fraction(t.exp_zbar),
        }
        for t in e.terms
    ]


def zexpr_from_json(records: Sequence[Mapping]) -> ZExpr:
    return ZExpr.from_terms(
        Monomial(
            parse_scalar(r["coeff"]),
            parse_fraction(r["exp_z"]),
            parse_fraction(r["exp_zbar"]),
        )
        for r in records
    )


def matrix_to_json(g: GroupElement) -> list[list[str]]:
    return [[format_scalar(x) for x in row] for row in g.entries]


def fractions_to_json(xs: Sequence[Fraction]) -> list[str]:
    return [format_fraction(x) for x in xs]


def algebra_to_json(a: Algebra) -> dict:
    return {"family": a.family, "rank": a.rank}


def parse_algebra(obj: Mapping) -> Algebra:
    return Algebra(str(obj["family"]), int(obj["rank"]))


_COORD_KEY = re.compile(r"^c(\d+?)(\d)$")


def parse_coords(algebra: Algebra, obj: Mapping[str, object]) -> UnipotentCoords:
    """Parse {"c30": "1+i", ...}; multi-digit rows use an optional underscore
    separator ("c12_3" is row 12, column 3)."""
    values = {}
    for key, raw in obj.items():
        name = str(key)
        if "_" in name:
            body = name[1:]
            i_str, j_str = body.split("_", 1)
            i, j = int(i_str), int(j_str)
        else:
            m = _COORD_KEY.match(name)
            if not m:
                raise ValueError(f"bad coordinate name {name!r}")
            i, j = int(m.group(1)), int(m.group(2))
        values[(i, j)] = parse_scalar(raw)
    return UnipotentCoords(algebra, values)


def coords_to_json(coords: UnipotentCoords) -> dict:
    return {f"c{i}{j}": format_scalar(v) for (i, j), v in coords.items()}


def config_from_json(obj: Mapping) -> TodaConfig:
    gamma = [parse_fraction(x) for x in obj["gamma"]]
    return make_config(str(obj["family"]), int(obj["rank"]), gamma)


def solution_input_from_json(obj: Mapping):
    """Parse a full problem description:
    {"family":"B","rank":2,"gamma":["-1/2","1/4"],"lambda":["1","2"],
     "coords":{"c30":"1+i"}}.

    Returns (config, params); lambda defaults to all ones, coords to empty.
    """
    from .solutions import SolutionParams

    config = config_from_json(obj)
    coords = parse_coords(config.algebra, obj.get("coords", {}))
    raw_lams = obj.get("lambda")
    if raw_lams is None:
        count = config.k if config.family == "A" else config.k // 2
        lams = [Fraction(1)] * count
    else:
        lams = [parse_fraction(x) for x in raw_lams]
    return config, SolutionParams.of(lams, coords)


def config_to_json(config: TodaConfig) -> dict:
    return {
        "family": config.family,
        "rank": config.rank,
        "gamma": fractions_to_json(config.gamma),
    }
