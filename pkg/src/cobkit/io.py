"""JSON encoding of presentations and matrices.

Integers are written as decimal strings so arbitrarily large values round-trip
bit-exactly; floats are rejected on input.  A presentation file looks like::

    {"version": 1, "g_bottom": 1, "g_top": 1, "n_link": 2,
     "A": [["1", "1"], ["1", "-3"]], "B": [["1", "-1"]], ...}

Shapes come from ``n_link``/``g_bottom``/``g_top``, so blocks with zero rows
or columns are unambiguous (``[]`` or ``[[], []]``).
"""

from __future__ import annotations

import json
from pathlib import Path

from .linalg import IntMatrix, Matrix
from .triplet import TripletPresentation

FORMAT_VERSION = 1


class FormatError(ValueError):
    pass


def encode_int(x: int) -> str:
    return str(int(x))


def decode_int(x) -> int:
    if isinstance(x, bool) or isinstance(x, float):
        raise FormatError(f"integers must be decimal strings, got {x!r}")
    if isinstance(x, int):
        return x
    if isinstance(x, str):
        try:
            return int(x.strip(), 10)
        except ValueError:
            raise FormatError(f"not a decimal integer: {x!r}") from None
    raise FormatError(f"not an integer: {x!r}")


def encode_matrix(M: Matrix) -> list[list[str]]:
    return [[str(x) for x in row] for row in M]


def decode_matrix(rows, shape: tuple[int, int] | None = None) -> IntMatrix:
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise FormatError("a matrix must be a list of rows")
    data = [[decode_int(x) for x in r] for r in rows]
    if shape is None:
        return IntMatrix(data)
    r, c = shape
    if r == 0:
        if data:
            raise FormatError(f"expected 0 rows, got {len(data)}")
        return IntMatrix.zeros(0, c)
    if len(data) != r or any(len(row) != c for row in data):
        got = (len(data), len(data[0]) if data else 0)
        raise FormatError(f"expected a {r}x{c} matrix, got {got[0]} rows")
    return IntMatrix(data, r, c)


def presentation_to_dict(T: TripletPresentation) -> dict:
    d = {"version": FORMAT_VERSION, "g_bottom": T.g_bottom, "g_top": T.g_top,
         "n_link": T.n_link}
    for key in "ABCDEF":
        d[key] = encode_matrix(getattr(T, key))
    return d


def presentation_from_dict(d: dict) -> TripletPresentation:
    if not isinstance(d, dict):
        raise FormatError("presentation must be a JSON object")
    version = d.get("version", FORMAT_VERSION)
    if decode_int(version) != FORMAT_VERSION:
        raise FormatError(f"unsupported format version {version!r}")
    try:
        g1 = decode_int(d["g_bottom"])
        g2 = decode_int(d["g_top"])
        n = decode_int(d["n_link"])
    except KeyError as exc:
        raise FormatError(f"missing field {exc.args[0]!r}") from None
    if min(g1, g2, n) < 0:
        raise FormatError("genera and link size must be nonnegative")
    shapes = {"A": (n, n), "B": (g1, n), "C": (g2, n),
              "D": (g1, g1), "E": (g2, g1), "F": (g2, g2)}
    blocks = {}
    for key, shape in shapes.items():
        raw = d.get(key)
        if raw is None:
            if shape[0] * shape[1]:
                raise FormatError(f"missing block {key}")
            blocks[key] = IntMatrix.zeros(*shape)
            continue
        try:
            blocks[key] = decode_matrix(raw, shape)
        except FormatError as exc:
            raise FormatError(f"block {key}: {exc}") from None
    return TripletPresentation(g1, g2, n, **blocks)


def dumps_presentation(T: TripletPresentation) -> str:
    return json.dumps(presentation_to_dict(T), indent=1) + "\n"


def loads_presentation(text: str) -> TripletPresentation:
    try:
        d = json.loads(text)
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return presentation_from_dict(d)


def read_presentation(path) -> TripletPresentation:
    return loads_presentation(Path(path).read_text(encoding="utf-8"))


def write_presentation(T: TripletPresentation, path) -> None:
    Path(path).write_text(dumps_presentation(T), encoding="utf-8")


def matrix_from_json(obj) -> IntMatrix:
    """Accept a bare list of rows or an object with a ``matrix`` (or ``W``) key."""
    if isinstance(obj, dict):
        for key in ("matrix", "W"):
            if key in obj:
                return decode_matrix(obj[key])
        raise FormatError("matrix object needs a 'matrix' field")
    return decode_matrix(obj)


def read_matrix(path) -> IntMatrix:
    try:
        obj = json.loads(Path(path).read_text(encoding="utf-8"))
    except json.JSONDecodeError as exc:
        raise FormatError(f"invalid JSON: {exc}") from None
    return matrix_from_json(obj)


def matrix_to_json(M: Matrix) -> dict:
    return {"version": FORMAT_VERSION, "matrix": encode_matrix(M)}
