"""JSON and CSV formats for polygons, representations and tables.

Rationals are written as ``"p/q"`` strings; integers are accepted on input.
"""

from __future__ import annotations

import csv
import io
import json
import re
from fractions import Fraction
from pathlib import Path
from typing import Iterable, Sequence

from .geometry import AffineForm, Polygon, ProductRep, expand_product, make_polygon

_RATIONAL = re.compile(r"^\s*[+-]?\d+(\s*/\s*[+-]?\d+)?\s*$")


class FormatError(ValueError):
    pass


def fraction_to_str(x: Fraction) -> str:
    return f"{x.numerator}/{x.denominator}"


def parse_fraction(value) -> Fraction:
    if isinstance(value, bool) or isinstance(value, float):
        raise FormatError(f"expected an integer or 'p/q' string, got {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if not isinstance(value, str) or not _RATIONAL.match(value):
        raise FormatError(f"expected a decimal-free rational 'p/q', got {value!r}")
    try:
        return Fraction(value.replace(" ", ""))
    except ZeroDivisionError:
        raise FormatError(f"zero denominator in {value!r}") from None


def form_to_json(f: AffineForm) -> dict:
    return {"a1": fraction_to_str(f.a1), "a2": fraction_to_str(f.a2), "b": fraction_to_str(f.b)}


def polygon_to_json(P: Polygon) -> dict:
    return {"kind": P.kind, "edges": [form_to_json(f) for f in P.edges]}


def polygon_from_json(data: dict) -> Polygon:
    """Parse and validate; geometric problems raise PolygonError, malformed
    documents raise FormatError."""
    try:
        kind = data["kind"]
        edges = data["edges"]
        forms = [AffineForm(parse_fraction(e["a1"]), parse_fraction(e["a2"]), parse_fraction(e["b"]))
                 for e in edges]
    except (KeyError, TypeError) as exc:
        raise FormatError(f"malformed polygon document: {exc}") from None
    except ValueError as exc:
        if isinstance(exc, FormatError):
            raise
        raise FormatError(str(exc)) from None
    return make_polygon(forms, kind)


def table_to_json(table: Sequence[Sequence[Fraction]]) -> list[list[str]]:
    return [[fraction_to_str(c) for c in row] for row in table]


def rep_to_json(P: Polygon, rep: ProductRep, expand: bool = True) -> dict:
    data = {"mode": rep.mode, "family": [list(s) for s in rep.family]}
    if expand:
        data["expanded"] = [
            {"member": list(s), "degree": len(s), "coefficients": table_to_json(expand_product(fs))}
            for s, fs in zip(rep.family, rep.factors(P))
        ]
    return data


def rep_from_json(data: dict) -> tuple[ProductRep, list | None]:
    """The representation and its optional expanded coefficient tables."""
    try:
        mode = data["mode"]
        family = [[int(j) for j in member] for member in data["family"]]
        rep = ProductRep(tuple(tuple(s) for s in family), mode)
    except (KeyError, TypeError, ValueError) as exc:
        raise FormatError(f"malformed representation document: {exc}") from None
    expanded = None
    if data.get("expanded") is not None:
        try:
            expanded = [[[parse_fraction(c) for c in row] for row in item["coefficients"]]
                        for item in data["expanded"]]
        except (KeyError, TypeError) as exc:
            raise FormatError(f"malformed expanded table: {exc}") from None
        if len(expanded) != rep.n:
            raise FormatError("expanded tables do not match the family size")
    return rep, expanded


def expanded_matches(P: Polygon, rep: ProductRep, expanded: Sequence) -> int | None:
    """Index of the first coefficient table that differs from the product
    it claims to expand, or None when all agree."""
    for i, (fs, table) in enumerate(zip(rep.factors(P), expanded)):
        want = expand_product(fs)
        if _trim(want) != _trim(table):
            return i
    return None


def _trim(table) -> dict:
    return {(i, j): c for i, row in enumerate(table) for j, c in enumerate(row) if c}


def read_json(path: str | Path) -> dict:
    return json.loads(Path(path).read_text())


def write_json(data, path: str | Path) -> None:
    Path(path).write_text(json.dumps(data, indent=1) + "\n")


def write_csv(header: Sequence[str], rows: Iterable[Sequence], path: str | Path | None = None) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    writer.writerows(rows)
    text = buf.getvalue()
    if path is not None:
        Path(path).write_text(text)
    return text

