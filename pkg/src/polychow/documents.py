"""JSON documents exchanged by the command line.

Subsets are written as sorted element-name lists inside braces, e.g.
"{1,2}"; dense rank arrays are little-endian in the bitmask (bit 0 is the
first element).  Rationals are written "p/q".
"""

from __future__ import annotations

import json
import re
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Sequence

from .core import (DEFAULT_MAX_M, GroundData, Polymatroid, ValidationError,
                   elements_of, validate)
from .lift import GroundMap
from .realization import RealizationMatrix


class DocumentError(Exception):
    """Malformed input: bad JSON, missing fields, unknown names."""

    kind = "Parse"


@dataclass(frozen=True)
class Named:
    """A polymatroid together with the names of its elements."""

    names: tuple[str, ...]
    p: Polymatroid

    def subset_names(self, mask: int) -> list[str]:
        return [self.names[i] for i in elements_of(mask)]


def default_names(m: int) -> tuple[str, ...]:
    return tuple(str(i + 1) for i in range(m))


def lifted_names(names: Sequence[str], a: Sequence[int]) -> tuple[str, ...]:
    """Names on EE: fiber i of size 1 keeps the name, larger fibers get
    suffixes a, b, c, ... (then _27, _28, ... past z)."""
    out = []
    for name, size in zip(names, a):
        if size == 1:
            out.append(name)
            continue
        for k in range(size):
            out.append(name + (chr(ord("a") + k) if k < 26 else f"_{k + 1}"))
    if len(set(out)) != len(out):
        raise DocumentError(f"lifted element names collide: {out}")
    return tuple(out)


def load_json(text: str) -> Any:
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise DocumentError(f"invalid JSON: {exc}") from exc


def _names_from(doc: dict, m: int) -> tuple[str, ...]:
    names = doc.get("elements")
    if names is None:
        return default_names(m)
    if not isinstance(names, list) or len(names) != m:
        raise DocumentError(f"'elements' must be a list of {m} names")
    names = tuple(str(x) for x in names)
    if len(set(names)) != len(names):
        raise DocumentError(f"element names are not unique: {list(names)}")
    if any(not x or re.search(r"[{},\s]", x) for x in names):
        raise DocumentError("element names must be nonempty and free of braces, commas and spaces")
    return names


def parse_subset(text: str, names: Sequence[str]) -> int:
    body = text.strip()
    if body.startswith("{") and body.endswith("}"):
        body = body[1:-1]
    mask = 0
    for part in body.split(","):
        part = part.strip()
        if not part:
            continue
        if part not in names:
            raise DocumentError(f"unknown element {part!r}")
        mask |= 1 << list(names).index(part)
    return mask


def format_subset(mask: int, names: Sequence[str]) -> str:
    return "{" + ",".join(names[i] for i in elements_of(mask)) + "}"


def parse_sequence(text: str, names: Sequence[str]) -> list[int]:
    """Parse "{1},{1,2}" into a list of masks; the empty string is the empty sequence."""
    text = text.strip()
    if not text:
        return []
    groups = re.findall(r"\{[^{}]*\}", text)
    rest = re.sub(r"\{[^{}]*\}", "", text).replace(",", "").strip()
    if rest or not groups:
        raise DocumentError(f"malformed set sequence {text!r}; expected e.g. {{1}},{{1,2}}")
    return [parse_subset(g, names) for g in groups]


def parse_polymatroid(doc: Any, max_m: int = DEFAULT_MAX_M) -> Named:
    if not isinstance(doc, dict):
        raise DocumentError("polymatroid document must be a JSON object")
    if "type" not in doc or "rank" not in doc:
        raise DocumentError("polymatroid document needs 'type' and 'rank'")
    a = doc["type"]
    if not isinstance(a, list) or not all(isinstance(x, int) and not isinstance(x, bool) for x in a):
        raise DocumentError("'type' must be a list of integers")
    names = _names_from(doc, len(a))
    rank = doc["rank"]
    m = len(a)
    if isinstance(rank, dict):
        if m > max_m:
            table: list = []
        else:
            table = [None] * (1 << m)
            for key, value in rank.items():
                mask = parse_subset(key, names)
                if table[mask] is not None:
                    raise DocumentError(f"subset {key!r} listed twice")
                table[mask] = value
            missing = [format_subset(s, names) for s, v in enumerate(table) if v is None]
            if missing:
                raise DocumentError(f"rank map is missing subsets {missing}")
    elif isinstance(rank, list):
        table = rank
    else:
        raise DocumentError("'rank' must be an array or an object")
    if not all(isinstance(v, int) and not isinstance(v, bool) for v in table):
        raise DocumentError("rank values must be integers")
    try:
        return Named(names, validate(table, GroundData(tuple(a)), max_m=max_m))
    except ValidationError as exc:
        exc.names = names  # lets the CLI print witnesses by element name
        raise


def polymatroid_doc(named: Named) -> dict:
    return {"elements": list(named.names), "type": list(named.p.a), "rank": list(named.p.rank)}


def fraction_str(x: Fraction) -> str:
    x = Fraction(x)
    return str(x.numerator) if x.denominator == 1 else f"{x.numerator}/{x.denominator}"


def parse_fraction(value: Any) -> Fraction:
    if isinstance(value, bool):
        raise DocumentError(f"not a rational number: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str) and re.fullmatch(r"\s*-?\d+(/\d+)?\s*", value):
        try:
            return Fraction(value.strip())
        except ZeroDivisionError as exc:
            raise DocumentError(f"zero denominator in {value!r}") from exc
    raise DocumentError(f"not a rational number: {value!r}")


def parse_matrix(doc: Any) -> RealizationMatrix:
    if not isinstance(doc, dict) or "blocks" not in doc or "rows" not in doc:
        raise DocumentError("matrix document needs 'blocks' and 'rows'")
    blocks = doc["blocks"]
    if not isinstance(blocks, list) or not all(isinstance(b, int) and b >= 0 for b in blocks):
        raise DocumentError("'blocks' must be a list of nonnegative integers")
    rows = doc["rows"]
    if not isinstance(rows, list) or not all(isinstance(r, list) for r in rows):
        raise DocumentError("'rows' must be a list of lists")
    n = sum(blocks)
    for r in rows:
        if len(r) != n:
            raise DocumentError(f"row {r} does not have {n} entries")
    return RealizationMatrix(tuple(blocks), tuple(tuple(parse_fraction(v) for v in r) for r in rows))


def matrix_doc(r: RealizationMatrix) -> dict:
    return {"blocks": list(r.blocks), "rows": [[fraction_str(v) for v in row] for row in r.rows]}


def is_fan_doc(doc: Any) -> bool:
    return isinstance(doc, dict) and "cones" in doc


def parse_fan_doc(doc: dict):
    from .fans import ConeLabel, WeightedFan
    a = doc.get("type")
    if not isinstance(a, list) or not all(isinstance(x, int) for x in a):
        raise DocumentError("fan document needs an integer 'type' list")
    pi = GroundMap(tuple(a))
    names = _names_from(doc, len(a))
    ee = lifted_names(names, a)
    weights = {}
    for cone in doc["cones"]:
        try:
            I = 0
            for j in cone["I"]:
                I |= 1 << ee.index(str(j))
            chain = tuple(parse_subset("{" + ",".join(str(x) for x in f) + "}", names)
                          for f in cone["chain"])
            w = int(cone.get("weight", 1))
        except (KeyError, TypeError, ValueError) as exc:
            raise DocumentError(f"malformed cone {cone!r}") from exc
        weights[ConeLabel(I, chain)] = w
    return WeightedFan(pi, weights, bool(doc.get("quotient", False))), names


def dumps(obj: Any) -> str:
    return json.dumps(obj, sort_keys=True) + "\n"
