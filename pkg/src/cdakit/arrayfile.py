"""Line-oriented text format for arrays.

::

    N k v
    # family: bush
    # t: 3
    # lambda: 1
    # parts: 1-6 7-12
    0 0 0 0
    ...

The header gives the row count, column count and alphabet size.  Lines
starting with ``#`` carry ``key: value`` metadata; ``t``, ``lambda``,
``family`` and ``parts`` are interpreted, anything else lands in the
array's provenance.  Blank lines are ignored.
"""

from __future__ import annotations

import json
from pathlib import Path

from .errors import ArrayFormatError, CDAError
from .model import Array, RowDivisibleArray

KNOWN_KEYS = ("family", "t", "lambda", "parts")


def _parse_parts(text: str) -> tuple[tuple[int, int], ...]:
    parts = []
    for chunk in text.split():
        try:
            a, _, b = chunk.partition("-")
            parts.append((int(a), int(b or a)))
        except ValueError:
            raise ArrayFormatError(f"bad part range {chunk!r}") from None
    return tuple(parts)


def parse_array(text: str) -> Array | RowDivisibleArray:
    header = None
    meta: dict[str, str] = {}
    body: list[list[int]] = []
    for lineno, raw in enumerate(text.splitlines(), 1):
        line = raw.strip()
        if not line:
            continue
        if line.startswith("#"):
            key, sep, value = line[1:].partition(":")
            if sep:
                meta[key.strip()] = value.strip()
            continue
        try:
            numbers = [int(x) for x in line.split()]
        except ValueError:
            raise ArrayFormatError(f"line {lineno}: non-integer entry in {line!r}") from None
        if header is None:
            if len(numbers) != 3:
                raise ArrayFormatError(f"line {lineno}: header must be 'N k v'")
            header = numbers
        else:
            body.append(numbers)
    if header is None:
        raise ArrayFormatError("empty array file")
    n, k, v = header
    if len(body) != n:
        raise ArrayFormatError(f"header declares N={n} rows, body has {len(body)}")
    for i, row in enumerate(body, 1):
        if len(row) != k:
            raise ArrayFormatError(f"row {i} has {len(row)} entries, header declares k={k}")
    try:
        t = int(meta["t"]) if "t" in meta else None
        lam = int(meta["lambda"]) if "lambda" in meta else None
    except ValueError:
        raise ArrayFormatError("metadata 't' and 'lambda' must be integers") from None
    provenance = {key: value for key, value in meta.items() if key not in KNOWN_KEYS}
    try:
        array = Array.from_rows(body, v=v, t=t, lam=lam, family=meta.get("family"), provenance=provenance)
        if "parts" in meta:
            return RowDivisibleArray(array, _parse_parts(meta["parts"]))
    except CDAError as exc:
        raise ArrayFormatError(str(exc)) from None
    return array


def format_array(obj: Array | RowDivisibleArray) -> str:
    array = obj.array if isinstance(obj, RowDivisibleArray) else obj
    lines = [f"{array.N} {array.k} {array.v}"]
    if array.family:
        lines.append(f"# family: {array.family}")
    if array.t is not None:
        lines.append(f"# t: {array.t}")
    if array.lam is not None:
        lines.append(f"# lambda: {array.lam}")
    if isinstance(obj, RowDivisibleArray):
        lines.append("# parts: " + " ".join(f"{a}-{b}" for a, b in obj.parts))
    for key, value in array.provenance.items():
        if key in KNOWN_KEYS:
            continue  # already carried by the typed metadata
        text = value if isinstance(value, str) else json.dumps(value)
        lines.append(f"# {key}: {text}")
    lines.extend(" ".join(str(int(x)) for x in row) for row in array.cells)
    return "\n".join(lines) + "\n"


def read_array(path: str | Path) -> Array | RowDivisibleArray:
    return parse_array(Path(path).read_text(encoding="utf-8"))


def write_array(obj: Array | RowDivisibleArray, path: str | Path) -> None:
    Path(path).write_text(format_array(obj), encoding="utf-8")
