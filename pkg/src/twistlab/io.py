"""File formats: Cayley tables, automorphism literals and solution pairs.

Cayley file::

    # optional comment lines
    3
    0 1 2
    1 2 0
    2 0 1

Row ``x`` lists the products ``x·0 … x·(n-1)``. Automorphism literals are
``id``, an image list such as ``1,2,0``, or ``pow:BASE:K`` for the ``K``-th
power of the image list ``BASE`` (written with ``;`` or ``,`` separators).
"""

from __future__ import annotations

import json
import os

import numpy as np

from .funcspace import from_pairs, to_pairs
from .semigroup import (
    Automorphism,
    FiniteSemigroup,
    automorphism_power,
    identity,
    make_automorphism,
    validate_table,
)


class FormatError(ValueError):
    pass


def parse_table(text: str, label: str = "", cap: int = 16) -> FiniteSemigroup:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise FormatError("empty table file")
    try:
        n = int(lines[0])
    except ValueError:
        raise FormatError(f"first data line must be the order, got {lines[0]!r}") from None
    if n < 1:
        raise FormatError("order must be positive")
    rows = lines[1:]
    if len(rows) != n:
        raise FormatError(f"expected {n} rows, found {len(rows)}")
    try:
        table = [[int(v) for v in row.split()] for row in rows]
    except ValueError as exc:
        raise FormatError(f"non-integer table entry: {exc}") from None
    for x, row in enumerate(table):
        if len(row) != n:
            raise FormatError(f"row {x} has {len(row)} entries, expected {n}")
    return validate_table(table, order=n, label=label, cap=cap)


def read_table(path: str, cap: int = 16) -> FiniteSemigroup:
    with open(path, encoding="utf-8") as fh:
        text = fh.read()
    label = os.path.splitext(os.path.basename(path))[0]
    return parse_table(text, label=label, cap=cap)


def format_table(s: FiniteSemigroup, comment: str | None = None) -> str:
    out = []
    if comment:
        out += [f"# {ln}" for ln in comment.splitlines()]
    out.append(str(s.order))
    out += [" ".join(str(int(v)) for v in row) for row in s.table]
    return "\n".join(out) + "\n"


def write_table(path: str, s: FiniteSemigroup, comment: str | None = None) -> None:
    with open(path, "w", encoding="utf-8") as fh:
        fh.write(format_table(s, comment))


def _image_list(text: str, n: int) -> list[int]:
    parts = [p for p in text.replace(";", ",").split(",") if p.strip()]
    try:
        perm = [int(p) for p in parts]
    except ValueError:
        raise FormatError(f"bad automorphism image list {text!r}") from None
    if len(perm) != n:
        raise FormatError(f"automorphism has {len(perm)} images, semigroup order is {n}")
    return perm


def parse_sigma(spec: str, s: FiniteSemigroup) -> Automorphism:
    """``id`` | ``1,2,0`` | ``pow:BASE:K``; the result is checked to be an automorphism."""
    spec = spec.strip()
    if spec == "id":
        return identity(s.order)
    if spec.startswith("pow:"):
        parts = spec.split(":")
        try:
            if len(parts) != 3:
                raise ValueError
            base, k = parts[1], int(parts[2])
        except ValueError:
            raise FormatError(f"bad power literal {spec!r}; expected pow:BASE:K") from None
        if k < 0:
            raise FormatError("power must be non-negative")
        return automorphism_power(parse_sigma(base, s), k)
    return make_automorphism(s, _image_list(spec, s.order))


def solution_to_json(f, g) -> dict:
    return {"f": to_pairs(f), "g": to_pairs(g)}


def parse_solution(obj, n: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    """``{"f": [[re, im], …], "g": …}``; a report solution entry also works."""
    if isinstance(obj, str):
        obj = json.loads(obj)
    if not isinstance(obj, dict) or "f" not in obj or "g" not in obj:
        raise FormatError('solution must be a JSON object with "f" and "g"')
    try:
        f, g = from_pairs(obj["f"]), from_pairs(obj["g"])
    except (TypeError, ValueError):
        raise FormatError("solution values must be [re, im] pairs") from None
    if len(f) != len(g) or (n is not None and len(f) != n):
        raise FormatError(f"solution length {len(f)}/{len(g)} does not match order {n}")
    return f, g


def read_solution(path: str, n: int | None = None) -> tuple[np.ndarray, np.ndarray]:
    with open(path, encoding="utf-8") as fh:
        try:
            obj = json.load(fh)
        except json.JSONDecodeError as exc:
            raise FormatError(f"invalid JSON in {path}: {exc}") from None
    return parse_solution(obj, n)
