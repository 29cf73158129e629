"""Reading semigroup and instance files."""

from __future__ import annotations

import json
from dataclasses import dataclass
from pathlib import Path

from .functions import SFunc
from .scalar import ConductorMismatch, field, scalar_from_json
from .semigroup import CayleyTable, ParseError, conductor_for, parse_text, validate


class InputError(ValueError):
    """Malformed or unreadable input (exit code 2)."""


@dataclass
class InstanceSpec:
    S: CayleyTable
    sigma: tuple[int, ...] | None
    mu: SFunc | None
    source: str


def _rows_from_obj(obj, where: str) -> list[list[int]]:
    if isinstance(obj, dict):
        if "table" not in obj:
            raise InputError(f"{where}: object lacks 'table'")
        rows = obj["table"]
        if "order" in obj and obj["order"] != len(rows):
            raise InputError(f"{where}: order {obj['order']} but {len(rows)} rows")
    else:
        rows = obj
    if not isinstance(rows, list) or not rows or not all(isinstance(r, list) for r in rows):
        raise InputError(f"{where}: table must be a nonempty list of rows")
    n = len(rows)
    for x, r in enumerate(rows):
        if len(r) != n:
            raise InputError(f"{where}: row {x} has {len(r)} entries, expected {n}")
        for y, v in enumerate(r):
            if isinstance(v, bool) or not isinstance(v, int) or not 0 <= v < n:
                raise InputError(f"{where}: entry ({x},{y}) = {v!r} out of range")
    return rows


def read_rows(path: Path) -> list[list[int]]:
    """Raw rows from a text (``order n``) or JSON (``{"order", "table"}``) file."""
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if text.lstrip().startswith(("{", "[")):
        try:
            obj = json.loads(text)
        except json.JSONDecodeError as exc:
            raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None
        return _rows_from_obj(obj, str(path))
    try:
        rows = parse_text(text)
    except ParseError as exc:
        raise InputError(f"{path}: {exc}") from None
    return _rows_from_obj(rows, str(path))


def load_json(path: Path):
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    try:
        return json.loads(text)
    except json.JSONDecodeError as exc:
        raise InputError(f"{path}: line {exc.lineno}, column {exc.colno}: {exc.msg}") from None


def read_input(path: str | Path) -> tuple[list[list[int]], dict | None]:
    """Rows of the semigroup plus the raw instance object (None for a bare semigroup file)."""
    path = Path(path)
    try:
        text = path.read_text(encoding="utf-8")
    except OSError as exc:
        raise InputError(f"cannot read {path}: {exc.strerror}") from None
    if text.lstrip().startswith("{"):
        obj = load_json(path)
        if isinstance(obj, dict) and "semigroup" in obj:
            sg = obj["semigroup"]
            if isinstance(sg, str):
                rows = read_rows((path.parent / sg))
            else:
                rows = _rows_from_obj(sg, f"{path}: semigroup")
            return rows, obj
    return read_rows(path), None


def parse_mu(values, S: CayleyTable) -> SFunc:
    """Scalars in any conductor dividing the session conductor of S."""
    fld = field(conductor_for(S))
    if not isinstance(values, list) or len(values) != S.order:
        raise InputError(f"mu must be a list of {S.order} scalars")
    out = []
    for i, v in enumerate(values):
        try:
            x = scalar_from_json(v)
        except (ValueError, TypeError, ZeroDivisionError) as exc:
            raise InputError(f"mu[{i}]: {exc}") from None
        out.append(fld.embed(x))  # ConductorMismatch propagates: not admissible
    return SFunc(out, fld)


def parse_sigma(values, S: CayleyTable) -> tuple[int, ...]:
    if not isinstance(values, list) or len(values) != S.order or not all(
        isinstance(v, int) and not isinstance(v, bool) and 0 <= v < S.order for v in values
    ):
        raise InputError(f"sigma must be a list of {S.order} element indices")
    return tuple(values)


def load_instance(path: str | Path) -> InstanceSpec:
    """Validated table plus optional sigma / mu (None means: expand all).

    Raises InputError for malformed files; semigroup errors (AssocFail) and
    ConductorMismatch propagate for the caller to classify as invalid structure.
    """
    rows, obj = read_input(path)
    S = validate(rows)
    sigma = mu = None
    if obj is not None:
        if obj.get("sigma") is not None:
            sigma = parse_sigma(obj["sigma"], S)
        if obj.get("mu") is not None:
            mu = parse_mu(obj["mu"], S)
    return InstanceSpec(S, sigma, mu, str(path))


__all__ = [
    "ConductorMismatch",
    "InputError",
    "InstanceSpec",
    "load_instance",
    "load_json",
    "read_input",
    "read_rows",
]
