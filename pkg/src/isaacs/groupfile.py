"""JSON group files.

Two kinds are accepted::

    {"kind": "cayley", "name": "D8", "order": 8, "mul": [[...], ...]}
    {"kind": "perm", "name": "S4", "degree": 4, "generators": [[1, 0, 2, 3], ...]}

Permutation groups are expanded to Cayley tables (products apply the
left factor first).
"""
from __future__ import annotations

import json
from pathlib import Path

import numpy as np

from .group import CayleyGroup, GroupFormatError
from .perm import PermutationGroup


def group_from_dict(doc: dict) -> CayleyGroup:
    if not isinstance(doc, dict) or "kind" not in doc:
        raise GroupFormatError('group file must be an object with a "kind" field')
    kind = doc["kind"]
    name = str(doc.get("name", ""))
    if kind == "cayley":
        if "mul" not in doc:
            raise GroupFormatError('cayley group needs a "mul" table')
        mul = np.asarray(doc["mul"])
        if mul.ndim != 2:
            raise GroupFormatError("mul must be a square table")
        if "order" in doc and int(doc["order"]) != len(mul):
            raise GroupFormatError(f"order {doc['order']} does not match a table with {len(mul)} rows")
        return CayleyGroup(mul, name=name)
    if kind == "perm":
        if "degree" not in doc or "generators" not in doc:
            raise GroupFormatError('perm group needs "degree" and "generators"')
        try:
            P = PermutationGroup(int(doc["degree"]), doc["generators"])
        except ValueError as exc:
            raise GroupFormatError(str(exc)) from exc
        return P.to_cayley(name)
    raise GroupFormatError(f"unknown group kind {kind!r}")


def group_to_dict(G: CayleyGroup) -> dict:
    return {"kind": "cayley", "name": G.name, "order": G.order, "mul": G.mul.tolist()}


def load_group(path: str | Path) -> CayleyGroup:
    try:
        doc = json.loads(Path(path).read_text())
    except json.JSONDecodeError as exc:
        raise GroupFormatError(f"{path}: invalid JSON ({exc})") from exc
    return group_from_dict(doc)


def save_group(G: CayleyGroup, path: str | Path) -> None:
    Path(path).write_text(json.dumps(group_to_dict(G), separators=(",", ":")) + "\n")
