"""Canonical JSON format for complexes and related artifacts.

A complex file is ``{"dim": d, "facets": [[v, ...], ...], "attrs": {...}}``
with facets sorted ascending, keys sorted, and a trailing newline.  The
``attrs`` key is omitted when empty.  Writing then reading is the identity.
"""
from __future__ import annotations

import hashlib
import json
from pathlib import Path

from .complex import SimplicialComplex


def complex_to_dict(K: SimplicialComplex, attrs: dict | None = None) -> dict:
    out = {"dim": K.dim, "facets": [list(f) for f in K.facets]}
    if attrs:
        out["attrs"] = attrs
    return out


def complex_from_dict(data: dict) -> tuple[SimplicialComplex, dict]:
    K = SimplicialComplex(int(data["dim"]), (tuple(int(v) for v in f) for f in data["facets"]))
    return K, dict(data.get("attrs", {}))


def canonical_json(obj) -> str:
    return json.dumps(obj, sort_keys=True, separators=(", ", ": ")) + "\n"


def dumps_complex(K: SimplicialComplex, attrs: dict | None = None) -> str:
    return canonical_json(complex_to_dict(K, attrs))


def loads_complex(text: str) -> tuple[SimplicialComplex, dict]:
    return complex_from_dict(json.loads(text))


def write_complex(path, K: SimplicialComplex, attrs: dict | None = None) -> None:
    Path(path).write_text(dumps_complex(K, attrs))


def read_complex(path) -> tuple[SimplicialComplex, dict]:
    return loads_complex(Path(path).read_text())


def digest(text: str) -> str:
    return hashlib.sha256(text.encode()).hexdigest()


def coloring_to_attrs(colors: dict[int, int]) -> dict:
    return {"colors": {str(v): int(c) for v, c in sorted(colors.items())}}


def coloring_from_attrs(attrs: dict) -> dict[int, int]:
    return {int(v): int(c) for v, c in attrs.get("colors", {}).items()}
