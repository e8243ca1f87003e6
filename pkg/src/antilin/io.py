"""Operator file schema and canonical JSON.

Operator files carry the schema tag ``antilin.operator/v1`` and one of three
kinds:

* ``antilinear``:  ``dims = [rows, cols]`` and ``entries`` as a row-major
  list of ``[re, im]`` pairs for the canonical matrix,
* ``conjugation``: same layout, validated as a conjugation on load,
* ``block``: ``dims = [n, m]`` and ``blocks`` with the four named canonical
  matrices ``a`` (n x n), ``b`` (n x m), ``f`` (m x n), ``e`` (m x m).

``meta`` holds ``{seed, generator, description}``.  Complex numbers are
stored as [re, im] pairs to avoid any locale or formatting ambiguity.

Canonical JSON (sorted keys, floats rendered with %.17g, no whitespace) is
used both for emitted files and for content digests, so identical content
always produces identical bytes.
"""

from __future__ import annotations

import hashlib
import json
import math
from dataclasses import dataclass
from typing import Optional, Union

import numpy as np

from .antiop import AntilinearOperator, Conjugation, make_conjugation
from .blockops import BlockAntilinearMatrix
from .errors import AntilinError, InvalidOperatorFile

SCHEMA = "antilin.operator/v1"


def _canon_scalar(x) -> str:
    if isinstance(x, bool):
        return "true" if x else "false"
    if isinstance(x, (int, np.integer)):
        return str(int(x))
    if isinstance(x, (float, np.floating)):
        v = float(x)
        if not math.isfinite(v):
            raise ValueError("non-finite number in canonical JSON")
        return f"{v:.17g}"
    if isinstance(x, str):
        return json.dumps(x, ensure_ascii=True)
    if x is None:
        return "null"
    raise TypeError(f"unsupported JSON scalar type {type(x)!r}")


def canonical_json(obj) -> str:
    """Deterministic JSON text: sorted keys, %.17g floats, no whitespace."""
    if isinstance(obj, dict):
        items = sorted(obj.items())
        inner = ",".join(
            f"{json.dumps(str(k), ensure_ascii=True)}:{canonical_json(v)}"
            for k, v in items
        )
        return "{" + inner + "}"
    if isinstance(obj, (list, tuple)):
        return "[" + ",".join(canonical_json(v) for v in obj) + "]"
    return _canon_scalar(obj)


def entries_from_matrix(a) -> list:
    """Row-major [re, im] pairs of a complex matrix."""
    a = np.asarray(a, dtype=complex)
    return [[float(z.real), float(z.imag)] for z in a.ravel(order="C")]


def matrix_from_entries(entries, rows: int, cols: int, where: str) -> np.ndarray:
    if not isinstance(entries, list) or len(entries) != rows * cols:
        raise InvalidOperatorFile(
            f"{where}: expected {rows * cols} [re, im] entries, got "
            f"{len(entries) if isinstance(entries, list) else type(entries).__name__}"
        )
    flat = np.empty(rows * cols, dtype=complex)
    for i, pair in enumerate(entries):
        if (
            not isinstance(pair, list)
            or len(pair) != 2
            or not all(isinstance(p, (int, float)) and not isinstance(p, bool) for p in pair)
        ):
            raise InvalidOperatorFile(f"{where}: entry {i} is not an [re, im] pair")
        re, im = float(pair[0]), float(pair[1])
        if not (math.isfinite(re) and math.isfinite(im)):
            raise InvalidOperatorFile(f"{where}: entry {i} is not finite")
        flat[i] = complex(re, im)
    return flat.reshape(rows, cols)


LoadedObject = Union[AntilinearOperator, Conjugation, BlockAntilinearMatrix]


@dataclass(frozen=True)
class LoadedOperator:
    kind: str
    obj: LoadedObject
    meta: dict
    digest: str
    payload: dict


def _require_dims(payload: dict) -> tuple[int, int]:
    dims = payload.get("dims")
    if (
        not isinstance(dims, list)
        or len(dims) != 2
        or not all(isinstance(d, int) and not isinstance(d, bool) and d >= 1 for d in dims)
    ):
        raise InvalidOperatorFile("dims must be a pair of positive integers")
    return int(dims[0]), int(dims[1])


def parse_payload(payload: dict) -> LoadedOperator:
    """Validate a parsed operator-file dict and build the operator."""
    if not isinstance(payload, dict):
        raise InvalidOperatorFile("top level must be a JSON object")
    if payload.get("schema") != SCHEMA:
        raise InvalidOperatorFile(f"schema must be exactly {SCHEMA!r}")
    kind = payload.get("kind")
    meta = payload.get("meta", {})
    if not isinstance(meta, dict):
        raise InvalidOperatorFile("meta must be an object")

    if kind in ("antilinear", "conjugation"):
        rows, cols = _require_dims(payload)
        mat = matrix_from_entries(payload.get("entries"), rows, cols, "entries")
        if kind == "conjugation":
            try:
                obj: LoadedObject = make_conjugation(mat)
            except AntilinError as exc:
                raise InvalidOperatorFile(f"invalid conjugation: {exc}") from exc
        else:
            obj = AntilinearOperator(mat)
    elif kind == "block":
        n, m = _require_dims(payload)
        blocks = payload.get("blocks")
        if not isinstance(blocks, dict) or sorted(blocks) != ["a", "b", "e", "f"]:
            raise InvalidOperatorFile("block kind requires blocks a, b, f, e")
        shapes = {"a": (n, n), "b": (n, m), "f": (m, n), "e": (m, m)}
        mats = {
            name: matrix_from_entries(blocks[name], *shape, where=f"blocks.{name}")
            for name, shape in shapes.items()
        }
        obj = BlockAntilinearMatrix(
            a=AntilinearOperator(mats["a"]),
            b=AntilinearOperator(mats["b"]),
            f=AntilinearOperator(mats["f"]),
            e=AntilinearOperator(mats["e"]),
        )
    else:
        raise InvalidOperatorFile(f"unknown kind {kind!r}")

    digest = hashlib.sha256(canonical_json(payload).encode("ascii")).hexdigest()
    return LoadedOperator(kind=kind, obj=obj, meta=meta, digest=digest, payload=payload)


def load_operator(path: str) -> LoadedOperator:
    """Load and validate an operator file from disk."""
    try:
        with open(path, "r", encoding="utf-8") as fh:
            payload = json.load(fh)
    except OSError as exc:
        raise InvalidOperatorFile(f"cannot read {path}: {exc}") from exc
    except json.JSONDecodeError as exc:
        raise InvalidOperatorFile(f"{path} is not valid JSON: {exc}") from exc
    return parse_payload(payload)


def dump_payload(payload: dict, path: Optional[str] = None) -> str:
    """Canonical text of an operator payload, optionally written to disk."""
    text = canonical_json(payload) + "\n"
    if path is not None:
        with open(path, "w", encoding="utf-8") as fh:
            fh.write(text)
    return text
