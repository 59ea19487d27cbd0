"""Deterministic CSV and JSON emission.

Floats are written as their shortest round-trip decimal (Python repr), so a
file regenerated with identical inputs is byte-identical and every value
parses back exactly.  Complex quantities are split into Re_/Im_ column
pairs in CSV and {"re": .., "im": ..} objects in JSON.  Each CSV starts
with one comment line recording the tool version and the run parameters.
"""

from __future__ import annotations

import dataclasses
import enum
import io
import json
from typing import Any, Mapping, Sequence

import numpy as np

from ._version import __version__

__all__ = [
    "format_float",
    "comment_line",
    "render_csv",
    "write_text",
    "to_jsonable",
    "render_json",
]


def format_float(v: float) -> str:
    return repr(float(v))


def comment_line(fields: Mapping[str, Any]) -> str:
    parts = [f"plasmaskin {__version__}"]
    parts += [f"{k}={v}" for k, v in fields.items()]
    return "# " + " ".join(parts)


def _cell(v: Any) -> str:
    if isinstance(v, (complex, np.complexfloating)):
        raise TypeError("split complex values into Re_/Im_ columns first")
    if isinstance(v, (float, np.floating)):
        return format_float(v)
    if isinstance(v, (int, np.integer)):
        return str(int(v))
    return str(v)


def render_csv(columns: Mapping[str, Sequence[Any]],
               meta: Mapping[str, Any]) -> str:
    """Comment line, header row, data rows; '\\n' newlines throughout."""
    names = list(columns)
    if not names:
        raise ValueError("no columns to write")
    n = len(columns[names[0]])
    for name in names:
        if len(columns[name]) != n:
            raise ValueError(f"column {name!r} length mismatch")
    buf = io.StringIO()
    buf.write(comment_line(meta) + "\n")
    buf.write(",".join(names) + "\n")
    for i in range(n):
        buf.write(",".join(_cell(columns[name][i]) for name in names) + "\n")
    return buf.getvalue()


def to_jsonable(obj: Any) -> Any:
    """Recursively convert package values into plain JSON types."""
    if isinstance(obj, (complex, np.complexfloating)):
        return {"re": float(obj.real), "im": float(obj.imag)}
    if isinstance(obj, (float, np.floating)):
        return float(obj)
    if isinstance(obj, (int, np.integer)):
        return int(obj)
    if isinstance(obj, enum.Enum):
        return obj.value
    if isinstance(obj, np.ndarray):
        return [to_jsonable(v) for v in obj.tolist()]
    if dataclasses.is_dataclass(obj) and not isinstance(obj, type):
        out = {}
        for f in dataclasses.fields(obj):
            v = getattr(obj, f.name)
            if callable(v) and not isinstance(v, (int, float, complex)):
                continue  # evaluator closures have no serial form
            out[f.name] = to_jsonable(v)
        return out
    if isinstance(obj, Mapping):
        return {str(k): to_jsonable(v) for k, v in obj.items()}
    if isinstance(obj, (list, tuple)):
        return [to_jsonable(v) for v in obj]
    return obj


def render_json(obj: Any) -> str:
    return json.dumps(to_jsonable(obj), indent=2, sort_keys=True) + "\n"


def write_text(path: str | None, text: str) -> None:
    """Write to a file, or stdout when path is None or '-'."""
    if path is None or path == "-":
        import sys
        sys.stdout.write(text)
        return
    with open(path, "w", encoding="utf-8", newline="") as fh:
        fh.write(text)
