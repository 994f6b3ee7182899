"""Flat-file emission: fixed-precision JSON and CSV, written atomically."""

from __future__ import annotations

import csv
import io
import json
import math
import os
import sys
import tempfile
from typing import Iterable, Optional, Sequence

import numpy as np

PRECISION = 17


def format_float(x: float, precision: int = PRECISION) -> str:
    x = float(x)
    if not math.isfinite(x):
        raise ValueError(f"cannot serialize non-finite value {x!r}")
    return f"{x:.{precision}g}"


def dumps(obj, precision: int = PRECISION, indent: int = 2, _level: int = 0) -> str:
    """JSON text with every float written to ``precision`` significant digits."""
    pad = " " * (indent * (_level + 1))
    end = " " * (indent * _level)
    if isinstance(obj, dict):
        if not obj:
            return "{}"
        items = [
            f"{pad}{json.dumps(str(k))}: {dumps(v, precision, indent, _level + 1)}"
            for k, v in obj.items()
        ]
        return "{\n" + ",\n".join(items) + "\n" + end + "}"
    if isinstance(obj, (list, tuple, np.ndarray)):
        if len(obj) == 0:
            return "[]"
        items = [f"{pad}{dumps(v, precision, indent, _level + 1)}" for v in obj]
        return "[\n" + ",\n".join(items) + "\n" + end + "]"
    if isinstance(obj, (bool, np.bool_)):
        return "true" if obj else "false"
    if isinstance(obj, (int, np.integer)):
        return str(int(obj))
    if isinstance(obj, (float, np.floating)):
        return format_float(obj, precision)
    if obj is None or isinstance(obj, str):
        return json.dumps(obj)
    raise TypeError(f"cannot serialize {type(obj).__name__}")


def csv_text(header: Sequence[str], rows: Iterable[Sequence], precision: int = PRECISION) -> str:
    buf = io.StringIO()
    writer = csv.writer(buf, lineterminator="\n")
    writer.writerow(header)
    for row in rows:
        writer.writerow(
            [format_float(v, precision) if isinstance(v, (float, np.floating)) else v for v in row]
        )
    return buf.getvalue()


def write_text(text: str, path: Optional[str]) -> None:
    """Write ``text`` to ``path`` via temp-then-rename, or to stdout when ``path`` is None."""
    if path is None:
        sys.stdout.write(text)
        return
    directory = os.path.dirname(os.path.abspath(path))
    fd, tmp = tempfile.mkstemp(dir=directory, prefix=".tmp-", suffix=os.path.basename(path))
    try:
        with os.fdopen(fd, "w", newline="") as fh:
            fh.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def read_curve_csv(path: str) -> tuple[np.ndarray, np.ndarray, np.ndarray]:
    """Read a ``phi,zeta,p`` CSV as three float arrays."""
    with open(path, newline="") as fh:
        reader = csv.DictReader(fh)
        missing = {"phi", "zeta", "p"} - set(reader.fieldnames or ())
        if missing:
            raise ValueError(f"{path}: missing columns {sorted(missing)}")
        rows = [(float(r["phi"]), float(r["zeta"]), float(r["p"])) for r in reader]
    if not rows:
        raise ValueError(f"{path}: no data rows")
    data = np.array(rows)
    return data[:, 0], data[:, 1], data[:, 2]
