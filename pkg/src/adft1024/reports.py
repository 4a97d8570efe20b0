"""CSV/JSON emission and re-reading for every artifact the CLI produces.

All writers go through an atomic write-temp-then-rename so partially
written files never appear under the final name.  Numbers are printed with
17 significant digits, enough to round-trip float64 exactly.
"""

from __future__ import annotations

import csv
import json
import os
import tempfile
from pathlib import Path

import numpy as np

from .factors import SparseFactor

FLOAT_FMT = "%.17g"
MATRIX_HEADER = ("row", "col", "re", "im")


def _atomic_write_text(path: Path, text: str) -> None:
    path = Path(path)
    path.parent.mkdir(parents=True, exist_ok=True)
    fd, tmp = tempfile.mkstemp(dir=path.parent, prefix=path.name, suffix=".tmp")
    try:
        with os.fdopen(fd, "w", encoding="utf-8", newline="") as handle:
            handle.write(text)
        os.replace(tmp, path)
    except BaseException:
        if os.path.exists(tmp):
            os.unlink(tmp)
        raise


def write_sparse_factor_csv(path: Path, factor: SparseFactor) -> None:
    """One line per nonzero: row,col,re,im."""
    lines = [",".join(MATRIX_HEADER)]
    for r, c, v in factor.entries:
        lines.append(f"{r},{c},{FLOAT_FMT % v.real},{FLOAT_FMT % v.imag}")
    _atomic_write_text(path, "\n".join(lines) + "\n")


def write_dense_matrix_csv(path: Path, matrix: np.ndarray) -> None:
    """One line per entry: row,col,re,im (row-major order)."""
    matrix = np.asarray(matrix, dtype=complex)
    nrows, ncols = matrix.shape
    out = [",".join(MATRIX_HEADER)]
    re = matrix.real
    im = matrix.imag
    for r in range(nrows):
        re_row = re[r]
        im_row = im[r]
        out.extend(f"{r},{c},{FLOAT_FMT % re_row[c]},{FLOAT_FMT % im_row[c]}"
                   for c in range(ncols))
    _atomic_write_text(path, "\n".join(out) + "\n")


def read_matrix_csv(path: Path, size: int | None = None) -> np.ndarray:
    """Rebuild a dense complex matrix from row,col,re,im lines.

    Works for both the sparse and the dense layout; unlisted cells are zero.
    """
    rows, cols, values = [], [], []
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        if tuple(header) != MATRIX_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        for rec in reader:
            rows.append(int(rec[0]))
            cols.append(int(rec[1]))
            values.append(complex(float(rec[2]), float(rec[3])))
    n = size if size is not None else max(max(rows), max(cols)) + 1
    out = np.zeros((n, n), dtype=complex)
    out[rows, cols] = values
    return out


def write_table_csv(path: Path, header: tuple[str, ...], columns) -> None:
    """Write parallel columns under a header row."""
    columns = [np.asarray(c) for c in columns]
    if len(columns) != len(header):
        raise ValueError("one column per header field required")
    lines = [",".join(header)]
    for values in zip(*columns):
        lines.append(",".join(
            str(v) if isinstance(v, (int, np.integer)) else FLOAT_FMT % v
            for v in values))
    _atomic_write_text(path, "\n".join(lines) + "\n")


def read_table_csv(path: Path) -> dict[str, np.ndarray]:
    """Read a column-oriented CSV back into arrays keyed by header name."""
    with open(path, newline="") as handle:
        reader = csv.reader(handle)
        header = next(reader)
        rows = [rec for rec in reader]
    out = {}
    for i, name in enumerate(header):
        col = [row[i] for row in rows]
        try:
            out[name] = np.array([int(v) for v in col])
        except ValueError:
            out[name] = np.array([float(v) for v in col])
    return out


def write_json(path: Path, payload) -> None:
    _atomic_write_text(path, json.dumps(payload, indent=2, sort_keys=True) + "\n")


def read_json(path: Path):
    with open(path, encoding="utf-8") as handle:
        return json.load(handle)
