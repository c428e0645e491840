"""Serialization of sweep tables and the post-emit audit."""

from __future__ import annotations

import io
import math
import os
from typing import Sequence

PRECISION_ENV = "CRWSCATTER_PRECISION"
AUDIT_TOL = 1e-12


def precision() -> int:
    return int(os.environ.get(PRECISION_ENV, "17"))


def _fmt(x, digits: int) -> str:
    return format(float(x), f".{digits}g")


def to_csv(columns: Sequence[str], rows: Sequence[Sequence[float]], comments: Sequence[str] = ()) -> str:
    """Header row then one line per row; LF endings; ``%.17g`` floats by default."""
    digits = precision()
    buf = io.StringIO()
    for line in comments:
        buf.write(f"# {line}\n")
    buf.write(",".join(columns) + "\n")
    for row in rows:
        buf.write(",".join(_fmt(x, digits) for x in row) + "\n")
    return buf.getvalue()


def to_json(columns: Sequence[str], rows: Sequence[Sequence[float]]) -> str:
    """Array of row objects in column order; non-finite values become ``null``."""
    digits = precision()

    def num(x):
        return _fmt(x, digits) if math.isfinite(x) else "null"

    body = ",\n".join(
        "  {" + ", ".join(f'"{c}": {num(x)}' for c, x in zip(columns, row)) + "}" for row in rows
    )
    return "[\n" + body + "\n]\n" if rows else "[]\n"


def render(columns, rows, fmt: str = "csv", comments: Sequence[str] = ()) -> str:
    if fmt == "csv":
        return to_csv(columns, rows, comments)
    if fmt == "json":
        return to_json(columns, rows)
    raise ValueError(f"unknown format {fmt!r}")


def audit_rows(rows) -> None:
    """Check every scattering row: T, R >= 0, T + R <= 1, and T + R = 1 where Im V = 0."""
    for i, row in enumerate(rows):
        big_t, big_r, total = row.big_t, row.big_r, row.total
        problems = []
        if big_t < 0 or big_r < 0:
            problems.append("negative coefficient")
        if total > 1 + AUDIT_TOL:
            problems.append("T + R exceeds 1")
        if row.im_v == 0 and abs(total - 1) > AUDIT_TOL:
            problems.append("T + R != 1 with real potential")
        if row.im_v > 0:
            problems.append("Im V > 0")
        if problems:
            raise AssertionError(f"row {i} (k={row.k!r}, E_k={row.energy!r}) fails audit: {'; '.join(problems)}")
