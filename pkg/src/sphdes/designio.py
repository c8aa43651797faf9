"""Reading and writing point-set files.

Two plain-text layouts are understood, matching the published design
catalogs:

``triples``
    one point per line, ``x y z`` separated by whitespace;
``flat``
    one coordinate per line in ``x, y, z, x, y, z, ...`` order.

Lines starting with ``#`` and blank lines are ignored; CRLF line endings and
trailing whitespace are fine. The layout is detected from the number of
fields per data line unless given explicitly.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .errors import DesignFormatError
from .sphere import Design

__all__ = ["DesignFile", "FORMATS", "parse", "read_design_file", "write", "read_values"]

FORMATS = ("triples", "flat")
NORM_TOL = 1e-6


@dataclass(frozen=True)
class DesignFile:
    format: str
    comments: tuple[str, ...]
    design: Design


def _tokenize(text: str):
    """Yield ``(line_no, [(column, token), ...])`` for data lines; collect comments."""
    comments = []
    rows = []
    for line_no, raw in enumerate(text.splitlines(), start=1):
        line = raw.rstrip()
        stripped = line.lstrip()
        if not stripped:
            continue
        if stripped.startswith("#"):
            comments.append(stripped)
            continue
        fields = []
        col = 0
        for tok in line.split():
            col = line.index(tok, col)
            fields.append((col + 1, tok))
            col += len(tok)
        rows.append((line_no, fields))
    return rows, comments


def _number(tok: str, line_no: int, col: int) -> float:
    try:
        value = float(tok)
    except ValueError:
        raise DesignFormatError(
            f"line {line_no}, column {col}: {tok!r} is not a number"
        ) from None
    if not np.isfinite(value):
        raise DesignFormatError(f"line {line_no}, column {col}: non-finite value {tok!r}")
    return value


def read_design_file(text: str, fmt: str | None = None, label: str | None = None) -> DesignFile:
    """Parse ``text`` into a :class:`DesignFile`.

    ``fmt`` forces ``"triples"`` or ``"flat"``; ``None`` auto-detects. Points
    whose norm is within 1e-6 of 1 are normalized; anything further off the
    sphere is rejected.
    """
    if fmt is not None and fmt not in FORMATS:
        raise DesignFormatError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    rows, comments = _tokenize(text)
    if not rows:
        raise DesignFormatError("no data lines found")

    if fmt is None:
        first_count = len(rows[0][1])
        if first_count not in (1, 3):
            raise DesignFormatError(
                f"line {rows[0][0]}: expected 1 or 3 fields per line, found {first_count}"
            )
        for line_no, fields in rows:
            if len(fields) != first_count:
                raise DesignFormatError(
                    f"line {line_no}: found {len(fields)} fields where earlier lines have "
                    f"{first_count}; mixed layouts are not allowed"
                )
        fmt = "triples" if first_count == 3 else "flat"
    elif fmt == "triples":
        for line_no, fields in rows:
            if len(fields) != 3:
                raise DesignFormatError(
                    f"line {line_no}: triples format needs 3 fields, found {len(fields)}"
                )

    values = []
    origin = []
    for line_no, fields in rows:
        for col, tok in fields:
            values.append(_number(tok, line_no, col))
            origin.append(line_no)
    if len(values) % 3:
        raise DesignFormatError(
            f"{len(values)} coordinates is not a multiple of 3 ({fmt} format)"
        )
    xyz = np.array(values, dtype=float).reshape(-1, 3)
    norms = np.sqrt(np.einsum("ij,ij->i", xyz, xyz))
    bad = np.flatnonzero(np.abs(norms - 1.0) > NORM_TOL)
    if bad.size:
        i = int(bad[0])
        raise DesignFormatError(
            f"point {i + 1} (line {origin[3 * i]}) has norm {norms[i]:.9g}, "
            f"more than {NORM_TOL:g} from the unit sphere"
        )
    return DesignFile(fmt, tuple(comments), Design.from_vectors(xyz, label=label))


def parse(text: str, fmt: str | None = None, label: str | None = None) -> Design:
    return read_design_file(text, fmt=fmt, label=label).design


def write(
    design: Design,
    precision: int = 17,
    fmt: str = "triples",
    comments=(),
) -> str:
    """Serialize with ``precision`` significant digits (17 round-trips doubles exactly)."""
    if not 6 <= precision <= 17:
        raise ValueError("precision must be between 6 and 17 significant digits")
    if fmt not in FORMATS:
        raise ValueError(f"unknown format {fmt!r}; expected one of {FORMATS}")
    spec = f".{precision}g"
    out = []
    for c in comments:
        c = str(c)
        out.append(c if c.startswith("#") else f"# {c}")
    for x, y, z in design.xyz:
        if fmt == "triples":
            out.append(f"{x:{spec}} {y:{spec}} {z:{spec}}")
        else:
            out.extend((f"{x:{spec}}", f"{y:{spec}}", f"{z:{spec}}"))
    return "\n".join(out) + "\n"


def read_values(text: str) -> np.ndarray:
    """Whitespace-separated numbers (observations, coefficients); ``#`` comments skipped."""
    rows, _ = _tokenize(text)
    vals = [_number(tok, line_no, col) for line_no, fields in rows for col, tok in fields]
    return np.array(vals, dtype=float)
