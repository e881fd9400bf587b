"""CSV / JSON input and output with deterministic number formatting.

All floating-point numbers are written with 17 significant digits, which
round-trips 64-bit floats exactly; given identical inputs every emitter
here produces byte-identical text.
"""

from __future__ import annotations

import csv
import io
import json

import numpy as np

from .exceptions import ParseError
from .grids import DependenceSurface
from .tail import TailCurve

__all__ = [
    "fmt17",
    "json_dumps",
    "read_xy_csv",
    "surface_to_csv",
    "surface_from_csv",
    "surface_to_json",
    "tail_curve_to_csv",
    "pairs_to_csv",
]


def fmt17(x: float) -> str:
    """17-significant-digit decimal form of a float (round-trip safe)."""
    return format(float(x), ".17g")


def json_dumps(obj) -> str:
    """Compact JSON with floats rendered through :func:`fmt17`.

    The stdlib encoder uses ``repr`` for floats; this walker keeps the
    serialisation contract explicit and byte-stable.
    """
    out: list[str] = []
    _write_json(obj, out)
    return "".join(out)


def _write_json(obj, out: list[str]) -> None:
    if obj is None:
        out.append("null")
    elif isinstance(obj, bool) or isinstance(obj, np.bool_):
        out.append("true" if obj else "false")
    elif isinstance(obj, (int, np.integer)):
        out.append(str(int(obj)))
    elif isinstance(obj, (float, np.floating)):
        out.append(fmt17(obj))
    elif isinstance(obj, str):
        out.append(json.dumps(obj))
    elif isinstance(obj, dict):
        out.append("{")
        for i, (key, val) in enumerate(obj.items()):
            if i:
                out.append(", ")
            out.append(json.dumps(str(key)))
            out.append(": ")
            _write_json(val, out)
        out.append("}")
    elif isinstance(obj, (list, tuple, np.ndarray)):
        out.append("[")
        for i, val in enumerate(obj):
            if i:
                out.append(", ")
            _write_json(val, out)
        out.append("]")
    else:
        raise TypeError(f"cannot serialise {type(obj)!r}")


def read_xy_csv(path: str, xcol: str, ycol: str) -> tuple[list[float], list[float]]:
    """Read two columns from a headered CSV.

    Cells that are empty or not parseable as numbers become NaN so that
    the sample constructor can drop the pair; a missing header or missing
    columns raise :class:`ParseError`.
    """
    with open(path, "r", encoding="utf-8", newline="") as fh:
        reader = csv.DictReader(fh)
        if reader.fieldnames is None:
            raise ParseError(f"{path}: missing header row")
        if xcol not in reader.fieldnames or ycol not in reader.fieldnames:
            raise ParseError(
                f"{path}: columns {xcol!r}/{ycol!r} not found in header {reader.fieldnames}"
            )
        xs: list[float] = []
        ys: list[float] = []
        for row in reader:
            xs.append(_cell_to_float(row.get(xcol)))
            ys.append(_cell_to_float(row.get(ycol)))
    return xs, ys


def _cell_to_float(cell) -> float:
    if cell is None:
        return float("nan")
    cell = cell.strip()
    if not cell:
        return float("nan")
    try:
        return float(cell)
    except ValueError:
        return float("nan")


SURFACE_CSV_HEADER = "axis_x,axis_y,value,degenerate"


def surface_to_csv(surface: DependenceSurface) -> str:
    """Long-format CSV, one row per cell in row-major order."""
    lines = [SURFACE_CSV_HEADER]
    ax, ay = surface.axis_x, surface.axis_y
    vals, degen = surface.values, surface.degenerate
    for i in range(ax.size):
        xi = fmt17(ax[i])
        for j in range(ay.size):
            lines.append(f"{xi},{fmt17(ay[j])},{fmt17(vals[i, j])},{1 if degen[i, j] else 0}")
    return "\n".join(lines) + "\n"


def surface_from_csv(text: str, measure: str = "", n: int = 0) -> DependenceSurface:
    """Rebuild a surface from its long-format CSV."""
    reader = csv.reader(io.StringIO(text))
    header = next(reader, None)
    if header is None or [h.strip() for h in header] != SURFACE_CSV_HEADER.split(","):
        raise ParseError(f"unexpected surface CSV header: {header}")
    rows = [(float(a), float(b), float(v), bool(int(d))) for a, b, v, d in reader]
    if not rows:
        raise ParseError("surface CSV has no cells")
    axis_y = []
    for _, b, _, _ in rows:
        if axis_y and b == axis_y[0]:
            break
        axis_y.append(b)
    ny = len(axis_y)
    if len(rows) % ny:
        raise ParseError("surface CSV is not rectangular")
    nx = len(rows) // ny
    axis_x = np.array([rows[i * ny][0] for i in range(nx)])
    values = np.array([r[2] for r in rows]).reshape(nx, ny)
    degenerate = np.array([r[3] for r in rows], dtype=bool).reshape(nx, ny)
    return DependenceSurface(measure, axis_x, np.array(axis_y), values, degenerate, n)


def surface_to_json(surface: DependenceSurface) -> str:
    return json_dumps(
        {
            "measure": surface.measure,
            "axis_x": surface.axis_x,
            "axis_y": surface.axis_y,
            "values": surface.values,
            "degenerate": surface.degenerate,
        }
    )


def tail_curve_to_csv(curve: TailCurve) -> str:
    lines = ["side,level,qcor,lambda,n_corner"]
    for i in range(curve.levels.size):
        lines.append(
            f"{curve.side},{fmt17(curve.levels[i])},{fmt17(curve.qcor_values[i])},"
            f"{fmt17(curve.lambda_values[i])},{int(curve.corner_counts[i])}"
        )
    return "\n".join(lines) + "\n"


def pairs_to_csv(columns: dict[str, np.ndarray]) -> str:
    """CSV from named equal-length float columns (simulate output)."""
    names = list(columns)
    arrays = [np.asarray(columns[c]) for c in names]
    lines = [",".join(names)]
    for i in range(arrays[0].shape[0]):
        lines.append(",".join(fmt17(a[i]) for a in arrays))
    return "\n".join(lines) + "\n"
