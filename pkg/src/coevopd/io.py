"""CSV time series and snapshot files.

Grid-text snapshot layout::

    <side> <step>
    <side lines of side characters from C, D, A>
    weights                      (optional section)
    <4 * side**2 lines, one weight each, in edge storage order>

Image snapshots are binary PPM (P6), one pixel per agent, C blue, D red,
A green.
"""

from __future__ import annotations

import csv
import io as _io
from pathlib import Path

import numpy as np

from .game import Strategy
from .lattice import Lattice
from .records import Snapshot, TimeSeries

CSV_HEADER = ("step", "frac_c", "frac_d", "frac_a")
COLORS = {Strategy.C: (0, 0, 255), Strategy.D: (255, 0, 0), Strategy.A: (0, 255, 0)}
_CHARS = "CDA"


class SnapshotFormatError(ValueError):
    pass


def format_timeseries_csv(series: TimeSeries) -> str:
    buf = _io.StringIO()
    buf.write(",".join(CSV_HEADER) + "\n")
    for step, (fc, fd, fa) in zip(series.steps, series.fractions):
        buf.write(f"{step},{fc:.6f},{fd:.6f},{fa:.6f}\n")
    return buf.getvalue()


def write_timeseries_csv(series: TimeSeries, path) -> None:
    Path(path).write_text(format_timeseries_csv(series), encoding="ascii")


def read_timeseries_csv(path) -> TimeSeries:
    series = TimeSeries()
    with open(path, newline="", encoding="ascii") as fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if tuple(header or ()) != CSV_HEADER:
            raise ValueError(f"{path}: unexpected header {header!r}")
        for row in reader:
            series.add_row(int(row[0]), float(row[1]), float(row[2]), float(row[3]))
    return series


def lattice_snapshot(lattice: Lattice, step: int, with_weights: bool = True) -> Snapshot:
    weights = lattice.weights.copy() if with_weights else None
    return Snapshot(lattice.side, step, lattice.strategies.copy(), weights)


def snapshot_to_lattice(snap: Snapshot) -> Lattice:
    weights = snap.weights if snap.weights is not None else np.ones(4 * snap.side ** 2)
    return Lattice(snap.side, snap.grid.copy(), np.array(weights, dtype=np.float64))


def format_grid_text(snap: Snapshot) -> str:
    side = snap.side
    lines = [f"{side} {snap.step}"]
    chars = np.frombuffer(_CHARS.encode(), dtype=np.uint8)[snap.grid]
    grid = chars.reshape(side, side)
    lines.extend(row.tobytes().decode("ascii") for row in grid)
    if snap.weights is not None:
        lines.append("weights")
        lines.extend(repr(float(w)) for w in snap.weights)
    return "\n".join(lines) + "\n"


def ppm_bytes(snap: Snapshot) -> bytes:
    side = snap.side
    palette = np.array([COLORS[s] for s in Strategy], dtype=np.uint8)
    header = f"P6\n{side} {side}\n255\n".encode("ascii")
    return header + palette[snap.grid].tobytes()


def write_snapshot(snap: Snapshot, path, format: str = "grid-text") -> None:
    if format == "grid-text":
        Path(path).write_text(format_grid_text(snap), encoding="ascii")
    elif format == "image":
        Path(path).write_bytes(ppm_bytes(snap))
    else:
        raise ValueError(f"unknown snapshot format {format!r}")


def parse_grid_text(text: str, source: str = "<snapshot>") -> Snapshot:
    lines = text.splitlines()
    if not lines:
        raise SnapshotFormatError(f"{source}: empty file")
    head = lines[0].split()
    if len(head) != 2:
        raise SnapshotFormatError(f"{source}, line 1: expected '<side> <step>'")
    try:
        side, step = int(head[0]), int(head[1])
    except ValueError:
        raise SnapshotFormatError(f"{source}, line 1: expected integers, got {lines[0]!r}") from None
    if side < 3:
        raise SnapshotFormatError(f"{source}, line 1: side must be >= 3")
    if len(lines) < 1 + side:
        raise SnapshotFormatError(f"{source}: expected {side} grid rows, found {len(lines) - 1}")
    codes = []
    for i in range(side):
        lineno = i + 2
        row = lines[1 + i]
        if len(row) != side:
            raise SnapshotFormatError(
                f"{source}, line {lineno}: row has {len(row)} cells, expected {side}"
            )
        for ch in row:
            pos = _CHARS.find(ch)
            if pos < 0:
                raise SnapshotFormatError(f"{source}, line {lineno}: bad strategy character {ch!r}")
            codes.append(pos)
    rest = [ln for ln in lines[1 + side:]]
    weights = None
    if rest and any(ln.strip() for ln in rest):
        if rest[0].strip() != "weights":
            raise SnapshotFormatError(f"{source}, line {side + 2}: expected 'weights' section header")
        values = rest[1:]
        while values and not values[-1].strip():
            values.pop()
        if len(values) != 4 * side * side:
            raise SnapshotFormatError(
                f"{source}: weight section has {len(values)} entries, expected {4 * side * side}"
            )
        try:
            weights = np.array([float(v) for v in values])
        except ValueError as exc:
            raise SnapshotFormatError(f"{source}: bad weight value ({exc})") from None
    return Snapshot(side, step, np.array(codes, dtype=np.int8), weights)


def read_snapshot(path) -> Snapshot:
    path = Path(path)
    return parse_grid_text(path.read_text(encoding="ascii"), str(path))


class SnapshotWriter:
    """Observer that writes snapshots at the requested steps."""

    def __init__(self, directory, steps, prefix: str = "", formats=("grid-text", "image")):
        self.directory = Path(directory)
        self.steps = set(int(s) for s in steps)
        self.prefix = prefix
        self.formats = tuple(formats)
        self.written: list[Path] = []

    def __call__(self, step: int, counts, lattice: Lattice) -> None:
        if step not in self.steps:
            return
        snap = lattice_snapshot(lattice, step)
        for fmt in self.formats:
            ext = "txt" if fmt == "grid-text" else "ppm"
            path = self.directory / f"{self.prefix}step{step}.{ext}"
            write_snapshot(snap, path, fmt)
            self.written.append(path)
