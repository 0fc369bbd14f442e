"""The per-run data table and its CSV form."""

from __future__ import annotations

import csv
from dataclasses import dataclass

import numpy as np

from ..errors import ParseError

HEADER = ("run", "theta_rad", "I1", "I2", "I3", "I4", "x", "y")


@dataclass
class DataTable:
    run: np.ndarray
    theta: np.ndarray
    intensities: np.ndarray  # shape (n, 4)
    x: np.ndarray | None = None
    y: np.ndarray | None = None

    def __post_init__(self):
        n = len(self.run)
        if len(self.theta) != n or self.intensities.shape != (n, 4):
            raise ValueError("table columns differ in length")
        if (self.x is None) != (self.y is None):
            raise ValueError("x and y are filled together or not at all")
        if n > 1 and np.any(np.diff(self.run) <= 0):
            raise ValueError("rows must be ordered by run id")

    def __len__(self) -> int:
        return len(self.run)

    @classmethod
    def empty(cls) -> "DataTable":
        return cls(np.zeros(0, dtype=np.int64), np.zeros(0), np.zeros((0, 4)))

    @property
    def has_counts(self) -> bool:
        return self.x is not None

    def equals(self, other: "DataTable") -> bool:
        same = (
            np.array_equal(self.run, other.run)
            and np.array_equal(self.theta, other.theta)
            and np.array_equal(self.intensities, other.intensities)
            and self.has_counts == other.has_counts
        )
        if same and self.has_counts:
            same = np.array_equal(self.x, other.x) and np.array_equal(self.y, other.y)
        return bool(same)


_ROW = "%d,%.17g,%.17g,%.17g,%.17g,%.17g,%s,%s\n"


def write_table(table: DataTable, path) -> None:
    """CSV with 17 significant digits, so every float reparses to the same double."""
    n = len(table)
    xs = table.x.tolist() if table.has_counts else [""] * n
    ys = table.y.tolist() if table.has_counts else [""] * n
    cols = zip(table.run.tolist(), table.theta.tolist(), *table.intensities.T.tolist(), xs, ys)
    try:
        with open(path, "w", encoding="utf-8", newline="") as fh:
            fh.write(",".join(HEADER) + "\n")
            fh.writelines([_ROW % row for row in cols])
    except OSError as exc:
        raise OSError(exc.errno, f"cannot write table to {path}: {exc.strerror}") from exc


def read_table(path) -> DataTable:
    try:
        fh = open(path, encoding="utf-8", newline="")
    except OSError as exc:
        raise OSError(exc.errno, f"cannot read table {path}: {exc.strerror}") from exc
    with fh:
        reader = csv.reader(fh)
        header = next(reader, None)
        if header is None or tuple(header) != HEADER:
            raise ParseError(f"{path}: row 1: expected header {','.join(HEADER)}")
        runs, thetas, ints, xs, ys = [], [], [], [], []
        for rowno, row in enumerate(reader, start=2):
            if len(row) != len(HEADER):
                raise ParseError(f"{path}: row {rowno}: expected {len(HEADER)} fields, got {len(row)}")
            try:
                runs.append(int(row[0]))
                thetas.append(float(row[1]))
                ints.append([float(v) for v in row[2:6]])
                xs.append(int(row[6]) if row[6] else None)
                ys.append(int(row[7]) if row[7] else None)
            except ValueError as exc:
                raise ParseError(f"{path}: row {rowno}: {exc}") from None
            for v in (xs[-1], ys[-1]):
                if v not in (None, -1, 1):
                    raise ParseError(f"{path}: row {rowno}: count values must be -1, +1 or empty")
    filled = {v is None for v in xs + ys}
    if len(filled) > 1:
        raise ParseError(f"{path}: x/y columns are partially filled")
    counts = bool(xs) and xs[0] is not None
    try:
        return DataTable(
            np.array(runs, dtype=np.int64),
            np.array(thetas, dtype=float),
            np.array(ints, dtype=float).reshape(-1, 4),
            np.array(xs, dtype=np.int8) if counts else None,
            np.array(ys, dtype=np.int8) if counts else None,
        )
    except ValueError as exc:
        raise ParseError(f"{path}: {exc}") from None
