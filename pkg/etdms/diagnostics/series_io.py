"""
CSV output of diagnostics time series.
"""

import csv
import logging

SERIES_HEADER = ["t", "E", "h", "m", "E_mod"]


def format_value(value):
    """Full-precision text for a float; empty for a missing value."""
    if value is None:
        return ""
    return format(float(value), ".17g")


class SeriesWriter:
    """
    Streams TimeSeriesRecord rows to a CSV file.

    Use as a context manager; rows are flushed as they are written so a run
    that aborts keeps everything emitted so far.
    """

    def __init__(self, path):
        self.path = path
        self._file = None
        self._writer = None
        self.rows_written = 0

    def __enter__(self):
        self._file = open(self.path, "w", newline="")
        self._writer = csv.writer(self._file, lineterminator="\n")
        self._writer.writerow(SERIES_HEADER)
        return self

    def write(self, record):
        self._writer.writerow(
            [format_value(record.t), format_value(record.E), format_value(record.h),
             format_value(record.m), format_value(record.E_mod)]
        )
        self._file.flush()
        self.rows_written += 1

    def __exit__(self, exc_type, exc, tb):
        self._file.close()
        logging.info(f"Wrote {self.rows_written} series rows to {self.path}")
        return False


def read_series(path):
    """
    Read a series CSV back into columns.

    Returns:
        dict: Column name -> list of floats (None for empty cells)
    """
    columns = {name: [] for name in SERIES_HEADER}
    with open(path, newline="") as handle:
        reader = csv.DictReader(handle)
        if reader.fieldnames != SERIES_HEADER:
            raise ValueError(f"Unexpected series header in {path}: {reader.fieldnames}")
        for row in reader:
            for name in SERIES_HEADER:
                cell = row[name]
                columns[name].append(None if cell == "" else float(cell))
    return columns
