"""
ETDS snapshot files.

Layout (little-endian): magic b"ETDS", u32 version (1), u64 N, f64 L, f64 t,
then N*N f64 nodal values in row-major order.
"""

import logging
import struct

import numpy as np

from etdms.errors import SnapshotFormatError
from etdms.spectral.field import Field
from etdms.spectral.grid import make_grid

MAGIC = b"ETDS"
VERSION = 1
HEADER = struct.Struct("<4sIQdd")


def write_snapshot(path, field, t):
    """
    Write a field to an ETDS snapshot file.

    Args:
        path: Output file path
        field: Field to store
        t: Simulation time of the snapshot
    """
    grid = field.grid
    values = np.ascontiguousarray(field.values, dtype="<f8")
    with open(path, "wb") as fh:
        fh.write(HEADER.pack(MAGIC, VERSION, grid.N, grid.L, float(t)))
        fh.write(values.tobytes(order="C"))
    logging.debug(f"Wrote snapshot {path} (t={t})")


def read_snapshot(path, dealias=False):
    """
    Read an ETDS snapshot file.

    Args:
        path: Snapshot file path
        dealias: Dealiasing flag for the reconstructed grid

    Returns:
        tuple: (Field, t)
    """
    with open(path, "rb") as fh:
        data = fh.read()
    if len(data) < HEADER.size:
        raise SnapshotFormatError(f"{path}: truncated header")

    magic, version, N, L, t = HEADER.unpack_from(data, 0)
    if magic != MAGIC:
        raise SnapshotFormatError(f"{path}: bad magic {magic!r}")
    if version != VERSION:
        raise SnapshotFormatError(f"{path}: unsupported version {version}")

    expected = HEADER.size + 8 * N * N
    if len(data) != expected:
        raise SnapshotFormatError(f"{path}: expected {expected} bytes, found {len(data)}")

    values = np.frombuffer(data, dtype="<f8", offset=HEADER.size).reshape(N, N).astype(np.float64)
    grid = make_grid(N, L, dealias)
    return Field.from_values(grid, values), t
