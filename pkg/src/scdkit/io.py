"""File formats: raw IQ, two-column CSV, the SCD1 grid container, and PGM.

IQ files are headerless interleaved little-endian float32 (I, Q) pairs.
SCD1 files carry a rasterized SCD grid: a 52-byte header (magic "SCD1",
version, row/column counts, alpha and f ranges as float64, a precision
flag) followed by the row-major payload, rows indexing alpha.
"""

from __future__ import annotations

import struct

import numpy as np

from .errors import DataError

SCD1_MAGIC = b"SCD1"
SCD1_VERSION = 1
_SCD1_HEADER = struct.Struct("<4sIIIddddI")

_PRECISION_FLAGS = {"f32": 0, "f64": 1}
_PAYLOAD_DTYPES = {0: "<f4", 1: "<f8"}


def write_iq(path, x) -> None:
    """Write complex samples as interleaved little-endian float32 pairs."""
    x = np.asarray(x)
    inter = np.empty(2 * x.size, dtype="<f4")
    inter[0::2] = x.real.astype(np.float32, copy=False)
    inter[1::2] = x.imag.astype(np.float32, copy=False)
    with open(path, "wb") as fh:
        fh.write(inter.tobytes())


def read_iq(path) -> np.ndarray:
    """Read interleaved float32 IQ pairs into a complex64 series."""
    raw = np.fromfile(path, dtype="<f4")
    if raw.size % 2 != 0:
        raise DataError(f"{path}: odd float count, not an interleaved IQ file")
    return (raw[0::2] + 1j * raw[1::2]).astype(np.complex64)


def read_iq_csv(path) -> np.ndarray:
    """Read a two-column (I, Q) CSV; a single header line is tolerated."""
    skip = 0
    with open(path, "r") as fh:
        first = fh.readline()
    head = first.split(",")[0].strip()
    try:
        float(head)
    except ValueError:
        skip = 1
    data = np.loadtxt(path, delimiter=",", skiprows=skip, ndmin=2)
    if data.shape[1] != 2:
        raise DataError(f"{path}: expected two columns, found {data.shape[1]}")
    return data[:, 0] + 1j * data[:, 1]


def write_scd1(
    path,
    grid: np.ndarray,
    alpha_range=(-1.0, 1.0),
    f_range=(-0.5, 0.5),
    precision: str = "f32",
) -> None:
    """Write a rasterized SCD grid (rows = alpha bins, cols = f bins)."""
    grid = np.asarray(grid)
    if grid.ndim != 2:
        raise DataError(f"grid must be 2-D, got shape {grid.shape}")
    flag = _PRECISION_FLAGS.get(precision)
    if flag is None:
        raise DataError(f"precision must be 'f32' or 'f64', got {precision!r}")
    header = _SCD1_HEADER.pack(
        SCD1_MAGIC,
        SCD1_VERSION,
        grid.shape[0],
        grid.shape[1],
        float(alpha_range[0]),
        float(alpha_range[1]),
        float(f_range[0]),
        float(f_range[1]),
        flag,
    )
    with open(path, "wb") as fh:
        fh.write(header)
        fh.write(np.ascontiguousarray(grid, dtype=_PAYLOAD_DTYPES[flag]).tobytes())


def read_scd1(path):
    """Read an SCD1 file; returns (grid, header dict)."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _SCD1_HEADER.size:
        raise DataError(f"{path}: truncated header")
    magic, version, rows, cols, a_lo, a_hi, f_lo, f_hi, flag = _SCD1_HEADER.unpack_from(blob)
    if magic != SCD1_MAGIC:
        raise DataError(f"{path}: bad magic {magic!r}")
    if version != SCD1_VERSION:
        raise DataError(f"{path}: unsupported version {version}")
    if flag not in _PAYLOAD_DTYPES:
        raise DataError(f"{path}: unknown precision flag {flag}")
    dtype = np.dtype(_PAYLOAD_DTYPES[flag])
    expected = _SCD1_HEADER.size + rows * cols * dtype.itemsize
    if len(blob) != expected:
        raise DataError(f"{path}: payload size {len(blob)} != expected {expected}")
    grid = np.frombuffer(blob, dtype=dtype, offset=_SCD1_HEADER.size).reshape(rows, cols)
    header = {
        "rows": rows,
        "cols": cols,
        "alpha_range": (a_lo, a_hi),
        "f_range": (f_lo, f_hi),
        "precision": "f32" if flag == 0 else "f64",
    }
    return grid.copy(), header


def write_pgm(path, grid: np.ndarray, log_scale: bool = False) -> None:
    """Render a grid as an 8-bit binary PGM heatmap.

    Rows are written top-down from the highest alpha. log_scale compresses
    six decades below the peak into the gray ramp.
    """
    grid = np.asarray(grid, dtype=np.float64)
    if grid.ndim != 2:
        raise DataError(f"grid must be 2-D, got shape {grid.shape}")
    peak = grid.max()
    if peak <= 0.0:
        img = np.zeros_like(grid)
    elif log_scale:
        floor = peak * 1e-6
        img = (np.log10(np.maximum(grid, floor)) - np.log10(floor)) / 6.0
    else:
        img = grid / peak
    pixels = np.clip(np.rint(img * 255.0), 0, 255).astype(np.uint8)
    pixels = pixels[::-1, :]  # top row = highest alpha
    with open(path, "wb") as fh:
        fh.write(f"P5\n{pixels.shape[1]} {pixels.shape[0]}\n255\n".encode())
        fh.write(pixels.tobytes())


def write_profile_csv(path, profile) -> None:
    """Write an alpha profile as 'alpha,value' rows."""
    with open(path, "w") as fh:
        fh.write("alpha,value\n")
        for a, v in zip(profile.alphas, profile.values):
            fh.write(f"{a:.17g},{v:.17g}\n")
