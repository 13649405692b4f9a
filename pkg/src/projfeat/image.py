"""Binary edge images, pixel coordinate types, and PGM (P5) file I/O.

Coordinate convention: x grows rightward (columns), y grows downward (rows),
origin at the top-left pixel. Rasters are stored row-major, which matches the
PGM payload byte order exactly.
"""

from __future__ import annotations

from typing import NamedTuple

import numpy as np


class PgmError(ValueError):
    """Malformed PGM input. Carries the byte offset where parsing failed."""

    def __init__(self, message: str, offset: int):
        super().__init__(f"{message} (byte {offset})")
        self.offset = offset


class Point(NamedTuple):
    """Integer pixel coordinate."""

    x: int
    y: int


class FPoint(NamedTuple):
    """Real-valued image coordinate (centroids, averaged positions)."""

    x: float
    y: float


class EdgeImage:
    """Immutable binary raster; a nonzero pixel marks a detected edge.

    The raster is held as a ``bytes`` object with one byte per pixel
    (0 = free, 1 = edge), row-major. All operations on edge images are
    pure functions, so instances are safe to share across threads.
    """

    __slots__ = ("width", "height", "data")

    width: int
    height: int
    data: bytes

    def __init__(self, width: int, height: int, data: bytes):
        if width < 3 or height < 3:
            raise ValueError(f"image must be at least 3x3, got {width}x{height}")
        if len(data) != width * height:
            raise ValueError(
                f"raster length {len(data)} does not match {width}x{height}"
            )
        if data and max(data) > 1:
            raise ValueError("raster bytes must be 0 (free) or 1 (edge)")
        object.__setattr__(self, "width", width)
        object.__setattr__(self, "height", height)
        object.__setattr__(self, "data", bytes(data))

    def __setattr__(self, name, value):
        raise AttributeError("EdgeImage is immutable")

    def __eq__(self, other):
        if not isinstance(other, EdgeImage):
            return NotImplemented
        return (
            self.width == other.width
            and self.height == other.height
            and self.data == other.data
        )

    def __hash__(self):
        return hash((self.width, self.height, self.data))

    def __repr__(self):
        return f"EdgeImage({self.width}x{self.height}, {self.edge_count} edge px)"

    @classmethod
    def from_array(cls, arr) -> "EdgeImage":
        """Build from a 2D array-like; truthy entries become edge pixels."""
        mask = np.asarray(arr).astype(bool)
        if mask.ndim != 2:
            raise ValueError("expected a 2D array")
        h, w = mask.shape
        return cls(w, h, mask.astype(np.uint8).tobytes())

    def to_array(self) -> np.ndarray:
        """Boolean (height, width) array; True = edge."""
        return (
            np.frombuffer(self.data, dtype=np.uint8)
            .reshape(self.height, self.width)
            .astype(bool)
        )

    def in_bounds(self, x: int, y: int) -> bool:
        return 0 <= x < self.width and 0 <= y < self.height

    def is_edge(self, x: int, y: int) -> bool:
        return self.data[y * self.width + x] != 0

    @property
    def edge_count(self) -> int:
        return int(np.count_nonzero(np.frombuffer(self.data, dtype=np.uint8)))

    def edge_indices(self) -> np.ndarray:
        """Flat row-major indices of all edge pixels, ascending."""
        return np.flatnonzero(np.frombuffer(self.data, dtype=np.uint8))

    def translate(self, dx: int, dy: int) -> "EdgeImage":
        """Shift the raster by whole pixels; content shifted past the border is lost."""
        src = np.frombuffer(self.data, dtype=np.uint8).reshape(self.height, self.width)
        out = np.zeros_like(src)
        h, w = src.shape
        sy0, sy1 = max(0, -dy), min(h, h - dy)
        sx0, sx1 = max(0, -dx), min(w, w - dx)
        if sy0 < sy1 and sx0 < sx1:
            out[sy0 + dy : sy1 + dy, sx0 + dx : sx1 + dx] = src[sy0:sy1, sx0:sx1]
        return EdgeImage(w, h, out.tobytes())


_LOAD_TABLE = bytes(1 if v >= 128 else 0 for v in range(256))
_SAVE_TABLE = bytes(255 if v else 0 for v in range(256))
_WHITESPACE = b" \t\r\n"


def _next_int(raw: bytes, pos: int) -> tuple[int, int, int]:
    """Parse the next header integer; returns (value, token offset, next offset)."""
    n = len(raw)
    while pos < n:
        c = raw[pos]
        if c in _WHITESPACE:
            pos += 1
        elif c == 0x23:  # '#' comment runs to end of line
            while pos < n and raw[pos] not in b"\r\n":
                pos += 1
        else:
            break
    if pos >= n:
        raise PgmError("unexpected end of header", pos)
    start = pos
    while pos < n and 0x30 <= raw[pos] <= 0x39:
        pos += 1
    if pos == start:
        raise PgmError(f"expected integer, found {raw[start:start + 1]!r}", start)
    return int(raw[start:pos]), start, pos


def load_pgm(raw: bytes) -> EdgeImage:
    """Parse a binary PGM (P5, maxval 255); pixel values >= 128 become edges."""
    if raw[:2] != b"P5":
        raise PgmError(f"expected magic 'P5', found {raw[:2]!r}", 0)
    width, _, pos = _next_int(raw, 2)
    height, _, pos = _next_int(raw, pos)
    maxval, maxval_at, pos = _next_int(raw, pos)
    if maxval != 255:
        raise PgmError(f"unsupported maxval {maxval}, expected 255", maxval_at)
    if pos >= len(raw) or raw[pos] not in _WHITESPACE:
        raise PgmError("expected whitespace before payload", pos)
    pos += 1
    need = width * height
    payload = raw[pos : pos + need]
    if len(payload) < need:
        raise PgmError(
            f"truncated payload: expected {need} bytes, found {len(payload)}",
            pos + len(payload),
        )
    return EdgeImage(width, height, payload.translate(_LOAD_TABLE))


def save_pgm(image: EdgeImage) -> bytes:
    """Serialize to binary PGM; edges map to 255, free pixels to 0."""
    header = f"P5\n{image.width} {image.height}\n255\n".encode("ascii")
    return header + image.data.translate(_SAVE_TABLE)
