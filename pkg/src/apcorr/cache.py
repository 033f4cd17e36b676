"""Binary cache files for sieve segments and weighted series.

Layout (all integers little-endian):

    offset  size  field
    0       4     magic "APC1"
    4       4     format version (u32)
    8       8     window start (u64)
    16      8     window length (u64)
    24      1     payload kind (u8)
    25      N     payload
    25+N    8     FNV-1a checksum (u64) of bytes 0..25+N

Payload kinds: 1 is a smallest-prime-factor table (int64 array), 2 is a
weighted series (one kind-id byte, one dtype byte, then the value array).
"""

from __future__ import annotations

import os
import struct

import numpy as np

from . import kernels
from .errors import (
    CacheChecksumError,
    CacheFormatError,
    CacheVersionError,
    ParameterError,
)
from .sieve import (
    KIND_CUSTOM,
    KIND_E2_INDICATOR,
    KIND_E2_LOG,
    KIND_PRIME_INDICATOR,
    KIND_VON_MANGOLDT,
    SieveSegment,
    WeightedSeries,
)

MAGIC = b"APC1"
VERSION = 1

_KIND_SEGMENT = 1
_KIND_SERIES = 2

_SERIES_IDS = {
    KIND_E2_INDICATOR: 1,
    KIND_E2_LOG: 2,
    KIND_VON_MANGOLDT: 3,
    KIND_PRIME_INDICATOR: 4,
    KIND_CUSTOM: 5,
}
_SERIES_NAMES = {v: k for k, v in _SERIES_IDS.items()}

_DTYPE_INT64 = 1
_DTYPE_FLOAT64 = 2

_HEADER = struct.Struct("<4sIQQB")


def save_cache(path: str, payload) -> None:
    """Write a SieveSegment or WeightedSeries to a cache file."""
    if isinstance(payload, SieveSegment):
        kind = _KIND_SEGMENT
        body = np.ascontiguousarray(payload.spf, dtype="<i8").tobytes()
        start, length = payload.start, payload.length
    elif isinstance(payload, WeightedSeries):
        kind = _KIND_SERIES
        if np.issubdtype(payload.values.dtype, np.integer):
            dt_id, dt = _DTYPE_INT64, "<i8"
        else:
            dt_id, dt = _DTYPE_FLOAT64, "<f8"
        body = bytes([_SERIES_IDS[payload.kind], dt_id])
        body += np.ascontiguousarray(payload.values, dtype=dt).tobytes()
        start, length = payload.start, payload.length
    else:
        raise ParameterError(f"cannot cache object of type {type(payload).__name__}")
    head = _HEADER.pack(MAGIC, VERSION, start, length, kind)
    digest = kernels.fnv1a64(head + body)
    tmp = path + ".tmp"
    with open(tmp, "wb") as fh:
        fh.write(head)
        fh.write(body)
        fh.write(struct.pack("<Q", digest))
    os.replace(tmp, path)


def load_cache(path: str):
    """Read a cache file back into the object save_cache stored."""
    with open(path, "rb") as fh:
        blob = fh.read()
    if len(blob) < _HEADER.size + 8:
        raise CacheFormatError(f"{path}: file too short for a cache header")
    if blob[:4] != MAGIC:
        raise CacheFormatError(f"{path}: bad magic {blob[:4]!r}")
    magic, version, start, length, kind = _HEADER.unpack_from(blob)
    if version != VERSION:
        raise CacheVersionError(
            f"{path}: version {version} unsupported (expected {VERSION})"
        )
    stored = struct.unpack_from("<Q", blob, len(blob) - 8)[0]
    digest = kernels.fnv1a64(blob[:-8])
    if digest != stored:
        raise CacheChecksumError(
            f"{path}: checksum mismatch (stored {stored:#x}, computed {digest:#x})"
        )
    body = blob[_HEADER.size : -8]
    if kind == _KIND_SEGMENT:
        if len(body) != 8 * length:
            raise CacheFormatError(f"{path}: segment payload size mismatch")
        spf = np.frombuffer(body, dtype="<i8").astype(np.int64)
        return SieveSegment(start, spf)
    if kind == _KIND_SERIES:
        if len(body) < 2 or len(body) - 2 != 8 * length:
            raise CacheFormatError(f"{path}: series payload size mismatch")
        series_id, dt_id = body[0], body[1]
        if series_id not in _SERIES_NAMES or dt_id not in (
            _DTYPE_INT64,
            _DTYPE_FLOAT64,
        ):
            raise CacheFormatError(f"{path}: unknown series tags")
        dt = "<i8" if dt_id == _DTYPE_INT64 else "<f8"
        values = np.frombuffer(body, dtype=dt, offset=2).astype(
            np.int64 if dt_id == _DTYPE_INT64 else np.float64
        )
        return WeightedSeries(start, values, _SERIES_NAMES[series_id])
    raise CacheFormatError(f"{path}: unknown payload kind {kind}")


def segment_cache_path(cache_dir: str, start: int, length: int) -> str:
    return os.path.join(cache_dir, f"spf_{start}_{length}.apc")


def cached_segment(cache_dir, start: int, length: int, threads: int = 1):
    """Load the segment for (start, start + length] from cache, or build it.

    With cache_dir set, a miss builds the segment and stores it for next
    time.  With cache_dir None this is just build_segment.
    """
    from .sieve import build_segment

    if cache_dir is None:
        return build_segment(start, length, threads=threads)
    os.makedirs(cache_dir, exist_ok=True)
    path = segment_cache_path(cache_dir, start, length)
    if os.path.exists(path):
        return load_cache(path)
    seg = build_segment(start, length, threads=threads)
    save_cache(path, seg)
    return seg
