"""Byte-oriented LZSS compressor used by the plan-distance metric.

Window 4096, minimum match 3, one-step lazy parse, fixed token encoding.
The output layout is:

* 4-byte little-endian uncompressed length
* control bytes, each covering the next 8 tokens (LSB first, bit set
  means match)
* literal token: 1 raw byte
* match token: 12-bit distance-1 and 4-bit length code (length-3,
  0..15); code 15 carries one extension byte, so a single match spans
  up to 273 bytes

Everything is plain integer arithmetic, so compressed bytes (and sizes)
are identical on every platform.  compress/decompress round-trip exactly.
"""

from __future__ import annotations

WINDOW = 4096
MIN_MATCH = 3
MAX_MATCH = 3 + 15 + 255  # 273
_CHAIN_LIMIT = 128  # bounded match-candidate scan, fixed for determinism

HEADER_SIZE = 4


def _find_match(data: bytes, pos: int, heads: dict[int, list[int]]) -> tuple[int, int]:
    """Longest match for data[pos:] within the window; returns
    (distance, length), length 0 when nothing reaches MIN_MATCH."""
    limit = min(len(data) - pos, MAX_MATCH)
    if limit < MIN_MATCH:
        return (0, 0)
    key = data[pos] | (data[pos + 1] << 8) | (data[pos + 2] << 16)
    chain = heads.get(key)
    if not chain:
        return (0, 0)
    best_len = 0
    best_dist = 0
    lo = pos - WINDOW
    for cand in reversed(chain[-_CHAIN_LIMIT:]):
        if cand < lo:
            break
        length = 0
        while length < limit and data[cand + length] == data[pos + length]:
            length += 1
        if length > best_len:
            best_len = length
            best_dist = pos - cand
            if length == limit:
                break
    if best_len < MIN_MATCH:
        return (0, 0)
    return (best_dist, best_len)


def compress(data: bytes) -> bytes:
    n = len(data)
    out = bytearray(n.to_bytes(4, "little"))
    tokens: list[bytes] = []
    flags = 0
    nflags = 0
    heads: dict[int, list[int]] = {}

    def flush() -> None:
        nonlocal flags, nflags
        if nflags:
            out.append(flags)
            for t in tokens:
                out.extend(t)
            tokens.clear()
            flags = 0
            nflags = 0

    def record(pos: int) -> None:
        if pos + 2 < n:
            key = data[pos] | (data[pos + 1] << 8) | (data[pos + 2] << 16)
            heads.setdefault(key, []).append(pos)

    pos = 0
    while pos < n:
        dist, length = _find_match(data, pos, heads)
        if length and pos + 1 < n:
            # lazy step: when a strictly longer match starts one byte
            # later, emit a literal now and take that one instead
            _, ahead = _find_match(data, pos + 1, heads)
            if ahead > length:
                dist, length = 0, 0
        if length:
            code = length - MIN_MATCH
            d = dist - 1
            if code >= 15:
                tok = bytes((d >> 4, ((d & 0xF) << 4) | 15, code - 15))
            else:
                tok = bytes((d >> 4, ((d & 0xF) << 4) | code))
            tokens.append(tok)
            flags |= 1 << nflags
            for k in range(length):
                record(pos + k)
            pos += length
        else:
            tokens.append(data[pos : pos + 1])
            record(pos)
            pos += 1
        nflags += 1
        if nflags == 8:
            flush()
    flush()
    return bytes(out)


def decompress(blob: bytes) -> bytes:
    if len(blob) < HEADER_SIZE:
        raise ValueError("truncated stream")
    n = int.from_bytes(blob[:4], "little")
    out = bytearray()
    i = HEADER_SIZE

    def take(count: int) -> int:
        nonlocal i
        if i + count > len(blob):
            raise ValueError("truncated stream")
        i += count
        return i - count

    while len(out) < n:
        flags = blob[take(1)]
        for bit in range(8):
            if len(out) >= n:
                break
            if flags & (1 << bit):
                j = take(2)
                d = (blob[j] << 4) | (blob[j + 1] >> 4)
                code = blob[j + 1] & 0xF
                length = code + MIN_MATCH
                if code == 15:
                    length += blob[take(1)]
                start = len(out) - (d + 1)
                if start < 0:
                    raise ValueError("corrupt match distance")
                for k in range(length):
                    out.append(out[start + k])
            else:
                out.append(blob[take(1)])
    if i != len(blob):
        raise ValueError("trailing bytes after payload")
    if len(out) != n:
        raise ValueError("payload length disagrees with header")
    return bytes(out)


def compressed_size(data: bytes) -> int:
    return len(compress(data))
