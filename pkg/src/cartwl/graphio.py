"""graph6 and edge-list serialization."""

from __future__ import annotations

import numpy as np

from .errors import GraphParseError
from .graphs import Graph

HEADER = b">>graph6<<"


def _size_bytes(n: int) -> bytes:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return bytes([63 + n])
    if n <= 258047:
        return bytes([126] + [63 + ((n >> s) & 63) for s in (12, 6, 0)])
    if n <= 68719476735:
        return bytes([126, 126] + [63 + ((n >> s) & 63) for s in (30, 24, 18, 12, 6, 0)])
    raise ValueError(f"graph6 cannot encode n={n}")


def serialize_graph6(g: Graph, header: bool = False) -> bytes:
    """Encode ``g`` in graph6 (no trailing newline)."""
    n = g.n
    # upper triangle, column by column: (0,1), (0,2), (1,2), (0,3), ...
    cols, rows = np.triu_indices(n, 1)[::-1]
    order = np.lexsort((rows, cols))
    bits = g.adjacency[rows[order], cols[order]].astype(np.uint8)
    pad = (-len(bits)) % 6
    bits = np.concatenate([bits, np.zeros(pad, dtype=np.uint8)]).reshape(-1, 6)
    values = bits @ (1 << np.arange(5, -1, -1))
    body = bytes((values + 63).astype(np.uint8).tolist())
    return (HEADER if header else b"") + _size_bytes(n) + body


def _read_size(data: bytes, start: int) -> tuple[int, int]:
    def digit(i: int) -> int:
        if i >= len(data):
            raise GraphParseError("truncated vertex count", i, "length")
        b = data[i]
        if not 63 <= b <= 126:
            raise GraphParseError(f"byte {b} out of range 63..126", i, "byte")
        return b - 63

    first = digit(start)
    if first < 63:
        return first, start + 1
    if start + 1 < len(data) and data[start + 1] == 126:
        value = 0
        for i in range(start + 2, start + 8):
            value = (value << 6) | digit(i)
        return value, start + 8
    value = 0
    for i in range(start + 1, start + 4):
        value = (value << 6) | digit(i)
    return value, start + 4


def parse_graph6(text: bytes | str) -> Graph:
    """Decode a single graph6 line; an optional ``>>graph6<<`` header is skipped."""
    data = text.encode("ascii") if isinstance(text, str) else bytes(text)
    data = data.rstrip(b"\r\n")
    start = len(HEADER) if data.startswith(HEADER) else 0
    if start >= len(data):
        raise GraphParseError("empty graph6 string", start, "length")
    n, pos = _read_size(data, start)
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    body = data[pos:]
    if len(body) < nbytes:
        raise GraphParseError(f"expected {nbytes} data bytes for n={n}, found {len(body)}", pos + len(body), "length")
    if len(body) > nbytes:
        raise GraphParseError("trailing garbage after graph6 data", pos + nbytes, "trailing")
    raw = np.frombuffer(body, dtype=np.uint8).astype(np.int64)
    bad = np.flatnonzero((raw < 63) | (raw > 126))
    if len(bad):
        off = int(bad[0])
        raise GraphParseError(f"byte {raw[off]} out of range 63..126", pos + off, "byte")
    bits = ((raw[:, None] - 63) >> np.arange(5, -1, -1)) & 1
    bits = bits.ravel()
    if bits[nbits:].any():
        raise GraphParseError("non-zero padding bits", pos + nbytes - 1, "padding")
    adj = np.zeros((n, n), dtype=bool)
    cols, rows = np.triu_indices(n, 1)[::-1]
    order = np.lexsort((rows, cols))
    r, c = rows[order], cols[order]
    on = bits[:nbits].astype(bool)
    adj[r[on], c[on]] = True
    adj[c[on], r[on]] = True
    return Graph(n, adj)


def parse_edge_list(text: str) -> Graph:
    """Parse ``n <count>`` followed by ``u v`` lines; ``#`` starts a comment."""
    n = None
    edges: list[tuple[int, int]] = []
    for lineno, raw in enumerate(text.splitlines(), start=1):
        line = raw.split("#", 1)[0].strip()
        if not line:
            continue
        parts = line.split()
        if n is None:
            if len(parts) != 2 or parts[0] != "n":
                raise GraphParseError("first line must be 'n <count>'", lineno)
            try:
                n = int(parts[1])
            except ValueError:
                raise GraphParseError(f"bad vertex count {parts[1]!r}", lineno) from None
            if n < 0:
                raise GraphParseError("negative vertex count", lineno)
            continue
        if len(parts) != 2:
            raise GraphParseError(f"expected 'u v', got {line!r}", lineno)
        try:
            u, v = int(parts[0]), int(parts[1])
        except ValueError:
            raise GraphParseError(f"non-integer vertex in {line!r}", lineno) from None
        if not (0 <= u < n and 0 <= v < n):
            raise GraphParseError(f"vertex out of range 0..{n - 1} in {line!r}", lineno, "range")
        if u == v:
            raise GraphParseError(f"self-loop at vertex {u}", lineno, "self-loop")
        edges.append((u, v))
    if n is None:
        raise GraphParseError("missing 'n <count>' line", 1)
    return Graph.from_edges(n, edges)


def serialize_edge_list(g: Graph) -> str:
    lines = [f"n {g.n}"] + [f"{u} {v}" for u, v in g.edges()]
    return "\n".join(lines) + "\n"
