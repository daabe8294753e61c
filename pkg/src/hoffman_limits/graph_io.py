"""graph6 and adjacency-list JSON interchange.

graph6 follows the public format definition (Brendan McKay): the vertex
count ``N(n)`` followed by the upper triangle of the adjacency matrix,
column by column, packed six bits per printable byte (value + 63).
"""

from __future__ import annotations

import json
from typing import Any

from .errors import ParseError
from .graph import SimpleGraph, make_graph

HEADER = ">>graph6<<"

__all__ = ["graph6_encode", "graph6_decode", "graph_to_json", "graph_from_json", "read_graph"]


def _encode_n(n: int) -> str:
    if n < 0:
        raise ValueError("negative vertex count")
    if n <= 62:
        return chr(63 + n)
    if n <= 258047:
        return "~" + "".join(chr(63 + ((n >> s) & 63)) for s in (12, 6, 0))
    if n <= 68719476735:
        return "~~" + "".join(chr(63 + ((n >> s) & 63)) for s in (30, 24, 18, 12, 6, 0))
    raise ValueError("graph too large for graph6")


def graph6_encode(G: SimpleGraph) -> str:
    n = G.n
    nbits = n * (n - 1) // 2
    bits = bytearray(nbits + (-nbits) % 6)
    for u, v in G.edges():
        bits[v * (v - 1) // 2 + u] = 1
    out = [_encode_n(n)]
    for i in range(0, len(bits), 6):
        x = 0
        for b in bits[i : i + 6]:
            x = (x << 1) | b
        out.append(chr(63 + x))
    return "".join(out)


def graph6_decode(text: str) -> SimpleGraph:
    """Inverse of :func:`graph6_encode`; accepts an optional ``>>graph6<<`` header."""
    s = text.strip()
    base = 0
    if s.startswith(HEADER):
        s = s[len(HEADER):]
        base = len(HEADER)
    if not s:
        raise ParseError("empty graph6 string", base)
    data = s.encode("ascii", errors="replace")
    for i, c in enumerate(data):
        if not 63 <= c <= 126:
            raise ParseError(f"byte {chr(c)!r} outside the graph6 range 63..126", base + i)

    if data[0] != 126:
        n, pos = data[0] - 63, 1
    elif len(data) >= 2 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated 8-byte vertex count", base + len(data))
        n, pos = 0, 8
        for c in data[2:8]:
            n = (n << 6) | (c - 63)
    else:
        if len(data) < 4:
            raise ParseError("truncated 4-byte vertex count", base + len(data))
        n, pos = 0, 4
        for c in data[1:4]:
            n = (n << 6) | (c - 63)

    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    body = data[pos:]
    if len(body) != need:
        raise ParseError(f"expected {need} data bytes for n={n}, found {len(body)}",
                         base + pos + min(len(body), need))
    if nbits % 6 and body and (body[-1] - 63) & ((1 << (6 - nbits % 6)) - 1):
        raise ParseError("non-zero padding bits", base + pos + need - 1)

    edges = []
    k = 0
    for v in range(1, n):
        for u in range(v):
            byte = body[k // 6] - 63
            if (byte >> (5 - k % 6)) & 1:
                edges.append((u, v))
            k += 1
    return make_graph(n, edges)


def graph_to_json(G: SimpleGraph) -> dict[str, Any]:
    return {"n": G.n, "edges": [list(e) for e in G.edges()]}


def graph_from_json(doc: dict[str, Any] | str) -> SimpleGraph:
    if isinstance(doc, str):
        try:
            doc = json.loads(doc)
        except json.JSONDecodeError as exc:
            raise ParseError(f"invalid JSON: {exc.msg}", exc.pos) from None
    if not isinstance(doc, dict) or "n" not in doc or "edges" not in doc:
        raise ParseError('graph JSON must be an object with "n" and "edges"')
    return make_graph(int(doc["n"]), [tuple(e) for e in doc["edges"]])


def read_graph(text: str) -> SimpleGraph:
    """Decode either graph6 or adjacency-list JSON, deciding by the first character."""
    stripped = text.lstrip()
    if stripped.startswith("{"):
        return graph_from_json(stripped)
    return graph6_decode(stripped.splitlines()[0] if stripped else stripped)
