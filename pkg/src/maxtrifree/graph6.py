"""graph6 codec: McKay's ASCII encoding of undirected graphs.

The upper triangle is serialized in column order (x_{0,1}, x_{0,2}, x_{1,2},
x_{0,3}, ...), packed big-endian into 6-bit chunks, each offset by 63.  The
decoder is strict: bad characters, wrong lengths, and nonzero padding are all
errors, so write-then-read is bit exact.
"""
from __future__ import annotations

from typing import Iterable, Iterator

from .graph import MAX_VERTICES, Graph

HEADER = ">>graph6<<"


class Graph6Error(ValueError):
    def __init__(self, message: str, line: int | None = None):
        if line is not None:
            message = f"line {line}: {message}"
        super().__init__(message)
        self.line = line


def _column_bits(g: Graph) -> Iterator[int]:
    for v in range(1, g.n):
        row = g.rows[v]
        for u in range(v):
            yield row >> u & 1


def encode_graph6(g: Graph) -> str:
    """graph6 string for g (without trailing newline)."""
    if g.n > MAX_VERTICES:
        raise Graph6Error(f"graphs beyond {MAX_VERTICES} vertices are unsupported")
    if g.n <= 62:
        out = [chr(g.n + 63)]
    else:
        out = ["~"] + [chr((g.n >> shift & 63) + 63) for shift in (12, 6, 0)]
    chunk = 0
    filled = 0
    for bit in _column_bits(g):
        chunk = chunk << 1 | bit
        filled += 1
        if filled == 6:
            out.append(chr(chunk + 63))
            chunk = 0
            filled = 0
    if filled:
        out.append(chr((chunk << (6 - filled)) + 63))
    return "".join(out)


def decode_graph6(text: str, line: int | None = None) -> Graph:
    """Parse one graph6 string; raises Graph6Error on any malformation."""
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise Graph6Error("empty graph6 string", line)
    vals = []
    for ch in s:
        code = ord(ch) - 63
        if not 0 <= code <= 63:
            raise Graph6Error(f"character {ch!r} outside graph6 range", line)
        vals.append(code)
    if vals[0] < 63:
        n = vals[0]
        body = vals[1:]
    else:
        if len(vals) < 4:
            raise Graph6Error("truncated long-form vertex count", line)
        if vals[1] == 63:
            # the '~~' 8-byte form starts at 258048 vertices
            raise Graph6Error("graphs beyond 258047 vertices are unsupported", line)
        n = vals[1] << 12 | vals[2] << 6 | vals[3]
        body = vals[4:]
    if n > MAX_VERTICES:
        raise Graph6Error(f"{n} vertices exceed the supported maximum {MAX_VERTICES}", line)
    nbits = n * (n - 1) // 2
    if len(body) != (nbits + 5) // 6:
        raise Graph6Error(
            f"expected {(nbits + 5) // 6} data characters for n={n}, got {len(body)}", line
        )
    bits = []
    for code in body:
        bits.extend(code >> shift & 1 for shift in range(5, -1, -1))
    if any(bits[nbits:]):
        raise Graph6Error("nonzero padding bits", line)
    rows = [0] * n
    i = 0
    for v in range(1, n):
        for u in range(v):
            if bits[i]:
                rows[u] |= 1 << v
                rows[v] |= 1 << u
            i += 1
    return Graph(n, tuple(rows))


def write_graph6_file(path, graphs: Iterable[Graph]) -> int:
    """Write a newline-delimited graph6 file; returns the number of lines."""
    count = 0
    with open(path, "w", encoding="ascii") as fh:
        for g in graphs:
            fh.write(encode_graph6(g))
            fh.write("\n")
            count += 1
    return count


def iter_graph6_file(path) -> Iterator[Graph]:
    """Yield graphs from a newline-delimited graph6 file, with line-numbered errors."""
    with open(path, "r", encoding="ascii") as fh:
        for lineno, raw in enumerate(fh, start=1):
            stripped = raw.strip()
            if not stripped:
                continue
            yield decode_graph6(stripped, line=lineno)


def read_graph6_file(path) -> list[Graph]:
    return list(iter_graph6_file(path))
