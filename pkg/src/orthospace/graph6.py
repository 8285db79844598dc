"""graph6 encoding (the nauty ASCII format for simple graphs).

Layout: N(n) followed by the upper triangle of the adjacency matrix read
column by column (x(0,1), x(0,2), x(1,2), x(0,3), ...), packed into 6-bit
groups, zero padded, each group offset by 63.
"""
from __future__ import annotations

from typing import Sequence

from .core import MAX_VERTICES, OrthoSpace, SpaceError

HEADER = ">>graph6<<"


class Graph6Error(SpaceError):
    pass


class InvalidCharacter(Graph6Error):
    pass


class MalformedHeader(Graph6Error):
    pass


class LengthMismatch(Graph6Error):
    pass


class NonzeroPadding(Graph6Error):
    pass


def _encode_n(n: int) -> str:
    if n <= 62:
        return chr(n + 63)
    if n <= 258047:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    raise Graph6Error(f"n={n} too large for graph6")


def encode_adj(n: int, adj: Sequence[int]) -> str:
    out = [_encode_n(n)]
    acc = 0
    nbits = 0
    for j in range(1, n):
        row = adj[j]
        for i in range(j):
            acc = (acc << 1) | (row >> i & 1)
            nbits += 1
            if nbits == 6:
                out.append(chr(acc + 63))
                acc = nbits = 0
    if nbits:
        out.append(chr((acc << (6 - nbits)) + 63))
    return "".join(out)


def write_graph6(space: OrthoSpace) -> str:
    """graph6 line for ``space`` (no header, no newline)."""
    return encode_adj(space.n, space.adj)


def parse_graph6(text: str | bytes) -> OrthoSpace:
    """Decode one graph6 line; raises a ``Graph6Error`` subclass on bad input."""
    if isinstance(text, bytes):
        text = text.decode("ascii", errors="replace")
    s = text.strip()
    if s.startswith(HEADER):
        s = s[len(HEADER):]
    if not s:
        raise MalformedHeader("empty graph6 string")
    for pos, ch in enumerate(s):
        if not 63 <= ord(ch) <= 126:
            raise InvalidCharacter(f"invalid graph6 byte {ch!r} (0x{ord(ch):02x}) at offset {pos}")
    vals = [ord(ch) - 63 for ch in s]
    if vals[0] == 63:
        if len(vals) < 4:
            raise MalformedHeader("truncated long-form size header")
        if vals[1] == 63:
            raise MalformedHeader("8-byte size header not supported")
        n = (vals[1] << 12) | (vals[2] << 6) | vals[3]
        if n <= 62:
            raise MalformedHeader(f"non-canonical long-form header for n={n}")
        body = vals[4:]
        offset = 4
    else:
        n = vals[0]
        body = vals[1:]
        offset = 1
    if n == 0:
        raise MalformedHeader("graph6 size 0: empty carrier")
    if n > MAX_VERTICES:
        raise MalformedHeader(f"n={n} exceeds capacity {MAX_VERTICES}")
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(body) != need:
        raise LengthMismatch(f"expected {need} body bytes for n={n}, got {len(body)}")
    pad = need * 6 - nbits
    if pad and body[-1] & ((1 << pad) - 1):
        raise NonzeroPadding(f"nonzero padding bits in final byte at offset {offset + need - 1}")
    adj = [0] * n
    k = 0
    for j in range(1, n):
        for i in range(j):
            if body[k // 6] >> (5 - k % 6) & 1:
                adj[i] |= 1 << j
                adj[j] |= 1 << i
            k += 1
    return OrthoSpace(n, tuple(adj))


def read_graph6_lines(lines) -> list[OrthoSpace]:
    out = []
    for lineno, line in enumerate(lines, 1):
        if not line.strip():
            continue
        try:
            out.append(parse_graph6(line))
        except Graph6Error as exc:
            raise type(exc)(f"line {lineno}: {exc}") from None
    return out
