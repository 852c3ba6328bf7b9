"""Text formats: graph6 for simple graphs, a native multipole format, rotations.

Multipole text::

    n k f
    u v      # link
    u *i     # dangling edge at semiedge slot i
    *i *j    # isolated edge

Edges appear in edge order; slots run over ``1..k``.  Blank lines and ``#``
comments are ignored.  A stream of several multipoles separates records with
a blank line.
"""

from __future__ import annotations

from typing import Iterable, Iterator, TextIO

from .graph import CubicMultipole, GraphError


class ParseError(ValueError):
    pass


# -- graph6 -----------------------------------------------------------------


def _decode_n(data: bytes) -> tuple[int, int]:
    if data[0] != 126:
        return data[0] - 63, 1
    if len(data) > 1 and data[1] == 126:
        if len(data) < 8:
            raise ParseError("truncated graph6 size")
        val = 0
        for b in data[2:8]:
            val = (val << 6) | (b - 63)
        return val, 8
    if len(data) < 4:
        raise ParseError("truncated graph6 size")
    val = 0
    for b in data[1:4]:
        val = (val << 6) | (b - 63)
    return val, 4


def _encode_n(n: int) -> str:
    if n < 63:
        return chr(n + 63)
    if n < 258048:
        return "~" + "".join(chr(((n >> s) & 63) + 63) for s in (12, 6, 0))
    return "~~" + "".join(chr(((n >> s) & 63) + 63) for s in (30, 24, 18, 12, 6, 0))


def parse_graph6_edges(line: str) -> tuple[int, list[tuple[int, int]]]:
    """Vertex count and edge list (upper-triangle column order) of a graph6 line."""
    text = line.strip()
    if text.startswith(">>graph6<<"):
        text = text[10:]
    if not text:
        raise ParseError("empty graph6 line")
    data = text.encode("ascii", errors="replace")
    if any(b < 63 or b > 126 for b in data):
        raise ParseError(f"invalid graph6 character in {line!r}")
    n, pos = _decode_n(data)
    nbits = n * (n - 1) // 2
    body = data[pos:]
    if len(body) != (nbits + 5) // 6:
        raise ParseError(f"graph6 body has {len(body)} bytes, expected {(nbits + 5) // 6}")
    bits = []
    for b in body:
        v = b - 63
        bits.extend((v >> s) & 1 for s in range(5, -1, -1))
    if any(bits[nbits:]):
        raise ParseError("nonzero graph6 padding")
    edges = []
    i = 0
    for j in range(1, n):
        for u in range(j):
            if bits[i]:
                edges.append((u, j))
            i += 1
    return n, edges


def parse_graph6(line: str) -> CubicMultipole:
    """Parse a graph6 line into a cubic graph; raises ``NotCubicError`` otherwise."""
    n, edges = parse_graph6_edges(line)
    return CubicMultipole.build(n, edges)


def write_graph6(g: CubicMultipole) -> str:
    if not g.is_simple():
        raise GraphError("graph6 encodes simple graphs only")
    n = g.n
    adj = {tuple(sorted(g.endpoints(e))) for e in range(g.num_edges)}
    bits = [1 if (u, j) in adj else 0 for j in range(1, n) for u in range(j)]
    bits += [0] * (-len(bits) % 6)
    body = "".join(
        chr(63 + sum(b << (5 - s) for s, b in enumerate(bits[i:i + 6])))
        for i in range(0, len(bits), 6)
    )
    return _encode_n(n) + body


def read_graph6_stream(stream: Iterable[str]) -> Iterator[str]:
    for line in stream:
        line = line.strip()
        if line and not line.startswith("#"):
            yield line


# -- multipole text -----------------------------------------------------------


def _end(tok: str) -> int:
    try:
        if tok.startswith("*"):
            slot = int(tok[1:])
            if slot < 1:
                raise ParseError(f"bad semiedge slot {tok!r}")
            return -slot
        v = int(tok)
    except ValueError:
        raise ParseError(f"bad edge end {tok!r}") from None
    if v < 0:
        raise ParseError(f"bad vertex {tok!r}")
    return v


def parse_multipole(text: str) -> CubicMultipole:
    lines = [ln.split("#", 1)[0].strip() for ln in text.splitlines()]
    lines = [ln for ln in lines if ln]
    if not lines:
        raise ParseError("empty multipole text")
    head = lines[0].split()
    if len(head) != 3:
        raise ParseError("header must be 'n k f'")
    try:
        n, k, f = (int(x) for x in head)
    except ValueError:
        raise ParseError("header must hold three integers") from None
    edges = []
    for ln in lines[1:]:
        toks = ln.split()
        if len(toks) != 2:
            raise ParseError(f"edge line {ln!r} must have two ends")
        edges.append((_end(toks[0]), _end(toks[1])))
    try:
        g = CubicMultipole.build(n, edges)
    except GraphError as exc:
        raise ParseError(str(exc)) from exc
    if g.k != k or len(g.isolated()) != f:
        raise ParseError(f"header says k={k} f={f}, edges give k={g.k} f={len(g.isolated())}")
    return g


def write_multipole(g: CubicMultipole) -> str:
    out = [f"{g.n} {g.k} {len(g.isolated())}"]
    for a, b in g.edge_list():
        out.append(" ".join(str(x) if x >= 0 else f"*{-x}" for x in (a, b)))
    return "\n".join(out) + "\n"


def read_multipole_stream(stream: TextIO | Iterable[str]) -> Iterator[CubicMultipole]:
    record: list[str] = []
    for line in stream:
        if line.strip():
            record.append(line)
        elif record:
            yield parse_multipole("".join(record))
            record = []
    if record:
        yield parse_multipole("".join(record))


def write_multipole_stream(graphs: Iterable[CubicMultipole]) -> str:
    return "\n".join(write_multipole(g) for g in graphs)


# -- rotations ----------------------------------------------------------------


def write_rotation(rot: Iterable[Iterable[int]]) -> str:
    return "".join(f"{v}: {' '.join(map(str, darts))}\n" for v, darts in enumerate(rot))


def parse_rotation(text: str) -> list[tuple[int, ...]]:
    rows: dict[int, tuple[int, ...]] = {}
    for ln in text.splitlines():
        ln = ln.split("#", 1)[0].strip()
        if not ln:
            continue
        head, _, rest = ln.partition(":")
        try:
            v = int(head)
            darts = tuple(int(x) for x in rest.split())
        except ValueError:
            raise ParseError(f"bad rotation line {ln!r}") from None
        if v in rows:
            raise ParseError(f"vertex {v} listed twice")
        rows[v] = darts
    if sorted(rows) != list(range(len(rows))):
        raise ParseError("rotation must list vertices 0..n-1")
    return [rows[v] for v in range(len(rows))]
