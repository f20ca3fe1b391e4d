"""Undirected graph core: representation, structure queries, graph6 and edge-list I/O.

Vertices are integers 0..n-1. Graphs are immutable once built. Adjacency is
stored as one bitmask per vertex, which keeps neighbourhood intersection,
induced subgraphs and isomorphism-free equality cheap at desk scale.
"""

from __future__ import annotations

from collections import deque
from dataclasses import dataclass

import numpy as np

GRAPH6_MAX_N = 258048  # one past the largest order the 4-byte header encodes


class GraphFormatError(ValueError):
    """Malformed graph6 or edge-list input. Carries the offending byte offset."""

    def __init__(self, message: str, offset: int | None = None):
        if offset is not None:
            message = f"{message} (byte offset {offset})"
        super().__init__(message)
        self.offset = offset


class Graph:
    """Immutable simple graph on vertices 0..n-1 (no loops, no multi-edges)."""

    __slots__ = ("n", "_adj", "_m", "_nbrs", "_matrix")

    def __init__(self, n: int, edges=()):
        if n < 0:
            raise ValueError(f"vertex count must be nonnegative, got {n}")
        adj = [0] * n
        m = 0
        for u, v in edges:
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of range for n={n}")
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (adj[u] >> v) & 1:
                m += 1
                adj[u] |= 1 << v
                adj[v] |= 1 << u
        self.n = n
        self._adj = tuple(adj)
        self._m = m
        self._nbrs = None
        self._matrix = None

    @property
    def m(self) -> int:
        """Number of edges."""
        return self._m

    def degree(self, v: int) -> int:
        return self._adj[v].bit_count()

    def min_degree(self) -> int:
        """Minimum degree; 0 for the empty-vertex graph by convention."""
        if self.n == 0:
            return 0
        return min(a.bit_count() for a in self._adj)

    def max_degree(self) -> int:
        if self.n == 0:
            return 0
        return max(a.bit_count() for a in self._adj)

    def has_edge(self, u: int, v: int) -> bool:
        return bool((self._adj[u] >> v) & 1)

    def neighbor_mask(self, v: int) -> int:
        """Neighbourhood of v as a bitmask."""
        return self._adj[v]

    def neighbors(self, v: int) -> tuple[int, ...]:
        if self._nbrs is None:
            self._nbrs = tuple(_mask_to_tuple(a) for a in self._adj)
        return self._nbrs[v]

    def edges(self) -> list[tuple[int, int]]:
        """All edges as (u, v) with u < v, lexicographically sorted."""
        out = []
        for u in range(self.n):
            rest = self._adj[u] >> (u + 1)
            v = u + 1
            while rest:
                if rest & 1:
                    out.append((u, v))
                rest >>= 1
                v += 1
        return out

    def adjacency_matrix(self) -> np.ndarray:
        """Dense float64 adjacency matrix (cached, read-only)."""
        if self._matrix is None:
            a = np.zeros((self.n, self.n), dtype=np.float64)
            for u, v in self.edges():
                a[u, v] = 1.0
                a[v, u] = 1.0
            a.setflags(write=False)
            self._matrix = a
        return self._matrix

    def __eq__(self, other) -> bool:
        if not isinstance(other, Graph):
            return NotImplemented
        return self.n == other.n and self._adj == other._adj

    def __hash__(self) -> int:
        return hash((self.n, self._adj))

    def __repr__(self) -> str:
        return f"Graph(n={self.n}, m={self._m})"


def _mask_to_tuple(mask: int) -> tuple[int, ...]:
    out = []
    v = 0
    while mask:
        if mask & 1:
            out.append(v)
        mask >>= 1
        v += 1
    return tuple(out)


@dataclass(frozen=True)
class Bipartition:
    """Two-colouring of a bipartite graph. Every vertex is in exactly one side."""

    side_a: frozenset
    side_b: frozenset


@dataclass(frozen=True)
class OddCycle:
    """Witness that a graph is not bipartite: a simple cycle of odd length."""

    vertices: tuple[int, ...]


@dataclass(frozen=True)
class StripTrace:
    """Replayable record of the cut-vertex stripping loop.

    `removed` lists deleted vertices in removal order, in the labels of the
    input graph. `core` is the induced subgraph on the survivors with labels
    compacted order-preservingly; `core_vertices[i]` is the input label of
    core vertex i.
    """

    removed: tuple[int, ...]
    core: Graph
    core_vertices: tuple[int, ...]


def components(g: Graph) -> list[list[int]]:
    """Connected components as sorted vertex lists, ordered by least vertex."""
    seen = 0
    out = []
    for s in range(g.n):
        if (seen >> s) & 1:
            continue
        comp = 1 << s
        frontier = 1 << s
        while frontier:
            nxt = 0
            rest = frontier
            v = 0
            while rest:
                tz = (rest & -rest).bit_length() - 1
                nxt |= g.neighbor_mask(tz)
                rest &= rest - 1
                v = tz
            frontier = nxt & ~comp
            comp |= frontier
        seen |= comp
        out.append(list(_mask_to_tuple(comp)))
    return out


def is_connected(g: Graph) -> bool:
    return len(components(g)) <= 1


def bipartition(g: Graph):
    """Two-colour g, or return an odd-cycle witness.

    Returns a Bipartition on success. Per component, the side containing the
    least vertex of that component goes into side_a. On failure returns an
    OddCycle built from the BFS tree paths of the first conflicting edge.
    """
    color = [-1] * g.n
    parent = [-1] * g.n
    side_a, side_b = set(), set()
    for root in range(g.n):
        if color[root] != -1:
            continue
        color[root] = 0
        queue = deque([root])
        while queue:
            u = queue.popleft()
            for v in g.neighbors(u):
                if color[v] == -1:
                    color[v] = color[u] ^ 1
                    parent[v] = u
                    queue.append(v)
                elif color[v] == color[u] and v != u:
                    return OddCycle(_odd_cycle_from_conflict(parent, u, v))
    for v in range(g.n):
        (side_a if color[v] == 0 else side_b).add(v)
    return Bipartition(frozenset(side_a), frozenset(side_b))


def _odd_cycle_from_conflict(parent, u, v) -> tuple[int, ...]:
    # Tree paths from u and v meet at their lowest common ancestor; the two
    # legs plus the edge uv form a simple cycle of odd length.
    anc_u = [u]
    x = u
    while parent[x] != -1:
        x = parent[x]
        anc_u.append(x)
    pos = {w: i for i, w in enumerate(anc_u)}
    leg_v = [v]
    y = v
    while y not in pos:
        y = parent[y]
        leg_v.append(y)
    lca = y
    cycle = anc_u[: pos[lca] + 1] + leg_v[-2::-1]
    return tuple(cycle)


def is_bipartite(g: Graph) -> bool:
    return isinstance(bipartition(g), Bipartition)


def cut_vertices(g: Graph) -> tuple[int, ...]:
    """Articulation points (vertices whose removal increases the component count)."""
    n = g.n
    disc = [-1] * n
    low = [0] * n
    is_cut = [False] * n
    timer = 0
    for root in range(n):
        if disc[root] != -1:
            continue
        # Iterative lowlink DFS; recursion would overflow on long paths.
        stack = [(root, -1, iter(g.neighbors(root)))]
        disc[root] = low[root] = timer
        timer += 1
        root_children = 0
        while stack:
            v, parent, it = stack[-1]
            advanced = False
            for w in it:
                if disc[w] == -1:
                    disc[w] = low[w] = timer
                    timer += 1
                    if v == root:
                        root_children += 1
                    stack.append((w, v, iter(g.neighbors(w))))
                    advanced = True
                    break
                elif w != parent:
                    low[v] = min(low[v], disc[w])
            if not advanced:
                stack.pop()
                if stack:
                    pv = stack[-1][0]
                    low[pv] = min(low[pv], low[v])
                    if pv != root and low[v] >= disc[pv]:
                        is_cut[pv] = True
        if root_children >= 2:
            is_cut[root] = True
    return tuple(v for v in range(n) if is_cut[v])


def induced_subgraph(g: Graph, vertices) -> tuple[Graph, tuple[int, ...]]:
    """Induced subgraph with labels compacted order-preservingly.

    Returns (subgraph, vmap) where vmap[new_label] = old_label.
    """
    vs = sorted(set(vertices))
    if vs and not (0 <= vs[0] and vs[-1] < g.n):
        raise ValueError("vertex out of range")
    index = {old: new for new, old in enumerate(vs)}
    edges = []
    for new_u, old_u in enumerate(vs):
        for old_v in g.neighbors(old_u):
            if old_v > old_u and old_v in index:
                edges.append((new_u, index[old_v]))
    return Graph(len(vs), edges), tuple(vs)


def delete_vertices(g: Graph, vertices) -> tuple[Graph, tuple[int, ...]]:
    """Complement of induced_subgraph: drop `vertices`, compact the rest."""
    drop = set(vertices)
    return induced_subgraph(g, [v for v in range(g.n) if v not in drop])


def strip_to_2connected(g: Graph) -> StripTrace:
    """Repeatedly delete the lowest-index cut vertex until none remains.

    Indices refer to the labels of the input graph throughout, so the trace
    replays: deleting trace.removed from g, in order, reproduces trace.core.
    Every component of the core is 2-connected or has at most 2 vertices.
    """
    alive = list(range(g.n))
    current = g
    removed = []
    while True:
        cuts = cut_vertices(current)
        if not cuts:
            break
        target = min(alive[c] for c in cuts)
        removed.append(target)
        alive.remove(target)
        current, _ = induced_subgraph(g, alive)
    return StripTrace(tuple(removed), current, tuple(alive))


def dense_core_vertices(g: Graph, threshold: int) -> tuple[int, ...]:
    """Vertices surviving iterated deletion of all vertices with degree <= threshold."""
    deg = [g.degree(v) for v in range(g.n)]
    dead = [False] * g.n
    queue = deque(v for v in range(g.n) if deg[v] <= threshold)
    while queue:
        v = queue.popleft()
        if dead[v]:
            continue
        dead[v] = True
        for w in g.neighbors(v):
            if not dead[w]:
                deg[w] -= 1
                if deg[w] <= threshold:
                    queue.append(w)
    return tuple(v for v in range(g.n) if not dead[v])


def dense_core(g: Graph, threshold: int) -> Graph:
    """Maximal induced subgraph whose minimum degree exceeds threshold.

    May be empty. Labels are compacted; use dense_core_vertices for the
    surviving input labels.
    """
    sub, _ = induced_subgraph(g, dense_core_vertices(g, threshold))
    return sub


# ---------------------------------------------------------------------------
# graph6 codec
#
# Headerless format: an order field (one byte 63+n for n < 63, or '~' plus
# three bytes holding an 18-bit big-endian value for 63 <= n < 258048),
# followed by the upper triangle read column by column -- bit k runs over
# (0,1), (0,2), (1,2), (0,3), ... -- packed into 6-bit groups, each group
# stored as one byte with 63 added. Trailing pad bits must be zero.
# ---------------------------------------------------------------------------


def encode_graph6(g: Graph) -> str:
    n = g.n
    if n >= GRAPH6_MAX_N:
        raise ValueError(f"graph6 supports n < {GRAPH6_MAX_N}, got {n}")
    if n < 63:
        head = [63 + n]
    else:
        head = [126, 63 + (n >> 12 & 63), 63 + (n >> 6 & 63), 63 + (n & 63)]
    body = []
    group = 0
    nbits = 0
    for col in range(1, n):
        col_mask = g.neighbor_mask(col)
        for row in range(col):
            group = (group << 1) | (col_mask >> row & 1)
            nbits += 1
            if nbits == 6:
                body.append(63 + group)
                group = 0
                nbits = 0
    if nbits:
        body.append(63 + (group << (6 - nbits)))
    return bytes(head + body).decode("ascii")


def decode_graph6(text) -> Graph:
    """Decode one graph6 token. Raises GraphFormatError with a byte offset."""
    data = text.encode("ascii", errors="replace") if isinstance(text, str) else bytes(text)
    if not data:
        raise GraphFormatError("empty graph6 input", 0)
    for i, b in enumerate(data):
        if not (63 <= b <= 126):
            raise GraphFormatError(f"byte {b} outside graph6 alphabet 63..126", i)
    if data[0] == 126:
        if len(data) >= 2 and data[1] == 126:
            raise GraphFormatError("8-byte order field not supported", 1)
        if len(data) < 4:
            raise GraphFormatError("truncated extended order field", len(data))
        n = ((data[1] - 63) << 12) | ((data[2] - 63) << 6) | (data[3] - 63)
        if n < 63:
            raise GraphFormatError(f"non-canonical extended order {n} below 63", 1)
        pos = 4
    else:
        n = data[0] - 63
        pos = 1
    nbits = n * (n - 1) // 2
    nbytes = (nbits + 5) // 6
    if len(data) - pos < nbytes:
        raise GraphFormatError(
            f"payload too short: need {nbytes} bytes for n={n}", len(data)
        )
    if len(data) - pos > nbytes:
        raise GraphFormatError("trailing bytes after graph6 payload", pos + nbytes)
    edges = []
    k = 0
    col, row = 1, 0
    for i in range(nbytes):
        group = data[pos + i] - 63
        for shift in range(5, -1, -1):
            if k >= nbits:
                if (group >> shift) & 1:
                    raise GraphFormatError("nonzero padding bits", pos + i)
                continue
            if (group >> shift) & 1:
                edges.append((row, col))
            k += 1
            row += 1
            if row == col:
                col += 1
                row = 0
    return Graph(n, edges)


# ---------------------------------------------------------------------------
# Edge-list format and stream autodetection
# ---------------------------------------------------------------------------


def format_edge_list(g: Graph) -> str:
    """Header line 'n m' followed by one '(u, v)' pair per line, 0-based."""
    lines = [f"{g.n} {g.m}"]
    lines.extend(f"{u} {v}" for u, v in g.edges())
    return "\n".join(lines)


def _stream_events(text: str):
    """Yield ('graph', Graph) or ('error', message) per item of mixed input."""
    lines = text.splitlines()
    i = 0
    while i < len(lines):
        line = lines[i].strip()
        i += 1
        if not line or line.startswith("#"):
            continue
        if 63 <= ord(line[0]) <= 126:
            try:
                yield ("graph", decode_graph6(line))
            except GraphFormatError as exc:
                yield ("error", f"line {i}: {exc}")
            continue
        parts = line.split()
        if len(parts) != 2 or not all(p.lstrip("-").isdigit() for p in parts):
            yield ("error", f"line {i}: expected graph6 or 'n m' header")
            continue
        n, m = int(parts[0]), int(parts[1])
        if n < 0 or m < 0:
            yield ("error", f"line {i}: negative counts in edge-list header")
            continue
        edges = []
        failed = False
        while len(edges) < m:
            if i >= len(lines):
                yield (
                    "error",
                    f"line {i}: edge list ended after {len(edges)} of {m} edges",
                )
                failed = True
                break
            row = lines[i].strip()
            i += 1
            if not row or row.startswith("#"):
                continue
            uv = row.split()
            if len(uv) != 2 or not all(p.lstrip("-").isdigit() for p in uv):
                yield ("error", f"line {i}: expected edge 'u v'")
                failed = True
                break
            edges.append((int(uv[0]), int(uv[1])))
        if failed:
            continue
        try:
            yield ("graph", Graph(n, edges))
        except ValueError as exc:
            yield ("error", f"line {i}: {exc}")


def parse_stream(text: str):
    """Yield graphs from mixed input, autodetecting the format per graph.

    Blank lines and lines starting with '#' are skipped. A line whose first
    byte falls in the graph6 alphabet is decoded as one graph6 token; an
    'n m' header line starts an edge-list block consuming the next m lines.
    Errors carry 1-based line numbers and abort the stream.
    """
    for kind, payload in _stream_events(text):
        if kind == "error":
            raise GraphFormatError(payload)
        yield payload


def parse_stream_tolerant(text: str) -> tuple[list["Graph"], list[str]]:
    """Like parse_stream, but collect per-item errors instead of raising.

    A malformed edge-list block is skipped from the point of failure onward.
    """
    graphs: list[Graph] = []
    errors: list[str] = []
    for kind, payload in _stream_events(text):
        if kind == "error":
            errors.append(payload)
        else:
            graphs.append(payload)
    return graphs, errors


def parse_graphs(text: str) -> list[Graph]:
    return list(parse_stream(text))
