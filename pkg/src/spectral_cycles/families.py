"""Constructors and structural recognizers for the named graph families.

All constructors use canonical labelings so tests and traces are replayable;
recognizers are structural (degree-pattern pruning plus direct checks), never
general isomorphism.
"""

from __future__ import annotations

from dataclasses import dataclass

from .graphs import Bipartition, Graph, bipartition, is_connected


def complete_graph(n: int) -> Graph:
    if n < 1:
        raise ValueError(f"complete graph needs n >= 1, got {n}")
    return Graph(n, [(u, v) for u in range(n) for v in range(u + 1, n)])


def complete_bipartite(a: int, b: int) -> Graph:
    """K_{a,b} with parts {0..a-1} and {a..a+b-1}."""
    if a < 1 or b < 1:
        raise ValueError(f"complete bipartite needs a,b >= 1, got ({a},{b})")
    return Graph(a + b, [(u, a + v) for u in range(a) for v in range(b)])


def path_graph(l: int) -> Graph:
    if l < 1:
        raise ValueError(f"path needs order >= 1, got {l}")
    return Graph(l, [(i, i + 1) for i in range(l - 1)])


def cycle_graph(l: int) -> Graph:
    if l < 3:
        raise ValueError(f"cycle needs order >= 3, got {l}")
    return Graph(l, [(i, (i + 1) % l) for i in range(l)])


def star(n: int) -> Graph:
    """K_{1,n-1}: center 0, leaves 1..n-1."""
    if n < 2:
        raise ValueError(f"star needs n >= 2, got {n}")
    return Graph(n, [(0, v) for v in range(1, n)])


def kab_dot_k3(a: int, b: int) -> Graph:
    """K_{a,b} with a triangle glued at one vertex of the size-b part.

    Labels: part A = {0..a-1}, part B = {a..a+b-1}, glue vertex w = a, and
    triangle completion x = a+b, y = a+b+1. Order a+b+2, size ab+3.
    """
    if a < 1 or b < 1:
        raise ValueError(f"kab_dot_k3 needs a,b >= 1, got ({a},{b})")
    w, x, y = a, a + b, a + b + 1
    edges = [(u, a + v) for u in range(a) for v in range(b)]
    edges += [(w, x), (w, y), (x, y)]
    return Graph(a + b + 2, edges)


def snk(n: int, k: int) -> Graph:
    """Join of K_k (vertices 0..k-1) with n-k isolated vertices."""
    if not 1 <= k < n:
        raise ValueError(f"snk needs 1 <= k < n, got (n={n}, k={k})")
    edges = [(u, v) for u in range(k) for v in range(u + 1, k)]
    edges += [(u, v) for u in range(k) for v in range(k, n)]
    return Graph(n, edges)


def snk_plus(n: int, k: int) -> Graph:
    """snk plus one edge between the two lowest-index independent vertices."""
    if n - k < 2:
        raise ValueError(f"snk_plus needs n-k >= 2, got (n={n}, k={k})")
    g = snk(n, k)
    return Graph(n, g.edges() + [(k, k + 1)])


def star_with_tail(n: int) -> Graph:
    """Tree on n vertices: star center 0, leaves 1..n-2, tail n-1 hung on leaf 1.

    Degree sequence {n-2, 2, 1^(n-2)}.
    """
    if n < 4:
        raise ValueError(f"star_with_tail needs n >= 4, got {n}")
    edges = [(0, v) for v in range(1, n - 1)]
    edges.append((1, n - 1))
    return Graph(n, edges)


def clique_with_tail(n: int) -> Graph:
    """K_{n-1} on 0..n-2 plus a pendant vertex n-1 attached to vertex 0."""
    if n < 3:
        raise ValueError(f"clique_with_tail needs n >= 3, got {n}")
    edges = [(u, v) for u in range(n - 1) for v in range(u + 1, n - 1)]
    edges.append((0, n - 1))
    return Graph(n, edges)


def recognize_kab_dot_k3(g: Graph):
    """Return (a, b) if g is some K_{a,b}.K3, else None.

    Looks for a triangle {w,x,y} with d(x)=d(y)=2, deletes x and y, and checks
    that the remainder is a complete bipartite graph; b is the size of the
    part containing w. No general isomorphism involved.
    """
    n = g.n
    if n < 4:
        return None
    deg2 = [v for v in range(n) if g.degree(v) == 2]
    for x in deg2:
        p, q = g.neighbors(x)
        if not g.has_edge(p, q):
            continue
        for y, w in ((p, q), (q, p)):
            if g.degree(y) != 2:
                continue
            ab = _complete_bipartite_parts(g, exclude=(x, y))
            if ab is None:
                continue
            part_p, part_q = ab
            if w in part_q:
                part_p, part_q = part_q, part_p
            if w not in part_p:
                continue
            return (len(part_q), len(part_p))
    return None


def _complete_bipartite_parts(g: Graph, exclude):
    """Parts of g minus `exclude` if that remainder is complete bipartite."""
    drop = set(exclude)
    keep = [v for v in range(g.n) if v not in drop]
    if len(keep) < 2:
        return None
    mask = 0
    for v in keep:
        mask |= 1 << v
    adj = {v: g.neighbor_mask(v) & mask for v in keep}
    # Two-color greedily from the least vertex; the remainder must be connected
    # for a unique coloring, which completeness then enforces anyway.
    color = {}
    stack = [keep[0]]
    color[keep[0]] = 0
    while stack:
        u = stack.pop()
        rest = adj[u]
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            if v not in color:
                color[v] = color[u] ^ 1
                stack.append(v)
            elif color[v] == color[u]:
                return None
    if len(color) != len(keep):
        return None
    part0 = [v for v in keep if color[v] == 0]
    part1 = [v for v in keep if color[v] == 1]
    if not part0 or not part1:
        return None
    want1 = 0
    for v in part1:
        want1 |= 1 << v
    want0 = mask ^ want1
    for v in part0:
        if adj[v] != want1:
            return None
    for v in part1:
        if adj[v] != want0:
            return None
    return part0, part1


def is_complete(g: Graph) -> bool:
    return g.n >= 1 and g.m == g.n * (g.n - 1) // 2


def is_star(g: Graph) -> bool:
    """K_{1,n-1} for n >= 2."""
    return g.n >= 2 and g.m == g.n - 1 and g.max_degree() == g.n - 1


def is_star_with_tail(g: Graph) -> bool:
    """Tree with degree sequence {n-2, 2, 1^(n-2)}, n >= 4."""
    n = g.n
    if n < 4 or g.m != n - 1 or not is_connected(g):
        return False
    degs = sorted(g.degree(v) for v in range(n))
    return degs == [1] * (n - 2) + sorted((2, n - 2))


def is_clique_with_tail(g: Graph) -> bool:
    """K_{n-1} plus one pendant vertex, n >= 3."""
    n = g.n
    if n < 3 or g.m != (n - 1) * (n - 2) // 2 + 1:
        return False
    pendants = [v for v in range(n) if g.degree(v) == 1]
    if len(pendants) != 1 and n > 3:
        return False
    for p in pendants:
        rest = [v for v in range(n) if v != p]
        if all(g.has_edge(u, v) for i, u in enumerate(rest) for v in rest[i + 1 :]):
            return True
    return False


# name -> (constructor, parameter count); the CLI gen subcommand dispatches here
FAMILIES = {
    "complete": (complete_graph, 1),
    "complete_bipartite": (complete_bipartite, 2),
    "path": (path_graph, 1),
    "cycle": (cycle_graph, 1),
    "star": (star, 1),
    "kab_dot_k3": (kab_dot_k3, 2),
    "snk": (snk, 2),
    "snk_plus": (snk_plus, 2),
    "star_with_tail": (star_with_tail, 1),
    "clique_with_tail": (clique_with_tail, 1),
}


@dataclass(frozen=True)
class FamilySpec:
    """Tagged family description; build() dispatches to the constructor."""

    kind: str
    params: tuple[int, ...]

    def __post_init__(self):
        if self.kind not in FAMILIES:
            raise ValueError(f"unknown family {self.kind!r}")
        arity = FAMILIES[self.kind][1]
        if len(self.params) != arity:
            raise ValueError(
                f"family {self.kind} takes {arity} parameter(s), got {len(self.params)}"
            )

    def build(self) -> Graph:
        return FAMILIES[self.kind][0](*self.params)


def extremal_split(n: int) -> tuple[int, int]:
    """The (a, b) of the order-n extremal graph: a = ceil((n-2)/2), b = floor."""
    if n < 4:
        raise ValueError(f"extremal graph needs n >= 4, got {n}")
    return ((n - 2) + 1) // 2, (n - 2) // 2


def extremal_graph(n: int) -> Graph:
    a, b = extremal_split(n)
    return kab_dot_k3(a, b)


def side_of(bip: Bipartition, v: int) -> str:
    if v in bip.side_a:
        return "a"
    if v in bip.side_b:
        return "b"
    raise ValueError(f"vertex {v} in neither side")


def bipartition_of(g: Graph) -> Bipartition:
    """Bipartition of a graph known to be bipartite; raises otherwise."""
    bip = bipartition(g)
    if not isinstance(bip, Bipartition):
        raise ValueError("graph is not bipartite")
    return bip
