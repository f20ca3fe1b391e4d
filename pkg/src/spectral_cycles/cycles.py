"""Cycle searches, bipartite path construction, and pentagon extension.

Fixed-length cycle search is a three-valued anchored DFS: every cycle is
explored from its minimum vertex only, neighbors are tried in ascending
order, and a breadth-first distance table prunes branches that cannot close
in time. Results are `present` with a validated witness, `absent` when the
exhaustive search finished, or `unknown` when the expansion budget ran out.
"""

from __future__ import annotations

from dataclasses import dataclass
from itertools import combinations, permutations

from .graphs import Bipartition, Graph, bipartition, induced_subgraph

DEFAULT_BUDGET = 10**8
_EXACT_PATH_CAP = 10**7


@dataclass(frozen=True)
class CycleWitness:
    """Vertex sequence of a simple cycle; closing edge implied."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def validate(self, g: Graph) -> None:
        vs = self.vertices
        if len(vs) < 3:
            raise ValueError(f"cycle needs >= 3 vertices, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise ValueError("cycle repeats a vertex")
        for v in vs:
            if not 0 <= v < g.n:
                raise ValueError(f"vertex {v} out of range")
        for i, u in enumerate(vs):
            v = vs[(i + 1) % len(vs)]
            if not g.has_edge(u, v):
                raise ValueError(f"missing cycle edge ({u},{v})")


@dataclass(frozen=True)
class PathWitness:
    """Vertex sequence of a simple path."""

    vertices: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.vertices)

    def validate(self, g: Graph) -> None:
        vs = self.vertices
        if len(vs) < 2:
            raise ValueError(f"path needs >= 2 vertices, got {len(vs)}")
        if len(set(vs)) != len(vs):
            raise ValueError("path repeats a vertex")
        for v in vs:
            if not 0 <= v < g.n:
                raise ValueError(f"vertex {v} out of range")
        for u, v in zip(vs, vs[1:]):
            if not g.has_edge(u, v):
                raise ValueError(f"missing path edge ({u},{v})")


@dataclass(frozen=True)
class CycleSearch:
    verdict: str  # present | absent | unknown
    witness: CycleWitness | None
    expansions: int


def _bfs_dist(adj: list[int], n: int, source: int, allowed: int) -> list[int]:
    """Hop distances from source inside the allowed mask; -1 if unreachable."""
    dist = [-1] * n
    dist[source] = 0
    frontier = 1 << source
    seen = frontier
    d = 0
    while frontier:
        d += 1
        nxt = 0
        rest = frontier
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            nxt |= adj[v]
        nxt &= allowed & ~seen
        rest = nxt
        while rest:
            v = (rest & -rest).bit_length() - 1
            rest &= rest - 1
            dist[v] = d
        seen |= nxt
        frontier = nxt
    return dist


def has_cycle_of_length(g: Graph, length: int, budget: int = DEFAULT_BUDGET) -> CycleSearch:
    """Search for a simple cycle on exactly `length` vertices.

    Odd lengths on bipartite graphs return absent immediately: an odd closed
    walk would force an odd cycle, which a two-coloring rules out.
    """
    if length < 3:
        raise ValueError(f"cycle length must be >= 3, got {length}")
    if budget < 1:
        raise ValueError(f"budget must be positive, got {budget}")
    n = g.n
    if length > n:
        return CycleSearch("absent", None, 0)
    if length % 2 == 1 and isinstance(bipartition(g), Bipartition):
        return CycleSearch("absent", None, 0)
    adj = [g.neighbor_mask(v) for v in range(n)]
    expansions = 0
    for a in range(n - length + 1):
        allowed = ((1 << n) - 1) & ~((1 << a) - 1)
        if (adj[a] & allowed).bit_count() < 2:
            continue
        dist = _bfs_dist(adj, n, a, allowed)
        path = [a]
        onpath = 1 << a
        stack = [adj[a] & allowed & ~onpath]
        while stack:
            top = stack[-1]
            if top == 0:
                stack.pop()
                last = path.pop()
                onpath &= ~(1 << last)
                continue
            w = (top & -top).bit_length() - 1
            stack[-1] = top & (top - 1)
            i = len(path)
            d = dist[w]
            if d < 0 or d > length - i:
                continue
            if i == length - 1:
                if (adj[w] >> a) & 1 and path[1] < w:
                    witness = CycleWitness(tuple(path + [w]))
                    witness.validate(g)
                    return CycleSearch("present", witness, expansions)
                continue
            expansions += 1
            if expansions > budget:
                return CycleSearch("unknown", None, expansions)
            path.append(w)
            onpath |= 1 << w
            stack.append(adj[w] & allowed & ~onpath)
    return CycleSearch("absent", None, expansions)


def naive_cycle_oracle(g: Graph, length: int) -> CycleWitness | None:
    """Brute-force reference: checks every vertex arrangement directly."""
    if length < 3:
        raise ValueError(f"cycle length must be >= 3, got {length}")
    if length > g.n:
        return None
    for combo in combinations(range(g.n), length):
        first = combo[0]
        for rest in permutations(combo[1:]):
            if rest[0] > rest[-1]:
                continue
            cyc = (first,) + rest
            if all(
                g.has_edge(cyc[i], cyc[(i + 1) % length]) for i in range(length)
            ):
                return CycleWitness(cyc)
    return None


def odd_cycle_profile(
    g: Graph, max_len: int, budget: int = DEFAULT_BUDGET
) -> dict[int, CycleSearch]:
    """Search every odd length 3..max_len; one budget per length."""
    if max_len < 3:
        raise ValueError(f"max_len must be >= 3, got {max_len}")
    return {
        length: has_cycle_of_length(g, length, budget)
        for length in range(3, max_len + 1, 2)
    }


def common_neighbors(g: Graph, u: int, v: int) -> tuple[int, ...]:
    if not (0 <= u < g.n and 0 <= v < g.n):
        raise ValueError(f"vertex pair ({u},{v}) out of range")
    if u == v:
        raise ValueError("common neighborhood needs two distinct vertices")
    mask = g.neighbor_mask(u) & g.neighbor_mask(v)
    out = []
    while mask:
        w = (mask & -mask).bit_length() - 1
        mask &= mask - 1
        out.append(w)
    return tuple(out)


def _validate_bipartition(g: Graph, bip: Bipartition) -> None:
    if bip.side_a & bip.side_b:
        raise ValueError("bipartition sides overlap")
    if bip.side_a | bip.side_b != frozenset(range(g.n)):
        raise ValueError("bipartition does not cover the vertex set")
    mask_a = 0
    for v in bip.side_a:
        mask_a |= 1 << v
    mask_b = ((1 << g.n) - 1) ^ mask_a
    for u in range(g.n):
        own = mask_a if (mask_a >> u) & 1 else mask_b
        inside = g.neighbor_mask(u) & own & ~((1 << (u + 1)) - 1)
        if inside:
            v = (inside & -inside).bit_length() - 1
            raise ValueError(f"edge ({u},{v}) stays inside one side")


@dataclass(frozen=True)
class Claim1Report:
    """Minimum same-side codegree versus the (1/5 - 6*theta)n bound."""

    n: int
    theta: float
    k: int
    bound: float
    min_common: int | None
    min_pair: tuple[int, int] | None
    min_side: str | None
    pairs_checked: int
    meets_bound: bool
    exceeds_k: bool


def claim1_bound_check(h: Graph, bip: Bipartition, k: int, theta: float) -> Claim1Report:
    """Scan all same-side pairs of a dense bipartite graph for codegree.

    Preconditions: bip is a valid bipartition of h, every degree exceeds
    (2/5 - 2*theta) n, k >= 1, and 0 < theta < 1/10.
    """
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    if not 0 < theta < 0.1:
        raise ValueError(f"theta must lie in (0, 0.1), got {theta}")
    _validate_bipartition(h, bip)
    n = h.n
    degree_floor = (0.4 - 2 * theta) * n
    for v in range(n):
        if h.degree(v) <= degree_floor:
            raise ValueError(
                f"vertex {v} has degree {h.degree(v)}, needs > {degree_floor:.4f}"
            )
    bound = (0.2 - 6 * theta) * n
    best = None
    pairs_checked = 0
    for side_name, side in (("a", bip.side_a), ("b", bip.side_b)):
        other = len(bip.side_b if side_name == "a" else bip.side_a)
        for u, v in combinations(sorted(side), 2):
            c = (h.neighbor_mask(u) & h.neighbor_mask(v)).bit_count()
            pairs_checked += 1
            assert c >= h.degree(u) + h.degree(v) - other
            if best is None or c < best[0]:
                best = (c, (u, v), side_name)
    if best is None:
        return Claim1Report(n, theta, k, bound, None, None, None, 0, True, True)
    c, pair, side_name = best
    return Claim1Report(
        n, theta, k, bound, c, pair, side_name, pairs_checked, c >= bound, c > k
    )


@dataclass(frozen=True)
class PathAbsent:
    """Path construction failed; stage names the first unmet selection."""

    stage: str
    detail: str


def bipartite_path_between(
    h: Graph,
    bip: Bipartition,
    v1: int,
    v2: int,
    order: int,
    mode: str = "constructive",
) -> PathWitness | PathAbsent:
    """Simple path of exactly `order` vertices from v1 to v2.

    v1 must lie in side_a and v2 in side_b, so the endpoints sit on opposite
    sides and the order is even. Constructive mode grows two interleaved
    vertex families greedily (always the lowest admissible index) and can
    stall on sparse graphs; exact mode backtracks exhaustively, so absence is
    a proof there.
    """
    if order < 4 or order % 2 != 0:
        raise ValueError(f"order must be even and >= 4, got {order}")
    if mode not in ("constructive", "exact"):
        raise ValueError(f"unknown mode {mode!r}")
    _validate_bipartition(h, bip)
    if v1 not in bip.side_a:
        raise ValueError(f"v1={v1} must lie in side_a")
    if v2 not in bip.side_b:
        raise ValueError(f"v2={v2} must lie in side_b")
    if order > h.n:
        return PathAbsent("precheck", f"order {order} exceeds {h.n} vertices")
    if mode == "constructive":
        return _constructive_path(h, v1, v2, order)
    return _exact_path(h, v1, v2, order)


def _constructive_path(h: Graph, v1: int, v2: int, order: int):
    l = order // 2
    adj = [h.neighbor_mask(v) for v in range(h.n)]
    used = (1 << v1) | (1 << v2)

    def lowest(mask: int) -> int | None:
        mask &= ~used
        if mask == 0:
            return None
        return (mask & -mask).bit_length() - 1

    ones = [v1]  # shares a side with v1
    twos = [v2]  # shares a side with v2
    w = lowest(adj[v1])
    if w is None:
        return PathAbsent("v2_1", f"no unused neighbor of v1={v1}")
    twos.append(w)
    used |= 1 << w
    w = lowest(adj[v2] & adj[twos[1]])
    if w is None:
        return PathAbsent("v1_1", f"no unused common neighbor of v2={v2} and {twos[1]}")
    ones.append(w)
    used |= 1 << w
    for i in range(2, l):
        w = lowest(adj[ones[i - 1]])
        if w is None:
            return PathAbsent(f"v2_{i}", f"no unused neighbor of {ones[i - 1]}")
        twos.append(w)
        used |= 1 << w
        w = lowest(adj[twos[i - 1]] & adj[twos[i]])
        if w is None:
            return PathAbsent(
                f"v1_{i}", f"no unused common neighbor of {twos[i - 1]} and {twos[i]}"
            )
        ones.append(w)
        used |= 1 << w
    left = [ones[j] if j % 2 == 0 else twos[j] for j in range(l)]
    right = [twos[j] if j % 2 == 0 else ones[j] for j in range(l)]
    witness = PathWitness(tuple(left + right[::-1]))
    witness.validate(h)
    return witness


def _exact_path(h: Graph, v1: int, v2: int, order: int):
    n = h.n
    adj = [h.neighbor_mask(v) for v in range(n)]
    full = (1 << n) - 1
    dist = _bfs_dist(adj, n, v2, full)
    if dist[v1] < 0 or dist[v1] > order - 1:
        return PathAbsent("exact", "endpoints too far apart")
    path = [v1]
    onpath = 1 << v1
    bit2 = 1 << v2
    stack = [adj[v1] & ~onpath]
    steps = 0
    while stack:
        top = stack[-1]
        if top == 0:
            stack.pop()
            last = path.pop()
            onpath &= ~(1 << last)
            continue
        w = (top & -top).bit_length() - 1
        stack[-1] = top & (top - 1)
        i = len(path)
        if w == v2:
            if i == order - 1:
                witness = PathWitness(tuple(path + [v2]))
                witness.validate(h)
                return witness
            continue
        if i >= order - 1 or dist[w] < 0 or dist[w] > order - 1 - i:
            continue
        steps += 1
        if steps > _EXACT_PATH_CAP:
            raise RuntimeError("exact path search exceeded its internal cap")
        path.append(w)
        onpath |= 1 << w
        stack.append(adj[w] & ~onpath)
    return PathAbsent("exact", "backtracking exhausted all branches")


@dataclass(frozen=True)
class ExtensionResult:
    witness: CycleWitness | None
    case: str  # pentagon_identity | triangle | i | ii | iii | iv
    detail: str


def extend_c5_to_c2k1(
    g: Graph,
    c5,
    h0: Graph,
    vmap: tuple[int, ...],
    bip: Bipartition,
    k: int,
) -> ExtensionResult:
    """Splice a pentagon of g with paths through a dense bipartite core.

    h0 is an induced subgraph of g described by vmap (h0 vertex -> g vertex)
    with bipartition bip. The pentagon is grouped by how many of its vertices
    lie inside the core (cases i >= 3, ii = 2, iii = 1, iv = 0) and each
    feasible splice of a core path with a pentagon arc is tried in turn,
    greedily first and by exact backtracking second. Absence of a result
    means every splice stalled, not that g has no C_{2k+1}.
    """
    pent = tuple(c5.vertices if isinstance(c5, CycleWitness) else c5)
    cyc = CycleWitness(pent)
    cyc.validate(g)
    if len(pent) != 5:
        raise ValueError(f"need a 5-cycle, got {len(pent)} vertices")
    if k < 1:
        raise ValueError(f"k must be >= 1, got {k}")
    _validate_vmap(g, h0, vmap)
    _validate_bipartition(h0, bip)

    if k == 2:
        return ExtensionResult(cyc, "pentagon_identity", "the pentagon itself")
    if k == 1:
        return _triangle_near_pentagon(g, pent)

    smap = {old: new for new, old in enumerate(vmap)}
    in_core = [z in smap for z in pent]
    cnt = sum(in_core)
    case = "i" if cnt >= 3 else "ii" if cnt == 2 else "iii" if cnt == 1 else "iv"
    side1 = frozenset(vmap[v] for v in bip.side_a)

    ext = _Extender(g, h0, vmap, smap, bip, side1, pent, k)
    for strategy in (
        ext.cross_pairs,
        ext.same_side_pairs,
        ext.single_anchor,
        ext.disjoint_pairs,
    ):
        witness = strategy()
        if witness is not None:
            witness.validate(g)
            if len(witness) != 2 * k + 1:
                raise RuntimeError(
                    f"splice produced {len(witness)} vertices, wanted {2 * k + 1}"
                )
            return ExtensionResult(witness, case, strategy.__name__)
    return ExtensionResult(None, case, "every feasible splice stalled")


def _validate_vmap(g: Graph, h0: Graph, vmap) -> None:
    if len(vmap) != h0.n:
        raise ValueError(f"vmap has {len(vmap)} entries for {h0.n} vertices")
    if len(set(vmap)) != len(vmap):
        raise ValueError("vmap repeats a vertex")
    for old in vmap:
        if not 0 <= old < g.n:
            raise ValueError(f"vmap target {old} out of range")
    for u in range(h0.n):
        for v in range(u + 1, h0.n):
            if h0.has_edge(u, v) != g.has_edge(vmap[u], vmap[v]):
                raise ValueError("h0 is not the induced subgraph described by vmap")


def _triangle_near_pentagon(g: Graph, pent) -> ExtensionResult:
    for i in range(5):
        zi, zj = pent[i], pent[(i + 1) % 5]
        for u in common_neighbors(g, zi, zj):
            witness = CycleWitness((zi, zj, u))
            witness.validate(g)
            return ExtensionResult(witness, "triangle", "pentagon edge plus common neighbor")
    return ExtensionResult(None, "triangle", "no triangle meets the pentagon")


class _Extender:
    """Case machinery shared by the four pentagon splice strategies."""

    def __init__(self, g, h0, vmap, smap, bip, side1, pent, k):
        self.g = g
        self.h0 = h0
        self.vmap = vmap
        self.smap = smap
        self.bip = bip
        self.side1 = side1
        self.pent = pent
        self.pentset = set(pent)
        self.k = k
        self.core = set(vmap)

    def _core_side(self, gv: int) -> str:
        return "a" if gv in self.side1 else "b"

    def _core_neighbors(self, gv: int):
        """Core vertices adjacent to gv in g, pentagon excluded, ascending."""
        out = [
            w
            for w in sorted(self.core - self.pentset)
            if self.g.has_edge(gv, w)
        ]
        return out

    def _common_core(self, u: int, v: int):
        """Core common neighbors of two core vertices via h0 adjacency."""
        hu, hv = self.smap[u], self.smap[v]
        mask = self.h0.neighbor_mask(hu) & self.h0.neighbor_mask(hv)
        out = []
        while mask:
            w = (mask & -mask).bit_length() - 1
            mask &= mask - 1
            gv = self.vmap[w]
            if gv not in self.pentset:
                out.append(gv)
        return out

    def _path(self, u: int, w: int, order: int, avoid) -> list[int] | None:
        """Core path from u to w of the exact order, avoiding g-vertices."""
        if order == 2:
            return [u, w] if self.g.has_edge(u, w) else None
        keep = [
            t for t in range(self.h0.n) if self.vmap[t] not in avoid or self.vmap[t] in (u, w)
        ]
        sub, submap = induced_subgraph(self.h0, keep)
        if sub.n < order:
            return None
        pos = {self.vmap[old]: new for new, old in enumerate(submap)}
        if u not in pos or w not in pos:
            return None
        a_side = frozenset(
            new for new, old in enumerate(submap) if old in self.bip.side_a
        )
        b_side = frozenset(range(sub.n)) - a_side
        if pos[u] in a_side:
            sbip = Bipartition(a_side, b_side)
        else:
            sbip = Bipartition(b_side, a_side)
        if pos[w] not in sbip.side_b:
            return None
        got = bipartite_path_between(sub, sbip, pos[u], pos[w], order, "constructive")
        if isinstance(got, PathAbsent):
            got = bipartite_path_between(sub, sbip, pos[u], pos[w], order, "exact")
        if isinstance(got, PathAbsent):
            return None
        return [self.vmap[submap[t]] for t in got.vertices]

    def _walk(self, j: int, i: int, step: int) -> list[int]:
        """Pentagon vertices strictly between positions j and i, walking j -> i."""
        out = []
        t = (j + step) % 5
        while t != i:
            out.append(self.pent[t])
            t = (t + step) % 5
        return out

    def cross_pairs(self):
        """Both splice points on the pentagon, opposite core sides."""
        pent = self.pent
        for i in range(5):
            for sep in (1, 2):
                j = (i + sep) % 5
                zi, zj = pent[i], pent[j]
                if zi not in self.core or zj not in self.core:
                    continue
                if self._core_side(zi) == self._core_side(zj):
                    continue
                # arcs back from zj to zi carry sep-1 or 4-sep intermediate
                # vertices; the splice needs an odd count
                for inter, arc in (
                    (sep - 1, self._walk(j, i, -1)),
                    (4 - sep, self._walk(j, i, 1)),
                ):
                    if inter % 2 == 0:
                        continue
                    l = (2 * self.k + 1 - inter) // 2
                    if not 1 <= l <= self.k:
                        continue
                    avoid = self.pentset - {zi, zj}
                    path = self._path(zi, zj, 2 * l, avoid)
                    if path is not None:
                        return CycleWitness(tuple(path + arc))
        return None

    def same_side_pairs(self):
        """Both splice points on the pentagon, same core side."""
        pent = self.pent
        k = self.k
        for i in range(5):
            for sep in (1, 2):
                j = (i + sep) % 5
                zi, zj = pent[i], pent[j]
                if zi not in self.core or zj not in self.core:
                    continue
                if self._core_side(zi) != self._core_side(zj):
                    continue
                for w in self._common_core(zi, zj):
                    if sep == 1:
                        # path zi..w, then w-zj and the pentagon edge zj-zi
                        path = self._path(zi, w, 2 * k, self.pentset - {zi})
                        if path is not None:
                            return CycleWitness(tuple(path + [zj]))
                    else:
                        # path zi..w, then w-zj and the far arc back to zi
                        far = self._walk(j, i, 1)
                        path = self._path(zi, w, 2 * (k - 1), self.pentset - {zi})
                        if path is not None:
                            return CycleWitness(tuple(path + [zj] + far))
        return None

    def single_anchor(self):
        """One pentagon vertex in the core; enter and leave through it."""
        pent = self.pent
        k = self.k
        for i in range(5):
            z = pent[i]
            if z not in self.core:
                continue
            zside = self._core_side(z)
            for off in (2, 3):
                c = (i + off) % 5
                zc = pent[c]
                between = pent[(i + 1) % 5] if off == 2 else pent[(i + 4) % 5]
                far = self._walk(c, i, 1) if off == 2 else self._walk(c, i, -1)
                for w in self._core_neighbors(zc):
                    if self._core_side(w) == zside:
                        if w == z:
                            continue
                        for u2 in self._common_core(z, w):
                            path = self._path(w, u2, 2 * (k - 1), self.pentset)
                            if path is not None:
                                return CycleWitness(tuple([z, between, zc] + path))
                    else:
                        path = self._path(z, w, 2 * (k - 1), self.pentset - {z})
                        if path is not None:
                            return CycleWitness(tuple(path + [zc] + far))
        return None

    def disjoint_pairs(self):
        """Splice through attachments; pentagon may be disjoint from the core."""
        pent = self.pent
        k = self.k
        for i in range(5):
            for sep in (1, 2):
                j = (i + sep) % 5
                zi, zj = pent[i], pent[j]
                au = self._core_neighbors(zi)
                av = self._core_neighbors(zj)
                if not au or not av:
                    continue
                between = pent[(i + 1) % 5] if sep == 2 else None
                far = self._walk(j, i, 1)
                for u in au:
                    for v in av:
                        if u == v:
                            continue
                        cross = self._core_side(u) != self._core_side(v)
                        if sep == 2 and cross:
                            path = self._path(u, v, 2 * (k - 1), self.pentset)
                            if path is not None:
                                return CycleWitness(
                                    tuple([zi] + path + [zj, between])
                                )
                        elif sep == 2 and not cross:
                            for w in self._common_core(u, v):
                                if w == u or w == v:
                                    continue
                                path = self._path(u, w, 2 * (k - 2), self.pentset | {v})
                                if path is not None:
                                    return CycleWitness(
                                        tuple([zi] + path + [v, zj] + far)
                                    )
                        elif sep == 1 and not cross:
                            for w in self._common_core(u, v):
                                if w == u or w == v:
                                    continue
                                path = self._path(u, w, 2 * (k - 1), self.pentset | {v})
                                if path is not None:
                                    return CycleWitness(tuple([zi] + path + [v, zj]))
                        else:
                            path = self._path(u, v, 2 * (k - 2), self.pentset)
                            if path is not None:
                                return CycleWitness(tuple([zi] + path + [zj] + far))
        return None
