"""Rooted graphs, their root-fixing isomorphism classes and topological invariants.

A rooted graph is stored with its root relabeled to vertex 0. Two rooted
graphs are equivalent when a permutation of the non-root vertices maps one
edge set onto the other.
"""

from __future__ import annotations

import json
import re
from collections import deque
from dataclasses import dataclass
from functools import lru_cache
from itertools import combinations, permutations
from pathlib import Path

Edge = tuple[int, int]

MIN_SITES = 2
MAX_SITES = 6


class GraphError(ValueError):
    """Malformed, disconnected or unknown graph input."""


def _norm_edge(i: int, j: int) -> Edge:
    return (i, j) if i < j else (j, i)


@dataclass(frozen=True)
class RootedGraph:
    n_sites: int
    edges: tuple[Edge, ...]
    root: int = 0

    def __post_init__(self):
        if self.root != 0:
            raise GraphError("root must be vertex 0; use RootedGraph.from_edges to relabel")
        seen = set()
        for i, j in self.edges:
            if not (0 <= i < self.n_sites and 0 <= j < self.n_sites):
                raise GraphError(f"edge ({i}, {j}) out of range for L={self.n_sites}")
            if i == j:
                raise GraphError(f"self-loop at vertex {i}")
            e = _norm_edge(i, j)
            if e in seen:
                raise GraphError(f"duplicate edge {e}")
            seen.add(e)
        object.__setattr__(self, "edges", tuple(sorted(seen)))
        if not _is_connected(self.n_sites, self.edges):
            raise GraphError("disconnected graphs are not supported")

    @classmethod
    def from_edges(cls, n_sites: int, edges, root: int = 0) -> "RootedGraph":
        """Build a rooted graph, swapping labels so that ``root`` becomes 0."""
        if not 0 <= root < n_sites:
            raise GraphError(f"root {root} out of range for L={n_sites}")

        def relabel(v):
            return 0 if v == root else (root if v == 0 else v)

        return cls(n_sites, tuple((relabel(int(i)), relabel(int(j))) for i, j in edges))

    def neighbors(self, v: int) -> set[int]:
        return {j if i == v else i for i, j in self.edges if v in (i, j)}

    def relabeled(self, mapping) -> "RootedGraph":
        """Apply a vertex permutation that must fix the root."""
        if mapping[0] != 0:
            raise GraphError("relabeling must fix the root")
        return RootedGraph(self.n_sites, tuple((mapping[i], mapping[j]) for i, j in self.edges))


@dataclass(frozen=True)
class GraphInvariants:
    k: int
    k0: int
    l3: int
    l3_root: int
    bipartition: tuple[frozenset, frozenset] | None

    @property
    def bipartite(self) -> bool:
        return self.bipartition is not None


def _is_connected(n_sites: int, edges) -> bool:
    adj = {v: set() for v in range(n_sites)}
    for i, j in edges:
        adj[i].add(j)
        adj[j].add(i)
    seen = {0}
    stack = [0]
    while stack:
        v = stack.pop()
        for w in adj[v] - seen:
            seen.add(w)
            stack.append(w)
    return len(seen) == n_sites


def _canonical_edges(n_sites: int, edges) -> tuple[Edge, ...]:
    best = None
    for perm in permutations(range(1, n_sites)):
        m = (0,) + perm
        cand = tuple(sorted(_norm_edge(m[i], m[j]) for i, j in edges))
        if best is None or cand < best:
            best = cand
    return best


def _key_bytes(n_sites: int, canon_edges) -> bytes:
    return bytes([n_sites] + [v for e in canon_edges for v in e])


def canonical_key(g: RootedGraph) -> bytes:
    """Byte key equal for two graphs iff they are root-fixing isomorphic.

    Brute force over the (L-1)! relabelings of the non-root vertices.
    """
    return _key_bytes(g.n_sites, _canonical_edges(g.n_sites, g.edges))


def invariants(g: RootedGraph) -> GraphInvariants:
    adj = {v: g.neighbors(v) for v in range(g.n_sites)}
    triangles = [t for t in combinations(range(g.n_sites), 3)
                 if t[1] in adj[t[0]] and t[2] in adj[t[0]] and t[2] in adj[t[1]]]
    return GraphInvariants(
        k=len(g.edges),
        k0=len(adj[0]),
        l3=len(triangles),
        l3_root=sum(1 for t in triangles if 0 in t),
        bipartition=_two_coloring(g.n_sites, adj),
    )


def _two_coloring(n_sites, adj):
    # BFS from the root; the root's color class is A
    color = {0: 0}
    queue = deque([0])
    while queue:
        v = queue.popleft()
        for w in adj[v]:
            if w not in color:
                color[w] = 1 - color[v]
                queue.append(w)
            elif color[w] == color[v]:
                return None
    side_a = frozenset(v for v in range(n_sites) if color[v] == 0)
    side_b = frozenset(v for v in range(n_sites) if color[v] == 1)
    return side_a, side_b


@lru_cache(maxsize=None)
def enumerate_rooted_graphs(n_sites: int) -> tuple[RootedGraph, ...]:
    """One representative per class of connected rooted graphs on ``n_sites`` vertices.

    Representatives carry their canonical labeling and are sorted by
    (edge count, canonical key).
    """
    if not MIN_SITES <= n_sites <= MAX_SITES:
        raise GraphError(f"L must be in [{MIN_SITES}, {MAX_SITES}], got {n_sites}")
    pairs = list(combinations(range(n_sites), 2))
    bit = {p: b for b, p in enumerate(pairs)}
    perm_maps = []
    for perm in permutations(range(1, n_sites)):
        m = (0,) + perm
        perm_maps.append([bit[_norm_edge(m[i], m[j])] for i, j in pairs])

    seen = set()
    classes = []
    for mask in range(1, 1 << len(pairs)):
        if mask in seen:
            continue
        orbit = set()
        for pm in perm_maps:
            img = 0
            for b in range(len(pairs)):
                if mask >> b & 1:
                    img |= 1 << pm[b]
            orbit.add(img)
        seen |= orbit
        edges = [p for b, p in enumerate(pairs) if mask >> b & 1]
        if not _is_connected(n_sites, edges):
            continue
        canon = _canonical_edges(n_sites, edges)
        classes.append((len(canon), _key_bytes(n_sites, canon), canon))
    classes.sort()
    return tuple(RootedGraph(n_sites, canon) for _, _, canon in classes)


def graph_id(n_sites: int, position: int) -> str:
    return f"L{n_sites}-{position:02d}"


def graph_by_id(gid: str) -> RootedGraph:
    m = re.fullmatch(r"L(\d+)-(\d+)", gid.strip())
    if not m:
        raise GraphError(f"unknown graph id {gid!r} (expected e.g. 'L4-07')")
    n_sites, pos = int(m.group(1)), int(m.group(2))
    graphs = enumerate_rooted_graphs(n_sites)
    if pos >= len(graphs):
        raise GraphError(f"graph id {gid!r} out of range; L={n_sites} has {len(graphs)} classes")
    return graphs[pos]


def id_of(g: RootedGraph) -> str | None:
    """Stable id of the class containing ``g``, or None for unsupported L."""
    if not MIN_SITES <= g.n_sites <= MAX_SITES:
        return None
    key = canonical_key(g)
    for pos, rep in enumerate(enumerate_rooted_graphs(g.n_sites)):
        if canonical_key(rep) == key:
            return graph_id(g.n_sites, pos)
    return None


def graph_from_dict(spec: dict) -> RootedGraph:
    try:
        n_sites = int(spec["L"])
        root = int(spec.get("root", 0))
        edges = [tuple(e) for e in spec["edges"]]
    except (KeyError, TypeError, ValueError) as exc:
        raise GraphError(f"malformed graph spec: {exc}") from None
    if any(len(e) != 2 for e in edges):
        raise GraphError("each edge must be a pair [i, j]")
    return RootedGraph.from_edges(n_sites, edges, root)


def load_graph(path) -> RootedGraph:
    """Read ``{"L": int, "root": int, "edges": [[i, j], ...]}``."""
    try:
        spec = json.loads(Path(path).read_text())
    except (OSError, json.JSONDecodeError) as exc:
        raise GraphError(f"cannot read graph file {path}: {exc}") from None
    return graph_from_dict(spec)


def resolve_graph(selector: str) -> RootedGraph:
    """Accept either a stable id (``L3-02``) or a path to a JSON graph file."""
    if selector.endswith(".json") or Path(selector).is_file():
        return load_graph(selector)
    return graph_by_id(selector)


def graph_to_dict(g: RootedGraph) -> dict:
    return {"L": g.n_sites, "root": 0, "edges": [list(e) for e in g.edges]}
