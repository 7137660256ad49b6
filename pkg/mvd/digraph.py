"""
Directed graph core for the mutual-visibility toolkit
Holds the immutable Digraph, the edge-list/DOT text formats and BFS distances
"""

from collections import deque
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np

from .errors import DomainError, EdgeListParseError

Arc = Tuple[int, int]

# Distance sentinel for "no directed path"; None never compares with an int
UNREACHABLE = None


class Digraph:
    """
    Simple directed graph on dense vertex ids 0..n-1

    Adjacency lists are sorted and duplicate-free, so iteration order (and with
    it BFS tie-breaking and solver witnesses) is deterministic. Instances are
    never mutated after construction; derived graphs are new objects.
    """

    __slots__ = ('n', 'out_adj', 'in_adj', 'labels', '_index')

    def __init__(self, n: int, arcs: Iterable[Arc] = (), labels: Optional[Sequence[str]] = None):
        if not isinstance(n, int) or n < 0:
            raise DomainError(f"vertex count must be a non-negative integer, got {n!r}")

        out_sets: List[set] = [set() for _ in range(n)]
        for u, v in arcs:
            if not (0 <= u < n and 0 <= v < n):
                raise DomainError(f"arc ({u}, {v}) has an endpoint outside 0..{n - 1}")
            if u == v:
                raise DomainError(f"self-loop on vertex {u} is not allowed")
            out_sets[u].add(v)

        in_lists: List[List[int]] = [[] for _ in range(n)]
        for u in range(n):
            for v in sorted(out_sets[u]):
                in_lists[v].append(u)

        self.n = n
        self.out_adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(sorted(s)) for s in out_sets)
        # Filled in ascending source order, so already sorted
        self.in_adj: Tuple[Tuple[int, ...], ...] = tuple(tuple(lst) for lst in in_lists)

        if labels is not None:
            labels = tuple(str(label) for label in labels)
            if len(labels) != n:
                raise DomainError(f"expected {n} labels, got {len(labels)}")
            for label in labels:
                if not label or any(ch.isspace() for ch in label) or label.startswith('#'):
                    raise DomainError(f"invalid vertex label {label!r}")
            if len(set(labels)) != n:
                raise DomainError("vertex labels must be unique")
            self._index = {label: i for i, label in enumerate(labels)}
        else:
            self._index = {}
        self.labels: Optional[Tuple[str, ...]] = labels

    # ------------------------------------------------------------------
    # Queries
    # ------------------------------------------------------------------

    def arcs(self) -> Iterator[Arc]:
        """Arcs in lexicographic order"""
        for u, targets in enumerate(self.out_adj):
            for v in targets:
                yield (u, v)

    @property
    def arc_count(self) -> int:
        return sum(len(targets) for targets in self.out_adj)

    def has_arc(self, u: int, v: int) -> bool:
        return 0 <= u < self.n and v in self.out_adj[u]

    def out_degree(self, v: int) -> int:
        return len(self.out_adj[v])

    def in_degree(self, v: int) -> int:
        return len(self.in_adj[v])

    def check_vertex(self, v: int):
        if not isinstance(v, (int, np.integer)) or not 0 <= v < self.n:
            raise DomainError(f"vertex {v!r} is not in 0..{self.n - 1}")

    def vertex_name(self, v: int) -> str:
        """Display name: the label when present, the index otherwise"""
        return self.labels[v] if self.labels else str(v)

    def index_of(self, name: Union[str, int]) -> int:
        """Resolve a label (or a decimal index on unlabeled graphs) to a vertex id"""
        if self.labels:
            if name in self._index:
                return self._index[name]
            raise DomainError(f"unknown vertex label {name!r}")
        try:
            v = int(name)
        except (TypeError, ValueError):
            raise DomainError(f"unknown vertex {name!r}") from None
        self.check_vertex(v)
        return v

    # ------------------------------------------------------------------
    # Derived graphs
    # ------------------------------------------------------------------

    def remove_arc(self, u: int, v: int) -> 'Digraph':
        """A copy of this graph without arc (u, v)"""
        if not self.has_arc(u, v):
            raise DomainError(f"arc ({u}, {v}) is not in the graph")
        return Digraph(self.n, (a for a in self.arcs() if a != (u, v)), self.labels)

    def reverse(self) -> 'Digraph':
        return Digraph(self.n, ((v, u) for u, v in self.arcs()), self.labels)

    def induced_subgraph(self, vertices: Iterable[int]) -> Tuple['Digraph', Tuple[int, ...]]:
        """
        Subgraph induced by `vertices`, renumbered densely in ascending order.
        Returns the subgraph and the tuple mapping new ids back to ours.
        """
        keep = tuple(sorted(set(vertices)))
        for v in keep:
            self.check_vertex(v)
        position = {v: i for i, v in enumerate(keep)}
        arcs = [(position[u], position[v])
                for u in keep for v in self.out_adj[u] if v in position]
        labels = [self.labels[v] for v in keep] if self.labels else None
        return Digraph(len(keep), arcs, labels), keep

    def adjacency_matrix(self) -> np.ndarray:
        """0/1 matrix A with A[u, v] = 1 iff (u, v) is an arc"""
        matrix = np.zeros((self.n, self.n), dtype=np.int64)
        for u, targets in enumerate(self.out_adj):
            if targets:
                matrix[u, list(targets)] = 1
        return matrix

    # ------------------------------------------------------------------

    def __eq__(self, other) -> bool:
        if not isinstance(other, Digraph):
            return NotImplemented
        return (self.n, self.out_adj, self.labels) == (other.n, other.out_adj, other.labels)

    def __hash__(self) -> int:
        return hash((self.n, self.out_adj, self.labels))

    def __repr__(self) -> str:
        return f"Digraph(n={self.n}, arcs={self.arc_count})"


class DistanceVector:
    """Per-vertex BFS distances from one source; UNREACHABLE where no path exists"""

    __slots__ = ('source', 'dist')

    def __init__(self, source: int, dist: List[Optional[int]]):
        self.source = source
        self.dist = dist

    def __getitem__(self, v: int) -> Optional[int]:
        return self.dist[v]

    def __len__(self) -> int:
        return len(self.dist)

    def __iter__(self) -> Iterator[Optional[int]]:
        return iter(self.dist)

    def __eq__(self, other) -> bool:
        if isinstance(other, DistanceVector):
            return self.dist == other.dist
        if isinstance(other, list):
            return self.dist == other
        return NotImplemented

    def reachable(self, v: int) -> bool:
        return self.dist[v] is not UNREACHABLE

    def as_list(self) -> List[Optional[int]]:
        return list(self.dist)

    def __repr__(self) -> str:
        return f"DistanceVector(source={self.source}, dist={self.dist})"


# ----------------------------------------------------------------------
# Edge-list and DOT formats
# ----------------------------------------------------------------------

def _read_text(text: Union[str, TextIO]) -> str:
    return text if isinstance(text, str) else text.read()


def parse_edge_lines(text: Union[str, TextIO]) -> Tuple[int, List[Arc], Optional[List[str]]]:
    """
    Parse edge-list text into (n, arcs, labels).

    Each non-blank, non-comment line is "u v" (an arc) or a single token (a
    vertex with no arcs of its own). When every token is a non-negative
    integer the tokens are the vertex ids themselves; otherwise tokens are
    names numbered in order of first appearance.
    """
    rows: List[Tuple[int, List[str]]] = []
    for line_no, raw in enumerate(_read_text(text).splitlines(), start=1):
        line = raw.strip()
        if not line or line.startswith('#'):
            continue
        tokens = line.split()
        if len(tokens) > 2:
            raise EdgeListParseError(f"expected 'u v', got {line!r}", line_no)
        rows.append((line_no, tokens))

    integer_mode = all(token.isascii() and token.isdigit() for _, tokens in rows for token in tokens)

    index: Dict[str, int] = {}
    n = 0
    arcs: List[Arc] = []
    for line_no, tokens in rows:
        if integer_mode:
            ids = [int(token) for token in tokens]
            n = max([n] + [v + 1 for v in ids])
        else:
            ids = [index.setdefault(token, len(index)) for token in tokens]
        if len(ids) == 2:
            if ids[0] == ids[1]:
                raise EdgeListParseError(f"self-loop on {tokens[0]!r}", line_no)
            arcs.append((ids[0], ids[1]))

    if integer_mode:
        return n, arcs, None
    return len(index), arcs, list(index)


def from_edge_list(text: Union[str, TextIO]) -> Digraph:
    """Build a canonical Digraph from edge-list text; duplicate lines collapse"""
    n, arcs, labels = parse_edge_lines(text)
    return Digraph(n, arcs, labels)


def to_edge_list(graph: Digraph) -> str:
    """Serialize a Digraph so that from_edge_list gives it back unchanged"""
    name = graph.vertex_name
    arc_lines = [f"{name(u)} {name(v)}" for u, v in graph.arcs()]

    if graph.labels:
        # Names are numbered by first appearance; declare every vertex up front
        # when the arc order alone would number them differently.
        seen: Dict[int, None] = {}
        for u, v in graph.arcs():
            seen.setdefault(u)
            seen.setdefault(v)
        if list(seen) != list(range(graph.n)):
            return "\n".join([name(v) for v in range(graph.n)] + arc_lines)
        return "\n".join(arc_lines)

    # Integer ids are positional; only a trailing isolated vertex needs a line
    last = graph.n - 1
    if graph.n and not graph.out_adj[last] and not graph.in_adj[last]:
        arc_lines.append(str(last))
    return "\n".join(arc_lines)


def _dot_quote(text: str) -> str:
    return '"' + text.replace('\\', '\\\\').replace('"', '\\"') + '"'


def to_dot(graph: Digraph, name: str = "D") -> str:
    """Graphviz digraph description, one statement per line"""
    lines = [f"digraph {_dot_quote(name)} {{"]
    for v in range(graph.n):
        lines.append(f"  {_dot_quote(graph.vertex_name(v))};")
    for u, v in graph.arcs():
        lines.append(f"  {_dot_quote(graph.vertex_name(u))} -> {_dot_quote(graph.vertex_name(v))};")
    lines.append("}")
    return "\n".join(lines)


# ----------------------------------------------------------------------
# Distances
# ----------------------------------------------------------------------

def _levels(adjacency: Sequence[Sequence[int]], n: int, source: int,
            stop: Optional[bytearray] = None) -> List[Optional[int]]:
    """BFS levels; vertices flagged in `stop` get a distance but are not expanded"""
    dist: List[Optional[int]] = [UNREACHABLE] * n
    dist[source] = 0
    queue = deque([source])
    while queue:
        u = queue.popleft()
        if stop is not None and stop[u] and u != source:
            continue
        next_level = dist[u] + 1
        for w in adjacency[u]:
            if dist[w] is UNREACHABLE:
                dist[w] = next_level
                queue.append(w)
    return dist


def bfs_distances(graph: Digraph, source: int, reverse: bool = False) -> DistanceVector:
    """
    Shortest-path distances from `source` to every vertex.
    With reverse=True, distances from every vertex to `source` instead.
    """
    graph.check_vertex(source)
    adjacency = graph.in_adj if reverse else graph.out_adj
    return DistanceVector(source, _levels(adjacency, graph.n, source))


def blocked_mask(graph: Digraph, blocked: Iterable[int]) -> bytearray:
    mask = bytearray(graph.n)
    for v in blocked:
        graph.check_vertex(v)
        mask[v] = 1
    return mask


def restricted_bfs(graph: Digraph, source: int, blocked: Iterable[int],
                   reverse: bool = False) -> DistanceVector:
    """
    Distances from `source` along paths whose internal vertices avoid `blocked`.
    Blocked vertices still receive a distance as path endpoints.
    """
    graph.check_vertex(source)
    mask = blocked_mask(graph, blocked)
    if mask[source]:
        raise DomainError(f"source {source} must not be blocked")
    adjacency = graph.in_adj if reverse else graph.out_adj
    return DistanceVector(source, _levels(adjacency, graph.n, source, mask))


def mutually_reachable(graph: Digraph, u: int, v: int) -> bool:
    """True iff u reaches v and v reaches u"""
    graph.check_vertex(u)
    graph.check_vertex(v)
    if u == v:
        return True
    return bfs_distances(graph, u).reachable(v) and bfs_distances(graph, v).reachable(u)
