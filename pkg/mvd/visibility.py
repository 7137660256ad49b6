"""
Mutual-visibility predicates and set verification
Covers the standard, total, outer and dual variants, the polynomial BFS
verifier and a path-enumeration oracle used to cross-check it
"""

import logging
from enum import Enum
from itertools import combinations
from typing import Any, Dict, Iterable, Iterator, List, NamedTuple, Optional, Sequence, Set, Tuple

from .digraph import Digraph, UNREACHABLE, _levels, bfs_distances, blocked_mask
from .errors import CapExceededError, DomainError
from .generators import underlying_graph

logger = logging.getLogger(__name__)

DEFAULT_NAIVE_CAP = 12

class VisibilityVariant(Enum):
    """Which vertex pairs must see each other"""
    STANDARD = "standard"
    TOTAL = "total"
    OUTER = "outer"
    DUAL = "dual"


class Direction(Enum):
    FORWARD = "forward"    # x -> y
    BACKWARD = "backward"  # y -> x


class BlockedPair(NamedTuple):
    """Evidence for one blocked direction of a required pair (x < y)"""
    x: int
    y: int
    direction: Direction
    d_free: Optional[int]
    d_restricted: Optional[int]


class VisibilityReport:
    """Verification verdict with the blocked directions as evidence"""

    def __init__(self, variant: VisibilityVariant, vertex_set: Iterable[int],
                 blocked_pairs: List[BlockedPair], pairs_checked: int):
        self.variant = variant
        self.vertex_set: Tuple[int, ...] = tuple(sorted(vertex_set))
        self.blocked_pairs = sorted(blocked_pairs, key=lambda b: (b.x, b.y, b.direction.value))
        self.pairs_checked = pairs_checked

    @property
    def valid(self) -> bool:
        return not self.blocked_pairs

    def as_dict(self, graph: Optional[Digraph] = None) -> Dict[str, Any]:
        name = graph.vertex_name if graph is not None else str
        return {
            'valid': self.valid,
            'variant': self.variant.value,
            'set': [name(v) for v in self.vertex_set],
            'pairs_checked': self.pairs_checked,
            'blocked': [
                {
                    'x': name(b.x),
                    'y': name(b.y),
                    'direction': b.direction.value,
                    'd_free': b.d_free,
                    'd_restricted': b.d_restricted,
                }
                for b in self.blocked_pairs
            ],
        }

    def __repr__(self) -> str:
        return (f"VisibilityReport(variant={self.variant.value}, valid={self.valid}, "
                f"blocked={len(self.blocked_pairs)}, pairs_checked={self.pairs_checked})")


def _as_variant(variant) -> VisibilityVariant:
    if isinstance(variant, VisibilityVariant):
        return variant
    try:
        return VisibilityVariant(variant)
    except ValueError:
        raise DomainError(f"unknown visibility variant {variant!r}") from None


def required_pairs(variant, vertex_set: Iterable, universe: Iterable) -> Set[Tuple]:
    """
    Unordered pairs (as sorted tuples) that must be mutually visible:
    standard - within S; total - all of V; outer - within S and across S/V-S;
    dual - within S and within V-S
    """
    variant = _as_variant(variant)
    inside_set = set(vertex_set)
    inside = sorted(inside_set)
    everything = sorted(set(universe))
    if not inside_set <= set(everything):
        raise DomainError("the vertex set must be a subset of the universe")
    outside = [v for v in everything if v not in inside_set]

    pairs = set(combinations(inside, 2))
    if variant is VisibilityVariant.TOTAL:
        pairs = set(combinations(everything, 2))
    elif variant is VisibilityVariant.OUTER:
        pairs.update(tuple(sorted((s, t))) for s in inside for t in outside)
    elif variant is VisibilityVariant.DUAL:
        pairs.update(combinations(outside, 2))
    return pairs


def _check_set(graph: Digraph, vertex_set: Iterable[int]) -> Set[int]:
    members = set(vertex_set)
    for v in members:
        try:
            graph.check_vertex(v)
        except DomainError:
            raise DomainError(f"vertex {v!r} of the set is not in the graph") from None
    return members


def pair_visible(graph: Digraph, vertex_set: Iterable[int], x: int, y: int) -> bool:
    """
    x and y see each other: a shortest x->y path and a shortest y->x path
    exist whose internal vertices avoid the set
    """
    graph.check_vertex(x)
    graph.check_vertex(y)
    if x == y:
        raise DomainError("visibility is defined for two distinct vertices")
    members = _check_set(graph, vertex_set)
    mask = blocked_mask(graph, members - {x, y})

    for source, target in ((x, y), (y, x)):
        d_free = bfs_distances(graph, source)[target]
        if d_free is UNREACHABLE:
            return False
        if _levels(graph.out_adj, graph.n, source, mask)[target] != d_free:
            return False
    return True


class _DistanceCache:
    """Lazy free/restricted BFS rows keyed by source, forward or reverse"""

    def __init__(self, graph: Digraph, members: Set[int]):
        self.graph = graph
        self.mask = blocked_mask(graph, members)
        self.rows: Dict[Tuple[int, bool, bool], List[Optional[int]]] = {}

    def row(self, source: int, reverse: bool, restricted: bool) -> List[Optional[int]]:
        key = (source, reverse, restricted)
        if key not in self.rows:
            adjacency = self.graph.in_adj if reverse else self.graph.out_adj
            stop = self.mask if restricted else None
            self.rows[key] = _levels(adjacency, self.graph.n, source, stop)
        return self.rows[key]

    @property
    def bfs_runs(self) -> int:
        return len(self.rows)


def verify(graph: Digraph, vertex_set: Iterable[int], variant=VisibilityVariant.STANDARD) -> VisibilityReport:
    """
    Decide whether the set is a mutual-visibility set of the given variant.

    One plain and one restricted BFS per source, then a distance comparison
    per required direction. Standard sets only need sources in S. Outer pairs
    always touch S, so forward and reverse BFS from S cover them. Total and
    dual pairs can avoid S entirely and need every vertex as a source.
    """
    variant = _as_variant(variant)
    members = _check_set(graph, vertex_set)
    pairs = required_pairs(variant, members, range(graph.n))
    cache = _DistanceCache(graph, members)
    use_reverse = variant is VisibilityVariant.OUTER

    def distances(p: int, q: int) -> Tuple[Optional[int], Optional[int]]:
        # Read p -> q from p's forward rows, or from q's reverse rows when q in S
        if use_reverse and p not in members and q in members:
            return cache.row(q, True, False)[p], cache.row(q, True, True)[p]
        return cache.row(p, False, False)[q], cache.row(p, False, True)[q]

    blocked: List[BlockedPair] = []
    for x, y in sorted(pairs):
        for direction, (p, q) in ((Direction.FORWARD, (x, y)), (Direction.BACKWARD, (y, x))):
            d_free, d_restricted = distances(p, q)
            if d_free is UNREACHABLE or d_restricted != d_free:
                blocked.append(BlockedPair(x, y, direction, d_free, d_restricted))

    report = VisibilityReport(variant, members, blocked, len(pairs))
    logger.debug("verify %s |S|=%d: %d BFS runs, valid=%s",
                 variant.value, len(members), cache.bfs_runs, report.valid)
    return report


# ----------------------------------------------------------------------
# Path-enumeration oracle
# ----------------------------------------------------------------------

def shortest_paths(graph: Digraph, source: int, target: int) -> Iterator[Tuple[int, ...]]:
    """Every shortest source->target path, walking the BFS layers back from target"""
    dist = bfs_distances(graph, source)
    if dist[target] is UNREACHABLE:
        return

    def walk_back(v: int, suffix: Tuple[int, ...]) -> Iterator[Tuple[int, ...]]:
        if v == source:
            yield (source,) + suffix
            return
        for w in graph.in_adj[v]:
            if dist[w] is not UNREACHABLE and dist[w] == dist[v] - 1:
                yield from walk_back(w, (v,) + suffix)

    yield from walk_back(target, ())


def _direction_open(graph: Digraph, members: Set[int], p: int, q: int) -> Tuple[bool, Optional[int], Optional[int]]:
    """(some shortest p->q path avoids S internally, d_free, d_restricted)"""
    d_free = bfs_distances(graph, p)[q]
    open_path = any(not members.intersection(path[1:-1]) for path in shortest_paths(graph, p, q))
    if open_path:
        return True, d_free, d_free

    # Restricted distance on the subgraph with S - {p, q} deleted
    keep = [v for v in range(graph.n) if v not in members or v in (p, q)]
    sub, mapping = graph.induced_subgraph(keep)
    position = {v: i for i, v in enumerate(mapping)}
    d_restricted = bfs_distances(sub, position[p])[position[q]]
    return False, d_free, d_restricted


def naive_verify(graph: Digraph, vertex_set: Iterable[int], variant=VisibilityVariant.STANDARD,
                 cap: int = DEFAULT_NAIVE_CAP, directions: Sequence[Direction] = tuple(Direction)) -> VisibilityReport:
    """
    Oracle verifier: enumerate all shortest paths per ordered pair and look for
    one without set members inside. Refuses graphs above `cap` vertices.
    """
    if graph.n > cap:
        raise CapExceededError("naive verification", graph.n, cap)
    variant = _as_variant(variant)
    members = _check_set(graph, vertex_set)
    pairs = required_pairs(variant, members, range(graph.n))

    blocked: List[BlockedPair] = []
    for x, y in sorted(pairs):
        for direction in directions:
            p, q = (x, y) if direction is Direction.FORWARD else (y, x)
            is_open, d_free, d_restricted = _direction_open(graph, members, p, q)
            if not is_open:
                blocked.append(BlockedPair(x, y, direction, d_free, d_restricted))

    return VisibilityReport(variant, members, blocked, len(pairs))


def verify_undirected(symmetric: Digraph, vertex_set: Iterable[int],
                      cap: int = DEFAULT_NAIVE_CAP) -> VisibilityReport:
    """
    Undirected mutual visibility on a symmetric digraph: one shortest path per
    unordered pair suffices, so only the x -> y direction is examined
    """
    return naive_verify(symmetric, vertex_set, VisibilityVariant.STANDARD, cap=cap,
                        directions=(Direction.FORWARD,))


def iter_directed_only_sets(graph: Digraph, min_size: int = 3,
                            max_size: Optional[int] = None) -> Iterator[Tuple[int, ...]]:
    """
    Sets that are mutual-visibility sets of the digraph but not of its
    underlying undirected graph
    """
    undirected = underlying_graph(graph)
    max_size = graph.n if max_size is None else max_size
    for size in range(min_size, max_size + 1):
        for subset in combinations(range(graph.n), size):
            if verify(graph, subset).valid and not verify_undirected(undirected, subset, cap=graph.n).valid:
                yield subset


def find_directed_only_sets(graphs: Iterable[Digraph], min_size: int = 3, max_size: Optional[int] = None,
                            limit: int = 1) -> List[Tuple[Digraph, Tuple[int, ...]]]:
    """Scan graphs for directed-only mutual-visibility sets; stop after `limit` hits"""
    found: List[Tuple[Digraph, Tuple[int, ...]]] = []
    for graph in graphs:
        for subset in iter_directed_only_sets(graph, min_size, max_size):
            logger.info("directed-only set %s in %r", subset, graph)
            found.append((graph, subset))
            if len(found) >= limit:
                return found
            break
    return found
