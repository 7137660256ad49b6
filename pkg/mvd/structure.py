"""
Strong-connectivity analysis
SCCs and the condensation DAG, strong bridges with their cuts, and the
neighbourhood counts behind the tournament lower bound
"""

import logging
from typing import Any, Dict, FrozenSet, List, Optional, Sequence, Tuple

import numpy as np

from .digraph import Arc, Digraph, bfs_distances
from .errors import DomainError

logger = logging.getLogger(__name__)


class SccDecomposition:
    """
    Partition of a digraph into strongly connected components

    Component indices follow the order in which Tarjan's algorithm closes the
    components, which is a reverse topological order of the condensation:
    every condensation arc goes from a higher index to a lower one.
    """

    def __init__(self, graph: Digraph, components: Sequence[Sequence[int]]):
        self.graph = graph
        self.components: Tuple[Tuple[int, ...], ...] = tuple(tuple(c) for c in components)

        component_of = [0] * graph.n
        for i, members in enumerate(self.components):
            for v in members:
                component_of[v] = i
        self.component_of: Tuple[int, ...] = tuple(component_of)

        crossing = {(component_of[u], component_of[v])
                    for u, v in graph.arcs() if component_of[u] != component_of[v]}
        self.condensation = Digraph(len(self.components), crossing)

    def __len__(self) -> int:
        return len(self.components)

    def same_component(self, u: int, v: int) -> bool:
        return self.component_of[u] == self.component_of[v]

    def largest(self) -> Tuple[int, ...]:
        """Largest component; ties go to the one holding the smallest vertex"""
        return max(self.components, key=lambda c: (len(c), -c[0]))

    def __repr__(self) -> str:
        return f"SccDecomposition(components={len(self.components)})"


class BridgeCut:
    """Vertex partition around a strong bridge: the bridge is the only arc from v_source to v_sink"""

    def __init__(self, bridge: Arc, v_source: FrozenSet[int], v_sink: FrozenSet[int]):
        self.bridge = bridge
        self.v_source = v_source
        self.v_sink = v_sink

    def __repr__(self) -> str:
        return (f"BridgeCut(bridge={self.bridge}, v_source={sorted(self.v_source)}, "
                f"v_sink={sorted(self.v_sink)})")


def _tarjan(n: int, out_adj: Sequence[Sequence[int]], skip: Optional[Arc] = None) -> List[List[int]]:
    """Iterative Tarjan; `skip` is an arc treated as absent"""
    index = [-1] * n
    low = [0] * n
    on_stack = [False] * n
    stack: List[int] = []
    components: List[List[int]] = []
    counter = 0

    for root in range(n):
        if index[root] != -1:
            continue
        index[root] = low[root] = counter
        counter += 1
        stack.append(root)
        on_stack[root] = True
        work = [(root, 0)]

        while work:
            v, i = work[-1]
            successors = out_adj[v]
            if i < len(successors):
                work[-1] = (v, i + 1)
                w = successors[i]
                if skip is not None and (v, w) == skip:
                    continue
                if index[w] == -1:
                    index[w] = low[w] = counter
                    counter += 1
                    stack.append(w)
                    on_stack[w] = True
                    work.append((w, 0))
                elif on_stack[w]:
                    low[v] = min(low[v], index[w])
                continue

            work.pop()
            if work:
                parent = work[-1][0]
                low[parent] = min(low[parent], low[v])
            if low[v] == index[v]:
                component = []
                while True:
                    w = stack.pop()
                    on_stack[w] = False
                    component.append(w)
                    if w == v:
                        break
                components.append(sorted(component))

    return components


def scc(graph: Digraph) -> SccDecomposition:
    """Strongly connected components and the condensation DAG"""
    return SccDecomposition(graph, _tarjan(graph.n, graph.out_adj))


def is_dag(graph: Digraph) -> bool:
    """Acyclic iff every SCC is a single vertex (self-loops cannot occur)"""
    return len(_tarjan(graph.n, graph.out_adj)) == graph.n


def is_strongly_connected(graph: Digraph) -> bool:
    return graph.n > 0 and len(_tarjan(graph.n, graph.out_adj)) == 1


def is_tournament(graph: Digraph) -> bool:
    """Exactly one arc between every pair of distinct vertices"""
    for u in range(graph.n):
        for v in range(u + 1, graph.n):
            if graph.has_arc(u, v) == graph.has_arc(v, u):
                return False
    return True


def strong_bridges(graph: Digraph) -> List[Arc]:
    """
    Arcs whose removal increases the number of SCCs, in lexicographic order.
    One SCC pass per arc: O(|A| * (|V| + |A|)).
    """
    base = len(_tarjan(graph.n, graph.out_adj))
    bridges = [arc for arc in graph.arcs()
               if len(_tarjan(graph.n, graph.out_adj, skip=arc)) > base]
    logger.debug("%d strong bridges among %d arcs", len(bridges), graph.arc_count)
    return bridges


def beta(graph: Digraph) -> int:
    """Number of strong bridges"""
    return len(strong_bridges(graph))


def bridge_cut(graph: Digraph, bridge: Arc) -> BridgeCut:
    """
    Partition around a strong bridge (u, v) of a strongly connected digraph.

    v_source is everything u still reaches once the bridge is gone, v_sink the
    rest. Nothing in v_source has an arc into v_sink except the bridge itself.
    """
    if not is_strongly_connected(graph):
        raise DomainError("bridge_cut needs a strongly connected digraph")
    u, v = bridge
    if not graph.has_arc(u, v):
        raise DomainError(f"arc ({u}, {v}) is not in the graph")

    remaining = graph.remove_arc(u, v)
    reach = bfs_distances(remaining, u)
    v_source = frozenset(w for w in range(graph.n) if reach.reachable(w))
    if v in v_source:
        raise DomainError(f"arc ({u}, {v}) is not a strong bridge")
    v_sink = frozenset(range(graph.n)) - v_source
    return BridgeCut((u, v), v_source, v_sink)


# ----------------------------------------------------------------------
# Neighbourhood counts
# ----------------------------------------------------------------------

def count_common_out_neighbors(graph: Digraph, u: int, v: int) -> int:
    """|{w : u -> w and v -> w}|, counted on arcs"""
    graph.check_vertex(u)
    graph.check_vertex(v)
    if u == v:
        raise DomainError("common out-neighbours need two distinct vertices")
    return len(set(graph.out_adj[u]).intersection(graph.out_adj[v]))


def count_two_paths(graph: Digraph, v: int, u: int) -> int:
    """|{w : v -> w and w -> u}|, the middles of directed 2-paths from v to u"""
    graph.check_vertex(v)
    graph.check_vertex(u)
    if u == v:
        raise DomainError("two-paths need two distinct vertices")
    return len(set(graph.out_adj[v]).intersection(graph.in_adj[u]))


def common_out_neighbor_matrix(graph: Digraph) -> np.ndarray:
    """C[u, v] = common out-neighbours of u and v (diagonal holds out-degrees)"""
    a = graph.adjacency_matrix()
    return a @ a.T


def two_path_matrix(graph: Digraph) -> np.ndarray:
    """P[v, u] = number of 2-paths v -> w -> u"""
    a = graph.adjacency_matrix()
    return a @ a


def analyze(graph: Digraph) -> Dict[str, Any]:
    """Structural summary: components, condensation, strong bridges"""
    decomposition = scc(graph)
    bridges = strong_bridges(graph)
    name = graph.vertex_name
    return {
        'vertices': graph.n,
        'arcs': graph.arc_count,
        'components': [[name(v) for v in members] for members in decomposition.components],
        'condensation': [list(arc) for arc in decomposition.condensation.arcs()],
        'bridges': [[name(u), name(v)] for u, v in bridges],
        'beta': len(bridges),
        'is_dag': len(decomposition) == graph.n,
        'strongly_connected': graph.n > 0 and len(decomposition) == 1,
    }
