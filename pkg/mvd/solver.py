"""
Exact mutual-visibility numbers
Branch-and-bound over strongly connected components for the standard
variant, with brute-force oracles for every variant and for undirected graphs
"""

import logging
from enum import Enum
from itertools import combinations
from typing import Any, Dict, Iterable, List, Optional, Sequence, TextIO, Tuple, Union

from .digraph import Digraph
from .errors import BudgetExceededError, CapExceededError, DomainError
from .generators import Edge, symmetrize
from .structure import scc
from .utils import EventLog
from .visibility import VisibilityVariant, _as_variant, naive_verify, verify, verify_undirected

logger = logging.getLogger(__name__)

DEFAULT_BUDGET = 25
DEFAULT_BRUTEFORCE_CAP = 15


class Shortcut(Enum):
    """How a component's value was settled without search"""
    DAG = "dag"
    CYCLE = "cycle"
    COMPLETE = "complete"
    NONE = "none"


class ComponentResult:
    """Value and lex-smallest optimal witness of one SCC, in parent vertex ids"""

    def __init__(self, vertices: Sequence[int], mu: int, witness: Sequence[int],
                 shortcut: Shortcut, nodes_explored: int = 0):
        self.vertices = tuple(vertices)
        self.mu = mu
        self.witness = tuple(sorted(witness))
        self.shortcut = shortcut
        self.nodes_explored = nodes_explored

    def as_dict(self, graph: Optional[Digraph] = None) -> Dict[str, Any]:
        name = graph.vertex_name if graph is not None else str
        return {
            'vertices': [name(v) for v in self.vertices],
            'mu': self.mu,
            'witness': [name(v) for v in self.witness],
            'shortcut': self.shortcut.value,
        }

    def __repr__(self) -> str:
        return f"ComponentResult(size={len(self.vertices)}, mu={self.mu}, shortcut={self.shortcut.value})"


class MuResult:
    """A mutual-visibility number together with a witness set of that size"""

    def __init__(self, mu: int, witness: Sequence[int], nodes_explored: int = 0,
                 shortcut: Shortcut = Shortcut.NONE,
                 component_results: Optional[List[ComponentResult]] = None,
                 variant: VisibilityVariant = VisibilityVariant.STANDARD):
        self.mu = mu
        self.witness: Tuple[int, ...] = tuple(sorted(witness))
        self.nodes_explored = nodes_explored
        self.shortcut = shortcut
        self.component_results = component_results or []
        self.variant = variant

    def as_dict(self, graph: Optional[Digraph] = None) -> Dict[str, Any]:
        name = graph.vertex_name if graph is not None else str
        return {
            'mu': self.mu,
            'witness': [name(v) for v in self.witness],
            'shortcut': self.shortcut.value,
            'nodes_explored': self.nodes_explored,
            'variant': self.variant.value,
            'components': [c.as_dict(graph) for c in self.component_results],
        }

    def __repr__(self) -> str:
        return (f"MuResult(mu={self.mu}, witness={list(self.witness)}, "
                f"shortcut={self.shortcut.value}, nodes_explored={self.nodes_explored})")


def _lex_key(witness: Sequence[int]) -> Tuple[int, ...]:
    return tuple(sorted(witness))


def degree_order(graph: Digraph) -> List[int]:
    """Vertices by descending in+out degree, ties by index"""
    return sorted(range(graph.n), key=lambda v: (-(graph.in_degree(v) + graph.out_degree(v)), v))


def greedy_mv_set(graph: Digraph, order: Optional[Sequence[int]] = None) -> Tuple[int, ...]:
    """
    Walk the vertices (degree order by default) and keep each one whose
    addition leaves the set valid. Always returns a valid standard set.
    """
    if graph.n == 0:
        return ()
    chosen: List[int] = []
    for v in (degree_order(graph) if order is None else order):
        if verify(graph, chosen + [v]).valid:
            chosen.append(v)
    return tuple(sorted(chosen))


def _is_cycle(graph: Digraph) -> bool:
    return all(graph.out_degree(v) == 1 and graph.in_degree(v) == 1 for v in range(graph.n))


def _is_complete(graph: Digraph) -> bool:
    return graph.arc_count == graph.n * (graph.n - 1)


class _ComponentSearch:
    """
    Include/exclude search on one strongly connected component.

    Valid standard sets are closed under taking subsets, so an include branch
    whose set fails verification is dropped together with all its supersets.
    """

    def __init__(self, graph: Digraph):
        self.graph = graph
        self.nodes = 0

    def _valid(self, vertices: List[int]) -> bool:
        return verify(self.graph, vertices).valid

    def max_size(self, incumbent: int) -> int:
        """Size of a maximum valid set, searching high-degree vertices first"""
        order = degree_order(self.graph)
        best = incumbent

        def extend(chosen: List[int], position: int):
            nonlocal best
            self.nodes += 1
            best = max(best, len(chosen))
            if len(chosen) + len(order) - position <= best:
                return
            candidate = chosen + [order[position]]
            if self._valid(candidate):
                extend(candidate, position + 1)
            extend(chosen, position + 1)

        extend([], 0)
        return best

    def first_of_size(self, size: int) -> Optional[Tuple[int, ...]]:
        """Lexicographically smallest valid set with exactly `size` vertices"""
        n = self.graph.n

        def extend(chosen: List[int], v: int) -> Optional[Tuple[int, ...]]:
            self.nodes += 1
            if len(chosen) == size:
                return tuple(chosen)
            if len(chosen) + n - v < size:
                return None
            candidate = chosen + [v]
            if self._valid(candidate):
                found = extend(candidate, v + 1)
                if found is not None:
                    return found
            return extend(chosen, v + 1)

        return extend([], 0)


def _solve_component(sub: Digraph) -> Tuple[int, Tuple[int, ...], Shortcut, int]:
    """(mu, witness, shortcut, nodes) for a strongly connected subgraph with >= 2 vertices"""
    if _is_cycle(sub):
        return 2, (0, 1), Shortcut.CYCLE, 0
    if _is_complete(sub):
        return sub.n, tuple(range(sub.n)), Shortcut.COMPLETE, 0

    search = _ComponentSearch(sub)
    incumbent = greedy_mv_set(sub)
    best = search.max_size(len(incumbent))
    witness = search.first_of_size(best)
    if witness is None:
        # max_size only reports sizes it reached with a valid set
        raise RuntimeError(f"no valid set of size {best} found on the second pass")
    return best, witness, Shortcut.NONE, search.nodes


def mu(graph: Digraph, budget: int = DEFAULT_BUDGET, events: Optional[EventLog] = None) -> MuResult:
    """
    Exact standard mutual-visibility number.

    A valid set with two or more vertices lies inside one SCC, and shortest
    paths between vertices of an SCC never leave it, so each component is
    solved on its own induced subgraph and the best one wins. Ties go to the
    lexicographically smallest witness. Components that need a search and
    have more than `budget` vertices are refused.
    """
    if graph.n == 0:
        raise DomainError("the mutual-visibility number needs at least one vertex")
    events = events or EventLog()
    decomposition = scc(graph)

    for members in decomposition.components:
        if len(members) > budget:
            sub, _ = graph.induced_subgraph(members)
            if not (_is_cycle(sub) or _is_complete(sub)):
                raise BudgetExceededError(len(members), budget)

    results: List[ComponentResult] = []
    for members in decomposition.components:
        if len(members) == 1:
            results.append(ComponentResult(members, 1, members, Shortcut.DAG))
            continue

        events.log('component_start', {'vertices': list(members)})
        sub, mapping = graph.induced_subgraph(members)
        value, witness, shortcut, nodes = _solve_component(sub)
        result = ComponentResult(members, value, [mapping[v] for v in witness], shortcut, nodes)
        results.append(result)
        events.log('component_done', {'vertices': list(members), 'mu': value,
                                      'witness': list(result.witness), 'shortcut': shortcut.value,
                                      'nodes_explored': nodes})
        logger.debug("component of %d vertices: mu=%d (%s, %d nodes)",
                     len(members), value, shortcut.value, nodes)

    best = min(results, key=lambda r: (-r.mu, _lex_key(r.witness)))
    total_nodes = sum(r.nodes_explored for r in results)
    logger.info("mu=%d over %d components, %d search nodes", best.mu, len(results), total_nodes)
    return MuResult(best.mu, best.witness, total_nodes, best.shortcut, results)


# ----------------------------------------------------------------------
# Brute-force oracles
# ----------------------------------------------------------------------

def _largest_valid(graph: Digraph, is_valid, min_size: int) -> Tuple[Optional[Tuple[int, ...]], int]:
    """First valid subset by decreasing size, lex order within a size"""
    nodes = 0
    for size in range(graph.n, min_size - 1, -1):
        for subset in combinations(range(graph.n), size):
            nodes += 1
            if is_valid(subset):
                return subset, nodes
    return None, nodes


def _check_cap(graph: Digraph, cap: int):
    if graph.n == 0:
        raise DomainError("the mutual-visibility number needs at least one vertex")
    if graph.n > cap:
        raise CapExceededError("brute-force search", graph.n, cap)


def mu_bruteforce(graph: Digraph, cap: int = DEFAULT_BRUTEFORCE_CAP) -> MuResult:
    """Standard mu by exhaustion with the path-enumeration verifier"""
    return mu_variant(graph, VisibilityVariant.STANDARD, cap)


def mu_variant(graph: Digraph, variant=VisibilityVariant.STANDARD,
               cap: int = DEFAULT_BRUTEFORCE_CAP) -> MuResult:
    """
    Exact mu for any variant by subset enumeration. Total, outer and dual
    values can be 0, either because only the empty set qualifies or because
    no set does.
    """
    variant = _as_variant(variant)
    _check_cap(graph, cap)
    witness, nodes = _largest_valid(
        graph, lambda subset: naive_verify(graph, subset, variant, cap=graph.n).valid, 0)
    if witness is None:
        logger.info("no %s mutual-visibility set exists, not even the empty one", variant.value)
        witness = ()
    return MuResult(len(witness), witness, nodes, variant=variant)


def mu_undirected_bruteforce(edges: Union[str, TextIO, Iterable[Edge]], n: Optional[int] = None,
                             cap: int = DEFAULT_BRUTEFORCE_CAP) -> MuResult:
    """Undirected mu of an edge list: one clear shortest path per unordered pair"""
    symmetric = symmetrize(edges, n)
    _check_cap(symmetric, cap)
    witness, nodes = _largest_valid(
        symmetric, lambda subset: verify_undirected(symmetric, subset, cap=symmetric.n).valid, 1)
    return MuResult(len(witness), witness, nodes)
