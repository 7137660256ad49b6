"""
Graph family generators
Builds the cycles, DAGs, complete digraphs, tournaments and gadgets used as
witnesses for mutual-visibility results, plus the undirected-to-directed
symmetrization
"""

import logging
from enum import Enum
from itertools import combinations, permutations
from typing import Dict, Iterable, Iterator, List, Optional, Sequence, TextIO, Tuple, Union

import numpy as np
from sympy.ntheory.primetest import isprime

from .digraph import Arc, Digraph, parse_edge_lines
from .errors import DomainError
from .structure import is_strongly_connected, is_tournament

logger = logging.getLogger(__name__)

Edge = Tuple[int, int]

# Vertex order of the eight-vertex gadget with one one-way arc; ids follow the
# order in which the sorted arc list first mentions each vertex
FIGURE1_LABELS = ("x", "z", "v5", "v4", "v3", "v2", "v1", "y")
FIGURE1_ONE_WAY = (("y", "z"),)
FIGURE1_TWO_WAY = (("x", "z"), ("x", "v5"), ("v5", "v4"), ("v4", "v3"),
                   ("v3", "v2"), ("v2", "v1"), ("v1", "y"))


class SeededStream:
    """
    Platform-independent random draws from numpy's PCG64 bit generator

    Only the raw 64-bit output is used, so a (seed, call sequence) pair yields
    the same graph on every platform and numpy version.
    """

    UNIT_BITS = 53

    def __init__(self, seed: int):
        if not isinstance(seed, (int, np.integer)) or seed < 0:
            raise DomainError(f"seed must be a non-negative integer, got {seed!r}")
        self.seed = int(seed)
        self.bit_generator = np.random.PCG64(self.seed)

    def raw(self, count: int) -> np.ndarray:
        return self.bit_generator.random_raw(count)

    def bernoulli(self, count: int, p: float) -> np.ndarray:
        """`count` independent draws that are True with probability p"""
        threshold = round(p * 2 ** self.UNIT_BITS)
        top_bits = self.raw(count) >> np.uint64(64 - self.UNIT_BITS)
        return top_bits < np.uint64(threshold)

    def coins(self, count: int) -> np.ndarray:
        """Fair coin flips taken from the top bit"""
        return (self.raw(count) >> np.uint64(63)).astype(bool)


def _require_int(name: str, value, minimum: int) -> int:
    if not isinstance(value, (int, np.integer)) or isinstance(value, bool) or value < minimum:
        raise DomainError(f"{name} must be an integer >= {minimum}, got {value!r}")
    return int(value)


def _require_probability(p) -> float:
    try:
        p = float(p)
    except (TypeError, ValueError):
        raise DomainError(f"arc probability must be a number, got {p!r}") from None
    if not 0.0 <= p <= 1.0:
        raise DomainError(f"arc probability must lie in [0, 1], got {p}")
    return p


# ----------------------------------------------------------------------
# Deterministic families
# ----------------------------------------------------------------------

def gen_cycle(n: int) -> Digraph:
    """Directed cycle 0 -> 1 -> ... -> n-1 -> 0"""
    n = _require_int("cycle length", n, 2)
    return Digraph(n, ((i, (i + 1) % n) for i in range(n)))


def gen_path_dag(n: int) -> Digraph:
    n = _require_int("path length", n, 1)
    return Digraph(n, ((i, i + 1) for i in range(n - 1)))


def gen_complete(n: int) -> Digraph:
    """Complete digraph K_n: every ordered pair of distinct vertices"""
    n = _require_int("vertex count", n, 1)
    return Digraph(n, permutations(range(n), 2))


def gen_paley(q: int) -> Digraph:
    """
    Paley tournament on Z_q: u -> v iff v - u is a non-zero square mod q.
    Needs a prime q = 3 (mod 4), so that -1 is a non-residue and exactly one
    of v - u and u - v is a square.
    """
    q = _require_int("Paley order", q, 2)
    if not isprime(q):
        raise DomainError(f"Paley order must be prime, got {q}")
    if q % 4 != 3:
        raise DomainError(f"Paley order must be 3 mod 4, got {q} = {q % 4} mod 4")

    residues = {x * x % q for x in range(1, q)}
    graph = Digraph(q, ((u, v) for u in range(q) for v in range(q)
                        if u != v and (v - u) % q in residues))
    if not is_tournament(graph):
        raise DomainError(f"quadratic residues mod {q} did not give a tournament")
    logger.debug("Paley tournament q=%d with %d residues", q, len(residues))
    return graph


def gen_two_clique(n: int) -> Digraph:
    """
    Two complete digraphs on {0..n-1} and {n..2n-1} joined by the arcs
    0 -> n and n -> 0
    """
    n = _require_int("clique size", n, 2)
    arcs = list(permutations(range(n), 2))
    arcs += [(n + u, n + v) for u, v in permutations(range(n), 2)]
    arcs += [(0, n), (n, 0)]
    return Digraph(2 * n, arcs)


def gen_figure1() -> Digraph:
    """
    Eight labeled vertices: the one-way arc y -> z plus the two-way path
    z - x - v5 - v4 - v3 - v2 - v1 - y
    """
    index = {label: i for i, label in enumerate(FIGURE1_LABELS)}
    arcs = [(index[a], index[b]) for a, b in FIGURE1_ONE_WAY]
    for a, b in FIGURE1_TWO_WAY:
        arcs += [(index[a], index[b]), (index[b], index[a])]
    return Digraph(len(FIGURE1_LABELS), arcs, FIGURE1_LABELS)


# ----------------------------------------------------------------------
# Seeded families
# ----------------------------------------------------------------------

def gen_random_dag(n: int, p: float, seed: int) -> Digraph:
    """Arcs (i, j) with i < j, each kept with probability p, in lexicographic draw order"""
    n = _require_int("vertex count", n, 1)
    p = _require_probability(p)
    pairs = list(combinations(range(n), 2))
    keep = SeededStream(seed).bernoulli(len(pairs), p)
    return Digraph(n, (pair for pair, kept in zip(pairs, keep) if kept))


def gen_random_digraph(n: int, p: float, seed: int) -> Digraph:
    """Every ordered pair u != v kept with probability p"""
    n = _require_int("vertex count", n, 1)
    p = _require_probability(p)
    pairs = list(permutations(range(n), 2))
    keep = SeededStream(seed).bernoulli(len(pairs), p)
    return Digraph(n, (pair for pair, kept in zip(pairs, keep) if kept))


def gen_sparse_digraph(n: int, m: int, seed: int) -> Digraph:
    """
    Exactly m distinct arcs with uniformly drawn endpoints; self-loops and
    repeats are redrawn. Runs in O(m) expected time for m well below n(n-1).
    """
    n = _require_int("vertex count", n, 1)
    m = _require_int("arc count", m, 0)
    if m > n * (n - 1):
        raise DomainError(f"{m} arcs do not fit in a simple digraph on {n} vertices")

    stream = SeededStream(seed)
    chosen: Dict[Arc, None] = {}
    while len(chosen) < m:
        batch = stream.raw(2 * max(m - len(chosen), 32)) % np.uint64(n)
        for u, v in zip(batch[0::2].tolist(), batch[1::2].tolist()):
            if u != v:
                chosen.setdefault((u, v))
                if len(chosen) == m:
                    break
    return Digraph(n, chosen)


def gen_random_tournament(n: int, seed: int) -> Digraph:
    """One arc per unordered pair {i < j}; a coin picks i -> j or j -> i"""
    n = _require_int("vertex count", n, 1)
    pairs = list(combinations(range(n), 2))
    flips = SeededStream(seed).coins(len(pairs))
    return Digraph(n, ((j, i) if flip else (i, j) for (i, j), flip in zip(pairs, flips)))


def gen_random_graph(n: int, p: float, seed: int) -> List[Edge]:
    """Undirected G(n, p) edge list, pairs (i, j) with i < j"""
    n = _require_int("vertex count", n, 1)
    p = _require_probability(p)
    pairs = list(combinations(range(n), 2))
    keep = SeededStream(seed).bernoulli(len(pairs), p)
    return [pair for pair, kept in zip(pairs, keep) if kept]


def sample_connected_graphs(count: int, min_n: int, max_n: int, p: float,
                            seed: int) -> Iterator[Tuple[int, List[Edge]]]:
    """
    Yield `count` connected undirected graphs as (n, edges), with n cycling
    through min_n..max_n. Disconnected draws are skipped and redrawn with
    the next seed.
    """
    sizes = list(range(_require_int("min_n", min_n, 1), _require_int("max_n", max_n, min_n) + 1))
    produced = 0
    attempt = seed
    while produced < count:
        n = sizes[produced % len(sizes)]
        edges = gen_random_graph(n, p, attempt)
        attempt += 1
        if is_strongly_connected(symmetrize(edges, n)):
            produced += 1
            yield n, edges


# ----------------------------------------------------------------------
# Undirected <-> directed
# ----------------------------------------------------------------------

def symmetrize(edges: Union[str, TextIO, Iterable[Edge]], n: Optional[int] = None) -> Digraph:
    """
    Replace every undirected edge {u, v} by the arcs u -> v and v -> u.
    Accepts edge-list text (labels kept) or an iterable of integer pairs.
    """
    labels = None
    if isinstance(edges, str) or hasattr(edges, 'read'):
        parsed_n, pairs, labels = parse_edge_lines(edges)
        n = parsed_n if n is None else n
    else:
        pairs = [(int(u), int(v)) for u, v in edges]
        if n is None:
            n = max((max(u, v) for u, v in pairs), default=-1) + 1

    arcs: List[Arc] = []
    for u, v in pairs:
        if u == v:
            raise DomainError(f"self-loop on vertex {u} in an undirected edge list")
        arcs += [(u, v), (v, u)]
    return Digraph(n, arcs, labels)


def underlying_graph(graph: Digraph) -> Digraph:
    """Underlying undirected graph of a digraph, as a symmetric digraph"""
    return Digraph(graph.n, (arc for u, v in graph.arcs() for arc in ((u, v), (v, u))),
                   graph.labels)


# ----------------------------------------------------------------------
# Command-line specs
# ----------------------------------------------------------------------

class Family(Enum):
    """Generator families reachable from the command line"""
    CYCLE = "cycle"
    PATH_DAG = "path_dag"
    RANDOM_DAG = "random_dag"
    COMPLETE = "complete"
    RANDOM_TOURNAMENT = "random_tournament"
    PALEY = "paley"
    TWO_CLIQUE = "two_clique"
    FIGURE1 = "figure1"
    SYMMETRIZE = "symmetrize"
    RANDOM_DIGRAPH = "random_digraph"
    SPARSE_DIGRAPH = "sparse_digraph"


# Positional parameter names per family; probabilities are given in per-mille
FAMILY_PARAMS: Dict[Family, Tuple[str, ...]] = {
    Family.CYCLE: ('n',),
    Family.PATH_DAG: ('n',),
    Family.RANDOM_DAG: ('n', 'permille', 'seed'),
    Family.COMPLETE: ('n',),
    Family.RANDOM_TOURNAMENT: ('n', 'seed'),
    Family.PALEY: ('q',),
    Family.TWO_CLIQUE: ('n',),
    Family.FIGURE1: (),
    Family.SYMMETRIZE: (),
    Family.RANDOM_DIGRAPH: ('n', 'permille', 'seed'),
    Family.SPARSE_DIGRAPH: ('n', 'm', 'seed'),
}


class GeneratorSpec:
    """A generator family plus its validated integer parameters"""

    def __init__(self, family: Union[Family, str], params: Sequence[int] = ()):
        try:
            self.family = family if isinstance(family, Family) else Family(family)
        except ValueError:
            known = ", ".join(f.value for f in Family)
            raise DomainError(f"unknown generator family {family!r} (known: {known})") from None

        names = FAMILY_PARAMS[self.family]
        if len(params) != len(names):
            expected = " ".join(names) or "no parameters"
            raise DomainError(f"{self.family.value} takes {expected}, got {len(params)} value(s)")
        self.params: Dict[str, int] = {}
        for name, value in zip(names, params):
            self.params[name] = _require_int(name, value, 0)
        if 'permille' in self.params and self.params['permille'] > 1000:
            raise DomainError(f"permille must lie in 0..1000, got {self.params['permille']}")

    @classmethod
    def from_args(cls, family: str, args: Sequence[str]) -> 'GeneratorSpec':
        """Build a spec from command-line tokens"""
        values = []
        for token in args:
            try:
                values.append(int(token))
            except ValueError:
                raise DomainError(f"generator parameter {token!r} is not an integer") from None
        return cls(family, values)

    @property
    def usage(self) -> str:
        return " ".join([self.family.value] + [name.upper() for name in FAMILY_PARAMS[self.family]])

    def build(self, edge_text: Union[str, TextIO, None] = None) -> Digraph:
        """Construct the graph; symmetrize reads its undirected edges from `edge_text`"""
        p = self.params
        family = self.family
        if family is Family.CYCLE:
            return gen_cycle(p['n'])
        if family is Family.PATH_DAG:
            return gen_path_dag(p['n'])
        if family is Family.RANDOM_DAG:
            return gen_random_dag(p['n'], p['permille'] / 1000, p['seed'])
        if family is Family.COMPLETE:
            return gen_complete(p['n'])
        if family is Family.RANDOM_TOURNAMENT:
            return gen_random_tournament(p['n'], p['seed'])
        if family is Family.PALEY:
            return gen_paley(p['q'])
        if family is Family.TWO_CLIQUE:
            return gen_two_clique(p['n'])
        if family is Family.FIGURE1:
            return gen_figure1()
        if family is Family.RANDOM_DIGRAPH:
            return gen_random_digraph(p['n'], p['permille'] / 1000, p['seed'])
        if family is Family.SPARSE_DIGRAPH:
            return gen_sparse_digraph(p['n'], p['m'], p['seed'])
        if edge_text is None:
            raise DomainError("symmetrize needs an undirected edge list on the input")
        return symmetrize(edge_text)

    def __repr__(self) -> str:
        return f"GeneratorSpec({self.family.value}, {self.params})"
