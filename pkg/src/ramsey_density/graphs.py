"""Small graphs on bit-mask adjacency and their independence invariants.

A pattern graph is stored as one neighbor mask per vertex, so every set
operation the ratio search needs (neighborhood union, independence test,
candidate pruning) is a handful of integer ops.  Vertex counts are capped
at 64: every graph this toolkit consumes is tiny, and the cap keeps a
vertex set one machine word on the off chance the masks reach C.
"""

from __future__ import annotations

import re
from dataclasses import dataclass
from fractions import Fraction

from .bitset import bits_tuple, iter_bits, mask_of
from .errors import CapacityError, ContractViolation, ParseError

MAX_VERTICES = 64


@dataclass(frozen=True)
class FiniteGraph:
    """Undirected simple graph: n vertices labeled 0..n-1, adj[v] a bit mask."""

    n: int
    adj: tuple[int, ...]

    def __post_init__(self):
        if not 1 <= self.n <= MAX_VERTICES:
            raise CapacityError(f"vertex count {self.n} outside 1..{MAX_VERTICES}")
        if len(self.adj) != self.n:
            raise ValueError("adjacency length does not match vertex count")
        full = (1 << self.n) - 1
        for v, mask in enumerate(self.adj):
            if mask & ~full:
                raise ValueError(f"vertex {v} has neighbors outside 0..{self.n - 1}")
            if mask >> v & 1:
                raise ValueError(f"self-loop at vertex {v}")
            for u in iter_bits(mask):
                if not self.adj[u] >> v & 1:
                    raise ValueError(f"adjacency not symmetric at {{{u},{v}}}")

    @staticmethod
    def from_edges(n: int, edges) -> "FiniteGraph":
        adj = [0] * n
        for u, v in edges:
            if u == v:
                raise ValueError(f"self-loop at vertex {u}")
            if not (0 <= u < n and 0 <= v < n):
                raise ValueError(f"edge ({u},{v}) out of bounds for n={n}")
            adj[u] |= 1 << v
            adj[v] |= 1 << u
        return FiniteGraph(n, tuple(adj))

    def has_edge(self, u: int, v: int) -> bool:
        return bool(self.adj[u] >> v & 1)

    def degree(self, v: int) -> int:
        return self.adj[v].bit_count()

    def edges(self) -> list[tuple[int, int]]:
        return [(u, v) for u in range(self.n) for v in iter_bits(self.adj[u]) if u < v]

    def edge_count(self) -> int:
        return sum(self.degree(v) for v in range(self.n)) // 2

    def complement(self) -> "FiniteGraph":
        full = (1 << self.n) - 1
        return FiniteGraph(
            self.n, tuple((full & ~self.adj[v]) & ~(1 << v) for v in range(self.n))
        )

    def neighborhood(self, vertex_set: int) -> int:
        """Union of neighbor masks over the vertices of vertex_set."""
        out = 0
        for v in iter_bits(vertex_set):
            out |= self.adj[v]
        return out

    def is_independent(self, vertex_set: int) -> bool:
        return all(self.adj[v] & vertex_set == 0 for v in iter_bits(vertex_set))

    def describe(self) -> str:
        return f"{self.n}; " + ",".join(f"{u}-{v}" for u, v in self.edges())


# ---------------------------------------------------------------------------
# Constructors for common patterns

def complete_graph(n: int) -> FiniteGraph:
    full = (1 << n) - 1
    return FiniteGraph(n, tuple(full & ~(1 << v) for v in range(n)))


def empty_graph(n: int) -> FiniteGraph:
    return FiniteGraph(n, (0,) * n)


def cycle_graph(n: int) -> FiniteGraph:
    if n < 3:
        raise ValueError("cycle needs at least 3 vertices")
    return FiniteGraph.from_edges(n, [(v, (v + 1) % n) for v in range(n)])


def path_graph(n: int) -> FiniteGraph:
    if n == 1:
        return empty_graph(1)
    return FiniteGraph.from_edges(n, [(v, v + 1) for v in range(n - 1)])


def complete_bipartite(a: int, b: int) -> FiniteGraph:
    return FiniteGraph.from_edges(a + b, [(i, a + j) for i in range(a) for j in range(b)])


# ---------------------------------------------------------------------------
# Parsing

_EDGE_LIST_HINT = re.compile(r";")


def parse_graph(text: str) -> FiniteGraph:
    """Parse either the edge-list format ("<n>; <i>-<j>,...") or graph6."""
    if _EDGE_LIST_HINT.search(text):
        return parse_edge_list(text)
    return parse_graph6(text)


def parse_edge_list(text: str) -> FiniteGraph:
    """Parse "<n>; <i>-<j>[,<i>-<j>]*" with whitespace ignored anywhere."""
    semi = text.find(";")
    if semi == -1:
        raise ParseError("edge-list format needs ';' after the vertex count", offset=len(text))
    head = text[:semi]
    if not head.strip():
        raise ParseError("missing vertex count before ';'", offset=0)
    try:
        n = int(head)
    except ValueError:
        bad = _first_unexpected(head, 0, allow="0123456789")
        raise ParseError(f"vertex count is not an integer: {head.strip()!r}", offset=bad)
    if n < 1:
        raise ParseError(f"vertex count must be positive, got {n}", offset=0)
    if n > MAX_VERTICES:
        raise CapacityError(f"vertex count {n} exceeds the {MAX_VERTICES}-vertex cap")

    edges = []
    pos = semi + 1
    body = text[semi + 1 :]
    if body.strip():
        for chunk_offset, chunk in _split_with_offsets(body, pos, ","):
            m = re.fullmatch(r"\s*(\d+)\s*-\s*(\d+)\s*", chunk)
            if m is None:
                bad = chunk_offset + _first_unexpected(chunk, 0, allow="0123456789- \t")
                raise ParseError(f"bad edge token {chunk.strip()!r}", offset=bad)
            u, v = int(m.group(1)), int(m.group(2))
            if u == v:
                raise ParseError(f"self-loop {u}-{v}", offset=chunk_offset)
            if u >= n or v >= n:
                raise ParseError(f"edge {u}-{v} out of range for n={n}", offset=chunk_offset)
            edges.append((u, v))
    return FiniteGraph.from_edges(n, edges)


def _split_with_offsets(body: str, base: int, sep: str):
    start = 0
    while True:
        idx = body.find(sep, start)
        if idx == -1:
            yield base + start, body[start:]
            return
        yield base + start, body[start:idx]
        start = idx + 1


def _first_unexpected(s: str, base: int, allow: str) -> int:
    for i, ch in enumerate(s):
        if ch not in allow and not ch.isspace():
            return base + i
    return base


def parse_graph6(text: str) -> FiniteGraph:
    """Decode the standard graph6 encoding (short form, up to 62 vertices)."""
    data = text.strip()
    if not data:
        raise ParseError("empty graph6 string", offset=0)
    if data.startswith(">>graph6<<"):
        data = data[10:]
    if data[0] == "~":
        raise CapacityError("extended graph6 (more than 62 vertices) not supported")
    for i, ch in enumerate(data):
        if not 63 <= ord(ch) <= 126:
            raise ParseError(f"invalid graph6 byte {ch!r}", offset=i)
    n = ord(data[0]) - 63
    if n < 1:
        raise ParseError("graph6 vertex count must be at least 1", offset=0)
    nbits = n * (n - 1) // 2
    need = (nbits + 5) // 6
    if len(data) - 1 != need:
        raise ParseError(
            f"graph6 body has {len(data) - 1} bytes, expected {need} for n={n}",
            offset=min(len(data), need + 1),
        )
    bits = []
    for ch in data[1:]:
        val = ord(ch) - 63
        bits.extend((val >> shift) & 1 for shift in range(5, -1, -1))
    for extra in bits[nbits:]:
        if extra:
            raise ParseError("nonzero padding bits in graph6 body", offset=len(data) - 1)
    edges = []
    k = 0
    for j in range(1, n):
        for i in range(j):
            if bits[k]:
                edges.append((i, j))
            k += 1
    return FiniteGraph.from_edges(n, edges)


# ---------------------------------------------------------------------------
# Independent-set machinery

def enumerate_independent_sets(g: FiniteGraph):
    """Yield every nonempty independent set of g exactly once, as a bit mask.

    Backtracking over vertices in descending-degree order; the running
    exclusion mask prunes neighbors of everything already chosen.  Complete
    enumeration is intentional: the ratio minimization below must be exact.
    """
    order = sorted(range(g.n), key=lambda v: (-g.degree(v), v))
    adj = g.adj

    def walk(start, current, excluded):
        for idx in range(start, g.n):
            v = order[idx]
            if excluded >> v & 1:
                continue
            picked = current | (1 << v)
            yield picked
            yield from walk(idx + 1, picked, excluded | adj[v] | (1 << v))

    yield from walk(0, 0, 0)


def alpha(g: FiniteGraph) -> int:
    """Independence number, via branch-and-bound max clique on the complement."""
    size, _ = max_clique(g.complement())
    return size


def max_clique(g: FiniteGraph) -> tuple[int, int]:
    """Exact maximum clique (size, vertex mask) by greedy-coloring B&B."""
    best_size = 0
    best_mask = 0
    adj = g.adj

    def color_bound(candidates):
        # Greedy coloring: number of color classes bounds the clique size.
        classes = 0
        rest = candidates
        while rest:
            classes += 1
            cls = rest
            while cls:
                low = cls & -cls
                v = low.bit_length() - 1
                cls &= ~adj[v]
                cls &= ~low
                rest &= ~low
        return classes

    def expand(current, size, candidates):
        nonlocal best_size, best_mask
        if not candidates:
            if size > best_size:
                best_size, best_mask = size, current
            return
        if size + color_bound(candidates) <= best_size:
            return
        rest = candidates
        while rest:
            if size + rest.bit_count() <= best_size:
                return
            low = rest & -rest
            v = low.bit_length() - 1
            expand(current | low, size + 1, candidates & adj[v] & rest & ~low)
            rest &= ~low
            candidates &= ~low

    expand(0, 0, (1 << g.n) - 1)
    return best_size, best_mask


def find_clique(g: FiniteGraph, size: int, within: int | None = None) -> int | None:
    """Lexicographically first clique of exactly `size` vertices inside
    the mask `within`, or None if there is none."""
    if within is None:
        within = (1 << g.n) - 1
    if size == 0:
        return 0
    adj = g.adj

    def search(current, count, candidates):
        if count == size:
            return current
        if count + candidates.bit_count() < size:
            return None
        rest = candidates
        while rest:
            low = rest & -rest
            v = low.bit_length() - 1
            found = search(current | low, count + 1, candidates & adj[v] & ~low)
            if found is not None:
                return found
            rest &= ~low
        return None

    return search(0, 0, within)


def min_independent_ratio(g: FiniteGraph) -> tuple[Fraction, int]:
    """Exact minimum of |N(I)|/|I| over nonempty independent I.

    Returns the minimum as a Fraction plus one minimizing set, the
    lexicographically smallest bit mask among minimizers.
    """
    best = None
    witness = 0
    for vertex_set in enumerate_independent_sets(g):
        ratio = Fraction(g.neighborhood(vertex_set).bit_count(), vertex_set.bit_count())
        if best is None or ratio < best or (ratio == best and vertex_set < witness):
            best, witness = ratio, vertex_set
    return best, witness


def corollary_condition(g: FiniteGraph) -> bool:
    """True iff some ratio-minimizing independent set has maximum size alpha(g)."""
    best = None
    largest_minimizer = 0
    for vertex_set in enumerate_independent_sets(g):
        ratio = Fraction(g.neighborhood(vertex_set).bit_count(), vertex_set.bit_count())
        size = vertex_set.bit_count()
        if best is None or ratio < best:
            best, largest_minimizer = ratio, size
        elif ratio == best and size > largest_minimizer:
            largest_minimizer = size
    return largest_minimizer == alpha(g)


def neighborhood_independent(g: FiniteGraph, vertex_set: int) -> bool:
    """True iff N(vertex_set) spans no edge. vertex_set must be independent."""
    if not g.is_independent(vertex_set):
        raise ContractViolation(
            f"vertex set {bits_tuple(vertex_set)} is not independent"
        )
    nb = g.neighborhood(vertex_set)
    return all(g.adj[v] & nb == 0 for v in iter_bits(nb))


def independent_sets_with_independent_neighborhood(g: FiniteGraph):
    """Yield (vertex_set, ratio) for every nonempty independent I whose
    neighborhood is also independent."""
    for vertex_set in enumerate_independent_sets(g):
        nb = g.neighborhood(vertex_set)
        if all(g.adj[v] & nb == 0 for v in iter_bits(nb)):
            yield vertex_set, Fraction(nb.bit_count(), vertex_set.bit_count())


__all__ = [
    "MAX_VERTICES",
    "FiniteGraph",
    "complete_graph",
    "empty_graph",
    "cycle_graph",
    "path_graph",
    "complete_bipartite",
    "parse_graph",
    "parse_edge_list",
    "parse_graph6",
    "enumerate_independent_sets",
    "alpha",
    "max_clique",
    "find_clique",
    "min_independent_ratio",
    "corollary_condition",
    "neighborhood_independent",
    "independent_sets_with_independent_neighborhood",
    "mask_of",
]
