"""Red/blue edge colorings of complete graphs and their monochromatic pieces.

A coloring of K_n is a single bit mask over the n(n-1)/2 edges in a fixed
lexicographic order (bit set = red).  The edge order is part of the on-disk
format and of every certificate, so it is defined once here and nowhere
else.
"""

from __future__ import annotations

import random
from dataclasses import dataclass
from itertools import combinations

from .bitset import iter_bits, mask_of
from .errors import CapacityError, ParseError
from .graphs import FiniteGraph

#: Convention string embedded in certificates so external checkers can
#: re-derive bit positions.
EDGE_ORDER_CONVENTION = "lex;i<j;index=i*n-i*(i+1)/2+(j-i-1);bit=1 means red"

EXHAUSTIVE_EDGE_LIMIT = 28  # enumerate_colorings refuses above 2^28 colorings


def edge_count(n: int) -> int:
    return n * (n - 1) // 2

def edge_index(n: int, i: int, j: int) -> int:
    """Lexicographic index of edge {i,j} with i < j."""
    if i > j:
        i, j = j, i
    if i == j or not 0 <= i < n or not 0 <= j < n:
        raise ValueError(f"bad edge ({i},{j}) for n={n}")
    return i * n - i * (i + 1) // 2 + (j - i - 1)


def edge_endpoints(n: int, index: int) -> tuple[int, int]:
    """Inverse of edge_index."""
    if not 0 <= index < edge_count(n):
        raise ValueError(f"edge index {index} out of range for n={n}")
    i = 0
    row = n - 1
    while index >= row:
        index -= row
        i += 1
        row -= 1
    return i, i + 1 + index


@dataclass(frozen=True)
class EdgeColoring:
    """Total red/blue coloring of K_n. red is the bit mask of red edges."""

    n: int
    red: int

    def __post_init__(self):
        if self.n < 2:
            raise ValueError("coloring needs at least 2 vertices")
        if self.red >> edge_count(self.n):
            raise ValueError("red mask has bits beyond the edge count")

    @property
    def blue(self) -> int:
        return ~self.red & ((1 << edge_count(self.n)) - 1)

    def is_red(self, i: int, j: int) -> bool:
        return bool(self.red >> edge_index(self.n, i, j) & 1)

    def color_name(self, i: int, j: int) -> str:
        return "red" if self.is_red(i, j) else "blue"

    def swap(self) -> "EdgeColoring":
        return EdgeColoring(self.n, self.blue)

    def color_mask(self, color: str) -> int:
        _check_color(color)
        return self.red if color == "red" else self.blue

    def adjacency(self, color: str) -> tuple[int, ...]:
        """Per-vertex neighbor masks of the chosen color class."""
        _check_color(color)
        adj = [0] * self.n
        mask = self.color_mask(color)
        for index in iter_bits(mask):
            i, j = edge_endpoints(self.n, index)
            adj[i] |= 1 << j
            adj[j] |= 1 << i
        return tuple(adj)

    def to_bitstring(self) -> str:
        m = edge_count(self.n)
        return "".join("1" if self.red >> k & 1 else "0" for k in range(m))

    def to_file_text(self) -> str:
        return f"n={self.n}\n{self.to_bitstring()}\n"


def _check_color(color: str):
    if color not in ("red", "blue"):
        raise ValueError(f"color must be 'red' or 'blue', got {color!r}")


def coloring_from_bitstring(n: int, bits: str) -> EdgeColoring:
    m = edge_count(n)
    if len(bits) != m:
        raise ParseError(f"bit string has length {len(bits)}, expected {m} for n={n}")
    red = 0
    for k, ch in enumerate(bits):
        if ch == "1":
            red |= 1 << k
        elif ch != "0":
            raise ParseError(f"bit string may contain only 0/1, found {ch!r}", offset=k)
    return EdgeColoring(n, red)


def parse_coloring_file(text: str) -> EdgeColoring:
    """Parse the two-line coloring format: "n=<int>" then the red bit string."""
    lines = [ln.strip() for ln in text.strip().splitlines()]
    if len(lines) < 2:
        raise ParseError("coloring file needs two lines (n=<int>, bit string)")
    if not lines[0].startswith("n="):
        raise ParseError(f"first line must be n=<int>, got {lines[0]!r}", offset=0)
    try:
        n = int(lines[0][2:])
    except ValueError:
        raise ParseError(f"bad vertex count {lines[0][2:]!r}", offset=2)
    return coloring_from_bitstring(n, lines[1])


# ---------------------------------------------------------------------------
# Generators

def all_red(n: int) -> EdgeColoring:
    return EdgeColoring(n, (1 << edge_count(n)) - 1)


def random_coloring(n: int, seed: int) -> EdgeColoring:
    """Uniform random coloring, reproducible from the seed."""
    rng = random.Random(seed)
    return EdgeColoring(n, rng.getrandbits(edge_count(n)))


def pentagon_blowup(n: int) -> EdgeColoring:
    """Five contiguous classes of nearly equal size; red inside classes and
    between cyclically adjacent classes, blue across the diagonals."""
    if n < 5:
        raise ValueError("pentagon blowup needs n >= 5")
    sizes = [n // 5 + (1 if c < n % 5 else 0) for c in range(5)]
    cls = []
    for c, size in enumerate(sizes):
        cls.extend([c] * size)
    red = 0
    for i in range(n):
        for j in range(i + 1, n):
            d = (cls[j] - cls[i]) % 5
            if d in (0, 1, 4):
                red |= 1 << edge_index(n, i, j)
    return EdgeColoring(n, red)


def enumerate_colorings(n: int):
    """Yield all 2^(n(n-1)/2) colorings of K_n exactly once."""
    m = edge_count(n)
    if m > EXHAUSTIVE_EDGE_LIMIT:
        raise CapacityError(
            f"2^{m} colorings of K_{n} exceed the exhaustive budget (2^{EXHAUSTIVE_EDGE_LIMIT})"
        )
    for red in range(1 << m):
        yield EdgeColoring(n, red)


# ---------------------------------------------------------------------------
# Monochromatic structures

def mono_triangles(coloring: EdgeColoring, color: str) -> list[tuple[int, int, int]]:
    """All triples spanning a triangle of the given color, lexicographic."""
    adj = coloring.adjacency(color)
    n = coloring.n
    out = []
    for i in range(n):
        ai = adj[i]
        for j in iter_bits(ai):
            if j <= i:
                continue
            common = ai & adj[j] & ~((1 << (j + 1)) - 1)
            for k in iter_bits(common):
                out.append((i, j, k))
    return out


@dataclass(frozen=True)
class Bowtie:
    """Red triangle and blue triangle sharing exactly the center vertex."""

    center: int
    red_pair: tuple[int, int]
    blue_pair: tuple[int, int]

    def vertex_mask(self) -> int:
        return mask_of((self.center, *self.red_pair, *self.blue_pair))

    def vertices(self) -> tuple[int, ...]:
        return tuple(sorted((self.center, *self.red_pair, *self.blue_pair)))


def enumerate_bowties(coloring: EdgeColoring) -> list[Bowtie]:
    """All bowties, sorted by (center, red pair, blue pair)."""
    radj = coloring.adjacency("red")
    badj = coloring.adjacency("blue")
    out = []
    for center in range(coloring.n):
        red_pairs = _mono_pairs(coloring, radj, radj[center])
        if not red_pairs:
            continue
        blue_pairs = _mono_pairs(coloring, badj, badj[center])
        for rp in red_pairs:
            for bp in blue_pairs:
                out.append(Bowtie(center, rp, bp))
    out.sort(key=lambda b: (b.center, b.red_pair, b.blue_pair))
    return out


def _mono_pairs(coloring, adj, candidates):
    pairs = []
    for a in iter_bits(candidates):
        both = adj[a] & candidates & ~((1 << (a + 1)) - 1)
        for b in iter_bits(both):
            pairs.append((a, b))
    return pairs


@dataclass(frozen=True)
class Copy:
    """One subgraph copy of a pattern inside a color class: the image vertex
    set together with the image edges (dedup key for embeddings)."""

    vertices: tuple[int, ...]
    edges: tuple[tuple[int, int], ...]

    def vertex_mask(self) -> int:
        return mask_of(self.vertices)


def enumerate_copies(coloring: EdgeColoring, pattern: FiniteGraph, color: str) -> list[Copy]:
    """All subgraph embeddings of the pattern into the chosen color class,
    one representative per (vertex set, image edge set).

    Embeddings map pattern edges onto color-class edges; pattern non-edges
    are unconstrained (copies need not be induced).
    """
    n = coloring.n
    if pattern.n > n:
        return []
    adj = coloring.adjacency(color)
    order = sorted(range(pattern.n), key=lambda v: (-pattern.degree(v), v))
    pos_of = {v: pos for pos, v in enumerate(order)}
    placed_neighbors = []  # for each position, earlier positions it must attach to
    for pos, v in enumerate(order):
        placed_neighbors.append([u for u in range(pos) if pattern.has_edge(order[u], v)])
    pattern_edges = pattern.edges()

    full = (1 << n) - 1
    seen = set()
    out = []
    image = [0] * pattern.n  # indexed by position in `order`

    def extend(pos, used):
        if pos == pattern.n:
            verts = tuple(sorted(image))
            edges = tuple(
                sorted(
                    tuple(sorted((image[pos_of[u]], image[pos_of[v]])))
                    for u, v in pattern_edges
                )
            )
            key = (verts, edges)
            if key not in seen:
                seen.add(key)
                out.append(Copy(verts, edges))
            return
        candidates = full & ~used
        for prev in placed_neighbors[pos]:
            candidates &= adj[image[prev]]
        for w in iter_bits(candidates):
            image[pos] = w
            extend(pos + 1, used | (1 << w))

    extend(0, 0)
    out.sort(key=lambda c: (c.vertices, c.edges))
    return out
