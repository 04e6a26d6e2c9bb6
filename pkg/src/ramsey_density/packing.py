"""Exact maximum vertex-disjoint packing of enumerated copies.

One branch-and-bound core serves every packing question the verifiers ask
(cardinality triangle packings, bowtie packings, prefix-weighted packings).
It branches on the smallest live vertex, expanding candidates in
lexicographic order, with a greedy incumbent and a per-vertex fractional
share bound; the search is complete, so the returned weight is certified
optimal.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import reduce

from .bitset import iter_bits, mask_of
from .colorings import EdgeColoring, enumerate_bowties, mono_triangles
from .errors import CapacityError

TRIANGLE_N_CAP = 30
BOWTIE_N_CAP = 25
CANDIDATE_CAP = 100_000


@dataclass(frozen=True)
class Packing:
    """Pairwise vertex-disjoint copies with a color tag and a total weight."""

    kind: str
    copies: tuple[tuple[int, ...], ...]
    weight: int
    optimal: bool = True

    def __post_init__(self):
        used = 0
        for copy in self.copies:
            m = mask_of(copy)
            if m & used:
                raise ValueError(f"copies overlap at {copy}")
            used |= m

    def size(self) -> int:
        return len(self.copies)

    def vertex_mask(self) -> int:
        return mask_of(v for copy in self.copies for v in copy)

    def to_payload(self) -> dict:
        return {
            "kind": self.kind,
            "copies": [list(c) for c in self.copies],
            "weight": self.weight,
            "optimal": self.optimal,
        }


def solve_max_weight_packing(masks, weights, n, vertex_shares=None):
    """Core exact solver.

    masks: candidate vertex masks, already in the caller's canonical
    (lexicographic) order.  weights: nonnegative ints.  vertex_shares:
    optional per-vertex scaled share bound; when omitted it is derived as
    max over candidates of scale*weight/size.  Returns (best_weight,
    tuple of winning candidate indices).  The winner is the first optimum
    met in the deterministic exploration order.
    """
    live_idx = [i for i in range(len(masks)) if weights[i] > 0]
    if not live_idx:
        return 0, ()

    sizes = {masks[i].bit_count() for i in live_idx}
    scale = reduce(math.lcm, sizes, 1)
    if vertex_shares is None:
        shares = [0] * n
        for i in live_idx:
            share = -(-scale * weights[i] // masks[i].bit_count())  # ceil
            for v in iter_bits(masks[i]):
                if share > shares[v]:
                    shares[v] = share
    else:
        shares = [s * scale for s in vertex_shares]

    cand_at = [[] for _ in range(n)]
    for i in live_idx:
        for v in iter_bits(masks[i]):
            cand_at[v].append(i)
    for v in range(n):
        if not cand_at[v]:
            shares[v] = 0  # uncoverable vertices must not inflate the bound
    share_sum = {i: sum(shares[v] for v in iter_bits(masks[i])) for i in live_idx}

    # Greedy incumbent in candidate order.
    best_sel = []
    used = 0
    best_weight = 0
    for i in live_idx:
        if masks[i] & used == 0:
            used |= masks[i]
            best_weight += weights[i]
            best_sel.append(i)
    best_scaled = best_weight * scale
    best_sel = tuple(best_sel)

    total_pot = sum(shares)
    chosen = []

    def dfs(used, dead, cur, pot):
        nonlocal best_scaled, best_weight, best_sel
        if cur + pot <= best_scaled:
            return
        blocked = used | dead
        branch_v = -1
        for v in range(n):
            if blocked >> v & 1 or not cand_at[v]:
                continue
            if any(masks[i] & blocked == 0 for i in cand_at[v]):
                branch_v = v
                break
            # v can never be covered any more; retire it and tighten the bound
            dead |= 1 << v
            blocked |= 1 << v
            pot -= shares[v]
            if cur + pot <= best_scaled:
                return
        if branch_v == -1:
            if cur > best_scaled:
                best_scaled = cur
                best_weight = cur // scale
                best_sel = tuple(chosen)
            return
        for i in cand_at[branch_v]:
            if masks[i] & blocked:
                continue
            chosen.append(i)
            dfs(used | masks[i], dead, cur + scale * weights[i], pot - share_sum[i])
            chosen.pop()
        dfs(used, dead | (1 << branch_v), cur, pot - shares[branch_v])

    dfs(0, 0, 0, total_pot)
    return best_weight, best_sel


def _check_cap(n, cap, what):
    if n > cap:
        raise CapacityError(
            f"{what} is exact only up to n={cap}; got n={n} "
            "(raise the cap or use the greedy fallback)"
        )


def max_triangle_packing(coloring: EdgeColoring, color: str, n_cap=TRIANGLE_N_CAP) -> Packing:
    """Maximum family of disjoint triangles of one color, certified optimal."""
    _check_cap(coloring.n, n_cap, "triangle packing")
    triangles = mono_triangles(coloring, color)
    masks = [mask_of(t) for t in triangles]
    weight, sel = solve_max_weight_packing(masks, [1] * len(masks), coloring.n)
    return Packing(color, tuple(triangles[i] for i in sel), weight)


def max_mono_triangle_packing(coloring: EdgeColoring, n_cap=TRIANGLE_N_CAP):
    """Best triangle packing over both colors (ties go to red).

    Returns (packing, size).
    """
    red = max_triangle_packing(coloring, "red", n_cap)
    blue = max_triangle_packing(coloring, "blue", n_cap)
    winner = red if red.size() >= blue.size() else blue
    return winner, winner.size()


def max_bowtie_packing(coloring: EdgeColoring, n_cap=BOWTIE_N_CAP) -> Packing:
    """Maximum family of vertex-disjoint bowties, certified optimal."""
    _check_cap(coloring.n, n_cap, "bowtie packing")
    bowties = enumerate_bowties(coloring)
    # Packing only cares about vertex sets; keep one bowtie per 5-vertex set.
    by_mask = {}
    for b in bowties:
        by_mask.setdefault(b.vertex_mask(), b)
    reps = sorted(by_mask.values(), key=lambda b: b.vertices())
    masks = [b.vertex_mask() for b in reps]
    weight, sel = solve_max_weight_packing(masks, [1] * len(masks), coloring.n)
    return Packing("bowtie", tuple(reps[i].vertices() for i in sel), weight)


def max_weighted_packing(masks, weights, n, kind="custom", vertex_shares=None) -> Packing:
    """Maximum total-weight disjoint subfamily of arbitrary candidate copies."""
    if len(masks) > CANDIDATE_CAP:
        raise CapacityError(f"{len(masks)} candidates exceed the cap {CANDIDATE_CAP}")
    order = sorted(range(len(masks)), key=lambda i: tuple(sorted(iter_bits(masks[i]))))
    ordered_masks = [masks[i] for i in order]
    ordered_weights = [weights[i] for i in order]
    weight, sel = solve_max_weight_packing(ordered_masks, ordered_weights, n, vertex_shares)
    copies = tuple(tuple(sorted(iter_bits(ordered_masks[i]))) for i in sel)
    return Packing(kind, copies, weight)


def prefix_weighted_triangle_packing(coloring: EdgeColoring, color: str, k: int):
    """Maximum number of vertices below k covered by disjoint triangles of
    one color: weight of a triangle is its vertex count inside 0..k-1."""
    triangles = mono_triangles(coloring, color)
    masks = [mask_of(t) for t in triangles]
    weights = [sum(1 for v in t if v < k) for t in triangles]
    shares = [1 if v < k else 0 for v in range(coloring.n)]
    weight, sel = solve_max_weight_packing(masks, weights, coloring.n, vertex_shares=shares)
    return weight, Packing(color, tuple(triangles[i] for i in sel), weight)


def greedy_triangle_packing(coloring: EdgeColoring, color: str) -> Packing:
    """Lexicographic greedy fallback for colorings beyond the exact budget."""
    used = 0
    picked = []
    for t in mono_triangles(coloring, color):
        m = mask_of(t)
        if m & used == 0:
            used |= m
            picked.append(t)
    return Packing(color, tuple(picked), len(picked), optimal=False)
