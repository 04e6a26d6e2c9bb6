"""Machine verification of the finite combinatorial lemmas.

Each verifier either sweeps an entire coloring space (with a vectorized
kernel where the space is large) or samples it reproducibly, and returns a
SearchCertificate: a deterministic, self-describing record of what was
searched, what was found, and a checksum that any rerun must reproduce.
"""

from __future__ import annotations

import math
import time
from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations

import numpy as np

from . import bounds, reporting
from .bitset import bits_tuple, iter_bits, mask_of
from .colorings import (
    EDGE_ORDER_CONVENTION,
    EdgeColoring,
    edge_count,
    edge_index,
    enumerate_bowties,
    mono_triangles,
    random_coloring,
)
from .errors import CapacityError, VerificationError
from .graphs import FiniteGraph, find_clique
from .packing import (
    max_bowtie_packing,
    max_mono_triangle_packing,
    prefix_weighted_triangle_packing,
)

DEFAULT_SEED = 7
EXHAUSTIVE_N_CAP = 7  # 2^21 colorings; n=8 would be 2^28


@dataclass
class SearchCertificate:
    """Deterministic record of one verification run."""

    lemma_id: str
    verdict: str
    space: dict
    nodes_visited: int
    leaves_evaluated: int
    pruned: dict = field(default_factory=dict)
    counterexamples: list = field(default_factory=list)
    checksum: str = ""
    wall_clock_seconds: float = 0.0
    extra: dict = field(default_factory=dict)

    def __post_init__(self):
        ok = self.verdict == "verified"
        if ok != (len(self.counterexamples) == 0):
            raise VerificationError(
                f"verdict {self.verdict!r} inconsistent with "
                f"{len(self.counterexamples)} counterexamples"
            )

    @property
    def verified(self) -> bool:
        return self.verdict == "verified"

    def to_payload(self) -> dict:
        return {
            "type": "search_certificate",
            "lemma": self.lemma_id,
            "verdict": self.verdict,
            "space": self.space,
            "nodes_visited": self.nodes_visited,
            "leaves_evaluated": self.leaves_evaluated,
            "pruned": self.pruned,
            "counterexamples": self.counterexamples,
            "checksum": self.checksum,
            "wall_clock_seconds": self.wall_clock_seconds,
            "extra": self.extra,
        }


# ---------------------------------------------------------------------------
# Triangle/bowtie inequality: 3|F| + 2|F'| >= n - 5 on a single coloring

@dataclass(frozen=True)
class TriangleBowtieCheck:
    triangle_family_size: int
    bowtie_family_size: int
    holds: bool

    def to_payload(self) -> dict:
        return {
            "type": "triangle_bowtie_check",
            "triangles": self.triangle_family_size,
            "bowties": self.bowtie_family_size,
            "holds": self.holds,
        }


def triangle_bowtie_check(coloring: EdgeColoring, tri_cap=30, bowtie_cap=25) -> TriangleBowtieCheck:
    """Exact |F| (best mono triangle packing) and |F'| (best bowtie packing),
    plus the inequality 3|F| + 2|F'| >= n - 5."""
    _, f_size = max_mono_triangle_packing(coloring, n_cap=tri_cap)
    fp_size = max_bowtie_packing(coloring, n_cap=bowtie_cap).size()
    if f_size < fp_size:
        # every bowtie carries one triangle of each color, so |F| >= |F'|
        raise VerificationError(
            f"packing inconsistency: {f_size} triangles < {fp_size} bowties"
        )
    holds = 3 * f_size + 2 * fp_size >= coloring.n - 5
    return TriangleBowtieCheck(f_size, fp_size, holds)


# ---------------------------------------------------------------------------
# Vectorized exhaustive sweep over every coloring of K_n, n <= 7

def _sweep_tables(n: int):
    """Static tables for the vectorized kernel: per-triangle edge masks,
    edge masks of disjoint triangle pairs, and bowtie placements."""
    triangles = list(combinations(range(n), 3))
    tri_edges = []
    for t in triangles:
        m = 0
        for u, v in combinations(t, 2):
            m |= 1 << edge_index(n, u, v)
        tri_edges.append(m)

    pair_edges = []
    for a in range(len(triangles)):
        for b in range(a + 1, len(triangles)):
            if not set(triangles[a]) & set(triangles[b]):
                pair_edges.append(tri_edges[a] | tri_edges[b])

    bowties = []
    for center in range(n):
        rest = [v for v in range(n) if v != center]
        for rp in combinations(rest, 2):
            for bp in combinations([v for v in rest if v not in rp], 2):
                red_m = (
                    (1 << edge_index(n, center, rp[0]))
                    | (1 << edge_index(n, center, rp[1]))
                    | (1 << edge_index(n, rp[0], rp[1]))
                )
                blue_m = (
                    (1 << edge_index(n, center, bp[0]))
                    | (1 << edge_index(n, center, bp[1]))
                    | (1 << edge_index(n, bp[0], bp[1]))
                )
                bowties.append((red_m, blue_m))
    return tri_edges, pair_edges, bowties


def exhaustive_triangle_bowtie_sweep(n: int, chunk_bits: int = 20) -> SearchCertificate:
    """Visit all 2^(n(n-1)/2) colorings of K_n and certify that
    3|F| + 2|F'| >= n - 5 and 5|F| >= n - 5 hold on every one.

    For n <= 7 the two packing maxima collapse to reachable existence
    tests (|F| <= 2 and |F'| <= 1 by vertex count), so the whole sweep runs
    as a handful of vectorized scans per candidate structure.
    """
    if n < 3:
        raise CapacityError("sweep needs n >= 3")
    if n > EXHAUSTIVE_N_CAP:
        raise CapacityError(
            f"exhaustive sweep capped at n={EXHAUSTIVE_N_CAP}; got n={n}"
        )
    start = time.perf_counter()
    m = edge_count(n)
    total = 1 << m
    tri_edges, pair_edges, bowties = _sweep_tables(n)

    hist = np.zeros(6, dtype=np.int64)  # index = F*2 + F'
    lemma_violations = 0
    coverage_violations = 0
    bad_examples = []

    chunk = 1 << min(chunk_bits, m)
    for base in range(0, total, chunk):
        cols = np.arange(base, base + chunk, dtype=np.uint32)

        def any_of(masks, red_side):
            acc = np.zeros(len(cols), dtype=bool)
            for em in masks:
                em32 = np.uint32(em)
                if red_side:
                    acc |= (cols & em32) == em32
                else:
                    acc |= (cols & em32) == 0
            return acc

        red1 = any_of(tri_edges, True)
        blue1 = any_of(tri_edges, False)
        red2 = any_of(pair_edges, True) if pair_edges else np.zeros(len(cols), bool)
        blue2 = any_of(pair_edges, False) if pair_edges else np.zeros(len(cols), bool)

        bow = np.zeros(len(cols), dtype=bool)
        for red_m, blue_m in bowties:
            rm, bm = np.uint32(red_m), np.uint32(blue_m)
            bow |= ((cols & rm) == rm) & ((cols & bm) == 0)

        f_red = red1.astype(np.int8) + red2.astype(np.int8)
        f_blue = blue1.astype(np.int8) + blue2.astype(np.int8)
        f_best = np.maximum(f_red, f_blue)
        fp = bow.astype(np.int8)

        hist += np.bincount(f_best.astype(np.int64) * 2 + fp, minlength=6)
        lemma_bad = 3 * f_best + 2 * fp < n - 5
        coverage_bad = 5 * f_best < n - 5
        lemma_violations += int(lemma_bad.sum())
        coverage_violations += int(coverage_bad.sum())
        for idx in np.nonzero(lemma_bad | coverage_bad)[0][:5]:
            if len(bad_examples) < 5:
                c = EdgeColoring(n, int(cols[idx]))
                bad_examples.append(
                    {"coloring": c.to_file_text(), "F": int(f_best[idx]), "Fp": int(fp[idx])}
                )

    verdict = "verified" if lemma_violations == 0 and coverage_violations == 0 else "counterexample"
    extra = {
        "family_size_histogram": {
            f"F={f},F'={p}": int(hist[f * 2 + p]) for f in range(3) for p in range(2)
        },
        "lemma_violations": lemma_violations,
        "coverage_violations": coverage_violations,
    }
    cert = SearchCertificate(
        lemma_id="triangle-bowtie-inequality",
        verdict=verdict,
        space={
            "n": n,
            "colorings": total,
            "edge_order": EDGE_ORDER_CONVENTION,
        },
        nodes_visited=total,
        leaves_evaluated=total,
        counterexamples=bad_examples,
        checksum=reporting.sha256_of({"n": n, "histogram": hist.tolist()}),
        wall_clock_seconds=time.perf_counter() - start,
        extra=extra,
    )
    return cert


# ---------------------------------------------------------------------------
# K_6 observation: disjoint red and blue triangles force a bowtie

def k6_observation_verify() -> SearchCertificate:
    """Fix a red triangle on {0,1,2} and a blue one on {3,4,5}; enumerate all
    512 colorings of the nine cross edges and confirm each contains a bowtie."""
    start = time.perf_counter()
    n = 6
    base_red = 0
    for u, v in ((0, 1), (0, 2), (1, 2)):
        base_red |= 1 << edge_index(n, u, v)
    cross = [(i, j) for i in (0, 1, 2) for j in (3, 4, 5)]
    counts = []
    counterexamples = []
    for bits in range(512):
        red = base_red
        for pos, (i, j) in enumerate(cross):
            if bits >> pos & 1:
                red |= 1 << edge_index(n, i, j)
        coloring = EdgeColoring(n, red)
        found = enumerate_bowties(coloring)
        counts.append(len(found))
        if not found:
            counterexamples.append({"coloring": coloring.to_file_text()})
    verdict = "verified" if not counterexamples else "counterexample"
    return SearchCertificate(
        lemma_id="k6-bowtie-observation",
        verdict=verdict,
        space={
            "n": n,
            "fixed": "red triangle 0-1-2, blue triangle 3-4-5",
            "cross_edge_assignments": 512,
            "edge_order": EDGE_ORDER_CONVENTION,
        },
        nodes_visited=512,
        leaves_evaluated=512,
        counterexamples=counterexamples,
        checksum=reporting.sha256_of({"bowtie_counts": counts}),
        wall_clock_seconds=time.perf_counter() - start,
        extra={"min_bowties": min(counts), "max_bowties": max(counts)},
    )


# ---------------------------------------------------------------------------
# Three-fifths coverage: 5|F| >= n - 5 (so triangles cover 3(n-5)/5 vertices)

def coverage_check(coloring: EdgeColoring, tri_cap=30) -> tuple[int, bool]:
    """Exact best mono triangle family size and the coverage inequality."""
    _, f_size = max_mono_triangle_packing(coloring, n_cap=tri_cap)
    return f_size, 5 * f_size >= coloring.n - 5


def coverage_sweep(
    exhaustive_max_n: int = EXHAUSTIVE_N_CAP,
    samples: int = 500,
    n_low: int = 10,
    n_high: int = 14,
    seed: int = DEFAULT_SEED,
) -> SearchCertificate:
    """Exhaustive coverage check for all n <= exhaustive_max_n plus sampled
    random colorings in [n_low, n_high]."""
    start = time.perf_counter()
    violations = 0
    counterexamples = []
    sizes = []
    nodes = 0
    for n in range(3, exhaustive_max_n + 1):
        sub = exhaustive_triangle_bowtie_sweep(n)
        nodes += sub.nodes_visited
        violations += sub.extra["coverage_violations"]
        counterexamples.extend(sub.counterexamples)
    for i in range(samples):
        n = n_low + i % (n_high - n_low + 1)
        coloring = random_coloring(n, seed * 100_000 + i)
        f_size, ok = coverage_check(coloring)
        sizes.append(f_size)
        nodes += 1
        if not ok:
            violations += 1
            counterexamples.append({"coloring": coloring.to_file_text(), "F": f_size})
    verdict = "verified" if violations == 0 else "counterexample"
    return SearchCertificate(
        lemma_id="three-fifths-coverage",
        verdict=verdict,
        space={
            "exhaustive_n": list(range(3, exhaustive_max_n + 1)),
            "sampled": {"count": samples, "n_low": n_low, "n_high": n_high, "seed": seed},
            "edge_order": EDGE_ORDER_CONVENTION,
        },
        nodes_visited=nodes,
        leaves_evaluated=nodes,
        counterexamples=counterexamples,
        checksum=reporting.sha256_of({"sampled_sizes": sizes}),
        wall_clock_seconds=time.perf_counter() - start,
        extra={"violations": violations},
    )


# ---------------------------------------------------------------------------
# Prefix density of triangle families at the two designated cut points

@dataclass(frozen=True)
class PrefixDensityRow:
    k: int
    color: str
    coverage: int
    threshold: float
    ok: bool

    def to_payload(self) -> dict:
        return {
            "k": self.k,
            "color": self.color,
            "coverage": self.coverage,
            "threshold": self.threshold,
            "ok": self.ok,
        }


@dataclass(frozen=True)
class PrefixDensityResult:
    n: int
    rows: tuple[PrefixDensityRow, ...]
    holds: bool
    best_k: int
    best_color: str
    best_coverage: int

    def to_payload(self) -> dict:
        return {
            "type": "prefix_density",
            "n": self.n,
            "rows": [r.to_payload() for r in self.rows],
            "holds": self.holds,
            "best": {"k": self.best_k, "color": self.best_color, "coverage": self.best_coverage},
        }


def prefix_density_check(coloring: EdgeColoring) -> PrefixDensityResult:
    """For k in {floor(delta* n), n} and each color, compute the exact best
    prefix coverage by disjoint mono triangles; the claim is that some
    (k, color) reaches gamma*·k - 7."""
    n = coloring.n
    ks = sorted({math.floor(bounds.TRIANGLE_PREFIX * n), n})
    rows = []
    best = None
    for k in ks:
        threshold = bounds.TRIANGLE_LOWER * k - 7
        for color in ("red", "blue"):
            coverage, _ = prefix_weighted_triangle_packing(coloring, color, k)
            ok = coverage >= threshold
            rows.append(PrefixDensityRow(k, color, coverage, threshold, ok))
            margin = coverage - threshold
            if best is None or margin > best[0]:
                best = (margin, k, color, coverage)
    holds = any(r.ok for r in rows)
    return PrefixDensityResult(
        n=n,
        rows=tuple(rows),
        holds=holds,
        best_k=best[1],
        best_color=best[2],
        best_coverage=best[3],
    )


def prefix_density_sweep(
    samples: int = 200,
    n_low: int = 15,
    n_high: int = 24,
    seed: int = DEFAULT_SEED,
) -> SearchCertificate:
    start = time.perf_counter()
    violations = 0
    counterexamples = []
    trace = []
    for i in range(samples):
        n = n_low + i % (n_high - n_low + 1)
        coloring = random_coloring(n, seed * 100_000 + i)
        result = prefix_density_check(coloring)
        trace.append([result.best_k, result.best_coverage])
        if not result.holds:
            violations += 1
            counterexamples.append(
                {"coloring": coloring.to_file_text(), "rows": [r.to_payload() for r in result.rows]}
            )
    verdict = "verified" if violations == 0 else "counterexample"
    return SearchCertificate(
        lemma_id="prefix-density",
        verdict=verdict,
        space={
            "sampled": {"count": samples, "n_low": n_low, "n_high": n_high, "seed": seed},
            "cut": "k in {floor(delta* n), n}",
            "edge_order": EDGE_ORDER_CONVENTION,
        },
        nodes_visited=samples,
        leaves_evaluated=samples,
        counterexamples=counterexamples,
        checksum=reporting.sha256_of({"trace": trace}),
        wall_clock_seconds=time.perf_counter() - start,
        extra={"violations": violations},
    )


# ---------------------------------------------------------------------------
# Adequate sets: every eps-fraction subset contains a same-colored K_s

ADEQUACY_EXACT_CAP = 22


@dataclass(frozen=True)
class AdequacyWitness:
    part_id: int
    color: str
    s: int
    eps: Fraction
    verdict: str  # "adequate" | "inadequate" | "skipped"
    subset_size: int
    max_clique_free: int | None = None
    witness_vertices: tuple[int, ...] = ()
    nodes_visited: int = 0

    def to_payload(self) -> dict:
        return {
            "part": self.part_id,
            "color": self.color,
            "s": self.s,
            "eps": [self.eps.numerator, self.eps.denominator],
            "verdict": self.verdict,
            "subset_size": self.subset_size,
            "max_clique_free": self.max_clique_free,
            "witness": list(self.witness_vertices),
            "nodes_visited": self.nodes_visited,
        }


def _color_subgraph(coloring: EdgeColoring, subset_mask: int, color: str):
    """Induced graph of one color class on a vertex subset, relabeled 0..m-1."""
    verts = bits_tuple(subset_mask)
    local = {v: i for i, v in enumerate(verts)}
    adj = [0] * len(verts)
    for a in range(len(verts)):
        for b in range(a + 1, len(verts)):
            u, v = verts[a], verts[b]
            red = coloring.is_red(u, v)
            if (color == "red") == red:
                adj[a] |= 1 << b
                adj[b] |= 1 << a
    return FiniteGraph(len(verts), tuple(adj)), verts


def max_clique_free_subset(g: FiniteGraph, s: int):
    """Exact maximum subset of V(g) containing no clique of size s.

    Include/exclude branch and bound over vertices; a vertex may join the
    growing subset only if its neighborhood there has no (s-1)-clique.
    Returns (size, vertex mask, nodes visited).
    """
    best_size = 0
    best_mask = 0
    nodes = 0

    def walk(v, current, count):
        nonlocal best_size, best_mask, nodes
        nodes += 1
        if count + (g.n - v) <= best_size:
            return
        if v == g.n:
            if count > best_size:
                best_size, best_mask = count, current
            return
        if find_clique(g, s - 1, within=current & g.adj[v]) is None:
            walk(v + 1, current | (1 << v), count + 1)
        walk(v + 1, current, count)

    walk(0, 0, 0)
    return best_size, best_mask, nodes


def greedy_clique_cover(g: FiniteGraph, s: int) -> int:
    """Vertices covered by a maximal greedy family of disjoint s-cliques."""
    remaining = (1 << g.n) - 1
    covered = 0
    while True:
        clique = find_clique(g, s, within=remaining)
        if clique is None:
            return covered
        covered += s
        remaining &= ~clique


def adequacy_check(
    coloring: EdgeColoring,
    subset_mask: int,
    color: str,
    eps: Fraction,
    s: int,
    part_id: int = 0,
) -> AdequacyWitness:
    """Exact adequacy test: the subset is adequate for (color, eps, s) iff
    its largest clique-free sub-subset is smaller than eps times its size."""
    size = subset_mask.bit_count()
    if size > ADEQUACY_EXACT_CAP:
        raise CapacityError(
            f"exact adequacy check capped at {ADEQUACY_EXACT_CAP} vertices; got {size}"
        )
    if s < 2:
        raise ValueError("clique size s must be at least 2")
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    g, verts = _color_subgraph(coloring, subset_mask, color)
    free_size, free_mask, nodes = max_clique_free_subset(g, s)
    adequate = Fraction(free_size) < eps * size
    if adequate:
        covered = greedy_clique_cover(g, s)
        if Fraction(covered) < (1 - eps) * size:
            raise VerificationError(
                f"adequate part covered only {covered}/{size} by greedy cliques"
            )
        return AdequacyWitness(
            part_id, color, s, eps, "adequate", size,
            max_clique_free=free_size, nodes_visited=nodes,
        )
    witness = tuple(verts[i] for i in iter_bits(free_mask))
    return AdequacyWitness(
        part_id, color, s, eps, "inadequate", size,
        max_clique_free=free_size, witness_vertices=witness, nodes_visited=nodes,
    )


# ---------------------------------------------------------------------------
# Partition into nearly equal parts, most of them pseudo-adequate

@dataclass(frozen=True)
class PartitionReport:
    n: int
    eps: Fraction
    s: int
    clique_size: int
    parts_target: int
    cliques_per_part: int
    parts: tuple[tuple[int, ...], ...]
    colors: tuple[str, ...]
    pseudo_adequate: tuple[bool, ...]
    witnesses: tuple[AdequacyWitness, ...]
    guarantee_note: str

    def to_payload(self) -> dict:
        return {
            "type": "adequate_partition",
            "n": self.n,
            "eps": [self.eps.numerator, self.eps.denominator],
            "s": self.s,
            "clique_size": self.clique_size,
            "parts_target": self.parts_target,
            "cliques_per_part": self.cliques_per_part,
            "parts": [list(p) for p in self.parts],
            "colors": list(self.colors),
            "pseudo_adequate": list(self.pseudo_adequate),
            "witnesses": [w.to_payload() for w in self.witnesses],
            "guarantee_note": self.guarantee_note,
        }


def adequate_partition(coloring: EdgeColoring, eps: Fraction, s: int) -> PartitionReport:
    """Partition the vertices into nearly equal parts by packing same-colored
    cliques of size ceil(2/eps)*s, group them, and check adequacy per part.

    Runs the construction unconditionally; whether the pseudo-adequate count
    bound is guaranteed depends on a diagonal Ramsey number that is unknown
    at this clique size, and the report says so.
    """
    eps = Fraction(eps)
    if not 0 < eps <= 1:
        raise ValueError("eps must lie in (0, 1]")
    if s < 2:
        raise ValueError("s must be at least 2")
    n = coloring.n
    clique_size = math.ceil(2 / eps) * s
    parts_target = math.ceil(3 / eps)
    beta = (n // parts_target) // clique_size
    if beta == 0:
        raise CapacityError(
            f"parts of size ~{n // parts_target} cannot hold one K_{clique_size}; "
            f"need n >= {clique_size * parts_target}"
        )

    red_graph, _ = _color_subgraph(coloring, (1 << n) - 1, "red")
    blue_graph, _ = _color_subgraph(coloring, (1 << n) - 1, "blue")

    remaining = (1 << n) - 1
    red_cliques = []
    blue_cliques = []
    while True:
        r = find_clique(red_graph, clique_size, within=remaining)
        b = find_clique(blue_graph, clique_size, within=remaining)
        if r is None and b is None:
            break
        if b is None or (r is not None and r < b):
            red_cliques.append(r)
            remaining &= ~r
        else:
            blue_cliques.append(b)
            remaining &= ~b

    parts = [[] for _ in range(parts_target)]
    colors = ["red"] * parts_target
    pseudo = [False] * parts_target
    groups = []
    for start in range(0, len(red_cliques) - len(red_cliques) % beta, beta):
        groups.append(("red", red_cliques[start : start + beta]))
    for start in range(0, len(blue_cliques) - len(blue_cliques) % beta, beta):
        groups.append(("blue", blue_cliques[start : start + beta]))
    leftover_cliques = []
    for color, group in groups[parts_target:]:
        leftover_cliques.extend(group)
    for idx, (color, group) in enumerate(groups[:parts_target]):
        for clique in group:
            parts[idx].extend(bits_tuple(clique))
        colors[idx] = color
        pseudo[idx] = True

    pool = sorted(bits_tuple(remaining))
    for clique in leftover_cliques:
        pool.extend(bits_tuple(clique))
    pool.sort()
    lo, hi = n // parts_target, -(-n // parts_target)
    n_high = n % parts_target
    pool_iter = iter(pool)
    # fill ascending part index: first to the low target, then top up the
    # first n_high parts to the high target
    for target_pass in (lo, hi):
        for idx in range(parts_target):
            target = hi if (target_pass == hi and idx < n_high) else lo
            while len(parts[idx]) < target:
                parts[idx].append(next(pool_iter))

    leftover_check = list(pool_iter)
    if leftover_check:
        raise VerificationError(f"{len(leftover_check)} vertices left unassigned")

    witnesses = []
    for idx in range(parts_target):
        part_mask = mask_of(parts[idx])
        if len(parts[idx]) <= ADEQUACY_EXACT_CAP:
            witnesses.append(
                adequacy_check(coloring, part_mask, colors[idx], eps, s, part_id=idx)
            )
        else:
            witnesses.append(
                AdequacyWitness(idx, colors[idx], s, eps, "skipped", len(parts[idx]))
            )

    note = (
        f"pseudo-adequate count bound holds when n exceeds q*{clique_size}*{parts_target} "
        f"with q the diagonal Ramsey number for K_{clique_size}; q is unknown at this "
        "size, so the bound is reported, not certified"
    )
    return PartitionReport(
        n=n,
        eps=eps,
        s=s,
        clique_size=clique_size,
        parts_target=parts_target,
        cliques_per_part=beta,
        parts=tuple(tuple(sorted(p)) for p in parts),
        colors=tuple(colors),
        pseudo_adequate=tuple(pseudo),
        witnesses=tuple(witnesses),
        guarantee_note=note,
    )
