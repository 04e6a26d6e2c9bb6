"""Closed-form density bound evaluation and per-graph bound reports.

The density of an infinite factor is controlled by a function of one real
argument that is only known up to a proven bracket.  Everything here
therefore hands out bracket pairs, never a single "value of f": treating
the conjectured upper branch as exact would silently bake an open problem
into every report.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

from . import graphs
from .bitset import bits_tuple
from .errors import VerificationError

SQRT7 = math.sqrt(7.0)

#: Best proven lower bound for the triangle factor density.
TRIANGLE_LOWER = 1.0 - 1.0 / SQRT7

#: Prefix fraction used by the triangle-density argument.
TRIANGLE_PREFIX = (4.0 * SQRT7 + 2.0) / 27.0


def f_lower(x):
    """Proven lower branch (x+1)/(2x+1); exact when x is a Fraction."""
    if x == math.inf:
        return 0.5
    if x < 0:
        raise ValueError(f"argument must be nonnegative, got {x}")
    return (x + 1) / (2 * x + 1)


def f_upper(x):
    """Proven upper branch: an algebraic expression below 3, (x+1)/(2x) from 3 on.

    The two pieces agree at x = 3 (both equal 2/3).
    """
    if x == math.inf:
        return 0.5
    if x < 0:
        raise ValueError(f"argument must be nonnegative, got {x}")
    if x >= 3:
        return (x + 1) / (2 * x)
    return (2 * x * x + 3 * x + 7 + 2 * math.sqrt(x + 1)) / (4 * x * x + 4 * x + 9)


def f_from_h(lam, h_value):
    """Convert a value of the variational function h at (lam-1)/(lam+1) into
    the corresponding density value 1 - 1/((2*lam/(1+lam)^2)*h + 2*lam/(1+lam))."""
    if lam <= 0:
        raise ValueError(f"lambda must be positive, got {lam}")
    denom = (2 * lam / (1 + lam) ** 2) * h_value + 2 * lam / (1 + lam)
    if denom <= 0:
        raise ValueError(f"nonpositive denominator {denom}")
    return 1 - 1 / denom


@dataclass(frozen=True)
class FBoundPair:
    """Bracket [lower, upper] for the unknown density function at argument x."""

    x: float
    lower: float
    upper: float

    def __post_init__(self):
        if self.lower > self.upper + 1e-12:
            raise VerificationError(f"bracket inverted at x={self.x}")

    @staticmethod
    def at(x) -> "FBoundPair":
        return FBoundPair(float(x), float(f_lower(x)), float(f_upper(x)))


# ---------------------------------------------------------------------------
# Exact arithmetic over Q[sqrt(7)] for the triangle constants

@dataclass(frozen=True)
class QSqrt7:
    """Number a + b*sqrt(7) with exact rational coordinates."""

    a: Fraction
    b: Fraction

    @staticmethod
    def of(a, b=0) -> "QSqrt7":
        return QSqrt7(Fraction(a), Fraction(b))

    def __add__(self, other):
        other = _coerce(other)
        return QSqrt7(self.a + other.a, self.b + other.b)

    __radd__ = __add__

    def __sub__(self, other):
        other = _coerce(other)
        return QSqrt7(self.a - other.a, self.b - other.b)

    def __rsub__(self, other):
        return _coerce(other) - self

    def __mul__(self, other):
        other = _coerce(other)
        return QSqrt7(
            self.a * other.a + 7 * self.b * other.b,
            self.a * other.b + self.b * other.a,
        )

    __rmul__ = __mul__

    def is_zero(self) -> bool:
        return self.a == 0 and self.b == 0

    def to_float(self) -> float:
        return float(self.a) + float(self.b) * SQRT7


def _coerce(value):
    if isinstance(value, QSqrt7):
        return value
    return QSqrt7(Fraction(value), Fraction(0))


#: delta* = (4*sqrt(7) + 2)/27 and gamma* = 1 - 1/sqrt(7), exactly.
DELTA_STAR_EXACT = QSqrt7.of(Fraction(2, 27), Fraction(4, 27))
GAMMA_STAR_EXACT = QSqrt7.of(1, Fraction(-1, 7))


def _identity_residuals(delta, gamma):
    """The two counting-inequality coefficients that must vanish at the
    triangle constants: g*d + 2g + d - 2 and 11*g*d + (10/3)*g - 7*d - 2."""
    e1 = gamma * delta + 2 * gamma + delta - 2
    e2 = 11 * gamma * delta + Fraction(10, 3) * gamma - 7 * delta - 2
    return e1, e2


def _identity_residuals_float(delta, gamma):
    e1 = gamma * delta + 2 * gamma + delta - 2
    e2 = 11 * gamma * delta + (10.0 / 3.0) * gamma - 7 * delta - 2
    return e1, e2


def solve_constant_system(delta0=0.5, gamma0=0.6, tol=1e-14, max_iter=60):
    """Newton iteration on the bilinear 2x2 system; returns (delta, gamma)."""
    d, g = delta0, gamma0
    for _ in range(max_iter):
        e1, e2 = _identity_residuals_float(d, g)
        if abs(e1) < tol and abs(e2) < tol:
            break
        # Jacobian rows: d(e_i)/d(delta), d(e_i)/d(gamma)
        j11, j12 = g + 1, d + 2
        j21, j22 = 11 * g - 7, 11 * d + 10.0 / 3.0
        det = j11 * j22 - j12 * j21
        if det == 0:
            raise VerificationError("singular Jacobian in constant solve")
        d -= (e1 * j22 - e2 * j12) / det
        g -= (e2 * j11 - e1 * j21) / det
    return d, g


@dataclass(frozen=True)
class TriangleConstants:
    delta_star: float
    gamma_star: float
    residual_1: float
    residual_2: float
    exact_zero_1: bool
    exact_zero_2: bool
    solver_delta: float
    solver_gamma: float

    def to_payload(self) -> dict:
        return {
            "type": "triangle_constants",
            "delta_star": self.delta_star,
            "gamma_star": self.gamma_star,
            "residuals": [self.residual_1, self.residual_2],
            "exact_zero": [self.exact_zero_1, self.exact_zero_2],
            "solver_recovered": [self.solver_delta, self.solver_gamma],
        }


def verify_constant_identities(tol=1e-12) -> TriangleConstants:
    """Check the triangle constants three ways: float residuals, exact
    Q[sqrt(7)] arithmetic, and recovery by the Newton solver."""
    delta = DELTA_STAR_EXACT.to_float()
    gamma = GAMMA_STAR_EXACT.to_float()
    r1, r2 = _identity_residuals_float(delta, gamma)
    e1, e2 = _identity_residuals(DELTA_STAR_EXACT, GAMMA_STAR_EXACT)
    d_hat, g_hat = solve_constant_system()
    result = TriangleConstants(
        delta_star=delta,
        gamma_star=gamma,
        residual_1=r1,
        residual_2=r2,
        exact_zero_1=e1.is_zero(),
        exact_zero_2=e2.is_zero(),
        solver_delta=d_hat,
        solver_gamma=g_hat,
    )
    problems = []
    if abs(r1) > tol or abs(r2) > tol:
        problems.append(f"float residuals ({r1:.3e}, {r2:.3e}) exceed {tol}")
    if not (e1.is_zero() and e2.is_zero()):
        problems.append(f"exact residuals nonzero: {e1}, {e2}")
    if abs(d_hat - delta) > 1e-10 or abs(g_hat - gamma) > 1e-10:
        problems.append(f"solver recovered ({d_hat}, {g_hat})")
    if problems:
        raise VerificationError("; ".join(problems))
    return result


# ---------------------------------------------------------------------------
# Per-graph bound reports

SOURCE_INDEPENDENT_NEIGHBORHOOD = "independent-neighborhood"
SOURCE_VERTEX_RATIO = "vertex-ratio"
SOURCE_ALPHA_RATIO = "alpha-ratio"
SOURCE_TRIANGLE_CONSTANT = "triangle-constant"


@dataclass(frozen=True)
class LowerCandidate:
    source: str
    value: float
    applicable: bool
    argument: float | None = None

    def to_payload(self) -> dict:
        return {
            "source": self.source,
            "value": self.value,
            "applicable": self.applicable,
            "argument": self.argument,
        }


@dataclass(frozen=True)
class BoundReport:
    graph_id: str
    n: int
    min_ratio: Fraction
    witness: tuple[int, ...]
    alpha: int
    upper_interval: FBoundPair
    lower_candidates: tuple[LowerCandidate, ...]
    best_lower: float
    exact: FBoundPair | None = None
    exact_argument: Fraction | None = None

    def to_payload(self) -> dict:
        return {
            "type": "bound_report",
            "graph": self.graph_id,
            "n": self.n,
            "min_ratio": [self.min_ratio.numerator, self.min_ratio.denominator],
            "witness": list(self.witness),
            "alpha": self.alpha,
            "upper_interval": {
                "x": self.upper_interval.x,
                "lower": self.upper_interval.lower,
                "upper": self.upper_interval.upper,
            },
            "lower_candidates": [c.to_payload() for c in self.lower_candidates],
            "best_lower": self.best_lower,
            "exact_bracket": None
            if self.exact is None
            else {
                "argument": [self.exact_argument.numerator, self.exact_argument.denominator],
                "lower": self.exact.lower,
                "upper": self.exact.upper,
            },
        }


def is_triangle(g: graphs.FiniteGraph) -> bool:
    return g.n == 3 and g.edge_count() == 3


def bound_report(g: graphs.FiniteGraph, name: str | None = None) -> BoundReport:
    """Assemble every computable density bound for the factor of g.

    Upper side: the bracket of f at the minimum independence ratio (the
    true upper bound is f there, known only up to the bracket).  Lower
    side: each candidate formula with its own applicability flag; the best
    applicable value wins.
    """
    ratio, witness = graphs.min_independent_ratio(g)
    a = graphs.alpha(g)
    n = g.n

    candidates = []

    nb_ratios = [r for _, r in graphs.independent_sets_with_independent_neighborhood(g)]
    if nb_ratios:
        best_nb = min(nb_ratios)
        candidates.append(
            LowerCandidate(
                SOURCE_INDEPENDENT_NEIGHBORHOOD,
                float(f_lower(best_nb)),
                True,
                argument=float(best_nb),
            )
        )
    else:
        candidates.append(
            LowerCandidate(SOURCE_INDEPENDENT_NEIGHBORHOOD, 0.0, False)
        )

    vertex_ratio = Fraction(n, 2 * n - a)
    candidates.append(
        LowerCandidate(SOURCE_VERTEX_RATIO, float(vertex_ratio), True, argument=None)
    )

    alpha_argument = Fraction(n, a) - 1
    candidates.append(
        LowerCandidate(
            SOURCE_ALPHA_RATIO,
            float(f_lower(alpha_argument)),
            True,
            argument=float(alpha_argument),
        )
    )

    candidates.append(
        LowerCandidate(
            SOURCE_TRIANGLE_CONSTANT,
            TRIANGLE_LOWER,
            is_triangle(g),
            argument=2.0,
        )
    )

    best_lower = max(c.value for c in candidates if c.applicable)
    upper = FBoundPair.at(ratio)
    if best_lower > upper.upper + 1e-12:
        raise VerificationError(
            f"lower bound {best_lower} exceeds upper bracket {upper.upper}"
        )

    exact = None
    exact_argument = None
    if graphs.corollary_condition(g):
        exact_argument = alpha_argument
        exact = FBoundPair.at(exact_argument)

    return BoundReport(
        graph_id=name if name is not None else g.describe(),
        n=n,
        min_ratio=ratio,
        witness=bits_tuple(witness),
        alpha=a,
        upper_interval=upper,
        lower_candidates=tuple(candidates),
        best_lower=best_lower,
        exact=exact,
        exact_argument=exact_argument,
    )


def bound_curve(x_min: float, x_max: float, steps: int):
    """Yield (x, lower, upper) rows for plotting the bracket externally."""
    if steps < 2 or x_max <= x_min:
        raise ValueError("need steps >= 2 and x_max > x_min")
    for i in range(steps):
        x = x_min + (x_max - x_min) * i / (steps - 1)
        yield x, f_lower(x), f_upper(x)
