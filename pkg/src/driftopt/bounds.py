"""Runtime-constant brackets and discrete drift-theorem calculators.

The expected runtime of the approximate drift maximizer on OneMax has the
form n (ln(n/3) + gamma + c') + o(n). The constant c' is bracketed by
Riemann-type sums over a partition of the relative-distance range
(1/3, 1/2), evaluated against the piecewise-smooth maximal drift curve,
plus an exactly integrated tail below the last partition point. This module
evaluates those brackets and also provides generic upper/lower drift
theorems for monotone processes together with a brute-force Markov-chain
hitting-time oracle used to sanity-check them.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from .drift import approx_drift_closed
from .quadrature import adaptive_simpson
from .strengths import (
    Epsilon,
    _as_epsilon,
    cutoff_point,
    max_approx_drift,
    r_opt_approx,
)

EULER_GAMMA = float(np.euler_gamma)
ONE_THIRD = 1.0 / 3.0

# Partition indices transcribed from the runtime analysis: sparse cut-offs
# R_4001 down to R_9. Even indices in the source chain denote the nearest
# odd cut-off below, which after deduplication leaves every odd index in
# 9..35, then 101/151/199, then 251..951 in steps of 50, then the thousands.
_DEFAULT_INDICES: tuple[int, ...] = (
    tuple(range(9, 36, 2))
    + (101, 151, 199)
    + tuple(range(251, 952, 50))
    + (1001, 2001, 3001, 4001)
)


@dataclass(frozen=True)
class PartitionScheme:
    """Strictly decreasing relative-distance grid p_0 > p_1 > ... > p_k.

    Points live in [1/3, 1/2); the degenerate single-point partition at 1/3
    is allowed (empty sums, plateau term only).
    """

    points: tuple[float, ...]

    def __post_init__(self) -> None:
        pts = tuple(float(p) for p in self.points)
        object.__setattr__(self, "points", pts)
        if not pts:
            raise ValueError("partition needs at least one point")
        for p in pts:
            if not ONE_THIRD - 1e-15 <= p < 0.5:
                raise ValueError(f"partition point {p} outside [1/3, 1/2)")
        for a, b in zip(pts, pts[1:]):
            if not a > b:
                raise ValueError("partition points must be strictly decreasing")

    @property
    def p0(self) -> float:
        return self.points[0]

    @property
    def pk(self) -> float:
        return self.points[-1]


@dataclass(frozen=True)
class RuntimeConstantBracket:
    """Bracket for the runtime constant in both of its printed forms.

    c' is the additive constant of n (ln(n/3) + gamma + c'); c is the
    constant of n ln n - c n. They are tied by c = ln 3 - gamma - c', which
    is enforced at construction.
    """

    c_prime_lower: float
    c_prime_upper: float
    c_lower: float
    c_upper: float

    def __post_init__(self) -> None:
        if self.c_prime_lower > self.c_prime_upper:
            raise ValueError("bracket must satisfy c_prime_lower <= c_prime_upper")
        base = math.log(3.0) - EULER_GAMMA
        if abs(self.c_lower - (base - self.c_prime_upper)) > 1e-12 or abs(
            self.c_upper - (base - self.c_prime_lower)
        ) > 1e-12:
            raise ValueError("c and c' forms are inconsistent (c = ln 3 - gamma - c')")

    @classmethod
    def from_c_prime(
        cls, c_prime_lower: float, c_prime_upper: float
    ) -> "RuntimeConstantBracket":
        base = math.log(3.0) - EULER_GAMMA
        return cls(
            c_prime_lower=c_prime_lower,
            c_prime_upper=c_prime_upper,
            c_lower=base - c_prime_upper,
            c_upper=base - c_prime_lower,
        )


@lru_cache(maxsize=None)
def _cutoffs_at(indices: tuple[int, ...]) -> tuple[float, ...]:
    """Cut-offs R_r for an increasing tuple of odd indices, solved in order."""
    out = []
    prev = None
    for r in indices:
        cp = cutoff_point(r, r + 2, bracket_low=prev)
        out.append(cp.p0)
        prev = cp.p0
    return tuple(out)


def partition_from_cutoff_indices(indices) -> PartitionScheme:
    """Partition whose points are the cut-offs R_r at the given odd indices."""
    idx = tuple(sorted(set(int(r) for r in indices)))
    if not idx:
        raise ValueError("need at least one cut-off index")
    for r in idx:
        if r < 3 or r % 2 == 0:
            raise ValueError(f"cut-off indices must be odd and >= 3, got {r}")
    cuts = _cutoffs_at(idx)
    return PartitionScheme(points=tuple(reversed(cuts)))


def default_partition() -> PartitionScheme:
    """The sparse partition used for the published runtime bracket."""
    return partition_from_cutoff_indices(_DEFAULT_INDICES)


def dense_partition(max_r: int) -> PartitionScheme:
    """Partition on every odd cut-off index from 9 up to max_r.

    A superset of the default partition's points, so the resulting bracket
    is never looser; p_k stays at R_9 so the tail integral is unchanged.
    """
    if max_r < 9 or max_r % 2 == 0:
        raise ValueError("max_r must be an odd integer >= 9")
    return partition_from_cutoff_indices(range(9, max_r + 1, 2))


def _resolve_eps(partition: PartitionScheme, eps) -> Epsilon:
    if eps is None:
        return Epsilon(0.5 - partition.p0)
    e = _as_epsilon(eps)
    if partition.p0 > 0.5 - e.value + 1e-12:
        raise ValueError(
            f"partition head p0={partition.p0} exceeds 1/2 - eps = {0.5 - e.value}"
        )
    return e


def _integral_term(p_k: float, eps: Epsilon, tol: float = 1e-9) -> float:
    """Tail integral of 1/A_max over [1/3, p_k], split at drift cut-offs.

    Within each optimality interval the maximal drift is a single analytic
    curve, so adaptive Simpson converges cleanly piece by piece.
    """
    if p_k <= ONE_THIRD + 1e-15:
        return 0.0
    total = 0.0
    left = ONE_THIRD
    r = 3
    prev_cut = None
    while True:
        cut = cutoff_point(r, r + 2, bracket_low=prev_cut).p0
        right = min(cut, p_k)
        if right > left:
            rr = r
            total += adaptive_simpson(
                lambda p: 1.0 / approx_drift_closed(rr, p), left, right, tol=tol
            )
            left = right
        if cut >= p_k:
            return total
        prev_cut = cut
        r += 2


def tail_integral(p_k: float, eps) -> float:
    """Public wrapper for the exactly integrated tail over [1/3, p_k]."""
    if not ONE_THIRD - 1e-15 <= p_k < 0.5:
        raise ValueError(f"p_k={p_k} outside [1/3, 1/2)")
    return _integral_term(p_k, _as_epsilon(eps))


def lower_bound_constant(partition: PartitionScheme, eps=None) -> float:
    """Lower Riemann-style estimate of the runtime constant c'.

    Each segment [p_i, p_{i-1}] is charged at the drift of its larger
    endpoint, underestimating the true integral of 1/A_max; the tail below
    p_k is integrated exactly.
    """
    e = _resolve_eps(partition, eps)
    pts = partition.points
    total = 0.0
    for a, b in zip(pts, pts[1:]):
        total += (a - b) / max_approx_drift(a, e)
    return total + _integral_term(pts[-1], e)


def upper_bound_constant(partition: PartitionScheme, eps=None) -> float:
    """Upper estimate of c': segments charged at their smaller endpoint,
    plus the plateau term (1/2 - p_0)/A_max(p_0) covering [p_0, 1/2]."""
    e = _resolve_eps(partition, eps)
    pts = partition.points
    total = (0.5 - pts[0]) / max_approx_drift(pts[0], e)
    for a, b in zip(pts, pts[1:]):
        total += (a - b) / max_approx_drift(b, e)
    return total + _integral_term(pts[-1], e)


def constant_bracket(partition: PartitionScheme, eps=None) -> RuntimeConstantBracket:
    """Evaluate both bound constants on one partition as a consistent bracket."""
    return RuntimeConstantBracket.from_c_prime(
        lower_bound_constant(partition, eps), upper_bound_constant(partition, eps)
    )


def harmonic_runtime_term(n: int, m: int) -> float:
    """n times the m-th harmonic number.

    Direct summation up to m = 1e7; beyond that the Euler-Maclaurin
    expansion ln m + gamma + 1/(2m) - 1/(12 m^2) is more than accurate
    enough (next term is O(m^-4)).
    """
    if m < 1 or m > n:
        raise ValueError(f"need 1 <= m <= n, got m={m}, n={n}")
    if m <= 10**7:
        h = float(np.sum(1.0 / np.arange(m, 0, -1, dtype=float)))
    else:
        h = math.log(m) + EULER_GAMMA + 1.0 / (2.0 * m) - 1.0 / (12.0 * m * m)
    return n * h


def runtime_estimate(n: int, bracket: RuntimeConstantBracket) -> tuple[float, float]:
    """Runtime window n (ln(n/3) + gamma + c') at both bracket ends."""
    if n < 3:
        raise ValueError("runtime estimate defined for n >= 3")
    base = math.log(n / 3.0) + EULER_GAMMA
    return (
        n * (base + bracket.c_prime_lower),
        n * (base + bracket.c_prime_upper),
    )


@dataclass(frozen=True)
class DriftSpec:
    """Inputs to the generic drift theorems for a process on states 0..n.

    h[i] bounds the expected one-step progress at state i (a lower bound
    for the upper runtime theorem, an upper bound for the lower one); the
    jump table c[i] <= i floors where a single step from i may land, and
    p_escape bounds the probability of undershooting that floor. h[0] and
    c[0] are placeholders.
    """

    n: int
    h: tuple[float, ...]
    c: tuple[int, ...] | None = None
    p_escape: float = 0.0

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        object.__setattr__(self, "h", tuple(float(v) for v in self.h))
        if len(self.h) != self.n + 1:
            raise ValueError(f"h must have length n+1 = {self.n + 1}")
        if self.c is not None:
            object.__setattr__(self, "c", tuple(int(v) for v in self.c))
            if len(self.c) != self.n + 1:
                raise ValueError(f"c must have length n+1 = {self.n + 1}")
            for i, ci in enumerate(self.c):
                if i >= 1 and not 0 <= ci <= i:
                    raise ValueError(f"jump floor c[{i}]={ci} outside [0, {i}]")
        if not 0.0 <= self.p_escape < 1.0:
            raise ValueError("p_escape must lie in [0, 1)")


def _check_h_monotone(h: np.ndarray, upto: int) -> None:
    seg = h[1 : upto + 1]
    if np.any(seg <= 0.0):
        raise ValueError("drift bounds h[1..x0] must be positive")
    if np.any(np.diff(seg) < 0.0):
        raise ValueError("drift bounds h must be monotonically increasing")


def drift_upper_bound(spec: DriftSpec, x0: int) -> float:
    """Runtime upper bound sum_{i=1}^{x0} 1/h(i) for a monotone process.

    Valid whenever h(i) lower-bounds the drift at every state i <= x0 and
    is monotonically increasing there.
    """
    if not 0 <= x0 <= spec.n:
        raise ValueError(f"x0={x0} outside [0, {spec.n}]")
    h = np.asarray(spec.h)
    _check_h_monotone(h, x0)
    return float(np.sum(1.0 / h[1 : x0 + 1]))


def drift_lower_bound(spec: DriftSpec, x0: int) -> float:
    """Runtime lower bound g(x0) - g(x0)^2 p / (1 + g(x0) p).

    Uses the pessimistic reindexing mu(x) = max{i : c(i) <= x}: the drift
    at x is replaced by the largest drift bound among states that can reach
    below x in one step, and g accumulates its reciprocals. Requires h to
    upper-bound the drift, c to floor the jumps, and p_escape to bound the
    probability of jumping below c(i).
    """
    if spec.c is None:
        raise ValueError("drift_lower_bound needs the jump-floor table c")
    if not 0 <= x0 <= spec.n:
        raise ValueError(f"x0={x0} outside [0, {spec.n}]")
    if x0 == 0:
        return 0.0
    h = np.asarray(spec.h)
    _check_h_monotone(h, spec.n)
    c = np.asarray(spec.c[1:], dtype=np.int64)
    if c.min() != 0:
        raise ValueError("some state must have jump floor 0, else mu(0) is undefined")
    # mu(x) = max{i : c(i) <= x} via states sorted by their floor
    order = np.argsort(c, kind="stable")
    sorted_c = c[order]
    prefix_max_state = np.maximum.accumulate(order + 1)
    xs = np.arange(x0)
    pos = np.searchsorted(sorted_c, xs, side="right") - 1
    mu = prefix_max_state[pos]
    g = float(np.sum(1.0 / h[mu]))
    p = spec.p_escape
    return g - g * g * p / (1.0 + g * p)


def brute_force_hitting_time(transition, start: int) -> float:
    """Expected steps to absorb at state 0, by dense linear solve.

    The transition matrix is over states 0..n with state 0 absorbing;
    capped at 2000 non-absorbing states since this is an oracle for tests,
    not a production path.
    """
    P = np.asarray(transition, dtype=float)
    if P.ndim != 2 or P.shape[0] != P.shape[1]:
        raise ValueError("transition must be a square matrix")
    m = P.shape[0]
    if m - 1 > 2000:
        raise ValueError("oracle capped at 2000 non-absorbing states")
    if not 0 <= start < m:
        raise ValueError(f"start={start} outside [0, {m - 1}]")
    if np.any(P < -1e-12):
        raise ValueError("transition probabilities must be non-negative")
    rowsums = P.sum(axis=1)
    if np.any(np.abs(rowsums - 1.0) > 1e-9):
        raise ValueError("transition rows must sum to 1")
    if abs(P[0, 0] - 1.0) > 1e-12:
        raise ValueError("state 0 must be absorbing")
    if start == 0:
        return 0.0
    q = P[1:, 1:]
    a = np.eye(m - 1) - q
    try:
        e = np.linalg.solve(a, np.ones(m - 1))
    except np.linalg.LinAlgError as exc:
        raise ValueError("state 0 is unreachable from some state") from exc
    return float(e[start - 1])
