"""Drift-maximizing mutation strengths and the cut-off points between them.

For odd strengths r < r' the n-free drift curves p -> A(r, p, 1-p) and
p -> A(r', p, 1-p) cross exactly once on (0, 1/2]; below the crossing the
smaller strength wins. The crossings therefore partition (0, 1/2) into
intervals on each of which a single odd strength maximizes the approximate
drift, and everything in this module is bookkeeping around that fact.
"""

from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .drift import approx_drift_closed, exact_drift_profile

BISECTION_TOL = 1e-12
BISECTION_MAX_ITERS = 200

# Descending probe ladder used to find the lower end of a bisection bracket.
_BRACKET_LADDER = (
    0.48,
    0.45,
    0.42,
    0.40,
    0.38,
    0.36,
    1.0 / 3.0,
    0.30,
    0.25,
    0.20,
    0.12,
    0.05,
    1e-2,
    1e-4,
    1e-8,
)


class BracketError(RuntimeError):
    """Raised when no sign change can be bracketed for a cut-off search."""


@dataclass(frozen=True)
class Epsilon:
    """Distance margin away from p = 1/2 under which the theory operates.

    Valid values lie strictly between 0 and 1/2. The derived quantity alpha
    feeds the search-space bound for optimal strengths.
    """

    value: float

    def __post_init__(self) -> None:
        if not 0.0 < self.value < 0.5:
            raise ValueError(f"epsilon must lie in (0, 1/2), got {self.value}")

    @property
    def alpha(self) -> float:
        return 2.0 * math.log(4.0 / (self.value**2 * (0.5 - self.value)))


def _as_epsilon(eps: "Epsilon | float") -> Epsilon:
    return eps if isinstance(eps, Epsilon) else Epsilon(float(eps))


def search_bound(eps: "Epsilon | float") -> int:
    """Strength cap ceil(2 alpha / eps^2) beyond which no optimum can lie.

    Any strength above this bound is strictly dominated for all relative
    distances p <= 1/2 - eps, so argmax searches may stop here.
    """
    e = _as_epsilon(eps)
    return math.ceil(2.0 * e.alpha / e.value**2)


@dataclass(frozen=True)
class CutoffPoint:
    """Crossing of the drift curves of two odd strengths.

    p0 is the unique point in (0, 1/2] where the curves meet and a0 the
    common drift value there; below p0 the smaller strength dominates.
    """

    r_low: int
    r_high: int
    p0: float
    a0: float


@dataclass(frozen=True)
class StrengthInterval:
    """Relative-distance interval on which one odd strength is optimal."""

    r: int
    p_left: float
    p_right: float
    a_left: float
    a_right: float


def _check_odd_pair(r_low: int, r_high: int) -> None:
    if r_low < 1 or r_low % 2 == 0 or r_high % 2 == 0:
        raise ValueError("cut-offs are defined between odd strengths")
    if r_high <= r_low:
        raise ValueError(f"need r_low < r_high, got {r_low}, {r_high}")


def cutoff_point(
    r_low: int,
    r_high: int,
    bracket_low: float | None = None,
) -> CutoffPoint:
    """Locate the crossing of two odd-strength drift curves by bisection.

    bracket_low optionally seeds the lower bracket end (any point known to
    lie below the crossing, e.g. a previously computed smaller cut-off);
    otherwise a fixed probe ladder is walked downward from 1/2.
    """
    _check_odd_pair(r_low, r_high)

    def gap(p: float) -> float:
        return approx_drift_closed(r_low, p) - approx_drift_closed(r_high, p)

    hi = 0.5
    if gap(hi) >= 0.0:
        raise BracketError(
            f"drift of r={r_high} does not dominate r={r_low} at p=1/2"
        )
    lo = None
    if bracket_low is not None:
        if not 0.0 < bracket_low < 0.5:
            raise ValueError("bracket_low must lie in (0, 1/2)")
        if gap(bracket_low) > 0.0:
            lo = bracket_low
    if lo is None:
        for probe in _BRACKET_LADDER:
            if gap(probe) > 0.0:
                lo = probe
                break
    if lo is None:
        raise BracketError(
            f"could not bracket the cut-off between r={r_low} and r={r_high}"
        )
    for _ in range(BISECTION_MAX_ITERS):
        if hi - lo <= BISECTION_TOL:
            break
        mid = 0.5 * (lo + hi)
        if gap(mid) > 0.0:
            lo = mid
        else:
            hi = mid
    p0 = 0.5 * (lo + hi)
    return CutoffPoint(r_low, r_high, p0, approx_drift_closed(r_low, p0))


def consecutive_cutoffs(max_r: int) -> dict[int, float]:
    """Cut-offs R_r between r and r + 2 for every odd r up to max_r.

    Solved in increasing order so each search is bracketed by the previous
    crossing, which keeps the bisections away from the deep-underflow
    region at small p.
    """
    if max_r < 1 or max_r % 2 == 0:
        raise ValueError("max_r must be a positive odd integer")
    out: dict[int, float] = {}
    prev = None
    for r in range(1, max_r + 1, 2):
        cp = cutoff_point(r, r + 2, bracket_low=prev)
        out[r] = cp.p0
        prev = cp.p0
    return out


def strength_intervals(max_r: int) -> list[StrengthInterval]:
    """Optimality intervals [R_{r-2}, R_r] for odd strengths 3..max_r.

    The interval for strength 1 is (0, 1/3] and is not listed; the table
    starts at r = 3 whose left endpoint is exactly the crossing with r = 1.
    """
    if max_r < 3 or max_r % 2 == 0:
        raise ValueError("max_r must be an odd integer >= 3")
    cuts = consecutive_cutoffs(max_r)
    rows = []
    for r in range(3, max_r + 1, 2):
        left = cuts[r - 2]
        right = cuts[r]
        rows.append(
            StrengthInterval(
                r=r,
                p_left=left,
                p_right=right,
                a_left=approx_drift_closed(r, left),
                a_right=approx_drift_closed(r, right),
            )
        )
    return rows


def _first_dominating_odd(p: float) -> int:
    """Smallest odd r whose drift at p is >= that of r + 2.

    The predicate A(r, p) >= A(r+2, p) is monotone in r (false below the
    surrounding cut-off pair, true from it onward), so exponential search
    followed by binary search finds the argmax without scanning.
    """
    def dominates(r: int) -> bool:
        return approx_drift_closed(r, p) >= approx_drift_closed(r + 2, p)

    if dominates(1):
        return 1
    lo = 1
    hi = 3
    while not dominates(hi):
        lo = hi
        hi *= 2
        hi += 1 if hi % 2 == 0 else 0
    # invariant: not dominates(lo), dominates(hi), both odd
    while hi - lo > 2:
        mid = lo + 2 * ((hi - lo) // 4)
        if dominates(mid):
            hi = mid
        else:
            lo = mid
    return hi


def r_opt_approx(p: float, eps: "Epsilon | float", n: int | None = None) -> int:
    """Odd strength maximizing the n-free drift at relative distance p.

    For p in (1/2 - eps, 1/2] the strength is frozen at its value at
    1/2 - eps. For p > 1/2 the recommendation is the full complement r = n,
    which requires the caller to supply n.
    """
    e = _as_epsilon(eps)
    if p <= 0.0 or p > 1.0:
        raise ValueError(f"p={p} outside (0, 1]")
    if p > 0.5:
        if n is None:
            raise ValueError("p > 1/2 prescribes the complement flip; pass n")
        return n
    p_eff = min(p, 0.5 - e.value)
    return _first_dominating_odd(p_eff)


def r_opt_approx_scan(p: float, eps: "Epsilon | float") -> int:
    """Literal argmax of approx drift over odd r up to the search bound.

    Reference implementation of r_opt_approx for p <= 1/2; quadratic-ish in
    the bound, so only usable for moderate eps. Ties resolve to the
    smallest strength.
    """
    e = _as_epsilon(eps)
    if not 0.0 < p <= 0.5:
        raise ValueError(f"p={p} outside (0, 1/2]")
    p_eff = min(p, 0.5 - e.value)
    best_r = 1
    best_a = approx_drift_closed(1, p_eff)
    for r in range(3, search_bound(e) + 1, 2):
        a = approx_drift_closed(r, p_eff)
        if a > best_a:
            best_a = a
            best_r = r
    return best_r


def max_approx_drift(p: float, eps: "Epsilon | float") -> float:
    """Drift of the eps-capped optimal strength, evaluated at p itself."""
    e = _as_epsilon(eps)
    if not 0.0 < p <= 0.5:
        raise ValueError(f"p={p} outside (0, 1/2]")
    return approx_drift_closed(r_opt_approx(p, e), p)


def r_opt_exact(n: int, d: int) -> int:
    """Odd strength maximizing the exact drift at fitness distance d.

    Defined for 1 <= d <= n/2 (fold larger distances first). The scan is
    capped by the search bound taken at the distance's own margin
    eps_d = 1/2 - d/n, or at n when d = n/2 exactly.
    """
    if n <= 0:
        raise ValueError("n must be a positive integer")
    if d < 1:
        raise ValueError("d must be >= 1; at d = 0 there is nothing to flip")
    if 2 * d > n:
        raise ValueError(f"d={d} exceeds n/2={n / 2}; fold the distance first")
    eps_d = 0.5 - d / n
    if eps_d > 0.0:
        r_cap = min(n, search_bound(Epsilon(eps_d)))
    else:
        r_cap = n
    profile = exact_drift_profile(n, d, r_cap)
    odd = np.arange(1, r_cap + 1, 2)
    return int(odd[int(np.argmax(profile[odd]))])
