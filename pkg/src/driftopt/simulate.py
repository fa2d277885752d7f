"""Monte Carlo simulation of unary unbiased algorithms on OneMax.

Supported algorithms: RLS (always flip one bit), the exact drift maximizer
(per-distance argmax of the exact drift, precomputed per n), the
approximate drift maximizer driven by the n-free optimal strengths, and
arbitrary user-supplied flip-count distributions.

Two execution modes are available. The bitstring mode simulates the
algorithm literally. The condensed mode tracks only the fitness distance
and draws the number of corrected bits from the exact hypergeometric law,
which is distributionally equivalent on OneMax and much faster.

Drift-maximizer modes default to the folded distance min(d, n - d) with a
terminal complement step from the all-zeros point (one extra evaluation at
most); pass fold=False for the literal walk that treats p > 1/2 by flipping
all n bits. Fixed-budget estimation defaults to the literal walk, since its
quality measure is the true fitness distance of the best point evaluated.
"""

from __future__ import annotations

import math
import os
from dataclasses import dataclass, field
from functools import lru_cache

import numpy as np

from . import _kernels
from .drift import exact_drift_profile
from .strengths import Epsilon, _as_epsilon, r_opt_approx, search_bound

ALGORITHMS = ("rls", "drift_max_exact", "drift_max_approx", "custom")
MODES = ("bitstring", "condensed")

# Iteration cap for custom distributions run without an explicit budget;
# user distributions may lack provable progress, so the run must not hang.
_CUSTOM_DEFAULT_CAP = 10_000_000


@dataclass(frozen=True)
class UnaryOperatorDistribution:
    """Probability distribution over flip counts 0..n."""

    weights: tuple[float, ...]

    def __post_init__(self) -> None:
        w = tuple(float(v) for v in self.weights)
        object.__setattr__(self, "weights", w)
        if not w:
            raise ValueError("distribution needs at least one weight")
        if any(v < 0.0 for v in w):
            raise ValueError("weights must be non-negative")
        if abs(math.fsum(w) - 1.0) > 1e-12:
            raise ValueError("weights must sum to 1 within 1e-12")


@dataclass(frozen=True)
class SimConfig:
    """One simulation campaign: an algorithm, a problem size, and repetitions.

    fold=None resolves per entry point: runtime campaigns fold the distance
    for drift maximizers, fixed-budget estimation never folds.
    """

    n: int
    algorithm: str
    eps: Epsilon | float = 0.05
    custom_dist: UnaryOperatorDistribution | None = None
    mode: str = "condensed"
    seed: int = 1
    runs: int = 1
    budget: int | None = None
    fold: bool | None = None

    def __post_init__(self) -> None:
        if self.n < 1:
            raise ValueError("n must be >= 1")
        if self.algorithm not in ALGORITHMS:
            raise ValueError(f"unknown algorithm {self.algorithm!r}")
        if self.mode not in MODES:
            raise ValueError(f"unknown mode {self.mode!r}")
        if self.runs < 1:
            raise ValueError("runs must be >= 1")
        if self.budget is not None and self.budget < 0:
            raise ValueError("budget must be >= 0")
        object.__setattr__(self, "eps", _as_epsilon(self.eps))
        if (self.custom_dist is not None) != (self.algorithm == "custom"):
            raise ValueError("custom_dist must be given exactly for algorithm='custom'")
        if self.custom_dist is not None and len(self.custom_dist.weights) != self.n + 1:
            raise ValueError(f"custom_dist must cover flip counts 0..{self.n}")


@dataclass(frozen=True)
class RunRecord:
    """Outcome of one run.

    runtime counts fitness evaluations, the initial sample being evaluation
    1 and the first evaluation of the optimum the last one counted. Budgets
    cap iterations (mutation evaluations), so a censored run carries the
    sentinel budget + 1.
    """

    runtime: int
    censored: bool = False
    trajectory: tuple[int, ...] | None = None


@dataclass(frozen=True)
class BudgetPoint:
    budget: int
    mean_distance: float
    standard_error: float


@dataclass(frozen=True)
class SummaryStats:
    """Aggregate over runs; count is the number of runs the mean uses
    (censored runs are excluded from runtime means and tallied apart)."""

    mean: float
    variance: float
    count: int
    standard_error: float
    censored: int = 0
    per_budget: tuple[BudgetPoint, ...] | None = None


# ---------------------------------------------------------------------------
# reference single-step operations (spec-level, numpy Generator based)


def flip_r(x: np.ndarray, r: int, rng: np.random.Generator) -> np.ndarray:
    """Flip exactly r distinct uniformly chosen positions of a 0/1 array."""
    x = np.asarray(x)
    n = x.shape[0]
    if not 0 <= r <= n:
        raise ValueError(f"r={r} outside [0, {n}]")
    y = x.copy()
    if r:
        pos = rng.choice(n, size=r, replace=False)
        y[pos] ^= 1
    return y


def sample_unary_operator(
    dist: UnaryOperatorDistribution, x: np.ndarray, rng: np.random.Generator
) -> np.ndarray:
    """Draw a flip count from dist and apply flip_r."""
    x = np.asarray(x)
    if len(dist.weights) != x.shape[0] + 1:
        raise ValueError("distribution must cover flip counts 0..len(x)")
    w = np.asarray(dist.weights)
    r = int(rng.choice(w.shape[0], p=w / w.sum()))
    return flip_r(x, r, rng)


def condensed_step(n: int, d: int, r: int, rng: np.random.Generator) -> int:
    """One elitist step on the distance chain: accept iff no fitness loss."""
    if not 0 <= d <= n:
        raise ValueError(f"d={d} outside [0, {n}]")
    if not 0 <= r <= n:
        raise ValueError(f"r={r} outside [0, {n}]")
    if r == 0 or d == 0:
        return d
    z = int(rng.hypergeometric(d, n - d, r))
    dc = d - (2 * z - r)
    return min(d, dc)


# ---------------------------------------------------------------------------
# strength tables


def _largest_odd_at_most(r: int) -> int:
    return r if r % 2 == 1 else r - 1


@lru_cache(maxsize=32)
def approx_strength_table(n: int, eps_value: float, fold: bool) -> np.ndarray:
    """Flip counts per distance for the approximate drift maximizer.

    Strengths are capped at 2 d - 1 (folded: 2 min(d, n-d) - 1) so every
    state keeps positive improvement probability; with the plateau at
    1/2 - eps the cap only ever binds for extreme eps choices.
    """
    e = Epsilon(eps_value)
    table = np.zeros(n + 1, dtype=np.int64)
    cache: dict[int, int] = {}

    def r_tilde(df: int) -> int:
        if df not in cache:
            cache[df] = r_opt_approx(df / n, e)
        return cache[df]

    for d in range(1, n + 1):
        if fold:
            df = min(d, n - d)
            if df == 0:
                table[d] = n
                continue
            table[d] = min(r_tilde(df), 2 * df - 1)
        else:
            if 2 * d > n:
                table[d] = n
            else:
                table[d] = min(r_tilde(d), 2 * d - 1)
    _check_progress(table, n, fold)
    return table


@lru_cache(maxsize=32)
def exact_strength_table(n: int, fold: bool) -> np.ndarray:
    """Flip counts per distance for the exact drift maximizer at this n.

    Each folded distance gets the smallest argmax of the exact drift over
    odd strengths up to the per-distance search bound; in the literal
    (unfolded) walk, distances beyond n/2 get the unrestricted argmax,
    which lands on complement-like strengths.
    """
    table = np.zeros(n + 1, dtype=np.int64)
    cache: dict[int, int] = {}

    def argmax_at(d: int) -> int:
        if d in cache:
            return cache[d]
        if 2 * d <= n:
            eps_d = 0.5 - d / n
            cap = n if eps_d <= 0.0 else min(n, search_bound(Epsilon(eps_d)))
            prof = exact_drift_profile(n, d, cap)
            odd = np.arange(1, cap + 1, 2)
            r = int(odd[int(np.argmax(prof[odd]))])
        else:
            prof = exact_drift_profile(n, d, n)
            r = int(np.argmax(prof))
        cache[d] = r
        return r

    for d in range(1, n + 1):
        if fold:
            df = min(d, n - d)
            table[d] = n if df == 0 else argmax_at(df)
        else:
            table[d] = argmax_at(d)
    _check_progress(table, n, fold)
    return table


def rls_strength_table(n: int, fold: bool) -> np.ndarray:
    table = np.ones(n + 1, dtype=np.int64)
    table[0] = 0
    if fold:
        table[n] = n
    _check_progress(table, n, fold)
    return table


def _check_progress(table: np.ndarray, n: int, fold: bool) -> None:
    """Every reachable state must be improvable, else runs could not halt."""
    for d in range(1, n + 1):
        r = int(table[d])
        if not 1 <= r <= n:
            raise ValueError(f"strength table entry r={r} at d={d} outside [1, {n}]")
        if fold:
            df = min(d, n - d)
            ok = (df == 0 and r == n) or r < 2 * df or n - 2 * df < r < n
        else:
            ok = r < 2 * d
        if not ok:
            raise ValueError(f"strength r={r} cannot improve from distance d={d}")


# ---------------------------------------------------------------------------
# campaign execution


def _apply_thread_env() -> None:
    raw = os.environ.get("DRIFTOPT_THREADS")
    if not raw:
        return
    try:
        want = int(raw)
    except ValueError:
        return
    if want < 1:
        return
    import numba

    numba.set_num_threads(min(want, numba.config.NUMBA_NUM_THREADS))


def _resolve_fold(config: SimConfig, default_for_maximizers: bool) -> bool:
    if config.fold is not None:
        return config.fold
    if config.algorithm in ("drift_max_exact", "drift_max_approx"):
        return default_for_maximizers
    return False


def _dispatch(config: SimConfig, fold: bool, max_iters: int, budgets: np.ndarray):
    if config.algorithm == "rls":
        table = rls_strength_table(config.n, fold)
        cumw = np.empty(0)
    elif config.algorithm == "drift_max_exact":
        table = exact_strength_table(config.n, fold)
        cumw = np.empty(0)
    elif config.algorithm == "drift_max_approx":
        table = approx_strength_table(config.n, config.eps.value, fold)
        cumw = np.empty(0)
    else:
        table = np.zeros(config.n + 1, dtype=np.int64)
        cumw = np.cumsum(np.asarray(config.custom_dist.weights, dtype=float))
    _apply_thread_env()
    runner = _kernels.run_condensed if config.mode == "condensed" else _kernels.run_bitstring
    master = np.uint64(config.seed & 0xFFFFFFFFFFFFFFFF)
    return runner(
        master,
        config.runs,
        config.n,
        table,
        cumw,
        fold,
        np.int64(max_iters),
        budgets.astype(np.int64),
    )


def _default_cap(config: SimConfig) -> int:
    if config.budget is not None:
        return config.budget
    if config.algorithm == "custom":
        return _CUSTOM_DEFAULT_CAP
    return int(_kernels.NO_CAP)


def run_algorithm(
    config: SimConfig, record_trajectory: bool = False
) -> list[RunRecord]:
    """Execute the configured campaign and return one record per run.

    record_trajectory requires an explicit budget (it bounds the per-run
    trajectory length) and stores best-so-far distances X_0..X_budget.
    """
    if record_trajectory and config.budget is None:
        raise ValueError("record_trajectory requires an explicit budget")
    if record_trajectory:
        budgets = np.arange(config.budget + 1, dtype=np.int64)
    else:
        budgets = np.empty(0, dtype=np.int64)
    runtimes, censored, xmat = _dispatch(config, _resolve_fold(config, True),
                                         _default_cap(config), budgets)
    records = []
    for i in range(config.runs):
        records.append(
            RunRecord(
                runtime=int(runtimes[i]),
                censored=bool(censored[i]),
                trajectory=tuple(int(v) for v in xmat[i]) if record_trajectory else None,
            )
        )
    return records


def summarize_runtimes(records: list[RunRecord]) -> SummaryStats:
    """Runtime statistics over the uncensored runs of a campaign."""
    times = np.array([r.runtime for r in records if not r.censored], dtype=float)
    ncens = sum(1 for r in records if r.censored)
    if times.size == 0:
        return SummaryStats(
            mean=float("nan"), variance=float("nan"), count=0,
            standard_error=float("nan"), censored=ncens,
        )
    mean = float(times.mean())
    var = float(times.var(ddof=1)) if times.size > 1 else 0.0
    return SummaryStats(
        mean=mean,
        variance=var,
        count=int(times.size),
        standard_error=math.sqrt(var / times.size) if times.size else float("nan"),
        censored=ncens,
    )


def fixed_budget_estimate(config: SimConfig, budgets) -> SummaryStats:
    """Mean best-so-far fitness distance at each requested budget.

    Runs the literal (unfolded) walk unless the config explicitly folds:
    the fixed-budget quality measure is the true fitness distance of the
    best evaluated point, which the folded descent does not optimize
    mid-run. Headline stats describe the largest budget; per_budget holds
    every requested one.
    """
    bud = sorted({int(b) for b in budgets})
    if not bud:
        raise ValueError("budgets must be non-empty")
    if bud[0] < 0:
        raise ValueError("budgets must be >= 0")
    barr = np.asarray(bud, dtype=np.int64)
    fold = _resolve_fold(config, False)
    _, _, xmat = _dispatch(config, fold, int(barr[-1]), barr)
    per = []
    for j, b in enumerate(bud):
        col = xmat[:, j].astype(float)
        m = float(col.mean())
        v = float(col.var(ddof=1)) if col.size > 1 else 0.0
        per.append(BudgetPoint(budget=b, mean_distance=m,
                               standard_error=math.sqrt(v / col.size)))
    last = xmat[:, -1].astype(float)
    var = float(last.var(ddof=1)) if last.size > 1 else 0.0
    return SummaryStats(
        mean=float(last.mean()),
        variance=var,
        count=int(last.size),
        standard_error=math.sqrt(var / last.size),
        censored=0,
        per_budget=tuple(per),
    )


def rls_fixed_budget_closed_form(n: int, budget: int) -> float:
    """Expected RLS fitness distance after a budget of iterations,
    (n/2) (1 - 1/n)^B, evaluated in log space for large budgets."""
    if n < 1:
        raise ValueError("n must be >= 1")
    if budget < 0:
        raise ValueError("budget must be >= 0")
    if budget == 0:
        return n / 2.0
    if n == 1:
        return 0.0
    return (n / 2.0) * math.exp(budget * math.log1p(-1.0 / n))
