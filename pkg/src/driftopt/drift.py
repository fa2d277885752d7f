"""Expected one-step fitness drift of r-bit flips on OneMax.

Flipping r distinct uniformly chosen positions of a bitstring at fitness
distance d corrects Z wrong bits, where Z is hypergeometric. Under elitist
selection the fitness gain of the step is max(2Z - r, 0), and its expectation
is the quantity every routine here computes, exactly or in the n-free
binomial approximation obtained by sampling positions with replacement.
"""

from __future__ import annotations

import math
from fractions import Fraction

import numpy as np
from scipy import special, stats

from .quadrature import adaptive_simpson

# Above this the rational path would still be correct, just pointlessly slow;
# the float path is accurate to ~1e-13 there anyway.
RATIONAL_N_LIMIT = 60


def _check_ndr(n: int, d: int, r: int) -> None:
    if n <= 0:
        raise ValueError("n must be a positive integer")
    if not 0 <= d <= n:
        raise ValueError(f"fitness distance d={d} outside [0, {n}]")
    if not 0 <= r <= n:
        raise ValueError(f"mutation strength r={r} outside [0, {n}]")


def exact_drift(n: int, d: int, r: int) -> float:
    """Exact expected elitist fitness gain of an r-bit flip.

    Parameters
    ----------
    n : problem size (number of bits).
    d : current fitness distance, i.e. number of wrong bits.
    r : number of distinct positions flipped.

    Returns
    -------
    float
        E[max(2Z - r, 0)] with Z ~ Hypergeometric(n, d, r).
    """
    _check_ndr(n, d, r)
    if d == 0 or r == 0:
        return 0.0
    lo = max((r + 1) // 2, r - (n - d))
    hi = min(r, d)
    if lo > hi:
        return 0.0
    i = np.arange(lo, hi + 1)
    pmf = stats.hypergeom.pmf(i, n, d, r)
    return float(np.dot(2.0 * i - r, pmf))


def exact_drift_rational(
    n: int, d: int, r: int, limit: int = RATIONAL_N_LIMIT
) -> Fraction:
    """Same expectation as exact_drift but as an exact rational number.

    Only intended for small n (default cap 60); raises ValueError beyond the
    cap rather than grinding through huge integer arithmetic.
    """
    if n > limit:
        raise ValueError(f"rational evaluation capped at n <= {limit}, got n={n}")
    _check_ndr(n, d, r)
    if d == 0 or r == 0:
        return Fraction(0)
    total = 0
    for i in range(max((r + 1) // 2, r - (n - d)), min(r, d) + 1):
        total += math.comb(d, i) * math.comb(n - d, r - i) * (2 * i - r)
    return Fraction(total, math.comb(n, r))


def exact_drift_profile(n: int, d: int, r_max: int) -> np.ndarray:
    """Exact drift for every strength 0..r_max at fixed (n, d) in one sweep.

    Runs the draw-by-draw recursion for the hypergeometric pmf so the whole
    profile costs O(r_max * min(d, r_max)) instead of r_max separate sums.
    """
    _check_ndr(n, d, r_max)
    out = np.zeros(r_max + 1)
    if d == 0 or r_max == 0:
        return out
    m = min(d, r_max)
    cur = np.zeros(m + 2)
    nxt = np.zeros(m + 2)
    cur[0] = 1.0
    idx = np.arange(m + 1, dtype=float)
    for r in range(1, r_max + 1):
        hp = min(r - 1, d)
        denom = float(n - r + 1)
        i = idx[: hp + 1]
        nxt[: hp + 2] = 0.0
        nxt[: hp + 1] = cur[: hp + 1] * ((n - d) - (r - 1 - i)) / denom
        nxt[1 : hp + 2] += cur[: hp + 1] * (d - i) / denom
        cur, nxt = nxt, cur
        lo = (r + 1) // 2
        hi = min(r, d)
        if lo <= hi:
            j = np.arange(lo, hi + 1)
            out[r] = np.dot(2.0 * j - r, cur[lo : hi + 1])
    return out


def approx_drift(r: int, p: float) -> float:
    """n-free drift approximation at relative fitness distance p.

    Replaces the hypergeometric flip count by Binomial(r, p): each of the r
    flips independently hits a wrong bit with probability p.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    if r == 0 or p == 0.0:
        return 0.0
    i = np.arange((r + 1) // 2, r + 1)
    pmf = stats.binom.pmf(i, r, p)
    return float(np.dot(2.0 * i - r, pmf))


def approx_drift_general(r: int, p: float, q: float) -> float:
    """Two-parameter drift approximation sum_{i>=r/2} C(r,i) (2i-r) p^i q^(r-i).

    p and q need not sum to one; this is the form used for the sandwich
    bounds around the exact drift. Terms are evaluated in log space.
    """
    if r < 0:
        raise ValueError("r must be >= 0")
    if p < 0.0 or q < 0.0:
        raise ValueError("p and q must be non-negative")
    if r == 0:
        return 0.0
    i = np.arange((r + 1) // 2, r + 1)
    logc = (
        special.gammaln(r + 1.0)
        - special.gammaln(i + 1.0)
        - special.gammaln(r - i + 1.0)
    )
    logterm = logc + special.xlogy(i, p) + special.xlogy(r - i, q)
    return float(np.dot(2.0 * i - r, np.exp(logterm)))


def drift_constant_ck(k: int) -> int:
    """Curvature constant c_k = 2 (2k-1) (2k+1) C(2k-2, k-1).

    This is the constant in the second-derivative identity
    d^2 A / dq^2 = c_k (p (1-p))^(k-1) for strength r = 2k+1 with q = 1 - p,
    equivalently (4k+2) / Beta(k, k). Integer-valued; successive constants
    satisfy c_{k+1} / c_k = (4k+6) / k.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    return 2 * (2 * k - 1) * (2 * k + 1) * math.comb(2 * k - 2, k - 1)


def drift_second_derivative(k: int, p: float) -> float:
    """Second derivative of p -> A(2k+1, p, 1-p) with respect to 1 - p."""
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    return float(drift_constant_ck(k)) * (p * (1.0 - p)) ** (k - 1)


def approx_drift_via_integral(k: int, p: float, tol: float = 1e-10) -> float:
    """Odd-strength drift A(2k+1, p, 1-p) recovered by double integration.

    Integrates the second-derivative identity twice from 0, i.e.
    c_k * int_0^p int_0^y (x (1-x))^(k-1) dx dy, with adaptive Simpson on
    both levels. Deliberately independent of the summation routes; used to
    cross-validate them.
    """
    if k < 1:
        raise ValueError("k must be >= 1")
    if not 0.0 < p <= 0.5:
        raise ValueError(f"p={p} outside (0, 1/2]")
    ck = float(drift_constant_ck(k))
    # the requested tolerance applies to the returned drift, so the raw
    # integrals must be solved ck times tighter (floored near roundoff)
    quad_tol = max(tol / (2.0 * ck), 1e-14)

    def inner(y: float) -> float:
        if y == 0.0:
            return 0.0
        return adaptive_simpson(
            lambda x: (x * (1.0 - x)) ** (k - 1), 0.0, y, tol=quad_tol
        )

    return ck * adaptive_simpson(inner, 0.0, p, tol=quad_tol)


def approx_drift_closed(r: int, p: float) -> float:
    """Closed form of approx_drift for odd r via incomplete beta functions.

    Integrating the second-derivative identity twice by parts gives, with
    k = (r - 1) / 2 and I the regularized incomplete beta function,

        A(r, p, 1-p) = (4k + 2) p I(k, k, p) - (2k + 1) I(k+1, k, p).

    O(1) to evaluate, which is what makes cut-off searches at strengths in
    the thousands cheap.
    """
    if r < 1 or r % 2 == 0:
        raise ValueError("closed form only holds for odd r >= 1")
    if not 0.0 <= p <= 1.0:
        raise ValueError(f"p={p} outside [0, 1]")
    k = (r - 1) // 2
    if k == 0:
        return float(p)
    return float(
        (4 * k + 2) * p * special.betainc(k, k, p)
        - (2 * k + 1) * special.betainc(k + 1, k, p)
    )
