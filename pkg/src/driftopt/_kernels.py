"""Numba kernels for the Monte Carlo simulator.

Each run owns a private xoshiro256++ stream seeded from (master seed,
run index) through splitmix64, so results are reproducible bit-for-bit
regardless of thread count or scheduling. Hypergeometric draws use exact
inverse-CDF walking for small draw counts and urn simulation otherwise; no
normal approximations anywhere.
"""

import warnings

import numpy as np
from numba import njit, prange

# Environment probe only: numba warns when an old TBB is present and falls
# back to another threading layer. Harmless, but it would pollute stderr of
# every CLI invocation.
warnings.filterwarnings("ignore", message=".*TBB_INTERFACE_VERSION.*")

_U = np.uint64
_GOLDEN = _U(0x9E3779B97F4A7C15)
_MIX_B = _U(0xBF58476D1CE4E5B9)
_MIX_C = _U(0x94D049BB133111EB)
_RUN_SALT = _U(0xD1B54A32D192ED03)
_DOUBLE_SCALE = 1.0 / 9007199254740992.0  # 2^-53

NO_CAP = np.int64(2**62)


@njit(cache=True)
def _mix64(z):
    z = (z ^ (z >> _U(30))) * _MIX_B
    z = (z ^ (z >> _U(27))) * _MIX_C
    return z ^ (z >> _U(31))


@njit(cache=True)
def _seed_state(master, run_index, s):
    x = master + _mix64(_U(run_index) * _GOLDEN + _RUN_SALT)
    for j in range(4):
        x = x + _GOLDEN
        s[j] = _mix64(x)
    if s[0] | s[1] | s[2] | s[3] == _U(0):
        s[0] = _GOLDEN


@njit(cache=True)
def _rotl(x, k):
    return (x << _U(k)) | (x >> (_U(64) - _U(k)))


@njit(cache=True)
def _next_u64(s):
    result = _rotl(s[0] + s[3], 23) + s[0]
    t = s[1] << _U(17)
    s[2] ^= s[0]
    s[3] ^= s[1]
    s[1] ^= s[2]
    s[0] ^= s[3]
    s[2] ^= t
    s[3] = _rotl(s[3], 45)
    return result


@njit(cache=True)
def _next_double(s):
    return np.float64(_next_u64(s) >> _U(11)) * _DOUBLE_SCALE


@njit(cache=True)
def _rand_below(s, m):
    # rejection removes the modulo bias; threshold = 2^64 mod m
    threshold = (_U(0) - m) % m
    while True:
        x = _next_u64(s)
        if x >= threshold:
            return x % m


@njit(cache=True)
def _popcount(x):
    x = x - ((x >> _U(1)) & _U(0x5555555555555555))
    x = (x & _U(0x3333333333333333)) + ((x >> _U(2)) & _U(0x3333333333333333))
    x = (x + (x >> _U(4))) & _U(0x0F0F0F0F0F0F0F0F)
    return (x * _U(0x0101010101010101)) >> _U(56)


@njit(cache=True)
def _hyp_invcdf(s, n, d, r):
    # requires r <= d and d + r <= n, so the support is the full 0..r
    u = _next_double(s)
    pmf = 1.0
    for j in range(r):
        pmf *= (n - d - j) / (n - j)
    acc = pmf
    i = np.int64(0)
    while u > acc and i < r:
        pmf *= ((d - i) * (r - i)) / ((i + 1.0) * (n - d - r + i + 1.0))
        i += 1
        acc += pmf
    return i


@njit(cache=True)
def _hyp_urn(s, n, d, r):
    good = d
    total = n
    z = np.int64(0)
    for _ in range(r):
        if _next_double(s) * total < good:
            z += 1
            good -= 1
        total -= 1
    return z


@njit(cache=True)
def _hypergeom(s, n, d, r):
    """Draws from Hypergeometric(population n, successes d, draws r).

    Symmetry reductions shrink both the draw count and the success count
    below n/2 before sampling, so the exact samplers stay cheap.
    """
    add = np.int64(0)
    sign = np.int64(1)
    while True:
        if r <= 0 or d <= 0:
            z = np.int64(0)
            break
        if r >= n:
            z = np.int64(d)
            break
        if d >= n:
            z = np.int64(r)
            break
        if 2 * r > n:
            add += sign * d
            sign = -sign
            r = n - r
            continue
        if 2 * d > n:
            add += sign * r
            sign = -sign
            d = n - d
            continue
        if r > d:
            t = r
            r = d
            d = t
            continue
        if r <= 64:
            z = _hyp_invcdf(s, n, d, r)
        else:
            z = _hyp_urn(s, n, d, r)
        break
    return add + sign * z


@njit(cache=True)
def _sample_cum(s, cumw):
    u = _next_double(s)
    idx = np.searchsorted(cumw, u, side="right")
    if idx >= cumw.shape[0]:
        idx = cumw.shape[0] - 1
    return np.int64(idx)


@njit(cache=True)
def _initial_distance(s, n):
    om = np.int64(0)
    words = n >> 6
    for _ in range(words):
        om += np.int64(_popcount(_next_u64(s)))
    rem = n & 63
    if rem:
        mask = (_U(1) << _U(rem)) - _U(1)
        om += np.int64(_popcount(_next_u64(s) & mask))
    return n - om


@njit(cache=True)
def _run_condensed(s, n, r_table, cumw, fold, max_iters, budgets, x_row):
    d = _initial_distance(s, n)
    best = d
    nb = budgets.shape[0]
    bi = 0
    while bi < nb and budgets[bi] <= 0:
        x_row[bi] = best
        bi += 1
    evals = np.int64(1)
    t = np.int64(0)
    use_dist = cumw.shape[0] > 0
    while d != 0:
        if t >= max_iters:
            for j in range(bi, nb):
                x_row[j] = best
            return evals, True
        t += 1
        if use_dist:
            r = _sample_cum(s, cumw)
        else:
            r = r_table[d]
        z = _hypergeom(s, n, d, r)
        dc = d - (2 * z - r)
        evals += 1
        if dc < best:
            best = dc
        if fold:
            if min(dc, n - dc) <= min(d, n - d):
                d = dc
        else:
            if dc <= d:
                d = dc
        while bi < nb and budgets[bi] <= t:
            x_row[bi] = best
            bi += 1
    for j in range(bi, nb):
        x_row[j] = best
    return evals, False


@njit(cache=True)
def _run_bitstring(s, n, r_table, cumw, fold, max_iters, budgets, x_row, bits, idx):
    om = np.int64(0)
    w = _U(0)
    for j in range(n):
        if j & 63 == 0:
            w = _next_u64(s)
        b = np.int64(w & _U(1))
        bits[j] = np.uint8(b)
        om += b
        w >>= _U(1)
    for j in range(n):
        idx[j] = j
    d = n - om
    best = d
    nb = budgets.shape[0]
    bi = 0
    while bi < nb and budgets[bi] <= 0:
        x_row[bi] = best
        bi += 1
    evals = np.int64(1)
    t = np.int64(0)
    use_dist = cumw.shape[0] > 0
    while d != 0:
        if t >= max_iters:
            for j in range(bi, nb):
                x_row[j] = best
            return evals, True
        t += 1
        if use_dist:
            r = _sample_cum(s, cumw)
        else:
            r = r_table[d]
        for j in range(r):
            k = j + np.int64(_rand_below(s, _U(n - j)))
            tmp = idx[j]
            idx[j] = idx[k]
            idx[k] = tmp
        ones = np.int64(0)
        for j in range(r):
            ones += np.int64(bits[idx[j]])
        dc = d - r + 2 * ones
        evals += 1
        if dc < best:
            best = dc
        if fold:
            accept = min(dc, n - dc) <= min(d, n - d)
        else:
            accept = dc <= d
        if accept:
            for j in range(r):
                bits[idx[j]] ^= np.uint8(1)
            d = dc
        while bi < nb and budgets[bi] <= t:
            x_row[bi] = best
            bi += 1
    for j in range(bi, nb):
        x_row[j] = best
    return evals, False


@njit(cache=True, parallel=True)
def run_condensed(master, runs, n, r_table, cumw, fold, max_iters, budgets):
    runtimes = np.empty(runs, np.int64)
    censored = np.zeros(runs, np.uint8)
    xmat = np.empty((runs, budgets.shape[0]), np.int64)
    for i in prange(runs):
        s = np.empty(4, np.uint64)
        _seed_state(master, i, s)
        rt, cen = _run_condensed(s, n, r_table, cumw, fold, max_iters, budgets, xmat[i])
        runtimes[i] = rt
        if cen:
            censored[i] = 1
    return runtimes, censored, xmat


@njit(cache=True, parallel=True)
def run_bitstring(master, runs, n, r_table, cumw, fold, max_iters, budgets):
    runtimes = np.empty(runs, np.int64)
    censored = np.zeros(runs, np.uint8)
    xmat = np.empty((runs, budgets.shape[0]), np.int64)
    for i in prange(runs):
        s = np.empty(4, np.uint64)
        _seed_state(master, i, s)
        bits = np.empty(n, np.uint8)
        idx = np.empty(n, np.int64)
        rt, cen = _run_bitstring(
            s, n, r_table, cumw, fold, max_iters, budgets, xmat[i], bits, idx
        )
        runtimes[i] = rt
        if cen:
            censored[i] = 1
    return runtimes, censored, xmat


@njit(cache=True)
def hypergeom_batch(master, count, n, d, r):
    """Test hook: a batch of hypergeometric draws from one stream."""
    s = np.empty(4, np.uint64)
    _seed_state(master, 0, s)
    out = np.empty(count, np.int64)
    for i in range(count):
        out[i] = _hypergeom(s, n, d, r)
    return out
