"""Runtime-constant brackets and the generic drift theorems.

The drift theorems are checked for soundness against a dense linear-solve
hitting-time oracle on randomly generated monotone chains, and for
tightness on the single-step chain where both theorems collapse to the
exact expectation.
"""

import math
from fractions import Fraction

import numpy as np
import pytest
from hypothesis import given, settings
from hypothesis import strategies as st
from scipy.integrate import quad

from driftopt import (
    DriftSpec,
    PartitionScheme,
    RuntimeConstantBracket,
    approx_drift_closed,
    brute_force_hitting_time,
    constant_bracket,
    cutoff_point,
    default_partition,
    dense_partition,
    drift_lower_bound,
    drift_upper_bound,
    harmonic_runtime_term,
    lower_bound_constant,
    partition_from_cutoff_indices,
    runtime_estimate,
    tail_integral,
    upper_bound_constant,
)

EULER_GAMMA = float(np.euler_gamma)


def harmonic(m: int) -> float:
    return float(sum(Fraction(1, i) for i in range(1, m + 1)))


class TestHarmonic:
    def test_small_exact(self):
        assert harmonic_runtime_term(7, 1) == 7.0
        assert harmonic_runtime_term(3, 2) == pytest.approx(4.5, rel=1e-15)
        assert harmonic_runtime_term(10, 5) == pytest.approx(
            10 * harmonic(5), rel=1e-14
        )

    def test_sum_and_expansion_agree_at_switchover(self):
        # direct sum at 1e7, Euler-Maclaurin at 1e7 + 1; per-bit they must
        # differ by exactly the extra reciprocal term
        m = 10**7
        n = m + 1
        direct = harmonic_runtime_term(n, m) / n
        expanded = harmonic_runtime_term(n, m + 1) / n
        assert expanded - direct == pytest.approx(1.0 / (m + 1), abs=1e-10)

    def test_validation(self):
        with pytest.raises(ValueError):
            harmonic_runtime_term(5, 0)
        with pytest.raises(ValueError):
            harmonic_runtime_term(5, 6)


class TestPartition:
    def test_validation(self):
        with pytest.raises(ValueError):
            PartitionScheme(points=())
        with pytest.raises(ValueError):
            PartitionScheme(points=(0.5,))
        with pytest.raises(ValueError):
            PartitionScheme(points=(0.3,))
        with pytest.raises(ValueError):
            PartitionScheme(points=(0.4, 0.4))
        with pytest.raises(ValueError):
            PartitionScheme(points=(0.35, 0.4))
        PartitionScheme(points=(1 / 3,))

    def test_cutoff_indices_validation(self):
        with pytest.raises(ValueError):
            partition_from_cutoff_indices(())
        with pytest.raises(ValueError):
            partition_from_cutoff_indices((8,))
        with pytest.raises(ValueError):
            partition_from_cutoff_indices((1,))

    def test_dense_contains_default_points(self):
        dense = dense_partition(101)
        sparse_small = partition_from_cutoff_indices(range(9, 36, 2))
        assert set(sparse_small.points) <= set(dense.points)
        with pytest.raises(ValueError):
            dense_partition(10)
        with pytest.raises(ValueError):
            dense_partition(7)


class TestTailIntegral:
    def test_zero_at_one_third(self):
        assert tail_integral(1 / 3, 0.05) == 0.0

    def test_first_piece_closed_form(self):
        # below the (3,5) crossing the best drift is 3p^2, so the tail up
        # to that crossing is 1 - 1/(3 R)
        r3 = cutoff_point(3, 5).p0
        assert tail_integral(r3, 0.05) == pytest.approx(
            1 - 1 / (3 * r3), abs=1e-11
        )

    def test_across_cutoff_vs_independent_quadrature(self):
        r3 = cutoff_point(3, 5).p0
        piece, err = quad(
            lambda p: 1 / approx_drift_closed(5, p), r3, 0.38, epsabs=1e-12
        )
        assert err < 1e-10
        assert tail_integral(0.38, 0.05) == pytest.approx(
            1 - 1 / (3 * r3) + piece, abs=1e-9
        )

    def test_additive_in_upper_limit(self):
        # [0.36, 0.41] spans the optimality pieces of r = 3, 5, 7, 9, 11
        lo, hi = 0.36, 0.41
        gap, err = quad(
            lambda p: 1
            / max(approx_drift_closed(r, p) for r in (3, 5, 7, 9, 11)),
            lo,
            hi,
            epsabs=1e-12,
            limit=200,
        )
        assert tail_integral(hi, 0.05) - tail_integral(lo, 0.05) == pytest.approx(
            gap, abs=1e-9
        )

    def test_validation(self):
        with pytest.raises(ValueError):
            tail_integral(0.5, 0.05)
        with pytest.raises(ValueError):
            tail_integral(0.2, 0.05)


class TestConstantBracket:
    def test_single_point_partition(self):
        # at p = 1/3 the single-flip drift 1/3 rules the whole plateau:
        # lower bound has no segments and no tail, upper is (1/6)/(1/3)
        part = PartitionScheme(points=(1 / 3,))
        assert lower_bound_constant(part) == 0.0
        assert upper_bound_constant(part) == pytest.approx(0.5, rel=1e-12)

    def test_default_partition_frozen(self):
        b = constant_bracket(default_partition())
        assert b.c_prime_lower == pytest.approx(0.254918953406, abs=1e-9)
        assert b.c_prime_upper == pytest.approx(0.267473611230, abs=1e-9)
        assert b.c_lower == pytest.approx(0.253923012536, abs=1e-9)
        assert b.c_upper == pytest.approx(0.266477670360, abs=1e-9)

    def test_lower_below_upper(self):
        for part in (default_partition(), dense_partition(301)):
            assert lower_bound_constant(part) < upper_bound_constant(part)

    def test_dense_refinement_tightens(self):
        b1 = constant_bracket(partition_from_cutoff_indices(range(9, 102, 2)))
        b2 = constant_bracket(dense_partition(301))
        assert b2.c_prime_lower >= b1.c_prime_lower
        assert b2.c_prime_upper <= b1.c_prime_upper

    @given(
        st.sets(
            st.integers(min_value=5, max_value=60).map(lambda k: 2 * k + 1),
            min_size=0,
            max_size=6,
        ),
        st.sets(
            st.integers(min_value=5, max_value=60).map(lambda k: 2 * k + 1),
            min_size=1,
            max_size=4,
        ),
    )
    @settings(max_examples=25, deadline=None)
    def test_refinement_never_loosens(self, base, extra):
        # keeping the smallest point fixed at R_9, inserting cut-offs can
        # only tighten both one-sided sums
        coarse = partition_from_cutoff_indices({9} | base)
        fine = partition_from_cutoff_indices({9} | base | extra)
        assert lower_bound_constant(fine) >= lower_bound_constant(coarse) - 1e-12
        assert upper_bound_constant(fine) <= upper_bound_constant(coarse) + 1e-12

    def test_explicit_eps_must_cover_head(self):
        part = PartitionScheme(points=(0.49, 0.4))
        with pytest.raises(ValueError):
            lower_bound_constant(part, 0.05)

    def test_bracket_consistency_enforced(self):
        b = RuntimeConstantBracket.from_c_prime(0.25, 0.27)
        base = math.log(3.0) - EULER_GAMMA
        assert b.c_lower == pytest.approx(base - 0.27, abs=1e-15)
        assert b.c_upper == pytest.approx(base - 0.25, abs=1e-15)
        with pytest.raises(ValueError):
            RuntimeConstantBracket(0.25, 0.27, 0.0, 1.0)
        with pytest.raises(ValueError):
            RuntimeConstantBracket.from_c_prime(0.27, 0.25)


class TestRuntimeEstimate:
    def test_hand_value_trivial_bracket(self):
        b = RuntimeConstantBracket.from_c_prime(0.0, 0.0)
        lo, hi = runtime_estimate(3, b)
        assert lo == hi == pytest.approx(3 * EULER_GAMMA, rel=1e-14)

    def test_thousand_bit_window_frozen(self):
        lo, hi = runtime_estimate(1000, constant_bracket(default_partition()))
        assert lo == pytest.approx(6641.2776086, abs=1e-4)
        assert hi == pytest.approx(6653.8322664, abs=1e-4)

    def test_doubling_adds_2n_log2(self):
        b = constant_bracket(default_partition())
        for n in (100, 1000):
            lo_n, hi_n = runtime_estimate(n, b)
            lo_2n, hi_2n = runtime_estimate(2 * n, b)
            assert lo_2n - 2 * lo_n == pytest.approx(2 * n * math.log(2), rel=1e-12)
            assert hi_2n - 2 * hi_n == pytest.approx(2 * n * math.log(2), rel=1e-12)

    def test_validation(self):
        b = RuntimeConstantBracket.from_c_prime(0.0, 0.0)
        with pytest.raises(ValueError):
            runtime_estimate(2, b)


def single_step_chain(n: int) -> np.ndarray:
    # from state i move to i-1 with probability i/n, else stay
    P = np.zeros((n + 1, n + 1))
    P[0, 0] = 1.0
    for i in range(1, n + 1):
        P[i, i - 1] = i / n
        P[i, i] = 1 - i / n
    return P


def random_monotone_chain(rng: np.random.Generator, n: int, l_max: int):
    """Chain that jumps down 1..l_max states or stays; returns transition
    matrix, exact per-state drift, and per-state maximal jump length."""
    P = np.zeros((n + 1, n + 1))
    P[0, 0] = 1.0
    drift = np.zeros(n + 1)
    max_jump = np.zeros(n + 1, dtype=np.int64)
    for i in range(1, n + 1):
        span = min(i, l_max)
        w = rng.random(span) + 0.05
        move = rng.uniform(0.2, 1.0)
        w = w / w.sum() * move
        P[i, i] = 1 - move
        for l in range(1, span + 1):
            P[i, i - l] = w[l - 1]
        drift[i] = float(np.dot(w, np.arange(1, span + 1)))
        max_jump[i] = span
    return P, drift, max_jump


class TestDriftTheorems:
    def test_exact_on_single_step_chain(self):
        # h equal to the true drift and single-step floors make both
        # theorems exact: E[T] = n * H_x0
        n, x0 = 20, 10
        h = tuple(i / n for i in range(n + 1))
        c = tuple(max(i - 1, 0) for i in range(n + 1))
        spec = DriftSpec(n=n, h=h, c=c)
        expected = 20 * harmonic(10)
        assert expected == pytest.approx(58.5793650794, abs=1e-9)
        assert drift_upper_bound(spec, x0) == pytest.approx(expected, rel=1e-12)
        assert drift_lower_bound(spec, x0) == pytest.approx(expected, rel=1e-12)
        oracle = brute_force_hitting_time(single_step_chain(n), x0)
        assert oracle == pytest.approx(expected, rel=1e-9)

    def test_upper_is_harmonic_sum(self):
        spec = DriftSpec(n=50, h=tuple(float(i) for i in range(51)))
        assert drift_upper_bound(spec, 50) == pytest.approx(
            harmonic(50), rel=1e-12
        )
        assert drift_upper_bound(spec, 0) == 0.0

    def test_constant_floor_collapses_g(self):
        # c identically zero means every state can reach 0, so mu is n
        # everywhere and g = x0 / h(n)
        n, x0 = 20, 10
        h = tuple(i / n for i in range(n + 1))
        spec = DriftSpec(n=n, h=h, c=(0,) * (n + 1))
        assert drift_lower_bound(spec, x0) == pytest.approx(10.0, rel=1e-12)
        lossy = DriftSpec(n=n, h=h, c=(0,) * (n + 1), p_escape=0.3)
        # g - g^2 p / (1 + g p) with g = 10, p = 0.3
        assert drift_lower_bound(lossy, x0) == pytest.approx(2.5, rel=1e-12)
        assert drift_lower_bound(spec, 0) == 0.0

    def test_monotonicity_required(self):
        bad = DriftSpec(n=3, h=(0.0, 2.0, 1.0, 3.0))
        with pytest.raises(ValueError):
            drift_upper_bound(bad, 3)
        flat = DriftSpec(n=3, h=(0.0, 1.0, 1.0, 2.0))
        drift_upper_bound(flat, 3)
        zero = DriftSpec(n=3, h=(0.0, 0.0, 1.0, 2.0))
        with pytest.raises(ValueError):
            drift_upper_bound(zero, 3)

    def test_lower_needs_reachable_floor(self):
        spec = DriftSpec(n=3, h=(0.0, 1.0, 2.0, 3.0), c=(0, 1, 1, 2))
        with pytest.raises(ValueError):
            drift_lower_bound(spec, 3)

    def test_spec_validation(self):
        with pytest.raises(ValueError):
            DriftSpec(n=0, h=(1.0,))
        with pytest.raises(ValueError):
            DriftSpec(n=2, h=(0.0, 1.0))
        with pytest.raises(ValueError):
            DriftSpec(n=2, h=(0.0, 1.0, 2.0), c=(0, 2, 2))
        with pytest.raises(ValueError):
            DriftSpec(n=2, h=(0.0, 1.0, 2.0), c=(0, 1))
        with pytest.raises(ValueError):
            DriftSpec(n=2, h=(0.0, 1.0, 2.0), p_escape=1.0)
        with pytest.raises(ValueError):
            drift_upper_bound(DriftSpec(n=2, h=(0.0, 1.0, 2.0)), 3)
        with pytest.raises(ValueError):
            drift_lower_bound(DriftSpec(n=2, h=(0.0, 1.0, 2.0)), 1)

    def test_sound_on_random_chains(self):
        rng = np.random.default_rng(20260814)
        for trial in range(20):
            n = int(rng.integers(8, 60))
            l_max = int(rng.integers(1, 7))
            P, drift, max_jump = random_monotone_chain(rng, n, l_max)
            x0 = int(rng.integers(n // 2, n + 1))
            truth = brute_force_hitting_time(P, x0)

            # upper theorem: under-estimate the drift monotonically
            h_low = np.minimum.accumulate(drift[::-1])[::-1]
            up = drift_upper_bound(DriftSpec(n=n, h=tuple(h_low)), x0)
            assert up >= truth - 1e-9

            # lower theorem, exact floors: never undershoots, p_escape 0
            h_high = np.maximum.accumulate(drift)
            c_exact = tuple(
                int(i - max_jump[i]) if i else 0 for i in range(n + 1)
            )
            low = drift_lower_bound(
                DriftSpec(n=n, h=tuple(h_high), c=c_exact), x0
            )
            assert low <= truth + 1e-9

            # lower theorem, coarse floors i-2 with the matching escape
            # probability max_i P(jump below i-2)
            p_esc = 0.0
            for i in range(3, n + 1):
                p_esc = max(p_esc, float(P[i, : max(i - 2, 0)].sum()))
            c_coarse = tuple(max(i - 2, 0) for i in range(n + 1))
            low2 = drift_lower_bound(
                DriftSpec(n=n, h=tuple(h_high), c=c_coarse, p_escape=p_esc),
                x0,
            )
            assert low2 <= truth + 1e-9


class TestHittingTimeOracle:
    def test_deterministic_chain(self):
        n = 7
        P = np.zeros((n + 1, n + 1))
        P[0, 0] = 1.0
        for i in range(1, n + 1):
            P[i, i - 1] = 1.0
        assert brute_force_hitting_time(P, 5) == pytest.approx(5.0, rel=1e-12)
        assert brute_force_hitting_time(P, 0) == 0.0

    def test_two_state_geometric(self):
        P = np.array([[1.0, 0.0], [0.5, 0.5]])
        assert brute_force_hitting_time(P, 1) == pytest.approx(2.0, rel=1e-12)

    def test_validation(self):
        with pytest.raises(ValueError):
            brute_force_hitting_time(np.ones((2, 3)), 0)
        with pytest.raises(ValueError):
            brute_force_hitting_time(np.array([[0.5, 0.5], [0.5, 0.5]]), 1)
        with pytest.raises(ValueError):
            brute_force_hitting_time(np.array([[1.0, 0.5], [0.5, 0.5]]), 1)
        with pytest.raises(ValueError):
            brute_force_hitting_time(np.array([[1.0, 0.0], [-0.1, 1.1]]), 1)
        with pytest.raises(ValueError):
            brute_force_hitting_time(np.eye(2), 1)
        with pytest.raises(ValueError):
            brute_force_hitting_time(np.eye(2), 5)
        with pytest.raises(ValueError):
            brute_force_hitting_time(np.eye(2100), 1)
