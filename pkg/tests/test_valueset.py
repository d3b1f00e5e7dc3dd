"""Sequence specs, residue multisets, collision counts, and value-set surveys."""

import math
import random

import pytest

from sparsemod import (
    CollisionStats,
    ConfigError,
    ResidueMultiset,
    SequenceSpec,
    collision_stats,
    digit_magnitude,
    fib_even_distinctness,
    j_total,
    j_total_pairscan,
    order_of_appearance,
    sieve_primes,
    value_set_survey,
)


def brute_residues(values, p):
    counts = {}
    for v in values:
        r = v % p
        counts[r] = counts.get(r, 0) + 1
    return counts


class TestSequenceSpec:
    def test_family_lengths(self):
        assert len(SequenceSpec.fibonacci(1, 40)) == 40
        assert len(SequenceSpec.lucas(3, 7)) == 5
        assert len(SequenceSpec.fibonacci_even(2, 10)) == 9
        assert len(SequenceSpec.power(2, 1, 10)) == 10
        assert len(SequenceSpec.explicit((1, 8, 15))) == 3

    def test_exact_values_known(self):
        assert SequenceSpec.fibonacci(1, 10).exact_values() == [1, 1, 2, 3, 5, 8, 13, 21, 34, 55]
        assert SequenceSpec.lucas(1, 10).exact_values() == [1, 3, 4, 7, 11, 18, 29, 47, 76, 123]
        assert SequenceSpec.fibonacci_even(1, 5).exact_values() == [1, 3, 8, 21, 55]
        assert SequenceSpec.power(3, 1, 5).exact_values() == [3, 9, 27, 81, 243]

    def test_residues_match_exact_values(self):
        """The incremental residue generators agree with big-int reduction."""
        specs = [
            SequenceSpec.fibonacci(5, 60),
            SequenceSpec.lucas(2, 50),
            SequenceSpec.fibonacci_even(3, 40),
            SequenceSpec.power(7, 1, 30),
            SequenceSpec.explicit((4, 9, 1000, 10**12)),
        ]
        for spec in specs:
            vals = spec.exact_values()
            for p in (2, 3, 5, 97, 1009):
                assert list(spec.residues(p)) == [v % p for v in vals], (spec.label(), p)

    def test_validation(self):
        with pytest.raises(ConfigError):
            SequenceSpec.fibonacci(0, 10)     # indices start at 1
        with pytest.raises(ConfigError):
            SequenceSpec.fibonacci(10, 9)
        with pytest.raises(ConfigError):
            SequenceSpec.power(1, 1, 5)       # base must be >= 2
        with pytest.raises(ConfigError):
            SequenceSpec.explicit(())
        with pytest.raises(ConfigError):
            SequenceSpec.explicit((3, 3))     # duplicates rejected
        with pytest.raises(ConfigError):
            SequenceSpec.explicit((5, 2))     # must increase

    def test_labels_distinct(self):
        labels = {
            SequenceSpec.fibonacci(1, 9).label(),
            SequenceSpec.lucas(1, 9).label(),
            SequenceSpec.fibonacci_even(1, 9).label(),
            SequenceSpec.power(2, 1, 9).label(),
            SequenceSpec.explicit((1, 2)).label(),
        }
        assert len(labels) == 5


class TestResidueMultiset:
    def test_fib_mod5(self):
        ms = ResidueMultiset.from_spec(SequenceSpec.fibonacci(1, 4), 5)
        assert ms.counts == {1: 2, 2: 1, 3: 1}
        st = collision_stats(ms)
        assert st == CollisionStats(size=4, collisions=6, distinct=3)

    def test_explicit_mod7(self):
        ms = ResidueMultiset.from_spec(SequenceSpec.explicit((1, 8, 15)), 7)
        st = collision_stats(ms)
        assert st.collisions == 9 and st.distinct == 1

    def test_all_distinct_multiplicity_one(self):
        ms = ResidueMultiset.from_counts(101, {3: 1, 7: 1, 50: 1})
        st = collision_stats(ms)
        assert st.collisions == st.size == st.distinct == 3

    def test_invariants_random(self):
        """Mass conservation, J_p >= size, and Cauchy-Schwarz on every draw."""
        rng = random.Random(98765)
        primes = [p for p in sieve_primes(500) if p > 3]
        for _ in range(300):
            p = rng.choice(primes)
            lo = rng.randint(1, 50)
            hi = lo + rng.randint(0, 60)
            family = rng.choice(["fib", "lucas", "even", "pow"])
            if family == "fib":
                spec = SequenceSpec.fibonacci(lo, hi)
            elif family == "lucas":
                spec = SequenceSpec.lucas(lo, hi)
            elif family == "even":
                spec = SequenceSpec.fibonacci_even(lo, hi)
            else:
                spec = SequenceSpec.power(rng.randint(2, 10), lo, hi)
            ms = ResidueMultiset.from_spec(spec, p)
            st = collision_stats(ms)
            assert sum(ms.counts.values()) == st.size == len(spec)
            assert st.collisions >= st.size
            assert (st.collisions == st.size) == (st.distinct == st.size)
            assert st.distinct * st.collisions >= st.size**2

    def test_from_counts_validation(self):
        with pytest.raises(ConfigError):
            ResidueMultiset.from_counts(7, {9: 1})   # residue out of range
        with pytest.raises(ConfigError):
            ResidueMultiset.from_counts(7, {2: 0})   # dead entry


class TestJTotal:
    def test_explicit_123(self):
        jt = j_total(SequenceSpec.explicit((1, 2, 3)), 5)
        assert jt.total == 11
        assert dict(jt.per_prime) == {2: 5, 3: 3, 5: 3}
        assert jt.main_term == 9
        assert jt.residual == 2

    def test_single_element_diagonal(self):
        for nmax in (5, 100, 1000):
            jt = j_total(SequenceSpec.explicit((7,)), nmax)
            assert jt.total == len(sieve_primes(nmax))
            assert jt.residual == 0

    def test_pairscan_known(self):
        assert j_total_pairscan([1, 2, 3], 5) == 11
        # 10^6 = 2^6 * 5^6, so the pair adds 2*2 beyond the 2*pi(100) diagonal
        assert j_total_pairscan([1, 10**6 + 1], 100) == 2 * 25 + 4
        assert j_total_pairscan([12345], 1000) == len(sieve_primes(1000))

    def test_oracle_equivalence_random(self):
        """Per-prime loop equals the difference-factoring scan on explicit specs."""
        rng = random.Random(424242)
        for _ in range(25):
            n_vals = rng.randint(1, 12)
            vals = sorted(rng.sample(range(1, 10**9), n_vals))
            nmax = rng.choice([10, 50, 200, 1000])
            jt = j_total(SequenceSpec.explicit(tuple(vals)), nmax)
            assert jt.total == j_total_pairscan(vals, nmax), (vals, nmax)

    def test_oracle_equivalence_fibonacci(self):
        spec = SequenceSpec.fibonacci(1, 30)
        jt = j_total(spec, 2000)
        assert jt.total == j_total_pairscan(spec.exact_values(), 2000)
        assert jt.residual >= 0

    def test_duplicate_value_counts_every_prime(self):
        # F_1 = F_2 = 1: the repeated value collides mod every prime
        jt = j_total(SequenceSpec.fibonacci(1, 2), 100)
        pi = len(sieve_primes(100))
        assert jt.total == 4 * pi
        assert jt.total == j_total_pairscan([1, 1], 100)


class TestDigitMagnitude:
    def test_known(self):
        assert digit_magnitude([1, 2, 3]) == 1
        assert digit_magnitude([354224848179261915075]) == 21
        assert digit_magnitude([10**5]) == 5
        assert digit_magnitude([10**5 + 1]) == 6
        assert digit_magnitude([1]) == 0
        assert digit_magnitude([10]) == 1
        assert digit_magnitude([11]) == 2

    def test_containment_is_tight(self):
        rng = random.Random(5)
        for _ in range(200):
            v = rng.randint(1, 10**30)
            m = digit_magnitude([v])
            assert v <= 10**m
            assert m == 0 or v > 10 ** (m - 1)

    def test_rejects_bad_input(self):
        with pytest.raises(ConfigError):
            digit_magnitude([])
        with pytest.raises(ConfigError):
            digit_magnitude([0, 3])


class TestValueSetSurvey:
    def test_explicit_deviation(self):
        sv = value_set_survey(SequenceSpec.explicit((1, 8, 15)), 7, 10.0)
        row = next(r for r in sv.rows if r.p == 7)
        assert row.size == 3 and row.distinct == 1
        assert math.isclose(row.deviation, 2 / 3)

    def test_brute_force_cross_check(self):
        """fib 1..10, N = 10^3: every row against direct big-int reduction."""
        spec = SequenceSpec.fibonacci(1, 10)
        vals = spec.exact_values()
        sv = value_set_survey(spec, 1000, 10.0)
        assert len(sv.rows) == 168
        hits = 0
        for row in sv.rows:
            counts = brute_residues(vals, row.p)
            assert row.size == 10
            assert row.distinct == len(counts), row.p
            if (row.size - row.distinct) * 10 <= row.size:
                hits += 1
        assert sv.fraction == hits / 168

    def test_boundary_tie_counts_as_within(self):
        # size 10, distinct 9 -> deviation exactly 1/10
        spec = SequenceSpec.fibonacci(1, 10)
        sv = value_set_survey(spec, 1000, 10.0)
        tie_rows = [r for r in sv.rows if r.size - r.distinct == 1]
        assert tie_rows, "expected at least one single-collision prime"
        inside = sum(1 for r in sv.rows if (r.size - r.distinct) * 10 <= r.size)
        assert sv.fraction * len(sv.rows) == pytest.approx(inside)

    def test_rejects_bad_delta(self):
        with pytest.raises(ConfigError):
            value_set_survey(SequenceSpec.fibonacci(1, 5), 100, 0.0)


class TestFibEvenDistinctness:
    def test_window_below_z(self):
        assert order_of_appearance(199) == 22
        assert fib_even_distinctness(199, 2, 10)

    def test_collision_when_window_wraps(self):
        # F_{2n} mod 11 has period pi(11)=10 in n; a window longer than the
        # period must repeat
        assert not fib_even_distinctness(11, 0, 30)

    def test_brute_force_agreement(self):
        rng = random.Random(17)
        for _ in range(100):
            p = rng.choice([q for q in sieve_primes(300) if q > 2])
            lo = rng.randint(0, 20)
            hi = lo + rng.randint(1, 25)
            vals = [SequenceSpec.fibonacci_even(n, n).exact_values()[0] % p
                    for n in range(lo + 1, hi + 1)]
            assert fib_even_distinctness(p, lo, hi) == (len(set(vals)) == len(vals))

    def test_rejects_bad_range(self):
        with pytest.raises(ConfigError):
            fib_even_distinctness(7, 5, 5)
