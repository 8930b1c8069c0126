import pytest
import sympy
from hypothesis import given, strategies as st

from src.core import arith
from src.core.arith import (
    divisor_list, divisor_sum, eta, liouville, mobius, mobius_invert, phi, r_jacobi, r_table, sieve_table,
    sigma_kind, sigma_table, tabulate, tau,
)
from src.core.numbers import delta_s
from src.core.series import lambert
from src.models.qseries_data import FunctionTable, SigmaKind
from src.utils.errors import DomainError, TableTooShortError


class TestDivisors:
    def test_divisor_list(self):
        assert divisor_list(1) == [1]
        assert divisor_list(12) == [1, 2, 3, 4, 6, 12]
        assert divisor_list(97) == [1, 97]

    def test_divisor_list_rejects_nonpositive(self):
        with pytest.raises(DomainError):
            divisor_list(0)

    @pytest.mark.parametrize("n", [1, 2, 36, 360, 997, 1024, 9973])
    def test_divisor_list_matches_sympy(self, n):
        assert divisor_list(n) == [int(d) for d in sympy.divisors(n)]


class TestSigma:
    def test_examples(self):
        assert sigma_kind(6, SigmaKind.ALL) == 12
        assert sigma_kind(6, "odd") == 4
        assert sigma_kind(6, "even") == 8
        assert sigma_kind(4, "alternating") == 1

    def test_n_one(self):
        for kind in ("all", "odd", "alternating"):
            assert sigma_kind(1, kind) == 1
        assert sigma_kind(1, "even") == 0

    def test_invalid_kind(self):
        with pytest.raises(DomainError):
            sigma_kind(6, "prime")

    def test_odd_plus_even_is_sigma(self):
        for n in range(1, 1001):
            assert sigma_kind(n, "odd") + sigma_kind(n, "even") == sigma_kind(n, "all")

    def test_alternating_equals_odd(self):
        for n in range(1, 1001):
            assert sigma_kind(n, "alternating") == sigma_kind(n, "odd")

    def test_sigma_matches_sympy(self):
        for n in range(1, 301):
            assert sigma_kind(n) == int(sympy.divisor_sigma(n, 1))

    def test_table_stores_zero_at_zero(self):
        assert sigma_table(SigmaKind.ALL, 6).values == (0, 1, 3, 4, 7, 6, 12)

    def test_lambert_alternating_series_is_sigma_s(self):
        identity = FunctionTable("identity", tuple(range(201)))
        assert lambert(identity, 200, alternating=True).coeffs == sigma_table("alternating", 200).values


class TestMultiplicative:
    def test_examples(self):
        assert phi(10) == 4
        assert tau(12) == 6
        assert liouville(12) == -1
        assert mobius(6) == 1

    def test_n_one(self):
        assert phi(1) == tau(1) == liouville(1) == mobius(1) == 1

    def test_nonpositive(self):
        for fn in (phi, tau, liouville, mobius):
            with pytest.raises(DomainError):
                fn(0)

    def test_match_sympy(self):
        for n in range(1, 301):
            assert phi(n) == int(sympy.totient(n))
            assert tau(n) == int(sympy.divisor_count(n))
            assert mobius(n) == int(sympy.mobius(n))
            assert liouville(n) == (-1) ** int(sympy.primeomega(n))

    def test_liouville_and_mobius_divisor_sums(self):
        lam = tabulate("lambda", liouville, 1000)
        mu = tabulate("mu", mobius, 1000)
        for n in range(1, 1001):
            assert divisor_sum(lam, n) == delta_s(n)
            assert divisor_sum(mu, n) == (1 if n == 1 else 0)


class TestEta:
    def test_examples(self):
        assert eta(5, 1) == 1
        assert eta(7, 1) == -1
        assert eta(8, 2) == 0
        assert eta(6, 2) == 6
        assert eta(1, 1) == 1

    def test_invalid_selector(self):
        with pytest.raises(DomainError):
            eta(5, 3)


class TestDivisorSumAndInversion:
    def test_divisor_sum_examples(self):
        phi_table = tabulate("phi", phi, 12)
        assert divisor_sum(phi_table, 12) == 12
        assert divisor_sum(tabulate("lambda", liouville, 9), 9) == 1
        assert divisor_sum(tabulate("mu", mobius, 1), 1) == 1

    def test_divisor_sum_table_too_short(self):
        with pytest.raises(TableTooShortError):
            divisor_sum(tabulate("phi", phi, 5), 6)

    def test_invert_identity_gives_phi(self):
        identity = tabulate("identity", lambda n: n, 100)
        assert mobius_invert(identity).values == tabulate("phi", phi, 100).values

    def test_invert_ones(self):
        ones = tabulate("ones", lambda n: 1, 20)
        assert mobius_invert(ones).values == (0, 1) + (0,) * 19

    def test_invert_partitions(self):
        p = FunctionTable("p", (1, 1, 2, 3, 5))
        assert mobius_invert(p)[4] == 3

    @given(st.lists(st.integers(min_value=-10**6, max_value=10**6), min_size=1, max_size=200))
    def test_round_trip(self, values):
        g = FunctionTable("g", (0,) + tuple(values))
        f = mobius_invert(g)
        for n in range(1, g.max_n + 1):
            assert divisor_sum(f, n) == g[n]


class TestSieve:
    @pytest.mark.parametrize("name", arith.SIEVE_NAMES)
    def test_sieve_matches_trial_division(self, name):
        oracle = {
            "sigma": lambda n: sigma_kind(n, "all"),
            "sigma_odd": lambda n: sigma_kind(n, "odd"),
            "sigma_even": lambda n: sigma_kind(n, "even"),
            "sigma_alt": lambda n: sigma_kind(n, "alternating"),
            "tau": tau,
            "phi": phi,
            "mu": mobius,
            "lambda": liouville,
        }[name]
        assert sieve_table(name, 500).values == tabulate(name, oracle, 500).values

    def test_fast_sigma_table(self):
        assert sigma_table("odd", 300, fast=True).values == sigma_table("odd", 300).values

    def test_unknown_sieve(self):
        with pytest.raises(DomainError):
            sieve_table("omega", 10)

    def test_empty_range(self):
        assert sieve_table("tau", 0).values == (0,)


class TestSquares:
    def test_r_table_examples(self):
        assert r_table(2, 5)[5] == 8
        assert r_table(4, 2)[2] == 24
        for k in range(1, 6):
            assert r_table(k, 0).values == (1,)

    def test_r_table_rejects_k(self):
        with pytest.raises(DomainError):
            r_table(0, 5)

    def test_r_jacobi_examples(self):
        assert r_jacobi(5, 2) == 8
        assert r_jacobi(2, 4) == 24
        assert r_jacobi(1, 8) == 16

    def test_r_jacobi_rejects_k(self):
        with pytest.raises(DomainError):
            r_jacobi(5, 3)

    @pytest.mark.parametrize("k", [2, 4, 8])
    def test_jacobi_formulas_match_oracle(self, k):
        table = r_table(k, 300)
        for n in range(1, 301):
            assert r_jacobi(n, k) == table[n]
