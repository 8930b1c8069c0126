import pytest

from src.analyzers.identities import (
    CATALOG, PRODUCT_IDS, catalog, entry_for, evaluate, product_identity_check, resolve_params, residual,
    series_identity_check, bridge_lhs, bridge_rhs,
)
from src.core.arith import mobius, phi, tabulate, tau
from src.core.config import settings
from src.core.numbers import delta_t, omega
from src.data_collectors.oracle_collector import OracleTableCollector
from src.models.identity_data import IdentityId
from src.utils.errors import DomainError, MissingParameterError, UnknownKeyError

PUBLISHED_KEYS = [
    "pent-product", "gauss-tri", "gauss-sq", "jacobi-triple", "eq3-p", "eq4-q", "eq5-sigma", "thm1-generic",
    "thm-phi", "thm-tau", "thm-lambda", "thm-mobius", "thm-ppsi", "thm-qpsi", "thm-cpsi", "thm-cpsi-r",
    "thm-r2", "thm-r4", "thm-r8", "thm-Phi", "thm-Phi-r", "thm-Phitau", "thm-Phitau-r", "thm2a", "thm2b",
    "thm3a", "thm3b", "thm3c", "thm4a", "thm4b", "thm5a", "thm5b", "thm5c", "thm-rk", "cor-rk-cong",
]

BRIDGE_IDS = [
    IdentityId.THM_SIGMA, IdentityId.THM_PHI, IdentityId.THM_TAU, IdentityId.THM_LAMBDA, IdentityId.THM_MOBIUS,
    IdentityId.THM_PPSI, IdentityId.THM_QPSI, IdentityId.THM_CPSI, IdentityId.THM_CPSI_R, IdentityId.THM_R2,
    IdentityId.THM_R4, IdentityId.THM_R8, IdentityId.THM_PHI_SUBSETS, IdentityId.THM_PHI_SUBSETS_R,
    IdentityId.THM_PHITAU, IdentityId.THM_PHITAU_R,
]

POINTWISE_IDS = [identity for identity, entry in CATALOG.items() if not entry.is_series]
SERIES_IDS = [identity for identity, entry in CATALOG.items() if entry.is_series]


@pytest.fixture(scope="module")
def tables():
    return OracleTableCollector(300)


def params_for(identity):
    entry = entry_for(identity)
    return {
        "k": settings.default_rk_k if "k" in entry.params else None,
        "r": settings.default_r if "r" in entry.params else None,
    }


class TestCatalog:
    def test_every_key_is_cataloged(self):
        keys = {identity.value for identity in catalog()}
        assert set(PUBLISHED_KEYS) <= keys

    def test_from_key(self):
        assert IdentityId.from_key("thm-Phitau-r") == IdentityId.THM_PHITAU_R
        with pytest.raises(UnknownKeyError):
            IdentityId.from_key("thm-unknown")

    def test_missing_parameters(self):
        with pytest.raises(MissingParameterError):
            resolve_params(entry_for(IdentityId.THM_RK))
        with pytest.raises(MissingParameterError):
            resolve_params(entry_for(IdentityId.THM_CPSI_R))
        with pytest.raises(DomainError):
            resolve_params(entry_for(IdentityId.THM_RK), k=0)

    def test_literal_only_applies_to_thm4b(self):
        assert resolve_params(entry_for(IdentityId.THM4B), literal=True) == {"literal": 1}
        assert resolve_params(entry_for(IdentityId.EQ3_P), literal=True) == {}


class TestPentagonalBridge:
    def test_lhs_examples(self):
        assert bridge_lhs(tabulate("tau", tau, 3), 3) == -1
        assert bridge_lhs(tabulate("sigma", lambda n: sum(d for d in range(1, n + 1) if n % d == 0), 4), 4) == 0
        g = tabulate("g", lambda n: 7 * n - 3, 5)
        assert bridge_lhs(g, 1) == g[1]

    def test_rhs_examples(self):
        assert bridge_rhs(tabulate("phi", phi, 3), 3) == 0
        assert bridge_rhs(tabulate("mu", mobius, 2), 2) == -1 == omega(1)
        f = tabulate("f", lambda n: 9 if n == 6 else 0, 6)
        assert bridge_rhs(f, 6) == 9

    @pytest.mark.parametrize("identity", BRIDGE_IDS, ids=lambda i: i.value)
    def test_bridge_pairs(self, identity, tables):
        p = params_for(identity)
        for n in range(max(1, entry_for(identity).n_start), 301):
            assert residual(identity, n, tables=tables, **p) == 0, n


class TestResiduals:
    def test_eq3_p(self):
        assert residual(IdentityId.EQ3_P, 5) == 0

    def test_thm2a_at_square(self):
        assert evaluate(IdentityId.THM2A, 4) == (2, 2)

    def test_thm5b(self):
        assert evaluate(IdentityId.THM5B, 3) == (3, 3 * delta_t(3))

    def test_thm4b_corrected_and_literal(self):
        assert residual(IdentityId.THM4B, 2) == 0
        assert residual(IdentityId.THM4B, 2, literal=True) == 3

    def test_out_of_domain(self):
        with pytest.raises(DomainError):
            residual(IdentityId.THM_MOBIUS, 1)
        with pytest.raises(DomainError):
            residual(IdentityId.THM5C, 1)

    def test_congruence_residual(self):
        assert residual(IdentityId.COR_RK_CONG, 7, k=5) == 0
        # gcd(5, 10) != 1 is vacuous
        assert evaluate(IdentityId.COR_RK_CONG, 10, k=5) == (0, 0)

    def test_series_ids_evaluate_pointwise(self):
        lhs, rhs = evaluate(IdentityId.GAUSS_TRI, 6)
        assert lhs == rhs == 1

    @pytest.mark.parametrize("identity", POINTWISE_IDS, ids=lambda i: i.value)
    def test_pointwise_identity_holds(self, identity, tables):
        entry = entry_for(identity)
        p = params_for(identity)
        for n in range(entry.n_start, 301):
            lhs, rhs = evaluate(identity, n, tables=tables, **p)
            assert lhs == rhs, (n, lhs, rhs)

    @pytest.mark.parametrize("k", range(1, 9))
    def test_rk_recurrence_for_each_k(self, k, tables):
        for n in range(1, 301):
            assert residual(IdentityId.THM_RK, n, k=k, tables=tables) == 0

    @pytest.mark.parametrize("k", range(2, 13))
    def test_rk_congruence_for_each_k(self, k, tables):
        for n in range(1, 301):
            assert residual(IdentityId.COR_RK_CONG, n, k=k, tables=tables) == 0


class TestSeriesIdentities:
    @pytest.mark.parametrize("identity", PRODUCT_IDS, ids=lambda i: i.value)
    def test_product_identities(self, identity):
        report = product_identity_check(identity, 2000)
        assert report.passed
        assert report.n_hi == 2000

    def test_gauss_tri_indicator(self):
        entry = entry_for(IdentityId.GAUSS_TRI)
        lhs, rhs = entry.series(10, {})
        assert [n for n in range(11) if rhs[n]] == [0, 1, 3, 6, 10]
        assert lhs == rhs

    def test_jacobi_triple_order_zero(self):
        report = product_identity_check(IdentityId.JACOBI_TRIPLE, 0)
        assert report.passed and report.n_lo == report.n_hi == 0

    def test_product_check_rejects_other_ids(self):
        with pytest.raises(DomainError):
            product_identity_check(IdentityId.JACOBI_MINUS, 10)

    @pytest.mark.parametrize("identity", SERIES_IDS, ids=lambda i: i.value)
    def test_series_identity_holds(self, identity):
        p = params_for(identity)
        assert series_identity_check(identity, 200, **p).passed

    @pytest.mark.parametrize("k", [1, 2, 3, 5, 8])
    def test_jacobi_power(self, k):
        assert series_identity_check(IdentityId.JACOBI_POWER, 120, k=k).passed

    @pytest.mark.parametrize("k", [1, 2, 7, 30])
    def test_lemma_omega_k(self, k):
        assert series_identity_check(IdentityId.LEMMA_OMEGA_K, 150, k=k).passed

    def test_pointwise_id_is_not_a_series(self):
        with pytest.raises(DomainError):
            series_identity_check(IdentityId.EQ3_P, 10)
