import pytest

from src.analyzers.identities import catalog
from src.core.config import settings
from src.models.identity_data import IdentityId
from src.services.verification_service import CatalogVerifier, VerificationJob, plan_jobs, verify_all, verify_range
from src.utils.errors import DomainError, MissingParameterError, UnknownKeyError


class TestVerifyRange:
    def test_eq5_sigma(self):
        report = verify_range("eq5-sigma", 1, 1000)
        assert report.passed
        assert (report.n_lo, report.n_hi) == (1, 1000)

    @pytest.mark.parametrize("identity, n_hi", [
        ("eq3-p", 1000), ("eq4-q", 1000), ("eq5-sigma", 1000),
        ("thm2a", 1000), ("thm2b", 1000),
        ("thm3a", 1000), ("thm3b", 1000), ("thm3c", 1000),
        ("thm4a", 500), ("thm4b", 500),
        ("thm5a", 1000), ("thm5b", 1000), ("thm5c", 1000),
    ])
    def test_full_range(self, identity, n_hi):
        report = verify_range(identity, 0, n_hi)
        assert report.failures == []
        assert report.passed
        assert report.n_hi == n_hi

    def test_thm_rk_k3(self):
        assert verify_range(IdentityId.THM_RK, 1, 300, k=3).passed

    def test_congruence_k5(self):
        report = verify_range(IdentityId.COR_RK_CONG, 1, 300, k=5)
        assert report.passed
        assert report.label == "cor-rk-cong[k=5]"

    def test_literal_thm4b_fails_at_two(self):
        report = verify_range(IdentityId.THM4B, 0, 200, literal=True)
        assert not report.passed
        residuals = {failure.n: failure.residual for failure in report.failures}
        assert residuals[2] == 3
        assert residuals[1] == 1
        assert 0 not in residuals

    def test_out_of_domain_n_are_skipped(self):
        report = verify_range(IdentityId.THM_MOBIUS, 0, 20)
        assert report.skipped == [0, 1]
        assert report.passed

    def test_thm5c_notes_n_equal_one(self):
        report = verify_range(IdentityId.THM5C, 1, 50)
        assert report.skipped == [1]
        assert report.passed
        assert any("n = 1" in note for note in report.notes)

    def test_series_identity_through_verify_range(self):
        report = verify_range(IdentityId.LEMMA_SIGMA_S, 0, 100)
        assert report.passed
        assert report.skipped == [0]

    def test_exceptions_become_failures(self):
        from src.data_collectors import oracle_collector

        class Exploding(oracle_collector.OracleTableCollector):
            def table(self, name, k=None, r=None):
                raise RuntimeError(f"no table {name}")

        report = verify_range(IdentityId.EQ3_P, 1, 5, tables=Exploding(5))
        assert len(report.failures) == 5
        assert all("RuntimeError" in failure.error for failure in report.failures)

    def test_parameter_errors_raise(self):
        with pytest.raises(MissingParameterError):
            verify_range(IdentityId.THM_RK, 1, 10)
        with pytest.raises(UnknownKeyError):
            verify_range("thm-nope", 1, 10)
        with pytest.raises(DomainError):
            verify_range(IdentityId.EQ3_P, 10, 1)


class TestPlanning:
    def test_superlinear_ids_are_capped(self):
        jobs = plan_jobs([IdentityId.THM_R2, IdentityId.EQ3_P], 1000)
        assert [(job.identity, job.n_hi) for job in jobs] == [
            (IdentityId.THM_R2, settings.superlinear_max_n),
            (IdentityId.EQ3_P, 1000),
        ]

    def test_parametric_defaults(self):
        jobs = plan_jobs([IdentityId.THM_RK, IdentityId.COR_RK_CONG, IdentityId.THM_CPSI_R], 50)
        rk = [job.k for job in jobs if job.identity == IdentityId.THM_RK]
        cong = [job.k for job in jobs if job.identity == IdentityId.COR_RK_CONG]
        assert rk == settings.default_k_values
        assert cong == settings.congruence_k_values
        assert [job.r for job in jobs if job.identity == IdentityId.THM_CPSI_R] == [settings.default_r]

    def test_explicit_k_overrides_defaults(self):
        jobs = plan_jobs([IdentityId.THM_RK, IdentityId.EQ3_P], 50, k=6)
        assert [(job.identity, job.k) for job in jobs] == [(IdentityId.THM_RK, 6), (IdentityId.EQ3_P, None)]

    def test_starts_at_domain(self):
        (job,) = plan_jobs([IdentityId.THM_MOBIUS], 10)
        assert job.n_lo == 2


class TestVerifyAll:
    @pytest.mark.asyncio
    async def test_whole_catalog_passes_in_order(self):
        reports = await verify_all(max_n=60)
        assert all(report.passed for report in reports), [r.label for r in reports if not r.passed]
        order = list(catalog())
        positions = [order.index(report.id) for report in reports]
        assert positions == sorted(positions)
        assert {report.id for report in reports} == set(order)

    @pytest.mark.asyncio
    async def test_single_worker(self):
        jobs = [VerificationJob(IdentityId.EQ4_Q, 0, 40), VerificationJob(IdentityId.THM2B, 0, 40)]
        reports = await CatalogVerifier(40, workers=1).run(jobs)
        assert [report.id for report in reports] == [IdentityId.EQ4_Q, IdentityId.THM2B]
        assert all(report.passed for report in reports)

    @pytest.mark.asyncio
    async def test_job_errors_become_failed_reports(self):
        jobs = [VerificationJob(IdentityId.THM_RK, 1, 10)]
        (report,) = await CatalogVerifier(10).run(jobs)
        assert not report.passed
        assert "MissingParameterError" in report.failures[0].error

    @pytest.mark.asyncio
    async def test_subset_of_ids(self):
        reports = await verify_all(["thm2a", IdentityId.EQ3_P], max_n=30)
        assert [report.id for report in reports] == [IdentityId.EQ3_P, IdentityId.THM2A]
