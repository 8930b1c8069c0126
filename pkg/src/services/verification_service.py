import asyncio
import time
from dataclasses import dataclass, field
from typing import Dict, Iterable, List, Optional, Union

from loguru import logger

from ..analyzers.identities import IdentityEntry, catalog, entry_for, resolve_params, series_identity_check
from ..core.config import settings
from ..data_collectors.oracle_collector import OracleTableCollector
from ..models.identity_data import Failure, IdentityId, IdentityReport
from ..utils.errors import DomainError


@dataclass
class VerificationJob:
    """One (identity, parameters, range) unit of work for the pool"""
    identity: IdentityId
    n_lo: int
    n_hi: int
    k: Optional[int] = None
    r: Optional[int] = None
    literal: bool = False


def _as_identity(identity: Union[IdentityId, str]) -> IdentityId:
    return identity if isinstance(identity, IdentityId) else IdentityId.from_key(identity)


def verify_range(identity: Union[IdentityId, str], n_lo: int, n_hi: int, k: Optional[int] = None,
                 r: Optional[int] = None, literal: bool = False,
                 tables: Optional[OracleTableCollector] = None) -> IdentityReport:
    """Evaluate the residual of one catalog identity for every n in n_lo..n_hi.

    Never stops at a failing n: n below the identity's domain are recorded as
    skipped, an exception at n is recorded as a failure carrying its message.
    Parameter errors (unknown key, missing or invalid k/r) still raise.
    """
    identity = _as_identity(identity)
    entry = entry_for(identity)
    params = resolve_params(entry, k, r, literal)
    if n_hi < n_lo:
        raise DomainError(f"empty range {n_lo}..{n_hi}")
    logger.info(f"verifying {identity.value} {params or ''} on {n_lo}..{n_hi}")

    if entry.is_series:
        report = series_identity_check(identity, n_hi, n_lo, k, r)
        report.n_lo = n_lo
        report.skipped = list(range(n_lo, min(entry.n_start, n_hi + 1)))
        _log_outcome(report)
        return report

    started = time.perf_counter()
    if tables is None or tables.n_max < n_hi:
        tables = OracleTableCollector(max(n_hi, 1))
    report = IdentityReport(id=identity, n_lo=n_lo, n_hi=n_hi, params=params)
    for n in range(n_lo, n_hi + 1):
        if n < entry.n_start:
            report.skipped.append(n)
            continue
        try:
            lhs, rhs = entry.point(tables, n, params)
        except Exception as e:
            report.failures.append(Failure(n=n, lhs=None, rhs=None, error=f"{type(e).__name__}: {e}"))
            continue
        if lhs != rhs:
            report.failures.append(Failure(n=n, lhs=lhs, rhs=rhs))

    if identity == IdentityId.THM5C and n_hi >= 1:
        lhs, rhs = entry.point(tables, 1, params)
        holds = "holds" if lhs == rhs else f"fails ({lhs} != {rhs})"
        report.notes.append(f"stated for n >= 2; at n = 1 the identity {holds}")

    report.elapsed = time.perf_counter() - started
    _log_outcome(report)
    return report


def _log_outcome(report: IdentityReport) -> None:
    if report.skipped:
        logger.warning(f"{report.label}: skipped {len(report.skipped)} n outside the domain")
    if report.failures:
        logger.warning(f"{report.label}: FAILED at {len(report.failures)} n, first n = {report.failures[0].n}")
    else:
        logger.info(f"{report.label}: passed on {report.n_lo}..{report.n_hi} in {report.elapsed:.3f}s")


def _ceiling(entry: IdentityEntry, max_n: int) -> int:
    return min(max_n, settings.superlinear_max_n) if entry.superlinear else max_n


def _k_values(identity: IdentityId) -> List[int]:
    if identity == IdentityId.COR_RK_CONG:
        return list(settings.congruence_k_values)
    return list(settings.default_k_values)


def plan_jobs(identities: Iterable[IdentityId], max_n: int, k: Optional[int] = None,
              r: Optional[int] = None, literal: bool = False) -> List[VerificationJob]:
    """Expand identities into jobs; parametric ids without k/r run at the configured defaults"""
    jobs: List[VerificationJob] = []
    for identity in identities:
        entry = entry_for(identity)
        n_hi = _ceiling(entry, max_n)
        if n_hi < entry.n_start:
            logger.warning(f"{identity.value}: nothing to verify below n = {entry.n_start}")
            continue
        ks: List[Optional[int]] = [None]
        if "k" in entry.params:
            ks = [k] if k is not None else _k_values(identity)
        r_value = (r if r is not None else settings.default_r) if "r" in entry.params else None
        for k_value in ks:
            jobs.append(VerificationJob(identity, entry.n_start, n_hi, k_value, r_value, literal))
    return jobs


@dataclass
class CatalogVerifier:
    """Runs verification jobs on a bounded worker pool, one shared oracle per range"""
    max_n: int
    workers: int = field(default_factory=settings.worker_count)

    def __post_init__(self):
        self._collectors: Dict[int, OracleTableCollector] = {}

    def _tables_for(self, n_hi: int) -> OracleTableCollector:
        if n_hi not in self._collectors:
            self._collectors[n_hi] = OracleTableCollector(max(n_hi, 1))
        return self._collectors[n_hi]

    async def run(self, jobs: List[VerificationJob]) -> List[IdentityReport]:
        """Reports in job order regardless of completion order"""
        for job in jobs:
            self._tables_for(job.n_hi)
        semaphore = asyncio.Semaphore(max(self.workers, 1))

        async def verify_with_semaphore(job: VerificationJob):
            async with semaphore:
                return await asyncio.to_thread(
                    verify_range, job.identity, job.n_lo, job.n_hi, job.k, job.r, job.literal,
                    self._collectors[job.n_hi],
                )

        outcomes = await asyncio.gather(*[verify_with_semaphore(job) for job in jobs], return_exceptions=True)

        reports = []
        for job, outcome in zip(jobs, outcomes):
            if isinstance(outcome, Exception):
                logger.error(f"verification of {job.identity.value} raised: {outcome}")
                params = {name: value for name, value in (("k", job.k), ("r", job.r)) if value is not None}
                outcome = IdentityReport(
                    id=job.identity, n_lo=job.n_lo, n_hi=job.n_hi, params=params,
                    failures=[Failure(n=job.n_lo, lhs=None, rhs=None, error=f"{type(outcome).__name__}: {outcome}")],
                )
            reports.append(outcome)
        return reports


async def verify_all(identities: Optional[Iterable[Union[IdentityId, str]]] = None,
                     max_n: Optional[int] = None, k: Optional[int] = None, r: Optional[int] = None,
                     literal: bool = False) -> List[IdentityReport]:
    """Verify the given identities (default: the whole catalog) in catalog order"""
    max_n = settings.default_max_n if max_n is None else max_n
    if max_n < 0:
        raise DomainError(f"max_n must be >= 0, got {max_n}")
    chosen = set(catalog()) if identities is None else {_as_identity(i) for i in identities}
    ordered = [identity for identity in catalog() if identity in chosen]
    jobs = plan_jobs(ordered, max_n, k, r, literal)
    logger.info(f"verifying {len(jobs)} jobs up to n = {max_n} on {settings.worker_count()} workers")
    return await CatalogVerifier(max_n).run(jobs)
