import time
from dataclasses import dataclass
from typing import Callable, Dict, Optional

import pandas as pd
from loguru import logger

from ..analyzers.solvers import SolverStats, SolverTarget, solve_with_stats
from ..core import arith, combinatorics
from ..models.qseries_data import FunctionTable, SigmaKind
from ..utils.errors import DomainError, MissingParameterError, UnknownKeyError

ORACLES: Dict[SolverTarget, Callable[[int, Optional[int]], FunctionTable]] = {
    SolverTarget.P: lambda n, k: combinatorics.partition_table(n, "p"),
    SolverTarget.Q: lambda n, k: combinatorics.partition_table(n, "q"),
    SolverTarget.QQ: lambda n, k: combinatorics.partition_table(n, "qq"),
    SolverTarget.SIGMA: lambda n, k: arith.sigma_table(SigmaKind.ALL, n),
    SolverTarget.R_K: lambda n, k: arith.r_table(k, n),
}


@dataclass
class BenchResult:
    sequence: str
    max_n: int
    k: Optional[int]
    oracle_seconds: float
    recurrence_seconds: float
    identical: bool
    stats: SolverStats
    first_mismatch: Optional[int] = None

    def to_frame(self) -> pd.DataFrame:
        """One row per path; terms are recurrence terms evaluated"""
        return pd.DataFrame(
            [
                {"path": "oracle", "seconds": self.oracle_seconds, "terms": None, "max_terms_per_n": None},
                {"path": "recurrence", "seconds": self.recurrence_seconds,
                 "terms": self.stats.terms, "max_terms_per_n": self.stats.max_terms_per_n},
            ]
        ).set_index("path")

    def summary(self) -> str:
        label = self.sequence if self.k is None else f"{self.sequence}[k={self.k}]"
        verdict = "tables identical" if self.identical else f"tables differ (first n = {self.first_mismatch})"
        return f"{label} 0..{self.max_n}: {verdict}"


def bench(sequence: str, max_n: int, k: Optional[int] = None) -> BenchResult:
    """Time the recurrence solver against its oracle over 0..max_n and compare the tables"""
    try:
        target = SolverTarget(sequence)
    except ValueError:
        raise UnknownKeyError(
            f"bench covers {[t.value for t in SolverTarget]}, got '{sequence}'"
        ) from None
    if max_n < 0:
        raise DomainError(f"max_n must be >= 0, got {max_n}")
    if target == SolverTarget.R_K and k is None:
        raise MissingParameterError("bench r_k needs --k")

    started = time.perf_counter()
    oracle = ORACLES[target](max_n, k)
    oracle_seconds = time.perf_counter() - started

    started = time.perf_counter()
    recurrence, stats = solve_with_stats(target, max_n, k)
    recurrence_seconds = time.perf_counter() - started

    mismatches = [n for n in range(max_n + 1) if oracle.values[n] != recurrence.values[n]]
    result = BenchResult(
        sequence=target.value,
        max_n=max_n,
        k=k if target == SolverTarget.R_K else None,
        oracle_seconds=oracle_seconds,
        recurrence_seconds=recurrence_seconds,
        identical=not mismatches,
        stats=stats,
        first_mismatch=mismatches[0] if mismatches else None,
    )
    logger.info(
        f"bench {target.value} to {max_n}: oracle {oracle_seconds:.3f}s, "
        f"recurrence {recurrence_seconds:.3f}s, {stats.terms} terms"
    )
    if mismatches:
        logger.warning(f"bench {target.value}: tables differ at {len(mismatches)} n")
    return result
