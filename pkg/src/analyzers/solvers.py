"""Sequences computed from Euler-type recurrences alone.

The solvers are seeded only with omega, delta_s and the base values
p(0) = q(0) = qq(0) = r_k(0) = 1; they never read an oracle table.
Each solver is a generator yielding f(0), f(1), ... as soon as each
value is known, so callers can stream rows without waiting for n_max.
"""

from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, Iterator, List, Optional, Tuple, Union

from loguru import logger

from ..core.numbers import delta_s, generalized_pentagonals, omega, squares_upto
from ..models.qseries_data import FunctionTable
from ..utils.errors import DomainError, InexactDivisionError, MissingParameterError, UnknownKeyError


class SolverTarget(Enum):
    P = "p"
    Q = "q"
    QQ = "qq"
    SIGMA = "sigma"
    R_K = "r_k"


@dataclass
class SolverStats:
    target: SolverTarget
    n_max: int
    terms: int = 0
    max_terms_per_n: int = 0
    per_n: List[int] = field(default_factory=list)

    def record(self, count: int) -> None:
        self.terms += count
        self.per_n.append(count)
        self.max_terms_per_n = max(self.max_terms_per_n, count)


def _iter_p(n_max: int, stats: SolverStats) -> Iterator[int]:
    """sum_k omega(k) p(n-k) = 0 for n >= 1"""
    pentagonals = generalized_pentagonals(n_max)
    p = [0] * (n_max + 1)
    p[0] = 1
    stats.record(0)
    yield 1
    for n in range(1, n_max + 1):
        total, count = 0, 0
        for j, sign in pentagonals:
            if j > n:
                break
            total -= sign * p[n - j]
            count += 1
        p[n] = total
        stats.record(count)
        yield total


def _iter_q(n_max: int, stats: SolverStats) -> Iterator[int]:
    """q(n) = omega(n) - 2 sum_{j>=1} (-1)^j q(n - j^2)"""
    squares = squares_upto(n_max)
    q = [0] * (n_max + 1)
    q[0] = 1
    stats.record(0)
    yield 1
    for n in range(1, n_max + 1):
        total, count = omega(n), 0
        for j2 in squares:
            if j2 > n:
                break
            total -= 2 * (-1) ** (j2 % 2) * q[n - j2]
            count += 1
        q[n] = total
        stats.record(count)
        yield total


def _iter_qq(n_max: int, stats: SolverStats) -> Iterator[int]:
    """(-1)^n qq(n) = 2 (-1)^n delta_s(n) - sum_{j>=1} omega(j) (-1)^(n-j) qq(n-j)"""
    pentagonals = generalized_pentagonals(n_max)
    qq = [0] * (n_max + 1)
    qq[0] = 1
    stats.record(0)
    yield 1
    for n in range(1, n_max + 1):
        signed, count = 2 * (-1) ** (n % 2) * delta_s(n), 0
        for j, sign in pentagonals:
            if j > n:
                break
            signed -= sign * (-1) ** ((n - j) % 2) * qq[n - j]
            count += 1
        qq[n] = -signed if n % 2 else signed
        stats.record(count)
        yield qq[n]


def _iter_sigma(n_max: int, stats: SolverStats) -> Iterator[int]:
    """sigma(n) = -n omega(n) - sum_{j>=1} omega(j) sigma(n-j), sigma(0) = 0"""
    pentagonals = generalized_pentagonals(n_max)
    sigma = [0] * (n_max + 1)
    stats.record(0)
    yield 0
    for n in range(1, n_max + 1):
        total, count = -n * omega(n), 0
        for j, sign in pentagonals:
            if j >= n:
                break
            total -= sign * sigma[n - j]
            count += 1
        sigma[n] = total
        stats.record(count)
        yield total


def _sigma_plus_odd(n_max: int) -> List[int]:
    """sigma(n) + sigma_o(n) from the square-indexed recurrence, value 0 at 0"""
    squares = squares_upto(n_max)
    u = [0] * (n_max + 1)
    for n in range(1, n_max + 1):
        total = 2 * (-1) ** ((n + 1) % 2) * n * delta_s(n)
        for j2 in squares:
            if j2 > n:
                break
            total -= 2 * (-1) ** (j2 % 2) * u[n - j2]
        u[n] = total
    return u


def _iter_r_k(n_max: int, k: int, stats: SolverStats) -> Iterator[int]:
    """r_k(n) = (-1)^(n+1) (k/n) sum_{i=1..n} u(i) (-1)^(n-i) r_k(n-i), u = sigma + sigma_o"""
    u = _sigma_plus_odd(n_max)
    r = [0] * (n_max + 1)
    r[0] = 1
    stats.record(0)
    yield 1
    for n in range(1, n_max + 1):
        total = sum(u[i] * (-1) ** ((n - i) % 2) * r[n - i] for i in range(1, n + 1))
        numerator = (-1) ** ((n + 1) % 2) * k * total
        value, remainder = divmod(numerator, n)
        if remainder:
            logger.error(f"r_{k}({n}): {numerator} is not divisible by {n}")
            raise InexactDivisionError(f"r_{k}({n}) = {numerator}/{n} is not an integer")
        r[n] = value
        stats.record(n)
        yield value


def _as_target(target: Union[SolverTarget, str]) -> SolverTarget:
    if isinstance(target, SolverTarget):
        return target
    try:
        return SolverTarget(target)
    except ValueError:
        raise UnknownKeyError(
            f"no recurrence solver for '{target}', expected one of {[t.value for t in SolverTarget]}"
        ) from None


def _table_name(target: SolverTarget, k: Optional[int]) -> str:
    return f"r_{k}" if target == SolverTarget.R_K else target.value


def iter_recurrence(target: Union[SolverTarget, str], n_max: int, k: Optional[int] = None,
                    stats: Optional[SolverStats] = None) -> Iterator[int]:
    """Lazy f(0), ..., f(n_max); arguments are checked here, before the first value is asked for"""
    target = _as_target(target)
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    if stats is None:
        stats = SolverStats(target=target, n_max=n_max)
    if target == SolverTarget.P:
        return _iter_p(n_max, stats)
    if target == SolverTarget.Q:
        return _iter_q(n_max, stats)
    if target == SolverTarget.QQ:
        return _iter_qq(n_max, stats)
    if target == SolverTarget.SIGMA:
        return _iter_sigma(n_max, stats)
    if k is None:
        raise MissingParameterError("the r_k solver needs k")
    if k < 1:
        raise DomainError(f"r_k solver needs k >= 1, got {k}")
    return _iter_r_k(n_max, k, stats)


def solve_with_stats(target: Union[SolverTarget, str], n_max: int,
                     k: Optional[int] = None) -> Tuple[FunctionTable, SolverStats]:
    """Recurrence solution plus the number of recurrence terms evaluated"""
    target = _as_target(target)
    stats = SolverStats(target=target, n_max=n_max)
    values = tuple(iter_recurrence(target, n_max, k, stats))
    name = _table_name(target, k)
    logger.debug(f"solved {name} to {n_max} with {stats.terms} recurrence terms")
    return FunctionTable(name, values), stats


def solve_via_recurrence(target: Union[SolverTarget, str], n_max: int,
                         k: Optional[int] = None) -> FunctionTable:
    return solve_with_stats(target, n_max, k)[0]


def solver_targets() -> Dict[str, SolverTarget]:
    return {t.value: t for t in SolverTarget}
