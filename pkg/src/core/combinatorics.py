"""Partition, composition and subset counts.

Each count has a fast table (dynamic programming or Moebius inversion) and,
for small n, an exhaustive enumeration oracle to check it against.
"""

from functools import reduce
from itertools import combinations
from math import comb, gcd
from typing import Iterator, List, Optional, Tuple

from loguru import logger

from .arith import divisor_list, mobius_invert, tabulate, tau
from .config import settings
from ..models.qseries_data import FunctionTable, Ground, PartSet, PartitionConstraint
from ..utils.errors import DomainError, EnumerationGuardError

COMPOSITION_ORACLE_MAX_N = 22


PARTITION_KINDS = ("p", "q", "qq")


def partition_table(n_max: int, kind: str = "p") -> FunctionTable:
    """One of p, q (distinct parts) or qq (distinct odd parts) on 0..n_max"""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    if kind not in PARTITION_KINDS:
        raise DomainError(f"partition kind must be one of {PARTITION_KINDS}, got '{kind}'")
    values = [1] + [0] * n_max
    for part in range(1, n_max + 1):
        if kind == "p":
            for n in range(part, n_max + 1):
                values[n] += values[n - part]
        elif kind == "q" or part % 2:
            # descending n uses each part at most once
            for n in range(n_max, part - 1, -1):
                values[n] += values[n - part]
    logger.debug(f"partition table {kind} built to {n_max}")
    return FunctionTable(kind, tuple(values))


def partition_tables(n_max: int) -> Tuple[FunctionTable, FunctionTable, FunctionTable]:
    """p, q (distinct parts) and qq (distinct odd parts) on 0..n_max"""
    p, q, qq = (partition_table(n_max, kind) for kind in PARTITION_KINDS)
    return p, q, qq


def _partitions(n: int, largest: int) -> Iterator[List[int]]:
    """Partitions of n into parts <= largest, parts non-increasing"""
    if n == 0:
        yield []
        return
    for part in range(min(n, largest), 0, -1):
        for rest in _partitions(n - part, part):
            yield [part] + rest


def _accepts(parts: List[int], constraint: PartitionConstraint) -> bool:
    if constraint.parts_count is not None and len(parts) != constraint.parts_count:
        return False
    if constraint.distinct and len(set(parts)) != len(parts):
        return False
    if constraint.odd_parts and any(a % 2 == 0 for a in parts):
        return False
    if constraint.coprime and parts and reduce(gcd, parts) != 1:
        return False
    return True


def enumerate_partitions_oracle(n: int, constraint: PartitionConstraint = PartitionConstraint()) -> int:
    """Count partitions of n satisfying `constraint` by generating every partition"""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n > settings.partition_oracle_max_n:
        raise EnumerationGuardError(
            f"partition enumeration limited to n <= {settings.partition_oracle_max_n}, got {n}"
        )
    return sum(1 for parts in _partitions(n, n) if _accepts(parts, constraint))


def _compositions(n: int, allowed: Optional[PartSet]) -> Iterator[List[int]]:
    if n == 0:
        yield []
        return
    for first in range(1, n + 1):
        if allowed is not None and not allowed.contains(first):
            continue
        for rest in _compositions(n - first, allowed):
            yield [first] + rest


def enumerate_compositions_oracle(n: int, parts: Optional[PartSet] = None,
                                  coprime: bool = False, parts_count: Optional[int] = None) -> int:
    """Count compositions of n (optionally restricted) by generating each one"""
    if n < 0:
        raise DomainError(f"n must be >= 0, got {n}")
    if n > COMPOSITION_ORACLE_MAX_N:
        raise EnumerationGuardError(
            f"composition enumeration limited to n <= {COMPOSITION_ORACLE_MAX_N}, got {n}"
        )
    count = 0
    for composition in _compositions(n, parts):
        if parts_count is not None and len(composition) != parts_count:
            continue
        if coprime and composition and reduce(gcd, composition) != 1:
            continue
        count += 1
    return count


def compositions_closed(n: int, r: Optional[int] = None) -> int:
    """c(n) = 2^(n-1), or c(n, r) = C(n-1, r-1)"""
    if n <= 0:
        raise DomainError(f"compositions_closed needs n >= 1, got {n}")
    if r is None:
        return 2 ** (n - 1)
    if r < 1:
        raise DomainError(f"part count r must be >= 1, got {r}")
    return comb(n - 1, r - 1)


def compositions_table(n_max: int, r: Optional[int] = None) -> FunctionTable:
    name = "c" if r is None else f"c_{r}"
    at_zero = 1 if r is None else 0
    return tabulate(name, lambda n: compositions_closed(n, r), n_max, at_zero=at_zero)


def relprime_table(g: FunctionTable, name: str = "") -> FunctionTable:
    """Relatively prime counterpart g_psi of a count g with g(n) = sum_{d|n} g_psi(d)"""
    return mobius_invert(g, name or f"{g.name}_psi")


def comp_with_parts(parts: PartSet, n_max: int) -> FunctionTable:
    """c_A(0..n_max): compositions with parts from A, c_A(0) = 1"""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    allowed = parts.members_upto(n_max)
    values = [1] + [0] * n_max
    for n in range(1, n_max + 1):
        values[n] = sum(values[n - a] for a in allowed if a <= n)
    return FunctionTable(f"c_{parts.kind.value}", tuple(values))


def _subset_rhs(n: int, r: Optional[int], over: Ground) -> int:
    size = n if over == Ground.GROUND_SET else tau(n)
    if r is None:
        return 2 ** size - 1
    return comb(size, r)


def nathanson_tables(n_max: int, r: Optional[int] = None,
                     over: Ground = Ground.GROUND_SET) -> FunctionTable:
    """Phi, Phi_r, Phi^tau or Phi^tau_r on 1..n_max by inverting their divisor sums"""
    if n_max < 0:
        raise DomainError(f"n_max must be >= 0, got {n_max}")
    base = "Phi" if over == Ground.GROUND_SET else "Phi_tau"
    name = base if r is None else f"{base}_{r}"
    rhs = tabulate(f"{name}_rhs", lambda n: _subset_rhs(n, r, over), n_max)
    return mobius_invert(rhs, name)


def subset_gcd_oracle(n: int, r: Optional[int] = None, over: Ground = Ground.GROUND_SET) -> int:
    """Count nonempty subsets (or r-subsets) whose gcd is coprime to n"""
    if n <= 0:
        raise DomainError(f"subset_gcd_oracle needs n >= 1, got {n}")
    if r is not None and r < 1:
        raise DomainError(f"subset size r must be >= 1, got {r}")
    ground = list(range(1, n + 1)) if over == Ground.GROUND_SET else divisor_list(n)
    if len(ground) > settings.subset_oracle_max_size:
        raise EnumerationGuardError(
            f"subset enumeration limited to ground sets of size <= "
            f"{settings.subset_oracle_max_size}, got {len(ground)}"
        )
    sizes = range(1, len(ground) + 1) if r is None else [r]
    count = 0
    for size in sizes:
        for subset in combinations(ground, size):
            if gcd(reduce(gcd, subset), n) == 1:
                count += 1
    return count
