"""Named sequences with two independent ways to compute each.

The `oracle` path is the elementary one (enumeration, trial division,
generating-function expansion); the `recurrence` path is the fast one
(Euler-type recurrence, sieve, closed form or Moebius inversion).
"""

import itertools
from dataclasses import dataclass, field
from enum import Enum
from typing import Callable, Dict, Iterable, Iterator, List, Optional

from loguru import logger

from ..analyzers.solvers import iter_recurrence, solve_via_recurrence
from ..core import arith, combinatorics
from ..core.numbers import delta_s, delta_t, omega
from ..core.series import indicator_series, product_expand, series_reciprocal, series_sub
from ..models.identity_data import OutputRecord, Provenance
from ..models.qseries_data import (
    EULER_PRODUCT, FunctionTable, Ground, PartitionConstraint, PartSet, Series, SigmaKind,
)
from ..utils.errors import DomainError, MissingParameterError, UnknownKeyError

Builder = Callable[[int, Optional[int], Optional[int]], FunctionTable]
# f(0), f(1), ... produced one value at a time
Stream = Callable[[int, Optional[int], Optional[int]], Iterable[int]]


class Method(Enum):
    ORACLE = "oracle"
    RECURRENCE = "recurrence"
    BOTH = "both"


@dataclass(frozen=True)
class SequenceDef:
    name: str
    start: int
    oracle: Builder
    recurrence: Builder
    needs_k: bool = False
    needs_r: bool = False
    description: str = ""
    stream: Optional[Stream] = None


def _from_list(name: str, values: List[int]) -> FunctionTable:
    return FunctionTable(name, tuple(values))


def _partition_oracle(kind: str) -> Builder:
    return lambda n_max, k, r: combinatorics.partition_table(n_max, kind)


def _enumerated_psi(name: str, constraint: PartitionConstraint) -> Builder:
    def build(n_max: int, k, r) -> FunctionTable:
        values = [0] + [combinatorics.enumerate_partitions_oracle(n, constraint) for n in range(1, n_max + 1)]
        return _from_list(name, values)
    return build


def _inverted(name: str, base: Callable[[int, Optional[int]], FunctionTable]) -> Builder:
    def build(n_max: int, k, r) -> FunctionTable:
        return combinatorics.relprime_table(base(n_max, r), name)
    return build


def _composition_gf(parts: PartSet, name: str) -> Builder:
    """1 / (1 - chi_A(q)) expanded with the series kernel"""
    def build(n_max: int, k, r) -> FunctionTable:
        chi = indicator_series(lambda a: 1 if parts.contains(a) else 0, n_max)
        return _from_list(name, list(series_reciprocal(series_sub(Series.one(n_max), chi)).coeffs))
    return build


def _compositions_by_count(n_max: int, r: int) -> FunctionTable:
    """c(n, r) by the Pascal-style DP c(n, r) = sum_{a>=1} c(n-a, r-1)"""
    rows = [[1] + [0] * n_max]
    for _ in range(r):
        prev = rows[-1]
        row = [0] * (n_max + 1)
        for n in range(1, n_max + 1):
            row[n] = sum(prev[n - a] for a in range(1, n + 1))
        rows.append(row)
    return _from_list(f"c_{r}", rows[r])


def _subset_oracle(name: str, over: Ground, with_r: bool) -> Builder:
    def build(n_max: int, k, r) -> FunctionTable:
        values = [0] + [combinatorics.subset_gcd_oracle(n, r if with_r else None, over)
                        for n in range(1, n_max + 1)]
        return _from_list(name, values)
    return build


def _solver(target: str) -> Builder:
    def build(n_max: int, k, r) -> FunctionTable:
        return solve_via_recurrence(target, n_max, k)
    return build


JACOBI_K = (2, 4, 8)


def _solver_stream(target: str) -> Stream:
    return lambda n_max, k, r: iter_recurrence(target, n_max, k)


def _r_k_stream(n_max: int, k, r) -> Iterable[int]:
    """Jacobi's divisor-sum formula for k in 2, 4, 8; the square-indexed solver otherwise"""
    if k in JACOBI_K:
        return itertools.chain((1,), (arith.r_jacobi(n, k) for n in range(1, n_max + 1)))
    return iter_recurrence("r_k", n_max, k)


def _r_k_fast(n_max: int, k, r) -> FunctionTable:
    return _from_list(f"r_{k}", list(_r_k_stream(n_max, k, r)))


def _sieve(name: str) -> Builder:
    return lambda n_max, k, r: arith.sieve_table(name, max(n_max, 0))


def _trial(name: str, fn: Callable[[int], int]) -> Builder:
    return lambda n_max, k, r: arith.tabulate(name, fn, n_max)


def _indexed(name: str, fn: Callable[[int], int]) -> Builder:
    return lambda n_max, k, r: _from_list(name, [fn(n) for n in range(n_max + 1)])


def _enumerated_indicator(name: str, generator: Callable[[int], int]) -> Builder:
    """Indicator of {generator(j) : j >= 0}"""
    def build(n_max: int, k, r) -> FunctionTable:
        values = [0] * (n_max + 1)
        j = 0
        while generator(j) <= n_max:
            values[generator(j)] = 1
            j += 1
        return _from_list(name, values)
    return build


def _registry() -> Dict[str, SequenceDef]:
    distinct = PartitionConstraint(distinct=True, coprime=True)
    defs = [
        SequenceDef("p", 0, _partition_oracle("p"), _solver("p"), stream=_solver_stream("p"),
                    description="partitions"),
        SequenceDef("q", 0, _partition_oracle("q"), _solver("q"), stream=_solver_stream("q"),
                    description="partitions into distinct parts"),
        SequenceDef("qq", 0, _partition_oracle("qq"), _solver("qq"), stream=_solver_stream("qq"),
                    description="partitions into distinct odd parts"),
        SequenceDef("p_psi", 1, _enumerated_psi("p_psi", PartitionConstraint(coprime=True)),
                    _inverted("p_psi", lambda n, r: combinatorics.partition_table(n, "p")),
                    description="relatively prime partitions"),
        SequenceDef("q_psi", 1, _enumerated_psi("q_psi", distinct),
                    _inverted("q_psi", lambda n, r: combinatorics.partition_table(n, "q")),
                    description="relatively prime distinct partitions"),
        SequenceDef("c", 0,
                    lambda n, k, r: combinatorics.comp_with_parts(PartSet.explicit(range(1, n + 1)), n).renamed("c"),
                    lambda n, k, r: combinatorics.compositions_table(n), description="compositions"),
        SequenceDef("c_r", 1, lambda n, k, r: _compositions_by_count(n, r),
                    lambda n, k, r: combinatorics.compositions_table(n, r), needs_r=True,
                    description="compositions with exactly r parts"),
        SequenceDef("c_psi", 1,
                    lambda n, k, r: _from_list("c_psi", [0] + [
                        combinatorics.enumerate_compositions_oracle(m, coprime=True) for m in range(1, n + 1)]),
                    _inverted("c_psi", lambda n, r: combinatorics.compositions_table(n)),
                    description="relatively prime compositions"),
        SequenceDef("c_psi_r", 1,
                    lambda n, k, r: _from_list(f"c_psi_{r}", [0] + [
                        combinatorics.enumerate_compositions_oracle(m, coprime=True, parts_count=r)
                        for m in range(1, n + 1)]),
                    _inverted("c_psi_r", lambda n, r: combinatorics.compositions_table(n, r)), needs_r=True,
                    description="relatively prime compositions with exactly r parts"),
        SequenceDef("s", 0, _composition_gf(PartSet.squares(), "s"),
                    lambda n, k, r: combinatorics.comp_with_parts(PartSet.squares(), n).renamed("s"),
                    description="compositions into squares"),
        SequenceDef("t", 0, _composition_gf(PartSet.triangulars(), "t"),
                    lambda n, k, r: combinatorics.comp_with_parts(PartSet.triangulars(), n).renamed("t"),
                    description="compositions into triangular numbers"),
        SequenceDef("sigma", 1, lambda n, k, r: arith.sigma_table(SigmaKind.ALL, n), _solver("sigma"),
                    stream=_solver_stream("sigma"),
                    description="sum of divisors"),
        SequenceDef("sigma_odd", 1, lambda n, k, r: arith.sigma_table(SigmaKind.ODD, n), _sieve("sigma_odd"),
                    description="sum of odd divisors"),
        SequenceDef("sigma_even", 1, lambda n, k, r: arith.sigma_table(SigmaKind.EVEN, n), _sieve("sigma_even"),
                    description="sum of even divisors"),
        SequenceDef("sigma_alt", 1, lambda n, k, r: arith.sigma_table(SigmaKind.ALTERNATING, n),
                    _sieve("sigma_alt"), description="alternating divisor sum sigma_s"),
        SequenceDef("phi", 1, _trial("phi", arith.phi), _sieve("phi"), description="Euler totient"),
        SequenceDef("tau", 1, _trial("tau", arith.tau), _sieve("tau"), description="number of divisors"),
        SequenceDef("lambda", 1, _trial("lambda", arith.liouville), _sieve("lambda"), description="Liouville"),
        SequenceDef("mu", 1, _trial("mu", arith.mobius), _sieve("mu"), description="Moebius"),
        SequenceDef("omega", 0, lambda n, k, r: _from_list("omega", list(product_expand(EULER_PRODUCT, n).coeffs)),
                    _indexed("omega", omega), description="pentagonal signs"),
        SequenceDef("delta_s", 0, _enumerated_indicator("delta_s", lambda j: j * j), _indexed("delta_s", delta_s),
                    description="square indicator"),
        SequenceDef("delta_t", 0, _enumerated_indicator("delta_t", lambda j: j * (j + 1) // 2),
                    _indexed("delta_t", delta_t), description="triangular indicator"),
        SequenceDef("r_k", 0, lambda n, k, r: arith.r_table(k, n), _r_k_fast,
                    stream=_r_k_stream, needs_k=True,
                    description="representations as a sum of k squares"),
        SequenceDef("Phi", 1, _subset_oracle("Phi", Ground.GROUND_SET, False),
                    lambda n, k, r: combinatorics.nathanson_tables(n), description="Nathanson Phi"),
        SequenceDef("Phi_r", 1, _subset_oracle("Phi_r", Ground.GROUND_SET, True),
                    lambda n, k, r: combinatorics.nathanson_tables(n, r), needs_r=True,
                    description="Nathanson Phi_r"),
        SequenceDef("Phi_tau", 1, _subset_oracle("Phi_tau", Ground.DIVISOR_SET, False),
                    lambda n, k, r: combinatorics.nathanson_tables(n, over=Ground.DIVISOR_SET),
                    description="Phi over the divisors of n"),
        SequenceDef("Phi_tau_r", 1, _subset_oracle("Phi_tau_r", Ground.DIVISOR_SET, True),
                    lambda n, k, r: combinatorics.nathanson_tables(n, r, over=Ground.DIVISOR_SET),
                    needs_r=True, description="Phi_r over the divisors of n"),
    ]
    return {d.name: d for d in defs}


SEQUENCES: Dict[str, SequenceDef] = _registry()


def sequence_names() -> List[str]:
    return list(SEQUENCES)


def get_sequence(name: str) -> SequenceDef:
    if name not in SEQUENCES:
        raise UnknownKeyError(f"unknown sequence '{name}', expected one of {sequence_names()}")
    return SEQUENCES[name]


@dataclass
class ComputeResult:
    """Rows of one compute run.

    A streamed recurrence is not tabulated up front: `records()` yields
    each row as the solver produces it and the finished table lands in
    `recurrence` once the stream is exhausted. `mismatches` drains any
    remaining stream first.
    """
    definition: SequenceDef
    method: Method
    oracle: Optional[FunctionTable]
    recurrence: Optional[FunctionTable]
    pending: Optional[Iterator[int]] = field(default=None, repr=False)
    _streamed: List[int] = field(default_factory=list, repr=False)

    @property
    def streaming(self) -> bool:
        return self.pending is not None

    def _recurrence_values(self) -> Iterator[int]:
        if self.pending is None:
            yield from self.recurrence.values
            return
        for value in self.pending:
            self._streamed.append(value)
            yield value
        self.pending = None
        self.recurrence = FunctionTable(self.definition.name, tuple(self._streamed))
        self.log_mismatches()

    @property
    def mismatches(self) -> List[int]:
        if self.streaming:
            for _ in self._recurrence_values():
                pass
        if self.oracle is None or self.recurrence is None:
            return []
        start = self.definition.start
        return [n for n in range(start, len(self.oracle)) if self.oracle[n] != self.recurrence[n]]

    def log_mismatches(self) -> None:
        mismatches = self.mismatches
        if mismatches:
            logger.warning(f"{self.definition.name}: oracle and recurrence disagree at n = {mismatches[:10]}")

    def records(self) -> Iterator[OutputRecord]:
        key = self.definition.name
        start = self.definition.start
        if self.method == Method.ORACLE:
            for n in range(start, len(self.oracle)):
                yield OutputRecord.from_values(key, n, self.oracle[n], Provenance.ORACLE)
            return
        for n, value in enumerate(self._recurrence_values()):
            if n < start:
                continue
            if self.method == Method.BOTH:
                yield OutputRecord.from_values(key, n, value, Provenance.BOTH, value_oracle=self.oracle[n])
            else:
                yield OutputRecord.from_values(key, n, value, Provenance.RECURRENCE)


class SequenceService:
    def validate(self, name: str, k: Optional[int], r: Optional[int]) -> SequenceDef:
        definition = get_sequence(name)
        if definition.needs_k:
            if k is None:
                raise MissingParameterError(f"sequence '{name}' needs --k")
            if k < 1:
                raise DomainError(f"k must be >= 1, got {k}")
        if definition.needs_r:
            if r is None:
                raise MissingParameterError(f"sequence '{name}' needs --r")
            if r < 1:
                raise DomainError(f"r must be >= 1, got {r}")
        return definition

    def compute(self, name: str, max_n: int, method: Method = Method.RECURRENCE,
                k: Optional[int] = None, r: Optional[int] = None) -> ComputeResult:
        """Oracle tables are built here; a recurrence with a stream is left lazy for `records()`"""
        definition = self.validate(name, k, r)
        if max_n < 0:
            raise DomainError(f"max_n must be >= 0, got {max_n}")
        logger.info(f"computing {name} to {max_n} via {method.value}")
        oracle = recurrence = pending = None
        if method in (Method.ORACLE, Method.BOTH):
            oracle = definition.oracle(max_n, k, r)
        if method in (Method.RECURRENCE, Method.BOTH):
            if definition.stream is not None:
                pending = iter(definition.stream(max_n, k, r))
            else:
                recurrence = definition.recurrence(max_n, k, r)
        result = ComputeResult(definition, method, oracle, recurrence, pending)
        if not result.streaming:
            result.log_mismatches()
        return result
