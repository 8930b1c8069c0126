import threading
from math import comb
from typing import Callable, Dict, Optional, Tuple

from loguru import logger

from ..core import arith, combinatorics
from ..core.numbers import delta_s
from ..models.qseries_data import FunctionTable, Ground, PartSet, SigmaKind
from ..utils.errors import DomainError, MissingParameterError, UnknownKeyError

TableKey = Tuple[str, Optional[int], Optional[int]]


def generic_f(m: int) -> int:
    """An arbitrary integer weight with no arithmetic structure, for the generic bridge check"""
    return (31 * m * m + 7 * m) % 11 - 5


class OracleTableCollector:
    """Builds and caches the ground-truth tables the identity catalog draws from.

    Tables come from elementary computations only: partition DP, trial
    division, Moebius inversion of closed forms and theta convolution. They
    are built on first use and shared read-only afterwards.
    """

    # names that need a parameter
    NEEDS_K = {"r_k", "r_k_signed"}
    NEEDS_R = {"c_r", "c_psi_r", "Phi_r", "Phi_tau_r", "binom_n_r", "binom_tau_r"}

    def __init__(self, n_max: int):
        if n_max < 0:
            raise DomainError(f"n_max must be >= 0, got {n_max}")
        self.n_max = n_max
        self._tables: Dict[TableKey, FunctionTable] = {}
        self._lock = threading.Lock()
        self._builders: Dict[str, Callable[[Optional[int], Optional[int]], FunctionTable]] = {
            "p": lambda k, r: self._partitions()[0],
            "q": lambda k, r: self._partitions()[1],
            "qq": lambda k, r: self._partitions()[2],
            "p_psi": lambda k, r: combinatorics.relprime_table(self.table("p"), "p_psi"),
            "q_psi": lambda k, r: combinatorics.relprime_table(self.table("q"), "q_psi"),
            "c": lambda k, r: combinatorics.compositions_table(self.n_max),
            "c_r": lambda k, r: combinatorics.compositions_table(self.n_max, r),
            "c_psi": lambda k, r: combinatorics.relprime_table(self.table("c"), "c_psi"),
            "c_psi_r": lambda k, r: combinatorics.relprime_table(self.table("c_r", r=r), f"c_psi_{r}"),
            "s": lambda k, r: combinatorics.comp_with_parts(PartSet.squares(), self.n_max).renamed("s"),
            "t": lambda k, r: combinatorics.comp_with_parts(PartSet.triangulars(), self.n_max).renamed("t"),
            "sigma": lambda k, r: arith.sigma_table(SigmaKind.ALL, self.n_max),
            "sigma_odd": lambda k, r: arith.sigma_table(SigmaKind.ODD, self.n_max),
            "sigma_even": lambda k, r: arith.sigma_table(SigmaKind.EVEN, self.n_max),
            "sigma_alt": lambda k, r: arith.sigma_table(SigmaKind.ALTERNATING, self.n_max),
            "phi": lambda k, r: arith.tabulate("phi", arith.phi, self.n_max),
            "tau": lambda k, r: arith.tabulate("tau", arith.tau, self.n_max),
            "lambda": lambda k, r: arith.tabulate("lambda", arith.liouville, self.n_max),
            "mu": lambda k, r: arith.tabulate("mu", arith.mobius, self.n_max),
            "delta_s": lambda k, r: self._indexed("delta_s", delta_s),
            "r_k": lambda k, r: arith.r_table(k, self.n_max),
            "r_k_signed": lambda k, r: self._signed(self.table("r_k", k=k), f"signed_r_{k}"),
            "eta1": lambda k, r: arith.tabulate("eta1", lambda n: arith.eta(n, 1), self.n_max),
            "eta2": lambda k, r: arith.tabulate("eta2", lambda n: arith.eta(n, 2), self.n_max),
            "cube_signed": lambda k, r: arith.tabulate("cube_signed", lambda m: (-1) ** (m % 2) * m ** 3, self.n_max),
            "identity": lambda k, r: arith.tabulate("identity", lambda n: n, self.n_max),
            "ones": lambda k, r: arith.tabulate("ones", lambda n: 1, self.n_max),
            "generic_f": lambda k, r: arith.tabulate("generic_f", generic_f, self.n_max),
            "generic_g": lambda k, r: arith.tabulate(
                "generic_g", lambda n: arith.divisor_sum(self.table("generic_f"), n), self.n_max
            ),
            "Phi": lambda k, r: combinatorics.nathanson_tables(self.n_max),
            "Phi_r": lambda k, r: combinatorics.nathanson_tables(self.n_max, r),
            "Phi_tau": lambda k, r: combinatorics.nathanson_tables(self.n_max, over=Ground.DIVISOR_SET),
            "Phi_tau_r": lambda k, r: combinatorics.nathanson_tables(self.n_max, r, over=Ground.DIVISOR_SET),
            "subsets": lambda k, r: arith.tabulate("subsets", lambda n: 2 ** n - 1, self.n_max),
            "binom_n_r": lambda k, r: arith.tabulate(f"binom_n_{r}", lambda n: comb(n, r), self.n_max),
            "divisor_subsets": lambda k, r: arith.tabulate(
                "divisor_subsets", lambda n: 2 ** self.table("tau")[n] - 1, self.n_max
            ),
            "binom_tau_r": lambda k, r: arith.tabulate(
                f"binom_tau_{r}", lambda n: comb(self.table("tau")[n], r), self.n_max
            ),
        }

    def table(self, name: str, k: Optional[int] = None, r: Optional[int] = None) -> FunctionTable:
        """Cached table `name` on 0..n_max"""
        if name not in self._builders:
            raise UnknownKeyError(f"no oracle table named '{name}'")
        if name in self.NEEDS_K and k is None:
            raise MissingParameterError(f"table '{name}' needs k")
        if name in self.NEEDS_R and r is None:
            raise MissingParameterError(f"table '{name}' needs r")
        key = (name, k if name in self.NEEDS_K else None, r if name in self.NEEDS_R else None)
        cached = self._tables.get(key)
        if cached is not None:
            return cached
        built = self._builders[name](k, r)
        with self._lock:
            # a concurrent builder may have won; both results are identical
            cached = self._tables.setdefault(key, built)
        logger.debug(f"built oracle table {key} up to {self.n_max}")
        return cached

    def _partitions(self) -> Tuple[FunctionTable, FunctionTable, FunctionTable]:
        key = ("_partitions", None, None)
        cached = self._tables.get(key)
        if cached is None:
            p, q, qq = combinatorics.partition_tables(self.n_max)
            with self._lock:
                for table in (p, q, qq):
                    self._tables.setdefault((table.name, None, None), table)
                self._tables[key] = p
        return self._tables[("p", None, None)], self._tables[("q", None, None)], self._tables[("qq", None, None)]

    def _indexed(self, name: str, fn: Callable[[int], int]) -> FunctionTable:
        return FunctionTable(name, tuple(fn(n) for n in range(self.n_max + 1)))

    @staticmethod
    def _signed(table: FunctionTable, name: str) -> FunctionTable:
        """n -> (-1)^n table(n)"""
        return FunctionTable(name, tuple(-v if n % 2 else v for n, v in enumerate(table.values)))
