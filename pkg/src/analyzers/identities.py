"""The identity catalog: one executable residual per cataloged identity.

Pointwise identities evaluate LHS and RHS at a single n from oracle tables.
Series identities expand both sides as truncated power series and compare
coefficientwise. In every open-ended sum a sequence at a negative argument
counts as 0, and sigma-type values at 0 are 0.
"""

import time
from dataclasses import dataclass
from math import gcd
from typing import Callable, Dict, List, Optional, Tuple

from loguru import logger

from ..core.numbers import (
    delta_s, delta_t, generalized_pentagonals, omega, omega_k_table, omega_prime, squares_upto,
)
from ..core.series import (
    indicator_series, lambert, product_expand, q_dlog, series_mul, series_neg, series_pow, series_reciprocal,
    series_sub, substitute_neg, table_series,
)
from ..data_collectors.oracle_collector import OracleTableCollector
from ..models.identity_data import Failure, IdentityId, IdentityReport
from ..models.qseries_data import (
    DISTINCT_PRODUCT, EULER_PRODUCT, FunctionTable, ProductFactor, ProductSpec, Series,
)
from ..utils.errors import DomainError, MissingParameterError

Pair = Tuple[int, int]


# ---------------------------------------------------------------------------
# Pentagonal bridge: sum g(k) omega(n-k) = sum f(m) omega_m(n-m) when g = divisor_sum(f)
# ---------------------------------------------------------------------------

def bridge_lhs(g: FunctionTable, n: int) -> int:
    """sum_{k=1..n} g(k) omega(n-k); only pentagonal n-k contribute"""
    if n < 1:
        return 0
    g.require(n)
    total = g[n]  # k = n, omega(0) = 1
    for j, sign in generalized_pentagonals(n - 1):
        total += sign * g[n - j]
    return total


def _omega_k_row(m: int, n: int) -> Tuple[int, ...]:
    # rows are cached per power-of-two size so a verification run reuses them
    size = 64
    while size < n:
        size *= 2
    return omega_k_table(m, size)


def bridge_rhs(f: FunctionTable, n: int) -> int:
    """sum_{m=1..n} f(m) omega_m(n-m)"""
    if n < 1:
        return 0
    f.require(n)
    total = 0
    for m in range(1, n + 1):
        fm = f[m]
        if fm:
            total += fm * _omega_k_row(m, n)[n - m]
    return total


# ---------------------------------------------------------------------------
# Catalog entries
# ---------------------------------------------------------------------------

PointFn = Callable[[OracleTableCollector, int, Dict[str, int]], Pair]
SeriesFn = Callable[[int, Dict[str, int]], Tuple[Series, Series]]


@dataclass(frozen=True)
class IdentityEntry:
    id: IdentityId
    title: str
    n_start: int = 1
    point: Optional[PointFn] = None
    series: Optional[SeriesFn] = None
    superlinear: bool = False
    params: Tuple[str, ...] = ()

    @property
    def is_series(self) -> bool:
        return self.series is not None


def _bridge(g_name: str, f_name: str, g_params: Tuple[str, ...] = (), f_params: Tuple[str, ...] = (),
            f_scale: int = 1) -> PointFn:
    """Bridge residual for g = divisor_sum(f_scale * f)"""
    def point(tables: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
        g = tables.table(g_name, **{p: params[p] for p in g_params})
        f = tables.table(f_name, **{p: params[p] for p in f_params})
        return bridge_lhs(g, n), f_scale * bridge_rhs(f, n)
    return point


def _eq3_p(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    p = t.table("p")
    return sum(omega(k) * p[n - k] for k in range(n + 1)), 0


def _eq4_q(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    q = t.table("q")
    return sum(omega(k) * q[n - k] for k in range(n + 1)), omega_prime(n)


def _eq5_sigma(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    sigma = t.table("sigma")
    return sum(sigma[k] * omega(n - k) for k in range(1, n + 1)), -n * omega(n)


def _thm_mobius(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    return omega(n - 1), bridge_rhs(t.table("mu"), n)


def _thm_ppsi(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    return -omega(n), bridge_rhs(t.table("p_psi"), n)


def _thm_qpsi(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    return bridge_rhs(t.table("q_psi"), n), -omega(n) + omega_prime(n)


def _thm2a(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    qq = t.table("qq")
    lhs = sum((-1) ** k * qq[k] * omega(n - k) for k in range(n + 1))
    if n == 0:
        return lhs, 1
    return lhs, 2 * (-1) ** n * delta_s(n)


def _thm2b(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    q = t.table("q")
    lhs = q[n] + 2 * sum((-1) ** (j2 % 2) * q[n - j2] for j2 in squares_upto(n))
    return lhs, omega(n)


def _thm3a(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    q = t.table("q")
    return sum(q[n - 2 * k] * omega(k) for k in range(n // 2 + 1)), delta_t(n)


def _thm3b(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    p, q = t.table("p"), t.table("q")
    return sum(p[k] * delta_t(n - 2 * k) for k in range(n // 2 + 1)), q[n]


def _thm3c(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    qq = t.table("qq")
    return sum((-1) ** k * qq[k] * delta_t(n - k) for k in range(n + 1)), omega_prime(n)


def _thm4a(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    s, q = t.table("s"), t.table("q")
    lhs = sum((-1) ** k * s[k] * (3 * q[n - k] - omega(n - k)) for k in range(n + 1))
    return lhs, 2 * q[n]


def _thm4b(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    """Compositions into triangular parts against odd distinct partitions.

    The printed form subtracts omega'(n) inside the sum; expanding Gauss's
    triangular identity gives omega'(n-k). `literal=1` evaluates the printed form.
    """
    tri, qq = t.table("t"), t.table("qq")
    literal = bool(params.get("literal"))
    lhs = 0
    for k in range(n + 1):
        shift = omega_prime(n) if literal else omega_prime(n - k)
        lhs += tri[k] * (2 * (-1) ** (n - k) * qq[n - k] - shift)
    return lhs, (-1) ** n * qq[n]


def _square_weighted(u: FunctionTable, n: int) -> int:
    """u(n) + 2 sum_{k>=1} (-1)^k delta_s(k) u(n-k), with u(0) = 0"""
    total = u.at(n)
    for j2 in squares_upto(n):
        total += 2 * (-1) ** (j2 % 2) * u.at(n - j2)
    return total


def _sigma_pair(t: OracleTableCollector, second: str) -> FunctionTable:
    sigma, other = t.table("sigma"), t.table(second)
    return FunctionTable(f"sigma+{second}", tuple(a + b for a, b in zip(sigma.values, other.values)))


def _thm5a(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    return _square_weighted(_sigma_pair(t, "sigma_odd"), n), 2 * (-1) ** (n + 1) * n * delta_s(n)


def _thm5b(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    odd, even = t.table("sigma_odd"), t.table("sigma_even")
    lhs = sum((odd[k] - even[k]) * delta_t(n - k) for k in range(1, n + 1))
    return lhs, n * delta_t(n)


def _thm5c(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    return _square_weighted(_sigma_pair(t, "sigma_alt"), n), 2 * (-1) ** (n + 1) * n * delta_s(n)


def _thm_rk(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    k = params["k"]
    rk = t.table("r_k", k=k)
    u = _sigma_pair(t, "sigma_odd")
    lhs = k * sum(u[i] * (-1) ** ((n - i) % 2) * rk[n - i] for i in range(1, n + 1))
    return lhs, (-1) ** (n + 1) * n * rk[n]


def _cor_rk_cong(t: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
    k = params["k"]
    if gcd(k, n) != 1:
        return 0, 0
    return t.table("r_k", k=k)[n] % k, 0


# --- series identities ------------------------------------------------------

def _theta_plus(order: int) -> Series:
    """1 + 2 sum delta_s(m) q^m"""
    return indicator_series(lambda m: 1 if m == 0 else 2 * delta_s(m), order)


def _theta_minus(order: int) -> Series:
    """1 + 2 sum (-1)^m delta_s(m) q^m, the theta series at -q"""
    return substitute_neg(_theta_plus(order))


JACOBI_TRIPLE_PRODUCT = ProductSpec.of(
    ProductFactor(stride=2, sign=-1),
    ProductFactor(stride=2, offset=-1, sign=1, exponent=2),
)


def _pent_product(order: int, params: Dict[str, int]) -> Tuple[Series, Series]:
    return product_expand(EULER_PRODUCT, order), indicator_series(omega, order)


def _gauss_tri(order: int, params: Dict[str, int]) -> Tuple[Series, Series]:
    spec = ProductSpec.of(
        ProductFactor(stride=2, sign=-1),
        ProductFactor(stride=2, offset=-1, sign=-1, exponent=-1),
    )
    return product_expand(spec, order), indicator_series(delta_t, order)


def _gauss_sq(order: int, params: Dict[str, int]) -> Tuple[Series, Series]:
    spec = ProductSpec.of(
        ProductFactor(stride=1, sign=-1),
        ProductFactor(stride=1, sign=1, exponent=-1),
    )
    return product_expand(spec, order), _theta_minus(order)


def _jacobi_triple(order: int, params: Dict[str, int]) -> Tuple[Series, Series]:
    return product_expand(JACOBI_TRIPLE_PRODUCT, order), _theta_plus(order)


def _jacobi_minus(order: int, params: Dict[str, int]) -> Tuple[Series, Series]:
    spec = ProductSpec.of(
        ProductFactor(stride=1, sign=-1),
        ProductFactor(stride=2, offset=-1, sign=-1),
    )
    return product_expand(spec, order), _theta_minus(order)


def _euler_odd_distinct(order: int, params: Dict[str, int]) -> Tuple[Series, Series]:
    odd_inverse = ProductSpec.of(ProductFactor(stride=2, offset=-1, sign=-1, exponent=-1))
    return product_expand(DISTINCT_PRODUCT, order), product_expand(odd_inverse, order)


def _jacobi_power(order: int, params: Dict[str, int]) -> Tuple[Series, Series]:
    from ..core.arith import r_table
    k = params["k"]
    lhs = series_pow(product_expand(JACOBI_TRIPLE_PRODUCT, order), k)
    return lhs, Series(r_table(k, order).values)


def _lemma_omega_k(order: int, params: Dict[str, int]) -> Tuple[Series, Series]:
    k = params["k"]
    one_minus = series_sub(Series.one(order), Series.monomial(k, order))
    lhs = series_mul(product_expand(EULER_PRODUCT, order), series_reciprocal(one_minus))
    return lhs, Series(omega_k_table(k, order))


def _lemma_sigma_s(order: int, params: Dict[str, int]) -> Tuple[Series, Series]:
    from ..core.arith import sigma_table
    identity = FunctionTable("identity", tuple(range(order + 1)))
    return lambert(identity, order, alternating=True), Series(sigma_table("alternating", order).values)


def _dlog_sigma(order: int, params: Dict[str, int]) -> Tuple[Series, Series]:
    """q d/dq log prod (1-q^n) = -sum sigma(n) q^n"""
    from ..core.arith import sigma_table
    return q_dlog(product_expand(EULER_PRODUCT, order)), series_neg(table_series(sigma_table("all", order)))


def _bridge_rk(k: int, f_name: str, f_scale: int, signed: bool = False) -> PointFn:
    def point(tables: OracleTableCollector, n: int, params: Dict[str, int]) -> Pair:
        g = tables.table("r_k_signed" if signed else "r_k", k=k)
        return bridge_lhs(g, n), f_scale * bridge_rhs(tables.table(f_name), n)
    return point


def _entries() -> List[IdentityEntry]:
    I = IdentityId
    return [
        IdentityEntry(I.PENT_PRODUCT, "prod (1-q^n) = sum omega(m) q^m", n_start=0, series=_pent_product),
        IdentityEntry(I.GAUSS_TRI, "prod (1-q^2m)/(1-q^(2m-1)) = sum q^(n(n+1)/2)", n_start=0, series=_gauss_tri),
        IdentityEntry(I.GAUSS_SQ, "prod (1-q^m)/(1+q^m) = sum (-1)^n q^(n^2)", n_start=0, series=_gauss_sq),
        IdentityEntry(I.JACOBI_TRIPLE, "prod (1-q^2n)(1+q^(2n-1))^2 = 1 + 2 sum q^(m^2)", n_start=0,
                      series=_jacobi_triple),
        IdentityEntry(I.JACOBI_MINUS, "prod (1-q^n)(1-q^(2n-1)) = 1 + 2 sum (-1)^m q^(m^2)", n_start=0,
                      series=_jacobi_minus),
        IdentityEntry(I.EULER_ODD_DISTINCT, "prod (1+q^m) = 1/prod (1-q^(2m-1))", n_start=0,
                      series=_euler_odd_distinct),
        IdentityEntry(I.JACOBI_POWER, "(jacobi triple product)^k = sum r_k(m) q^m", n_start=0,
                      series=_jacobi_power, superlinear=True, params=("k",)),
        IdentityEntry(I.LEMMA_OMEGA_K, "prod (1-q^n)/(1-q^k) = sum omega_k(m) q^m", n_start=0,
                      series=_lemma_omega_k, params=("k",)),
        IdentityEntry(I.LEMMA_SIGMA_S, "sum n q^n/(1+q^n) = sum sigma_s(n) q^n", n_start=1,
                      series=_lemma_sigma_s),
        IdentityEntry(I.DLOG_SIGMA, "q d/dq log prod (1-q^n) = -sum sigma(n) q^n", n_start=0,
                      series=_dlog_sigma),

        IdentityEntry(I.EQ3_P, "sum omega(k) p(n-k) = 0", point=_eq3_p),
        IdentityEntry(I.EQ4_Q, "sum omega(k) q(n-k) = omega'(n)", n_start=0, point=_eq4_q),
        IdentityEntry(I.EQ5_SIGMA, "sum sigma(k) omega(n-k) = -n omega(n)", point=_eq5_sigma),

        IdentityEntry(I.THM1_GENERIC, "Pentagonal bridge for an arbitrary integer weight f",
                      point=_bridge("generic_g", "generic_f")),
        IdentityEntry(I.THM_SIGMA, "Pentagonal bridge with f(m) = m, g = sigma", point=_bridge("sigma", "identity")),
        IdentityEntry(I.THM_PHI, "Pentagonal bridge with f = phi, g(n) = n", point=_bridge("identity", "phi")),
        IdentityEntry(I.THM_TAU, "Pentagonal bridge with f = 1, g = tau", point=_bridge("tau", "ones")),
        IdentityEntry(I.THM_LAMBDA, "Pentagonal bridge with f = lambda, g = delta_s", point=_bridge("delta_s", "lambda")),
        IdentityEntry(I.THM_MOBIUS, "omega(n-1) = sum mu(m) omega_m(n-m)", n_start=2, point=_thm_mobius),
        IdentityEntry(I.THM_PPSI, "-omega(n) = sum p_psi(m) omega_m(n-m)", point=_thm_ppsi),
        IdentityEntry(I.THM_QPSI, "sum q_psi(m) omega_m(n-m) = -omega(n) + omega'(n)", point=_thm_qpsi),
        IdentityEntry(I.THM_CPSI, "Pentagonal bridge with f = c_psi, g(n) = 2^(n-1)", point=_bridge("c", "c_psi")),
        IdentityEntry(I.THM_CPSI_R, "Pentagonal bridge with f = c_psi(., r), g(n) = C(n-1, r-1)",
                      point=_bridge("c_r", "c_psi_r", ("r",), ("r",)), params=("r",)),
        IdentityEntry(I.THM_R2, "Pentagonal bridge with f = 4 eta_1, g = r_2",
                      point=_bridge_rk(2, "eta1", 4), superlinear=True),
        IdentityEntry(I.THM_R4, "Pentagonal bridge with f = 8 eta_2, g = r_4",
                      point=_bridge_rk(4, "eta2", 8), superlinear=True),
        IdentityEntry(I.THM_R8, "Pentagonal bridge with f = 16 (-1)^m m^3, g = (-1)^n r_8",
                      point=_bridge_rk(8, "cube_signed", 16, signed=True), superlinear=True),
        IdentityEntry(I.THM_PHI_SUBSETS, "Pentagonal bridge with f = Phi, g(n) = 2^n - 1",
                      point=_bridge("subsets", "Phi"), superlinear=True),
        IdentityEntry(I.THM_PHI_SUBSETS_R, "Pentagonal bridge with f = Phi_r, g(n) = C(n, r)",
                      point=_bridge("binom_n_r", "Phi_r", ("r",), ("r",)), superlinear=True, params=("r",)),
        IdentityEntry(I.THM_PHITAU, "Pentagonal bridge with f = Phi^tau, g(n) = 2^tau(n) - 1",
                      point=_bridge("divisor_subsets", "Phi_tau"), superlinear=True),
        IdentityEntry(I.THM_PHITAU_R, "Pentagonal bridge with f = Phi^tau_r, g(n) = C(tau(n), r)",
                      point=_bridge("binom_tau_r", "Phi_tau_r", ("r",), ("r",)), superlinear=True,
                      params=("r",)),

        IdentityEntry(I.THM2A, "sum (-1)^k qq(k) omega(n-k) = theta(-q) coefficient", n_start=0, point=_thm2a),
        IdentityEntry(I.THM2B, "q(n) + 2 sum (-1)^k delta_s(k) q(n-k) = omega(n)", n_start=0, point=_thm2b),
        IdentityEntry(I.THM3A, "sum q(n-2k) omega(k) = delta_t(n)", n_start=0, point=_thm3a),
        IdentityEntry(I.THM3B, "sum p(k) delta_t(n-2k) = q(n)", n_start=0, point=_thm3b),
        IdentityEntry(I.THM3C, "sum (-1)^k qq(k) delta_t(n-k) = omega'(n)", n_start=0, point=_thm3c),
        IdentityEntry(I.THM4A, "sum (-1)^k s(k) (3q(n-k) - omega(n-k)) = 2q(n)", n_start=0, point=_thm4a),
        IdentityEntry(I.THM4B, "sum t(k) (2(-1)^(n-k) qq(n-k) - omega'(n-k)) = (-1)^n qq(n)", n_start=0,
                      point=_thm4b),
        IdentityEntry(I.THM5A, "square-weighted sigma + sigma_o = 2(-1)^(n+1) n delta_s(n)", point=_thm5a),
        IdentityEntry(I.THM5B, "sum (sigma_o(k) - sigma_e(k)) delta_t(n-k) = n delta_t(n)", point=_thm5b),
        IdentityEntry(I.THM5C, "square-weighted sigma + sigma_s = 2(-1)^(n+1) n delta_s(n)", n_start=2,
                      point=_thm5c),
        IdentityEntry(I.THM_RK, "k sum (sigma+sigma_o)(i) (-1)^(n-i) r_k(n-i) = (-1)^(n+1) n r_k(n)",
                      point=_thm_rk, superlinear=True, params=("k",)),
        IdentityEntry(I.COR_RK_CONG, "r_k(n) = 0 mod k when gcd(k, n) = 1",
                      point=_cor_rk_cong, superlinear=True, params=("k",)),
    ]



CATALOG: Dict[IdentityId, IdentityEntry] = {entry.id: entry for entry in _entries()}


def catalog() -> Dict[IdentityId, IdentityEntry]:
    """All catalog entries in catalog order"""
    return CATALOG


def entry_for(identity: IdentityId) -> IdentityEntry:
    return catalog()[identity]


def resolve_params(entry: IdentityEntry, k: Optional[int] = None, r: Optional[int] = None,
                   literal: bool = False) -> Dict[str, int]:
    params: Dict[str, int] = {}
    if "k" in entry.params:
        if k is None:
            raise MissingParameterError(f"identity '{entry.id.value}' needs --k")
        if k < 1:
            raise DomainError(f"k must be >= 1, got {k}")
        params["k"] = k
    if "r" in entry.params:
        if r is None:
            raise MissingParameterError(f"identity '{entry.id.value}' needs --r")
        if r < 1:
            raise DomainError(f"r must be >= 1, got {r}")
        params["r"] = r
    if literal and entry.id == IdentityId.THM4B:
        params["literal"] = 1
    return params


# ---------------------------------------------------------------------------
# Public operations
# ---------------------------------------------------------------------------

def evaluate(identity: IdentityId, n: int, k: Optional[int] = None, r: Optional[int] = None,
             literal: bool = False, tables: Optional[OracleTableCollector] = None) -> Pair:
    """(lhs, rhs) of a pointwise identity at n"""
    entry = entry_for(identity)
    params = resolve_params(entry, k, r, literal)
    if n < entry.n_start:
        raise DomainError(f"identity '{identity.value}' is stated for n >= {entry.n_start}, got {n}")
    if entry.is_series:
        lhs, rhs = entry.series(n, params)
        return lhs[n], rhs[n]
    tables = tables if tables is not None and tables.n_max >= n else OracleTableCollector(max(n, 1))
    return entry.point(tables, n, params)


def residual(identity: IdentityId, n: int, k: Optional[int] = None, r: Optional[int] = None,
             literal: bool = False, tables: Optional[OracleTableCollector] = None) -> int:
    """LHS - RHS of the cataloged identity at n; 0 means it holds"""
    lhs, rhs = evaluate(identity, n, k, r, literal, tables)
    return lhs - rhs


PRODUCT_IDS = (IdentityId.PENT_PRODUCT, IdentityId.GAUSS_TRI, IdentityId.GAUSS_SQ, IdentityId.JACOBI_TRIPLE)


def series_identity_check(identity: IdentityId, order: int, n_lo: int = 0, k: Optional[int] = None,
                          r: Optional[int] = None) -> IdentityReport:
    """Expand both sides of a series identity to `order` and compare coefficients n_lo..order"""
    entry = entry_for(identity)
    if not entry.is_series:
        raise DomainError(f"identity '{identity.value}' is not a series identity")
    if order < 0:
        raise DomainError(f"order must be >= 0, got {order}")
    params = resolve_params(entry, k, r)
    started = time.perf_counter()
    lhs, rhs = entry.series(order, params)
    n_lo = max(n_lo, entry.n_start)
    report = IdentityReport(id=identity, n_lo=n_lo, n_hi=order, params=params)
    for n in range(n_lo, order + 1):
        if lhs[n] != rhs[n]:
            report.failures.append(Failure(n=n, lhs=lhs[n], rhs=rhs[n]))
    report.elapsed = time.perf_counter() - started
    logger.info(f"{report.label}: {len(report.failures)} mismatches to order {order}")
    return report


def product_identity_check(identity: IdentityId, order: int) -> IdentityReport:
    """Coefficientwise check of one of the four product identities"""
    if identity not in PRODUCT_IDS:
        raise DomainError(
            f"product_identity_check covers {[i.value for i in PRODUCT_IDS]}, got '{identity.value}'"
        )
    return series_identity_check(identity, order)
