"""Exact truncated power-series arithmetic over the integers.

Every function is pure and returns a new Series. Binary operations on operands
of different orders truncate to the smaller order.
"""

from typing import Callable, List, Optional

from loguru import logger

from ..models.qseries_data import FunctionTable, ProductFactor, ProductSpec, Series
from ..utils.errors import DomainError, NonIntegralCoefficientError, NonInvertibleSeriesError


def series_add(f: Series, g: Series) -> Series:
    order = min(f.order, g.order)
    return Series(tuple(f[i] + g[i] for i in range(order + 1)))


def series_sub(f: Series, g: Series) -> Series:
    order = min(f.order, g.order)
    return Series(tuple(f[i] - g[i] for i in range(order + 1)))


def series_neg(f: Series) -> Series:
    return f.scale(-1)


def series_mul(f: Series, g: Series) -> Series:
    """Cauchy product c_n = sum_{i<=n} f_i g_{n-i}, truncated to the smaller order"""
    order = min(f.order, g.order)
    result = [0] * (order + 1)
    # Most catalog series are sparse on one side (indicator and product series)
    if sum(1 for c in f.coeffs if c) > sum(1 for c in g.coeffs if c):
        f, g = g, f
    g_coeffs = g.coeffs
    for i in range(order + 1):
        fi = f[i]
        if not fi:
            continue
        for j in range(order + 1 - i):
            gj = g_coeffs[j]
            if gj:
                result[i + j] += fi * gj
    return Series(tuple(result))


def _forward_solve(f: Series, rhs: List[int], what: str) -> Series:
    """Solve f * g = rhs for g coefficient by coefficient.

    g_n = (rhs_n - sum_{i=1..n} f_i g_{n-i}) / f_0, each division exact.
    """
    f0 = f[0]
    if f0 == 0:
        raise NonInvertibleSeriesError(f"{what}: constant term is 0")
    order = f.order
    support = [(i, f[i]) for i in range(1, order + 1) if f[i]]
    g = [0] * (order + 1)
    for n in range(order + 1):
        acc = rhs[n]
        for i, fi in support:
            if i > n:
                break
            acc -= fi * g[n - i]
        quotient, remainder = divmod(acc, f0)
        if remainder:
            raise NonIntegralCoefficientError(
                f"{what}: coefficient of q^{n} is {acc}/{f0}, not an integer"
            )
        g[n] = quotient
    return Series(tuple(g))


def series_reciprocal(f: Series) -> Series:
    """g with f * g = 1 up to the order of f; f_0 must be +1 or -1"""
    if not f.is_unit():
        raise NonInvertibleSeriesError(
            f"reciprocal needs constant term +1 or -1, got {f[0]}"
        )
    rhs = [0] * (f.order + 1)
    rhs[0] = 1
    return _forward_solve(f, rhs, "reciprocal")


def series_pow(f: Series, exponent: int) -> Series:
    """f^exponent; negative exponents go through the reciprocal"""
    if exponent < 0:
        return series_reciprocal(series_pow(f, -exponent))
    result = Series.one(f.order)
    base = f
    while exponent:
        if exponent & 1:
            result = series_mul(result, base)
        exponent >>= 1
        if exponent:
            base = series_mul(base, base)
    return result


def q_derivative(f: Series) -> Series:
    """q * d/dq f, i.e. n * f_n"""
    return Series(tuple(n * c for n, c in enumerate(f.coeffs)))


def q_dlog(f: Series, require_unit: bool = True) -> Series:
    """q f'/f as the solution of g * f = q f'.

    With require_unit=False any nonzero constant term is accepted and the
    result must still come out integral.
    """
    if require_unit and not f.is_unit():
        raise NonInvertibleSeriesError(
            f"q_dlog needs constant term +1 or -1, got {f[0]}"
        )
    return _forward_solve(f, list(q_derivative(f).coeffs), "q_dlog")


def _apply_binomial_factor(values: List[int], exponent: int, sign: int, power: int) -> None:
    """In place: values *= (1 + sign*q^exponent)^power, power >= 1"""
    order = len(values) - 1
    for _ in range(power):
        for n in range(order, exponent - 1, -1):
            values[n] += sign * values[n - exponent]


def _expand_positive(factors: List[ProductFactor], order: int) -> List[int]:
    values = [0] * (order + 1)
    values[0] = 1
    for factor in factors:
        power = abs(factor.exponent)
        for x in factor.exponents_upto(order):
            _apply_binomial_factor(values, x, factor.sign, power)
    return values


def product_expand(spec: ProductSpec, order: int) -> Series:
    """Expand prod of ProductFactors to q^order.

    Factors with negative exponent are expanded with |exponent| and inverted
    once at the end with series_reciprocal.
    """
    if order < 0:
        raise DomainError(f"order must be >= 0, got {order}")
    numerator = [f for f in spec.factors if f.exponent > 0]
    denominator = [f for f in spec.factors if f.exponent < 0]
    result = Series(tuple(_expand_positive(numerator, order)))
    if denominator:
        result = series_mul(result, series_reciprocal(Series(tuple(_expand_positive(denominator, order)))))
    logger.debug(f"expanded product with {len(spec.factors)} factor(s) to order {order}")
    return result


def indicator_series(fn: Callable[[int], int], order: int, start: int = 0) -> Series:
    """sum_{n>=start} fn(n) q^n"""
    return Series(tuple(fn(n) if n >= start else 0 for n in range(order + 1)))


def table_series(table: FunctionTable, order: Optional[int] = None) -> Series:
    order = table.max_n if order is None else order
    table.require(order)
    return Series(tuple(table.values[: order + 1]))


def substitute_neg(f: Series) -> Series:
    """f(-q)"""
    return Series(tuple(-c if n % 2 else c for n, c in enumerate(f.coeffs)))


def lambert(table: FunctionTable, order: int, alternating: bool = False) -> Series:
    """sum_{m>=1} f(m) q^m / (1 - q^m), or / (1 + q^m) when alternating.

    The plain form has coefficient sum_{d|n} f(d) at q^n; the alternating one
    sum_{d|n} (-1)^(n/d - 1) f(d).
    """
    table.require(order)
    values = [0] * (order + 1)
    for m in range(1, order + 1):
        fm = table[m]
        if not fm:
            continue
        for j, n in enumerate(range(m, order + 1, m), start=1):
            if alternating and j % 2 == 0:
                values[n] -= fm
            else:
                values[n] += fm
    return Series(tuple(values))
