"""Classical arithmetical functions by elementary means.

These are the ground-truth oracles: trial division, divisor enumeration and
plain convolution. The numpy sieve in `sieve_table` is an optional fast path
for tabulating whole ranges and must agree with trial division exactly.
"""

from math import isqrt
from typing import Callable, Dict, List, Union

import numpy as np
from loguru import logger

from ..models.qseries_data import FunctionTable, SigmaKind
from .numbers import delta_s
from ..utils.errors import DomainError, TableTooShortError


def _require_positive(n: int, what: str) -> None:
    if n <= 0:
        raise DomainError(f"{what} needs n >= 1, got {n}")


def divisor_list(n: int) -> List[int]:
    """All positive divisors of n, ascending"""
    _require_positive(n, "divisor_list")
    small, large = [], []
    for d in range(1, isqrt(n) + 1):
        if n % d == 0:
            small.append(d)
            if d != n // d:
                large.append(n // d)
    return small + large[::-1]


def factorize(n: int) -> Dict[int, int]:
    """Prime factorization {p: e} by trial division"""
    _require_positive(n, "factorize")
    factors: Dict[int, int] = {}
    d = 2
    while d * d <= n:
        while n % d == 0:
            factors[d] = factors.get(d, 0) + 1
            n //= d
        d += 1 if d == 2 else 2
    if n > 1:
        factors[n] = factors.get(n, 0) + 1
    return factors


def _as_kind(kind: Union[SigmaKind, str]) -> SigmaKind:
    if isinstance(kind, SigmaKind):
        return kind
    try:
        return SigmaKind(kind)
    except ValueError:
        raise DomainError(f"invalid sigma kind '{kind}'") from None


def sigma_kind(n: int, kind: Union[SigmaKind, str] = SigmaKind.ALL) -> int:
    """sigma, sigma_o, sigma_e or the alternating sigma_s(n) = sum_{d|n} (-1)^(d-1) n/d"""
    kind = _as_kind(kind)
    _require_positive(n, "sigma_kind")
    divisors = divisor_list(n)
    if kind == SigmaKind.ALL:
        return sum(divisors)
    if kind == SigmaKind.ODD:
        return sum(d for d in divisors if d % 2)
    if kind == SigmaKind.EVEN:
        return sum(d for d in divisors if d % 2 == 0)
    return sum((n // d) if d % 2 else -(n // d) for d in divisors)


def phi(n: int) -> int:
    result = n
    for p in factorize(n):
        result -= result // p
    return result


def tau(n: int) -> int:
    count = 1
    for e in factorize(n).values():
        count *= e + 1
    return count


def liouville(n: int) -> int:
    big_omega = sum(factorize(n).values())
    return -1 if big_omega % 2 else 1


def mobius(n: int) -> int:
    factors = factorize(n)
    if any(e > 1 for e in factors.values()):
        return 0
    return -1 if len(factors) % 2 else 1


def eta(n: int, which: int) -> int:
    """eta_1(n) = 0 for even n, (-1)^((n-1)/2) for odd n;  eta_2(n) = 0 if 4|n, else n"""
    _require_positive(n, "eta")
    if which == 1:
        if n % 2 == 0:
            return 0
        return -1 if ((n - 1) // 2) % 2 else 1
    if which == 2:
        return 0 if n % 4 == 0 else n
    raise DomainError(f"eta selector must be 1 or 2, got {which}")


def divisor_sum(f: FunctionTable, n: int) -> int:
    """sum_{d|n} f(d)"""
    _require_positive(n, "divisor_sum")
    if n > f.max_n:
        raise TableTooShortError(f"table '{f.name}' covers 0..{f.max_n}, divisor_sum needs {n}")
    return sum(f[d] for d in divisor_list(n))


def mobius_invert(g: FunctionTable, name: str = "") -> FunctionTable:
    """f with g(n) = sum_{d|n} f(d) on 1..N; f(0) is stored as 0"""
    size = g.max_n
    mu = [0] + [mobius(m) for m in range(1, size + 1)]
    values = [0] * (size + 1)
    for d in range(1, size + 1):
        gd = g[d]
        if not gd:
            continue
        for m in range(1, size // d + 1):
            if mu[m]:
                values[d * m] += mu[m] * gd
    return FunctionTable(name or f"inv({g.name})", tuple(values))


def tabulate(name: str, fn: Callable[[int], int], n_max: int, at_zero: int = 0) -> FunctionTable:
    """FunctionTable of fn(1..n_max) with the index-0 convention value"""
    values = [at_zero] + [fn(n) for n in range(1, n_max + 1)]
    return FunctionTable(name, tuple(values))


SIGMA_NAMES = {
    SigmaKind.ALL: "sigma",
    SigmaKind.ODD: "sigma_odd",
    SigmaKind.EVEN: "sigma_even",
    SigmaKind.ALTERNATING: "sigma_alt",
}


def sigma_table(kind: Union[SigmaKind, str], n_max: int, fast: bool = False) -> FunctionTable:
    kind = _as_kind(kind)
    if fast:
        return sieve_table(SIGMA_NAMES[kind], n_max)
    return tabulate(SIGMA_NAMES[kind], lambda n: sigma_kind(n, kind), n_max)


def _divisor_sieve(n_max: int, weight: Callable[[int, np.ndarray], np.ndarray]) -> np.ndarray:
    """acc[n] = sum over d|n of weight(d, n/d)"""
    acc = np.zeros(n_max + 1, dtype=np.int64)
    for d in range(1, n_max + 1):
        cofactors = np.arange(1, n_max // d + 1, dtype=np.int64)
        acc[d::d] += weight(d, cofactors)
    return acc


def _smallest_prime_factors(n_max: int) -> np.ndarray:
    spf = np.zeros(n_max + 1, dtype=np.int64)
    for p in range(2, n_max + 1):
        if spf[p] == 0:
            block = spf[p::p]
            block[block == 0] = p
    return spf


SIEVE_NAMES = ("sigma", "sigma_odd", "sigma_even", "sigma_alt", "tau", "phi", "mu", "lambda")


def sieve_table(name: str, n_max: int) -> FunctionTable:
    """Vectorized tabulation of the divisor-type functions (desk-scale n_max).

    Values fit comfortably in int64 at the sizes this is used for; the
    results are converted back to Python ints.
    """
    if name not in SIEVE_NAMES:
        raise DomainError(f"no sieve for '{name}', expected one of {SIEVE_NAMES}")
    logger.debug(f"sieving {name} up to {n_max}")
    if n_max < 1:
        return FunctionTable(name, (0,) * (n_max + 1))
    if name == "sigma":
        acc = _divisor_sieve(n_max, lambda d, c: np.full(c.shape, d, dtype=np.int64))
    elif name == "sigma_odd":
        acc = _divisor_sieve(n_max, lambda d, c: np.full(c.shape, d if d % 2 else 0, dtype=np.int64))
    elif name == "sigma_even":
        acc = _divisor_sieve(n_max, lambda d, c: np.full(c.shape, 0 if d % 2 else d, dtype=np.int64))
    elif name == "sigma_alt":
        acc = _divisor_sieve(n_max, lambda d, c: c if d % 2 else -c)
    elif name == "tau":
        acc = _divisor_sieve(n_max, lambda d, c: np.ones(c.shape, dtype=np.int64))
    else:
        spf = _smallest_prime_factors(n_max)
        acc = np.zeros(n_max + 1, dtype=np.int64)
        acc[1] = 1
        for n in range(2, n_max + 1):
            p = int(spf[n])
            m = n // p
            if name == "lambda":
                acc[n] = -acc[m]
            elif name == "mu":
                acc[n] = 0 if m % p == 0 else -acc[m]
            else:
                acc[n] = acc[m] * p if m % p == 0 else acc[m] * (p - 1)
    acc[0] = 0
    return FunctionTable(name, tuple(int(v) for v in acc))


def _convolve(a: List[int], b: List[int], n_max: int) -> List[int]:
    out = [0] * (n_max + 1)
    for i, ai in enumerate(a[: n_max + 1]):
        if not ai:
            continue
        for j in range(n_max + 1 - i):
            if b[j]:
                out[i + j] += ai * b[j]
    return out


def r_table(k: int, n_max: int) -> FunctionTable:
    """r_k(0..n_max): ordered, signed representations as a sum of k squares.

    k-fold self-convolution of the theta coefficients 1 + 2 sum_{j>=1} q^(j^2).
    """
    if k < 1:
        raise DomainError(f"r_table needs k >= 1, got {k}")
    theta = [1] + [2 * delta_s(n) for n in range(1, n_max + 1)]
    values = list(theta)
    for _ in range(k - 1):
        values = _convolve(values, theta, n_max)
    return FunctionTable(f"r_{k}", tuple(values))


def r_jacobi(n: int, k: int) -> int:
    """r_k(n) from Jacobi's divisor-sum formulas, k in {2, 4, 8}"""
    _require_positive(n, "r_jacobi")
    if k == 2:
        return 4 * sum(eta(d, 1) for d in divisor_list(n))
    if k == 4:
        return 8 * sum(eta(d, 2) for d in divisor_list(n))
    if k == 8:
        return 16 * sum((-1) ** ((n + d) % 2) * d ** 3 for d in divisor_list(n))
    raise DomainError(f"r_jacobi supports k in {{2, 4, 8}}, got {k}")

