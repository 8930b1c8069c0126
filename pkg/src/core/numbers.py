"""Pentagonal signs and square/triangular indicators.

All functions follow the convention that a sequence evaluated at a negative
argument is 0, so the open-ended sums of the identity catalog stop at the first
negative index.
"""

from functools import lru_cache
from math import isqrt
from typing import List, Tuple

from ..utils.errors import DomainError


def omega(m: int) -> int:
    """Coefficient of q^m in prod (1 - q^n).

    m is a generalized pentagonal number (3k^2 +- k)/2 exactly when 24m + 1 is
    a perfect square r^2 with r = 6k -+ 1; the sign is then (-1)^k.
    """
    if m < 0:
        return 0
    x = 24 * m + 1
    r = isqrt(x)
    if r * r != x:
        return 0
    residue = r % 6
    if residue == 1:
        k = (r - 1) // 6
    elif residue == 5:
        k = (r + 1) // 6
    else:
        return 0
    return -1 if k % 2 else 1


def omega_k(k: int, m: int) -> int:
    """omega(m) + omega(m - k) + omega(m - 2k) + ..."""
    if k <= 0:
        raise DomainError(f"omega_k needs k >= 1, got {k}")
    if m < 0:
        return 0
    return sum(omega(j) for j in range(m % k, m + 1, k))


def omega_prime(n: int) -> int:
    """omega(n/2) for even n, 0 for odd n"""
    if n < 0 or n % 2:
        return 0
    return omega(n // 2)


def delta_s(n: int) -> int:
    """1 if n is a perfect square (0 included), else 0"""
    if n < 0:
        return 0
    r = isqrt(n)
    return 1 if r * r == n else 0


def delta_t(n: int) -> int:
    """1 if n = m(m+1)/2 for some m >= 0, else 0"""
    if n < 0:
        return 0
    return delta_s(8 * n + 1)


def generalized_pentagonals(limit: int) -> List[Tuple[int, int]]:
    """(index, omega(index)) for every generalized pentagonal index in 1..limit, ascending"""
    result = []
    k = 1
    while (3 * k * k - k) // 2 <= limit:
        sign = -1 if k % 2 else 1
        lower = (3 * k * k - k) // 2
        upper = (3 * k * k + k) // 2
        result.append((lower, sign))
        if upper <= limit:
            result.append((upper, sign))
        k += 1
    return result


def squares_upto(limit: int) -> List[int]:
    """Positive squares not exceeding limit"""
    return [j * j for j in range(1, isqrt(max(limit, 0)) + 1)]


@lru_cache(maxsize=64)
def omega_table(n_max: int) -> Tuple[int, ...]:
    return tuple(omega(m) for m in range(n_max + 1))


@lru_cache(maxsize=512)
def omega_k_table(k: int, n_max: int) -> Tuple[int, ...]:
    """omega_k(k, 0..n_max) via the telescope omega_k(m) = omega(m) + omega_k(m - k)"""
    if k <= 0:
        raise DomainError(f"omega_k needs k >= 1, got {k}")
    values = [0] * (n_max + 1)
    for m in range(n_max + 1):
        values[m] = omega(m) + (values[m - k] if m >= k else 0)
    return tuple(values)
