from dataclasses import dataclass, field
from enum import Enum
from numbers import Integral
from typing import FrozenSet, Iterable, List, Optional, Sequence, Tuple

from ..core.numbers import delta_s, delta_t
from ..utils.errors import DomainError, TableTooShortError


class SigmaKind(Enum):
    ALL = "all"
    ODD = "odd"
    EVEN = "even"
    ALTERNATING = "alternating"


class Ground(Enum):
    GROUND_SET = "ground-set"
    DIVISOR_SET = "divisor-set"


class PartKind(Enum):
    SQUARES = "squares"
    TRIANGULARS = "triangulars"
    EXPLICIT = "explicit"


def _exact_ints(values: Iterable, what: str) -> Tuple[int, ...]:
    """Coerce to Python ints; floats and other non-integers are rejected, not truncated"""
    values = tuple(values)
    for v in values:
        if not isinstance(v, Integral):
            raise DomainError(f"{what} must be an integer, got {v!r}")
    return tuple(int(v) for v in values)


@dataclass(frozen=True)
class Series:
    """Truncated power series in q with exact integer coefficients.

    coeffs[i] is the coefficient of q^i; the truncation order is len(coeffs) - 1.
    """
    coeffs: Tuple[int, ...]

    def __post_init__(self):
        if len(self.coeffs) == 0:
            raise DomainError("a Series needs at least the constant coefficient")
        object.__setattr__(self, "coeffs", _exact_ints(self.coeffs, "Series coefficient"))

    @property
    def order(self) -> int:
        return len(self.coeffs) - 1

    def __getitem__(self, i: int) -> int:
        return self.coeffs[i]

    def __len__(self) -> int:
        return len(self.coeffs)

    def __iter__(self):
        return iter(self.coeffs)

    @classmethod
    def from_coeffs(cls, coeffs: Iterable[int], order: Optional[int] = None) -> "Series":
        """Build a series, zero-padding or truncating to `order` when given"""
        values = list(coeffs)
        if order is None:
            return cls(tuple(values))
        if order < 0:
            raise DomainError(f"truncation order must be >= 0, got {order}")
        values = values[:order + 1]
        values.extend([0] * (order + 1 - len(values)))
        return cls(tuple(values))

    @classmethod
    def zero(cls, order: int) -> "Series":
        return cls.from_coeffs([], order)

    @classmethod
    def one(cls, order: int) -> "Series":
        return cls.from_coeffs([1], order)

    @classmethod
    def monomial(cls, exponent: int, order: int, coefficient: int = 1) -> "Series":
        """coefficient * q^exponent, truncated"""
        values = [0] * (order + 1)
        if 0 <= exponent <= order:
            values[exponent] = coefficient
        return cls(tuple(values))

    def truncate(self, order: int) -> "Series":
        return Series.from_coeffs(self.coeffs, min(order, self.order))

    def scale(self, factor: int) -> "Series":
        return Series(tuple(factor * c for c in self.coeffs))

    def is_unit(self) -> bool:
        return self.coeffs[0] in (1, -1)


@dataclass(frozen=True)
class ProductFactor:
    """One infinite product  prod_{m>=1} (1 + sign * q^(stride*m + offset))^exponent.

    (1 - q^n)      -> stride=1, offset=0,  sign=-1
    (1 - q^(2m))   -> stride=2, offset=0,  sign=-1
    (1 + q^(2m-1)) -> stride=2, offset=-1, sign=+1
    """
    stride: int
    offset: int = 0
    sign: int = -1
    exponent: int = 1

    def __post_init__(self):
        if self.stride < 1:
            raise DomainError(f"stride must be >= 1, got {self.stride}")
        if self.stride + self.offset < 1:
            raise DomainError(
                f"smallest exponent stride+offset must be >= 1, got {self.stride + self.offset}"
            )
        if self.sign not in (1, -1):
            raise DomainError(f"sign must be +1 or -1, got {self.sign}")

    def exponents_upto(self, order: int) -> List[int]:
        """Exponents stride*m + offset that do not exceed `order`"""
        result = []
        m = 1
        while self.stride * m + self.offset <= order:
            result.append(self.stride * m + self.offset)
            m += 1
        return result


@dataclass(frozen=True)
class ProductSpec:
    factors: Tuple[ProductFactor, ...] = field(default_factory=tuple)

    @classmethod
    def of(cls, *factors: ProductFactor) -> "ProductSpec":
        return cls(tuple(factors))


# Products used throughout the identity catalog
EULER_PRODUCT = ProductSpec.of(ProductFactor(stride=1, sign=-1))                 # prod (1-q^n)
DISTINCT_PRODUCT = ProductSpec.of(ProductFactor(stride=1, sign=1))               # prod (1+q^n)
EVEN_PRODUCT = ProductSpec.of(ProductFactor(stride=2, sign=-1))                  # prod (1-q^2m)
PARTITION_PRODUCT = ProductSpec.of(ProductFactor(stride=1, sign=-1, exponent=-1))


@dataclass(frozen=True)
class FunctionTable:
    """Exact values f(0..N) of one arithmetical function"""
    name: str
    values: Tuple[int, ...]

    def __post_init__(self):
        object.__setattr__(self, "values", _exact_ints(self.values, f"value of table '{self.name}'"))

    @property
    def max_n(self) -> int:
        return len(self.values) - 1

    def __len__(self) -> int:
        return len(self.values)

    def __getitem__(self, n: int) -> int:
        if n < 0 or n > self.max_n:
            raise TableTooShortError(f"table '{self.name}' covers 0..{self.max_n}, asked for {n}")
        return self.values[n]

    def at(self, n: int) -> int:
        """Value at n with the convention f(n) = 0 for n < 0"""
        if n < 0:
            return 0
        return self[n]

    def require(self, n: int) -> None:
        if n > self.max_n:
            raise TableTooShortError(f"table '{self.name}' covers 0..{self.max_n}, need {n}")

    def renamed(self, name: str) -> "FunctionTable":
        return FunctionTable(name, self.values)

    def as_list(self) -> List[int]:
        return list(self.values)


@dataclass(frozen=True)
class PartSet:
    """Set of allowed composition parts, rule-defined or explicit"""
    kind: PartKind
    members: FrozenSet[int] = frozenset()

    def __post_init__(self):
        if any(a < 1 for a in self.members):
            raise DomainError(f"parts must be positive, got {sorted(self.members)}")

    @classmethod
    def squares(cls) -> "PartSet":
        return cls(PartKind.SQUARES)

    @classmethod
    def triangulars(cls) -> "PartSet":
        return cls(PartKind.TRIANGULARS)

    @classmethod
    def explicit(cls, parts: Sequence[int]) -> "PartSet":
        return cls(PartKind.EXPLICIT, frozenset(parts))

    def contains(self, a: int) -> bool:
        if a < 1:
            return False
        if self.kind == PartKind.SQUARES:
            return delta_s(a) == 1
        if self.kind == PartKind.TRIANGULARS:
            return delta_t(a) == 1
        return a in self.members

    def members_upto(self, n: int) -> List[int]:
        if self.kind == PartKind.EXPLICIT:
            return sorted(a for a in self.members if a <= n)
        return [a for a in range(1, n + 1) if self.contains(a)]


@dataclass(frozen=True)
class PartitionConstraint:
    distinct: bool = False
    odd_parts: bool = False
    coprime: bool = False
    parts_count: Optional[int] = None
