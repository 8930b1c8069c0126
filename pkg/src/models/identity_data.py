from dataclasses import dataclass, field
from enum import Enum
from typing import Dict, List, Optional

from pydantic import BaseModel


class IdentityId(Enum):
    # Product identities (series-level)
    PENT_PRODUCT = "pent-product"
    GAUSS_TRI = "gauss-tri"
    GAUSS_SQ = "gauss-sq"
    JACOBI_TRIPLE = "jacobi-triple"
    JACOBI_MINUS = "jacobi-minus"
    EULER_ODD_DISTINCT = "euler-odd-distinct"
    JACOBI_POWER = "jacobi-power"
    LEMMA_OMEGA_K = "lemma-omega-k"

    # Classical recurrences
    EQ3_P = "eq3-p"
    EQ4_Q = "eq4-q"
    EQ5_SIGMA = "eq5-sigma"

    # pentagonal bridge and its applications
    THM1_GENERIC = "thm1-generic"
    THM_SIGMA = "thm-sigma"
    THM_PHI = "thm-phi"
    THM_TAU = "thm-tau"
    THM_LAMBDA = "thm-lambda"
    THM_MOBIUS = "thm-mobius"
    THM_PPSI = "thm-ppsi"
    THM_QPSI = "thm-qpsi"
    THM_CPSI = "thm-cpsi"
    THM_CPSI_R = "thm-cpsi-r"
    THM_R2 = "thm-r2"
    THM_R4 = "thm-r4"
    THM_R8 = "thm-r8"
    THM_PHI_SUBSETS = "thm-Phi"
    THM_PHI_SUBSETS_R = "thm-Phi-r"
    THM_PHITAU = "thm-Phitau"
    THM_PHITAU_R = "thm-Phitau-r"

    # Product-identity consequences
    THM2A = "thm2a"
    THM2B = "thm2b"
    THM3A = "thm3a"
    THM3B = "thm3b"
    THM3C = "thm3c"
    THM4A = "thm4a"
    THM4B = "thm4b"

    # Logarithmic derivative family
    THM5A = "thm5a"
    THM5B = "thm5b"
    THM5C = "thm5c"
    LEMMA_SIGMA_S = "lemma-sigma-s"
    DLOG_SIGMA = "dlog-sigma"
    THM_RK = "thm-rk"
    COR_RK_CONG = "cor-rk-cong"

    @classmethod
    def from_key(cls, key: str) -> "IdentityId":
        from ..utils.errors import UnknownKeyError
        for member in cls:
            if member.value == key:
                return member
        raise UnknownKeyError(f"unknown identity key '{key}'")


class Provenance(Enum):
    ORACLE = "oracle"
    RECURRENCE = "recurrence"
    BOTH = "both"


@dataclass
class Failure:
    n: int
    lhs: Optional[int]
    rhs: Optional[int]
    error: Optional[str] = None

    @property
    def residual(self) -> Optional[int]:
        if self.lhs is None or self.rhs is None:
            return None
        return self.lhs - self.rhs


@dataclass
class IdentityReport:
    id: IdentityId
    n_lo: int
    n_hi: int
    params: Dict[str, int] = field(default_factory=dict)
    failures: List[Failure] = field(default_factory=list)
    skipped: List[int] = field(default_factory=list)
    notes: List[str] = field(default_factory=list)
    elapsed: float = 0.0

    @property
    def passed(self) -> bool:
        return not self.failures

    @property
    def label(self) -> str:
        """Catalog key with its parameters, e.g. 'thm-rk[k=3]'"""
        if not self.params:
            return self.id.value
        inner = ",".join(f"{name}={value}" for name, value in sorted(self.params.items()))
        return f"{self.id.value}[{inner}]"

    def to_dict(self) -> Dict:
        """JSON-ready view; integers as exact decimal strings"""
        return {
            "id": self.id.value,
            "params": dict(self.params),
            "range": [self.n_lo, self.n_hi],
            "passed": self.passed,
            "failures": [
                {
                    "n": f.n,
                    "lhs": None if f.lhs is None else str(f.lhs),
                    "rhs": None if f.rhs is None else str(f.rhs),
                    "error": f.error,
                }
                for f in self.failures
            ],
            "skipped": list(self.skipped),
            "notes": list(self.notes),
            "elapsed": round(self.elapsed, 6),
        }


class OutputRecord(BaseModel):
    key: str
    n: int
    value: Optional[str] = None
    value_oracle: Optional[str] = None
    provenance: Provenance

    @classmethod
    def from_values(cls, key: str, n: int, value: Optional[int],
                    provenance: Provenance, value_oracle: Optional[int] = None) -> "OutputRecord":
        return cls(
            key=key,
            n=n,
            value=None if value is None else str(value),
            value_oracle=None if value_oracle is None else str(value_oracle),
            provenance=provenance,
        )
