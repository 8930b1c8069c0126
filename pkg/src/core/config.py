import os
from typing import List, Optional

from pydantic_settings import BaseSettings, SettingsConfigDict


class Settings(BaseSettings):
    model_config = SettingsConfigDict(
        env_prefix="EULEREC_",
        env_file=".env",
        case_sensitive=False,
        extra="ignore",
    )

    # Worker pool
    threads: Optional[int] = None

    # Logging
    log_level: str = "WARNING"

    # Exhaustive oracle guards
    partition_oracle_max_n: int = 60
    subset_oracle_max_size: int = 22

    # Verification ranges
    default_max_n: int = 1000
    superlinear_max_n: int = 300

    # Parameters for parametric catalog entries under `verify all`
    default_r: int = 2
    default_rk_k: int = 4
    default_k_values: List[int] = [1, 2, 3, 4, 5, 6, 7, 8]
    congruence_k_values: List[int] = [2, 3, 4, 5, 6, 7, 8, 9, 10, 11, 12]

    def worker_count(self) -> int:
        """Effective size of the verify worker pool"""
        if self.threads is not None and self.threads > 0:
            return self.threads
        return os.cpu_count() or 1


# Global settings instance
settings = Settings()
