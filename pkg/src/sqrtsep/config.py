"""Global, read-only configuration shared by the CLI and explorer."""

from __future__ import annotations

import os
from dataclasses import dataclass

HARD_MAX_M = 30
OUTPUT_FORMATS = ("text", "json", "csv")


@dataclass(frozen=True)
class GlobalConfig:
    sieve_limit: int = 10**6
    max_m: int = 20
    enumeration_budget: int = 10**7
    output_format: str = "text"
    jobs: int = os.cpu_count() or 1

    def __post_init__(self):
        for name in ("sieve_limit", "max_m", "enumeration_budget", "jobs"):
            if getattr(self, name) < 1:
                raise ValueError(f"{name} must be positive")
        if self.max_m > HARD_MAX_M:
            raise ValueError(f"max_m may not exceed {HARD_MAX_M}")
        if self.output_format not in OUTPUT_FORMATS:
            raise ValueError(f"unknown output format {self.output_format!r}")


DEFAULT_CONFIG = GlobalConfig()
