"""Run configuration: caps, tolerances, seed and thread count."""
from __future__ import annotations

import json
import os
from dataclasses import asdict, dataclass, fields

from .exceptions import OIGError

THREADS_ENV = "OIGLAB_THREADS"


@dataclass
class Config:
    vertex_cap: int = 24            # brute-force subset enumeration
    assignment_cap: int = 10 ** 5   # brute-force max-entropy oracle
    sequence_cap: int = 10 ** 5     # samples enumerated by hall-complexity
    agnostic_cap: int = 10 ** 6     # |Y|^n for agnostic graphs
    cantor_cap: int = 12870
    kkt_tol: float = 1e-6
    float_tol: float = 1e-9
    lambda_cap: float = 50.0
    max_iter: int = 1000
    seed: int = 0
    threads: int | None = None

    def __post_init__(self):
        for name in ("vertex_cap", "assignment_cap", "sequence_cap", "agnostic_cap", "cantor_cap"):
            if int(getattr(self, name)) <= 0:
                raise OIGError(f"{name} must be positive")
        for name in ("kkt_tol", "float_tol"):
            if not 0 < getattr(self, name) < 1:
                raise OIGError(f"{name} must lie in (0, 1)")
        if self.lambda_cap <= 0:
            raise OIGError("lambda_cap must be positive")
        if self.threads is not None and int(self.threads) < 1:
            raise OIGError("threads must be at least 1")

    @classmethod
    def from_dict(cls, data: dict) -> "Config":
        known = {f.name for f in fields(cls)}
        unknown = set(data) - known
        if unknown:
            raise OIGError(f"unknown config keys: {sorted(unknown)}")
        return cls(**data)

    @classmethod
    def load(cls, path=None) -> "Config":
        if path is None:
            return cls()
        with open(path) as fh:
            return cls.from_dict(json.load(fh))

    def to_dict(self):
        return asdict(self)

    def resolve_threads(self, flag=None) -> int:
        """Flag beats environment beats config file beats CPU count."""
        if flag is not None:
            return int(flag)
        env = os.environ.get(THREADS_ENV)
        if env:
            try:
                return max(1, int(env))
            except ValueError:
                raise OIGError(f"{THREADS_ENV} must be an integer, got {env!r}") from None
        if self.threads is not None:
            return int(self.threads)
        return os.cpu_count() or 1
