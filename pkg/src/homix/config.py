"""Run-wide settings shared by the CLI and the verification suites."""

from __future__ import annotations

import os
from dataclasses import dataclass

from .homology import DEFAULT_SNF_LIMIT
from .homsearch import DEFAULT_MAP_BUDGET, DEFAULT_NODE_BUDGET

FORMATS = ("json", "text", "dot")


@dataclass(frozen=True)
class RunConfig:
    budget_nodes: int = DEFAULT_NODE_BUDGET
    max_maps: int = DEFAULT_MAP_BUDGET
    snf_limit: int = DEFAULT_SNF_LIMIT  # largest dense block handed to the Smith form
    seed: int = 0
    trials: int | None = None
    format: str = "json"
    suite: str | None = None

    def __post_init__(self):
        for name in ("budget_nodes", "max_maps", "snf_limit"):
            if getattr(self, name) <= 0:
                raise ValueError(f"{name} must be positive")
        if self.trials is not None and self.trials <= 0:
            raise ValueError("trials must be positive")
        if self.format not in FORMATS:
            raise ValueError(f"format must be one of {FORMATS}")

    @classmethod
    def from_env(cls, **overrides) -> "RunConfig":
        env = os.environ.get("HOMIX_BUDGET_NODES")
        if env and overrides.get("budget_nodes") is None:
            overrides["budget_nodes"] = int(env)
        return cls(**{k: v for k, v in overrides.items() if v is not None})
