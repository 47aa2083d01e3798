"""Engine configuration."""

from typing import Literal

from pydantic import BaseModel, Field


class EngineConfig(BaseModel):
    """Resource caps and tunables shared by every analysis."""

    max_pairs: int = Field(2_000_000, gt=0)
    max_degree: int = Field(200, gt=0)
    kmax: int = Field(6, ge=1)
    order: Literal["degrevlex", "lex"] = "degrevlex"
    hole_degree_bound: int | None = Field(None, gt=0)
    hilbert_check_degree: int = Field(10, ge=0)
    jobs: int = Field(1, ge=1)
    seed: int = 0
    harness_instances: int = Field(200, ge=1)
    harness_max_generators: int = Field(5, ge=2)
    harness_max_exponent: int = Field(12, ge=2)

    model_config = {"frozen": True}


def resolve_config(config: EngineConfig | None) -> EngineConfig:
    """Return `config`, or the defaults when None."""
    return config if config is not None else EngineConfig()
