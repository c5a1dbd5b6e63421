# src/minorkit/config.py

import logging
import os
from functools import lru_cache
from typing import Dict

from dotenv import load_dotenv
from pydantic import BaseModel, Field, ValidationError

from .errors import ConfigurationError

logger = logging.getLogger(__name__)

load_dotenv()

ENV_PREFIX = "MINORKIT_"


class Budgets(BaseModel):
    """Search and size budgets; every field can be overridden per call."""

    apex_max_vertices: int = Field(12, ge=0)       # apex_number subset search
    enum_max_vertices: int = Field(10, ge=0)       # enumerate_graphs
    minor_states: int = Field(200_000, ge=1)       # minor search states
    tm_steps: int = Field(500_000, ge=1)           # topological minor routing steps
    treewidth_max_vertices: int = Field(14, ge=0)  # subset DP
    folio_max_vertices: int = Field(8, ge=0)
    folio_max_detail: int = Field(4, ge=0)
    boundaried_max_vertices: int = Field(6, ge=0)  # contexts and representative candidates
    bound_max_bits: int = Field(1_000_000, ge=1)   # largest bound value, in bits
    forcing_subsets: int = Field(100_000, ge=1)    # deletion sets tried by forcing_check
    workers: int = Field(1, ge=1)
    log_level: str = "WARNING"

    @classmethod
    def from_env(cls, environ: Dict[str, str] = None) -> "Budgets":
        environ = os.environ if environ is None else environ
        values = {}
        for name in cls.model_fields:
            key = ENV_PREFIX + name.upper()
            if key in environ:
                values[name] = environ[key]
        try:
            return cls(**values)
        except ValidationError as exc:
            raise ConfigurationError(f"invalid budget configuration: {exc}") from exc


@lru_cache(maxsize=1)
def get_budgets() -> Budgets:
    budgets = Budgets.from_env()
    logger.debug("loaded budgets %s", budgets.model_dump())
    return budgets


def budget(name: str, override=None) -> int:
    """Return ``override`` when given, else the configured budget ``name``."""
    if override is not None:
        return override
    return getattr(get_budgets(), name)
