from enum import Enum
from pathlib import Path
from typing import Any, Optional

from dotenv import dotenv_values, load_dotenv
from pydantic import BaseModel, Field, ValidationError, field_validator, model_validator
from pydantic_settings import BaseSettings, SettingsConfigDict

from psr.errors import InvalidParameterError, ParseError
from psr.logger import get_logger

load_dotenv()
logger = get_logger(__name__)


class Scale(str, Enum):
    diameter = "diameter"
    radius = "radius"


def is_prime(p: int) -> bool:
    if p < 2:
        return False
    divisor = 2
    while divisor * divisor <= p:
        if p % divisor == 0:
            return False
        divisor += 1
    return True


class Settings(BaseSettings):
    """Process-wide defaults, overridable through PSR_* environment variables or .env."""

    model_config = SettingsConfigDict(env_prefix="PSR_", env_file=".env", extra="ignore")

    modulus: int = 2
    max_dim: int = 2
    radius_min: float = 0.0
    radius_max: float = 7.0
    scale: Scale = Scale.diameter
    elements: Optional[str] = None
    precision: int = 9
    seed: int = 0
    threads: int = 1
    subset_cap: int = 24
    output_dir: Path = Path(".")
    keep_empty_bars: bool = False


class RunConfig(BaseModel):
    command: str = ""
    inputs: list[Path] = Field(default_factory=list)
    modulus: int = 2
    max_dim: int = 2
    radius_min: float = 0.0
    radius_max: float = 7.0
    scale: Scale = Scale.diameter
    elements: Optional[frozenset[str]] = None
    precision: int = Field(9, ge=0, le=15)
    seed: int = 0
    threads: int = Field(1, ge=1)
    subset_cap: int = Field(24, ge=1)
    output_dir: Path = Path(".")
    keep_empty_bars: bool = False

    @field_validator("modulus")
    @classmethod
    def modulus_must_be_prime(cls, v):
        if not is_prime(v):
            raise ValueError(f"modulus {v} is not prime")
        return v

    @field_validator("max_dim")
    @classmethod
    def max_dim_non_negative(cls, v):
        if v < 0:
            raise ValueError("max_dim must be >= 0")
        return v

    @field_validator("elements", mode="before")
    @classmethod
    def split_elements(cls, v):
        if v is None or v == "":
            return None
        if isinstance(v, str):
            v = v.split(",")
        return frozenset(symbol.strip().capitalize() for symbol in v if symbol.strip())

    @model_validator(mode="after")
    def radius_range_non_degenerate(self):
        if self.radius_min < 0 or self.radius_max <= self.radius_min:
            raise ValueError(
                f"radius range [{self.radius_min}, {self.radius_max}] is degenerate"
            )
        return self


def _read_config_file(path: Path) -> dict[str, Any]:
    if not path.exists():
        raise ParseError(path, "config file does not exist")
    values = {}
    for key, value in dotenv_values(path).items():
        if value is None:
            continue
        values[key.strip().lower().replace("-", "_")] = value.strip()
    return values


def resolve_config(command: str, config_file: Optional[Path] = None, **flags) -> RunConfig:
    """Merge defaults, environment, an optional key = value file and CLI flags (flags win)."""
    merged: dict[str, Any] = Settings().model_dump()
    if config_file is not None:
        merged.update(_read_config_file(config_file))
    merged.update({key: value for key, value in flags.items() if value is not None})
    merged["command"] = command
    try:
        run_config = RunConfig.model_validate(merged)
    except ValidationError as e:
        raise InvalidParameterError(f"Invalid configuration: {e.errors()[0]['msg']}")
    logger.debug(f"Resolved configuration for {command}: {run_config.model_dump()}")
    return run_config
