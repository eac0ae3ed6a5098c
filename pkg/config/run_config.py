from typing import Any, Dict, List, Literal, Optional

from pydantic import BaseModel, ConfigDict, Field, ValidationError, field_validator

from config.settings import settings
from utils.error_handler import ConfigurationError

Backend = Literal["analytic", "statevector"]


class RunConfig(BaseModel):
    """User inputs of one factoring run (flags, config file and settings merged)"""

    model_config = ConfigDict(extra="forbid", frozen=True)

    n: int
    base: Optional[int] = None
    blocks: List[int]
    overlaps: List[int]
    shots: int = Field(default_factory=lambda: settings.DEFAULT_SHOTS, ge=0)
    top_k: int = Field(default_factory=lambda: settings.DEFAULT_TOP_K, ge=1)
    max_combos: int = Field(default_factory=lambda: settings.DEFAULT_MAX_COMBOS, ge=1)
    seed: int = Field(default_factory=lambda: settings.DEFAULT_SEED, ge=0)
    backend: Backend = Field(default_factory=lambda: settings.DEFAULT_BACKEND)
    retries: int = Field(default_factory=lambda: settings.DEFAULT_RETRIES, ge=1)

    @field_validator("blocks", "overlaps", mode="before")
    @classmethod
    def split_comma_list(cls, value: Any) -> Any:
        """Accept "3,4,4,5" as well as [3, 4, 4, 5]"""
        if isinstance(value, str):
            parts = [part.strip() for part in value.split(",")]
            if any(not part for part in parts):
                raise ValueError(f"malformed list {value!r}")
            return parts
        return value

    @property
    def n_target(self) -> int:
        """ceil(log2 N)"""
        return (self.n - 1).bit_length()

    @classmethod
    def from_mapping(cls, values: Dict[str, Any]) -> "RunConfig":
        """Build from loose key/value input; the first failing field becomes a ConfigurationError"""
        normalized = {key.replace("-", "_"): value for key, value in values.items()}
        try:
            return cls.model_validate(normalized)
        except ValidationError as e:
            error = e.errors()[0]
            field = ".".join(str(part) for part in error["loc"]) or "config"
            raise ConfigurationError(field, error["msg"]) from e
