"""Configuration schemas for semicat."""

from __future__ import annotations

import logging
from pathlib import Path
from typing import Any, Union

import tomli
from pydantic import BaseModel, Field
from pydantic import ValidationError as PydanticValidationError

from semicat.core.exceptions import ParseError
from semicat.vars.limits import DEFAULT_LIMITS

logger = logging.getLogger(__name__)


class AnalysisConfig(BaseModel):
    """Configuration for search bounds and self-checks.

    Attributes:
        max_order (int): Largest semigroup handed to the brute-force isomorphism oracle
        max_tuples (int): Largest tuple space scanned by union-find orbit counting
        max_isomorphisms (int): Most distinct maps a structured enumeration may return
        max_choices (int): Most choice tuples examined for the Psi-system extension condition
        orbit_length (int): Default longest tuple length for orbit profiles
        self_check (bool): Cross-check structured searches against brute-force oracles where cheap
    """

    max_order: int = Field(default=DEFAULT_LIMITS["max_order"], ge=1, description="Brute-force order bound")
    max_tuples: int = Field(default=DEFAULT_LIMITS["max_tuples"], ge=1, description="Union-find tuple space bound")
    max_isomorphisms: int = Field(
        default=DEFAULT_LIMITS["max_isomorphisms"],
        ge=1,
        description="Bound on enumerated isomorphisms",
    )
    max_choices: int = Field(default=DEFAULT_LIMITS["max_choices"], ge=1, description="Psi-system choice bound")
    orbit_length: int = Field(default=DEFAULT_LIMITS["orbit_length"], ge=1, description="Default n_max for profiles")
    self_check: bool = Field(default=False, description="Compare structured searches with oracles")

    @classmethod
    def from_toml(cls, path: Union[str, Path]) -> AnalysisConfig:
        """Load settings from ``semicat.toml`` or the ``[tool.semicat]`` table of a ``pyproject.toml``.

        Args:
            path: Path to the TOML file

        Returns:
            The configuration, defaults filled in for absent keys

        Raises:
            ParseError: If the file cannot be read or holds invalid settings
        """
        path = Path(path)
        try:
            with path.open("rb") as f:
                data: dict[str, Any] = tomli.load(f)
        except (OSError, tomli.TOMLDecodeError) as e:
            msg = f"Cannot read configuration {path}"
            raise ParseError(msg, original_error=e) from e

        if "tool" in data:
            data = data["tool"].get("semicat", {})
        logger.debug("Loaded configuration keys from %s: %s", path, sorted(data))
        try:
            return cls(**data)
        except PydanticValidationError as e:
            msg = f"Invalid configuration in {path}"
            raise ParseError(msg, original_error=e) from e
