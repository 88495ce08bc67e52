"""Run configuration schema shared by all subcommands."""

from typing import Any, Literal

from pydantic import BaseModel, ConfigDict, Field, field_validator, model_validator
from sympy import isprime

from equitheta.config import settings
from equitheta.models.extension import ExtensionKind

Command = Literal["theta", "verify", "fitlab", "cs-report"]


def _parse_int_list(value: Any) -> Any:
    """Accept 3, "3", "2..4" and "2,3,5" as well as lists."""
    if isinstance(value, int):
        return [value]
    if isinstance(value, str):
        text = value.replace(" ", "")
        if ".." in text:
            lo, hi = text.split("..", 1)
            return list(range(int(lo), int(hi) + 1))
        return [int(part) for part in text.split(",") if part]
    return value


class RunConfig(BaseModel):
    """
    Validated configuration of one run.

    Built from an optional JSON config file merged with command-line flags
    (flags win). Places are kept as strings ("t+1", "inf") or coefficient lists
    and resolved against the model by the commands.
    """

    model_config = ConfigDict(extra="forbid")

    command: Command
    kind: ExtensionKind = ExtensionKind.CARLITZ
    q: int = Field(default=3, ge=2)
    m: str | list[int] | None = None
    r: int | None = Field(default=None, ge=1)
    s0: list[str | list[int]] | None = None
    t0: list[list[str | list[int]]] = Field(default_factory=list)
    n: list[int] = Field(default_factory=lambda: [2])
    ell: list[int] = Field(default_factory=lambda: [2])
    k: int = Field(default=3, ge=1)
    dmax: int | None = Field(default=None, ge=1)
    guard: int | None = Field(default=None, ge=1)
    seed: int = 0
    instances: int = Field(default=100, ge=0)
    group: list[int] = Field(default_factory=lambda: [2])
    kmax: int = Field(default=4, ge=1)
    workers: int | None = Field(default=None, ge=1)
    out: str | None = None
    format: Literal["json", "text"] = "json"
    corrupt_frobenius: bool = False

    @field_validator("n", "ell", "group", mode="before")
    @classmethod
    def parse_int_lists(cls, value: Any) -> Any:
        return _parse_int_list(value)

    @field_validator("t0", mode="before")
    @classmethod
    def parse_t0(cls, value: Any) -> Any:
        """A string is one T0 set of comma-separated places; a flat list of places is one set."""
        if isinstance(value, str):
            return [[part for part in value.split(",") if part]]
        if isinstance(value, list) and value and all(isinstance(v, str) for v in value):
            return [[part for v in value for part in v.split(",") if part]]
        return value

    @field_validator("s0", mode="before")
    @classmethod
    def parse_s0(cls, value: Any) -> Any:
        if isinstance(value, str):
            return [part for part in value.split(",") if part]
        return value

    @field_validator("q")
    @classmethod
    def check_q(cls, value: int) -> int:
        if value > settings.max_field_order:
            raise ValueError(f"q={value} exceeds max_field_order={settings.max_field_order}")
        return value

    @field_validator("n")
    @classmethod
    def check_n(cls, value: list[int]) -> list[int]:
        if not value:
            raise ValueError("n range is empty")
        if any(v < 1 for v in value):
            raise ValueError("n values must be positive")
        return sorted(set(value))

    @field_validator("ell")
    @classmethod
    def check_ell(cls, value: list[int]) -> list[int]:
        bad = [v for v in value if not isprime(v)]
        if bad:
            raise ValueError(f"not prime: {bad}")
        return sorted(set(value))

    @field_validator("group")
    @classmethod
    def check_group(cls, value: list[int]) -> list[int]:
        if any(v < 1 for v in value):
            raise ValueError("cyclic orders must be positive")
        return value

    @model_validator(mode="after")
    def check_model_spec(self) -> "RunConfig":
        if self.command == "fitlab":
            return self
        if self.kind is ExtensionKind.CARLITZ and self.m is None:
            raise ValueError("carlitz models need a modulus m")
        if self.kind is ExtensionKind.CONSTANT and self.r is None:
            raise ValueError("constant field models need a degree r")
        if self.command in ("verify", "cs-report") and min(self.n) < 2:
            raise ValueError("special values need n >= 2")
        return self

    def report_dict(self) -> dict:
        """The configuration as embedded in reports (output location excluded)."""
        return self.model_dump(mode="json", exclude={"out", "format"})
