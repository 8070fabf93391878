"""Stream specification files for eval-product."""

import json
import re
from typing import Optional

from pydantic import BaseModel, ValidationError, field_validator, model_validator

from app.monoid.errors import ElementParseError

_RULE = re.compile(r"^\s*([a-z][a-z-]*)\s*(?:\(\s*([^()]*?)\s*\))?\s*$")


class StreamSpec(BaseModel):
    """A factor stream over one instance, with the check to run on it.

    Exactly one of `factors` (finite stream, element texts) and `rule`
    (generator such as `geometric(1/2)`, `chi-all`, `chi-from(1)`) is set.
    `subset` optionally selects a sub-stream (`squares`, `cofinite(0)`).
    """
    instance: str
    params: dict[str, int] = {}
    factors: Optional[list[str]] = None
    rule: Optional[str] = None
    subset: Optional[str] = None
    candidate: Optional[str] = None
    level: Optional[int] = None
    depth: Optional[int] = None

    @field_validator("rule")
    @classmethod
    def rule_well_formed(cls, v: Optional[str]) -> Optional[str]:
        if v is not None and _RULE.match(v) is None:
            raise ValueError(f"malformed rule {v!r}, expected name or name(args)")
        return v

    @model_validator(mode="after")
    def one_source(self) -> "StreamSpec":
        if (self.factors is None) == (self.rule is None):
            raise ValueError("exactly one of factors and rule must be given")
        if self.factors is not None and not self.factors:
            raise ValueError("factors must be non-empty")
        return self

    @property
    def rule_name(self) -> Optional[str]:
        return _RULE.match(self.rule).group(1) if self.rule else None

    @property
    def rule_args(self) -> list[str]:
        if not self.rule:
            return []
        inner = _RULE.match(self.rule).group(2)
        return [a.strip() for a in inner.split(",")] if inner else []

    @classmethod
    def parse(cls, text: str) -> "StreamSpec":
        """
        Parse a UTF-8 JSON stream specification.

        Raises:
            ElementParseError: With the line and column of the offending
                character for malformed JSON, or of the document for
                schema errors
        """
        try:
            data = json.loads(text)
        except json.JSONDecodeError as e:
            raise ElementParseError(e.msg, text, e.pos) from e
        try:
            return cls.model_validate(data)
        except ValidationError as e:
            first = e.errors()[0]
            where = ".".join(str(p) for p in first["loc"]) or "spec"
            raise ElementParseError(f"{where}: {first['msg']}", text, 0) from e

    def print(self) -> str:
        return json.dumps(self.model_dump(exclude_none=True), sort_keys=True, indent=2) + "\n"
