"""Small parsers shared by the element text encodings."""

import re

from app.monoid.errors import ElementParseError

_ENTRY = re.compile(r"\s*([A-Za-z_][\w]*|\d+)\s*:\s*([+-]?\d+)\s*")
_BASE_DELTA = re.compile(r"^\s*base\s*=\s*([^;]*?)\s*(?:;\s*delta\s*=\s*(.*?))?\s*$", re.DOTALL)


def parse_braced_map(text: str, offset: int = 0, source: str | None = None) -> list[tuple[str, int]]:
    """
    Parse `{key: n, key: +n}` into (key, n) pairs in order of appearance.

    Args:
        text: The braced map text
        offset: Position of `text` inside `source`, for error locations
        source: Full input (defaults to `text`)

    Returns:
        List of (key, value) pairs; duplicate keys are rejected
    """
    source = text if source is None else source
    stripped = text.strip()
    lead = offset + (len(text) - len(text.lstrip()))
    closer = {"{": "}", "[": "]"}.get(stripped[:1])
    if closer is None:
        raise ElementParseError("expected '{'", source, lead)
    if not stripped.endswith(closer):
        raise ElementParseError(f"expected '{closer}'", source, lead + len(stripped))
    body = stripped[1:-1]
    pairs: list[tuple[str, int]] = []
    if not body.strip():
        return pairs
    position = lead + 1
    seen: set[str] = set()
    for chunk in body.split(","):
        match = _ENTRY.fullmatch(chunk)
        if match is None:
            raise ElementParseError(f"malformed entry {chunk.strip()!r}", source, position)
        key = match.group(1)
        if key in seen:
            raise ElementParseError(f"duplicate key {key!r}", source, position)
        seen.add(key)
        pairs.append((key, int(match.group(2))))
        position += len(chunk) + 1
    return pairs


def split_base_delta(text: str) -> tuple[str, str, int] | None:
    """
    Split `base=B; delta={...}` into (B, delta text, delta offset).

    Returns None when the text is not in base/delta form. A missing delta
    part yields "{}".
    """
    match = _BASE_DELTA.match(text)
    if match is None:
        return None
    base = match.group(1)
    if match.group(2) is None:
        return base, "{}", len(text)
    return base, match.group(2), match.start(2)


def parse_count(text: str, what: str, source: str, position: int) -> int:
    """A non-negative integer field."""
    try:
        value = int(text.strip())
    except ValueError as e:
        raise ElementParseError(f"{what} must be an integer", source, position) from e
    if value < 0:
        raise ElementParseError(f"{what} must be non-negative", source, position)
    return value
