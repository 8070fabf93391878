"""Registry of instance kinds and their constructor parameters."""

from typing import Any, Type

from app.instances import (
    FreeMonoid,
    HarmonicMonoid,
    IntegersDemo,
    PointwiseSequences,
    QPlus,
    RestrictedSequences,
    SeriesMonoid,
)

from .base import TopologicalMonoid
from .errors import InvalidInstanceParams, UnknownInstanceError


class InstanceRegistry:
    """
    Registry of monoid instance kinds.

    Maps a kind name to its class and the keyword parameters it accepts,
    with CLI-friendly aliases (n -> gens, vars -> nvars).
    """

    BUILTIN_INSTANCES: dict[str, Type[TopologicalMonoid]] = {
        "free": FreeMonoid,
        "qplus": QPlus,
        "harmonic": HarmonicMonoid,
        "series": SeriesMonoid,
        "pointwise": PointwiseSequences,
        "restricted": RestrictedSequences,
        "integers-demo": IntegersDemo,
    }

    PARAMETERS: dict[str, tuple[str, ...]] = {
        "free": ("gens", "names"),
        "qplus": (),
        "harmonic": ("window",),
        "series": ("nvars", "precision"),
        "pointwise": ("window",),
        "restricted": ("window",),
        "integers-demo": (),
    }

    ALIASES: dict[str, str] = {"n": "gens", "vars": "nvars", "integers": "integers-demo"}

    # Instances that violate the standing assumptions and stay out of law suites.
    DEMO_ONLY: frozenset[str] = frozenset({"integers-demo"})

    @classmethod
    def kinds(cls) -> list[str]:
        return list(cls.BUILTIN_INSTANCES.keys())

    @classmethod
    def create(cls, kind: str, **params: Any) -> TopologicalMonoid:
        """
        Build an instance of the given kind.

        Args:
            kind: Registered kind name (or alias)
            **params: Constructor parameters; None values are ignored

        Raises:
            UnknownInstanceError: If the kind is not registered
            InvalidInstanceParams: If a parameter is unsupported or out of range
        """
        kind = cls.ALIASES.get(kind, kind)
        if kind not in cls.BUILTIN_INSTANCES:
            raise UnknownInstanceError(
                f"Unknown instance kind: {kind} (known: {', '.join(cls.kinds())})"
            )
        accepted = cls.PARAMETERS[kind]
        kwargs: dict[str, Any] = {}
        for key, value in params.items():
            if value is None:
                continue
            key = cls.ALIASES.get(key, key)
            if key not in accepted:
                raise InvalidInstanceParams(f"{kind} does not take parameter {key!r}")
            kwargs[key] = value
        try:
            return cls.BUILTIN_INSTANCES[kind](**kwargs)
        except TypeError as e:
            raise InvalidInstanceParams(f"invalid parameters for {kind}: {e}") from e
