"""Verification parameters passed through the library."""

from dataclasses import dataclass, replace

from .types import SearchBound


@dataclass(frozen=True)
class VerificationParams:
    """Bounds shared by convergence, divergence and factorisation checks."""

    window: int = 12
    degree: int = 4
    max_factors: int = 3
    depth: int = 32
    level: int = 10
    seed: int = 0
    qmax: int = 1_000_000
    superset_samples: int = 200
    exhaustive_extension_limit: int = 10
    multiplicity_cap: int = 10_000
    separation_max_level: int = 64

    @classmethod
    def from_settings(cls, settings) -> "VerificationParams":
        """Create params from application settings."""
        return cls(
            window=settings.window,
            degree=settings.degree,
            max_factors=settings.max_factors,
            depth=settings.depth,
            level=settings.level,
            seed=settings.seed,
            qmax=settings.qmax,
            superset_samples=settings.superset_samples,
            exhaustive_extension_limit=settings.exhaustive_extension_limit,
            multiplicity_cap=settings.multiplicity_cap,
            separation_max_level=settings.separation_max_level,
        )

    @property
    def bound(self) -> SearchBound:
        return SearchBound(window=self.window, degree=self.degree)

    @property
    def repetition_threshold(self) -> int:
        """A factor occurring more often than this within the first `depth`
        positions of an infinite stream counts as repeating forever."""
        return min(max(2, self.depth // 2), self.multiplicity_cap)

    def with_overrides(self, **changes) -> "VerificationParams":
        """Copy with the given non-None fields replaced."""
        return replace(self, **{k: v for k, v in changes.items() if v is not None})
