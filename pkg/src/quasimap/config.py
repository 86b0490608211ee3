"""Parameter sets for the experiment scripts."""

from __future__ import annotations

from dataclasses import dataclass, field

from .quadric import HYPERBOLIC, ORTHONORMAL


@dataclass(frozen=True)
class SeriesTableConfig:
    ns: tuple = (3, 4, 5, 6)
    windows: tuple = ((0, 0), (0, 1), (1, 1), (0, 2))
    degree: int = 8
    coords: str = HYPERBOLIC


@dataclass(frozen=True)
class BrstScanConfig:
    triples: tuple = ((3, 0, 0), (3, 0, 1), (4, 0, 1), (5, 0, 0), (2, 0, 1), (2, 0, 2))
    degree: int = 6
    coords: str = ORTHONORMAL


@dataclass(frozen=True)
class SemiInfScanConfig:
    specs: tuple = ((3, 0, 1), (3, 1, 1), (4, 1, 1))
    T: int = 3
    Q: int = 2
    z_ns: tuple = (3, 4, 5, 6)
    z_weight: int = 4


@dataclass
class RunOptions:
    out: str | None = None
    extra: dict = field(default_factory=dict)
