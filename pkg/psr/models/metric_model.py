import math
from dataclasses import dataclass
from enum import Enum

from psr.errors import InvalidParameterError


class Component(str, Enum):
    interior = "interior"
    minus_inf_birth = "minus_inf_birth"
    plus_inf_death = "plus_inf_death"
    both_infinite = "both_infinite"


@dataclass(frozen=True, order=True)
class ExtendedPoint:
    birth: float
    death: float

    def __post_init__(self):
        if math.isnan(self.birth) or math.isnan(self.death):
            raise InvalidParameterError("Diagram coordinates cannot be NaN")
        if self.birth > self.death:
            raise InvalidParameterError(f"Point ({self.birth}, {self.death}) lies below the diagonal")
        if self.birth == math.inf or self.death == -math.inf:
            raise InvalidParameterError("Births cannot be +inf and deaths cannot be -inf")

    @property
    def component(self) -> Component:
        low = self.birth == -math.inf
        high = self.death == math.inf
        if low and high:
            return Component.both_infinite
        if low:
            return Component.minus_inf_birth
        if high:
            return Component.plus_inf_death
        return Component.interior


@dataclass(frozen=True)
class Matching:
    pairs: frozenset[tuple[int, int]]

    def __post_init__(self):
        left = [a for a, _ in self.pairs]
        right = [b for _, b in self.pairs]
        if len(set(left)) != len(left) or len(set(right)) != len(right):
            raise InvalidParameterError("A partial matching uses each point at most once")


@dataclass(frozen=True)
class StabilityReport:
    bottleneck: float
    sup_norm: float
    tolerance: float = 1e-9

    @property
    def passed(self) -> bool:
        return self.bottleneck <= self.sup_norm + self.tolerance
