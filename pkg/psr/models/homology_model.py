import math
from dataclasses import dataclass

import numpy as np

from psr.config import is_prime
from psr.errors import InvalidParameterError
from psr.models.simplex import Simplex


@dataclass(frozen=True)
class PrimeField:
    p: int = 2

    def __post_init__(self):
        if not is_prime(self.p):
            raise InvalidParameterError(f"Field modulus {self.p} is not prime")

    def inverse(self, a: int) -> int:
        return pow(int(a) % self.p, -1, self.p)


@dataclass(frozen=True, eq=False)
class BoundaryMatrix:
    """Matrix of the boundary map from ``cols`` (q-faces) to ``rows`` ((q-1)-faces).

    The augmented degree-0 map has a single row for the empty face, stored as ``()``.
    """

    rows: tuple
    cols: tuple[Simplex, ...]
    matrix: np.ndarray
    field: PrimeField


@dataclass(frozen=True, order=True)
class Interval:
    dim: int
    birth: float
    death: float = math.inf

    def __post_init__(self):
        if self.death < self.birth:
            raise InvalidParameterError(f"Interval death {self.death} before birth {self.birth}")


@dataclass(frozen=True)
class Barcode:
    intervals: tuple[Interval, ...]

    def __len__(self) -> int:
        return len(self.intervals)

    def in_dimension(self, q: int) -> list[Interval]:
        return [iv for iv in self.intervals if iv.dim == q]

    def count_alive(self, q: int, t: float, t_prime: float) -> int:
        """Intervals of dimension q born by t and still alive after t_prime."""
        return sum(1 for iv in self.intervals if iv.dim == q and iv.birth <= t and iv.death > t_prime)
