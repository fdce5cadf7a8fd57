from dataclasses import dataclass, field
from enum import Enum


class Convention(str, Enum):
    internal = "ij"
    macaulay = "macaulay"


@dataclass(frozen=True)
class BettiTable:
    """Graded Betti numbers beta_{i,j}; only non-zero entries are stored."""

    n: int
    entries: dict[tuple[int, int], int] = field(hash=False)
    truncated: bool = False
    max_j: int | None = None

    def __getitem__(self, key: tuple[int, int]) -> int:
        return self.entries.get(key, 0)

    def get(self, i: int, j: int) -> int:
        return self.entries.get((i, j), 0)

    @property
    def max_i(self) -> int:
        return max((i for i, _ in self.entries), default=0)

    @property
    def max_row(self) -> int:
        return max((j - i for i, j in self.entries), default=0)

    def grid(self, convention: Convention = Convention.macaulay) -> list[list[int]]:
        """Rows j-i (Macaulay2) or j, columns i = 0..max_i."""
        n_cols = self.max_i + 1
        if convention == Convention.macaulay:
            n_rows = self.max_row + 1
            return [[self.get(i, i + row) for i in range(n_cols)] for row in range(n_rows)]
        n_rows = max((j for _, j in self.entries), default=0) + 1
        return [[self.get(i, j) for i in range(n_cols)] for j in range(n_rows)]

    def __str__(self):
        rows = self.grid(Convention.macaulay)
        totals = [sum(row[i] for row in rows) for i in range(len(rows[0]))] if rows else []
        width = max([len(str(x)) for row in rows for x in row] + [len(str(t)) for t in totals] + [1])
        header = "       " + " ".join(f"{i:>{width}}" for i in range(len(totals)))
        lines = [header, "total: " + " ".join(f"{t:>{width}}" for t in totals)]
        for r, row in enumerate(rows):
            cells = " ".join(f"{(str(x) if x else '.'):>{width}}" for x in row)
            lines.append(f"{str(r) + ':':>6} {cells}")
        return "\n".join(lines)


@dataclass(frozen=True)
class PersistentBettiTable(BettiTable):
    t: float = 0.0
    t_prime: float = 0.0
    modulus: int = 2


@dataclass(frozen=True)
class HVector:
    coefficients: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, m: int) -> int:
        return self.coefficients[m]

    @property
    def d(self) -> int:
        return len(self.coefficients) - 1

    @property
    def has_negative(self) -> bool:
        return any(c < 0 for c in self.coefficients)


@dataclass(frozen=True)
class FVector:
    """(f_{-1}, f_0, ..., f_{d-1}); index 0 holds f_{-1}."""

    coefficients: tuple[int, ...]

    def __len__(self) -> int:
        return len(self.coefficients)

    def __getitem__(self, k: int) -> int:
        return self.coefficients[k]

    @property
    def d(self) -> int:
        return len(self.coefficients) - 1
