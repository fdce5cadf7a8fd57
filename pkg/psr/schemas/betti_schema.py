from typing import Optional

from pydantic import BaseModel, Field

from psr.models.betti_model import BettiTable, PersistentBettiTable
from psr.schemas.barcode_schema import decode_end, encode_end


class BettiEntry(BaseModel):
    i: int = Field(..., ge=0)
    j: int = Field(..., ge=0)
    beta: int = Field(..., ge=0)


class BettiTableDocument(BaseModel):
    n: int = Field(..., ge=0)
    modulus: int = 2
    entries: list[BettiEntry]
    t: Optional[float] = None
    t_prime: Optional[float] = None
    truncated: bool = False

    def to_domain(self) -> BettiTable:
        entries = {(e.i, e.j): e.beta for e in self.entries if e.beta}
        if self.t is not None:
            return PersistentBettiTable(
                self.n, entries, self.truncated, t=self.t, t_prime=decode_end(self.t_prime), modulus=self.modulus
            )
        return BettiTable(self.n, entries, self.truncated)

    @classmethod
    def from_domain(cls, table: BettiTable, modulus: int = 2, precision: int = 9) -> "BettiTableDocument":
        persistent = isinstance(table, PersistentBettiTable)
        return cls(
            n=table.n,
            modulus=table.modulus if persistent else modulus,
            entries=[BettiEntry(i=i, j=j, beta=v) for (i, j), v in sorted(table.entries.items())],
            t=round(table.t, precision) if persistent else None,
            t_prime=encode_end(table.t_prime, precision) if persistent else None,
            truncated=table.truncated,
        )
