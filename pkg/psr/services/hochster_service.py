from collections import Counter
from itertools import combinations
from math import comb
from typing import Iterable, Optional

from joblib import Parallel, delayed

from psr.errors import EnumerationCapError, InvalidParameterError
from psr.logger import get_logger
from psr.models.betti_model import BettiTable, FVector, HVector, PersistentBettiTable
from psr.models.complex_model import SimplicialComplex
from psr.models.filtration_model import Filtration
from psr.models.homology_model import Barcode, PrimeField
from psr.models.simplex import Simplex
from psr.services.filtration_service import filtration_service
from psr.services.homology_service import _reduced_betti_from_faces, homology_service

logger = get_logger(__name__)

DEFAULT_SUBSET_CAP = 24
# graded entries tracked by betti_curve on five-vertex filtrations
FIVE_VERTEX_ENTRIES = ((4, 5), (1, 3), (2, 4), (2, 5))


def multiset_coefficient(k: int, r: int) -> int:
    """Coefficient of s^r in (1 - s)^(-k): C(k + r - 1, r), with (1 - s)^0 = 1."""
    if r < 0:
        return 0
    if r == 0:
        return 1
    return comb(k + r - 1, r) if k > 0 else 0


def _local_masks(vertex_set: tuple[int, ...], faces: Iterable[Simplex]) -> list[tuple[Simplex, int]]:
    position = {v: k for k, v in enumerate(vertex_set)}
    out = []
    for face in faces:
        mask = 0
        for v in face.vertices:
            mask |= 1 << position[v]
        out.append((face, mask))
    return out


def _check_cap(n: int, cap: int, top: Optional[int] = None):
    if n <= cap:
        return
    # a truncated run is allowed while it visits no more than 2^cap subsets
    if top is not None and top < n and sum(comb(n, j) for j in range(top + 1)) <= 2**cap:
        return
    raise EnumerationCapError(n, cap)


def _static_class(size: int, masked: list[tuple[Simplex, int]], n: int, p: int) -> Counter:
    """Hochster contributions of every vertex subset W with |W| = size."""
    counts: Counter = Counter()
    for positions in combinations(range(n), size):
        w_mask = 0
        for k in positions:
            w_mask |= 1 << k
        by_dim: dict[int, list[Simplex]] = {}
        for face, mask in masked:
            if mask & ~w_mask == 0:
                by_dim.setdefault(face.dim, []).append(face)
        betti = _reduced_betti_from_faces(by_dim, p)
        # H~_r of Delta_W lands in beta_{|W|-r-1, |W|}
        for r, rank in enumerate(betti, start=-1):
            if rank:
                counts[(size - r - 1, size)] += rank
    return counts


def _persistent_class(
    size: int, masked: list[tuple[Simplex, int, float]], n: int, t: float, t_prime: float, field: PrimeField
) -> Counter:
    counts: Counter = Counter()
    for positions in combinations(range(n), size):
        w_mask = 0
        for k in positions:
            w_mask |= 1 << k
        table = {face: value for face, mask, value in masked if mask & ~w_mask == 0}
        present = tuple(sorted({v for face in table for v in face.vertices}))
        restricted = Filtration(SimplicialComplex(present, frozenset(table)), table)
        top = max((face.dim for face in table), default=-1)
        barcode = (
            homology_service.persistence_barcode(restricted, field, max_dim=top)
            if table
            else Barcode(())
        )
        for r in range(-1, top + 1):
            rank = homology_service.persistent_rank(restricted, r, t, t_prime, field, barcode=barcode)
            if rank:
                counts[(size - r - 1, size)] += rank
    return counts


def _run_classes(task, sizes: list[int], threads: int, *args) -> Counter:
    """Run one task per popcount class, in parallel when threads > 1; merge in size order."""
    if threads > 1 and len(sizes) > 1:
        parts = Parallel(n_jobs=threads)(delayed(task)(size, *args) for size in sizes)
    else:
        parts = [task(size, *args) for size in sizes]
    total: Counter = Counter()
    for part in parts:
        total.update(part)
    return total


class HochsterService:
    @staticmethod
    def hochster_table(
        complex: SimplicialComplex,
        field: PrimeField = PrimeField(),
        max_j: Optional[int] = None,
        cap: int = DEFAULT_SUBSET_CAP,
        threads: int = 1,
    ) -> BettiTable:
        """Graded Betti numbers of k[complex] from Hochster's formula; max_j truncates the table."""
        n = complex.n_vertices
        if max_j is not None and max_j < 0:
            raise InvalidParameterError(f"max_j must be >= 0, got {max_j}")
        top = n if max_j is None else min(max_j, n)
        _check_cap(n, cap, top)
        masked = _local_masks(complex.vertex_set, complex.faces)
        logger.info(f"Hochster enumeration over {2 ** n} subsets of {n} vertices (|W| <= {top})")
        counts = _run_classes(_static_class, list(range(top + 1)), threads, masked, n, field.p)
        return BettiTable(n=n, entries=dict(counts), truncated=top < n, max_j=top)

    @staticmethod
    def persistent_hochster_table(
        filtration: Filtration,
        t: float,
        t_prime: float,
        field: PrimeField = PrimeField(),
        cap: int = DEFAULT_SUBSET_CAP,
        threads: int = 1,
    ) -> PersistentBettiTable:
        """beta^{t,t'}_{i,j}: Hochster's sum with homology ranks replaced by persistent ranks."""
        if t > t_prime:
            raise InvalidParameterError(f"Persistent Betti numbers need t <= t', got t={t}, t'={t_prime}")
        vertex_set = filtration.complex.vertex_set
        n = len(vertex_set)
        _check_cap(n, cap)
        masked = [
            (face, mask, filtration[face]) for face, mask in _local_masks(vertex_set, filtration.values)
        ]
        logger.info(f"Persistent Hochster enumeration over {2 ** n} subsets, t={t}, t'={t_prime}")
        counts = _run_classes(
            _persistent_class, list(range(n + 1)), threads, masked, n, t, t_prime, field
        )
        return PersistentBettiTable(n=n, entries=dict(counts), t=t, t_prime=t_prime, modulus=field.p)

    @staticmethod
    def alternating_sums(table: BettiTable) -> list[int]:
        """B_j = sum_i (-1)^i beta_{i,j} for j = 0..n."""
        sums = [0] * (table.n + 1)
        for (i, j), beta in table.entries.items():
            sums[j] += (-1) ** i * beta
        return sums

    @staticmethod
    def h_vector_from_betti(table: BettiTable, n: int, d: int) -> HVector:
        sums = HochsterService.alternating_sums(table)
        sums += [0] * max(0, d + 1 - len(sums))
        return HVector(
            tuple(
                sum(multiset_coefficient(n - d, m - j) * sums[j] for j in range(m + 1))
                for m in range(d + 1)
            )
        )

    @staticmethod
    def f_from_h(h: HVector | Iterable[int], d: int) -> FVector:
        coeffs = tuple(h.coefficients if isinstance(h, HVector) else h)
        if len(coeffs) != d + 1:
            raise InvalidParameterError(f"An h-vector for d={d} has {d + 1} entries, got {len(coeffs)}")
        return FVector(
            tuple(sum(comb(d - i, j - i) * coeffs[i] for i in range(j + 1)) for j in range(d + 1))
        )

    @staticmethod
    def h_from_f(f: FVector | Iterable[int], d: int) -> HVector:
        coeffs = tuple(f.coefficients if isinstance(f, FVector) else f)
        if len(coeffs) != d + 1:
            raise InvalidParameterError(f"An f-vector for d={d} has {d + 1} entries, got {len(coeffs)}")
        if coeffs[0] != 1:
            raise InvalidParameterError(f"f_(-1) must be 1, got {coeffs[0]}")
        return HVector(
            tuple(
                sum((-1) ** (j - i) * comb(d - i, j - i) * coeffs[i] for i in range(j + 1))
                for j in range(d + 1)
            )
        )

    @staticmethod
    def f_from_betti(table: BettiTable, n: int, d: int) -> FVector:
        """f-vector straight from the alternating Betti sums, without forming h."""
        sums = HochsterService.alternating_sums(table)
        sums += [0] * max(0, d + 1 - len(sums))
        return FVector(
            tuple(
                sum(
                    sums[j]
                    * sum(comb(d - i, k - i) * multiset_coefficient(n - d, i - j) for i in range(j, k + 1))
                    for j in range(k + 1)
                )
                for k in range(d + 1)
            )
        )

    @staticmethod
    def persistent_h_vector(
        filtration: Filtration,
        t: float,
        t_prime: float,
        field: PrimeField = PrimeField(),
        cap: int = DEFAULT_SUBSET_CAP,
        threads: int = 1,
    ) -> HVector:
        """h^{t,t'} with n = |vertex set| and d = dim(sublevel t') + 1."""
        if t > t_prime:
            raise InvalidParameterError(f"Persistent h-vectors need t <= t', got t={t}, t'={t_prime}")
        if not filtration_service.sublevel(filtration, t).faces:
            return HVector((1,))
        d = filtration_service.sublevel(filtration, t_prime).dim + 1
        table = HochsterService.persistent_hochster_table(filtration, t, t_prime, field, cap, threads)
        h = HochsterService.h_vector_from_betti(table, table.n, d)
        if h.has_negative:
            logger.warning(f"Persistent h-vector at ({t}, {t_prime}) has negative entries: {h.coefficients}")
        return h

    @staticmethod
    def persistent_f_vector(
        filtration: Filtration,
        t: float,
        t_prime: float,
        field: PrimeField = PrimeField(),
        cap: int = DEFAULT_SUBSET_CAP,
        threads: int = 1,
    ) -> FVector:
        h = HochsterService.persistent_h_vector(filtration, t, t_prime, field, cap, threads)
        return HochsterService.f_from_h(h, h.d)

    @staticmethod
    def hilbert_numerator(table: BettiTable) -> list[int]:
        """Coefficients of Q(s) = sum_j B_j s^j, trailing zeros removed."""
        sums = HochsterService.alternating_sums(table)
        while len(sums) > 1 and sums[-1] == 0:
            sums.pop()
        return sums

    @staticmethod
    def hilbert_series(table: BettiTable, up_to: int) -> list[int]:
        """Coefficients of Q(s) / (1 - s)^n up to degree up_to: the Hilbert function of k[Delta]."""
        sums = HochsterService.alternating_sums(table)
        return [
            sum(sums[j] * multiset_coefficient(table.n, m - j) for j in range(min(m, table.n) + 1))
            for m in range(up_to + 1)
        ]

    @staticmethod
    def hf_curve(
        filtration: Filtration,
        field: PrimeField = PrimeField(),
        lag: int = 0,
        cap: int = DEFAULT_SUBSET_CAP,
        threads: int = 1,
        precision: int = 9,
    ) -> list[dict]:
        """Step data of h^{t,t'} and f^{t,t'} over the critical values."""
        critical = filtration_service.critical_values(filtration, precision).values
        rows = []
        for k, t in enumerate(critical):
            # lag steps ahead, clamped to the last critical value
            t_prime = critical[min(k + lag, len(critical) - 1)]
            h = HochsterService.persistent_h_vector(filtration, t, t_prime, field, cap, threads)
            f = HochsterService.f_from_h(h, h.d)
            rows.append(
                {
                    "t": t,
                    "t_prime": t_prime,
                    "h": list(h.coefficients),
                    "f": list(f.coefficients),
                    "negative_h": h.has_negative,
                }
            )
        return rows

    @staticmethod
    def betti_curve(
        filtration: Filtration,
        field: PrimeField = PrimeField(),
        entries: Optional[list[tuple[int, int]]] = None,
        lag: int = 0,
        cap: int = DEFAULT_SUBSET_CAP,
        threads: int = 1,
        precision: int = 9,
    ) -> list[dict]:
        """Reduced (persistent) Betti numbers next to selected graded Betti entries."""
        critical = filtration_service.critical_values(filtration, precision).values
        barcode = homology_service.persistence_barcode(filtration, field)
        top = filtration.complex.dim
        steps = []
        for k, t in enumerate(critical):
            t_prime = critical[min(k + lag, len(critical) - 1)]
            table = HochsterService.persistent_hochster_table(filtration, t, t_prime, field, cap, threads)
            reduced = [
                homology_service.persistent_rank(filtration, q, t, t_prime, field, barcode=barcode)
                for q in range(-1, top + 1)
            ]
            steps.append((t, t_prime, reduced, table))
        if entries is None and filtration.complex.n_vertices == 5:
            entries = list(FIVE_VERTEX_ENTRIES)
        elif entries is None:
            # every entry that is non-zero somewhere
            entries = sorted({key for *_, table in steps for key in table.entries if key != (0, 0)})
        return [
            {
                "t": t,
                "t_prime": t_prime,
                "reduced_betti": reduced,
                "graded": {f"{i},{j}": table.get(i, j) for i, j in entries},
            }
            for t, t_prime, reduced, table in steps
        ]


hochster_service = HochsterService()
