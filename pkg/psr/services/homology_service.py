import math
from typing import Optional, Sequence

import numpy as np

from psr.errors import InvalidParameterError
from psr.logger import get_logger
from psr.models.complex_model import SimplicialComplex
from psr.models.filtration_model import Filtration
from psr.models.homology_model import Barcode, BoundaryMatrix, Interval, PrimeField
from psr.models.simplex import Simplex
from psr.services.filtration_service import filtration_service
from psr.utils.linalg import nullspace_mod_p, rank_mod_p

logger = get_logger(__name__)

EMPTY_FACE = ()


def _boundary_array(rows: Sequence, cols: Sequence[Simplex], p: int) -> np.ndarray:
    """Signed incidence matrix; an empty-face row gives the augmentation map."""
    matrix = np.zeros((len(rows), len(cols)), dtype=np.int64)
    if rows and rows[0] == EMPTY_FACE:
        matrix[0, :] = 1
        return matrix
    index = {face: r for r, face in enumerate(rows)}
    for c, face in enumerate(cols):
        for k, sub in enumerate(face.boundary()):
            # boundary() drops vertices from last to first
            sign = (-1) ** (face.dim - k)
            matrix[index[sub], c] = sign % p
    return matrix


def _reduced_betti_from_faces(by_dim: dict[int, list[Simplex]], p: int) -> tuple[int, ...]:
    top = max(by_dim, default=-1)
    chain_dims = [1] + [len(by_dim.get(q, [])) for q in range(top + 1)]
    # ranks[q + 1] = rank of the boundary map out of degree q, for q = -1..top+1
    ranks = [0] * (top + 3)
    for q in range(top + 1):
        rows = [EMPTY_FACE] if q == 0 else by_dim.get(q - 1, [])
        cols = by_dim.get(q, [])
        if rows and cols:
            ranks[q + 1] = rank_mod_p(_boundary_array(rows, cols, p), p)
    return tuple(chain_dims[q + 1] - ranks[q + 1] - ranks[q + 2] for q in range(-1, top + 1))


def _reduce_columns(columns: list[list[tuple[int, int]]], p: int) -> dict[int, int]:
    """Standard column reduction; returns {pivot row: column} for every non-zero reduced column."""
    pivot_of: dict[int, int] = {}
    if p == 2:
        reduced_bits: dict[int, int] = {}
        for j, entries in enumerate(columns):
            bits = 0
            for row, _ in entries:
                bits ^= 1 << row
            while bits:
                low = bits.bit_length() - 1
                if low not in pivot_of:
                    pivot_of[low] = j
                    reduced_bits[j] = bits
                    break
                bits ^= reduced_bits[pivot_of[low]]
        return pivot_of

    size = len(columns)
    reduced: dict[int, np.ndarray] = {}
    for j, entries in enumerate(columns):
        col = np.zeros(size, dtype=np.int64)
        for row, value in entries:
            col[row] = value % p
        nonzero = np.flatnonzero(col)
        while nonzero.size:
            low = int(nonzero[-1])
            if low not in pivot_of:
                pivot_of[low] = j
                reduced[j] = col
                break
            other = reduced[pivot_of[low]]
            factor = (int(col[low]) * pow(int(other[low]), -1, p)) % p
            col = (col - factor * other) % p
            nonzero = np.flatnonzero(col)
    return pivot_of


class HomologyService:
    @staticmethod
    def boundary_matrix(complex: SimplicialComplex, q: int, field: PrimeField = PrimeField()) -> BoundaryMatrix:
        """Matrix of the boundary map C_q -> C_{q-1}; q = 0 is the augmentation."""
        if q < 0:
            raise InvalidParameterError(f"No boundary map out of degree {q}")
        cols = tuple(complex.by_dim.get(q, []))
        rows = (EMPTY_FACE,) if q == 0 else tuple(complex.by_dim.get(q - 1, []))
        return BoundaryMatrix(rows, cols, _boundary_array(rows, cols, field.p), field)

    @staticmethod
    def reduced_betti(complex: SimplicialComplex, field: PrimeField = PrimeField()) -> tuple[int, ...]:
        """(b_-1, b_0, ..., b_dim) of reduced homology with coefficients in field."""
        return _reduced_betti_from_faces(complex.by_dim, field.p)

    @staticmethod
    def reduced_betti_number(complex: SimplicialComplex, q: int, field: PrimeField = PrimeField()) -> int:
        betti = HomologyService.reduced_betti(complex, field)
        return betti[q + 1] if -1 <= q < len(betti) - 1 else 0

    @staticmethod
    def persistence_barcode(
        filtration: Filtration,
        field: PrimeField = PrimeField(),
        max_dim: Optional[int] = None,
        keep_zero_length: bool = False,
    ) -> Barcode:
        """Interval decomposition of the (unreduced) persistent homology."""
        if max_dim is None:
            max_dim = filtration.complex.dim
        # (value, dimension, vertices) order
        order = [face for face in filtration.ordered_faces() if face.dim <= max_dim + 1]
        position = {face: k for k, face in enumerate(order)}
        columns = []
        for face in order:
            entries = []
            for k, sub in enumerate(face.boundary()):
                entries.append((position[sub], (-1) ** (face.dim - k)))
            columns.append(entries)
        pivot_of = _reduce_columns(columns, field.p)

        killed = set(pivot_of.values())
        intervals = []
        for low, j in pivot_of.items():
            face = order[low]
            if face.dim > max_dim:
                continue
            birth, death = filtration[face], filtration[order[j]]
            if death > birth or keep_zero_length:
                intervals.append(Interval(face.dim, birth, death))
        for k, face in enumerate(order):
            if k in killed or k in pivot_of or face.dim > max_dim:
                continue
            intervals.append(Interval(face.dim, filtration[face], math.inf))
        intervals.sort()
        logger.debug(f"Persistence barcode: {len(order)} faces, {len(intervals)} intervals")
        return Barcode(tuple(intervals))

    @staticmethod
    def persistent_rank(
        filtration: Filtration,
        q: int,
        t: float,
        t_prime: float,
        field: PrimeField = PrimeField(),
        reduced: bool = True,
        barcode: Optional[Barcode] = None,
    ) -> int:
        """Rank of the map H_q(sublevel t) -> H_q(sublevel t') induced by inclusion."""
        if t > t_prime:
            raise InvalidParameterError(f"Persistent rank needs t <= t', got t={t}, t'={t_prime}")
        if q < -1:
            return 0
        if q == -1:
            if not reduced:
                return 0
            return int(all(value > t_prime for value in filtration.values.values()))
        if barcode is None:
            barcode = HomologyService.persistence_barcode(filtration, field, max_dim=q)
        count = barcode.count_alive(q, t, t_prime)
        if reduced and q == 0 and count > 0:
            count -= 1
        return count

    @staticmethod
    def induced_map_rank(
        filtration: Filtration,
        q: int,
        t: float,
        t_prime: float,
        field: PrimeField = PrimeField(),
        reduced: bool = True,
    ) -> int:
        """Rank of the inclusion-induced map computed directly from cycle and boundary spaces.

        rank = dim(Z_q(X) + B_q(Y)) - dim B_q(Y) for X = sublevel(t), Y = sublevel(t').
        """
        if t > t_prime:
            raise InvalidParameterError(f"Persistent rank needs t <= t', got t={t}, t'={t_prime}")
        p = field.p
        source = filtration_service.sublevel(filtration, t)
        target = filtration_service.sublevel(filtration, t_prime)
        if q == -1:
            if not reduced:
                return 0
            return int(not target.faces)

        target_faces = target.by_dim.get(q, [])
        source_faces = source.by_dim.get(q, [])
        if not source_faces:
            return 0
        if q > 0 or reduced:
            rows = [EMPTY_FACE] if q == 0 else source.by_dim.get(q - 1, [])
            cycles = nullspace_mod_p(_boundary_array(rows, source_faces, p), p, len(source_faces))
        else:
            cycles = np.eye(len(source_faces), dtype=np.int64)
        if cycles.shape[1] == 0:
            return 0
        where = {face: r for r, face in enumerate(target_faces)}
        embedded = np.zeros((len(target_faces), cycles.shape[1]), dtype=np.int64)
        for r, face in enumerate(source_faces):
            embedded[where[face]] = cycles[r]
        boundaries = _boundary_array(target_faces, target.by_dim.get(q + 1, []), p)
        combined = np.hstack([boundaries, embedded])
        return rank_mod_p(combined, p) - rank_mod_p(boundaries, p)


homology_service = HomologyService()
