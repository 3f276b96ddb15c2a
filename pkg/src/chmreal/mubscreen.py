"""Unbiasedness tests and two quick exclusions for order-six MUB trios.

A CHM ``H`` gives the orthonormal basis ``H / sqrt(n)``.  A member of a
trio of such bases (together with the identity) cannot have more than 22
real entries, nor a 3x2 block of real entries.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass

import numpy as np

from .equivalence import DimensionMismatch
from .matrix import Census, UnitMatrix, census, is_chm

UNBIASED_TOL = 1e-9
MAX_TRIO_REAL = 22


class NotACHM(ValueError):
    pass


class Verdict(str, enum.Enum):
    EXCLUDED_BY_COUNT = "excluded-by-count"
    EXCLUDED_BY_SUBMATRIX = "excluded-by-submatrix"
    NOT_EXCLUDED = "not-excluded"


@dataclass(frozen=True)
class RealSubmatrix:
    rows: tuple[int, ...]
    cols: tuple[int, ...]


@dataclass(frozen=True)
class ScreenVerdict:
    verdict: Verdict
    census: Census
    witness: RealSubmatrix | None = None

    @property
    def count(self) -> int:
        return self.census.real_count

    @property
    def excluded(self) -> bool:
        return self.verdict is not Verdict.NOT_EXCLUDED

    def line(self) -> str:
        out = f"verdict={self.verdict.value} count={self.count}"
        if self.witness is not None:
            out += (f" witness_rows={','.join(map(str, self.witness.rows))}"
                    f" witness_cols={','.join(map(str, self.witness.cols))}")
        return out

    def as_dict(self) -> dict:
        d = {"verdict": self.verdict.value, "count": self.count}
        if self.witness is not None:
            d["witness_rows"] = list(self.witness.rows)
            d["witness_cols"] = list(self.witness.cols)
        return d


def identity_basis(n: int) -> np.ndarray:
    return np.eye(n, dtype=complex)


def _basis(B: UnitMatrix | np.ndarray) -> np.ndarray:
    """Orthonormal columns: unit matrices get the 1/sqrt(n) scaling, arrays pass through."""
    if isinstance(B, UnitMatrix):
        return B.to_numpy() / np.sqrt(B.n)
    return np.asarray(B, dtype=complex)


def is_unbiased(A: UnitMatrix | np.ndarray, B: UnitMatrix | np.ndarray,
                tol: float = UNBIASED_TOL) -> bool:
    """Every column inner product between the two bases has modulus ``1/sqrt(d)``."""
    X, Y = _basis(A), _basis(B)
    if X.shape != Y.shape or X.shape[0] != X.shape[1]:
        raise DimensionMismatch(f"bases of shapes {X.shape} and {Y.shape}")
    d = X.shape[0]
    return bool(np.all(np.abs(np.abs(X.conj().T @ Y) - 1 / np.sqrt(d)) < tol))


def real_submatrix_exists(M: UnitMatrix, r: int, c: int) -> RealSubmatrix | None:
    """First ``r x c`` all-real block, scanning column subsets in lexicographic order."""
    nr, nc = M.shape
    if not (1 <= r <= nr and 1 <= c <= nc):
        raise ValueError("block larger than the matrix")
    R = M.real_mask()
    for cols in itertools.combinations(range(nc), c):
        rows = np.flatnonzero(R[:, list(cols)].all(axis=1))
        if len(rows) >= r:
            return RealSubmatrix(tuple(int(x) for x in rows[:r]), cols)
    return None


def screen(M: UnitMatrix, tol: float = 1e-9) -> ScreenVerdict:
    if M.shape != (6, 6) or not is_chm(M, tol=tol):
        raise NotACHM("screening needs a 6x6 complex Hadamard matrix")
    cen = census(M)
    if cen.real_count > MAX_TRIO_REAL:
        return ScreenVerdict(Verdict.EXCLUDED_BY_COUNT, cen)
    w = real_submatrix_exists(M, 3, 2)
    if w is not None:
        return ScreenVerdict(Verdict.EXCLUDED_BY_SUBMATRIX, cen, w)
    return ScreenVerdict(Verdict.NOT_EXCLUDED, cen)
