"""Unit matrices, the complex Hadamard test and the real-entry census.

Indices are 0-based throughout.  Text format::

    n
    <n phase tokens>
    ...

with tokens from :mod:`chmreal.phasecore`.
"""

from __future__ import annotations

import math
from dataclasses import dataclass
from functools import cached_property, reduce
from pathlib import Path
from typing import Iterable, Sequence

import numpy as np

from .phasecore import (
    EntryClass,
    Phase,
    PhaseParseError,
    Radians,
    Turn,
    classify,
    format_phase,
    parse_phase,
    phase_conj,
    phase_mul,
    t,
    to_complex,
    vanishes_exactly,
)

EXACT = "exact"
NUMERIC = "numeric"
DEFAULT_TOL = 1e-9


class ExactModeUnavailable(ValueError):
    pass


class MatrixParseError(ValueError):
    def __init__(self, message: str, line: int, column: int):
        super().__init__(f"line {line}, column {column}: {message}")
        self.line = line
        self.column = column


@dataclass(frozen=True)
class UnitMatrix:
    """Grid of phases.

    Square in every use except the 3x6 row prefixes of order-six CHMs, so
    ``shape`` may be rectangular; ``n`` insists on a square.
    """

    entries: tuple[tuple[Phase, ...], ...]

    def __post_init__(self):
        rows = tuple(tuple(row) for row in self.entries)
        if not rows or not rows[0]:
            raise ValueError("empty matrix")
        width = len(rows[0])
        for row in rows:
            if len(row) != width:
                raise ValueError("ragged rows")
            for x in row:
                if not isinstance(x, (Turn, Radians)):
                    raise TypeError(f"entry {x!r} is not a Phase")
        object.__setattr__(self, "entries", rows)

    @classmethod
    def from_rows(cls, rows: Iterable[Iterable[Phase]]) -> UnitMatrix:
        return cls(tuple(tuple(r) for r in rows))

    @classmethod
    def from_exponents(cls, exps, q: int) -> UnitMatrix:
        """Entry ``(j, k)`` is ``t(exps[j][k] / q)``."""
        return cls(tuple(tuple(t(int(e) % q, q) for e in row) for row in np.asarray(exps)))

    @property
    def shape(self) -> tuple[int, int]:
        return len(self.entries), len(self.entries[0])

    @property
    def n(self) -> int:
        rows, cols = self.shape
        if rows != cols:
            raise ValueError(f"matrix of shape {self.shape} has no order")
        return rows

    @property
    def is_square(self) -> bool:
        rows, cols = self.shape
        return rows == cols

    def __getitem__(self, jk: tuple[int, int]) -> Phase:
        j, k = jk
        return self.entries[j][k]

    def __iter__(self):
        return iter(self.entries)

    @cached_property
    def is_rational(self) -> bool:
        return all(isinstance(x, Turn) for row in self.entries for x in row)

    @cached_property
    def denominator(self) -> int:
        """Least common denominator of all turns (rational matrices only)."""
        if not self.is_rational:
            raise ExactModeUnavailable("matrix has entries given in radians")
        return reduce(math.lcm, (x.denominator for row in self.entries for x in row), 1)

    def exponents(self, q: int | None = None) -> np.ndarray:
        """Integer array ``E`` with entry ``(j, k) == t(E[j, k] / q)``."""
        q = self.denominator if q is None else q
        out = np.empty(self.shape, dtype=np.int64)
        for j, row in enumerate(self.entries):
            for k, x in enumerate(row):
                v = x.value * q
                if v.denominator != 1:
                    raise ValueError(f"{x!r} is not a {q}-th root of unity")
                out[j, k] = v.numerator
        return out

    def to_numpy(self) -> np.ndarray:
        return np.array([[to_complex(x) for x in row] for row in self.entries])

    def classes(self) -> list[list[EntryClass]]:
        return [[classify(x) for x in row] for row in self.entries]

    def real_mask(self) -> np.ndarray:
        return np.array([[c is EntryClass.REAL for c in row] for row in self.classes()])

    def row(self, j: int) -> tuple[Phase, ...]:
        return self.entries[j]

    def __str__(self) -> str:
        return format_matrix(self)


@dataclass(frozen=True)
class Census:
    real_count: int
    imaginary_array: tuple[int, ...]
    per_row_counts: tuple[int, ...]
    per_column_counts: tuple[int, ...]
    approximate: bool = False


def census(M: UnitMatrix) -> Census:
    """Count real entries; per-row and per-column counts are of non-real entries."""
    real = M.real_mask()
    nonreal = ~real
    rows = tuple(int(x) for x in nonreal.sum(axis=1))
    cols = tuple(int(x) for x in nonreal.sum(axis=0))
    return Census(
        real_count=int(real.sum()),
        imaginary_array=tuple(sorted(rows)),
        per_row_counts=rows,
        per_column_counts=cols,
        approximate=not M.is_rational,
    )


def real_count(M: UnitMatrix) -> int:
    return census(M).real_count


# -- orthogonality -----------------------------------------------------------

def _pairs(n: int) -> tuple[np.ndarray, np.ndarray]:
    a, b = np.triu_indices(n, k=1)
    return a, b


def rows_orthogonal_exact(E: np.ndarray, q: int) -> bool:
    """All rows of ``t(E/q)`` pairwise orthogonal, decided in Q(zeta_q)."""
    if E.shape[0] < 2:
        return True
    a, b = _pairs(E.shape[0])
    diffs = (E[b] - E[a]) % q
    return bool(vanishes_exactly(diffs, q).all())


def rows_orthogonal_numeric(Z: np.ndarray, tol: float = DEFAULT_TOL) -> bool:
    G = Z.conj() @ Z.T
    np.fill_diagonal(G, 0)
    return bool(np.abs(G).max(initial=0.0) < tol)


def is_chm(M: UnitMatrix, mode: str = NUMERIC, tol: float = DEFAULT_TOL) -> bool:
    """Whether ``M`` has pairwise orthogonal rows.

    ``mode="exact"`` works in the cyclotomic field of the common denominator
    and needs every entry to be a rational turn.
    """
    if not M.is_square:
        return False
    if mode == EXACT:
        if not M.is_rational:
            raise ExactModeUnavailable("exact mode needs rational turns only")
        q = M.denominator
        E = M.exponents(q)
        ok = rows_orthogonal_exact(E, q)
        if ok:
            assert rows_orthogonal_exact(E.T.copy(), q), "rows orthogonal but columns not"
        return ok
    if mode == NUMERIC:
        return rows_orthogonal_numeric(M.to_numpy(), tol)
    raise ValueError(f"unknown mode {mode!r}")


def rows_pairwise_orthogonal(M: UnitMatrix, tol: float = DEFAULT_TOL) -> bool:
    """Orthogonality of the rows of a possibly rectangular matrix."""
    if M.is_rational:
        return rows_orthogonal_exact(M.exponents(), M.denominator)
    return rows_orthogonal_numeric(M.to_numpy(), tol)


# -- builders and elementary maps -------------------------------------------

def fourier(n: int) -> UnitMatrix:
    if n < 1:
        raise ValueError("order must be positive")
    return UnitMatrix(tuple(tuple(t(j * k % n, n) for k in range(n)) for j in range(n)))


def transpose(M: UnitMatrix) -> UnitMatrix:
    return UnitMatrix(tuple(zip(*M.entries)))


def conjugate(M: UnitMatrix) -> UnitMatrix:
    return UnitMatrix(tuple(tuple(phase_conj(x) for x in row) for row in M.entries))


def kron(A: UnitMatrix, B: UnitMatrix) -> UnitMatrix:
    ra, ca = A.shape
    rb, cb = B.shape
    return UnitMatrix(tuple(
        tuple(phase_mul(A[j // rb, k // cb], B[j % rb, k % cb]) for k in range(ca * cb))
        for j in range(ra * rb)
    ))


def scale(M: UnitMatrix, rows: Sequence[Phase] | None = None,
          cols: Sequence[Phase] | None = None) -> UnitMatrix:
    """``diag(rows) @ M @ diag(cols)``."""
    nr, nc = M.shape
    rows = rows if rows is not None else (t(0),) * nr
    cols = cols if cols is not None else (t(0),) * nc
    return UnitMatrix(tuple(
        tuple(phase_mul(phase_mul(rows[j], M[j, k]), cols[k]) for k in range(nc))
        for j in range(nr)
    ))


def times(M: UnitMatrix, c: Phase) -> UnitMatrix:
    return UnitMatrix(tuple(tuple(phase_mul(c, x) for x in row) for row in M.entries))


# -- text I/O ----------------------------------------------------------------

def format_matrix(M: UnitMatrix) -> str:
    rows, cols = M.shape
    header = str(rows) if rows == cols else f"{rows} {cols}"
    lines = [header]
    for row in M.entries:
        lines.append(" ".join(format_phase(x) for x in row))
    return "\n".join(lines) + "\n"


def parse_matrix(text: str) -> UnitMatrix:
    lines = text.splitlines()
    # skip leading blank lines
    idx = 0
    while idx < len(lines) and not lines[idx].strip():
        idx += 1
    if idx == len(lines):
        raise MatrixParseError("empty input", 1, 1)
    head = lines[idx].split()
    try:
        dims = [int(x) for x in head]
    except ValueError:
        raise MatrixParseError(f"expected order, got {lines[idx].strip()!r}", idx + 1, 1) from None
    if len(dims) == 1:
        nrows = ncols = dims[0]
    elif len(dims) == 2:
        nrows, ncols = dims
    else:
        raise MatrixParseError("header must be 'n' or 'rows cols'", idx + 1, 1)
    if nrows < 1 or ncols < 1:
        raise MatrixParseError("order must be positive", idx + 1, 1)
    body = [(i + 1, line) for i, line in enumerate(lines[idx + 1:], start=idx + 1) if line.strip()]
    if len(body) != nrows:
        where = body[-1][0] if body else idx + 1
        raise MatrixParseError(f"expected {nrows} rows, found {len(body)}", where, 1)
    rows = []
    for lineno, line in body:
        row = []
        col = 0
        for token in line.split():
            col = line.index(token, col)
            try:
                row.append(parse_phase(token))
            except PhaseParseError as exc:
                raise MatrixParseError(str(exc), lineno, col + 1) from None
            col += len(token)
        if len(row) != ncols:
            raise MatrixParseError(f"expected {ncols} entries, found {len(row)}", lineno, 1)
        rows.append(tuple(row))
    return UnitMatrix(tuple(rows))


def load_matrix(path: str | Path) -> UnitMatrix:
    return parse_matrix(Path(path).read_text())


def save_matrix(M: UnitMatrix, path: str | Path) -> None:
    Path(path).write_text(format_matrix(M))
