"""Monomial transforms, dephasing and brute-force permutation equivalence.

A :class:`MonomialTransform` acts as ``M -> P @ Dr @ M @ Dc @ Q``.  Reading
right to left: the column permutation is applied first, then the column
phases, then the row phases, then the row permutation.  In index form::

    out[j, k] = row_phases[p] * M[p, c] * col_phases[c]
        with p = row_perm[j], c = col_perm[k]

so ``row_perm[j]`` names the source row that lands in output row ``j``, and
phases are indexed by source row/column.  Worked 2x2 example: with
``row_perm=(1, 0)``, ``row_phases=(1, i)``, ``col_phases=(1, 1)``,
``col_perm=(0, 1)`` the matrix ``[[1, 1], [1, -1]]`` becomes
``[[i, -i], [1, 1]]``: source row 1 is scaled by ``i`` and moved to the top.
"""

from __future__ import annotations

import itertools
import math
from collections import Counter
from dataclasses import dataclass
from fractions import Fraction
from pathlib import Path
from typing import Sequence

import numpy as np

from .matrix import UnitMatrix, census
from .phasecore import (
    ONE,
    Phase,
    PhaseParseError,
    angle,
    format_phase,
    parse_phase,
    phase_conj,
    phase_mul,
    t,
)

MAX_EQUIVALENCE_ORDER = 8
RADIANS_TOL = 1e-12


class DimensionMismatch(ValueError):
    pass


class OrderTooLarge(ValueError):
    pass


class TransformParseError(ValueError):
    pass


def _check_perm(p: Sequence[int], n: int) -> tuple[int, ...]:
    p = tuple(int(x) for x in p)
    if sorted(p) != list(range(n)):
        raise ValueError(f"{p} is not a permutation of 0..{n - 1}")
    return p


def _inverse(p: Sequence[int]) -> tuple[int, ...]:
    inv = [0] * len(p)
    for j, s in enumerate(p):
        inv[s] = j
    return tuple(inv)


@dataclass(frozen=True)
class MonomialTransform:
    row_perm: tuple[int, ...]
    row_phases: tuple[Phase, ...]
    col_phases: tuple[Phase, ...]
    col_perm: tuple[int, ...]

    def __post_init__(self):
        n = len(self.row_perm)
        if not (len(self.row_phases) == len(self.col_phases) == len(self.col_perm) == n):
            raise DimensionMismatch("transform components have different lengths")
        object.__setattr__(self, "row_perm", _check_perm(self.row_perm, n))
        object.__setattr__(self, "col_perm", _check_perm(self.col_perm, n))
        object.__setattr__(self, "row_phases", tuple(self.row_phases))
        object.__setattr__(self, "col_phases", tuple(self.col_phases))

    @property
    def n(self) -> int:
        return len(self.row_perm)

    @property
    def is_permutation(self) -> bool:
        return all(x == ONE for x in self.row_phases + self.col_phases)

    @classmethod
    def identity(cls, n: int) -> MonomialTransform:
        return cls(tuple(range(n)), (ONE,) * n, (ONE,) * n, tuple(range(n)))

    @classmethod
    def permutation(cls, row_perm: Sequence[int], col_perm: Sequence[int]) -> MonomialTransform:
        n = len(row_perm)
        return cls(tuple(row_perm), (ONE,) * n, (ONE,) * n, tuple(col_perm))

    @classmethod
    def scaling(cls, row_phases: Sequence[Phase], col_phases: Sequence[Phase]) -> MonomialTransform:
        n = len(row_phases)
        return cls(tuple(range(n)), tuple(row_phases), tuple(col_phases), tuple(range(n)))

    def __matmul__(self, other: MonomialTransform) -> MonomialTransform:
        return compose(self, other)


def apply(T: MonomialTransform, M: UnitMatrix) -> UnitMatrix:
    n = M.n
    if T.n != n:
        raise DimensionMismatch(f"transform of order {T.n} applied to matrix of order {n}")
    rp, cp = T.row_perm, T.col_perm
    rows = []
    for j in range(n):
        p = rp[j]
        src = M.entries[p]
        rphase = T.row_phases[p]
        rows.append(tuple(phase_mul(phase_mul(rphase, src[c]), T.col_phases[c]) for c in cp))
    return UnitMatrix(tuple(rows))


def compose(T1: MonomialTransform, T2: MonomialTransform) -> MonomialTransform:
    """Transform equal to applying ``T2`` first, then ``T1``."""
    if T1.n != T2.n:
        raise DimensionMismatch("cannot compose transforms of different orders")
    n = T1.n
    rp = tuple(T2.row_perm[T1.row_perm[j]] for j in range(n))
    cp = tuple(T2.col_perm[T1.col_perm[k]] for k in range(n))
    inv_r, inv_c = _inverse(T2.row_perm), _inverse(T2.col_perm)
    rph = tuple(phase_mul(T1.row_phases[inv_r[s]], T2.row_phases[s]) for s in range(n))
    cph = tuple(phase_mul(T1.col_phases[inv_c[s]], T2.col_phases[s]) for s in range(n))
    return MonomialTransform(rp, rph, cph, cp)


def dephase(M: UnitMatrix) -> tuple[UnitMatrix, MonomialTransform]:
    """Complex-equivalent matrix with first row and column all ones, plus the witness."""
    n = M.n
    corner = M[0, 0]
    row_phases = tuple(phase_conj(M[j, 0]) for j in range(n))
    col_phases = tuple(phase_mul(phase_conj(M[0, k]), corner) for k in range(n))
    T = MonomialTransform.scaling(row_phases, col_phases)
    return apply(T, M), T


# -- permutation equivalence -------------------------------------------------

def _phase_ids(*matrices: UnitMatrix) -> list[np.ndarray]:
    """Integer labels for entries, equal labels meaning equal phases."""
    if all(M.is_rational for M in matrices):
        table: dict[Fraction, int] = {}
        out = []
        for M in matrices:
            out.append(np.array([[table.setdefault(x.value, len(table)) for x in row] for row in M.entries]))
        return out
    # cluster angles on the circle within RADIANS_TOL
    values = sorted({angle(x) % (2 * math.pi) for M in matrices for row in M.entries for x in row})
    labels: dict[float, int] = {}
    current = -1
    prev = None
    for v in values:
        if prev is None or v - prev > RADIANS_TOL:
            current += 1
        labels[v] = current
        prev = v
    if len(values) > 1 and values[0] + 2 * math.pi - values[-1] <= RADIANS_TOL:
        last = labels[values[-1]]
        for v in values:
            if labels[v] == last:
                labels[v] = labels[values[0]]
    return [np.array([[labels[angle(x) % (2 * math.pi)] for x in row] for row in M.entries])
            for M in matrices]


def _line_signature(A: np.ndarray, axis: int) -> Counter:
    lines = A if axis == 0 else A.T
    return Counter(tuple(sorted(line.tolist())) for line in lines)


def _match_permutations(M: UnitMatrix, N: UnitMatrix) -> tuple[tuple[int, ...], tuple[int, ...]] | None:
    """Row and column permutations taking ``N`` to ``M``; any common shape."""
    if M.shape != N.shape:
        raise DimensionMismatch(f"shapes {M.shape} and {N.shape} differ")
    if max(M.shape) > MAX_EQUIVALENCE_ORDER:
        raise OrderTooLarge(f"brute-force equivalence is limited to n <= {MAX_EQUIVALENCE_ORDER}")
    nrows = M.shape[0]
    cm, cn = census(M), census(N)
    if cm.imaginary_array != cn.imaginary_array or \
            sorted(cm.per_column_counts) != sorted(cn.per_column_counts):
        return None
    A, B = _phase_ids(M, N)
    if _line_signature(A, 0) != _line_signature(B, 0) or _line_signature(A, 1) != _line_signature(B, 1):
        return None
    row_keys_a = [tuple(sorted(r.tolist())) for r in A]
    row_keys_b = [tuple(sorted(r.tolist())) for r in B]
    target_cols = Counter(tuple(c) for c in A.T.tolist())

    assignment = [-1] * nrows
    used = [False] * nrows

    def search(j: int):
        if j == nrows:
            Bp = B[assignment]
            if Counter(tuple(c) for c in Bp.T.tolist()) != target_cols:
                return None
            # match columns greedily; multisets agree so this succeeds
            pool: dict[tuple, list[int]] = {}
            for k, col in enumerate(Bp.T.tolist()):
                pool.setdefault(tuple(col), []).append(k)
            col_perm = [pool[tuple(col)].pop() for col in A.T.tolist()]
            return tuple(assignment), tuple(col_perm)
        for s in range(nrows):
            if not used[s] and row_keys_b[s] == row_keys_a[j]:
                used[s] = True
                assignment[j] = s
                # partial check: columns restricted to assigned rows must match as multisets
                part_a = Counter(tuple(c) for c in A[: j + 1].T.tolist())
                part_b = Counter(tuple(c) for c in B[assignment[: j + 1]].T.tolist())
                if part_a == part_b:
                    found = search(j + 1)
                    if found is not None:
                        return found
                used[s] = False
        assignment[j] = -1
        return None

    return search(0)


def find_equivalence(M: UnitMatrix, N: UnitMatrix) -> MonomialTransform | None:
    """Permutations ``P, Q`` with ``M == P N Q``, as a transform acting on ``N``."""
    if not (M.is_square and N.is_square):
        raise DimensionMismatch("transforms need square matrices; use are_equivalent")
    found = _match_permutations(M, N)
    return None if found is None else MonomialTransform.permutation(*found)


def are_equivalent(M: UnitMatrix, N: UnitMatrix) -> bool:
    """Whether ``M == P N Q`` for permutation matrices ``P, Q`` (sides up to 8).

    Rectangular inputs of equal shape are allowed.
    """
    return _match_permutations(M, N) is not None


# -- random orbits -----------------------------------------------------------

def random_transform(n: int, rng: np.random.Generator, roots: int,
                     p_one: float = 0.0) -> MonomialTransform:
    """Random permutations with phases uniform over the ``roots``-th roots of unity.

    With ``p_one > 0`` each phase is independently left at 1 with that
    probability, which keeps some real structure in the orbit.
    """
    row_perm = tuple(int(x) for x in rng.permutation(n))
    col_perm = tuple(int(x) for x in rng.permutation(n))
    ks = rng.integers(0, roots, size=2 * n)
    if p_one > 0:
        ks[rng.random(2 * n) < p_one] = 0
    phases = [t(int(k), roots) for k in ks]
    return MonomialTransform(row_perm, tuple(phases[:n]), tuple(phases[n:]), col_perm)


def random_permutation(n: int, rng: np.random.Generator) -> MonomialTransform:
    return MonomialTransform.permutation(tuple(int(x) for x in rng.permutation(n)),
                                         tuple(int(x) for x in rng.permutation(n)))


def random_orbit(M: UnitMatrix, seed: int, roots: int, p_one: float = 0.0) -> UnitMatrix:
    """Deterministic pseudorandom monomial image of ``M``.

    Randomness comes from numpy's PCG64 generator seeded with ``seed``.
    """
    rng = np.random.Generator(np.random.PCG64(seed))
    return apply(random_transform(M.n, rng, roots, p_one), M)


# -- text format -------------------------------------------------------------

_KEYS = ("rowperm", "rowphases", "colphases", "colperm")


def format_transform(T: MonomialTransform) -> str:
    return (
        f"rowperm: {' '.join(map(str, T.row_perm))}\n"
        f"rowphases: {' '.join(format_phase(x) for x in T.row_phases)}\n"
        f"colphases: {' '.join(format_phase(x) for x in T.col_phases)}\n"
        f"colperm: {' '.join(map(str, T.col_perm))}\n"
    )


def parse_transform(text: str) -> MonomialTransform:
    fields: dict[str, list[str]] = {}
    for lineno, line in enumerate(text.splitlines(), start=1):
        if not line.strip():
            continue
        key, sep, rest = line.partition(":")
        key = key.strip()
        if not sep or key not in _KEYS:
            raise TransformParseError(f"line {lineno}: expected one of {', '.join(_KEYS)}")
        if key in fields:
            raise TransformParseError(f"line {lineno}: duplicate {key}")
        fields[key] = rest.split()
    missing = [k for k in _KEYS if k not in fields]
    if missing:
        raise TransformParseError(f"missing {', '.join(missing)}")
    try:
        rp = [int(x) for x in fields["rowperm"]]
        cp = [int(x) for x in fields["colperm"]]
        rph = [parse_phase(x) for x in fields["rowphases"]]
        cph = [parse_phase(x) for x in fields["colphases"]]
        return MonomialTransform(tuple(rp), tuple(rph), tuple(cph), tuple(cp))
    except (ValueError, PhaseParseError) as exc:
        raise TransformParseError(str(exc)) from None


def load_transform(path: str | Path) -> MonomialTransform:
    return parse_transform(Path(path).read_text())
