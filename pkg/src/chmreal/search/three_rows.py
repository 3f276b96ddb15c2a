"""Classification of three mutually orthogonal rows of length six.

The rows considered start with the all-ones row; each of the other two has
exactly two non-real entries drawn from the 12th roots of unity and ``+-1``
everywhere else.  Two systems are identified when they differ by a
permutation of rows, a permutation of columns, or negating whole rows.
Pure permutation equivalence splits the systems into ten classes; allowing
row negation merges them into four.
"""

from __future__ import annotations

import itertools
from functools import lru_cache

import numpy as np

from ..matrix import UnitMatrix

GRID = 12
LENGTH = 6


@lru_cache(maxsize=None)
def _row_maps(rows: int, q: int, negate_rows: bool) -> tuple[np.ndarray, np.ndarray]:
    perms = np.array(list(itertools.permutations(range(rows))))
    choices = (0, q // 2) if negate_rows else (0,)
    signs = np.array(list(itertools.product(choices, repeat=rows)))
    return perms, signs


def canonical_key(E: np.ndarray, q: int = GRID, negate_rows: bool = True) -> tuple[int, ...]:
    """Smallest sorted column list over row permutations and row negations.

    Columns are encoded as base-``q`` integers with the first row most
    significant, so integer order agrees with lexicographic column order.
    """
    E = np.asarray(E, dtype=np.int64) % q
    rows = E.shape[0]
    perms, signs = _row_maps(rows, q, negate_rows)
    F = (E[perms][:, None] + signs[None, :, :, None]) % q      # perm, sign, row, col
    F = F.reshape(-1, rows, E.shape[1])
    weights = q ** np.arange(rows - 1, -1, -1)
    codes = np.sort(np.einsum("vrc,r->vc", F, weights), axis=1)
    best = codes[np.lexsort(codes.T[::-1])[0]]
    return tuple(int(x) for x in best)


def _candidate_rows(q: int) -> np.ndarray:
    """Rows orthogonal to the ones row with exactly two non-real entries."""
    half = q // 2
    nonreal = [e for e in range(q) if e % half]
    z = np.exp(2j * np.pi * np.arange(q) / q)
    rows = []
    for pos in itertools.combinations(range(LENGTH), 2):
        rest = [k for k in range(LENGTH) if k not in pos]
        for a, b in itertools.product(nonreal, repeat=2):
            for signs in itertools.product((0, half), repeat=LENGTH - 2):
                row = np.zeros(LENGTH, dtype=np.int64)
                row[list(pos)] = (a, b)
                row[rest] = signs
                if abs(z[row].sum()) < 1e-9:
                    rows.append(row)
    return np.array(rows)


def three_row_systems(q: int = GRID) -> tuple[np.ndarray, np.ndarray]:
    """Candidate rows and the orthogonal ordered pairs ``(j, k)`` among them."""
    if q % 2:
        raise ValueError("grid must be even")
    rows = _candidate_rows(q)
    Z = np.exp(2j * np.pi * rows / q)
    G = np.abs(Z.conj() @ Z.T) < 1e-9
    np.fill_diagonal(G, False)
    return rows, np.argwhere(G)


def classify_three_rows(q: int = GRID, negate_rows: bool = True) -> list[UnitMatrix]:
    """One representative per class, ordered by canonical key."""
    if q % 12:
        raise ValueError("q must be divisible by 12")
    rows, pairs = three_row_systems(q)
    reps: dict[tuple, np.ndarray] = {}
    for j, k in pairs:
        if j > k:
            continue
        E = np.stack([np.zeros(LENGTH, dtype=np.int64), rows[j], rows[k]])
        key = canonical_key(E, q, negate_rows)
        reps.setdefault(key, E)
    return [UnitMatrix.from_exponents(reps[key], q) for key in sorted(reps)]
