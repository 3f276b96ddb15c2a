"""Structural constraints on where real entries can sit in a CHM.

Every check looks at lines (rows, then columns through the transpose).  Most
compare two lines through their entrywise quotient ``B_k / A_k``; the
order-six checks also read the raw real/non-real pattern.  A check returns
``None`` when the matrix satisfies it and a :class:`Violation` otherwise.
"""

from __future__ import annotations

import enum
import itertools
from dataclasses import dataclass
from functools import lru_cache

import numpy as np

from ..matrix import UnitMatrix, is_chm
from ..phasecore import EPS_CLASS, angle
from .three_rows import GRID, canonical_key


class NotApplicable(ValueError):
    pass


class NotACHMError(ValueError):
    pass


class PredicateId(str, enum.Enum):
    NO_SINGLE_NONREAL_QUOTIENT = "ii.a"
    NO_TRIPLE_NONREAL_QUOTIENT = "ii.b"
    PAIRED_NONREAL_QUOTIENT = "ii.c"
    THREE_ROW_SYSTEM = "ii.d"
    NO_REAL_QUOTIENT_ODD = "iii"
    NO_TWO_REAL_QUOTIENTS = "iv"
    NO_REAL_4X3 = "v"
    SINGLE_NONREAL_SPREAD = "vi"
    FORBIDDEN_PATTERNS = "vii"
    SHARED_NONREAL_POSITION = "viii"


@dataclass(frozen=True)
class Violation:
    predicate: PredicateId
    axis: str                     # "rows" or "cols"
    lines: tuple[int, ...]
    positions: tuple[int, ...] = ()
    detail: str = ""

    def __str__(self) -> str:
        where = ",".join(map(str, self.lines))
        pos = ",".join(map(str, self.positions))
        return f"{self.predicate.value} {self.axis}={where} positions={pos} {self.detail}".rstrip()


def applies(n: int, pid: PredicateId) -> bool:
    P = PredicateId
    if pid in (P.NO_TRIPLE_NONREAL_QUOTIENT, P.PAIRED_NONREAL_QUOTIENT):
        return n % 2 == 0
    if pid is P.NO_REAL_QUOTIENT_ODD:
        return n % 2 == 1
    if pid is P.NO_TWO_REAL_QUOTIENTS:
        return n % 4 == 2
    if pid is P.NO_SINGLE_NONREAL_QUOTIENT:
        return n >= 2
    return n == 6


class _Lines:
    """Phases of one orientation as exact exponents mod ``q`` or float turns."""

    def __init__(self, P: np.ndarray, q: int | None):
        self.P = P
        self.q = q

    def sub(self, x, y):
        return (x - y) % (self.q or 1)

    def real(self, x) -> np.ndarray:
        if self.q is None:
            return np.abs(np.sin(2 * np.pi * x)) < EPS_CLASS
        return (x % (self.q // 2) == 0) if self.q % 2 == 0 else (x % self.q == 0)

    def imag(self, x) -> np.ndarray:
        if self.q is None:
            return np.abs(np.cos(2 * np.pi * x)) < EPS_CLASS
        if self.q % 4:
            return np.zeros(np.shape(x), dtype=bool)
        return x % (self.q // 2) == self.q // 4

    def to_grid(self, x, m: int) -> np.ndarray | None:
        if self.q is None:
            y = np.asarray(x) * m
            if np.abs(y - np.rint(y)).max() > 1e-9:
                return None
            return np.rint(y).astype(np.int64) % m
        y = np.asarray(x) * m
        if (y % self.q).any():
            return None
        return (y // self.q) % m

    @property
    def quotients(self) -> np.ndarray:
        """``Q[a, b, k]`` is the phase of ``B_k / A_k`` for lines a and b."""
        return self.sub(self.P[None, :, :], self.P[:, None, :])


def _orientations(M: UnitMatrix) -> list[tuple[str, _Lines]]:
    if M.is_rational:
        q = M.denominator
        P = M.exponents(q) % q
    else:
        q = None
        P = np.array([[angle(x) / (2 * np.pi) % 1.0 for x in row] for row in M.entries])
    return [("rows", _Lines(P, q)), ("cols", _Lines(P.T.copy(), q))]


@lru_cache(maxsize=1)
def _three_row_keys() -> frozenset:
    from ..constructions import h6_prefix
    return frozenset(canonical_key(h6_prefix(k).exponents(GRID), GRID) for k in range(1, 5))


def _nonreal_quotient_counts(L: _Lines) -> tuple[np.ndarray, np.ndarray]:
    Q = L.quotients
    NR = ~L.real(Q)
    return Q, NR


def _check_single(L, axis, pid, want):
    _, NR = _nonreal_quotient_counts(L)
    cnt = NR.sum(axis=-1)
    n = len(cnt)
    for a, b in itertools.combinations(range(n), 2):
        if cnt[a, b] == want:
            return Violation(pid, axis, (a, b), tuple(np.flatnonzero(NR[a, b]).tolist()),
                             f"quotient has {want} non-real entries")
    return None


def _check_paired(L, axis, pid):
    Q, NR = _nonreal_quotient_counts(L)
    n = len(Q)
    for a, b in itertools.combinations(range(n), 2):
        pos = np.flatnonzero(NR[a, b])
        if len(pos) == 2:
            k, l = pos
            if not L.real(L.sub(Q[a, b, k], Q[a, b, l])):
                return Violation(pid, axis, (a, b), (int(k), int(l)),
                                 "non-real quotient entries neither equal nor opposite")
    return None


def _check_three_row(L, axis, pid):
    Q, NR = _nonreal_quotient_counts(L)
    cnt = NR.sum(axis=-1)
    n = len(Q)
    keys = _three_row_keys()
    for a in range(n):
        others = [b for b in range(n) if b != a and cnt[a, b] == 2]
        for b, c in itertools.combinations(others, 2):
            S = np.stack([np.zeros(n, dtype=Q.dtype), Q[a, b], Q[a, c]])
            G = L.to_grid(S, GRID)
            if G is None or canonical_key(G, GRID) not in keys:
                return Violation(pid, axis, (a, b, c), (), "three-row system outside the known classes")
    return None


def _check_odd_real(L, axis, pid):
    return _check_single(L, axis, pid, 0)


def _check_two_real(L, axis, pid):
    _, NR = _nonreal_quotient_counts(L)
    realq = ~NR.any(axis=-1)
    n = len(realq)
    for a in range(n):
        hits = [b for b in range(n) if b != a and realq[a, b]]
        if len(hits) >= 2:
            return Violation(pid, axis, (a, hits[0], hits[1]), (),
                             "two lines with all-real quotients against one line")
    return None


def _check_real_block(L, axis, pid):
    R = L.real(L.P)
    n = len(R)
    for cols in itertools.combinations(range(n), 3):
        lines = np.flatnonzero(R[:, list(cols)].all(axis=1))
        if len(lines) >= 4:
            return Violation(pid, axis, tuple(lines[:4].tolist()), cols, "4x3 block of real entries")
    return None


def _check_single_spread(L, axis, pid):
    NR = ~L.real(L.P)
    single = [j for j in range(len(NR)) if NR[j].sum() == 1]
    if len(single) < 3:
        return None
    pos = [int(np.flatnonzero(NR[j])[0]) for j in single]
    if len(set(pos)) != len(pos):
        return Violation(pid, axis, tuple(single), tuple(pos), "single non-real entries share a column")
    vals = np.array([L.P[j, k] for j, k in zip(single, pos)])
    if not L.imag(vals).all():
        return Violation(pid, axis, tuple(single), tuple(pos), "single non-real entry not +-i")
    return None


# column requirements per forbidden pattern, as (line0, line1, line2) with
# "R" real, "N" non-real, None unconstrained
_PATTERNS = {
    "RRRRIC/RRRRIC/RRRCRC": [("R", "R", "R")] * 3 + [("R", "R", None), ("N", "N", "R"), (None, None, None)],
    "RRRRRC/RRRRRC/RRRCCC": [("R", "R", "R")] * 3 + [("R", "R", None)] * 2 + [(None, None, None)],
}


def _accepted_codes(req) -> int:
    """Bitmask over 3-bit column codes (bit 2 = line0 real) that satisfy ``req``."""
    mask = 0
    for code in range(8):
        bits = ((code >> 2) & 1, (code >> 1) & 1, code & 1)
        if all(w is None or (w == "R") == bool(b) for w, b in zip(req, bits)):
            mask |= 1 << code
    return mask


_PATTERN_MASKS = {name: [_accepted_codes(r) for r in reqs] for name, reqs in _PATTERNS.items()}


def _perfect_matching(adj: list[list[int]], n: int) -> bool:
    match = [-1] * n

    def augment(u, seen):
        for v in adj[u]:
            if v not in seen:
                seen.add(v)
                if match[v] < 0 or augment(match[v], seen):
                    match[v] = u
                    return True
        return False

    return all(augment(u, set()) for u in range(len(adj)))


def _check_patterns(L, axis, pid):
    R = L.real(L.P).astype(np.int64)
    n = len(R)
    for a, b in itertools.combinations(range(n), 2):
        for c in range(n):
            if c in (a, b) or (R[a] & R[b] & R[c]).sum() < 3:
                continue
            codes = (R[a] << 2) | (R[b] << 1) | R[c]
            for name, masks in _PATTERN_MASKS.items():
                adj = [[k for k in range(n) if (m >> codes[k]) & 1] for m in masks]
                if _perfect_matching(adj, n):
                    return Violation(pid, axis, (a, b, c), (), f"pattern {name}")
    return None


def _check_shared_position(L, axis, pid):
    NR = ~L.real(L.P)
    n = len(NR)
    twos = {j: set(np.flatnonzero(NR[j]).tolist()) for j in range(n) if NR[j].sum() == 2}
    for A, B in itertools.permutations(twos, 2):
        common = twos[A] & twos[B]
        if len(common) != 1:
            continue
        (p,) = common
        (s,) = twos[B] - common
        if not L.real(L.sub(L.P[A, p], L.P[B, p])):
            return Violation(pid, axis, (A, B), (p,), "shared non-real entries not real multiples")
        if L.real(L.sub(L.P[B, p], L.P[B, s])) and not L.imag(L.P[B, [p, s]]).all():
            return Violation(pid, axis, (A, B), (p, s), "real-ratio pair not +-i")
    return None


_CHECKS = {
    PredicateId.NO_SINGLE_NONREAL_QUOTIENT: lambda L, ax, p: _check_single(L, ax, p, 1),
    PredicateId.NO_TRIPLE_NONREAL_QUOTIENT: lambda L, ax, p: _check_single(L, ax, p, 3),
    PredicateId.PAIRED_NONREAL_QUOTIENT: _check_paired,
    PredicateId.THREE_ROW_SYSTEM: _check_three_row,
    PredicateId.NO_REAL_QUOTIENT_ODD: _check_odd_real,
    PredicateId.NO_TWO_REAL_QUOTIENTS: _check_two_real,
    PredicateId.NO_REAL_4X3: _check_real_block,
    PredicateId.SINGLE_NONREAL_SPREAD: _check_single_spread,
    PredicateId.FORBIDDEN_PATTERNS: _check_patterns,
    PredicateId.SHARED_NONREAL_POSITION: _check_shared_position,
}


def _run(M: UnitMatrix, pid: PredicateId, orients) -> Violation | None:
    for axis, L in orients:
        v = _CHECKS[pid](L, axis, pid)
        if v is not None:
            return v
    return None


def predicate_check(M: UnitMatrix, pid: PredicateId | str, verify: bool = True) -> Violation | None:
    pid = PredicateId(pid)
    n = M.n
    if not applies(n, pid):
        raise NotApplicable(f"{pid.value} does not apply to order {n}")
    if verify and not is_chm(M):
        raise NotACHMError("input is not a complex Hadamard matrix")
    return _run(M, pid, _orientations(M))


def check_all(M: UnitMatrix, verify: bool = True) -> dict[PredicateId, Violation | None]:
    """Run every predicate that applies to the order of ``M``."""
    if verify and not is_chm(M):
        raise NotACHMError("input is not a complex Hadamard matrix")
    orients = _orientations(M)
    return {pid: _run(M, pid, orients) for pid in PredicateId if applies(M.n, pid)}
