"""Exhaustive censuses of small CHMs whose entries are q-th roots of unity."""

from __future__ import annotations

import itertools
import math
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from pathlib import Path

import numpy as np

from ..matrix import EXACT, UnitMatrix, format_matrix, is_chm

FULL = "full"
PARAMETERIZED = "parameterized"
FULL_PRUNED = "full-pruned"
DEFAULT_MODE = {2: FULL, 3: PARAMETERIZED, 4: FULL_PRUNED}
MAX_Q = {2: 24, 3: 12, 4: 8}
TOL = 1e-9


class InfeasibleSweep(ValueError):
    pass


@dataclass
class SweepReport:
    n: int
    q: int
    mode: str
    observed_counts: set[int] = field(default_factory=set)
    matrices_enumerated: int = 0
    chms_found: int = 0
    witnesses: dict[int, UnitMatrix] = field(default_factory=dict)

    def summary(self) -> str:
        obs = "{" + ",".join(map(str, sorted(self.observed_counts))) + "}"
        return (f"n={self.n} q={self.q} mode={self.mode}\n"
                f"enumerated={self.matrices_enumerated} chms={self.chms_found}\n"
                f"observed = {obs}")

    def as_dict(self, witness_paths: dict[int, str] | None = None) -> dict:
        return {
            "n": self.n,
            "q": self.q,
            "mode": self.mode,
            "observed": sorted(self.observed_counts),
            "enumerated": self.matrices_enumerated,
            "chms": self.chms_found,
            "witnesses": {str(m): (witness_paths or {}).get(m) for m in sorted(self.witnesses)},
        }


def _real_exponent(E: np.ndarray, q: int) -> np.ndarray:
    return (E % (q // 2) == 0) if q % 2 == 0 else (E % q == 0)


def _record(report: SweepReport, counts: np.ndarray, build) -> None:
    for m in np.unique(counts).tolist():
        report.observed_counts.add(int(m))
        if m not in report.witnesses:
            W = build(int(np.flatnonzero(counts == m)[0]))
            assert is_chm(W, EXACT), "sweep witness failed the exact check"
            report.witnesses[int(m)] = W


def _sweep2(q: int) -> SweepReport:
    rep = SweepReport(2, q, FULL)
    E = np.array(list(itertools.product(range(q), repeat=4)), dtype=np.int64)
    Z = np.exp(2j * np.pi * E / q)
    inner = Z[:, 0].conj() * Z[:, 1] + Z[:, 2].conj() * Z[:, 3]
    ok = np.abs(inner) < TOL
    rep.matrices_enumerated = len(E)
    rep.chms_found = int(ok.sum())
    good = E[ok]
    counts = _real_exponent(good, q).sum(axis=1)
    _record(rep, counts, lambda i: UnitMatrix.from_exponents(good[i].reshape(2, 2), q))
    return rep


def _sweep3(q: int) -> SweepReport:
    rep = SweepReport(3, q, PARAMETERIZED)
    L = math.lcm(q, 3)
    s = L // q
    f3 = np.array([[(j * k) % 3 for k in range(3)] for j in range(3)]) * (L // 3)
    for V in (f3, (-f3) % L):
        # a1 fixed at 0: (c D1) V (D2 / c) is the same matrix
        P = np.array(list(itertools.product(range(q), repeat=5)), dtype=np.int64) * s
        a = np.concatenate([np.zeros((len(P), 1), dtype=np.int64), P[:, :2]], axis=1)
        b = P[:, 2:]
        E = (a[:, :, None] + V[None] + b[:, None, :]) % L
        counts = _real_exponent(E, L).sum(axis=(1, 2))
        rep.matrices_enumerated += len(P)
        rep.chms_found += len(P)
        _record(rep, counts, lambda i, E=E: UnitMatrix.from_exponents(E[i], L))
    return rep


def _unit_rows(q: int) -> np.ndarray:
    rows = np.array(list(itertools.product(range(q), repeat=4)), dtype=np.int64)
    if q % 2 == 0:
        # rows up to sign: a row and its negative give the same orthogonality and census
        rows = rows[rows[:, 0] < q // 2]
    return rows


def _cliques4(args) -> tuple[dict[int, tuple[int, ...]], int]:
    q, starts = args
    rows = _unit_rows(q)
    Z = np.exp(2j * np.pi * rows / q)
    G = np.abs(Z.conj() @ Z.T) < TOL
    # bit k of nbr[j] set iff rows j and k are orthogonal
    nbr = [int("".join("1" if x else "0" for x in g[::-1]), 2) for g in G]
    real = _real_exponent(rows, q).sum(axis=1)
    found: dict[int, tuple[int, ...]] = {}
    total = 0
    for a in starts:
        ma = (nbr[a] >> (a + 1)) << (a + 1)
        while ma:
            low = ma & -ma
            b = low.bit_length() - 1
            ma ^= low
            mb = ma & nbr[b]
            while mb:
                low = mb & -mb
                c = low.bit_length() - 1
                mb ^= low
                mc = mb & nbr[c]
                while mc:
                    low = mc & -mc
                    d = low.bit_length() - 1
                    mc ^= low
                    total += 1
                    m = int(real[a] + real[b] + real[c] + real[d])
                    if m not in found:
                        found[m] = (a, b, c, d)
    return found, total


def _sweep4(q: int, threads: int = 1) -> SweepReport:
    """Depth-first over rows drawn from the orthogonality graph of unit rows.

    Rows are taken in increasing index order and only up to sign, so each
    enumerated matrix stands for the 4! * 2**4 matrices obtained by
    permuting and negating its rows, all with the same census.
    """
    rep = SweepReport(4, q, FULL_PRUNED)
    rows = _unit_rows(q)
    N = len(rows)
    threads = max(1, threads)
    chunks = [list(range(i, N, threads)) for i in range(threads)]
    if threads == 1:
        results = [_cliques4((q, chunks[0]))]
    else:
        with ProcessPoolExecutor(threads) as ex:
            results = list(ex.map(_cliques4, [(q, c) for c in chunks]))
    best: dict[int, tuple[int, ...]] = {}
    for found, total in results:
        rep.matrices_enumerated += total
        for m, w in found.items():
            if m not in best or w < best[m]:
                best[m] = w
    rep.chms_found = rep.matrices_enumerated
    for m in sorted(best):
        W = UnitMatrix.from_exponents(rows[list(best[m])], q)
        assert is_chm(W, EXACT), "sweep witness failed the exact check"
        rep.observed_counts.add(m)
        rep.witnesses[m] = W
    return rep


def grid_sweep(n: int, q: int, mode: str | None = None, threads: int = 1) -> SweepReport:
    """Census every CHM of order ``n`` over the q-th roots of unity.

    n=2 enumerates all q**4 matrices; n=3 sweeps ``D1 V D2`` over both
    3x3 Fourier forms; n=4 extends rows depth-first through the
    orthogonality graph.
    """
    if n not in DEFAULT_MODE:
        raise InfeasibleSweep(f"no sweep for n = {n}")
    mode = mode or DEFAULT_MODE[n]
    if mode != DEFAULT_MODE[n]:
        raise InfeasibleSweep(f"n = {n} supports only mode {DEFAULT_MODE[n]!r}")
    if not 1 <= q <= MAX_Q[n]:
        raise InfeasibleSweep(f"n = {n} sweeps need 1 <= q <= {MAX_Q[n]}")
    if n == 2:
        return _sweep2(q)
    if n == 3:
        return _sweep3(q)
    return _sweep4(q, threads)


def write_witnesses(report: SweepReport, directory: str | Path) -> dict[int, str]:
    d = Path(directory)
    d.mkdir(parents=True, exist_ok=True)
    out = {}
    for m, W in sorted(report.witnesses.items()):
        path = d / f"n{report.n}_q{report.q}_count{m}.txt"
        path.write_text(format_matrix(W))
        out[m] = str(path)
    return out


def format_report(report: SweepReport, witness_paths: dict[int, str] | None = None) -> str:
    lines = [report.summary()]
    for m in sorted(report.observed_counts):
        path = (witness_paths or {}).get(m, "-")
        lines.append(f"count={m} witness={path}")
    return "\n".join(lines) + "\n"
