"""Randomized audits over equivalence orbits of known order-six CHMs.

Samples are drawn in fixed-size chunks, each with its own child seed spawned
from the master seed, so results do not depend on the worker count.
"""

from __future__ import annotations

import math
from collections import Counter
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field

import numpy as np

from ..constructions import S_TABLE, chm_with_count, g6
from ..equivalence import apply, random_transform
from ..matrix import UnitMatrix, fourier, kron
from .predicates import PredicateId, Violation, check_all

GRID = 24
CHUNK = 10_000
P_ONE = 0.5


def orbit_bases() -> dict[str, UnitMatrix]:
    return {"F6": fourier(6), "G6": g6(), "F2xF3": kron(fourier(2), fourier(3))}


@dataclass
class AuditReport:
    samples: int
    seed: int
    counts: Counter = field(default_factory=Counter)
    violations: list[tuple[str, int, UnitMatrix]] = field(default_factory=list)

    @property
    def passed(self) -> bool:
        return not self.violations

    def summary(self) -> str:
        seen = ",".join(str(m) for m in sorted(self.counts))
        return (f"samples={self.samples} seed={self.seed} "
                f"counts={{{seen}}} violations={len(self.violations)}")


def _orbit_chunk(args) -> tuple[Counter, list]:
    seed_seq, size = args
    rng = np.random.Generator(np.random.PCG64(seed_seq))
    allowed = np.zeros(37, dtype=bool)
    allowed[list(S_TABLE[6])] = True
    counts: Counter = Counter()
    bad = []
    for name, base in orbit_bases().items():
        E = base.exponents(GRID)
        # each phase is 1 with probability P_ONE, otherwise a uniform 24th root
        rp = np.where(rng.random((size, 6)) < P_ONE, 0, rng.integers(0, GRID, (size, 6)))
        cp = np.where(rng.random((size, 6)) < P_ONE, 0, rng.integers(0, GRID, (size, 6)))
        X = (E[None] + rp[:, :, None] + cp[:, None, :]) % GRID
        m = (X % (GRID // 2) == 0).sum(axis=(1, 2))
        counts.update(m.tolist())
        for idx in np.flatnonzero(~allowed[m]):
            bad.append((name, int(m[idx]), UnitMatrix.from_exponents(X[idx], GRID)))
    return counts, bad


def s6_membership_audit(samples: int, seed: int, threads: int = 1) -> AuditReport:
    """Check that every sampled orbit element has a real count in S_6.

    ``samples`` orbit elements are drawn per base matrix.  Row and column
    permutations do not change the count and are skipped.
    """
    if samples < 0:
        raise ValueError("samples must be non-negative")
    sizes = [CHUNK] * (samples // CHUNK) + ([samples % CHUNK] if samples % CHUNK else [])
    children = np.random.SeedSequence(seed).spawn(len(sizes))
    jobs = list(zip(children, sizes))
    if threads > 1 and len(jobs) > 1:
        with ProcessPoolExecutor(threads) as ex:
            results = list(ex.map(_orbit_chunk, jobs))
    else:
        results = [_orbit_chunk(j) for j in jobs]
    report = AuditReport(samples, seed)
    for counts, bad in results:
        report.counts.update(counts)
        report.violations.extend(bad)
    return report


def predicate_corpus(samples: int, seed: int) -> list[tuple[str, UnitMatrix]]:
    """Random monomial images of order-six CHMs plus small Fourier matrices."""
    rng = np.random.Generator(np.random.PCG64(seed))
    bases = dict(orbit_bases())
    for m in sorted(S_TABLE[6]):
        bases[f"count{m}"] = chm_with_count(6, m)
    for n in (3, 4, 5):
        bases[f"F{n}"] = fourier(n)
    names = sorted(bases)
    out = []
    for s in range(samples):
        name = names[s % len(names)]
        T = random_transform(bases[name].n, rng, math.lcm(GRID, bases[name].n), p_one=P_ONE)
        out.append((name, apply(T, bases[name])))
    return out


def predicate_audit(samples: int, seed: int) -> tuple[Counter, list[tuple[str, Violation]]]:
    """Run every applicable predicate on a random corpus; returns checks run and violations."""
    ran: Counter = Counter()
    found = []
    for name, M in predicate_corpus(samples, seed):
        for pid, v in check_all(M, verify=False).items():
            ran[pid] += 1
            if v is not None:
                found.append((name, v))
    return ran, found


__all__ = [
    "AuditReport", "PredicateId", "orbit_bases", "predicate_audit",
    "predicate_corpus", "s6_membership_audit",
]
