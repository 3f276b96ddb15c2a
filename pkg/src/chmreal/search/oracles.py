"""Vanishing sums of three and four roots of unity on a finite grid.

Both scans fix the first summand to 1 (a zero sum stays a zero sum after
dividing by any unit scalar) and solve for the last summand, which is forced
once the others are chosen.  Candidates are found numerically and then
confirmed exactly in the cyclotomic field.
"""

from __future__ import annotations

import numpy as np

from ..phasecore import vanishes_exactly

TOL = 1e-9


def _forced_last(partial: np.ndarray, q: int) -> tuple[np.ndarray, np.ndarray]:
    """For partial sums ``s`` find grid exponents ``e`` with ``s + zeta**e == 0``."""
    ok = np.abs(np.abs(partial) - 1.0) < TOL
    ang = np.angle(-partial) / (2 * np.pi) * q
    e = np.rint(ang).astype(np.int64) % q
    ok &= np.abs(ang - np.rint(ang)) < TOL * q
    return ok, e


def zero_sum_triples(q: int) -> np.ndarray:
    """All ``(0, b, c)`` with ``1 + zeta_q**b + zeta_q**c == 0``."""
    b = np.arange(q)
    partial = 1.0 + np.exp(2j * np.pi * b / q)
    ok, c = _forced_last(partial, q)
    cand = np.stack([np.zeros(ok.sum(), dtype=np.int64), b[ok], c[ok]], axis=1)
    exact = vanishes_exactly(cand, q) if len(cand) else np.zeros(0, dtype=bool)
    return cand[exact]


def zero_sum_quadruples(q: int) -> np.ndarray:
    """All ``(0, b, c, d)`` with ``1 + zeta**b + zeta**c + zeta**d == 0``."""
    b, c = np.meshgrid(np.arange(q), np.arange(q), indexing="ij")
    b, c = b.ravel(), c.ravel()
    partial = 1.0 + np.exp(2j * np.pi * b / q) + np.exp(2j * np.pi * c / q)
    ok, d = _forced_last(partial, q)
    cand = np.stack([np.zeros(ok.sum(), dtype=np.int64), b[ok], c[ok], d[ok]], axis=1)
    exact = vanishes_exactly(cand, q) if len(cand) else np.zeros(0, dtype=bool)
    return cand[exact]


def sum3_oracle(q: int) -> bool:
    """Every zero-sum triple of q-th roots is a rotation of ``(1, w, w^2)`` or ``(1, w^2, w)``."""
    if q < 3 or q % 3:
        raise ValueError("q must be a positive multiple of 3")
    sols = zero_sum_triples(q)
    allowed = {(q // 3, 2 * q // 3), (2 * q // 3, q // 3)}
    found = {(int(b), int(c)) for _, b, c in sols}
    return bool(found) and found <= allowed


def sum4_oracle(q: int) -> bool:
    """Every zero-sum quadruple of q-th roots pairs its first entry with its negative."""
    if q < 2 or q % 2:
        raise ValueError("q must be a positive even number")
    sols = zero_sum_quadruples(q)
    if not len(sols):
        return False
    return bool((sols[:, 1:] == q // 2).any(axis=1).all())
