"""Explicit CHMs realising every achievable real-entry count for n = 2, 3, 4, 6.

Orders 4 and 6 go through a table of *recipes*: a base matrix plus row and
column multipliers.  The table lives in ``data/recipes.txt``; one line per
recipe::

    n m base rows_i=<idx,...> rows_e8=<...> cols_i=<...> cols_e8=<...> [rows_mi=<...>] [cols_mi=<...>] [origin=<fixed|search>]

``i`` multiplies by ``i``, ``e8`` by ``exp(i*pi/4)`` and ``mi`` by ``-i``.
Recipes marked ``origin=fixed`` are the hand-given ones; the rest come from
:func:`recipe_search` and are re-derived by ``chmreal recipes --regen``.
"""

from __future__ import annotations

import itertools
import math
from dataclasses import dataclass, field
from functools import lru_cache
from importlib import resources
from pathlib import Path
from typing import Iterable, Mapping, Sequence

import numpy as np
from sympy import isprime

from .equivalence import MonomialTransform, apply
from .matrix import UnitMatrix, census, fourier, scale, times
from .phasecore import E8, I, MINUS_I, MINUS_ONE, OMEGA, OMEGA2, ONE, Phase, Turn, phase_mul, r, t

S_TABLE: dict[int, frozenset[int]] = {
    2: frozenset({0, 1, 2, 4}),
    3: frozenset(range(7)),
    4: frozenset(set(range(11)) | {12, 16}),
    6: frozenset(set(range(23)) | {24, 25, 26, 30}),
}

MULTIPLIERS: dict[str, Turn] = {"i": I, "e8": E8, "mi": MINUS_I}
_KEY_OF = {v: k for k, v in MULTIPLIERS.items()}
RECIPE_FILE = "recipes.txt"


class NotAchievable(ValueError):
    def __init__(self, m: int, n: int):
        super().__init__(f"NotAchievable: no {n}x{n} CHM has exactly {m} real entries")
        self.m = m
        self.n = n


class NotFound(LookupError):
    pass


class NonPrimeOdd(ValueError):
    pass


def _m(rows: Sequence[Sequence]) -> UnitMatrix:
    sym = {1: ONE, -1: MINUS_ONE, "i": I, "-i": MINUS_I, "w": OMEGA, "w2": OMEGA2,
           "-w": t(5, 6), "-w2": t(1, 6)}
    return UnitMatrix(tuple(tuple(x if isinstance(x, Turn) else sym[x] for x in row) for row in rows))


# -- printed matrices --------------------------------------------------------

def g6() -> UnitMatrix:
    """Order-six CHM with ``i`` on the diagonal and 30 real entries."""
    return _m([
        ["i", 1, 1, 1, 1, 1],
        [1, "i", -1, -1, 1, 1],
        [1, -1, "i", 1, 1, -1],
        [1, -1, 1, "i", -1, 1],
        [1, 1, 1, -1, "i", -1],
        [1, 1, -1, 1, -1, "i"],
    ])


def m4() -> UnitMatrix:
    """Real 4x4 Hadamard matrix."""
    return _m([
        [1, 1, 1, 1],
        [1, -1, 1, -1],
        [1, 1, -1, -1],
        [1, -1, -1, 1],
    ])


def h2_matrix(k: int) -> UnitMatrix:
    """The four 2x2 witnesses, with 4, 2, 1 and 0 real entries for k = 1..4."""
    if k == 1:
        return _m([[1, 1], [1, -1]])
    if k == 2:
        return _m([[1, "i"], [1, "-i"]])
    if k == 3:
        return UnitMatrix(((E8, phase_mul(E8, I)), (ONE, MINUS_I)))
    if k == 4:
        return _m([["i", "i"], ["i", "-i"]])
    raise ValueError("k must be 1, 2, 3 or 4")


def h3_matrix(variant: str, params: Sequence[Phase]) -> UnitMatrix:
    """``D1 V D2`` with ``V`` the 3x3 Fourier matrix and most diagonal entries 1.

    ``H31`` takes ``(a1, b1)``; ``H32`` takes ``(a1, a2, a3)``.
    """
    mul = phase_mul
    if variant == "H31":
        a1, b1 = params
        return UnitMatrix((
            (mul(a1, b1), a1, a1),
            (b1, OMEGA, OMEGA2),
            (b1, OMEGA2, OMEGA),
        ))
    if variant == "H32":
        a1, a2, a3 = params
        return UnitMatrix((
            (a1, a1, a1),
            (a2, mul(a2, OMEGA), mul(a2, OMEGA2)),
            (a3, mul(a3, OMEGA2), mul(a3, OMEGA)),
        ))
    raise ValueError(f"unknown variant {variant!r}")


def h6_prefix(k: int) -> UnitMatrix:
    """First three rows (3x6) of an order-six CHM whose rows 2 and 3 each hold two non-real entries."""
    rows = {
        1: [[1] * 6, ["i", "-i", 1, 1, -1, -1], ["i", 1, "-i", -1, -1, 1]],
        2: [[1] * 6, ["-i", "i", 1, 1, -1, -1], ["-i", 1, "i", -1, -1, 1]],
        3: [[1] * 6, ["w2", "-w2", 1, 1, -1, -1], [1, -1, "w2", 1, "-w2", -1]],
        4: [[1] * 6, ["w", "-w", 1, 1, -1, -1], [1, -1, "w", 1, "-w", -1]],
    }
    if k not in rows:
        raise ValueError("k must be 1, 2, 3 or 4")
    return _m(rows[k])


# -- Fourier-based families ----------------------------------------------------

def theorem_i_matrix(n: int, d: int) -> UnitMatrix:
    """``U F_n V`` with ``U = e^i I_d + I_{n-d}``, ``V = 1 + e^i I_{n-1}``; has ``n - d`` real entries."""
    if not 0 <= d <= n:
        raise ValueError("need 0 <= d <= n")
    e1 = r(1.0)
    rows = [e1] * d + [ONE] * (n - d)
    cols = [ONE] + [e1] * (n - 1)
    return scale(fourier(n), rows, cols)


def theorem_ii_matrix(n: int, d: int) -> UnitMatrix:
    """``(I_{n-d} + i I_d) F_n`` for an odd prime ``n``; has ``2n - d - 1`` real entries."""
    if n % 2 == 0 or not isprime(n):
        raise NonPrimeOdd(f"n = {n} is not an odd prime")
    if not 0 <= d <= n - 1:
        raise ValueError("need 0 <= d <= n - 1")
    return scale(fourier(n), [ONE] * (n - d) + [I] * d, None)


# -- recipes -----------------------------------------------------------------

BASES = {"g6": g6, "m4": m4}


@dataclass(frozen=True)
class CountRecipe:
    n: int
    m: int
    base: str
    rows: Mapping[int, str] = field(default_factory=dict)
    cols: Mapping[int, str] = field(default_factory=dict)
    origin: str = "search"

    def transform(self) -> MonomialTransform:
        rp = tuple(MULTIPLIERS[self.rows[j]] if j in self.rows else ONE for j in range(self.n))
        cp = tuple(MULTIPLIERS[self.cols[k]] if k in self.cols else ONE for k in range(self.n))
        return MonomialTransform.scaling(rp, cp)

    def build(self) -> UnitMatrix:
        return apply(self.transform(), BASES[self.base]())

    def verify(self) -> bool:
        return census(self.build()).real_count == self.m

    @property
    def size(self) -> int:
        return len(self.rows) + len(self.cols)

    def format(self) -> str:
        def field_(axis: str, mapping: Mapping[int, str], key: str) -> str:
            idx = sorted(j for j, v in mapping.items() if v == key)
            return f"{axis}_{key}={','.join(map(str, idx))}"

        parts = [str(self.n), str(self.m), self.base,
                 field_("rows", self.rows, "i"), field_("rows", self.rows, "e8"),
                 field_("cols", self.cols, "i"), field_("cols", self.cols, "e8")]
        for axis, mapping in (("rows", self.rows), ("cols", self.cols)):
            if "mi" in mapping.values():
                parts.append(field_(axis, mapping, "mi"))
        parts.append(f"origin={self.origin}")
        return " ".join(parts)

    def describe(self) -> str:
        bits = []
        for axis, mapping in (("row", self.rows), ("col", self.cols)):
            for j in sorted(mapping):
                bits.append(f"{axis} {j} x {mapping[j]}")
        return f"{self.base}: " + (", ".join(bits) if bits else "unchanged")


def parse_recipe(line: str) -> CountRecipe:
    tokens = line.split()
    if len(tokens) < 3:
        raise ValueError(f"bad recipe line: {line!r}")
    n, m, base = int(tokens[0]), int(tokens[1]), tokens[2]
    rows: dict[int, str] = {}
    cols: dict[int, str] = {}
    origin = "search"
    for tok in tokens[3:]:
        key, _, value = tok.partition("=")
        if key == "origin":
            origin = value
            continue
        axis, _, mult = key.partition("_")
        if axis not in ("rows", "cols") or mult not in MULTIPLIERS:
            raise ValueError(f"bad recipe field {tok!r}")
        target = rows if axis == "rows" else cols
        for x in filter(None, value.split(",")):
            target[int(x)] = mult
    return CountRecipe(n, m, base, rows, cols, origin)


def read_recipes(text: str) -> dict[tuple[int, int], CountRecipe]:
    out = {}
    for line in text.splitlines():
        line = line.strip()
        if not line or line.startswith("#"):
            continue
        rec = parse_recipe(line)
        out[(rec.n, rec.m)] = rec
    return out


@lru_cache(maxsize=None)
def recipe_table() -> dict[tuple[int, int], CountRecipe]:
    text = resources.files("chmreal").joinpath("data", RECIPE_FILE).read_text()
    return read_recipes(text)


def _realness_exponents(base: UnitMatrix, mults: Sequence[Turn]) -> tuple[np.ndarray, np.ndarray, int]:
    q = math.lcm(base.denominator, *(x.denominator for x in mults))
    E = base.exponents(q)
    mexp = np.array([int(x.value * q) for x in mults], dtype=np.int64)
    return E, mexp, q


def recipe_search(base: str | UnitMatrix, target: int,
                  multipliers: Iterable[Phase] = (I, E8)) -> CountRecipe:
    """Breadth-first search over row/column multiplier assignments.

    Assignments are visited by increasing number of multiplied lines; within
    a level, line sets come in lexicographic order (rows 0..n-1 before
    columns) and multipliers in the order given.  The first assignment whose
    census hits ``target`` is returned.
    """
    if isinstance(base, str):
        name, B = base, BASES[base]()
    else:
        B = base
        name = next((k for k, f in BASES.items() if f() == B), "custom")
    mults = list(dict.fromkeys(multipliers))
    for x in mults:
        if x not in _KEY_OF:
            raise ValueError(f"multiplier {x!r} has no recipe key")
    n = B.n
    E, mexp, q = _realness_exponents(B, mults)
    half = q // 2 if q % 2 == 0 else None
    for level in range(0, 2 * n + 1):
        combos = list(itertools.combinations(range(2 * n), level))
        picks = list(itertools.product(range(len(mults)), repeat=level))
        lines = np.array(combos, dtype=np.int64).reshape(len(combos), level)
        choice = np.array(picks, dtype=np.int64).reshape(len(picks), level)
        # shape (lines, choices, 2n) of exponents added per line
        add = np.zeros((len(lines), len(choice), 2 * n), dtype=np.int64)
        if level:
            li = np.broadcast_to(lines[:, None, :], (len(lines), len(choice), level))
            vals = np.broadcast_to(mexp[choice][None, :, :], (len(lines), len(choice), level))
            np.put_along_axis(add, li, vals, axis=2)
        add = add.reshape(-1, 2 * n)
        tot = (E[None] + add[:, :n, None] + add[:, None, n:]) % q
        realm = tot == 0 if half is None else (tot % half) == 0
        counts = realm.sum(axis=(1, 2))
        hits = np.flatnonzero(counts == target)
        if hits.size:
            h = int(hits[0])
            li, ci = divmod(h, len(choice))
            rows: dict[int, str] = {}
            cols: dict[int, str] = {}
            for pos, c in zip(lines[li].tolist(), choice[ci].tolist()):
                key = _KEY_OF[mults[c]]
                if pos < n:
                    rows[pos] = key
                else:
                    cols[pos - n] = key
            rec = CountRecipe(n, target, name, rows, cols)
            assert census(apply(rec.transform(), B)).real_count == target
            return rec
    raise NotFound(f"no multiplier assignment of {name} reaches {target} real entries")


def _fixed_recipes() -> list[CountRecipe]:
    return [
        CountRecipe(4, 16, "m4", origin="fixed"),
        # D1 M D1^dagger with D1 = diag(1, i, i, i)
        CountRecipe(4, 10, "m4", {1: "i", 2: "i", 3: "i"}, {1: "mi", 2: "mi", 3: "mi"}, "fixed"),
        CountRecipe(6, 30, "g6", origin="fixed"),
        CountRecipe(6, 26, "g6", {0: "i"}, origin="fixed"),
        CountRecipe(6, 25, "g6", {0: "e8"}, origin="fixed"),
        CountRecipe(6, 24, "g6", {0: "i"}, {1: "i"}, "fixed"),
        CountRecipe(6, 19, "g6", {0: "i", 5: "e8"}, {1: "i", 2: "i"}, "fixed"),
    ]


def regenerate_recipes() -> list[CountRecipe]:
    """Rebuild the full recipe table: fixed recipes plus searched ones for the gaps."""
    fixed = {(rec.n, rec.m): rec for rec in _fixed_recipes()}
    out = []
    for n, base in ((4, "m4"), (6, "g6")):
        for m in sorted(S_TABLE[n]):
            rec = fixed.get((n, m)) or recipe_search(base, m, (I, E8))
            if not rec.verify():
                raise AssertionError(f"recipe for {n},{m} does not verify")
            out.append(rec)
    return out


def format_recipes(recipes: Iterable[CountRecipe]) -> str:
    head = "# n m base rows_i rows_e8 cols_i cols_e8 [rows_mi cols_mi] origin\n"
    return head + "".join(rec.format() + "\n" for rec in recipes)


def write_recipes(path: str | Path, recipes: Iterable[CountRecipe]) -> None:
    Path(path).write_text(format_recipes(recipes))


# -- builders by count -------------------------------------------------------

def _from_table(n: int, m: int) -> UnitMatrix:
    if m not in S_TABLE[n]:
        raise NotAchievable(m, n)
    return recipe_table()[(n, m)].build()


def m4_with_count(m: int) -> UnitMatrix:
    return _from_table(4, m)


def s6_with_count(m: int) -> UnitMatrix:
    return _from_table(6, m)


def s2_with_count(m: int) -> UnitMatrix:
    k = {4: 1, 2: 2, 1: 3, 0: 4}.get(m)
    if k is None:
        raise NotAchievable(m, 2)
    return h2_matrix(k)


def s3_with_count(m: int) -> UnitMatrix:
    if m not in S_TABLE[3]:
        raise NotAchievable(m, 3)
    if m == 6:
        return times(h3_matrix("H31", (OMEGA, OMEGA)), OMEGA2)
    if m in (3, 4):
        params = (ONE, I, I) if m == 3 else (ONE, ONE, I)
        return h3_matrix("H32", params)
    params = {5: (ONE, ONE), 2: (ONE, OMEGA), 1: (OMEGA, OMEGA2), 0: (OMEGA, OMEGA)}[m]
    return h3_matrix("H31", params)


def chm_with_count(n: int, m: int) -> UnitMatrix:
    """A CHM of order ``n`` with exactly ``m`` real entries.

    Orders 2, 3, 4 and 6 use the complete tables.  Other orders fall back on
    the Fourier families (counts ``0..n`` for any n, ``n-1..2n-1`` for odd
    primes) and raise :class:`NotFound` outside them.
    """
    builders = {2: s2_with_count, 3: s3_with_count, 4: m4_with_count, 6: s6_with_count}
    if n < 1:
        raise ValueError("order must be positive")
    if not 0 <= m <= n * n:
        raise NotAchievable(m, n)
    if n in builders:
        return builders[n](m)
    if m <= n:
        return theorem_i_matrix(n, n - m)
    if n % 2 and isprime(n) and m <= 2 * n - 1:
        return theorem_ii_matrix(n, 2 * n - 1 - m)
    raise NotFound(f"no construction for n = {n} with {m} real entries")
