"""Unit-modulus scalars.

A phase is either an exact rational number of turns, ``t(p/q) = exp(2*pi*i*p/q)``,
or a float angle in radians, ``r(x) = exp(i*x)``.  Rational turns are always
reduced into ``[0, 1)`` so two equal rational phases compare equal field by
field.  Anything that touches a :class:`Radians` value becomes a
:class:`Radians` value.
"""

from __future__ import annotations

import enum
import math
import re
from dataclasses import dataclass
from fractions import Fraction
from functools import lru_cache
from typing import Iterable, Union

import numpy as np

EPS_CLASS = 1e-9
TWO_PI = 2.0 * math.pi


class AmbiguousClassification(ValueError):
    pass


class PhaseParseError(ValueError):
    pass


@dataclass(frozen=True)
class Turn:
    """``exp(2*pi*i*value)`` with ``value`` a reduced fraction in ``[0, 1)``."""

    value: Fraction

    def __post_init__(self):
        v = self.value if isinstance(self.value, Fraction) else Fraction(self.value)
        object.__setattr__(self, "value", v - math.floor(v))

    @property
    def numerator(self) -> int:
        return self.value.numerator

    @property
    def denominator(self) -> int:
        return self.value.denominator

    def __mul__(self, other: Phase) -> Phase:
        return phase_mul(self, other)

    def conjugate(self) -> Turn:
        return phase_conj(self)

    def __repr__(self) -> str:
        return f"t({self.value.numerator}/{self.value.denominator})"


@dataclass(frozen=True)
class Radians:
    """``exp(i*angle)``; the angle is kept as given, not wrapped."""

    angle: float

    def __mul__(self, other: Phase) -> Phase:
        return phase_mul(self, other)

    def conjugate(self) -> Radians:
        return phase_conj(self)

    def __repr__(self) -> str:
        return f"r({self.angle!r})"


Phase = Union[Turn, Radians]


class EntryClass(enum.Enum):
    REAL = "real"
    PURELY_IMAGINARY = "purely-imaginary"
    OTHER_NONREAL = "other-nonreal"

    @property
    def is_real(self) -> bool:
        return self is EntryClass.REAL


@lru_cache(maxsize=None)
def t(p: int, q: int = 1) -> Turn:
    return Turn(Fraction(p, q))


def r(angle: float) -> Radians:
    return Radians(float(angle))


ONE = t(0)
MINUS_ONE = t(1, 2)
I = t(1, 4)
MINUS_I = t(3, 4)
OMEGA = t(1, 3)
OMEGA2 = t(2, 3)
E8 = t(1, 8)


def angle(a: Phase) -> float:
    if isinstance(a, Turn):
        return TWO_PI * float(a.value)
    return a.angle


def phase_mul(a: Phase, b: Phase) -> Phase:
    if isinstance(a, Turn) and isinstance(b, Turn):
        return Turn(a.value + b.value)
    return Radians(angle(a) + angle(b))


def phase_conj(a: Phase) -> Phase:
    if isinstance(a, Turn):
        return Turn(-a.value)
    return Radians(-a.angle)


def phase_prod(phases: Iterable[Phase]) -> Phase:
    out: Phase = ONE
    for p in phases:
        out = phase_mul(out, p)
    return out


def to_complex(a: Phase) -> complex:
    if isinstance(a, Turn):
        # exact values on the axes so real/imaginary parts are clean zeros
        v = a.value
        if v == 0:
            return complex(1.0, 0.0)
        if v == Fraction(1, 2):
            return complex(-1.0, 0.0)
        if v == Fraction(1, 4):
            return complex(0.0, 1.0)
        if v == Fraction(3, 4):
            return complex(0.0, -1.0)
    x = angle(a)
    return complex(math.cos(x), math.sin(x))


def classify(a: Phase, eps: float = EPS_CLASS) -> EntryClass:
    if isinstance(a, Turn):
        if a.value in (0, Fraction(1, 2)):
            return EntryClass.REAL
        if a.value in (Fraction(1, 4), Fraction(3, 4)):
            return EntryClass.PURELY_IMAGINARY
        return EntryClass.OTHER_NONREAL
    s, c = math.sin(a.angle), math.cos(a.angle)
    near_real, near_imag = abs(s) < eps, abs(c) < eps
    if near_real and near_imag:
        raise AmbiguousClassification(f"{a!r} is within {eps} of both axes")
    if near_real:
        return EntryClass.REAL
    if near_imag:
        return EntryClass.PURELY_IMAGINARY
    return EntryClass.OTHER_NONREAL


def is_real(a: Phase, eps: float = EPS_CLASS) -> bool:
    return classify(a, eps) is EntryClass.REAL


def angles_close(a: Phase, b: Phase, tol: float = 1e-12) -> bool:
    """Equality for phases; exact when both are rational turns."""
    if isinstance(a, Turn) and isinstance(b, Turn):
        return a == b
    d = (angle(a) - angle(b)) % TWO_PI
    return min(d, TWO_PI - d) < tol


# -- text grammar ------------------------------------------------------------

_NAMED = {
    "1": ONE,
    "-1": MINUS_ONE,
    "i": I,
    "-i": MINUS_I,
    "w": OMEGA,
    "w2": OMEGA2,
}
_TOKEN_OF = {v: k for k, v in _NAMED.items()}
_TURN_RE = re.compile(r"t\((-?\d+)/(\d+)\)")
_RAD_RE = re.compile(r"r\(([-+]?(?:\d+\.?\d*|\.\d+)(?:[eE][-+]?\d+)?)\)")


def parse_phase(token: str) -> Phase:
    """Parse one phase token: ``1 -1 i -i w w2 t(p/q) r(x)``."""
    if token in _NAMED:
        return _NAMED[token]
    m = _TURN_RE.fullmatch(token)
    if m:
        q = int(m.group(2))
        if q == 0:
            raise PhaseParseError(f"zero denominator in {token!r}")
        return t(int(m.group(1)), q)
    m = _RAD_RE.fullmatch(token)
    if m:
        x = float(m.group(1))
        if not math.isfinite(x):
            raise PhaseParseError(f"non-finite angle in {token!r}")
        return Radians(x)
    raise PhaseParseError(f"not a phase token: {token!r}")


def format_phase(a: Phase) -> str:
    if isinstance(a, Turn):
        name = _TOKEN_OF.get(a)
        if name is not None:
            return name
        return f"t({a.numerator}/{a.denominator})"
    return f"r({a.angle!r})"


# -- exact vanishing sums ----------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_coeffs(n: int) -> np.ndarray:
    """Coefficients of the n-th cyclotomic polynomial, lowest degree first."""
    from sympy import Poly, cyclotomic_poly, symbols

    x = symbols("x")
    coeffs = Poly(cyclotomic_poly(n, x), x).all_coeffs()[::-1]
    return np.array([int(c) for c in coeffs], dtype=np.int64)


def reduce_mod_cyclotomic(counts: np.ndarray, n: int) -> np.ndarray:
    """Remainder of ``sum counts[..., k] x^k`` modulo the n-th cyclotomic polynomial.

    ``counts`` has shape ``(..., n)``; the leading axes are batched.
    """
    phi = cyclotomic_coeffs(n)
    deg = len(phi) - 1
    c = np.array(counts, dtype=np.int64, copy=True)
    for d in range(c.shape[-1] - 1, deg - 1, -1):
        lead = c[..., d]
        if np.any(lead):
            c[..., d - deg:d + 1] -= lead[..., None] * phi
    return c[..., :deg]


def vanishes_exactly(exponents: np.ndarray, n: int) -> np.ndarray:
    """Whether ``sum_k zeta_n**exponents[..., k]`` is exactly zero.

    Works on the last axis and batches over the rest.
    """
    e = np.asarray(exponents, dtype=np.int64) % n
    flat = e.reshape(-1, e.shape[-1])
    counts = np.zeros((flat.shape[0], n), dtype=np.int64)
    rows = np.repeat(np.arange(flat.shape[0]), flat.shape[1])
    np.add.at(counts, (rows, flat.ravel()), 1)
    rem = reduce_mod_cyclotomic(counts, n)
    return (~rem.any(axis=-1)).reshape(e.shape[:-1])
