from __future__ import annotations

import numpy as np
from hypothesis import settings, strategies as st

from chmreal.equivalence import MonomialTransform
from chmreal.matrix import UnitMatrix
from chmreal.phasecore import t

settings.register_profile("default", deadline=None, max_examples=60)
settings.load_profile("default")


def brute_real_count(M: UnitMatrix) -> int:
    """Entries within 1e-9 of +-1, counted from complex values."""
    Z = M.to_numpy()
    return int((np.abs(Z.imag) < 1e-9).sum())


def gram_is_scaled_identity(M: UnitMatrix, tol: float = 1e-9) -> bool:
    Z = M.to_numpy()
    n = Z.shape[0]
    return bool(np.abs(Z @ Z.conj().T - n * np.eye(n)).max() < tol)


def turns(q: int):
    return st.integers(0, q - 1).map(lambda k: t(k, q))


def permutations(n: int):
    return st.permutations(list(range(n))).map(tuple)


def transforms(n: int, q: int = 24):
    return st.builds(
        MonomialTransform,
        permutations(n),
        st.lists(turns(q), min_size=n, max_size=n).map(tuple),
        st.lists(turns(q), min_size=n, max_size=n).map(tuple),
        permutations(n),
    )


def permutation_transforms(n: int):
    return st.builds(MonomialTransform.permutation, permutations(n), permutations(n))


def unit_matrices(n: int, q: int = 24, cols: int | None = None):
    cols = n if cols is None else cols
    return st.lists(st.lists(turns(q), min_size=cols, max_size=cols), min_size=n, max_size=n) \
        .map(UnitMatrix.from_rows)
