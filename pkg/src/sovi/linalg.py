"""Dense linear solves and the max-norm used by the Newton step."""

from __future__ import annotations

import warnings

import numpy as np
import scipy.linalg

# A pivot below this fraction of the matrix magnitude means the system is
# numerically singular. The Newton systems solved here are I - gamma*Phi with
# Phi row-stochastic, whose eigenvalues stay at least 1 - gamma away from
# zero, so tripping this threshold indicates corrupted data rather than a
# legitimate state.
PIVOT_RTOL = 1e-12


class SingularSystemError(ValueError):
    """The coefficient matrix is numerically singular."""


def solve_linear(a: np.ndarray, b: np.ndarray) -> np.ndarray:
    """Solve ``a @ y = b`` by LU factorization with partial (row) pivoting.

    Never forms an explicit inverse. Raises :class:`SingularSystemError`
    when the smallest pivot falls below ``PIVOT_RTOL * max|a|``.
    """
    a = np.asarray(a, dtype=np.float64)
    b = np.asarray(b, dtype=np.float64)
    if a.ndim != 2 or a.shape[0] != a.shape[1]:
        raise ValueError(f"expected a square matrix, got shape {a.shape}")
    if b.shape != (a.shape[0],):
        raise ValueError(f"right-hand side shape {b.shape} does not match {a.shape}")
    if not np.isfinite(a).all() or not np.isfinite(b).all():
        raise ValueError("system contains non-finite entries")
    with warnings.catch_warnings():
        # scipy warns on exactly-zero pivots; the threshold check below turns
        # that condition into a typed error instead.
        warnings.simplefilter("ignore", scipy.linalg.LinAlgWarning)
        lu, piv = scipy.linalg.lu_factor(a, check_finite=False)
    scale = np.abs(a).max()
    min_pivot = np.abs(np.diag(lu)).min()
    if scale == 0.0 or min_pivot < PIVOT_RTOL * scale:
        raise SingularSystemError(
            f"singular system: smallest pivot {min_pivot:.3e} below "
            f"{PIVOT_RTOL:g} * max|a| = {PIVOT_RTOL * scale:.3e}"
        )
    return scipy.linalg.lu_solve((lu, piv), b, check_finite=False)


def max_norm(x: np.ndarray) -> float:
    """Maximum absolute entry of a vector, matrix, or Q-table iterate."""
    x = np.asarray(x, dtype=np.float64)
    if x.size == 0:
        raise ValueError("empty input")
    return float(np.abs(x).max())
