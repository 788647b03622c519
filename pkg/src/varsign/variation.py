"""Sign-variation counts of vectors and the Gaussian smoothing matrix."""

from __future__ import annotations

import math
from typing import Sequence

from .linalg import Backend, Matrix, Num


def _signs(u: Sequence[Num], tol: float | None) -> list[int]:
    out = []
    for x in u:
        if tol is not None and isinstance(x, float):
            out.append(1 if x > tol else (-1 if x < -tol else 0))
        else:
            out.append(1 if x > 0 else (-1 if x < 0 else 0))
    return out


def v_minus(u: Sequence[Num], tol: float | None = None) -> int:
    """Lower variation: sign changes after deleting zeros; -1 for the zero vector.

    With ``tol`` set, float entries inside the band count as zeros.
    """
    nz = [s for s in _signs(u, tol) if s != 0]
    if not nz:
        return -1
    return sum(1 for a, b in zip(nz, nz[1:]) if a * b < 0)


def v_plus(u: Sequence[Num], tol: float | None = None) -> int:
    """Upper variation: maximal sign changes over all sign choices for zeros.

    One greedy pass is enough: each zero takes the sign opposite to its left
    neighbour (leading zeros alternate against the first nonzero), which is
    optimal per zero-run, so no 2^z enumeration is needed.
    """
    signs = _signs(u, tol)
    n = len(signs)
    first = next((i for i, s in enumerate(signs) if s != 0), None)
    if first is None:
        return n - 1
    for i in range(first - 1, -1, -1):
        signs[i] = -signs[i + 1]
    for i in range(first + 1, n):
        if signs[i] == 0:
            signs[i] = -signs[i - 1]
    return sum(1 for a, b in zip(signs, signs[1:]) if a * b < 0)


def gauss_smoother(n: int, sigma: float) -> Matrix:
    """n x n matrix with entries exp(-sigma * (i-j)^2).

    Strictly totally positive for every sigma > 0, symmetric, unit diagonal,
    and tends to the identity as sigma grows.
    """
    if n < 1:
        raise ValueError("n must be >= 1")
    if sigma <= 0:
        raise ValueError("sigma must be positive")
    return Matrix(
        [[math.exp(-sigma * (i - j) ** 2) for j in range(n)] for i in range(n)],
        Backend.FLOAT,
    )
