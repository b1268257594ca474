"""Arithmetic over the prime field Z_q.

Field elements are plain non-negative ints, vectors and matrices are
``int64`` numpy arrays. Every operation reduces eagerly mod ``q``.
"""

from __future__ import annotations

from collections.abc import Sequence

import numpy as np


class SingularMatrix(ValueError):
    """Raised when a matrix over Z_q has no inverse."""


def is_prime(q: int) -> bool:
    if q < 2:
        return False
    if q < 4:
        return True
    if q % 2 == 0:
        return False
    f = 3
    while f * f <= q:
        if q % f == 0:
            return False
        f += 2
    return True


def check_prime(q: int) -> int:
    if not is_prime(q):
        raise ValueError(f"q={q} is not prime")
    return q


def choose_prime(m: int, s: int) -> int:
    """Smallest prime q with max(m, s) <= q <= 2*max(m, s).

    Bertrand's postulate guarantees one exists.
    """
    if m < 1:
        raise ValueError("code length m must be >= 1")
    if s < 2:
        raise ValueError("secret dimension s must be >= 2")
    lo = max(m, s)
    for q in range(lo, 2 * lo + 1):
        if is_prime(q):
            return q
    raise AssertionError("unreachable: Bertrand's postulate")


def poly_eval(c: Sequence[int], t: int, q: int) -> int:
    """Evaluate c[0] + c[1] t + ... + c[d-1] t^(d-1) mod q (Horner)."""
    acc = 0
    for coef in reversed(list(c)):
        acc = (acc * t + int(coef)) % q
    return acc


def vandermonde(points: Sequence[int], d: int, q: int) -> np.ndarray:
    """The d x d matrix with entry (i, j) = points[j]**i mod q.

    With row vectors, ``c @ vandermonde(z)`` evaluates the polynomial
    with coefficients ``c`` at every point of ``z``.
    """
    points = [int(z) % q for z in points]
    if len(points) != d:
        raise ValueError(f"expected {d} points, got {len(points)}")
    V = np.empty((d, d), dtype=np.int64)
    for j, z in enumerate(points):
        acc = 1
        for i in range(d):
            V[i, j] = acc
            acc = (acc * z) % q
    return V


def mat_mul(A: np.ndarray, B: np.ndarray, q: int) -> np.ndarray:
    return (np.asarray(A, dtype=np.int64) @ np.asarray(B, dtype=np.int64)) % q


def mat_inverse(M: np.ndarray, q: int) -> np.ndarray:
    """Inverse of a square matrix over Z_q by Gauss-Jordan elimination."""
    M = np.asarray(M, dtype=np.int64) % q
    if M.ndim != 2 or M.shape[0] != M.shape[1]:
        raise ValueError(f"matrix must be square, got shape {M.shape}")
    d = M.shape[0]
    aug = np.concatenate([M, np.eye(d, dtype=np.int64)], axis=1)
    for col in range(d):
        nz = np.nonzero(aug[col:, col])[0]
        if nz.size == 0:
            raise SingularMatrix(f"matrix is singular mod {q}")
        piv = col + int(nz[0])
        if piv != col:
            aug[[col, piv]] = aug[[piv, col]]
        aug[col] = (aug[col] * pow(int(aug[col, col]), -1, q)) % q
        for row in range(d):
            if row != col and aug[row, col]:
                aug[row] = (aug[row] - aug[row, col] * aug[col]) % q
    return aug[:, d:].copy()
