"""Batched helpers for the tiny (2x2 .. 4x4) matrices this package lives on.

Everything here accepts arrays with arbitrary leading batch dimensions and a
trailing matrix block, and is written with explicit cofactor formulas rather
than ``np.linalg`` calls: the matrices are small, the batches are large, and
the closed forms are both faster and easier to audit.
"""

from __future__ import annotations

import numpy as np


def det(m: np.ndarray) -> np.ndarray:
    """Determinant of a batch of k x k matrices (k = 1, 2 or 3)."""
    k = m.shape[-1]
    if k == 1:
        return m[..., 0, 0]
    if k == 2:
        return m[..., 0, 0] * m[..., 1, 1] - m[..., 0, 1] * m[..., 1, 0]
    if k == 3:
        return (
            m[..., 0, 0] * (m[..., 1, 1] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 1])
            - m[..., 0, 1] * (m[..., 1, 0] * m[..., 2, 2] - m[..., 1, 2] * m[..., 2, 0])
            + m[..., 0, 2] * (m[..., 1, 0] * m[..., 2, 1] - m[..., 1, 1] * m[..., 2, 0])
        )
    raise ValueError(f"det: unsupported block size {k}")


def inv(m: np.ndarray) -> np.ndarray:
    """Inverse of a batch of k x k matrices (k = 1, 2 or 3) via adjugates."""
    k = m.shape[-1]
    d = det(m)
    out = np.empty_like(m)
    if k == 1:
        out[..., 0, 0] = 1.0
    elif k == 2:
        out[..., 0, 0] = m[..., 1, 1]
        out[..., 0, 1] = -m[..., 0, 1]
        out[..., 1, 0] = -m[..., 1, 0]
        out[..., 1, 1] = m[..., 0, 0]
    elif k == 3:
        for i in range(3):
            for j in range(3):
                r = [a for a in range(3) if a != j]
                c = [a for a in range(3) if a != i]
                minor = (
                    m[..., r[0], c[0]] * m[..., r[1], c[1]]
                    - m[..., r[0], c[1]] * m[..., r[1], c[0]]
                )
                out[..., i, j] = ((-1) ** (i + j)) * minor
    else:
        raise ValueError(f"inv: unsupported block size {k}")
    return out / d[..., None, None]


def sym_eigvals(m: np.ndarray) -> np.ndarray:
    """Ascending eigenvalues of a batch of symmetric 2x2 or 3x3 matrices.

    The 2x2 case is closed-form; the 3x3 case defers to ``np.linalg.eigvalsh``
    (LAPACK handles the batching).
    """
    k = m.shape[-1]
    if k == 2:
        tr = m[..., 0, 0] + m[..., 1, 1]
        dt = det(m)
        disc = np.sqrt(np.maximum(tr * tr - 4.0 * dt, 0.0))
        lo = 0.5 * (tr - disc)
        hi = 0.5 * (tr + disc)
        return np.stack([lo, hi], axis=-1)
    return np.linalg.eigvalsh(m)


def generalized_cross(tangents: np.ndarray, scale: np.ndarray) -> np.ndarray:
    """Raw-index normal covector of a batch of tangent frames.

    ``tangents`` has shape (..., n, d) with d = n + 1; the result w has shape
    (..., d) with components ``w_a = scale * eps_{a b1 .. bn} t1^{b1} .. tn^{bn}``
    (the Levi-Civita alternation of the tangent rows).  With ``scale`` equal
    to sqrt|det G| this is the metric volume-form contraction, so w annihilates
    every tangent row and ``G^{-1} w`` is a (possibly non-unit) normal vector.
    """
    n, d = tangents.shape[-2:]
    if d != n + 1:
        raise ValueError("generalized_cross needs one more column than rows")
    if d == 3:
        w = np.cross(tangents[..., 0, :], tangents[..., 1, :])
    elif d == 4:
        w = np.empty(tangents.shape[:-2] + (4,), dtype=tangents.dtype)
        for a in range(4):
            cols = [c for c in range(4) if c != a]
            w[..., a] = ((-1) ** a) * det(tangents[..., :, cols])
    else:
        raise ValueError(f"generalized_cross: unsupported ambient dimension {d}")
    return scale[..., None] * w


def lagrange_derivative_weights(xs: np.ndarray, x0: np.ndarray) -> np.ndarray:
    """First-derivative weights of Lagrange interpolation through ``xs`` at ``x0``.

    ``xs`` has shape (..., k); the result w has shape (..., k) with
    ``f'(x0) ~= sum_j w_j f(xs_j)`` exact for polynomials of degree < k.
    """
    xs = np.asarray(xs, dtype=float)
    x0 = np.asarray(x0, dtype=float)
    k = xs.shape[-1]
    w = np.zeros_like(xs)
    for j in range(k):
        # L_j'(x0) = sum_{m != j} prod_{l != j,m} (x0 - x_l) / prod_{l != j} (x_j - x_l)
        denom = np.ones_like(x0)
        for l in range(k):
            if l != j:
                denom = denom * (xs[..., j] - xs[..., l])
        num = np.zeros_like(x0)
        for m in range(k):
            if m == j:
                continue
            term = np.ones_like(x0)
            for l in range(k):
                if l != j and l != m:
                    term = term * (x0 - xs[..., l])
            num = num + term
        w[..., j] = num / denom
    return w
