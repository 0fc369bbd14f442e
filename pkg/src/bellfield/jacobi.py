"""Cyclic Jacobi eigensolver for real symmetric matrices.

Works on a single ``(n, n)`` matrix or a stack ``(..., n, n)``; every
rotation is applied to the whole stack at once, which keeps grid searches
over thousands of small matrices cheap.
"""

from __future__ import annotations

import numpy as np

from .errors import NonSymmetricError

OFF_TOL = 1e-14
MAX_SWEEPS = 100
SYMMETRY_TOL = 1e-12


def _off_norm(a: np.ndarray) -> np.ndarray:
    n = a.shape[-1]
    mask = ~np.eye(n, dtype=bool)
    return np.sqrt(np.sum(np.where(mask, a * a, 0.0), axis=(-2, -1)))


def jacobi_eigh(matrix, vectors: bool = True):
    """Eigenvalues (ascending) and, optionally, eigenvectors as columns.

    Stops when the off-diagonal Frobenius norm drops below
    ``1e-14 * max(1, ||A||_F)`` or after 100 sweeps.
    """
    a = np.array(matrix, dtype=float)
    if a.ndim < 2 or a.shape[-1] != a.shape[-2]:
        raise ValueError(f"expected square matrices, got shape {a.shape}")
    asym = np.max(np.abs(a - np.swapaxes(a, -1, -2)), initial=0.0)
    if asym > SYMMETRY_TOL:
        raise NonSymmetricError(f"matrix asymmetric by {asym:.3e} (> {SYMMETRY_TOL})")
    a = 0.5 * (a + np.swapaxes(a, -1, -2))
    n = a.shape[-1]
    v = np.broadcast_to(np.eye(n), a.shape).copy() if vectors else None
    limit = OFF_TOL * np.maximum(1.0, np.sqrt(np.sum(a * a, axis=(-2, -1))))

    for _ in range(MAX_SWEEPS):
        if np.all(_off_norm(a) < limit):
            break
        for p in range(n - 1):
            for q in range(p + 1, n):
                apq = a[..., p, q]
                active = apq != 0.0
                if not np.any(active):
                    continue
                safe = np.where(active, apq, 1.0)
                # |tau| -> inf when a_pq is negligible; t then underflows to 0
                with np.errstate(over="ignore", divide="ignore", invalid="ignore"):
                    tau = (a[..., q, q] - a[..., p, p]) / (2.0 * safe)
                    t = np.where(tau >= 0, 1.0, -1.0) / (np.abs(tau) + np.sqrt(1.0 + tau * tau))
                t = np.where(active, t, 0.0)
                c = 1.0 / np.sqrt(1.0 + t * t)
                s = t * c
                c_, s_ = c[..., None], s[..., None]

                ap = a[..., :, p].copy()
                aq = a[..., :, q]
                a[..., :, p] = c_ * ap - s_ * aq
                a[..., :, q] = s_ * ap + c_ * aq
                ap = a[..., p, :].copy()
                aq = a[..., q, :]
                a[..., p, :] = c_ * ap - s_ * aq
                a[..., q, :] = s_ * ap + c_ * aq
                a[..., p, q] = 0.0
                a[..., q, p] = 0.0

                if vectors:
                    vp = v[..., :, p].copy()
                    vq = v[..., :, q]
                    v[..., :, p] = c_ * vp - s_ * vq
                    v[..., :, q] = s_ * vp + c_ * vq

    w = np.diagonal(a, axis1=-2, axis2=-1).copy()
    order = np.argsort(w, axis=-1, kind="stable")
    w = np.take_along_axis(w, order, axis=-1)
    if not vectors:
        return w
    v = np.take_along_axis(v, order[..., None, :], axis=-1)
    return w, v


def eigenvalues_symmetric(matrix) -> np.ndarray:
    return jacobi_eigh(matrix, vectors=False)
