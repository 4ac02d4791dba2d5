"""Shared dense linear algebra helpers."""

import numpy as np

PINV_CUTOFF = 1e-10


def pinv_psd(M: np.ndarray, cutoff_factor: float = PINV_CUTOFF) -> np.ndarray:
    """Moore-Penrose pseudoinverse of a symmetric PSD matrix.

    Eigendecomposition-based; eigenvalues below cutoff_factor * lambda_max
    are treated as zero.
    """
    if M.shape[0] == 0:
        return M.copy()
    vals, vecs = np.linalg.eigh(M)
    lam_max = float(np.max(np.abs(vals))) if vals.size else 0.0
    cutoff = cutoff_factor * lam_max
    inv = np.where(vals > cutoff, 1.0 / np.where(vals > cutoff, vals, 1.0), 0.0)
    return (vecs * inv) @ vecs.conj().T


def fix_phase_gauge(vecs: np.ndarray) -> np.ndarray:
    """Rotate each column so its largest-modulus component is real positive."""
    out = vecs.copy()
    for j in range(out.shape[1]):
        col = out[:, j]
        i = int(np.argmax(np.abs(col)))
        pivot = col[i]
        mag = abs(pivot)
        if mag > 0:
            out[:, j] = col * (np.conj(pivot) / mag)
    return out
