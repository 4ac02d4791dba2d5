"""Eigendecomposition, spectral specific heat and the polar embedding."""

from dataclasses import dataclass

import numpy as np

from ._linalg import fix_phase_gauge
from .deform import (DeformedLaplacian, magnetic_laplacian, dilation_laplacian)
from .graphs import DirectedGraph


@dataclass
class SpectrumResult:
    """Full dense spectrum with a deterministic ordering and phase gauge.

    Eigenvalues ascend (by real part, then imaginary magnitude, for the
    non-Hermitian dilation kind). Eigenvectors are column-aligned, unit
    2-norm, each rotated so its largest-modulus component is real positive.
    """

    eigenvalues: np.ndarray
    eigenvectors: np.ndarray
    hermitian: bool


@dataclass
class EmbeddingPoint:
    vertex: int
    theta: float
    s: float
    xy: tuple


def eigendecompose(L) -> SpectrumResult:
    """Decompose a DeformedLaplacian (or plain ndarray) deterministically.

    Hermitian kinds use the symmetric solver and return real eigenvalues;
    the dilation kind uses the general solver and sorts by real part with
    ties broken by imaginary magnitude. Solver convergence failures
    propagate as LinAlgError.
    """
    if isinstance(L, DeformedLaplacian):
        M = L.matrix
        hermitian = L.hermitian
    else:
        M = np.asarray(L)
        hermitian = bool(np.allclose(M, M.conj().T, atol=1e-12))
    if M.shape[0] == 0:
        raise ValueError("cannot decompose an empty matrix")
    if hermitian:
        vals, vecs = np.linalg.eigh(M)
    else:
        vals, vecs = np.linalg.eig(M)
        order = np.lexsort((vals.imag, np.abs(vals.imag), vals.real))
        vals = vals[order]
        vecs = vecs[:, order]
    vecs = fix_phase_gauge(vecs)
    return SpectrumResult(eigenvalues=vals, eigenvectors=vecs, hermitian=hermitian)


def first_eigenvector(L) -> np.ndarray:
    """Eigenvector of the smallest eigenvalue (smallest real part if complex)."""
    return eigendecompose(L).eigenvectors[:, 0]


def default_beta_grid(num: int = 64) -> np.ndarray:
    return np.logspace(-2, 3, num)


def specific_heat(spectrum, beta_grid=None) -> np.ndarray:
    """Thermal variance of the spectrum: c(beta) = beta^2 Var_p(lambda).

    p_i(beta) = exp(-beta lambda_i) / Z(beta). Eigenvalues are shifted by
    their minimum before exponentiation to avoid overflow; the variance is
    shift-invariant. Nonnegative for every beta > 0.
    """
    if isinstance(spectrum, SpectrumResult):
        if not spectrum.hermitian:
            raise ValueError("specific heat requires a Hermitian (real) spectrum")
        lam = np.asarray(spectrum.eigenvalues, dtype=float)
    else:
        lam = np.asarray(spectrum, dtype=float)
    if beta_grid is None:
        beta_grid = default_beta_grid()
    beta_grid = np.asarray(beta_grid, dtype=float)
    if np.any(beta_grid <= 0):
        raise ValueError("beta grid must be strictly positive")
    shifted = lam - lam.min()
    out = np.empty_like(beta_grid)
    for i, beta in enumerate(beta_grid):
        w = np.exp(-beta * shifted)
        z = w.sum()
        p = w / z
        mean = float(p @ lam)
        mean_sq = float(p @ (lam * lam))
        out[i] = beta * beta * max(mean_sq - mean * mean, 0.0)
    return out


def embed(g: DirectedGraph, q: float, g_param: float, l: int = 1,
          normalized: bool = True):
    """Polar embedding from magnetic phases and dilation moduli.

    theta(u) is the phase of component u of the l-th magnetic eigenvector
    (1-based, ascending eigenvalues); s(u) is the modulus of component u of
    the first dilation eigenvector (all ones when g_param = 0). The planar
    point is (1 - (s - s_min)/(s_max - s_min)) * (cos theta, sin theta), so
    the vertex with maximal s sits at the origin. If s is constant, every
    radius is 0.
    """
    if not 1 <= l <= g.n:
        raise ValueError(f"eigenvector index l={l} outside 1..{g.n}")
    spec = eigendecompose(magnetic_laplacian(g, q, normalized=normalized))
    vec = spec.eigenvectors[:, l - 1]
    theta = np.angle(vec)
    if g_param == 0:
        s = np.ones(g.n)
    else:
        s = np.abs(first_eigenvector(dilation_laplacian(g, g_param)))
    s_min, s_max = float(s.min()), float(s.max())
    if s_max > s_min:
        radius = 1.0 - (s - s_min) / (s_max - s_min)
    else:
        radius = np.zeros(g.n)
    points = []
    for u in range(g.n):
        xy = (radius[u] * np.cos(theta[u]), radius[u] * np.sin(theta[u]))
        points.append(EmbeddingPoint(vertex=u, theta=float(theta[u]),
                                     s=float(s[u]), xy=xy))
    return points
