"""Brute-force Galerkin oracle on the p = 2 Bergman space.

Truncation matrices of the weighted composition operator in the monomial
orthonormal basis e_k(z) = sqrt((k+1)/pi) z^k, Gelfand spectral-radius
estimates via matrix powers, and dense eigenvalue clouds.

Truncation spectra of non-normal operators are indicative only: eigenvalues
of a finite section need not approximate the spectrum of the operator, so
`eigen_cloud` output must not be read as a spectral certificate.  The Gelfand
estimate min_n ||M^n||^(1/n) is the quantity cross-validated against theory.
"""

from __future__ import annotations

import math
from dataclasses import dataclass, field

import numpy as np

from .errors import EvaluationError, InversionError
from .scenario import Scenario, cocycle, flow

__all__ = [
    "GalerkinQuadrature",
    "TruncationMatrix",
    "build_matrix",
    "gelfand_radius",
    "eigen_cloud",
]

# radial panel breakpoints graded toward the unit circle; the integrand
# carries boundary growth of order (1 - r)^{-2} at worst before weighting
_RADIAL_PANELS = (0.0, 0.5, 0.8, 0.9, 0.95, 0.98, 0.99,
                  0.995, 0.998, 0.9993, 0.9998, 1.0)


@dataclass(frozen=True)
class GalerkinQuadrature:
    radial_panels: tuple = _RADIAL_PANELS
    radial_order: int = 12
    angular: int = 1024

    def __post_init__(self):
        if self.angular & (self.angular - 1):
            raise ValueError("angular node count must be a power of two")
        if list(self.radial_panels) != sorted(set(self.radial_panels)):
            raise ValueError("radial panels must be strictly increasing")


DEFAULT_QUAD = GalerkinQuadrature()


@dataclass(frozen=True)
class TruncationMatrix:
    N: int
    entries: np.ndarray
    t: float
    scenario_id: str
    quad: GalerkinQuadrature
    clip_bound: float = 0.0   # recorded tail bound when quadrature was clipped


def _radial_nodes(quad: GalerkinQuadrature):
    from numpy.polynomial.legendre import leggauss
    x, w = leggauss(quad.radial_order)
    nodes, weights = [], []
    for a, b in zip(quad.radial_panels[:-1], quad.radial_panels[1:]):
        half = 0.5 * (b - a)
        nodes.append(0.5 * (a + b) + half * x)
        weights.append(half * w)
    return np.concatenate(nodes), np.concatenate(weights)


def build_matrix(s: Scenario, t, N, quad=DEFAULT_QUAD) -> TruncationMatrix:
    """Galerkin matrix of the time-t weighted composition operator.

    Entry (j, k) = <u_t phi_t^k c_k, e_j> computed per radial node by the
    discrete Fourier transform on the angular circle; with the monomial basis
    this reduces to M[j,k] = 2 sqrt((j+1)(k+1)) * int_0^1 a_j(r;k) r^{j+1} dr
    where a_j(r;k) is the j-th Fourier coefficient of u_t phi_t^k on |z| = r.
    """
    if s.p != 2.0:
        raise EvaluationError("the Galerkin oracle is defined on p = 2 only")
    if N > 256:
        raise EvaluationError("N <= 256 required")
    t = float(t)
    radii, rweights = _radial_nodes(quad)
    theta = 2.0 * math.pi * np.arange(quad.angular) / quad.angular
    circle = np.exp(1j * theta)

    M = np.zeros((N, N), dtype=complex)
    clip_bound = 0.0
    prev_coeff_mag = 0.0
    for r, wr in zip(radii, rweights):
        z = r * circle
        try:
            if t == 0.0:
                zt = z
                u = np.ones_like(z)
            else:
                zt = flow(s, t, z)
                u = s._v(zt) / s._v(z)
        except (InversionError, EvaluationError):
            if r > 0.999:
                # clipped tail: bound the dropped contribution by the last
                # evaluated circle's magnitude times the remaining radial mass
                clip_bound = max(clip_bound, prev_coeff_mag * (1.0 - r) * 10.0)
                continue
            raise
        powers = np.ones_like(zt)
        for k in range(N):
            if k > 0:
                powers = powers * zt
            coeff = np.fft.fft(u * powers) / quad.angular
            prev_coeff_mag = max(prev_coeff_mag, float(np.max(np.abs(coeff[:N]))))
            j = np.arange(N)
            M[:, k] += wr * coeff[:N] * r ** (j + 1)
    j = np.arange(N)
    M *= 2.0 * np.sqrt((j[:, None] + 1.0) * (j[None, :] + 1.0))
    return TruncationMatrix(N, M, t, f"{s.kind}:{s.weights}", quad, clip_bound)


def _operator_2norm(A, iters=50, tol=1e-10):
    """Largest singular value by power iteration on A* A, deterministic start."""
    n = A.shape[0]
    x = np.ones(n) / math.sqrt(n)
    B = A.conj().T @ A
    val = 0.0
    for _ in range(iters):
        y = B @ x
        nv = float(np.linalg.norm(y))
        if nv == 0.0:
            return 0.0
        x = y / nv
        if abs(nv - val) <= tol * max(1.0, nv):
            val = nv
            break
        val = nv
    return math.sqrt(val)


def resolution_horizon(M: TruncationMatrix):
    """Largest power of the time-t section that still resolves the operator.

    The semigroup concentrates mass at boundary scale e^{-nt}, which a degree-N
    polynomial basis resolves only while e^{nt} stays below N; beyond that
    horizon ||M^n||^{1/n} decays toward the section's own spectral radius,
    a truncation artifact rather than an operator quantity.
    """
    t = max(abs(M.t), 1e-9)
    return max(1, int(round(math.log(M.N + 1.0) / t)) - 1)


def gelfand_radius(M: TruncationMatrix, n_max):
    """Spectral-radius estimate min_n ||M^n||_2^{1/n}.

    The full sequence up to n_max is returned; the reported minimum is taken
    over powers up to the section's resolution horizon (see
    `resolution_horizon`), since later terms under-run the true radius.
    """
    if n_max < 8:
        raise ValueError("n_max >= 8 required")
    A = M.entries
    P = np.eye(M.N, dtype=complex)
    seq = []
    for n in range(1, n_max + 1):
        P = P @ A
        seq.append(_operator_2norm(P) ** (1.0 / n))
    n_eff = min(n_max, resolution_horizon(M))
    return min(seq[:n_eff]), seq


def eigen_cloud(M: TruncationMatrix):
    """Eigenvalues of the dense truncation, sorted by modulus then phase.
    Indicative only (non-normal truncation)."""
    vals = np.linalg.eigvals(M.entries)
    order = np.lexsort((np.angle(vals), np.abs(vals)))
    return [complex(v) for v in vals[order]]
