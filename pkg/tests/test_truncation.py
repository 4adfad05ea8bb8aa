"""Galerkin truncation oracle: matrix entries, norms, radius estimates."""

import math

import numpy as np
import pytest

from bergspec.errors import EvaluationError
from bergspec.regions import gammas_from, operator_radius
from bergspec.scenario import make_builtin
from bergspec.truncation import (GalerkinQuadrature, TruncationMatrix,
                                 build_matrix, eigen_cloud, gelfand_radius,
                                 resolution_horizon)


def test_identity_at_t_zero(strip_unweighted):
    M = build_matrix(strip_unweighted, 0.0, 24)
    assert np.max(np.abs(M.entries - np.eye(24))) < 1e-12


def test_first_column_is_projection_of_cocycle(strip_weighted):
    # column 0 = coefficients of u_t * 1 in the orthonormal monomial basis:
    # <u_t, e_j> computed independently on a fine polar grid
    s = strip_weighted
    t = 0.6
    M = build_matrix(s, t, 16)
    from bergspec.scenario import cocycle
    nr, ntheta = 4000, 512
    r = (np.arange(nr) + 0.5) / nr
    theta = 2 * np.pi * np.arange(ntheta) / ntheta
    z = r[:, None] * np.exp(1j * theta)[None, :]
    u = cocycle(s, t, z.ravel()).reshape(z.shape)
    for j in (0, 1, 3, 7):
        e_j = math.sqrt((j + 1) / math.pi) * z ** j
        integrand = u * np.conj(e_j) * r[:, None]
        val = integrand.sum() * (2 * np.pi / ntheta) * (1.0 / nr)
        val *= math.sqrt(1.0 / math.pi)  # T e_0 = u_t * e_0(z) = u_t / sqrt(pi)
        assert abs(M.entries[j, 0] - val) < 5e-4


def test_composition_column_against_taylor_series(strip_unweighted):
    # unweighted strip flow has the closed form
    # phi_t(z) = ((e^t-1) + (e^t+1) z)/((e^t+1) + (e^t-1) z);
    # column k of the matrix must be the basis coefficients of phi_t^k
    s = strip_unweighted
    t = 1.0
    N = 12
    M = build_matrix(s, t, N)
    et = math.e
    a, b = et - 1.0, et + 1.0
    # Taylor coefficients of phi_t via series division
    n_terms = 64
    num = np.zeros(n_terms)
    num[0], num[1] = a, b
    den = np.zeros(n_terms)
    den[0], den[1] = b, a
    phi = np.zeros(n_terms)
    for n in range(n_terms):
        acc = num[n] - sum(phi[m] * den[n - m] for m in range(n))
        phi[n] = acc / den[0]
    col = np.zeros(n_terms)
    col[0] = 1.0
    k_target = 3
    for _ in range(k_target):
        col = np.convolve(col, phi)[:n_terms]
    # T e_k = sqrt((k+1)/pi) phi^k; with phi^k = sum c_m z^m the entry is
    # <T e_k, e_j> = c_j * sqrt((k+1)/(j+1))
    j = np.arange(N)
    expected = col[:N] * np.sqrt((k_target + 1.0) / (j + 1.0))
    assert np.max(np.abs(M.entries[:, k_target] - expected)) < 1e-12


def test_semigroup_consistency_of_sections(strip_unweighted):
    # M(t1 + t2) ~ M(t1) M(t2) on the well-resolved upper-left block
    s = strip_unweighted
    A = build_matrix(s, 0.4, 96).entries
    B = build_matrix(s, 0.7, 96).entries
    C = build_matrix(s, 1.1, 96).entries
    blk = 24
    err = np.max(np.abs((A @ B)[:blk, :blk] - C[:blk, :blk]))
    assert err < 1e-8


def test_p_and_size_validation(strip_unweighted):
    s3 = make_builtin("strip_flow", 3.0)
    with pytest.raises(EvaluationError):
        build_matrix(s3, 1.0, 8)
    with pytest.raises(EvaluationError):
        build_matrix(strip_unweighted, 1.0, 500)
    with pytest.raises(ValueError):
        GalerkinQuadrature(angular=1000)


def test_gelfand_diagonal_cases():
    quad = GalerkinQuadrature()
    ident = TruncationMatrix(8, np.eye(8, dtype=complex), 1.0, "test", quad)
    r, seq = gelfand_radius(ident, 10)
    assert r == pytest.approx(1.0)
    assert all(x == pytest.approx(1.0) for x in seq)
    half = TruncationMatrix(8, 0.5 * np.eye(8, dtype=complex), 1.0, "test", quad)
    r, _ = gelfand_radius(half, 10)
    assert r == pytest.approx(0.5)
    with pytest.raises(ValueError):
        gelfand_radius(ident, 4)


def test_gelfand_sequence_full_length():
    quad = GalerkinQuadrature()
    M = TruncationMatrix(4, np.diag([2.0, 1.0, 0.5, 0.25]).astype(complex),
                         1.0, "test", quad)
    r, seq = gelfand_radius(M, 12)
    assert len(seq) == 12
    assert r <= min(seq[:resolution_horizon(M)]) + 1e-15


def test_gelfand_radius_vs_theory(strip_unweighted):
    s = strip_unweighted
    g = gammas_from(s.fixed_points, s.p)
    M = build_matrix(s, 1.0, 60)
    r, _ = gelfand_radius(M, 24)
    theory = operator_radius(g, 1.0)
    assert theory == pytest.approx(math.e)
    assert 0.85 * math.e <= r <= 1.15 * math.e
    assert r <= 1.05 * theory


def test_eigen_cloud_sorted_and_bounded(strip_unweighted):
    M = build_matrix(strip_unweighted, 1.0, 40)
    cloud = eigen_cloud(M)
    mags = [abs(v) for v in cloud]
    assert all(a <= b + 1e-12 for a, b in zip(mags, mags[1:]))
    assert mags[-1] <= 1.5  # indicative cloud stays near the unit scale
