"""Finite-difference utilities shared by the test modules.

These are deliberately independent of the package under test: they only see
plain callables and numpy arrays, so they can serve as oracles.
"""
from __future__ import annotations

import numpy as np


def fd_jacobian(f, x, h=1e-6):
    """Central-difference Jacobian of f: R^n -> R^m, columns = d f / d x_j."""
    x = np.asarray(x, dtype=float)
    f0 = np.asarray(f(x), dtype=float)
    jac = np.empty((f0.size, x.size))
    for j in range(x.size):
        e = np.zeros_like(x)
        e[j] = h
        jac[:, j] = (np.asarray(f(x + e)) - np.asarray(f(x - e))) / (2.0 * h)
    return jac


def fd_derivative(f, t, h=1e-6):
    return (np.asarray(f(t + h)) - np.asarray(f(t - h))) / (2.0 * h)


def fd_derivative5(f, t, h=1e-3):
    """Five-point first derivative, error O(h^4). Good to ~1e-11 at h=1e-3."""
    fm2, fm1, fp1, fp2 = (np.asarray(f(t + k * h)) for k in (-2, -1, 1, 2))
    return (fm2 - 8.0 * fm1 + 8.0 * fp1 - fp2) / (12.0 * h)


def fd_second5(f, t, h=1e-3):
    """Five-point second derivative, error O(h^4)."""
    fm2, fm1, f0, fp1, fp2 = (np.asarray(f(t + k * h)) for k in (-2, -1, 0, 1, 2))
    return (-fm2 + 16.0 * fm1 - 30.0 * f0 + 16.0 * fp1 - fp2) / (12.0 * h * h)


def numeric_christoffels(metric_at, x, h=1e-4):
    """Christoffel symbols of the second kind from central differences.

    metric_at maps an n-vector to an (n, n) metric matrix. Returns
    gamma[k, i, j].
    """
    x = np.asarray(x, dtype=float)
    n = x.size
    g = np.asarray(metric_at(x), dtype=float)
    ginv = np.linalg.inv(g)
    dg = np.empty((n, n, n))  # dg[l, i, j] = d g_ij / d x_l
    for l in range(n):
        e = np.zeros(n)
        e[l] = h
        dg[l] = (np.asarray(metric_at(x + e)) - np.asarray(metric_at(x - e))) / (2.0 * h)
    gamma = np.empty((n, n, n))
    for k in range(n):
        for i in range(n):
            for j in range(n):
                s = 0.0
                for l in range(n):
                    s += ginv[k, l] * (dg[i, j, l] + dg[j, i, l] - dg[l, i, j])
                gamma[k, i, j] = 0.5 * s
    return gamma


def fd_mean_curvature(metric_at, embed, s, t, reference_normal, h=1e-4):
    """Mean curvature of the patch embed(s, t) by central differences.

    Everything is numeric: tangents and the covariant Hessian come from
    finite differences of the embedding, Christoffels from the metric.
    reference_normal (coordinate components) only fixes the sign of the
    computed unit normal.
    """
    p = np.asarray(embed(s, t), dtype=float)
    fs = (np.asarray(embed(s + h, t)) - np.asarray(embed(s - h, t))) / (2.0 * h)
    ft = (np.asarray(embed(s, t + h)) - np.asarray(embed(s, t - h))) / (2.0 * h)
    fss = (np.asarray(embed(s + h, t)) - 2.0 * p + np.asarray(embed(s - h, t))) / h**2
    ftt = (np.asarray(embed(s, t + h)) - 2.0 * p + np.asarray(embed(s, t - h))) / h**2
    fst = (np.asarray(embed(s + h, t + h)) - np.asarray(embed(s + h, t - h))
           - np.asarray(embed(s - h, t + h)) + np.asarray(embed(s - h, t - h))) / (4.0 * h * h)

    g = np.asarray(metric_at(p), dtype=float)
    gamma = numeric_christoffels(metric_at, p)
    e11 = fs @ g @ fs
    e12 = fs @ g @ ft
    e22 = ft @ g @ ft

    # unit normal: g-orthogonal to both tangents, sign from the reference
    rows = np.vstack([fs @ g, ft @ g])
    _, _, vt = np.linalg.svd(rows)
    n = vt[-1]
    n = n / np.sqrt(n @ g @ n)
    if n @ g @ np.asarray(reference_normal, dtype=float) < 0.0:
        n = -n

    def second_form(hess, a, b):
        cov = hess + np.einsum("kij,i,j->k", gamma, a, b)
        return cov @ g @ n

    b11 = second_form(fss, fs, fs)
    b12 = second_form(fst, fs, ft)
    b22 = second_form(ftt, ft, ft)
    return (e22 * b11 - 2.0 * e12 * b12 + e11 * b22) / (2.0 * (e11 * e22 - e12 * e12))


def lie_derivative_metric(metric_at, killing_at, x, h=1e-6):
    """(L_K g)_ij = K^l d_l g_ij + g_lj d_i K^l + g_il d_j K^l, all by FD."""
    x = np.asarray(x, dtype=float)
    n = x.size
    g = np.asarray(metric_at(x), dtype=float)
    K = np.asarray(killing_at(x), dtype=float)
    out = np.zeros((n, n))
    dg = np.empty((n, n, n))
    dK = np.empty((n, n))  # dK[i, l] = d K^l / d x_i
    for i in range(n):
        e = np.zeros(n)
        e[i] = h
        dg[i] = (np.asarray(metric_at(x + e)) - np.asarray(metric_at(x - e))) / (2.0 * h)
        dK[i] = (np.asarray(killing_at(x + e)) - np.asarray(killing_at(x - e))) / (2.0 * h)
    for i in range(n):
        for j in range(n):
            out[i, j] = K @ dg[:, i, j] + g[:, j] @ dK[i] + g[i, :] @ dK[j]
    return out
