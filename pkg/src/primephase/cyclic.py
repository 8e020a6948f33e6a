"""Fourier calculus on the cyclic group of order N.

Conventions (fixed once, used everywhere):

    ftilde(m) = (1/N) * sum_k f(k) exp(+2*pi*i*m*k/N)        -- dft
    f(k)      = sum_m ftilde(m) exp(-2*pi*i*m*k/N)           -- idft
    ghat_m(k) = exp(-2*pi*i*m*k/N)                           -- character vector
    (D^n f)(k) = sum_m (-2*pi*i*m/N)^n ftilde(m) exp(-2*pi*i*m*k/N)

with m the canonical residue in [0, N); a symmetric-range variant of the
spectral derivative is available for diagnostics.  The exponential of the
derivative reproduces the exact index shift, exp(l*D) f = f(.+l), which is
the identity the rest of the construction leans on.

Formal one-dimensional calculus claims (the power rule, the Leibniz rule,
[D, K] = 1) cannot hold as N x N operator identities -- the commutator of two
finite matrices is traceless, so [D, K] = 1 is impossible.  They are exposed
through `formal_calculus_report` as residuals, never asserted.

Integration by parts, sum_k (D^n x) y = (-1)^n sum_k x (D^n y) with the plain
bilinear pairing, needs the eigenvalue symmetry lambda_m = -lambda_(-m) and so
holds exactly for the symmetric-range derivative only; for the canonical
range it holds in the sesquilinear form (conjugate the second factor).  Both
exact forms are asserted in the tests, and the canonical bilinear residual is
part of `formal_calculus_report`.
"""
from __future__ import annotations

import math

import numpy as np

from .scalars import CycloField


def _as_state(f) -> np.ndarray:
    f = np.asarray(f, dtype=complex)
    if f.ndim != 1:
        raise ValueError("expected a one-dimensional coefficient sequence")
    return f


def dft_matrix(N: int) -> np.ndarray:
    """Matrix of f -> ftilde: entries (1/N) exp(+2*pi*i*m*k/N)."""
    m, k = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    return np.exp(2j * math.pi * m * k / N) / N


def idft_matrix(N: int) -> np.ndarray:
    """Matrix of ftilde -> f: entries exp(-2*pi*i*m*k/N)."""
    k, m = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    return np.exp(-2j * math.pi * m * k / N)


def dft(f) -> np.ndarray:
    f = _as_state(f)
    return dft_matrix(len(f)) @ f


def idft(ft) -> np.ndarray:
    ft = _as_state(ft)
    return idft_matrix(len(ft)) @ ft


def ghat(m: int, N: int) -> np.ndarray:
    """Character vector ghat_m(k) = exp(-2*pi*i*m*k/N), a shift eigenvector."""
    return np.exp(-2j * math.pi * (m % N) * np.arange(N) / N)


def spectrum(N: int, n: int = 1, symmetric: bool = False) -> np.ndarray:
    """Eigenvalues (-2*pi*i*m/N)^n of the n-th spectral derivative."""
    m = np.arange(N, dtype=float)
    if symmetric:
        m = np.where(m <= (N - 1) // 2, m, m - N)
    return (-2j * math.pi * m / N) ** n


def derivative(f, n: int = 1, symmetric: bool = False) -> np.ndarray:
    """n-th spectral derivative; n = 0 is the identity."""
    f = _as_state(f)
    if n < 0:
        raise ValueError("derivative order must be non-negative")
    if n == 0:
        return f.copy()
    return idft(spectrum(len(f), n, symmetric) * dft(f))


def derivative_matrix(N: int, n: int = 1, symmetric: bool = False) -> np.ndarray:
    if n == 0:
        return np.eye(N, dtype=complex)
    return idft_matrix(N) @ np.diag(spectrum(N, n, symmetric)) @ dft_matrix(N)


def translate(f, l: int) -> np.ndarray:
    """Spectral evaluation of exp(l*D) f, i.e. the exact shift k -> k + l."""
    f = _as_state(f)
    N = len(f)
    ft = dft(f)
    phase = np.exp(-2j * math.pi * np.arange(N) * (l % N) / N)
    return idft(phase * ft)


def dft_exact(f: list, field: CycloField) -> list:
    """Exact backend: ftilde(m) = (1/N) sum_k f(k) zeta_N^(m*k)."""
    N = field.N
    return [
        sum((f[k] * field.zeta(m * k) for k in range(N)), field.zero()) / N
        for m in range(N)
    ]


def idft_exact(ft: list, field: CycloField) -> list:
    N = field.N
    return [
        sum((ft[m] * field.zeta(-m * k) for m in range(N)), field.zero())
        for k in range(N)
    ]


def translate_exact(f: list, l: int, field: CycloField) -> list:
    """Exact-backend shift: the spectral form collapses to roots of unity."""
    N = field.N
    ft = dft_exact(f, field)
    return idft_exact([ft[m] * field.zeta(-m * l) for m in range(N)], field)


def formal_calculus_report(N: int, nmax: int = 3, seed: int = 0) -> dict:
    """Residuals of the formal calculus claims on C^N (reported, not asserted).

    Covers [D, K] - 1, D(k^n) - n*k^(n-1), and the first-order Leibniz rule on
    random pairs.  All three are exact in the continuum but fail at finite N.
    """
    rng = np.random.default_rng(seed)
    D = derivative_matrix(N)
    K = np.diag(np.arange(N, dtype=complex))
    comm = D @ K - K @ D - np.eye(N)
    report = {"commutator_residual": float(np.max(np.abs(comm)))}

    power = {}
    k = np.arange(N, dtype=complex)
    for n in range(1, nmax + 1):
        lhs = derivative(k ** n)
        rhs = n * k ** (n - 1) if n > 1 else np.ones(N, dtype=complex)
        power[n] = float(np.max(np.abs(lhs - rhs)))
    report["power_rule_residual"] = power

    x = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    y = rng.standard_normal(N) + 1j * rng.standard_normal(N)
    leib = derivative(x * y) - derivative(x) * y - x * derivative(y)
    report["leibniz_residual"] = float(np.max(np.abs(leib)))
    report["parts_bilinear_canonical_residual"] = float(
        abs(np.sum(derivative(x) * y) + np.sum(x * derivative(y)))
    )
    return report
