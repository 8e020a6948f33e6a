"""Discrete Wigner distributions on the N x N phase space over F_N.

For a state f with nonzero central character omega (all index arithmetic in
F_N, with i2 = inv(2*omega) and i4 = inv(4*omega)):

    W(r, s)  = sum_p conj(f(r + p*i4)) f(r - p*i4) exp(-2*pi*i*p*s/N)
    A(q, p)  = sum_k conj(f(k)) exp(2*pi*i*q*(k - p*i4)/N) f(k - p*i2)
    W(r, s)  = (1/N) sum_{q,p} A(q, p) exp(-2*pi*i*(q*r + p*s)/N)

W is the (raw-normalized) Wigner table: real, with position marginal
sum_s W(r, s) = N |f(r)|^2, momentum marginal sum_r W(r, s) = N^2
|ftilde(2*omega*s)|^2, and total mass N * ||f||^2.  A is the Fourier-Wigner
table, equal to the expectation of the exponential displacement operator

    [E_{q,p} f](k) = exp(2*pi*i*q*(k - p*i4)/N) f(k - p*i2).

Pairing a test-function table sigma with W as (1/N) sum sigma(r,s) W(r,s)
realizes the measurement map: for sigma the character exp(2*pi*i*(qr+ps)/N)
the pairing equals <f, E_{q,p} f> exactly; for polynomial sigma = r^m s^n it
is compared against the Weyl-ordered operator expectation and the residual is
reported (the finite-N spectral derivative breaks exactness for mixed
monomials; only the (0,0) and (1,0) rows are exact).

Covariance (index maps pinned by brute force at N = 3, then asserted for all
tested N):

    wigner(U(r0,s0,t0) f)(r, s) = wigner(f)(r - r0, s - s0)
    wigner(W(g) f)(r, s)        = wigner(f)(a*r + c*s, b*r + d*s),
                                  g = [[a, b], [c, d]].
"""
from __future__ import annotations

import csv
import itertools
import json
import math
from dataclasses import dataclass, field

import numpy as np

from .cyclic import dft, dft_matrix, idft_matrix
from .fields import PrimeField
from .sl2 import SL2Matrix
from .metaplectic import WeilOperator, weil


@dataclass
class StateVector:
    """N complex amplitudes together with the central character omega."""

    amplitudes: np.ndarray
    omega: int
    normalized: bool = False

    def __post_init__(self):
        self.amplitudes = np.asarray(self.amplitudes, dtype=complex)
        if self.amplitudes.ndim != 1:
            raise ValueError("amplitudes must be a one-dimensional sequence")
        N = len(self.amplitudes)
        PrimeField(N)
        self.omega = self.omega % N
        if self.omega == 0:
            raise ValueError("omega must be nonzero in F_N")
        if self.normalized and abs(self.norm2() - 1.0) > 1e-12:
            raise ValueError("state flagged normalized but ||f||^2 != 1")

    @property
    def N(self) -> int:
        return len(self.amplitudes)

    def norm2(self) -> float:
        return float(np.sum(np.abs(self.amplitudes) ** 2))

    def normalize(self) -> "StateVector":
        n = math.sqrt(self.norm2())
        if n == 0:
            raise ValueError("cannot normalize the zero state")
        return StateVector(self.amplitudes / n, self.omega, normalized=True)

    def apply(self, op) -> "StateVector":
        mat = op.matrix if isinstance(op, WeilOperator) else np.asarray(op)
        return StateVector(mat @ self.amplitudes, self.omega)

    @classmethod
    def preset(cls, name: str, N: int, omega: int) -> "StateVector":
        """Named states: delta:k0, uniform, char:m, chirp:b."""
        kind, _, par = name.partition(":")
        k = np.arange(N)
        if kind == "delta":
            amp = np.zeros(N, dtype=complex)
            amp[int(par or 0) % N] = 1.0
        elif kind == "uniform":
            amp = np.ones(N, dtype=complex) / math.sqrt(N)
        elif kind == "char":
            m = int(par or 0)
            amp = np.exp(-2j * math.pi * (m % N) * k / N) / math.sqrt(N)
        elif kind == "chirp":
            b = int(par or 0)
            amp = np.exp(2j * math.pi * ((b * k * k * omega) % N) / N) / math.sqrt(N)
        else:
            raise ValueError(f"unknown state preset {name!r}")
        return cls(amp, omega)

    @classmethod
    def random(cls, rng, N: int, omega: int, normalize: bool = True) -> "StateVector":
        amp = rng.standard_normal(N) + 1j * rng.standard_normal(N)
        f = cls(amp, omega)
        return f.normalize() if normalize else f


@dataclass
class WignerTable:
    """N x N real table W(r, s); convention 'raw' (literal sums) or 'unit-sum'."""

    values: np.ndarray
    convention: str = "raw"

    @property
    def N(self) -> int:
        return self.values.shape[0]

    def unit_sum(self) -> "WignerTable":
        if self.convention == "unit-sum":
            return self
        return WignerTable(self.values / self.values.sum(), "unit-sum")

    def to_csv(self, path) -> None:
        with open(path, "w", newline="") as fh:
            w = csv.writer(fh)
            w.writerow(["r", "s", "value"])
            for r in range(self.N):
                for s in range(self.N):
                    w.writerow([r, s, repr(float(self.values[r, s]))])

    def to_json(self) -> dict:
        return {
            "convention": self.convention,
            "n": self.N,
            "table": [[float(v) for v in row] for row in self.values],
        }


@dataclass
class FourierWignerTable:
    """N x N complex table A(q, p)."""

    values: np.ndarray

    @property
    def N(self) -> int:
        return self.values.shape[0]

    def to_json(self) -> dict:
        return {
            "n": self.N,
            "table_re": [[float(v.real) for v in row] for row in self.values],
            "table_im": [[float(v.imag) for v in row] for row in self.values],
        }


def _indices(f: StateVector) -> tuple[int, int, int]:
    F = PrimeField(f.N)
    return f.N, F.inv(2 * f.omega), F.inv(4 * f.omega)


def wigner(f: StateVector) -> WignerTable:
    """Raw Wigner table of f (see module docstring for the conventions)."""
    N, _, i4 = _indices(f)
    amp = f.amplitudes
    r = np.arange(N)[:, None]
    p = np.arange(N)[None, :]
    plus = amp[(r + p * i4) % N]
    minus = amp[(r - p * i4) % N]
    phases = np.exp(-2j * math.pi * np.outer(np.arange(N), np.arange(N)) / N)
    table = (np.conj(plus) * minus) @ phases
    imag_max = float(np.max(np.abs(table.imag)))
    if imag_max > 1e-9:
        raise AssertionError(f"Wigner table not real: max|Im| = {imag_max}")
    return WignerTable(table.real.copy(), "raw")


def fourier_wigner(f: StateVector) -> FourierWignerTable:
    """Fourier-Wigner table A(q, p) = <f, E_{q,p} f>."""
    N, i2, i4 = _indices(f)
    amp = f.amplitudes
    k = np.arange(N)
    A = np.empty((N, N), dtype=complex)
    for p in range(N):
        shifted = amp[(k - p * i2) % N]
        base = np.conj(amp) * shifted
        for q in range(N):
            phase = np.exp(2j * math.pi * ((q * (k - p * i4)) % N) / N)
            A[q, p] = np.sum(base * phase)
    return FourierWignerTable(A)


def displacement_matrix(q: int, p: int, omega: int, N: int) -> np.ndarray:
    """Matrix of the exponential displacement operator E_{q,p}."""
    F = PrimeField(N)
    i2, i4 = F.inv(2 * omega), F.inv(4 * omega)
    k = np.arange(N)
    E = np.zeros((N, N), dtype=complex)
    E[k, (k - p * i2) % N] = np.exp(2j * math.pi * ((q * (k - p * i4)) % N) / N)
    return E


def evaluate_over_wigner(table: WignerTable, sigma: np.ndarray) -> complex:
    """Measurement pairing (1/N) sum_{r,s} sigma(r, s) W(r, s)."""
    return complex(np.sum(np.asarray(sigma) * table.values) / table.N)


@dataclass
class CharExpectation:
    operator_side: complex
    phase_space_side: complex

    @property
    def residual(self) -> float:
        return abs(self.operator_side - self.phase_space_side)


def expectation_char(f: StateVector, q: int, p: int) -> CharExpectation:
    """Both sides of the character Weyl map at (q, p); they agree exactly."""
    N = f.N
    amp = f.amplitudes
    op = complex(np.vdot(amp, displacement_matrix(q, p, f.omega, N) @ amp))
    r, s = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    sigma = np.exp(2j * math.pi * ((q * r + p * s) % N) / N)
    ps = evaluate_over_wigner(wigner(f), sigma)
    return CharExpectation(op, ps)


def dprime_matrix(N: int, omega: int) -> np.ndarray:
    """The scaled derivative (-1/(2*omega)) (N/(2*pi*i)) D: Hermitian, with
    eigenvalue m/(2*omega) on the character ghat_m (m canonical in [0, N),
    omega canonical in [1, N); the scale is a rational number, not a field
    inverse)."""
    omega %= N
    if omega == 0:
        raise ValueError("omega must be nonzero")
    eig = np.arange(N) / (2.0 * omega)
    return idft_matrix(N) @ np.diag(eig.astype(complex)) @ dft_matrix(N)


def weyl_ordered(m: int, n: int, omega: int, N: int) -> np.ndarray:
    """Symmetrized operator: m!n!/(m+n)! times the sum over all distinct
    interleavings of m factors K = diag(k) and n factors D'."""
    if m < 0 or n < 0:
        raise ValueError("orders must be non-negative")
    if m + n > 8:
        raise ValueError("word enumeration bounded to m + n <= 8")
    K = np.diag(np.arange(N, dtype=complex))
    Dp = dprime_matrix(N, omega)
    total = np.zeros((N, N), dtype=complex)
    for positions in itertools.combinations(range(m + n), m):
        word = np.eye(N, dtype=complex)
        for slot in range(m + n):
            word = word @ (K if slot in positions else Dp)
        total += word
    coeff = math.factorial(m) * math.factorial(n) / math.factorial(m + n)
    return coeff * total


@dataclass
class WeylResidual:
    m: int
    n: int
    operator_side: complex
    wigner_side: complex

    @property
    def residual(self) -> float:
        return abs(self.operator_side - self.wigner_side)

    def to_json(self) -> dict:
        return {
            "m": self.m,
            "n": self.n,
            "operator_side": [self.operator_side.real, self.operator_side.imag],
            "wigner_side": [self.wigner_side.real, self.wigner_side.imag],
            "residual": self.residual,
        }


def weyl_residual_report(f: StateVector, m: int, n: int) -> WeylResidual:
    """Operator vs phase-space evaluation of the monomial r^m s^n.

    Exact for (m, n) in {(0, 0), (1, 0)} via the marginal identities; for
    other orders the deviation is a finite-N effect and is only reported.
    """
    if m + n > 4:
        raise ValueError("report bounded to m + n <= 4")
    N = f.N
    amp = f.amplitudes
    op = complex(np.vdot(amp, weyl_ordered(m, n, f.omega, N) @ amp))
    r, s = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    sigma = (r.astype(float) ** m) * (s.astype(float) ** n)
    ps = evaluate_over_wigner(wigner(f), sigma)
    return WeylResidual(m, n, op, ps)


@dataclass
class MomentVector:
    """Order-h moments <k^j D'^(h-j)> for j = h down to 0."""

    order: int
    values: np.ndarray = field(default_factory=lambda: np.zeros(1, dtype=complex))

    def __post_init__(self):
        self.values = np.asarray(self.values, dtype=complex)
        if len(self.values) != self.order + 1:
            raise ValueError("moment vector must have order + 1 entries")


def moments(f: StateVector, h: int) -> MomentVector:
    """<f, weyl_ordered(j, h - j) f> for j = h..0."""
    if h > 8:
        raise ValueError("moment order bounded to h <= 8")
    amp = f.amplitudes
    vals = [
        complex(np.vdot(amp, weyl_ordered(j, h - j, f.omega, f.N) @ amp))
        for j in range(h, -1, -1)
    ]
    return MomentVector(h, np.array(vals))


def phase_space_map(g: SL2Matrix) -> np.ndarray:
    """Index map of the Wigner covariance: (r, s) -> (a*r + c*s, b*r + d*s).

    Pinned by brute force against the oracle at N = 3 (transpose of g applied
    to the column (r, s)); asserted for all tested N by `covariance_check`.
    """
    N = g.N
    r, s = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
    return (g.a * r + g.c * s) % N, (g.b * r + g.d * s) % N


def covariance_check(g: SL2Matrix, f: StateVector) -> float:
    """Max-abs residual of wigner(W(g) f) against the point-permuted wigner(f)."""
    W_g = wigner(f.apply(weil(g, f.omega)))
    W_f = wigner(f)
    rr, ss = phase_space_map(g)
    return float(np.max(np.abs(W_g.values - W_f.values[rr, ss])))
