"""The Weil (metaplectic) representation of SL(2, F_N) on C^N.

Generator actions, for a nonzero central character omega:

    [W(t_s^a) f](k) = legendre(a) * f(a*k)
    [W(t_u^b) f](k) = exp(2*pi*i*b*k^2*omega/N) * f(k)
    [W(J) f](l)     = legendre(omega) * G(1,N)/N
                        * sum_k f(k) exp(2*pi*i*2*omega*k*l/N)
    W(t_d^c)        = diagonal in Fourier space, phases
                        exp(-2*pi*i*c*q^2*inv(4*omega)/N)

where G(1,N) is the quadratic Gauss sum.  With these constants the map is an
ordinary (non-projective) representation; arbitrary elements are reached
through `sl2.decompose` and the result is independent of the word chosen.
W(t_d^c) is built both directly and as the composition
W(J) W(t_u^-c) W(t_s^-1) W(J), and the two are cross-checked in the tests
(this catches 2*omega vs 4*omega sign-convention bugs).
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from . import sl2
from .cyclic import dft_matrix, idft_matrix
from .fields import PrimeField, legendre
from .heisenberg import HeisenbergElement, schrodinger_matrix, schrodinger_of, sl2_automorphism
from .scalars import CycloField, gauss_sum_closed_form
from .sl2 import GeneratorWord, SL2Matrix, Token


@dataclass(frozen=True)
class WeilOperator:
    """A metaplectic operator together with its source element."""

    matrix: np.ndarray
    source: SL2Matrix
    omega: int

    def __matmul__(self, other):
        if isinstance(other, WeilOperator):
            return WeilOperator(
                self.matrix @ other.matrix, self.source * other.source, self.omega
            )
        return self.matrix @ np.asarray(other)

    def apply(self, f) -> np.ndarray:
        return self.matrix @ np.asarray(f, dtype=complex)

    def inverse(self) -> "WeilOperator":
        return WeilOperator(self.matrix.conj().T, self.source.inverse(), self.omega)

    def __array__(self, dtype=None):
        return np.asarray(self.matrix, dtype=dtype)


def _check_omega(omega: int, N: int) -> int:
    omega %= N
    if omega == 0:
        raise ValueError("the Weil representation requires omega != 0")
    return omega


def weil_generator(tok: Token, omega: int, N: int, exact: bool = False):
    """N x N matrix of a single generator token (see module docstring)."""
    omega = _check_omega(omega, N)
    kind, par = tok
    F = PrimeField(N)
    if exact:
        return _weil_generator_exact(tok, omega, N)
    k = np.arange(N)
    if kind == "s":
        a = par % N
        if a == 0:
            raise ValueError("t_s requires a != 0")
        W = np.zeros((N, N), dtype=complex)
        W[k, (a * k) % N] = legendre(a, N)
        return W
    if kind == "u":
        return np.diag(np.exp(2j * math.pi * ((par * k * k * omega) % N) / N))
    if kind == "J":
        l, kk = np.meshgrid(k, k, indexing="ij")
        WJ = (
            legendre(omega, N)
            * gauss_sum_closed_form(N)
            / N
            * np.exp(2j * math.pi * ((2 * omega * l * kk) % N) / N)
        )
        if par % 4 == 1:
            return WJ
        return np.linalg.matrix_power(WJ, par % 4)
    if kind == "d":
        phases = np.exp(-2j * math.pi * ((par * k * k * F.inv(4 * omega)) % N) / N)
        return idft_matrix(N) @ np.diag(phases) @ dft_matrix(N)
    raise ValueError(f"unknown token {tok!r}")


def _weil_generator_exact(tok: Token, omega: int, N: int):
    kind, par = tok
    F = PrimeField(N)
    C = CycloField(N)
    W = [[C.zero() for _ in range(N)] for _ in range(N)]
    if kind == "s":
        a = par % N
        sign = legendre(a, N)
        for k in range(N):
            W[k][a * k % N] = C.scalar(sign)
        return W
    if kind == "u":
        for k in range(N):
            W[k][k] = C.zeta(par * k * k * omega)
        return W
    if kind == "J":
        if par % 4 != 1:
            raise ValueError("exact backend builds J only; compose for powers")
        const = C.gauss_sum(1) * legendre(omega, N)
        for l in range(N):
            for k in range(N):
                W[l][k] = const * C.zeta(2 * omega * k * l) / N
        return W
    if kind == "d":
        # idft . diag . dft with exact roots of unity
        i4 = F.inv(4 * omega)
        for k in range(N):
            for h in range(N):
                acc = C.zero()
                for q in range(N):
                    acc = acc + C.zeta(-par * q * q * i4 - q * k + q * h)
                W[k][h] = acc / N
        return W
    raise ValueError(f"unknown token {tok!r}")


def weil_word(word: GeneratorWord, omega: int, N: int) -> np.ndarray:
    out = np.eye(N, dtype=complex)
    for tok in word:
        out = out @ weil_generator(tok, omega, N)
    return out


def weil(g: SL2Matrix, omega: int, exact: bool = False):
    """Weil operator of an arbitrary g, assembled along `sl2.decompose(g)`."""
    word = sl2.decompose(g)
    if exact:
        out = _exact_eye(g.N)
        for tok in word:
            out = _exact_matmul(out, weil_generator(tok, omega, g.N, exact=True), g.N)
        return out
    return WeilOperator(weil_word(word, omega, g.N), g, omega % g.N)


def weil_td_direct(c: int, omega: int, N: int, exact: bool = False):
    """The diagonal-in-Fourier form of W(t_d^c), from the Fourier phases."""
    return weil_generator(("d", c), omega, N, exact=exact)


def parity_operator(omega: int, N: int) -> np.ndarray:
    """(1/N) sum_k yhat_(-k*omega) t_x^k pushed through the Schrodinger map.

    The result is the pure index reversal f(k) -> f(-k).  Its square is the
    identity and it intertwines translations with a sign flip.  As a matrix it
    equals legendre(-1) * W(J^2); the two coincide exactly when N = 1 mod 4.
    """
    omega = _check_omega(omega, N)
    P = np.zeros((N, N), dtype=complex)
    for k in range(N):
        Uxk = schrodinger_matrix(k, 0, 0, omega, N)
        for n in range(N):
            coeff = np.exp(-2j * math.pi * ((-k * omega) % N) * n / N)
            P += coeff * schrodinger_matrix(0, n, 0, omega, N) @ Uxk
    return P / N


def intertwine_check(g: SL2Matrix, h: HeisenbergElement, omega: int) -> float:
    """Max-abs residual of W(g) U(h) W(g)^(-1) = U(g h g^(-1))."""
    W = weil(g, omega)
    U = schrodinger_of(h, omega)
    Uexp = schrodinger_of(sl2_automorphism(g, h), omega)
    return float(np.max(np.abs(W.matrix @ U @ W.matrix.conj().T - Uexp)))


# -- helpers for exact list-of-list matrices --------------------------------

def _exact_eye(N: int):
    C = CycloField(N)
    return [[C.one() if i == j else C.zero() for j in range(N)] for i in range(N)]


def _exact_matmul(A, B, N: int):
    C = CycloField(N)
    out = [[C.zero() for _ in range(N)] for _ in range(N)]
    for i in range(N):
        for k in range(N):
            a = A[i][k]
            if a.is_zero():
                continue
            for j in range(N):
                out[i][j] = out[i][j] + a * B[k][j]
    return out


def exact_to_complex(A) -> np.ndarray:
    return np.array([[x.to_complex() for x in row] for row in A])
