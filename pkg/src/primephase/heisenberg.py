"""The Heisenberg group H_1(F_N), its Schrodinger representation, and the
SL(2, F_N) automorphism action.

Two parametrizations are carried side by side:

* (lambda, mu, kappa) with multiplication
      (l, m, k)(l', m', k') = (l + l', m + m', k + k' + l*m' - m*l');
* the generator form t_x^r t_y^s t_z^t = (r, s, t + r*s).

The Schrodinger representation with nonzero central character omega acts on
C^N by

    [U(r, s, t) f](k) = exp(2*pi*i*(omega*t + s*nu - 2*omega*k*s
                                     + 2*omega*r*s)/N) * f(k - r)

with nu = 0 throughout the construction (general nu is accepted for the
homomorphism test only).  This is a genuine homomorphism, with no cocycle.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import FieldError, is_odd_prime
from .scalars import CycloField
from .sl2 import SL2Matrix


@dataclass(frozen=True)
class HeisenbergElement:
    lam: int
    mu: int
    kappa: int
    N: int

    def __post_init__(self):
        if not is_odd_prime(self.N):
            raise FieldError(f"modulus must be an odd prime, got {self.N}")
        object.__setattr__(self, "lam", self.lam % self.N)
        object.__setattr__(self, "mu", self.mu % self.N)
        object.__setattr__(self, "kappa", self.kappa % self.N)

    @classmethod
    def from_generators(cls, r: int, s: int, t: int, N: int) -> "HeisenbergElement":
        """t_x^r t_y^s t_z^t = (r, s, t + r*s)."""
        return cls(r, s, t + r * s, N)

    def generator_form(self) -> tuple[int, int, int]:
        """(r, s, t) with self = t_x^r t_y^s t_z^t."""
        return self.lam, self.mu, (self.kappa - self.lam * self.mu) % self.N

    def __mul__(self, other: "HeisenbergElement") -> "HeisenbergElement":
        if self.N != other.N:
            raise ValueError("modulus mismatch")
        return HeisenbergElement(
            self.lam + other.lam,
            self.mu + other.mu,
            self.kappa + other.kappa + self.lam * other.mu - self.mu * other.lam,
            self.N,
        )

    def inverse(self) -> "HeisenbergElement":
        return HeisenbergElement(-self.lam, -self.mu, -self.kappa, self.N)

    @classmethod
    def identity(cls, N: int) -> "HeisenbergElement":
        return cls(0, 0, 0, N)

    def matrix4(self) -> np.ndarray:
        """Embedding as a 4x4 matrix over F_N."""
        l, m, k = self.lam, self.mu, self.kappa
        M = np.array(
            [[1, 0, 0, m], [l, 1, m, k], [0, 0, 1, -l], [0, 0, 0, 1]], dtype=np.int64
        )
        return M % self.N


def hmul(x: HeisenbergElement, y: HeisenbergElement) -> HeisenbergElement:
    return x * y


def t_x(r: int, N: int) -> HeisenbergElement:
    return HeisenbergElement(r, 0, 0, N)


def t_y(s: int, N: int) -> HeisenbergElement:
    return HeisenbergElement(0, s, 0, N)


def t_z(t: int, N: int) -> HeisenbergElement:
    return HeisenbergElement(0, 0, t, N)


def sl2_automorphism(g: SL2Matrix, h: HeisenbergElement) -> HeisenbergElement:
    """Conjugation h -> g h g^(-1), which fixes the center pointwise.

    In (lambda, mu, kappa) coordinates the row vector (lambda, mu) is
    multiplied by g^(-1) on the right and kappa is untouched; the displayed
    generator formulas (e.g. J t_x^r t_y^s t_z^t J^(-1) = t_x^s t_y^(-r)
    t_z^(t+2rs)) are recovered exactly.
    """
    if g.N != h.N:
        raise ValueError("modulus mismatch")
    gi = g.inverse()
    lam = h.lam * gi.a + h.mu * gi.c
    mu = h.lam * gi.b + h.mu * gi.d
    return HeisenbergElement(lam, mu, h.kappa, h.N)


def schrodinger_matrix(
    r: int, s: int, t: int, omega: int, N: int, nu: int = 0, exact: bool = False
):
    """Unitary N x N image of t_x^r t_y^s t_z^t under the central character omega."""
    if omega % N == 0:
        raise ValueError("omega = 0 does not act faithfully on the center")
    r, s, t, nu = r % N, s % N, t % N, nu % N
    if exact:
        F = CycloField(N)
        U = [[F.zero() for _ in range(N)] for _ in range(N)]
        for k in range(N):
            phase = F.zeta(omega * t + s * nu - 2 * omega * k * s + 2 * omega * r * s)
            U[k][(k - r) % N] = phase
        return U
    k = np.arange(N)
    phases = np.exp(
        2j * math.pi * ((omega * t + s * nu - 2 * omega * k * s + 2 * omega * r * s) % N) / N
    )
    U = np.zeros((N, N), dtype=complex)
    U[k, (k - r) % N] = phases
    return U


def schrodinger_of(h: HeisenbergElement, omega: int, nu: int = 0, exact: bool = False):
    r, s, t = h.generator_form()
    return schrodinger_matrix(r, s, t, omega, h.N, nu=nu, exact=exact)


def commutant_dimension(omega: int, N: int) -> int:
    """Dimension of the space of matrices commuting with the whole image.

    Equals 1 exactly when the representation is irreducible (it suffices to
    commute with the images of the generators t_x and t_y).  Guarded to
    N <= 7; the linear system has size 2*N^2 x N^2.
    """
    if N > 7:
        raise ValueError("commutant computation guarded to N <= 7")
    Ux = schrodinger_matrix(1, 0, 0, omega, N)
    Uy = schrodinger_matrix(0, 1, 0, omega, N)
    eye = np.eye(N)
    rows = [
        np.kron(Ux, eye) - np.kron(eye, Ux.T),
        np.kron(Uy, eye) - np.kron(eye, Uy.T),
    ]
    A = np.vstack(rows)
    svals = np.linalg.svd(A, compute_uv=False)
    return int(np.sum(svals < 1e-9))


def random_element(rng, N: int) -> HeisenbergElement:
    return HeisenbergElement(
        int(rng.integers(N)), int(rng.integers(N)), int(rng.integers(N)), N
    )
