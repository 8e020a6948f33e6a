"""Invariant moment subspaces: the representations rho_h over F_N, their
conserved bilinear forms b_h, and the quadratic invariants built from them.

rho_1(g) is the contragredient (g^(-1))^T acting on the column of first-order
moments (<k>, <D'>); rho_h is its h-th symmetric power in the monomial basis
(x1^h, x1^(h-1) x2, ..., x2^h), matching the coordinate order of
`wigner.moments`.  All of this is exact modular arithmetic.  The conserved
form is antidiagonal, B_h[j, h-j] = (-1)^j binom(h, j); b_2 and b_4 evaluate
on the moment vector to the Dodonov-Man'ko universal quantum invariants.

Moment prediction lifts the field entries of rho_h to the symmetric integer
range before acting on complex moments.  Exact equivariance cannot hold for
every component (moments are complex numbers, rho_h entries are residues), so
`predict_moments` is a diagnostic that reports the residual; only the order-0
total probability and the proven-exact components are asserted in the tests.
"""
from __future__ import annotations

import math
from dataclasses import dataclass

import numpy as np

from .fields import lift_symmetric
from .sl2 import SL2Matrix
from .metaplectic import weil
from .wigner import MomentVector, StateVector, moments


def momentum_map(g: SL2Matrix) -> SL2Matrix:
    """The 2x2 matrix (g^(-1))^T through which g x g acts on first moments."""
    return g.inverse().transpose()


def sym_power(M: SL2Matrix, h: int) -> np.ndarray:
    """h-th symmetric power of a 2x2 matrix over F_N, monomial basis.

    Row i holds the coefficients of (alpha*x1 + beta*x2)^(h-i)
    (gamma*x1 + delta*x2)^i on x1^(h-j) x2^j.
    """
    N = M.N
    (alpha, beta), (gamma, delta) = M.rows()
    out = np.zeros((h + 1, h + 1), dtype=np.int64)
    for i in range(h + 1):
        # expand the two binomials and convolve
        first = [
            math.comb(h - i, t) * pow(alpha, h - i - t, N) * pow(beta, t, N) % N
            for t in range(h - i + 1)
        ]
        second = [
            math.comb(i, t) * pow(gamma, i - t, N) * pow(delta, t, N) % N
            for t in range(i + 1)
        ]
        row = [0] * (h + 1)
        for t1, c1 in enumerate(first):
            for t2, c2 in enumerate(second):
                row[t1 + t2] = (row[t1 + t2] + c1 * c2) % N
        out[i] = row
    return out


def rho(h: int, g: SL2Matrix) -> np.ndarray:
    """(h+1) x (h+1) table over F_N of g x g acting on the order-h subspace."""
    if h < 0:
        raise ValueError("order must be non-negative")
    return sym_power(momentum_map(g), h)


def bform(h: int) -> np.ndarray:
    """Conserved antidiagonal form: B_h[j, h-j] = (-1)^j binom(h, j)."""
    if h < 1:
        raise ValueError("bilinear form defined for h >= 1")
    B = np.zeros((h + 1, h + 1), dtype=np.int64)
    for j in range(h + 1):
        B[j, h - j] = (-1) ** j * math.comb(h, j)
    return B


def dm_invariant(r: MomentVector) -> complex:
    """Quadratic invariant b_h(r, r) with integer coefficients, h in {2, 4}."""
    if r.order not in (2, 4):
        raise ValueError("universal invariants implemented for orders 2 and 4")
    B = bform(r.order).astype(complex)
    return complex(r.values @ B @ r.values)


def lift_matrix(M: np.ndarray, N: int) -> np.ndarray:
    """Entrywise symmetric-range integer lift of a table over F_N."""
    out = np.vectorize(lambda a: lift_symmetric(int(a), N))(M)
    return out.astype(np.int64)


@dataclass
class MomentPrediction:
    order: int
    predicted: np.ndarray
    measured: np.ndarray

    @property
    def residual(self) -> float:
        return float(np.max(np.abs(self.predicted - self.measured)))

    def to_json(self) -> dict:
        return {
            "order": self.order,
            "predicted": [[v.real, v.imag] for v in self.predicted],
            "measured": [[v.real, v.imag] for v in self.measured],
            "residual": self.residual,
        }


def predict_moments(h: int, g: SL2Matrix, f: StateVector) -> MomentPrediction:
    """rho_h(g) under the symmetric lift applied to moments(f), compared with
    the moments of the transformed state (diagnostic, not an assertion)."""
    r = moments(f, h)
    R = lift_matrix(rho(h, g), g.N).astype(complex)
    predicted = R @ r.values
    measured = moments(f.apply(weil(g, f.omega)), h).values
    return MomentPrediction(h, predicted, measured)
