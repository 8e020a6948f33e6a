"""One-parameter evolutions: the free particle as powers of t_d, and the
finite harmonic oscillator as the norm-one subgroup of F_{N^2}.

The oscillator step is the rotation-like matrix t_r = [[a, b*delta], [b, a]]
with a^2 - delta*b^2 = 1 and delta a nonsquare; mapping t_r to a + b*sqrt(delta)
identifies <t_r> with the norm-one subgroup of F_{N^2}, cyclic of order N + 1.
The field-valued trig pair c(n), s(n) are the components of
(a - b*sqrt(delta))^n and satisfy c^2 - delta*s^2 = 1 together with the usual
addition laws.
"""
from __future__ import annotations

from dataclasses import dataclass

import numpy as np

from .fields import PrimeField, QuadExt
from .sl2 import SL2Matrix, t_d
from .metaplectic import WeilOperator, weil
from .wigner import MomentVector, StateVector, moments


def free_particle(t: int, m: int, omega: int, N: int) -> WeilOperator:
    """Evolution weil(t_d^(-t/m)): an N-periodic one-parameter unitary group,
    diagonal in Fourier space."""
    F = PrimeField(N)
    if m % N == 0:
        raise ValueError("mass must be nonzero in F_N")
    return weil(t_d(F.div(-t, m), N), omega)


@dataclass(frozen=True)
class OscillatorGenerator:
    """Norm-one pair (a, b) of full multiplicative order N + 1."""

    a: int
    b: int
    delta: int
    N: int
    order: int

    def matrix(self) -> SL2Matrix:
        return SL2Matrix(self.a, self.b * self.delta, self.b, self.a, self.N)

    def quadext_element(self):
        ext = QuadExt(PrimeField(self.N), self.delta)
        return ext.elem(self.a, (-self.b) % self.N)


def oscillator_generator(N: int, delta: int | None = None) -> OscillatorGenerator:
    """Search the N + 1 norm-one pairs for one of full order, preferring the
    lexicographically smallest (a, b) with b != 0."""
    F = PrimeField(N)
    ext = QuadExt(F, delta)
    for x in sorted(ext.norm_one_elements(), key=lambda e: (e.a, e.b)):
        if x.b == 0:
            continue
        order = x.multiplicative_order()
        if order == N + 1:
            return OscillatorGenerator(x.a, x.b, ext.delta, N, order)
    raise AssertionError("norm-one subgroup is cyclic; a generator must exist")


def discrete_trig(gen: OscillatorGenerator, n: int) -> tuple[int, int]:
    """Field-valued (c(n), s(n)): components of lambda_+^n = (a - b*sqrt(delta))^n.

    c(n) = (lambda_+^n + lambda_+^(-n))/2 and
    s(n) = (lambda_+^n - lambda_+^(-n))/(2*sqrt(delta)) both land in F_N and
    satisfy c(n)^2 - delta*s(n)^2 = 1.
    """
    x = gen.quadext_element() ** n
    return x.a, x.b


def rotation_matrix(gen: OscillatorGenerator, n: int) -> np.ndarray:
    """[[c(n), s(n)], [s(n)*delta, c(n)]] over F_N, the first-moment evolution."""
    c, s = discrete_trig(gen, n)
    return np.array([[c, s], [s * gen.delta % gen.N, c]], dtype=np.int64)


@dataclass
class Trajectory:
    states: list[StateVector]
    moment_orders: tuple[int, ...]
    moment_track: list[dict[int, MomentVector]]

    @property
    def steps(self) -> int:
        return len(self.states) - 1


def evolve_oscillator(
    f: StateVector, gen: OscillatorGenerator, steps: int, moment_orders=(1, 2)
) -> Trajectory:
    """Apply weil(t_r) repeatedly, recording the state and its moments per step.

    weil(t_r)^(N+1) is the identity, so the trajectory closes after N + 1 steps.
    """
    W = weil(gen.matrix(), f.omega)
    states = [f]
    track = [{h: moments(f, h) for h in moment_orders}]
    cur = f
    for _ in range(steps):
        cur = cur.apply(W)
        states.append(cur)
        track.append({h: moments(cur, h) for h in moment_orders})
    return Trajectory(states, tuple(moment_orders), track)


def evolve_free(
    f: StateVector, m: int, steps: int, moment_orders=(1, 2)
) -> Trajectory:
    """Sweep t = 0..steps of the free-particle family at mass m."""
    states = [f]
    track = [{h: moments(f, h) for h in moment_orders}]
    for t in range(1, steps + 1):
        cur = f.apply(free_particle(t, m, f.omega, f.N))
        states.append(cur)
        track.append({h: moments(cur, h) for h in moment_orders})
    return Trajectory(states, tuple(moment_orders), track)
