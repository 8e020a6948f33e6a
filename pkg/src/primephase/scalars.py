"""Complex scalars behind the verification suite: roots of unity and Gauss sums.

Two interchangeable backends:

* float -- plain ``complex`` / numpy complex128 (the default everywhere);
* exact -- elements of the cyclotomic field Q(zeta_{4N}) with rational
  coefficients, which makes every root-of-unity identity decidable exactly.

Exact elements are stored non-canonically as length-4N coefficient sequences
over the powers of zeta_{4N}; equality is tested after reduction modulo the
4N-th cyclotomic polynomial.
"""
from __future__ import annotations

import cmath
import math
from fractions import Fraction
from functools import lru_cache

from .fields import is_odd_prime, legendre


def zeta(j: int, M: int) -> complex:
    """j-th power of the primitive M-th root of unity exp(2*pi*i/M)."""
    if M < 1:
        raise ValueError("order must be positive")
    return cmath.exp(2j * math.pi * (j % M) / M)


def gauss_sum(c: int, N: int) -> complex:
    """Quadratic Gauss sum sum_h exp(2*pi*i*c*h^2/N), by direct summation."""
    if c % N == 0:
        raise ValueError("Gauss sum degenerates to N for c = 0 mod N")
    return sum(zeta(c * h * h, N) for h in range(N))


def gauss_sum_closed_form(N: int) -> complex:
    """sqrt(N) for N = 1 mod 4, i*sqrt(N) for N = 3 mod 4."""
    if not is_odd_prime(N):
        raise ValueError(f"modulus must be an odd prime, got {N}")
    return math.sqrt(N) if N % 4 == 1 else 1j * math.sqrt(N)


# ---------------------------------------------------------------------------
# exact backend
# ---------------------------------------------------------------------------

@lru_cache(maxsize=None)
def cyclotomic_poly(M: int) -> tuple[int, ...]:
    """Coefficients (low to high) of the M-th cyclotomic polynomial."""
    # Phi_M = (x^M - 1) / prod of Phi_d over proper divisors d of M.
    num = [0] * (M + 1)
    num[0], num[M] = -1, 1
    for d in range(1, M):
        if M % d:
            continue
        num = _polydiv_exact(num, list(cyclotomic_poly(d)))
    return tuple(num)


def _polydiv_exact(num: list[int], den: list[int]) -> list[int]:
    """Exact division of integer polynomials (remainder must vanish)."""
    num = list(num)
    out = [0] * (len(num) - len(den) + 1)
    for i in range(len(out) - 1, -1, -1):
        out[i] = num[i + len(den) - 1] // den[-1]
        for j, dj in enumerate(den):
            num[i + j] -= out[i] * dj
    if any(num):
        raise ArithmeticError("inexact polynomial division")
    return out


class Cyclotomic:
    """Element of Q(zeta_M) with Fraction coefficients on zeta^0..zeta^(M-1)."""

    __slots__ = ("order", "co")

    def __init__(self, order: int, co):
        self.order = order
        self.co = tuple(Fraction(x) for x in co)
        if len(self.co) != order:
            raise ValueError("coefficient sequence must have length M")

    @classmethod
    def zero(cls, order: int) -> "Cyclotomic":
        return cls(order, [0] * order)

    @classmethod
    def from_rational(cls, q, order: int) -> "Cyclotomic":
        co = [Fraction(0)] * order
        co[0] = Fraction(q)
        return cls(order, co)

    @classmethod
    def root(cls, order: int, j: int) -> "Cyclotomic":
        co = [Fraction(0)] * order
        co[j % order] = Fraction(1)
        return cls(order, co)

    def _coerce(self, other):
        if isinstance(other, Cyclotomic):
            if other.order != self.order:
                raise ValueError("mixed cyclotomic orders")
            return other
        if isinstance(other, (int, Fraction)):
            return Cyclotomic.from_rational(other, self.order)
        return NotImplemented

    def __add__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.order, [a + b for a, b in zip(self.co, other.co)])

    __radd__ = __add__

    def __neg__(self):
        return Cyclotomic(self.order, [-a for a in self.co])

    def __sub__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return Cyclotomic(self.order, [a - b for a, b in zip(self.co, other.co)])

    def __rsub__(self, other):
        return (-self) + other

    def __mul__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.order, [a * q for a in self.co])
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        M = self.order
        out = [Fraction(0)] * M
        for i, a in enumerate(self.co):
            if not a:
                continue
            for j, b in enumerate(other.co):
                if b:
                    out[(i + j) % M] += a * b
        return Cyclotomic(M, out)

    __rmul__ = __mul__

    def __truediv__(self, other):
        if isinstance(other, (int, Fraction)):
            q = Fraction(other)
            return Cyclotomic(self.order, [a / q for a in self.co])
        return NotImplemented

    def conjugate(self) -> "Cyclotomic":
        M = self.order
        out = [Fraction(0)] * M
        for j, a in enumerate(self.co):
            out[(-j) % M] += a
        return Cyclotomic(M, out)

    def reduced(self) -> tuple[Fraction, ...]:
        """Coefficients on the standard basis zeta^0..zeta^(phi(M)-1)."""
        phi = list(cyclotomic_poly(self.order))
        deg = len(phi) - 1
        rem = list(self.co)
        for i in range(len(rem) - 1, deg - 1, -1):
            lead = rem[i]
            if lead:
                for j, pj in enumerate(phi):
                    rem[i - deg + j] -= lead * pj
        return tuple(rem[:deg])

    def is_zero(self) -> bool:
        return not any(self.reduced())

    def __eq__(self, other):
        other = self._coerce(other)
        if other is NotImplemented:
            return NotImplemented
        return (self - other).is_zero()

    __hash__ = None

    def __repr__(self):
        terms = [f"{a}*z^{j}" for j, a in enumerate(self.co) if a]
        return "Cyclo(" + (" + ".join(terms) or "0") + f"; M={self.order})"

    def to_complex(self) -> complex:
        return sum(
            float(a) * zeta(j, self.order) for j, a in enumerate(self.co) if a
        ) + 0j

    def __abs__(self) -> float:
        return abs(self.to_complex())


class CycloField:
    """Q(zeta_{4N}) for a fixed odd prime N: the exact scalar backend.

    The conductor 4N accommodates every scalar the construction needs: the
    N-th roots of unity, the imaginary unit, and the quadratic Gauss sum.
    """

    def __init__(self, N: int):
        if not is_odd_prime(N):
            raise ValueError(f"modulus must be an odd prime, got {N}")
        self.N = N
        self.M = 4 * N

    def zero(self) -> Cyclotomic:
        return Cyclotomic.zero(self.M)

    def one(self) -> Cyclotomic:
        return Cyclotomic.from_rational(1, self.M)

    def scalar(self, q) -> Cyclotomic:
        return Cyclotomic.from_rational(q, self.M)

    def i(self) -> Cyclotomic:
        return Cyclotomic.root(self.M, self.N)

    def zeta(self, j: int, M: int | None = None) -> Cyclotomic:
        """Exact j-th power of the primitive M-th root of unity (M | 4N)."""
        M = self.N if M is None else M
        if self.M % M:
            raise ValueError(f"order {M} does not divide the conductor {self.M}")
        return Cyclotomic.root(self.M, j * (self.M // M))

    def gauss_sum(self, c: int) -> Cyclotomic:
        if c % self.N == 0:
            raise ValueError("Gauss sum degenerates to N for c = 0 mod N")
        out = self.zero()
        for h in range(self.N):
            out = out + self.zeta(c * h * h)
        return out

    def gauss_sum_inverse(self) -> Cyclotomic:
        """1/G(1,N), using G * conj(G) = N."""
        return self.gauss_sum(1).conjugate() / self.N

    def legendre(self, m: int) -> int:
        return legendre(m, self.N)
