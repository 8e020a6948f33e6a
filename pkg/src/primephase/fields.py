"""Arithmetic in the prime field F_N and its quadratic extension F_{N^2}.

Residues are canonical integers in [0, N).  Lifting to the symmetric range
[-(N-1)/2, (N-1)/2] is a separate explicit operation (`lift_symmetric`) used
only by the moment-prediction diagnostics.
"""
from __future__ import annotations


class FieldError(ValueError):
    """Raised for an invalid modulus or an undefined field operation."""


def is_odd_prime(n: int) -> bool:
    if n < 3 or n % 2 == 0:
        return False
    d = 3
    while d * d <= n:
        if n % d == 0:
            return False
        d += 2
    return True


def legendre(m: int, N: int) -> int:
    """Legendre symbol (m/N) by the Euler criterion.

    Returns +1 if m is a nonzero square mod N, -1 if m is a nonsquare,
    and 0 if m is divisible by N.
    """
    if not is_odd_prime(N):
        raise FieldError(f"modulus must be an odd prime, got {N}")
    m %= N
    if m == 0:
        return 0
    return 1 if pow(m, (N - 1) // 2, N) == 1 else -1


def lift_symmetric(a: int, N: int) -> int:
    """Integer representative of a mod N in [-(N-1)/2, (N-1)/2]."""
    a %= N
    return a if a <= (N - 1) // 2 else a - N


class PrimeField:
    """The field F_N for an odd prime N, operating on canonical residues."""

    __slots__ = ("N",)

    def __init__(self, N: int):
        if not is_odd_prime(N):
            raise FieldError(f"modulus must be an odd prime, got {N}")
        self.N = N

    def __repr__(self):
        return f"PrimeField({self.N})"

    def __eq__(self, other):
        return isinstance(other, PrimeField) and other.N == self.N

    def __hash__(self):
        return hash(("PrimeField", self.N))

    def elem(self, a: int) -> int:
        return a % self.N

    def inv(self, a: int) -> int:
        a %= self.N
        if a == 0:
            raise ZeroDivisionError(f"0 has no inverse mod {self.N}")
        return pow(a, self.N - 2, self.N)

    def div(self, a: int, b: int) -> int:
        return a * self.inv(b) % self.N

    def legendre(self, m: int) -> int:
        return legendre(m, self.N)

    def sqrt(self, a: int) -> int:
        """Smallest square root of a mod N, by exhaustive search (desk scale)."""
        a %= self.N
        if self.N >= 1 << 16:
            raise FieldError("exhaustive square root limited to N < 2**16")
        for r in range(self.N):
            if r * r % self.N == a:
                return r
        raise FieldError(f"{a} is not a square mod {self.N}")

    def nonsquare(self) -> int:
        """Smallest positive nonsquare mod N."""
        for d in range(2, self.N):
            if self.legendre(d) == -1:
                return d
        raise FieldError("unreachable: every odd prime field has a nonsquare")

    def lift_symmetric(self, a: int) -> int:
        return lift_symmetric(a, self.N)

    def squares(self) -> set[int]:
        return {k * k % self.N for k in range(1, self.N)}


def find_nonsquare(N: int) -> int:
    return PrimeField(N).nonsquare()


def ff_inv(a: int, N: int) -> int:
    return PrimeField(N).inv(a)


class QuadExt:
    """F_{N^2} presented as F_N(sqrt(delta)) for delta a fixed nonsquare."""

    __slots__ = ("field", "delta")

    def __init__(self, field: PrimeField, delta: int | None = None):
        if delta is None:
            delta = field.nonsquare()
        delta %= field.N
        if field.legendre(delta) != -1:
            raise FieldError(f"delta={delta} is a square mod {field.N}")
        self.field = field
        self.delta = delta

    def __repr__(self):
        return f"QuadExt(N={self.field.N}, delta={self.delta})"

    def elem(self, a: int, b: int = 0) -> "QuadExtElement":
        return QuadExtElement(self, a % self.field.N, b % self.field.N)

    def one(self) -> "QuadExtElement":
        return self.elem(1, 0)

    def norm_one_elements(self) -> list["QuadExtElement"]:
        """All a + b*sqrt(delta) with a^2 - delta*b^2 = 1 (there are N + 1)."""
        N, d = self.field.N, self.delta
        out = []
        for a in range(N):
            for b in range(N):
                if (a * a - d * b * b) % N == 1:
                    out.append(self.elem(a, b))
        return out


class QuadExtElement:
    """Element a + b*sqrt(delta) of F_{N^2}."""

    __slots__ = ("ext", "a", "b")

    def __init__(self, ext: QuadExt, a: int, b: int):
        self.ext = ext
        self.a = a
        self.b = b

    def __repr__(self):
        return f"({self.a} + {self.b}*sqrt({self.ext.delta}) mod {self.ext.field.N})"

    def __eq__(self, other):
        return (
            isinstance(other, QuadExtElement)
            and self.ext.field.N == other.ext.field.N
            and self.ext.delta == other.ext.delta
            and self.a == other.a
            and self.b == other.b
        )

    def __hash__(self):
        return hash((self.ext.field.N, self.ext.delta, self.a, self.b))

    def __mul__(self, other: "QuadExtElement") -> "QuadExtElement":
        N, d = self.ext.field.N, self.ext.delta
        a = (self.a * other.a + d * self.b * other.b) % N
        b = (self.a * other.b + self.b * other.a) % N
        return QuadExtElement(self.ext, a, b)

    def conj(self) -> "QuadExtElement":
        N = self.ext.field.N
        return QuadExtElement(self.ext, self.a, (-self.b) % N)

    def norm(self) -> int:
        N, d = self.ext.field.N, self.ext.delta
        return (self.a * self.a - d * self.b * self.b) % N

    def inverse(self) -> "QuadExtElement":
        n = self.norm()
        if n == 0:
            raise ZeroDivisionError("zero divisor in F_{N^2}")
        ninv = self.ext.field.inv(n)
        c = self.conj()
        return self.ext.elem(c.a * ninv, c.b * ninv)

    def __pow__(self, n: int) -> "QuadExtElement":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = self.ext.one()
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def multiplicative_order(self) -> int:
        x = self
        one = self.ext.one()
        for k in range(1, self.ext.field.N ** 2):
            if x == one:
                return k
            x = x * self
        raise FieldError("element is not invertible")


def quadext_pow(x: QuadExtElement, n: int) -> QuadExtElement:
    return x ** n
