"""SL(2, F_N): the generator set J, t_s^a, t_u^b, t_d^c and word decomposition.

    J = [[0, 1], [-1, 0]]     t_s^a = [[a, 0], [0, 1/a]]   (a != 0)
    t_u^b = [[1, b], [0, 1]]  t_d^c = [[1, 0], [c, 1]]

Every element decomposes into a short word in these generators; correctness
of a decomposition is always asserted by re-evaluating the word.
"""
from __future__ import annotations

from dataclasses import dataclass

from .fields import FieldError, PrimeField, is_odd_prime


@dataclass(frozen=True)
class SL2Matrix:
    a: int
    b: int
    c: int
    d: int
    N: int

    def __post_init__(self):
        if not is_odd_prime(self.N):
            raise FieldError(f"modulus must be an odd prime, got {self.N}")
        object.__setattr__(self, "a", self.a % self.N)
        object.__setattr__(self, "b", self.b % self.N)
        object.__setattr__(self, "c", self.c % self.N)
        object.__setattr__(self, "d", self.d % self.N)
        if (self.a * self.d - self.b * self.c) % self.N != 1:
            raise ValueError(f"determinant is not 1: {self}")

    def __mul__(self, other: "SL2Matrix") -> "SL2Matrix":
        if self.N != other.N:
            raise ValueError("modulus mismatch")
        return SL2Matrix(
            self.a * other.a + self.b * other.c,
            self.a * other.b + self.b * other.d,
            self.c * other.a + self.d * other.c,
            self.c * other.b + self.d * other.d,
            self.N,
        )

    def inverse(self) -> "SL2Matrix":
        return SL2Matrix(self.d, -self.b, -self.c, self.a, self.N)

    def transpose(self) -> "SL2Matrix":
        return SL2Matrix(self.a, self.c, self.b, self.d, self.N)

    def __pow__(self, n: int) -> "SL2Matrix":
        base = self if n >= 0 else self.inverse()
        n = abs(n)
        out = identity(self.N)
        while n:
            if n & 1:
                out = out * base
            base = base * base
            n >>= 1
        return out

    def rows(self) -> tuple[tuple[int, int], tuple[int, int]]:
        return ((self.a, self.b), (self.c, self.d))


def identity(N: int) -> SL2Matrix:
    return SL2Matrix(1, 0, 0, 1, N)


def J(N: int) -> SL2Matrix:
    return SL2Matrix(0, 1, -1, 0, N)


def t_s(a: int, N: int) -> SL2Matrix:
    if a % N == 0:
        raise ValueError("t_s requires a != 0")
    return SL2Matrix(a, 0, 0, PrimeField(N).inv(a), N)


def t_u(b: int, N: int) -> SL2Matrix:
    return SL2Matrix(1, b, 0, 1, N)


def t_d(c: int, N: int) -> SL2Matrix:
    return SL2Matrix(1, 0, c, 1, N)


# A word token is (kind, parameter) with kind in {"J", "s", "u", "d"};
# ("J", -1) denotes J^-1 = J^3.
Token = tuple[str, int]


@dataclass(frozen=True)
class GeneratorWord:
    tokens: tuple[Token, ...]
    N: int

    def evaluate(self) -> SL2Matrix:
        out = identity(self.N)
        for tok in self.tokens:
            out = out * token_matrix(tok, self.N)
        return out

    def __iter__(self):
        return iter(self.tokens)


def token_matrix(tok: Token, N: int) -> SL2Matrix:
    kind, par = tok
    if kind == "J":
        return J(N) if par == 1 else J(N) ** (par % 4)
    if kind == "s":
        return t_s(par, N)
    if kind == "u":
        return t_u(par, N)
    if kind == "d":
        return t_d(par, N)
    raise ValueError(f"unknown token {tok!r}")


def decompose(g: SL2Matrix) -> GeneratorWord:
    """Write g as a word in the generators.

    c = 0:  g = t_s^a . t_u^(b/a)
    c != 0: g = t_u^(a/c) . J . t_s^(-c) . t_u^(d/c)

    The returned word is re-evaluated and checked against g.
    """
    F = PrimeField(g.N)
    if g.c == 0:
        toks: tuple[Token, ...] = (("s", g.a), ("u", F.div(g.b, g.a)))
    else:
        toks = (
            ("u", F.div(g.a, g.c)),
            ("J", 1),
            ("s", (-g.c) % g.N),
            ("u", F.div(g.d, g.c)),
        )
    word = GeneratorWord(toks, g.N)
    if word.evaluate() != g:
        raise AssertionError(f"decomposition failed for {g}")
    return word


def group_order(N: int) -> int:
    return N * (N * N - 1)


def enumerate_sl2(N: int) -> list[SL2Matrix]:
    """All of SL(2, F_N) by brute force (guarded to N <= 13)."""
    if N > 13:
        raise ValueError("enumeration guarded to N <= 13")
    F = PrimeField(N)
    out = []
    for a in range(N):
        for b in range(N):
            if a == 0 and b == 0:
                continue
            for c in range(N):
                if a != 0:
                    # d determined by the determinant
                    out.append(SL2Matrix(a, b, c, F.div(1 + b * c, a), N))
                elif (-b * c) % N == 1:
                    for d in range(N):
                        out.append(SL2Matrix(a, b, c, d, N))
    return out


def random_element(rng, N: int) -> SL2Matrix:
    """Uniformly random element: random nonzero top row, then a uniform bottom row."""
    F = PrimeField(N)
    while True:
        a, b = int(rng.integers(N)), int(rng.integers(N))
        if a or b:
            break
    if a != 0:
        c = int(rng.integers(N))
        return SL2Matrix(a, b, c, F.div(1 + b * c, a), N)
    d = int(rng.integers(N))
    return SL2Matrix(a, b, F.div(-1, b), d, N)
