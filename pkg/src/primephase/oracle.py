"""Brute-force group-algebra model of the Jacobi group SL(2, F_N) x| H_1(F_N).

Everything here is literal.  Group elements carry semidirect-product
coordinates (g; lambda, mu, kappa), multiplied by the law
(g1, h1)(g2, h2) = (g1 g2, h1 * (g1 h2 g1^-1)) and cross-checked against the
4x4 matrix model.  Algebra elements are sparse coefficient maps over the
group, convolved literally, and the ideal generator

    I = yhat_0 zhat_omega shat_minus uhat_0 xhat_0 (1 + alpha J) dhat_0,
    alpha = 1 / (legendre(omega) G(1, N)),

is computed term by term.  The left translates t_x^k I form an N-dimensional
basis closed under the whole group; expanding the left action of a generator
in this basis must reproduce the Schrodinger/Weil matrices column by column,
which is what `verify_generator_action` checks.  In the float backend the
expansion coefficients are solved for (pivot rows at the translates of a
maximal-magnitude support point, least-squares fallback); in the exact
cyclotomic backend the expansion identity is verified literally, so a passing
residual is exactly zero.

The doubled (tensor-square) algebra is handled in the plus/minus sector
coordinates: a coefficient of x (x) y is a pair (u, v) with u the Hermitian
component and v the other one, multiplied componentwise.  Checks that need
I (x) I enumerate the full group and run at N = 3 only; the translation
commutator checks live in the Heisenberg-pair subalgebra and run at N <= 5.

Size guard: N in {3, 5} (the group has N^4 (N^2 - 1) elements).
"""
from __future__ import annotations

import math
from dataclasses import dataclass
from fractions import Fraction

import numpy as np

from . import sl2 as sl2mod
from .fields import PrimeField, legendre
from .heisenberg import HeisenbergElement, schrodinger_matrix, sl2_automorphism
from .scalars import CycloField, zeta
from .sl2 import SL2Matrix
from .metaplectic import exact_to_complex, weil_generator


@dataclass(frozen=True)
class JacobiElement:
    """Element h(lambda, mu, kappa) . g of the semidirect product."""

    g: SL2Matrix
    lam: int
    mu: int
    kappa: int

    def __post_init__(self):
        N = self.g.N
        object.__setattr__(self, "lam", self.lam % N)
        object.__setattr__(self, "mu", self.mu % N)
        object.__setattr__(self, "kappa", self.kappa % N)

    @property
    def N(self) -> int:
        return self.g.N

    def heisenberg_part(self) -> HeisenbergElement:
        return HeisenbergElement(self.lam, self.mu, self.kappa, self.N)

    def __mul__(self, other: "JacobiElement") -> "JacobiElement":
        if self.N != other.N:
            raise ValueError("modulus mismatch")
        h = self.heisenberg_part() * sl2_automorphism(self.g, other.heisenberg_part())
        return JacobiElement(self.g * other.g, h.lam, h.mu, h.kappa)

    def inverse(self) -> "JacobiElement":
        gi = self.g.inverse()
        h = sl2_automorphism(gi, self.heisenberg_part().inverse())
        return JacobiElement(gi, h.lam, h.mu, h.kappa)

    def matrix4(self) -> np.ndarray:
        N = self.N
        a, b, c, d = self.g.a, self.g.b, self.g.c, self.g.d
        l, m, k = self.lam, self.mu, self.kappa
        M = np.array(
            [
                [a, 0, b, m],
                [l * a + m * c, 1, l * b + m * d, k],
                [c, 0, d, -l],
                [0, 0, 0, 1],
            ],
            dtype=np.int64,
        )
        return M % N

    @classmethod
    def identity(cls, N: int) -> "JacobiElement":
        return cls(sl2mod.identity(N), 0, 0, 0)

    @classmethod
    def from_heisenberg(cls, h: HeisenbergElement) -> "JacobiElement":
        return cls(sl2mod.identity(h.N), h.lam, h.mu, h.kappa)

    @classmethod
    def from_sl2(cls, g: SL2Matrix) -> "JacobiElement":
        return cls(g, 0, 0, 0)

    @classmethod
    def from_generators(cls, r: int, s: int, t: int, N: int) -> "JacobiElement":
        return cls.from_heisenberg(HeisenbergElement.from_generators(r, s, t, N))


def _check_size(N: int):
    if N not in (3, 5):
        raise ValueError("oracle guarded to N in {3, 5}")


class AlgebraElement:
    """Sparse coefficient map over Jacobi group elements (float or exact)."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        self.terms: dict[JacobiElement, object] = dict(terms or {})

    @classmethod
    def from_element(cls, x: JacobiElement, coeff=1.0) -> "AlgebraElement":
        return cls(x.N, {x: coeff})

    def support(self) -> int:
        return len(self.terms)

    def coeff(self, x: JacobiElement):
        return self.terms.get(x, 0.0)

    def __add__(self, other: "AlgebraElement") -> "AlgebraElement":
        out = dict(self.terms)
        for x, c in other.terms.items():
            out[x] = out.get(x, 0) + c if x in out else c
        return AlgebraElement(self.N, out)

    def scale(self, s) -> "AlgebraElement":
        return AlgebraElement(self.N, {x: c * s for x, c in self.terms.items()})

    def __sub__(self, other: "AlgebraElement") -> "AlgebraElement":
        return self + other.scale(-1)

    def __mul__(self, other: "AlgebraElement") -> "AlgebraElement":
        if self.N != other.N:
            raise ValueError("modulus mismatch")
        out: dict[JacobiElement, object] = {}
        for x, cx in self.terms.items():
            for y, cy in other.terms.items():
                z = x * y
                c = cx * cy
                out[z] = out[z] + c if z in out else c
        return AlgebraElement(self.N, out)

    def max_abs(self) -> float:
        return max((abs(c) for c in self.terms.values()), default=0.0)

    def is_zero_exact(self) -> bool:
        return all(c.is_zero() for c in self.terms.values())


def ga_mul(A: AlgebraElement, B: AlgebraElement) -> AlgebraElement:
    return A * B


def _char_sum(N: int, builder, coeff_fn) -> AlgebraElement:
    terms = {}
    for h in range(N):
        x = builder(h)
        terms[x] = terms.get(x, 0) + coeff_fn(h)
    return AlgebraElement(N, terms)


def yhat(nu: int, N: int, exact: bool = False) -> AlgebraElement:
    C = CycloField(N) if exact else None
    coeff = (lambda n: C.zeta(-nu * n)) if exact else (lambda n: zeta(-nu * n, N))
    return _char_sum(N, lambda n: JacobiElement.from_generators(0, n, 0, N), coeff)


def zhat(omega: int, N: int, exact: bool = False) -> AlgebraElement:
    C = CycloField(N) if exact else None
    coeff = (lambda h: C.zeta(-omega * h)) if exact else (lambda h: zeta(-omega * h, N))
    return _char_sum(N, lambda h: JacobiElement.from_generators(0, 0, h, N), coeff)


def xhat(q: int, N: int, exact: bool = False) -> AlgebraElement:
    C = CycloField(N) if exact else None
    coeff = (lambda h: C.zeta(-q * h)) if exact else (lambda h: zeta(-q * h, N))
    return _char_sum(N, lambda h: JacobiElement.from_generators(h, 0, 0, N), coeff)


def shat_minus(N: int, exact: bool = False) -> AlgebraElement:
    C = CycloField(N) if exact else None
    terms = {}
    for m in range(1, N):
        sign = legendre(m, N)
        x = JacobiElement.from_sl2(sl2mod.t_s(m, N))
        terms[x] = C.scalar(sign) if exact else complex(sign)
    return AlgebraElement(N, terms)


def uhat0(N: int, exact: bool = False) -> AlgebraElement:
    C = CycloField(N) if exact else None
    one = C.one() if exact else 1.0
    return AlgebraElement(
        N, {JacobiElement.from_sl2(sl2mod.t_u(k, N)): one for k in range(N)}
    )


def dhat0(N: int, exact: bool = False) -> AlgebraElement:
    C = CycloField(N) if exact else None
    one = C.one() if exact else 1.0
    return AlgebraElement(
        N, {JacobiElement.from_sl2(sl2mod.t_d(l, N)): one for l in range(N)}
    )


def build_ideal(omega: int, N: int, exact: bool = False) -> AlgebraElement:
    """The literal product yhat_0 zhat_omega shat_- uhat_0 xhat_0 (1 + alpha J) dhat_0."""
    _check_size(N)
    omega %= N
    if omega == 0:
        raise ValueError("omega must be nonzero")
    if exact:
        C = CycloField(N)
        alpha = C.gauss_sum_inverse() * legendre(omega, N)
        one = C.one()
    else:
        from .scalars import gauss_sum_closed_form

        alpha = 1.0 / (legendre(omega, N) * gauss_sum_closed_form(N))
        one = 1.0
    j_term = AlgebraElement(
        N,
        {
            JacobiElement.identity(N): one,
            JacobiElement.from_sl2(sl2mod.J(N)): alpha,
        },
    )
    out = yhat(0, N, exact)
    for factor in (
        zhat(omega, N, exact),
        shat_minus(N, exact),
        uhat0(N, exact),
        xhat(0, N, exact),
        j_term,
        dhat0(N, exact),
    ):
        out = out * factor
    return out


def translate_basis(ideal: AlgebraElement, N: int, exact: bool = False) -> list[AlgebraElement]:
    """The representation basis t_x^k I, k = 0..N-1."""
    one = CycloField(N).one() if exact else 1.0
    return [
        AlgebraElement.from_element(JacobiElement.from_generators(k, 0, 0, N), one)
        * ideal
        for k in range(N)
    ]


def expand_in_basis(
    target: AlgebraElement, basis: list[AlgebraElement]
) -> tuple[np.ndarray, float]:
    """Coefficients c with target = sum_j c_j basis_j, plus the full residual.

    Pivots on the translates of a maximal-magnitude support point of basis[0];
    falls back to least squares over the whole support if the pivot system is
    singular.
    """
    N = target.N

    def full_residual(coeffs) -> float:
        recon: dict[JacobiElement, complex] = {}
        for c, b in zip(coeffs, basis):
            for x, v in b.terms.items():
                recon[x] = recon.get(x, 0.0) + c * complex(v)
        keys = set(recon) | set(target.terms)
        return max(abs(recon.get(x, 0.0) - complex(target.coeff(x))) for x in keys)

    def lstsq_solution():
        support = sorted(
            set(target.terms) | {x for b in basis for x in b.terms},
            key=lambda x: (x.g.a, x.g.b, x.g.c, x.g.d, x.lam, x.mu, x.kappa),
        )
        A = np.array([[complex(b.coeff(x)) for b in basis] for x in support])
        bb = np.array([complex(target.coeff(x)) for x in support])
        return np.linalg.lstsq(A, bb, rcond=None)[0]

    pivot = max(basis[0].terms, key=lambda x: abs(basis[0].terms[x]))
    rows = [JacobiElement.from_generators(i, 0, 0, N) * pivot for i in range(N)]
    S = np.array([[complex(b.coeff(r)) for b in basis] for r in rows])
    rhs = np.array([complex(target.coeff(r)) for r in rows])
    try:
        coeffs = np.linalg.solve(S, rhs)
        residual = full_residual(coeffs)
    except np.linalg.LinAlgError:
        residual = math.inf
    if residual > 1e-6:
        coeffs = lstsq_solution()
        residual = full_residual(coeffs)
    return coeffs, float(residual)


def _expected_matrix(tok, omega: int, N: int, exact: bool):
    if tok[0] == "h":
        r, s, t = tok[1]
        return schrodinger_matrix(r, s, t, omega, N, exact=exact)
    return weil_generator(tok, omega, N, exact=exact)


def _token_element(tok, N: int) -> JacobiElement:
    if tok[0] == "h":
        r, s, t = tok[1]
        return JacobiElement.from_generators(r, s, t, N)
    return JacobiElement.from_sl2(sl2mod.token_matrix(tok, N))


def verify_generator_action(
    tok, omega: int, N: int, exact: bool = False, ideal: AlgebraElement | None = None
) -> float:
    """Max deviation of the group-algebra action on {t_x^k I} from the
    Schrodinger/Weil matrix of `tok` (("s", a), ("u", b), ("J", 1), ("d", c),
    or ("h", (r, s, t)))."""
    _check_size(N)
    if ideal is None:
        ideal = build_ideal(omega, N, exact=exact)
    basis = translate_basis(ideal, N, exact=exact)
    expected = _expected_matrix(tok, omega, N, exact)
    lhs_elem = AlgebraElement.from_element(
        _token_element(tok, N), CycloField(N).one() if exact else 1.0
    )
    worst = 0.0
    for k in range(N):
        target = lhs_elem * basis[k]
        if exact:
            recon = AlgebraElement(N)
            for j in range(N):
                recon = recon + basis[j].scale(expected[j][k])
            diff = target - recon
            if not diff.is_zero_exact():
                worst = max(
                    worst, max(abs(c.to_complex()) for c in diff.terms.values())
                )
        else:
            coeffs, resid = expand_in_basis(target, basis)
            worst = max(worst, resid, float(np.max(np.abs(coeffs - expected[:, k]))))
    return worst


def basis_rank(omega: int, N: int) -> int:
    """Rank of the t_x^k I coefficient vectors (should be N)."""
    ideal = build_ideal(omega, N)
    basis = translate_basis(ideal, N)
    support = sorted(
        {x for b in basis for x in b.terms},
        key=lambda x: (x.g.a, x.g.b, x.g.c, x.g.d, x.lam, x.mu, x.kappa),
    )
    A = np.array([[complex(b.coeff(x)) for b in basis] for x in support])
    return int(np.linalg.matrix_rank(A, tol=1e-8))


# ---------------------------------------------------------------------------
# doubled (tensor square) algebra
# ---------------------------------------------------------------------------
#
# Coefficients of x (x) y are pairs (plus, minus): the components on the two
# orthogonal idempotents cut out by E = i (x) i.  A scalar z attached to the
# right tensor factor multiplies both components by z; a scalar attached to
# the left factor multiplies the plus component by conj(z) and the minus
# component by z; E itself is (1, -1).


class DoubledElement:
    """Sparse map over pairs of Heisenberg elements with (plus, minus) values."""

    __slots__ = ("N", "terms")

    def __init__(self, N: int, terms=None):
        self.N = N
        self.terms: dict[tuple, tuple] = dict(terms or {})

    @classmethod
    def outer(cls, left: dict, right: dict, N: int) -> "DoubledElement":
        """(sum c_x x) (x) (sum d_y y) with complex coefficient dicts."""
        terms = {}
        for x, cx in left.items():
            for y, dy in right.items():
                terms[(x, y)] = (np.conj(cx) * dy, cx * dy)
        return cls(N, terms)

    def left_mul_pair(self, u: HeisenbergElement, v: HeisenbergElement) -> "DoubledElement":
        out = {}
        for (x, y), (p, m) in self.terms.items():
            out[(u * x, v * y)] = (p, m)
        return DoubledElement(self.N, out)

    def add_scaled(self, other: "DoubledElement", z: complex) -> "DoubledElement":
        out = dict(self.terms)
        for k, (p, m) in other.terms.items():
            p0, m0 = out.get(k, (0.0, 0.0))
            out[k] = (p0 + z * p, m0 + z * m)
        return DoubledElement(self.N, out)

    def scale(self, z: complex) -> "DoubledElement":
        return DoubledElement(
            self.N, {k: (z * p, z * m) for k, (p, m) in self.terms.items()}
        )

    def scale_sectors(self, zp: complex, zm: complex) -> "DoubledElement":
        return DoubledElement(
            self.N, {k: (zp * p, zm * m) for k, (p, m) in self.terms.items()}
        )

    def max_diff(self, other: "DoubledElement") -> tuple[float, float]:
        keys = set(self.terms) | set(other.terms)
        dp = dm = 0.0
        for k in keys:
            p1, m1 = self.terms.get(k, (0.0, 0.0))
            p2, m2 = other.terms.get(k, (0.0, 0.0))
            dp = max(dp, abs(p1 - p2))
            dm = max(dm, abs(m1 - m2))
        return dp, dm


def _zhat_pair(omega: int, N: int) -> DoubledElement:
    coeffs = {
        HeisenbergElement.from_generators(0, 0, h, N): zeta(-omega * h, N)
        for h in range(N)
    }
    return DoubledElement.outer(coeffs, coeffs, N)


def translation_commutator_check(omega: int, N: int) -> dict:
    """Residuals of the two commutator identities on zhat (x) zhat.

    T_x^r T_y^s T_x^-r T_y^-s picks up exp(2 pi i 2 r s omega (1 - E)/N):
    trivial on the plus sector, exp(4 pi i 2 r s omega / N) on the minus one.
    The barred version exchanges the sectors.
    """
    _check_size(N)
    Z = _zhat_pair(omega, N)
    tx = lambda r: HeisenbergElement.from_generators(r, 0, 0, N)
    ty = lambda s: HeisenbergElement.from_generators(0, s, 0, N)
    worst_plain = worst_barred = 0.0
    for r in range(N):
        for s in range(N):
            phase = zeta(4 * r * s * omega, N)
            lhs = (
                Z.left_mul_pair(ty(-s), ty(-s))
                .left_mul_pair(tx(-r), tx(-r))
                .left_mul_pair(ty(s), ty(s))
                .left_mul_pair(tx(r), tx(r))
            )
            worst_plain = max(worst_plain, *lhs.max_diff(Z.scale_sectors(1.0, phase)))
            lhsb = (
                Z.left_mul_pair(ty(s), ty(-s))
                .left_mul_pair(tx(-r), tx(-r))
                .left_mul_pair(ty(-s), ty(s))
                .left_mul_pair(tx(r), tx(r))
            )
            worst_barred = max(worst_barred, *lhsb.max_diff(Z.scale_sectors(phase, 1.0)))
    return {"comuTT": worst_plain, "comTTb": worst_barred}


class JacobiGroupTable:
    """Full enumeration of the Jacobi group with an element index (N = 3 scale)."""

    def __init__(self, N: int):
        if N != 3:
            raise ValueError("full-group enumeration guarded to N = 3")
        self.N = N
        self.elements: list[JacobiElement] = []
        for g in sl2mod.enumerate_sl2(N):
            for lam in range(N):
                for mu in range(N):
                    for kappa in range(N):
                        self.elements.append(JacobiElement(g, lam, mu, kappa))
        self.index = {x: i for i, x in enumerate(self.elements)}

    def vector_of(self, A: AlgebraElement) -> np.ndarray:
        v = np.zeros(len(self.elements), dtype=complex)
        for x, c in A.terms.items():
            v[self.index[x]] = complex(c)
        return v

    def inv_left_perm(self, u: JacobiElement) -> np.ndarray:
        """perm[i] = index(u^-1 * elements[i]) -- gathers the left action."""
        ui = u.inverse()
        return np.array([self.index[ui * x] for x in self.elements], dtype=np.intp)


def _pair_left_mul(table, Vp, Vm, u: JacobiElement, v: JacobiElement):
    pu, pv = table.inv_left_perm(u), table.inv_left_perm(v)
    return Vp[np.ix_(pu, pv)], Vm[np.ix_(pu, pv)]


def reexpression_check(omega: int, N: int = 3) -> float:
    """Residual of Tbar_x^r (I x I) = (P_+ Y_{-4 w r} + P_- Ybar_{-4 w r})
    Xbar_0 (I x I) / N, checked sector by sector for every r."""
    table = JacobiGroupTable(N)
    c = table.vector_of(build_ideal(omega, N))
    Vp, Vm = np.outer(np.conj(c), c), np.outer(c, c)

    jx = lambda k: JacobiElement.from_generators(k, 0, 0, N)
    jy = lambda h: JacobiElement.from_generators(0, h, 0, N)

    # Xbar_0 (I x I) = sum_h (t_x^-h (x) t_x^h) (I x I)
    Zp = np.zeros_like(Vp)
    Zm = np.zeros_like(Vm)
    for h in range(N):
        ap, am = _pair_left_mul(table, Vp, Vm, jx(-h), jx(h))
        Zp += ap
        Zm += am

    worst = 0.0
    for r in range(N):
        Ap, Am = _pair_left_mul(table, Vp, Vm, jx(-r), jx(r))
        p_target = (-4 * omega * r) % N
        Bp = np.zeros_like(Vp)
        Cm = np.zeros_like(Vm)
        for h in range(N):
            coeff = zeta(-p_target * h, N)
            yp, _ = _pair_left_mul(table, Zp, Zm, jy(h), jy(h))
            Bp += coeff * yp
            _, ym = _pair_left_mul(table, Zp, Zm, jy(-h), jy(h))
            Cm += coeff * ym
        worst = max(
            worst,
            float(np.max(np.abs(Ap - Bp / N))),
            float(np.max(np.abs(Am - Cm / N))),
        )
    return worst


def _factor_exact(m: int, h: int) -> bool:
    return (m == 0 and h == 0) or (m == 0 and h >= 1) or (m >= 1 and h == 0)


def test_function_identity_report(N: int, max_order: int = 2) -> list[dict]:
    """Both sides of the polynomial pairing identity, for both integer lifts.

    The left side is the convolution, evaluated at the origin of the group
    ring of the translation lattice, of sigma(r, s) = (-r)^m (-s)^n with the
    weighted eigenvector sum; it reduces to the four-fold exponential sum

        sum (-r)^m (-s)^n q^h p^k exp(2 pi i (r q + s p)/N).

    The right side is (N/(2 pi i))^(m+n) N^2 m! n! delta(m-h) delta(n-k).
    The identity factorizes; a factor is exact only in its delta cases
    (m = h = 0, or exactly one of the orders zero).  Diagonal cases with
    m = h >= 1 deviate at finite N and are reported, not asserted.  `lift`
    records which integer representative of -r was used: the literal negative
    integer or the canonical residue N - r.
    """
    phases = np.exp(2j * math.pi * np.outer(np.arange(N), np.arange(N)) / N)

    def x_factor(m: int, h: int, lift: str) -> complex:
        r = np.arange(N, dtype=float)
        neg = -r if lift == "negative" else (N - r) % N
        vals_r = neg ** m
        vals_q = np.arange(N, dtype=float) ** h
        return complex(vals_r @ phases @ vals_q)

    report = []
    for m in range(max_order + 1):
        for n in range(max_order + 1):
            for h in range(max_order + 1):
                for k in range(max_order + 1):
                    rhs = (
                        (N / (2j * math.pi)) ** (m + n)
                        * N ** 2
                        * math.factorial(m)
                        * math.factorial(n)
                        * (m == h)
                        * (n == k)
                    )
                    row = {"m": m, "n": n, "h": h, "k": k,
                           "rhs": rhs,
                           "exact_expected": _factor_exact(m, h) and _factor_exact(n, k)}
                    for lift in ("negative", "canonical"):
                        lhs = x_factor(m, h, lift) * x_factor(n, k, lift)
                        row[f"lhs_{lift}"] = lhs
                        row[f"residual_{lift}"] = abs(lhs - rhs)
                    report.append(row)
    return report


def doubled_checks(omega: int, N: int) -> dict:
    """Commutators, the reexpression identity (N = 3), and the polynomial
    pairing report, bundled for the CLI."""
    _check_size(N)
    out = dict(translation_commutator_check(omega, N))
    if N == 3:
        out["reexpTr/2"] = reexpression_check(omega, N)
    out["test_f_id"] = test_function_identity_report(N)
    return out
