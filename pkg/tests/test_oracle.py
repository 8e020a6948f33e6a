import numpy as np
import pytest

from primephase import oracle as orc
from primephase.fields import legendre
from primephase.scalars import zeta
from primephase.sl2 import J, t_s
from primephase.sl2 import random_element as random_g


def algebra_max(A: orc.AlgebraElement) -> float:
    return max((abs(complex(c)) for c in A.terms.values()), default=0.0)


class TestJacobiElement:
    def test_multiplication_matches_matrix_model(self):
        rng = np.random.default_rng(60)
        for N in (3, 5):
            for _ in range(500):
                x = orc.JacobiElement(
                    random_g(rng, N), *(int(v) for v in rng.integers(N, size=3))
                )
                y = orc.JacobiElement(
                    random_g(rng, N), *(int(v) for v in rng.integers(N, size=3))
                )
                assert np.array_equal((x * y).matrix4(), x.matrix4() @ y.matrix4() % N)

    def test_inverse(self):
        rng = np.random.default_rng(61)
        N = 3
        e = orc.JacobiElement.identity(N)
        for _ in range(100):
            x = orc.JacobiElement(
                random_g(rng, N), *(int(v) for v in rng.integers(N, size=3))
            )
            assert x * x.inverse() == e
            assert x.inverse() * x == e

    def test_semidirect_embeddings(self):
        N = 5
        g = t_s(2, N)
        h = orc.JacobiElement.from_generators(1, 2, 3, N)
        # SL2 and Heisenberg sit inside as the obvious subgroups
        assert orc.JacobiElement.from_sl2(g).heisenberg_part().lam == 0
        assert h.g == orc.JacobiElement.identity(N).g


class TestGroupAlgebra:
    def test_identity_delta_is_neutral(self):
        N = 3
        e = orc.AlgebraElement.from_element(orc.JacobiElement.identity(N))
        A = orc.yhat(0, N) + orc.shat_minus(N).scale(0.5j)
        prod = orc.ga_mul(e, A)
        diff = prod - A
        assert algebra_max(diff) < 1e-14

    def test_zhat_idempotent(self):
        # zhat_w * zhat_w = N * zhat_w inside the center's group algebra
        for N in (3, 5):
            for omega in (1, 2):
                Z = orc.zhat(omega, N)
                diff = orc.ga_mul(Z, Z) - Z.scale(N)
                assert algebra_max(diff) < 1e-12

    def test_support_bound(self):
        N = 3
        A = orc.uhat0(N)
        B = orc.dhat0(N)
        assert orc.ga_mul(A, B).support() <= A.support() * B.support()

    def test_modulus_mismatch(self):
        with pytest.raises(ValueError):
            orc.ga_mul(orc.uhat0(3), orc.uhat0(5))


class TestIdeal:
    def test_size_guard(self):
        with pytest.raises(ValueError):
            orc.build_ideal(1, 7)

    def test_nonzero_and_left_absorptions(self):
        for N, omega in ((3, 1), (3, 2), (5, 1)):
            I = orc.build_ideal(omega, N)
            assert algebra_max(I) > 0.1
            ty = orc.AlgebraElement.from_element(
                orc.JacobiElement.from_generators(0, 1, 0, N)
            )
            assert algebra_max(orc.ga_mul(ty, I) - I) < 1e-12
            tz = orc.AlgebraElement.from_element(
                orc.JacobiElement.from_generators(0, 0, 1, N)
            )
            # central eigenvalue exp(2 pi i omega / N)
            diff = orc.ga_mul(tz, I) - I.scale(zeta(omega, N))
            assert algebra_max(diff) < 1e-12

    def test_ts_eigenrelation(self):
        N = 3
        for omega in (1, 2):
            I = orc.build_ideal(omega, N)
            for a in range(1, N):
                ts = orc.AlgebraElement.from_element(
                    orc.JacobiElement.from_sl2(t_s(a, N))
                )
                diff = orc.ga_mul(ts, I) - I.scale(float(legendre(a, N)))
                assert algebra_max(diff) < 1e-12

    def test_basis_spans_n_dimensions(self):
        assert orc.basis_rank(1, 3) == 3
        assert orc.basis_rank(2, 3) == 3


class TestGeneratorAction:
    def test_all_generators_float(self):
        for omega in (1, 2):
            I = orc.build_ideal(omega, 3)
            for tok in [("s", 1), ("s", 2), ("u", 0), ("u", 1), ("u", 2),
                        ("J", 1), ("d", 1), ("d", 2)]:
                assert orc.verify_generator_action(tok, omega, 3, ideal=I) < 1e-8

    def test_heisenberg_elements_match_schrodinger(self):
        I = orc.build_ideal(1, 3)
        for r in range(3):
            for s in range(3):
                tok = ("h", (r, s, 1))
                assert orc.verify_generator_action(tok, 1, 3, ideal=I) < 1e-8

    def test_span_closed_under_random_elements(self):
        rng = np.random.default_rng(62)
        N, omega = 3, 1
        I = orc.build_ideal(omega, N)
        basis = orc.translate_basis(I, N)
        for _ in range(50):
            x = orc.JacobiElement(
                random_g(rng, N), *(int(v) for v in rng.integers(N, size=3))
            )
            target = orc.AlgebraElement.from_element(x) * basis[int(rng.integers(N))]
            _, resid = orc.expand_in_basis(target, basis)
            assert resid < 1e-8

    def test_exact_backend_is_literally_zero(self):
        for tok in (("s", 2), ("u", 1), ("J", 1), ("h", (1, 0, 2))):
            assert orc.verify_generator_action(tok, 1, 3, exact=True) == 0.0


class TestDoubled:
    def test_commutators(self):
        for N in (3, 5):
            out = orc.translation_commutator_check(1, N)
            assert out["comuTT"] < 1e-12
            assert out["comTTb"] < 1e-12

    def test_reexpression(self):
        for omega in (1, 2):
            assert orc.reexpression_check(omega, 3) < 1e-10

    def test_polynomial_pairing_delta_cases(self):
        for N in (3, 5):
            rows = orc.test_function_identity_report(N)
            for row in rows:
                if row["exact_expected"]:
                    assert row["residual_negative"] < 1e-8
                    assert row["residual_canonical"] < 1e-8

    def test_polynomial_pairing_diagonal_fails(self):
        # the printed identity is not exact at finite N for m = h = 1
        rows = {
            (r["m"], r["n"], r["h"], r["k"]): r
            for r in orc.test_function_identity_report(3)
        }
        bad = rows[(1, 0, 1, 0)]
        assert not bad["exact_expected"]
        assert bad["residual_negative"] > 1.0
        assert bad["residual_canonical"] > 1.0
        # and the two integer lifts genuinely differ
        assert abs(bad["lhs_negative"] - bad["lhs_canonical"]) > 1.0

    def test_bundled_report(self):
        out = orc.doubled_checks(1, 3)
        assert {"comuTT", "comTTb", "reexpTr/2", "test_f_id"} <= set(out)
