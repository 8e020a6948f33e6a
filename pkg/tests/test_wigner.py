import json
import math

import numpy as np
import pytest

from primephase import metaplectic as mp
from primephase.cyclic import dft
from primephase.fields import PrimeField
from primephase.heisenberg import schrodinger_matrix
from primephase.sl2 import J, identity, t_s, t_u
from primephase.sl2 import random_element as random_g
from primephase.wigner import (
    MomentVector,
    displacement_matrix,
    dprime_matrix,
    StateVector,
    covariance_check,
    expectation_char,
    fourier_wigner,
    moments,
    weyl_ordered,
    weyl_residual_report,
    wigner,
)


def wigner_bruteforce(f: StateVector) -> np.ndarray:
    """Literal triple loop over the defining sum (independent of the library path)."""
    N = f.N
    F = PrimeField(N)
    i4 = F.inv(4 * f.omega)
    amp = f.amplitudes
    W = np.zeros((N, N), dtype=complex)
    for r in range(N):
        for s in range(N):
            acc = 0j
            for p in range(N):
                acc += (
                    np.conj(amp[(r + p * i4) % N])
                    * amp[(r - p * i4) % N]
                    * np.exp(-2j * math.pi * p * s / N)
                )
            W[r, s] = acc
    return W


class TestStateVector:
    def test_presets(self):
        f = StateVector.preset("delta:2", 5, 1)
        assert f.amplitudes[2] == 1.0 and f.norm2() == 1.0
        f = StateVector.preset("uniform", 5, 1)
        assert abs(f.norm2() - 1.0) < 1e-12
        f = StateVector.preset("char:3", 7, 2)
        assert abs(f.norm2() - 1.0) < 1e-12
        f = StateVector.preset("chirp:1", 7, 2)
        assert abs(abs(f.amplitudes[3]) - 1 / math.sqrt(7)) < 1e-12
        with pytest.raises(ValueError):
            StateVector.preset("squeezed:1", 5, 1)

    def test_normalized_flag_checked(self):
        with pytest.raises(ValueError):
            StateVector(np.array([2.0, 0, 0]), 1, normalized=True)

    def test_omega_validated(self):
        with pytest.raises(ValueError):
            StateVector(np.ones(5), 0)
        with pytest.raises(ValueError):
            StateVector(np.ones(4), 1)  # modulus must be an odd prime


class TestWignerTable:
    def test_delta_state_support(self):
        N, omega, k0 = 7, 2, 3
        W = wigner(StateVector.preset(f"delta:{k0}", N, omega))
        want = np.zeros((N, N))
        want[k0, :] = 1.0
        assert np.max(np.abs(W.values - want)) < 1e-12

    def test_matches_bruteforce(self):
        rng = np.random.default_rng(20)
        for N in (3, 5, 7):
            for omega in (1, N - 1):
                f = StateVector.random(rng, N, omega)
                W = wigner(f)
                B = wigner_bruteforce(f)
                assert np.max(np.abs(B.imag)) < 1e-12
                assert np.max(np.abs(W.values - B.real)) < 1e-12

    def test_reality_and_marginals(self):
        rng = np.random.default_rng(21)
        for N in (3, 7, 13):
            omega = 2
            for _ in range(25):
                f = StateVector.random(rng, N, omega, normalize=False)
                W = wigner(f).values
                assert np.max(np.abs(W.sum(axis=1) - N * np.abs(f.amplitudes) ** 2)) < 1e-10
                assert abs(W.sum() - N * f.norm2()) < 1e-9

    def test_momentum_marginal_index_map(self):
        # sum_r W(r, s) = N^2 |ftilde(2*omega*s)|^2
        rng = np.random.default_rng(22)
        for N, omega in ((3, 1), (5, 2), (7, 4)):
            f = StateVector.random(rng, N, omega)
            W = wigner(f).values
            ft = dft(f.amplitudes)
            for s in range(N):
                want = N * N * abs(ft[(2 * omega * s) % N]) ** 2
                assert abs(W.sum(axis=0)[s] - want) < 1e-10

    def test_unit_sum_convention(self):
        f = StateVector.preset("uniform", 5, 1)
        W = wigner(f)
        assert W.convention == "raw"
        U = W.unit_sum()
        assert abs(U.values.sum() - 1.0) < 1e-12

    def test_csv_and_json_export(self, tmp_path):
        f = StateVector.preset("delta:1", 3, 1)
        W = wigner(f)
        path = tmp_path / "w.csv"
        W.to_csv(path)
        rows = path.read_text().strip().splitlines()
        assert rows[0] == "r,s,value"
        assert len(rows) == 1 + 9
        blob = W.to_json()
        assert blob["n"] == 3 and blob["convention"] == "raw"
        json.dumps(blob)


class TestFourierWigner:
    def test_origin_is_norm(self):
        rng = np.random.default_rng(23)
        f = StateVector.random(rng, 7, 3, normalize=False)
        A = fourier_wigner(f).values
        assert abs(A[0, 0] - f.norm2()) < 1e-12
        assert np.all(np.abs(A) <= abs(A[0, 0]) + 1e-12)

    def test_double_dft_relation(self):
        # W(r,s) = (1/N) sum_{q,p} A(q,p) exp(-2 pi i (qr+ps)/N)
        rng = np.random.default_rng(24)
        for N in (3, 5, 7):
            f = StateVector.random(rng, N, 1 + N % 3)
            A = fourier_wigner(f).values
            W = wigner(f).values
            q, p = np.meshgrid(np.arange(N), np.arange(N), indexing="ij")
            for r in range(N):
                for s in range(N):
                    recon = np.sum(A * np.exp(-2j * np.pi * (q * r + p * s) / N)) / N
                    assert abs(recon - W[r, s]) < 1e-10


class TestCharacterWeylMap:
    def test_origin(self):
        rng = np.random.default_rng(25)
        f = StateVector.random(rng, 5, 2, normalize=False)
        pair = expectation_char(f, 0, 0)
        assert abs(pair.operator_side - f.norm2()) < 1e-12
        assert pair.residual < 1e-12

    def test_delta_state_position_character(self):
        N, omega, k0 = 5, 1, 3
        f = StateVector.preset(f"delta:{k0}", N, omega)
        for q in range(N):
            pair = expectation_char(f, q, 0)
            assert abs(pair.operator_side - np.exp(2j * np.pi * q * k0 / N)) < 1e-12
            assert pair.residual < 1e-12

    def test_agreement_everywhere(self):
        rng = np.random.default_rng(26)
        for N in (3, 5, 7):
            f = StateVector.random(rng, N, 2)
            for q in range(N):
                for p in range(N):
                    assert expectation_char(f, q, p).residual < 1e-11

    def test_displacement_matches_fourier_wigner(self):
        rng = np.random.default_rng(27)
        N, omega = 5, 2
        f = StateVector.random(rng, N, omega)
        A = fourier_wigner(f).values
        for q in range(N):
            for p in range(N):
                E = displacement_matrix(q, p, omega, N)
                assert abs(np.vdot(f.amplitudes, E @ f.amplitudes) - A[q, p]) < 1e-12


class TestWeylOrdered:
    def test_low_orders(self):
        N, omega = 5, 1
        assert np.array_equal(weyl_ordered(0, 0, omega, N), np.eye(N))
        assert np.allclose(weyl_ordered(1, 0, omega, N), np.diag(np.arange(N)))
        K = np.diag(np.arange(N, dtype=complex))
        Dp = dprime_matrix(N, omega)
        want = (K @ Dp + Dp @ K) / 2
        assert np.max(np.abs(weyl_ordered(1, 1, omega, N) - want)) < 1e-12

    def test_hermitian(self):
        N, omega = 7, 3
        for m in range(4):
            for n in range(4 - m):
                Wmn = weyl_ordered(m, n, omega, N)
                assert np.max(np.abs(Wmn - Wmn.conj().T)) < 1e-10

    def test_bound_enforced(self):
        with pytest.raises(ValueError):
            weyl_ordered(5, 4, 1, 5)

    def test_dprime_eigenvalues(self):
        from primephase.cyclic import ghat

        N, omega = 7, 2
        Dp = dprime_matrix(N, omega)
        for m in range(N):
            g = ghat(m, N)
            assert np.max(np.abs(Dp @ g - (m / (2 * omega)) * g)) < 1e-11


class TestWeylResidualReport:
    def test_exact_rows(self):
        rng = np.random.default_rng(28)
        for N in (3, 5, 7):
            f = StateVector.random(rng, N, 1, normalize=False)
            r00 = weyl_residual_report(f, 0, 0)
            assert abs(r00.operator_side - f.norm2()) < 1e-12
            assert r00.residual < 1e-11
            r10 = weyl_residual_report(f, 1, 0)
            want = np.sum(np.arange(N) * np.abs(f.amplitudes) ** 2)
            assert abs(r10.operator_side - want) < 1e-11
            assert r10.residual < 1e-11

    def test_mixed_order_deviates_in_general(self):
        # consequence of the finite-N polynomial pairing deviation
        rng = np.random.default_rng(29)
        worst = 0.0
        for _ in range(10):
            f = StateVector.random(rng, 3, 1)
            worst = max(worst, weyl_residual_report(f, 1, 1).residual)
        assert worst > 1e-3

    def test_bound(self):
        f = StateVector.preset("uniform", 5, 1)
        with pytest.raises(ValueError):
            weyl_residual_report(f, 3, 2)


class TestMoments:
    def test_order_zero_is_norm(self):
        rng = np.random.default_rng(30)
        f = StateVector.random(rng, 7, 2, normalize=False)
        assert abs(moments(f, 0).values[0] - f.norm2()) < 1e-12

    def test_delta_position(self):
        N, k0 = 7, 4
        f = StateVector.preset(f"delta:{k0}", N, 1)
        r1 = moments(f, 1)
        assert abs(r1.values[0] - k0) < 1e-12

    def test_position_moments_tu_invariant(self):
        # W(t_u^b) is diagonal phases: |f(k)|^2 and hence <k^j> are untouched,
        # matching the (1, 0, ..., 0) top row of rho_h(t_u^b)
        rng = np.random.default_rng(31)
        for N in (3, 5, 7):
            f = StateVector.random(rng, N, 1)
            for b in range(N):
                g = f.apply(mp.weil(t_u(b, N), 1))
                for h in range(1, 5):
                    assert abs(moments(g, h).values[0] - moments(f, h).values[0]) < 1e-10

    def test_moment_vector_shape(self):
        with pytest.raises(ValueError):
            MomentVector(2, np.zeros(2))


class TestCovariance:
    def test_identity(self):
        rng = np.random.default_rng(32)
        f = StateVector.random(rng, 5, 1)
        assert covariance_check(identity(5), f) < 1e-13

    def test_scaling_moves_delta_support(self):
        N, omega, a, k0 = 7, 1, 3, 2
        F = PrimeField(N)
        f = StateVector.preset(f"delta:{k0}", N, omega)
        g = f.apply(mp.weil(t_s(a, N), omega))
        Wg = wigner(g).values
        # support column moves to k0 / a
        col = np.abs(Wg).sum(axis=1)
        assert col[F.div(k0, a)] > 0.5
        assert covariance_check(t_s(a, N), f) < 1e-10

    def test_random_pairs_and_multiset(self):
        rng = np.random.default_rng(33)
        for N in (3, 5, 7):
            omega = 1 + N % 4
            for _ in range(35):
                g = random_g(rng, N)
                f = StateVector.random(rng, N, omega)
                assert covariance_check(g, f) < 1e-9
                A = np.sort(wigner(f).values.ravel())
                B = np.sort(wigner(f.apply(mp.weil(g, omega))).values.ravel())
                assert np.max(np.abs(A - B)) < 1e-11

    def test_heisenberg_translation_covariance(self):
        rng = np.random.default_rng(34)
        N, omega = 5, 2
        f = StateVector.random(rng, N, omega)
        Wf = wigner(f).values
        for r0 in range(N):
            for s0 in range(N):
                U = schrodinger_matrix(r0, s0, 1, omega, N)
                Wg = wigner(f.apply(U)).values
                pred = np.array(
                    [[Wf[(r - r0) % N, (s - s0) % N] for s in range(N)] for r in range(N)]
                )
                assert np.max(np.abs(Wg - pred)) < 1e-11

    def test_pinned_convention_is_transpose(self):
        # brute force at N = 3: among the four placements of g, only g^T works
        rng = np.random.default_rng(35)
        N, omega = 3, 1
        maps = {
            "gT": lambda g, r, s: ((g.a * r + g.c * s) % N, (g.b * r + g.d * s) % N),
            "g": lambda g, r, s: ((g.a * r + g.b * s) % N, (g.c * r + g.d * s) % N),
            "ginv": lambda g, r, s: ((g.d * r - g.b * s) % N, (-g.c * r + g.a * s) % N),
            "ginvT": lambda g, r, s: ((g.d * r - g.c * s) % N, (-g.b * r + g.a * s) % N),
        }
        worst = {k: 0.0 for k in maps}
        for _ in range(40):
            g = random_g(rng, N)
            f = StateVector.random(rng, N, omega)
            Wf = wigner(f).values
            Wg = wigner(f.apply(mp.weil(g, omega))).values
            for key, fn in maps.items():
                pred = np.array(
                    [[Wf[fn(g, r, s)] for s in range(N)] for r in range(N)]
                )
                worst[key] = max(worst[key], float(np.max(np.abs(Wg - pred))))
        assert worst["gT"] < 1e-10
        for key in ("g", "ginv", "ginvT"):
            assert worst[key] > 1e-2
