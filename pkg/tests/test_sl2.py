import numpy as np
import pytest

from primephase.sl2 import (
    GeneratorWord,
    J,
    SL2Matrix,
    decompose,
    enumerate_sl2,
    group_order,
    identity,
    random_element,
    t_d,
    t_s,
    t_u,
)

NS = (3, 5, 7, 11)


def test_determinant_enforced():
    with pytest.raises(ValueError):
        SL2Matrix(1, 1, 1, 1, 5)


class TestRelations:
    def test_J_powers(self):
        for N in NS:
            assert J(N) ** 4 == identity(N)
            assert J(N) ** 2 == t_s(-1, N)
            assert J(N) * J(N).inverse() == identity(N)

    def test_one_parameter_families(self):
        N = 7
        for x in range(1, N):
            for y in range(1, N):
                assert t_s(x, N) * t_s(y, N) == t_s(x * y % N, N)
        for x in range(N):
            for y in range(N):
                assert t_d(x, N) * t_d(y, N) == t_d((x + y) % N, N)
                assert t_u(x, N) * t_u(y, N) == t_u((x + y) % N, N)

    def test_conjugation_relations(self):
        N = 11
        inv = lambda a: pow(a, N - 2, N)
        for a in range(1, N):
            for c in range(N):
                assert t_s(a, N) * t_d(c, N) == t_d(c * inv(a * a) % N, N) * t_s(a, N)
                assert t_s(a, N) * t_u(c, N) == t_u(c * a * a % N, N) * t_s(a, N)
            assert J(N) * t_s(a, N) == t_s(inv(a), N) * J(N)

    def test_J_td_and_J_tu_identities(self):
        for N in (3, 7):
            inv = lambda a: pow(a, N - 2, N)
            for c in range(1, N):
                lhs = J(N) * t_d(c, N)
                rhs = (
                    t_s(c, N)
                    * t_d(-c, N)
                    * J(N).inverse()
                    * t_d(-inv(c), N)
                    * J(N)
                )
                assert lhs == rhs
            for b in range(1, N):
                lhs = J(N) * t_u(b, N)
                rhs = (
                    t_s(inv(b), N)
                    * t_u(-b, N)
                    * J(N).inverse()
                    * t_u(-inv(b), N)
                    * J(N).inverse()
                )
                assert lhs == rhs

    def test_tu_is_conjugate_of_td(self):
        for N in NS:
            for b in range(N):
                assert t_u(b, N) == J(N) * t_d(-b, N) * J(N).inverse()


class TestDecompose:
    def test_upper_triangular_branch(self):
        N = 7
        g = t_u(3, N)
        word = decompose(g)
        assert word.tokens[0] == ("s", 1)
        assert word.evaluate() == g

    def test_J_itself(self):
        N = 5
        word = decompose(J(N))
        assert word.evaluate() == J(N)
        # the c != 0 branch with all parameters trivial
        assert word.tokens == (("u", 0), ("J", 1), ("s", 1), ("u", 0))

    def test_500_random_elements(self):
        rng = np.random.default_rng(42)
        for N in NS:
            for _ in range(125):
                g = random_element(rng, N)
                assert decompose(g).evaluate() == g

    def test_word_evaluation_order(self):
        N = 5
        word = GeneratorWord((("u", 2), ("J", 1), ("s", 3)), N)
        assert word.evaluate() == t_u(2, N) * J(N) * t_s(3, N)


def test_group_order_formula():
    assert group_order(3) == 24
    assert group_order(5) == 120
    assert group_order(7) == 336


def test_enumeration_matches_order():
    for N in (3, 5):
        elems = enumerate_sl2(N)
        assert len(elems) == group_order(N)
        assert len(set(elems)) == group_order(N)
    with pytest.raises(ValueError):
        enumerate_sl2(17)


def test_random_element_is_valid_and_spreads():
    rng = np.random.default_rng(0)
    seen = {random_element(rng, 3) for _ in range(400)}
    assert len(seen) == group_order(3)
