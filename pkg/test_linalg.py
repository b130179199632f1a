"""
Linear Algebra Tests
Echelon reduction, spans and kernels over the rationals
"""

from fractions import Fraction

import pytest
from hypothesis import given, strategies as st

from superjordan.linalg import Echelon, kernel, rank, rref_basis, same_span

F = Fraction
vectors = st.lists(
    st.dictionaries(st.integers(0, 4), st.fractions(max_denominator=5).filter(lambda q: abs(q) < 10), max_size=5),
    max_size=6,
)


class TestEchelon:
    def test_rank_and_dependency(self):
        ech = Echelon(track=True)
        assert ech.add({0: F(1), 1: F(2)}) == (True, {})
        assert ech.add({1: F(1)})[0]
        independent, relation = ech.add({0: F(2), 1: F(7)})
        assert not independent
        # g2 - 2*g0 - 3*g1 = 0
        assert relation == {0: F(-2), 1: F(-3), 2: F(1)}
        assert ech.rank == 2

    def test_express_returns_generator_coefficients(self):
        ech = Echelon(track=True)
        ech.add({0: F(1), 2: F(1)})
        ech.add({1: F(1), 2: F(-1)})
        assert ech.express({0: F(2), 1: F(3), 2: F(-1)}) == {0: F(2), 1: F(3)}
        assert ech.express({2: F(1)}) is None

    def test_express_needs_tracking(self):
        with pytest.raises(ValueError):
            Echelon().express({0: F(1)})

    def test_basis_is_reduced(self):
        basis = rref_basis([{0: F(2), 1: F(4)}, {0: F(1), 1: F(3)}])
        assert basis == [{0: F(1)}, {1: F(1)}]


class TestSpans:
    def test_kernel(self):
        # columns e0 -> (1,1), e1 -> (2,2), e2 -> (0,1)
        ker = kernel([{0: F(1), 1: F(1)}, {0: F(2), 1: F(2)}, {1: F(1)}])
        assert ker == [{0: F(1), 1: F(-1, 2)}]

    def test_same_span_ignores_generators(self):
        a = [{0: F(1)}, {1: F(1)}]
        b = [{0: F(1), 1: F(1)}, {0: F(1), 1: F(-1)}, {0: F(3)}]
        assert same_span(a, b)
        assert not same_span(a, [{0: F(1)}])

    @given(vectors)
    def test_rank_plus_kernel_is_column_count(self, cols):
        assert rank(cols) + len(kernel(cols)) == len(cols)
