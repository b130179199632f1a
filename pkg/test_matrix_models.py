"""
Matrix Model Tests
M_{n|n}, the superinvolution and the structure constants read off it
"""

from fractions import Fraction
from itertools import permutations

import pytest
from hypothesis import given, settings, strategies as st

from superjordan.errors import InvalidParameter, NonHomogeneousError, NotInSpan
from superjordan.graded import Parity
from superjordan.matrix_models import (SuperMatrix, build_jpn, build_mnn, build_pn_action, check_superinvolution,
                                       coordinates, jp_named_basis, pn_named_basis, split_by_involution,
                                       supersymmetric_product, trp)

F = Fraction
HALF = F(1, 2)


@st.composite
def matrices(draw, n=3):
    size = 2 * n
    values = draw(st.lists(st.integers(-4, 4), min_size=size * size, max_size=size * size))
    return SuperMatrix.from_rows([values[r * size:(r + 1) * size] for r in range(size)])


class TestSuperMatrix:
    def test_block_parity(self):
        assert SuperMatrix.unit(2, 1, 2).parity() == Parity.EVEN
        assert SuperMatrix.unit(2, 3, 1).parity() == Parity.ODD
        assert (SuperMatrix.unit(2, 1, 1) + SuperMatrix.unit(2, 1, 3)).parity() is None
        assert SuperMatrix(2).parity() == Parity.EVEN

    def test_trp_on_blocks(self):
        # (a, b; c, d) -> (d^t, -b^t; c^t, a^t) with n = 1
        x = SuperMatrix.from_rows([[1, 2], [3, 4]])
        assert trp(x) == SuperMatrix.from_rows([[4, -2], [3, 1]])

    def test_superinvolution(self):
        assert check_superinvolution(2).passed

    def test_product_needs_homogeneous_factors(self):
        mixed = SuperMatrix.unit(2, 1, 1) + SuperMatrix.unit(2, 1, 3)
        with pytest.raises(NonHomogeneousError):
            supersymmetric_product(mixed, SuperMatrix.unit(2, 1, 1))

    @settings(max_examples=25, deadline=None)
    @given(matrices())
    def test_split_by_involution(self, x):
        sym, skew = split_by_involution(x)
        assert sym + skew == x
        assert trp(sym) == sym and trp(skew) == -skew
        # both parts have exact coordinates in their bases
        coordinates(sym, jp_named_basis(3))
        coordinates(skew, pn_named_basis(3))


class TestNamedBases:
    def test_dimensions(self):
        for n in (2, 3, 4):
            assert jp_named_basis(n).dim == 2 * n * n
            assert pn_named_basis(n).dim == 2 * n * n

    def test_basis_matrices_are_symmetric_or_skew(self):
        for x in jp_named_basis(3).matrices:
            assert trp(x) == x
        for x in pn_named_basis(3).matrices:
            assert trp(x) == -x

    def test_coordinates_reject_matrices_outside_the_span(self):
        with pytest.raises(NotInSpan):
            coordinates(SuperMatrix.unit(3, 1, 2), jp_named_basis(3))

    def test_signed_matrix_lookup(self):
        named = jp_named_basis(3)
        assert named.matrix("s_21") == -named.matrix("s_12")
        assert named.matrix("h_21") == named.matrix("h_12")


class TestStructureConstants:
    def test_build_jpn(self):
        alg, _ = build_jpn(3)
        assert alg.dim == 18
        assert len(alg.basis.indices_of_parity(0)) == 9
        with pytest.raises(InvalidParameter):
            build_jpn(1)

    def test_build_pn_action(self):
        action = build_pn_action(4)
        assert action.dim == 32
        with pytest.raises(InvalidParameter):
            build_pn_action(2)

    def test_build_mnn(self):
        alg = build_mnn(2)
        assert alg.dim == 16
        e11, e12 = alg.basis.index("e_11"), alg.basis.index("e_12")
        assert alg.multiply(alg.basis_element(e11), alg.basis_element(e12)) == alg.basis_element(e12).scale(HALF)

    @pytest.mark.parametrize("n", [3, 4])
    def test_displayed_products(self, n):
        alg, _ = build_jpn(n)
        e = alg.element
        for i, j, l in permutations(range(1, n + 1), 3):
            assert alg.multiply(e(f"u_{i}{j}"), e(f"h_{i}{l}")) == e(f"h_{j}{l}").scale(HALF)
            assert alg.multiply(e(f"h_{i}"), e(f"s_{i}{j}")) == e(f"u_{j}{i}").scale(HALF)
            assert alg.multiply(e(f"h_{i}{j}"), e(f"s_{i}{j}")) == (e(f"u_{j}") - e(f"u_{i}")).scale(HALF)
            assert alg.multiply(e(f"u_{i}{j}"), e(f"h_{i}{j}")) == e(f"h_{j}")
            assert alg.multiply(e(f"u_{i}"), e(f"h_{i}")) == e(f"h_{i}")
