"""
Graded Core Tests
Labels, bases, elements, structure-constant algebras and their JSON form
"""

from fractions import Fraction

import pytest
from hypothesis import given, settings, strategies as st

from superjordan.errors import DimensionMismatch, InvalidParameter, NonHomogeneousError, NotAnIdeal
from superjordan.graded import (Element, GradedAlgebra, GradedBasis, Label, Parity, algebra_from_json,
                                algebra_to_json, check_isomorphism, complement_algebra, quotient_by_ideal,
                                subalgebra_check)
from superjordan.cases import build_case_extension
from superjordan.identities import jordan_residual
from superjordan.matrix_models import build_jpn

F = Fraction
JP3, _ = build_jpn(3)
coefficients = st.fractions(min_value=-8, max_value=8, max_denominator=4).filter(lambda q: 0 < abs(q) < 8)


def el(label):
    return JP3.element(label)


@st.composite
def homogeneous(draw, parity=None):
    if parity is None:
        parity = draw(st.sampled_from([0, 1]))
    indices = JP3.basis.indices_of_parity(parity)
    chosen = draw(st.lists(st.sampled_from(indices), min_size=1, max_size=3, unique=True))
    return Element(JP3.dim, {k: draw(coefficients) for k in chosen})


class TestLabels:
    def test_text_form(self):
        assert str(Label('u', (1, 2))) == "u_12"
        assert str(Label('g', (3,))) == "g_3"
        assert str(Label('h', (2, 11))) == "h_{2,11}"
        assert str(Label('u', (10,))) == "u_{10}"

    def test_parse(self):
        assert Label.parse("s_13") == Label('s', (1, 3))
        assert Label.parse("h_{2,11}") == Label('h', (2, 11))
        assert Label.parse("h_2,11") == Label('h', (2, 11))
        assert Label.parse("u_{10}") == Label('u', (10,))
        assert Label.parse("u_10") == Label('u', (1, 0))
        assert Label.parse("v^op_2") == Label('v^op', (2,))

    @pytest.mark.parametrize("label", [Label('u', (10,)), Label('u', (1, 0)), Label('u', (1, 10)),
                                       Label('u', (11, 0)), Label('s', (9, 12)), Label('v^op', (10,))])
    def test_two_digit_indices_survive_text(self, label):
        assert Label.parse(str(label)) == label

    def test_parity_addition_is_mod_two(self):
        assert Parity.ODD + Parity.ODD == Parity.EVEN
        assert Parity.EVEN + 1 == Parity.ODD


class TestGradedBasis:
    def test_swapped_indices_resolve_with_family_sign(self):
        basis = JP3.basis
        h12, sign_h = basis.resolve(Label('h', (2, 1)))
        s12, sign_s = basis.resolve(Label('s', (2, 1)))
        assert h12 == basis.index(Label('h', (1, 2))) and sign_h == 1
        assert s12 == basis.index(Label('s', (1, 2))) and sign_s == -1
        assert el("s_21") == -el("s_12")

    def test_index_refuses_negative_spelling(self):
        with pytest.raises(InvalidParameter):
            JP3.basis.index("s_21")

    def test_unknown_label(self):
        with pytest.raises(InvalidParameter):
            JP3.basis.resolve("q_1")
        assert "u_12" in JP3.basis and "u_44" not in JP3.basis

    def test_duplicate_labels_rejected(self):
        with pytest.raises(InvalidParameter):
            GradedBasis([(Label('e'), 0), (Label('e'), 1)])

    def test_parity_of(self):
        assert JP3.basis.parity_of(el("u_1") + el("u_23")) == Parity.EVEN
        assert JP3.basis.parity_of(el("u_1") + el("h_1")) is None
        assert JP3.basis.parity_of(Element.zero(JP3.dim)) is None


class TestElement:
    def test_arithmetic(self):
        x = el("u_1") + el("h_12").scale(F(1, 2))
        assert x - x == Element.zero(JP3.dim)
        assert (2 * x)[JP3.basis.index("h_12")] == 1
        assert x.format(JP3.basis) == "u_1 + 1/2*h_12"

    def test_dimension_mismatch(self):
        with pytest.raises(DimensionMismatch):
            Element(3, {5: 1})
        with pytest.raises(DimensionMismatch):
            Element(3) + Element(4)


class TestGradedAlgebra:
    def test_parity_violation_is_rejected(self):
        basis = GradedBasis([(Label('a'), 0), (Label('b'), 1)])
        with pytest.raises(InvalidParameter):
            GradedAlgebra(basis, {(0, 0): {1: 1}})

    def test_jpn_products(self):
        assert JP3.multiply(el("u_1"), el("h_12")) == el("h_12").scale(F(1, 2))
        assert JP3.multiply(el("u_1"), el("h_1")) == el("h_1")
        assert JP3.multiply(el("u_1"), el("u_1")) == el("u_1")

    def test_json_round_trip_keeps_products(self):
        alg, radical = algebra_from_json(algebra_to_json(JP3))
        assert radical is None
        assert alg.basis.labels == JP3.basis.labels
        assert alg.table == JP3.table

    def test_json_round_trip_with_two_digit_indices(self):
        labels = [Label('u', (10,)), Label('u', (1, 0)), Label('u', (1, 10)), Label('u', (11, 0)),
                  Label('h', (10, 11))]
        basis = GradedBasis([(lab, 1 if lab.family == 'h' else 0) for lab in labels])
        table = {(0, 0): {0: 1}, (0, 2): {2: F(1, 2)}, (1, 3): {1: 1, 3: -1}, (0, 4): {4: 1}}
        alg = GradedAlgebra(basis, table, name="two digits")
        loaded, radical = algebra_from_json(algebra_to_json(alg, [1]))
        assert loaded.basis.labels == alg.basis.labels
        assert loaded.table == alg.table
        assert radical == [1]

    @pytest.mark.parametrize("payload", [{}, {"basis": [{"name": "u_1"}]}, {"basis": [], "radical": [3]}])
    def test_malformed_json(self, payload):
        with pytest.raises(InvalidParameter):
            algebra_from_json(payload)

    @settings(max_examples=30, deadline=None)
    @given(homogeneous(), homogeneous())
    def test_supercommutative_on_random_elements(self, x, y):
        px, py = JP3.basis.parity_of(x), JP3.basis.parity_of(y)
        sign = -1 if (px and py) else 1
        assert JP3.multiply(x, y) == JP3.multiply(y, x).scale(sign)

    @settings(max_examples=20, deadline=None)
    @given(homogeneous(), homogeneous(), homogeneous(), homogeneous())
    def test_super_jordan_on_random_elements(self, x, y, z, t):
        assert not jordan_residual(JP3, x, y, z, t)


class TestSubspaces:
    def test_subalgebra(self):
        assert subalgebra_check(JP3, [el("u_1"), el("h_12")]).passed
        report = subalgebra_check(JP3, [el("h_1"), el("s_12")])
        assert not report.passed
        assert report.violation_count > 0

    def test_subalgebra_needs_homogeneous_elements(self):
        with pytest.raises(NonHomogeneousError):
            subalgebra_check(JP3, [el("u_1") + el("h_1")])

    def test_quotient_of_extension_is_jpn(self):
        ext = build_case_extension("reg", 3)
        quotient, project = quotient_by_ideal(ext.ambient, ext.radical_elements())
        assert quotient.dim == JP3.dim
        images = [JP3.basis_element(k) for k in range(JP3.dim)]
        assert check_isomorphism(images, quotient, JP3).passed
        assert not project(ext.ambient.element("g_1"))

    def test_not_an_ideal(self):
        with pytest.raises(NotAnIdeal):
            quotient_by_ideal(JP3, [el("u_1")])

    def test_isomorphism_detects_parity_swap(self):
        images = [JP3.basis_element(k) for k in range(JP3.dim)]
        u1, h1 = JP3.basis.index("u_1"), JP3.basis.index("h_1")
        images[u1], images[h1] = images[h1], images[u1]
        report = check_isomorphism(images, JP3, JP3)
        assert not report.passed
        assert any(v["kind"] == "parity" for v in report.violations)

    def test_complement_algebra(self):
        sub = complement_algebra(JP3, [el("u_1"), el("h_1")], [Label('u', (1,)), Label('h', (1,))])
        assert sub.dim == 2
        assert sub.multiply(sub.element("u_1"), sub.element("h_1")) == sub.element("h_1")
        with pytest.raises(NonHomogeneousError):
            complement_algebra(JP3, [Element.zero(JP3.dim)])

    def test_subalgebra_rejects_idempotent_with_odd_pair(self):
        report = subalgebra_check(JP3, [el("u_1"), el("h_1"), el("s_12")])
        assert not report.passed
        assert any("u_21" in v["escaping"] for v in report.violations)

    def test_quotient_by_zero_ideal_is_a_copy(self):
        quotient, project = quotient_by_ideal(JP3, [])
        assert quotient.basis.labels == JP3.basis.labels
        assert quotient.table == JP3.table
        images = [JP3.basis_element(k) for k in range(JP3.dim)]
        assert check_isomorphism(images, quotient, JP3).passed
        assert project(el("h_12")) == quotient.element("h_12")

    @pytest.mark.parametrize("i", [1, 2, 3])
    def test_isomorphism_detects_scaled_odd_generator(self, i):
        images = [JP3.basis_element(k) for k in range(JP3.dim)]
        h = JP3.basis.index(f"h_{i}")
        images[h] = images[h].scale(2)
        report = check_isomorphism(images, JP3, JP3)
        assert not report.passed
        assert all(v["kind"] != "parity" for v in report.violations)
