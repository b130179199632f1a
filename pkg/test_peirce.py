"""
Peirce Tests
Decomposition of JP_3 and its extensions relative to u_1, u_2, u_3
"""

import numpy as np
import pytest

from superjordan.cases import Case, build_case_extension
from superjordan.errors import DecompositionIncomplete
from superjordan.graded import Element, GradedAlgebra, GradedBasis
from superjordan.matrix_models import build_jpn
from superjordan.peirce import (check_peirce_relations, peirce_decompose, peirce_summary, same_subspace,
                                verify_orthogonal_idempotents)


def diagonal(alg, n=3):
    return [alg.element(f"u_{i}") for i in range(1, n + 1)]


@pytest.fixture(scope="module")
def jp3():
    alg, _ = build_jpn(3)
    return alg


class TestIdempotents:
    def test_diagonal_units(self, jp3):
        assert verify_orthogonal_idempotents(jp3, diagonal(jp3)).passed

    def test_missing_idempotent_breaks_the_unit(self, jp3):
        report = verify_orthogonal_idempotents(jp3, diagonal(jp3)[:2])
        assert not report.passed
        assert {v["kind"] for v in report.violations} == {"unit"}

    def test_non_orthogonal(self, jp3):
        es = [jp3.element("u_1"), jp3.element("u_1")]
        kinds = {v["kind"] for v in verify_orthogonal_idempotents(jp3, es).violations}
        assert "orthogonal" in kinds


class TestDecomposition:
    def test_jp3_dimensions(self, jp3):
        d = peirce_decompose(jp3, diagonal(jp3))
        assert d.dims() == {(1, 1): 2, (2, 2): 2, (3, 3): 2, (1, 2): 4, (1, 3): 4, (2, 3): 4}
        assert same_subspace(d.component_elements(1, 2),
                             [jp3.element(x) for x in ("u_12", "u_21", "h_12", "s_12")])
        assert d.component(2, 1) == d.component(1, 2)

    def test_jp3_relations(self, jp3):
        report = check_peirce_relations(peirce_decompose(jp3, diagonal(jp3)))
        assert report.passed
        assert set(report.details["checked_by_family"]) == {"square", "chain", "disjoint"}

    @pytest.mark.parametrize("case", list(Case))
    def test_extensions(self, case):
        ext = build_case_extension(case, 3)
        d = peirce_decompose(ext.ambient, diagonal(ext.ambient))
        assert all(dim == (4 if i == j else 8) for (i, j), dim in d.dims().items())
        assert check_peirce_relations(d).passed

    def test_regular_radical_components(self):
        ext = build_case_extension("reg", 3)
        d = peirce_decompose(ext.ambient, diagonal(ext.ambient))
        rows = {row["component"]: row for row in peirce_summary(d, ext.radical)}
        assert rows["11"]["radical"] == 2 and rows["11"]["algebra"] == 2
        assert rows["12"]["radical"] == 4 and rows["12"]["even"] == 4
        g12 = ext.ambient.element("g_12")
        z12 = ext.ambient.element("z_12")
        radical_part = [Element(ext.dim, v) for v in d.component(1, 2) if set(v) <= set(ext.radical)]
        assert same_subspace([g12, z12, ext.ambient.element("v_12"), ext.ambient.element("v_21")], radical_part)

    def test_incomplete_decomposition(self, jp3):
        with pytest.raises(DecompositionIncomplete):
            peirce_decompose(jp3, diagonal(jp3)[:2])

    @pytest.mark.parametrize("seed", [0, 1])
    def test_basis_order_does_not_matter(self, jp3, seed):
        perm = [int(k) for k in np.random.default_rng(seed).permutation(jp3.dim)]
        position = {old: new for new, old in enumerate(perm)}
        basis = GradedBasis([(jp3.basis.label(k), jp3.basis.parity(k)) for k in perm], jp3.basis.symmetries)
        table = {}
        for p, i in enumerate(perm):
            for q, j in enumerate(perm):
                terms = jp3.product(i, j)
                if terms:
                    table[(p, q)] = {position[k]: v for k, v in terms.items()}
        shuffled = GradedAlgebra(basis, table, name="JP_3 shuffled")

        original = peirce_decompose(jp3, diagonal(jp3))
        permuted = peirce_decompose(shuffled, diagonal(shuffled))
        assert permuted.dims() == original.dims()
        for key in original.dims():
            back = [{perm[p]: c for p, c in v.items()} for v in permuted.component(*key)]
            assert same_subspace(back, original.component(*key))
