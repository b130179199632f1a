"""
Identity Check Tests
Supercommutativity and the super-Jordan identity on JP_n and corrupted tables
"""

import os

import pytest

from superjordan.graded import Label
from superjordan.identities import (SuperJordanCheck, check_super_jordan, check_supercommutative, jordan_signs,
                                    quadruple_index)
from superjordan.matrix_models import build_jpn, build_mnn

FULL_SUITE = os.getenv("JPN_FULL_SUITE", "").lower() in ("1", "true", "yes")


@pytest.fixture(scope="module")
def jp3():
    alg, _ = build_jpn(3)
    return alg


def corrupt_u1_h1(alg):
    """u_1 h_1 = 2 h_1 on both sides: still supercommutative, no longer Jordan."""
    u1, h1 = alg.basis.index("u_1"), alg.basis.index("h_1")
    return alg.with_products({(u1, h1): {h1: 2}, (h1, u1): {h1: 2}}, name="JP_3*"), (u1, h1)


class TestSigns:
    def test_all_even_is_the_classical_identity(self):
        assert jordan_signs(0, 0, 0, 0) == (1, 1, 1, 1)

    def test_odd_signs(self):
        assert jordan_signs(0, 1, 1, 0) == (-1, 1, 1, -1)
        assert jordan_signs(1, 1, 1, 1) == (-1, 1, 1, -1)


class TestJPn:
    def test_supercommutative(self, jp3):
        report = check_supercommutative(jp3)
        assert report.passed
        assert report.checked == jp3.dim * (jp3.dim + 1) // 2

    def test_super_jordan_on_all_quadruples(self, jp3):
        report = check_super_jordan(jp3)
        assert report.passed
        assert report.checked == 18 ** 4

    def test_explicit_quadruples(self, jp3):
        report = check_super_jordan(jp3, [(0, 9, 0, 0), (0, 9, 0, 0), (1, 2, 3, 4)])
        assert report.passed
        assert report.checked == 2

    @pytest.mark.skipif(not FULL_SUITE, reason="set JPN_FULL_SUITE=1 for the n = 4 sweep")
    def test_jp4(self):
        alg, _ = build_jpn(4)
        assert check_supercommutative(alg).passed
        report = check_super_jordan(alg)
        assert report.passed and report.checked == 32 ** 4

    def test_mnn_plus(self):
        alg = build_mnn(1)
        assert check_supercommutative(alg).passed
        assert check_super_jordan(alg).passed


class TestCorruption:
    def test_corrupted_table_fails_with_counterexample(self, jp3):
        bad, (u1, h1) = corrupt_u1_h1(jp3)
        assert check_supercommutative(bad).passed
        report = check_super_jordan(bad, [(u1, h1, u1, u1)])
        assert not report.passed
        violation = report.violations[0]
        assert violation["quadruple"] == ["u_1", "h_1", "u_1", "u_1"]
        assert violation["residual"] == "6*h_1"

    def test_one_sided_corruption_breaks_supercommutativity(self, jp3):
        u1, h1 = jp3.basis.index("u_1"), jp3.basis.index("h_1")
        bad = jp3.with_products({(u1, h1): {h1: 2}})
        report = check_supercommutative(bad)
        assert not report.passed
        assert report.violations[0]["pair"] == ["u_1", "h_1"]

    def test_violations_are_sorted_and_limited(self, jp3, monkeypatch):
        monkeypatch.setenv("JPN_REPORT_LIMIT", "3")
        bad, _ = corrupt_u1_h1(jp3)
        report = SuperJordanCheck(bad).run_sync()
        assert not report.passed
        assert len(report.violations) == 3
        assert report.violation_count > 3
        indices = [v["index"] for v in report.violations]
        assert indices == sorted(indices)
        assert indices[0] == quadruple_index(tuple(report.violations[0]["indices"]), bad.dim)

    def test_pool_matches_inline(self, jp3, monkeypatch):
        bad, _ = corrupt_u1_h1(jp3)
        inline = SuperJordanCheck(bad).run_sync()
        monkeypatch.setenv("JPN_WORKERS", "2")
        pooled = SuperJordanCheck(bad).run_sync()
        assert pooled.to_dict() == inline.to_dict()
