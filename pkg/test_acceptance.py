"""
Acceptance Tests
End-to-end runs of the VerificationSystem on the documented scenarios
"""

import asyncio
import os
import time

import numpy as np
import pytest

from superjordan.cases import Case, build_case_extension
from superjordan.errors import InvalidParameter
from superjordan.identities import check_super_jordan, check_supercommutative
from superjordan.matrix_models import build_jpn
from verification_system import CHECKS, RunReport, VerificationSystem

FULL_SUITE = os.getenv('JPN_FULL_SUITE', '').lower() in ('1', 'true', 'yes')
full_suite = pytest.mark.skipif(not FULL_SUITE, reason="set JPN_FULL_SUITE=1 for exhaustive sweeps")
SAMPLE = 1500


def sample_quadruples(dim, seed, size=SAMPLE):
    rng = np.random.default_rng(seed)
    return [tuple(int(k) for k in row) for row in rng.integers(0, dim, size=(size, 4))]


@pytest.fixture(scope="module")
def system():
    return VerificationSystem()


class TestStatus:
    def test_status(self, system):
        status = system.get_system_status()
        assert status['status'] == 'operational'
        assert status['checks'] == list(CHECKS)
        assert status['workers'] >= 1

    def test_report_json_is_sorted(self):
        report = RunReport(command='build', parameters={'n': 3, 'target': 'jpn'})
        report.verdicts['built'] = True
        text = report.to_json()
        assert text.index('"command"') < text.index('"parameters"') < text.index('"verdicts"')
        assert 'wall_time' not in text


class TestChecks:
    def test_mnn_plus_is_jordan(self, system):
        report = asyncio.run(system.check(['supercomm', 'jordan'], target='mnn', n=1))
        assert report.passed

    def test_extension_peirce(self, system):
        report = asyncio.run(system.check(['peirce'], target='extension', n=3, case='pnop'))
        assert report.passed
        rows = {row['component']: row for row in report.result['peirce']}
        assert rows['12']['radical'] == 4

    def test_peirce_needs_idempotents(self, system):
        report = asyncio.run(system.check(['peirce'], target='mnn', n=2))
        assert not report.passed
        assert 'error' in report.counterexamples['peirce'][0]

    def test_unknown_check(self, system):
        with pytest.raises(InvalidParameter):
            asyncio.run(system.check(['associativity'], n=3))

    def test_timeout_stops_an_inline_jordan_check(self, monkeypatch):
        monkeypatch.setenv('JPN_CHECK_TIMEOUT', '0.05')
        monkeypatch.setenv('JPN_WORKERS', '1')
        slow = VerificationSystem()
        start = time.perf_counter()
        report = asyncio.run(slow.check(['jordan'], target='jpn', n=3))
        # one row chunk of JP_3 is the most that can run past the deadline
        assert time.perf_counter() - start < 30
        assert report.verdicts == {'jordan': False}
        assert 'timed out' in report.counterexamples['jordan'][0]['error']

    def test_timeout_leaves_fast_checks_alone(self, monkeypatch):
        monkeypatch.setenv('JPN_CHECK_TIMEOUT', '60')
        report = asyncio.run(VerificationSystem().check(['supercomm'], target='jpn', n=2))
        assert report.passed

    def test_jp4_sampled(self):
        alg, _ = build_jpn(4)
        assert check_supercommutative(alg).passed
        assert check_super_jordan(alg, sample_quadruples(alg.dim, 4)).passed

    @pytest.mark.parametrize("case", list(Case))
    def test_extensions_sampled(self, case):
        ext = build_case_extension(case, 3)
        assert check_supercommutative(ext.ambient).passed
        assert check_super_jordan(ext.ambient, sample_quadruples(ext.dim, 3)).passed

    @full_suite
    def test_jp4_full(self, system):
        assert asyncio.run(system.check(list(CHECKS), target='jpn', n=4)).passed

    @full_suite
    @pytest.mark.parametrize("case", [c.value for c in Case])
    def test_extensions_are_jordan(self, system, case):
        report = asyncio.run(system.check(['jordan'], target='extension', n=3, case=case))
        assert report.passed


class TestComplements:
    @pytest.mark.parametrize("case", [c.value for c in Case])
    def test_linear_complement(self, system, case):
        report = system.wpt_solve(case, 3, seed=2)
        assert report.passed
        assert report.verdicts['complement'] and report.verdicts['unit']

    @pytest.mark.parametrize("seed, theta1", [(1, '0'), (8, '-3')])
    def test_closed_form_matches_solver(self, system, seed, theta1):
        report = system.wpt_solve('reg', 3, seed=seed, mode='closed-form', theta1=theta1)
        assert report.passed
        assert report.verdicts['agreement']
        assert report.result['theta'][0] == theta1
        assert set(report.result['xi']) == {f"{i},{j}" for i in (1, 2, 3) for j in (1, 2, 3) if i != j}

    def test_unknown_mode(self, system):
        with pytest.raises(InvalidParameter):
            system.wpt_solve('reg', 3, seed=1, mode='numeric')

    @full_suite
    def test_symbolic_mode(self, system):
        report = system.wpt_solve('pnop', 3, seed=3, mode='symbolic')
        assert report.passed
        assert report.result['lemma_free'] == []


class TestLemmas:
    @pytest.mark.parametrize("case, free", [("regop", 0), ("pnop", 0)])
    def test_exhaustive_opposite_cases(self, system, case, free):
        report = system.lemma_derive(case, 3)
        assert report.passed
        assert report.result['system']['free_count'] == free

    def test_n_below_three(self, system):
        with pytest.raises(InvalidParameter):
            system.lemma_derive('reg', 2)
