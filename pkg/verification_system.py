"""
Super-Jordan Verification - Run Coordination Controller
Builds algebras, fans checks out concurrently and assembles deterministic run reports
"""

import asyncio
import json
import logging
import os
import time
from dataclasses import dataclass, field
from typing import Any, Awaitable, Dict, List, Optional, Sequence, Tuple

try:
    from superjordan import (
        Case,
        Element,
        GradedAlgebra,
        InvalidParameter,
        Label,
        Report,
        SplitNullExtension,
        SuperJordanCheck,
        SupercommutativityCheck,
        algebra_from_json,
        algebra_to_json,
        build_case_extension,
        build_jpn,
        build_mnn,
        build_pn_action,
        case1_correction,
        check_peirce_relations,
        complement_unit,
        derive_case,
        parse_case,
        peirce_decompose,
        peirce_summary,
        read_xi,
        same_subspace,
        shear_twist,
        solve_complement,
        verify_complement,
        verify_orthogonal_idempotents,
        verify_unit,
        xi_pattern_twist,
    )
    from superjordan.base_check import combine_reports, configure_logging
except ImportError as e:
    raise ImportError(f"superjordan package is required: {e}") from e


CHECKS = ('supercomm', 'jordan', 'peirce')
BUILD_TARGETS = ('jpn', 'pn', 'mnn', 'extension')
WPT_MODES = ('linear', 'closed-form', 'symbolic')


@dataclass
class RunReport:
    """Report structure for one CLI command."""
    command: str
    parameters: Dict[str, Any]
    verdicts: Dict[str, bool] = field(default_factory=dict)
    counterexamples: Dict[str, List[Dict[str, Any]]] = field(default_factory=dict)
    result: Dict[str, Any] = field(default_factory=dict)
    wall_time: Optional[float] = None

    @property
    def passed(self) -> bool:
        return all(self.verdicts.values())

    def add(self, report: Report) -> None:
        self.verdicts[report.name] = report.passed
        if report.violations:
            self.counterexamples[report.name] = report.violations
        if 'error' in report.details:
            self.counterexamples.setdefault(report.name, []).append({'error': report.details['error']})

    def to_dict(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            'command': self.command,
            'parameters': self.parameters,
            'passed': self.passed,
            'verdicts': self.verdicts,
            'counterexamples': self.counterexamples,
            'result': self.result,
        }
        if self.wall_time is not None:
            payload['wall_time'] = round(self.wall_time, 3)
        return payload

    def to_json(self) -> str:
        return json.dumps(self.to_dict(), indent=2, sort_keys=True)


class VerificationSystem:
    """
    Main controller that builds the requested structures, runs the checks
    concurrently with per-check timeouts and produces RunReports.
    """

    def __init__(self):
        self.logger = logging.getLogger("VerificationSystem")
        self._setup_logging()
        self.config = self._load_config()

    def _setup_logging(self):
        """Setup logging configuration for the system."""
        configure_logging("VerificationSystem")

    def _load_config(self) -> Dict[str, Any]:
        """Load system configuration."""
        return {
            'check_timeout': float(os.getenv('JPN_CHECK_TIMEOUT', '1800')),
            'workers': max(1, int(os.getenv('JPN_WORKERS', '1'))),
        }

    async def _run_with_timeout(self, coro: Awaitable[Report], check_name: str) -> Report:
        """Run a check coroutine with a per-check timeout; failures become failed reports."""
        timeout_seconds = self.config['check_timeout']
        try:
            return await asyncio.wait_for(coro, timeout=timeout_seconds)
        except asyncio.TimeoutError:
            self.logger.error(f"Check {check_name} timed out after {timeout_seconds}s")
            return Report(name=check_name, passed=False, details={'error': f"timed out after {timeout_seconds}s"})
        except Exception as e:
            self.logger.error(f"Check {check_name} failed: {e}")
            return Report(name=check_name, passed=False, details={'error': str(e)})

    async def _run_checks_concurrently(self, checks: Dict[str, Awaitable[Report]]) -> List[Report]:
        wrapped = [self._run_with_timeout(coro, name) for name, coro in checks.items()]
        reports = await asyncio.gather(*wrapped)
        # names come from the requested order, not from completion order
        for name, report in zip(checks, reports):
            report.name = name
        return list(reports)

    # Building

    def resolve_target(self, target: str, n: Optional[int] = None, case: Optional[str] = None,
                       path: Optional[str] = None) -> Tuple[GradedAlgebra, Optional[List[int]]]:
        """
        Algebra to check: a built target or a structure-constant JSON file.

        Returns:
            (algebra, radical indices or None)
        """
        if path:
            try:
                with open(path, 'r') as f:
                    payload = json.load(f)
            except (OSError, json.JSONDecodeError) as e:
                raise InvalidParameter(f"Cannot read structure constants from {path}: {e}") from e
            return algebra_from_json(payload, name=os.path.basename(path))
        if n is None:
            raise InvalidParameter("--n is required unless a JSON file is given")
        if target == 'jpn':
            alg, _ = build_jpn(n)
            return alg, None
        if target == 'mnn':
            return build_mnn(n), None
        if target == 'extension':
            ext = build_case_extension(parse_case(case or 'reg'), n)
            return ext.ambient, ext.radical
        raise InvalidParameter(f"Unknown target {target!r}; expected jpn, mnn, extension or a JSON file")

    def build(self, target: str, n: int, case: Optional[str] = None) -> RunReport:
        """Structure constants of JP_n, the P_n action, M_{n|n}^+ or an extension."""
        self.logger.info(f"Building {target} for n={n}")
        parameters = {'target': target, 'n': n}
        if target == 'pn':
            if n < 3:
                raise InvalidParameter(f"P_n is defined for n >= 3, got {n}")
            action = build_pn_action(n)
            payload = action.to_json()
            dim = action.dim
        elif target in BUILD_TARGETS:
            alg, radical = self.resolve_target(target, n, case)
            payload = algebra_to_json(alg, radical)
            dim = alg.dim
            if target == 'extension':
                parameters['case'] = parse_case(case or 'reg').value
        else:
            raise InvalidParameter(f"Unknown build target {target!r}")
        report = RunReport(command='build', parameters=parameters, result=payload)
        report.verdicts['built'] = True
        report.result['dim'] = dim
        return report

    # Checks

    @staticmethod
    def diagonal_idempotents(alg: GradedAlgebra) -> List[Element]:
        """The u_i (i = 1..n) of JP_n or of an extension."""
        found = sorted(
            (lab.indices[0], k) for k, lab in enumerate(alg.basis.labels)
            if lab.family == 'u' and len(lab.indices) == 1
        )
        if not found:
            raise InvalidParameter(f"{alg.name} has no u_i idempotents for a Peirce decomposition")
        return [alg.basis_element(k) for _, k in found]

    def _peirce_reports(self, alg: GradedAlgebra, radical: Optional[Sequence[int]]) -> Tuple[Report, List[Dict[str, Any]]]:
        es = self.diagonal_idempotents(alg)
        idempotents = verify_orthogonal_idempotents(alg, es)
        decomposition = peirce_decompose(alg, es)
        relations = check_peirce_relations(decomposition)
        report = combine_reports('peirce', [idempotents, relations])
        return report, peirce_summary(decomposition, radical)

    async def check(self, checks: Sequence[str], target: str = 'jpn', n: Optional[int] = None,
                    case: Optional[str] = None, path: Optional[str] = None) -> RunReport:
        """
        Run the requested checks on one algebra.

        Args:
            checks: Subset of supercomm, jordan, peirce
            target: jpn, mnn or extension (ignored when path is given)
            n: Size parameter
            case: Radical case for target=extension
            path: Structure-constant JSON file

        Returns:
            RunReport with one verdict per check
        """
        unknown_checks = [c for c in checks if c not in CHECKS]
        if unknown_checks or not checks:
            raise InvalidParameter(f"Unknown checks {unknown_checks}; expected a subset of {list(CHECKS)}")
        alg, radical = self.resolve_target(target, n, case, path)
        parameters: Dict[str, Any] = {'checks': list(checks), 'target': path or target, 'n': n}
        if target == 'extension' and not path:
            parameters['case'] = parse_case(case or 'reg').value
        self.logger.info(f"Checking {alg.name} (dim {alg.dim}): {', '.join(checks)}")

        peirce_rows: List[Dict[str, Any]] = []

        async def peirce() -> Report:
            report, rows = await asyncio.to_thread(self._peirce_reports, alg, radical)
            peirce_rows.extend(rows)
            return report

        coroutines: Dict[str, Awaitable[Report]] = {}
        for name in CHECKS:
            if name not in checks:
                continue
            if name == 'supercomm':
                coroutines[name] = SupercommutativityCheck(alg).run()
            elif name == 'jordan':
                coroutines[name] = SuperJordanCheck(alg).run()
            else:
                coroutines[name] = peirce()

        report = RunReport(command='check', parameters=parameters)
        for r in await self._run_checks_concurrently(coroutines):
            report.add(r)
        report.result['dim'] = alg.dim
        if peirce_rows:
            report.result['peirce'] = peirce_rows
        return report

    def tables(self, n: int, module: str = 'jpn') -> RunReport:
        """Named multiplication table of JP_n (or the P_n action), one row per nonzero product."""
        alg, _ = build_jpn(n)
        rows = []
        if module == 'pn':
            action = build_pn_action(n)
            for (i, m), terms in sorted(action.act.items()):
                rows.append({
                    'left': str(alg.basis.label(i)),
                    'right': str(action.module.label(m)),
                    'product': Element(action.dim, terms).format(action.module),
                })
        elif module == 'jpn':
            for (i, j), terms in sorted(alg.table.items()):
                rows.append({
                    'left': str(alg.basis.label(i)),
                    'right': str(alg.basis.label(j)),
                    'product': Element(alg.dim, terms).format(alg.basis),
                })
        else:
            raise InvalidParameter(f"Unknown table {module!r}; expected jpn or pn")
        report = RunReport(command='tables', parameters={'n': n, 'module': module})
        report.verdicts['built'] = True
        report.result['rows'] = rows
        return report

    def peirce(self, target: str, n: int, case: Optional[str] = None) -> RunReport:
        """Peirce components of JP_n or an extension, with the multiplication rules checked."""
        alg, radical = self.resolve_target(target, n, case)
        report = RunReport(command='peirce', parameters={'target': target, 'n': n})
        if target == 'extension':
            report.parameters['case'] = parse_case(case or 'reg').value
        peirce_report, rows = self._peirce_reports(alg, radical)
        report.add(peirce_report)
        report.result['components'] = rows
        return report

    # Complements

    def wpt_solve(self, case: str, n: int, seed: int, mode: str = 'linear', theta1: Any = 0) -> RunReport:
        """
        Build a twisted split null extension and construct its Wedderburn complement.

        Modes:
            linear: random shear twist, general linear solver
            closed-form: xi-pattern twist (regular case), theta recurrence, compared with the solver
            symbolic: lemma derivation for the case, then the linear construction
        """
        case_ = parse_case(case)
        if mode not in WPT_MODES:
            raise InvalidParameter(f"Unknown mode {mode!r}; expected one of {list(WPT_MODES)}")
        if mode == 'closed-form' and case_ is not Case.REG:
            raise InvalidParameter("The closed-form correction is defined for the regular case only")
        ext = build_case_extension(case_, n)
        report = RunReport(command='wpt-solve',
                           parameters={'case': case_.value, 'n': n, 'seed': seed, 'mode': mode})
        self.logger.info(f"Solving complement for {ext.ambient.name}, seed {seed}, mode {mode}")

        if mode == 'symbolic':
            _, reduced = derive_case(case_, n)
            report.verdicts['lemma_system_consistent'] = reduced.consistent
            report.result['lemma_free'] = [str(u) for u in reduced.free]

        if mode == 'closed-form':
            self._closed_form(ext, n, seed, theta1, report)
        else:
            twisted, lift = shear_twist(ext, seed)
            complement, corrections = solve_complement(twisted, ext.radical, lift)
            report.add(verify_complement(twisted, complement, ext.radical, reference=ext.base))
            report.add(verify_unit(twisted, complement_unit(complement)))
            report.result['corrections'] = self._corrections_json(twisted, corrections)

        report.result['instance'] = {
            'algebra': ext.ambient.name,
            'dim': ext.dim,
            'radical_dim': len(ext.radical),
        }
        return report

    def _closed_form(self, ext: SplitNullExtension, n: int, seed: int, theta1: Any, report: RunReport) -> None:
        twisted, lift = xi_pattern_twist(ext, seed)
        xi = read_xi(twisted, lift, n)
        plan = case1_correction(xi, theta1, lift, twisted.basis)
        report.add(verify_complement(twisted, plan.corrected, ext.radical, reference=ext.base))
        report.add(verify_unit(twisted, complement_unit(plan.corrected)))

        # the solver, with the theta_1 gauge and the even part pinned, must land on the same span
        pinned = {lab: Element.zero(twisted.dim) for lab in lift if twisted.basis.parity_of(lift[lab]) == 0}
        pinned[Label('h', (1,))] = plan.corrections[Label('h', (1,))]
        solved, _ = solve_complement(twisted, ext.radical, lift, pinned=pinned)
        agree = same_subspace(list(plan.corrected.values()), list(solved.values()))
        report.add(Report(name='agreement', passed=agree, checked=1, violation_count=0 if agree else 1))
        report.parameters['theta1'] = str(theta1)
        report.result['theta'] = [str(t) for t in plan.theta]
        report.result['xi'] = {f"{i},{j}": str(v) for (i, j), v in sorted(xi.items())}
        report.result['corrections'] = self._corrections_json(twisted, plan.corrections)

    @staticmethod
    def _corrections_json(alg: GradedAlgebra, corrections: Dict[Label, Element]) -> Dict[str, Any]:
        return {str(lab): el.format(alg.basis) for lab, el in corrections.items() if el}

    def lemma_derive(self, case: str, n: int, curated: bool = False) -> RunReport:
        """Reduced constraint system of the symbolic lift for one radical case."""
        case_ = parse_case(case)
        mode = 'curated' if curated else 'exhaustive'
        _, reduced = derive_case(case_, n, mode=mode)
        report = RunReport(command='lemma-derive', parameters={'case': case_.value, 'n': n, 'mode': mode})
        report.verdicts['consistent'] = reduced.consistent
        report.result['system'] = reduced.to_json()
        return report

    async def run_timed(self, command: str, coro: Awaitable[RunReport], timing: bool = False) -> RunReport:
        """Await a command and attach wall time when asked."""
        start = time.perf_counter()
        report = await coro
        if timing:
            report.wall_time = time.perf_counter() - start
        self.logger.info(f"{command} finished: {'pass' if report.passed else 'fail'}")
        return report

    def get_system_status(self) -> Dict[str, Any]:
        """Get system configuration."""
        return {
            'status': 'operational',
            'check_timeout': self.config['check_timeout'],
            'workers': self.config['workers'],
            'checks': list(CHECKS),
        }
