"""
Base Check class for the superjordan verification suite
"""

import asyncio
import logging
import os
from abc import ABC, abstractmethod
from concurrent.futures import ProcessPoolExecutor
from dataclasses import dataclass, field
from typing import Any, Callable, Dict, List, Optional


# Per-process state for pool workers (installed by the pool initializer).
_WORKER_STATE: Dict[str, Any] = {}


def _install_state(state: Dict[str, Any]) -> None:
    _WORKER_STATE.clear()
    _WORKER_STATE.update(state)


def worker_state() -> Dict[str, Any]:
    return _WORKER_STATE


def report_limit() -> int:
    """The K of 'first K violations' (JPN_REPORT_LIMIT)."""
    return max(1, int(os.getenv('JPN_REPORT_LIMIT', '10')))


def configure_logging(component: str = "superjordan") -> None:
    """Configure root logging from LOG_LEVEL / JPN_LOG_DIR (stderr, optional file)."""
    log_level = os.getenv('LOG_LEVEL', 'INFO').upper()
    handlers: List[logging.Handler] = [logging.StreamHandler()]

    log_dir = os.getenv('JPN_LOG_DIR')
    if log_dir:
        os.makedirs(log_dir, exist_ok=True)
        handlers.append(logging.FileHandler(os.path.join(log_dir, 'superjordan.log')))

    logging.basicConfig(
        level=getattr(logging, log_level, logging.INFO),
        format=f'%(asctime)s - {component} - %(name)s - %(levelname)s - %(message)s',
        handlers=handlers,
    )


@dataclass
class Report:
    """Outcome of one check: verdict, how much was checked, first violations."""
    name: str
    passed: bool
    checked: int = 0
    violation_count: int = 0
    violations: List[Dict[str, Any]] = field(default_factory=list)
    details: Dict[str, Any] = field(default_factory=dict)

    def __bool__(self) -> bool:
        return self.passed

    def to_dict(self) -> Dict[str, Any]:
        return {
            'name': self.name,
            'passed': self.passed,
            'checked': self.checked,
            'violation_count': self.violation_count,
            'violations': self.violations,
            'details': self.details,
        }


def combine_reports(name: str, reports: List[Report]) -> Report:
    """A report that passes iff every part passes; parts are kept in details."""
    return Report(
        name=name,
        passed=all(r.passed for r in reports),
        checked=sum(r.checked for r in reports),
        violation_count=sum(r.violation_count for r in reports),
        violations=[v for r in reports for v in r.violations],
        details={'parts': [r.to_dict() for r in reports]},
    )


class BaseCheck(ABC):
    """
    Abstract base class for verification checks.
    Provides logging, environment configuration and the chunked workflow:
    fetch_data() evaluates the work, process_data() merges it, respond()
    builds the Report.
    """

    def __init__(self, check_name: str = None):
        """
        Initialize the check with logging and configuration.

        Args:
            check_name: Name of the check for logging and reports
        """
        self.check_name = check_name or self.__class__.__name__
        self.logger = logging.getLogger(self.check_name)
        self.config = self._load_config()

    def _load_config(self) -> Dict[str, Any]:
        """Load check configuration from the environment."""
        return {
            'workers': max(1, int(os.getenv('JPN_WORKERS', '1'))),
            'report_limit': report_limit(),
        }

    @abstractmethod
    async def fetch_data(self) -> Any:
        """
        Evaluate the check's work items.

        Returns:
            Raw per-chunk results
        """
        pass

    @abstractmethod
    def process_data(self, data: Any) -> Any:
        """
        Merge raw results deterministically.

        Args:
            data: Raw data from fetch_data()

        Returns:
            Merged results ready for the report
        """
        pass

    @abstractmethod
    async def respond(self, processed_data: Any) -> Report:
        """
        Build the Report.

        Args:
            processed_data: Output of process_data()

        Returns:
            The check's Report
        """
        pass

    async def map_chunks(self, worker: Callable[[Any], Any], chunks: List[Any],
                         state: Optional[Dict[str, Any]] = None) -> List[Any]:
        """
        Run worker over chunks, in a process pool when JPN_WORKERS > 1.

        Args:
            worker: Module-level function taking one chunk
            chunks: Work items
            state: Shared read-only state installed in every worker process

        Returns:
            Results in chunk order
        """
        state = state or {}
        workers = min(self.config['workers'], max(1, len(chunks)))
        if workers <= 1:
            _install_state(state)
            results = []
            for chunk in chunks:
                # yield between chunks so a wait_for timeout can cancel the check
                await asyncio.sleep(0)
                results.append(worker(chunk))
            return results

        loop = asyncio.get_running_loop()
        pool = ProcessPoolExecutor(max_workers=workers, initializer=_install_state, initargs=(state,))
        try:
            futures = [loop.run_in_executor(pool, worker, chunk) for chunk in chunks]
            return list(await asyncio.gather(*futures))
        finally:
            pool.shutdown(wait=True, cancel_futures=True)

    async def run(self) -> Report:
        """
        Run the complete check workflow.

        Returns:
            Report of the check; unexpected errors become a failed Report
        """
        try:
            self.logger.info(f"Starting {self.check_name}")

            raw_data = await self.fetch_data()
            processed_data = self.process_data(raw_data)
            report = await self.respond(processed_data)

            if report.passed:
                self.logger.info(f"{self.check_name} passed ({report.checked} cases)")
            else:
                self.logger.warning(
                    f"{self.check_name} failed: {report.violation_count} violations in {report.checked} cases"
                )
            return report

        except Exception as e:
            self.logger.error(f"{self.check_name} failed with an error: {e}")
            return Report(name=self.check_name, passed=False, details={'error': str(e)})

    def run_sync(self) -> Report:
        return asyncio.run(self.run())
