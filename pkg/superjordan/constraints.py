"""
Constraint Systems
Affine equations in named unknowns and their exact echelon reduction
"""

import logging
from dataclasses import dataclass, field
from typing import Any, Dict, Iterable, List, Optional, Set

try:
    from .scalars import AffineForm, Unknown, as_affine, scalar_to_json
except ImportError:
    from scalars import AffineForm, Unknown, as_affine, scalar_to_json


logger = logging.getLogger("constraints")

# Each row is solved for its earliest unknown in this order. An unknown of any
# family stays free when every row containing it has an earlier pivot, so free
# Lambda and beta unknowns do occur next to the eta ones.
FAMILY_ORDER: Dict[str, int] = {'Lambda': 0, 'beta': 1, 'gamma': 2, 'alpha': 3, 'eta': 4}


def unknown_order(u: Unknown) -> tuple:
    return (FAMILY_ORDER.get(u.family, len(FAMILY_ORDER)), u.family, u.indices, u.target)


@dataclass
class ConstraintSystem:
    """
    Affine equations (each required to vanish) plus, once reduced, the solution.

    After reduce_constraints(): `solved` maps each pivot unknown to its value in
    the free unknowns, `free` lists the remaining unknowns, and an inconsistent
    system carries the contradicting equation in `certificate`.
    """
    equations: List[AffineForm] = field(default_factory=list)
    unknowns: Set[Unknown] = field(default_factory=set)
    solved: Dict[Unknown, AffineForm] = field(default_factory=dict)
    free: List[Unknown] = field(default_factory=list)
    inconsistent: bool = False
    certificate: Optional[AffineForm] = None
    reduced: bool = False

    def declare(self, unknowns: Iterable[Unknown]) -> None:
        self.unknowns.update(unknowns)

    def add(self, equation: Any) -> None:
        form = as_affine(equation)
        if form:
            self.equations.append(form)
            self.unknowns.update(form.unknowns())

    def extend(self, equations: Iterable[Any]) -> None:
        for eq in equations:
            self.add(eq)

    @property
    def consistent(self) -> bool:
        return not self.inconsistent

    def value(self, unknown: Unknown) -> AffineForm:
        """Value of an unknown in terms of the free unknowns."""
        self._require_reduced()
        if unknown in self.solved:
            return self.solved[unknown]
        return AffineForm.of(unknown)

    def evaluate(self, form: Any) -> AffineForm:
        self._require_reduced()
        return as_affine(form).substitute(self.solved)

    def implies(self, form: Any) -> bool:
        """True when form = 0 holds for every solution of the system."""
        return not self.evaluate(form)

    def _require_reduced(self) -> None:
        if not self.reduced:
            raise ValueError("ConstraintSystem must be reduced first (reduce_constraints)")

    def to_json(self) -> Dict[str, Any]:
        payload: Dict[str, Any] = {
            "consistent": self.consistent,
            "equation_count": len(self.equations),
            "unknown_count": len(self.unknowns),
            "free": [str(u) for u in self.free],
            "free_count": len(self.free),
            "solved": [
                {"unknown": str(u), "value": str(self.solved[u]), "form": self.solved[u].to_json()}
                for u in sorted(self.solved, key=unknown_order)
            ],
        }
        if self.certificate is not None:
            payload["certificate"] = {
                "equation": str(self.certificate),
                "constant": scalar_to_json(self.certificate.constant),
            }
        return payload


def _monic(form: AffineForm) -> AffineForm:
    lead = min(form.terms, key=unknown_order)
    return form / form.terms[lead]


def reduce_constraints(cs: ConstraintSystem) -> ConstraintSystem:
    """
    Gauss-Jordan elimination with deterministic pivoting.

    The pivot of each new row is its first unknown in `unknown_order`.
    Duplicate equations (up to scaling) are reduced once.

    Returns:
        A new, reduced ConstraintSystem over the same equations
    """
    rows: Dict[Unknown, AffineForm] = {}
    occurs: Dict[Unknown, Set[Unknown]] = {}
    seen: Set[AffineForm] = set()
    inconsistent = False
    certificate: Optional[AffineForm] = None

    for eq in cs.equations:
        if not eq.terms:
            if eq.constant and not inconsistent:
                inconsistent, certificate = True, eq
            continue
        key = _monic(eq)
        if key in seen:
            continue
        seen.add(key)

        form = eq
        for u in [u for u in eq.terms if u in rows]:
            coef = form.coefficient(u)
            if coef:
                form = form - rows[u] * coef
        if not form.terms:
            if form.constant and not inconsistent:
                inconsistent, certificate = True, eq
            continue

        pivot = min(form.terms, key=unknown_order)
        form = form / form.terms[pivot]
        for p in occurs.pop(pivot, set()):
            row = rows[p]
            coef = row.coefficient(pivot)
            if not coef:
                continue
            row = row - form * coef
            rows[p] = row
            for u in row.terms:
                if u != p:
                    occurs.setdefault(u, set()).add(p)
        rows[pivot] = form
        for u in form.terms:
            if u != pivot:
                occurs.setdefault(u, set()).add(pivot)

    unknowns = set(cs.unknowns)
    for eq in cs.equations:
        unknowns.update(eq.unknowns())

    solved = {p: -(row - AffineForm.of(p)) for p, row in rows.items()}
    free = sorted((u for u in unknowns if u not in rows), key=unknown_order)
    logger.info(f"Reduced {len(cs.equations)} equations: {len(solved)} solved, "
                f"{len(free)} free, consistent={not inconsistent}")
    return ConstraintSystem(
        equations=list(cs.equations),
        unknowns=unknowns,
        solved=solved,
        free=free,
        inconsistent=inconsistent,
        certificate=certificate,
        reduced=True,
    )
