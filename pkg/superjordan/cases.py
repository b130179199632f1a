"""
Radical Cases
The four irreducible square-zero radicals over JP_n and their split null extensions
"""

from enum import Enum
from typing import Optional, Tuple

try:
    from .errors import InvalidParameter
    from .graded import GradedAlgebra
    from .bimodules import (SKEW_RENAMES, SplitNullExtension, opposite_bimodule, regular_bimodule,
                            relabel, split_null_extension)
    from .matrix_models import NamedBasis, build_jpn, build_pn_action
except ImportError:
    from errors import InvalidParameter
    from graded import GradedAlgebra
    from bimodules import (SKEW_RENAMES, SplitNullExtension, opposite_bimodule, regular_bimodule,
                           relabel, split_null_extension)
    from matrix_models import NamedBasis, build_jpn, build_pn_action


class Case(str, Enum):
    REG = "reg"
    REGOP = "regop"
    PN = "pn"
    PNOP = "pnop"

    @property
    def is_opposite(self) -> bool:
        return self in (Case.REGOP, Case.PNOP)

    @property
    def is_regular(self) -> bool:
        return self in (Case.REG, Case.REGOP)


def parse_case(value) -> Case:
    """Accept 'reg', 'Reg', 'RegOp', 'reg-op', 'P_n^op', ... ."""
    if isinstance(value, Case):
        return value
    key = str(value).lower().replace("_", "").replace("-", "").replace("^", "")
    try:
        return Case(key)
    except ValueError:
        raise InvalidParameter(f"Unknown case {value!r}; expected one of reg, regop, pn, pnop")


def build_case_extension(case, n: int,
                         jpn: Optional[Tuple[GradedAlgebra, NamedBasis]] = None) -> SplitNullExtension:
    """
    JP_n + M for M in Reg, Reg^op, P_n, P_n^op.

    Module labels: v/g/z for the regular bimodule, w/y/x for the skew space,
    with ^op on the opposites.
    """
    case = parse_case(case)
    if n < 3:
        raise InvalidParameter(f"Radical cases are defined for n >= 3, got {n}")
    alg, named = jpn or build_jpn(n)
    if case.is_regular:
        module = regular_bimodule(alg)
    else:
        module = relabel(build_pn_action(n, (alg, named)), SKEW_RENAMES)
    if case.is_opposite:
        module = opposite_bimodule(module)
    return split_null_extension(alg, module, name=f"JP_{n}+{case.value}")
