"""
Bimodules and Split Null Extensions
Regular and opposite bimodules, J + M with M.M = 0, and Jordan-bimodule checks
"""

import asyncio
from dataclasses import dataclass
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Tuple

try:
    from .errors import DimensionMismatch, InvalidParameter
    from .graded import Element, GradedAlgebra, GradedBasis, Label, algebra_to_json
    from .scalars import coefficient_to_json
    from .base_check import Report, combine_reports, report_limit
    from .identities import SuperJordanCheck, SupercommutativityCheck
except ImportError:
    from errors import DimensionMismatch, InvalidParameter
    from graded import Element, GradedAlgebra, GradedBasis, Label, algebra_to_json
    from scalars import coefficient_to_json
    from base_check import Report, combine_reports, report_limit
    from identities import SuperJordanCheck, SupercommutativityCheck


OP_MARK = "^op"

# Module labels of the regular bimodule: u_i <-> v_i, h_i <-> g_i, s_ij <-> z_ij.
REG_RENAMES: Dict[str, str] = {'u': 'v', 'h': 'g', 's': 'z'}

# Module labels of the skew space: a_i <-> w_i, b_i <-> y_i, c_ij <-> x_ij.
SKEW_RENAMES: Dict[str, str] = {'a': 'w', 'b': 'y', 'c': 'x'}


class BimoduleAction:
    """
    Left action act[(i, m)] of algebra basis element i on module basis element m.

    The right action is never stored: m.a = (-1)^{|a||m|} a.m.
    """

    def __init__(self, algebra: GradedAlgebra, module: GradedBasis,
                 act: Mapping[Tuple[int, int], Mapping[int, Any]], name: str = "module"):
        self.algebra = algebra
        self.module = module
        self.name = name
        self.act: Dict[Tuple[int, int], Dict[int, Any]] = {}
        for (i, m), terms in act.items():
            if not (0 <= i < algebra.dim and 0 <= m < module.dim):
                raise DimensionMismatch(f"Action entry ({i}, {m}) outside the bases")
            clean = {}
            for k, v in terms.items():
                if not v:
                    continue
                if not 0 <= k < module.dim:
                    raise DimensionMismatch(f"Action ({i}, {m}) has term {k} outside the module")
                if module.parities[k] != (algebra.parities[i] + module.parities[m]) % 2:
                    raise InvalidParameter(
                        f"{algebra.basis.label(i)}.{module.label(m)} has a term on "
                        f"{module.label(k)} of the wrong parity"
                    )
                clean[k] = v
            if clean:
                self.act[(i, m)] = clean

    @property
    def dim(self) -> int:
        return self.module.dim

    def left(self, i: int, m: int) -> Dict[int, Any]:
        return self.act.get((i, m), {})

    def right(self, m: int, i: int) -> Dict[int, Any]:
        terms = self.left(i, m)
        if self.algebra.parities[i] and self.module.parities[m]:
            return {k: -v for k, v in terms.items()}
        return dict(terms)

    def with_action(self, changes: Mapping[Tuple[int, int], Mapping[int, Any]], name: str = None) -> "BimoduleAction":
        """Copy with some action entries replaced."""
        act: Dict[Tuple[int, int], Mapping[int, Any]] = dict(self.act)
        act.update(changes)
        return BimoduleAction(self.algebra, self.module, act, name=name or self.name)

    def to_json(self) -> Dict[str, Any]:
        """Module basis plus the left action in the structure-constant term format."""
        return {
            "algebra": self.algebra.name,
            "basis": [{"name": str(lab), "parity": p} for lab, p in self.module],
            "action": [
                {
                    "i": i,
                    "m": m,
                    "terms": [{"k": k, "coef": coefficient_to_json(v)} for k, v in sorted(terms.items())],
                }
                for (i, m), terms in sorted(self.act.items())
            ],
        }

    def __repr__(self) -> str:
        return f"BimoduleAction({self.name!r}, dim={self.dim}, over {self.algebra.name})"


def _renamed_family(family: str, mapping: Mapping[str, str]) -> str:
    base, op, rest = family.partition("^")
    return mapping.get(base, base) + op + rest


def relabel(action: BimoduleAction, mapping: Mapping[str, str], name: str = None) -> BimoduleAction:
    """Rename module label families (the ^op mark is kept)."""
    symmetries = dict(action.module.symmetries)
    for old, new in mapping.items():
        if old in symmetries:
            symmetries[new] = symmetries[old]
    entries = [(Label(_renamed_family(lab.family, mapping), lab.indices), p) for lab, p in action.module]
    module = GradedBasis(entries, symmetries)
    return BimoduleAction(action.algebra, module, action.act, name=name or action.name)


def regular_bimodule(alg: GradedAlgebra, mapping: Optional[Mapping[str, str]] = None) -> BimoduleAction:
    """Reg J: a copy of J acted on by J's own product, labels renamed by `mapping`."""
    mapping = dict(REG_RENAMES if mapping is None else mapping)
    # families without a new name get a prime so the extension basis stays unique
    for lab in alg.basis.labels:
        mapping.setdefault(lab.family, lab.family + "'")
    copy = BimoduleAction(alg, GradedBasis(list(alg.basis), alg.basis.symmetries), alg.table,
                          name=f"Reg({alg.name})")
    return relabel(copy, mapping)


def opposite_bimodule(m: BimoduleAction) -> BimoduleAction:
    """M^op: parities flipped and a.m^op = (-1)^{|a|} (a.m)^op."""
    entries = []
    for lab, p in m.module:
        if lab.family.endswith(OP_MARK):
            family = lab.family[:-len(OP_MARK)]
        else:
            family = lab.family + OP_MARK
        entries.append((Label(family, lab.indices), 1 - p))
    module = GradedBasis(entries, m.module.symmetries)
    act = {}
    for (i, mm), terms in m.act.items():
        if m.algebra.parities[i]:
            act[(i, mm)] = {k: -v for k, v in terms.items()}
        else:
            act[(i, mm)] = terms
    if m.name.endswith(OP_MARK):
        name = m.name[:-len(OP_MARK)]
    else:
        name = m.name + OP_MARK
    return BimoduleAction(m.algebra, module, act, name=name)


@dataclass
class SplitNullExtension:
    """E = J + M: ambient algebra with J on indices [0, offset) and M after it."""
    ambient: GradedAlgebra
    base: GradedAlgebra
    module: BimoduleAction

    @property
    def offset(self) -> int:
        return self.base.dim

    @property
    def dim(self) -> int:
        return self.ambient.dim

    @property
    def radical(self) -> List[int]:
        return list(range(self.offset, self.ambient.dim))

    @property
    def algebra_indices(self) -> List[int]:
        return list(range(self.offset))

    def embed_algebra(self, x: Element) -> Element:
        if x.dim != self.base.dim:
            raise DimensionMismatch(f"Element of size {x.dim} is not in {self.base.name}")
        return Element._raw(self.dim, dict(x.coeffs))

    def embed_module(self, m: Element) -> Element:
        if m.dim != self.module.dim:
            raise DimensionMismatch(f"Element of size {m.dim} is not in {self.module.name}")
        return Element._raw(self.dim, {self.offset + k: v for k, v in m.coeffs.items()})

    def radical_elements(self) -> List[Element]:
        return [self.ambient.basis_element(k) for k in self.radical]

    def to_json(self) -> Dict[str, Any]:
        return algebra_to_json(self.ambient, self.radical)


def split_null_extension(alg: GradedAlgebra, m: BimoduleAction, name: str = None) -> SplitNullExtension:
    """
    Build J + M with M.M = 0.

    Args:
        alg: The algebra J
        m: A module over alg (left action only)

    Returns:
        The extension; its radical is the module block
    """
    if m.algebra is not alg and m.algebra.dim != alg.dim:
        raise DimensionMismatch(f"{m.name} does not act on {alg.name}")
    d = alg.dim
    basis = alg.basis.concat(m.module)
    table: Dict[Tuple[int, int], Dict[int, Any]] = {key: terms for key, terms in alg.table.items()}
    for (i, mm), terms in m.act.items():
        table[(i, d + mm)] = {d + k: v for k, v in terms.items()}
        table[(d + mm, i)] = {d + k: v for k, v in m.right(mm, i).items()}
    ambient = GradedAlgebra(basis, table, name=name or f"{alg.name}+{m.name}")
    return SplitNullExtension(ambient, alg, m)


def check_jordan_bimodule(alg: GradedAlgebra, m: BimoduleAction) -> Report:
    """m is a Jordan bimodule iff J + M is a Jordan superalgebra."""
    ext = split_null_extension(alg, m)

    async def _run() -> List[Report]:
        commutative = await SupercommutativityCheck(ext.ambient).run()
        jordan = await SuperJordanCheck(ext.ambient).run()
        return [commutative, jordan]

    report = combine_reports(f"jordan_bimodule[{m.name}]", asyncio.run(_run()))
    report.details['dimension'] = ext.dim
    return report


def unit_element(ext: SplitNullExtension) -> Element:
    """1~ = sum of the lifted diagonal idempotents u_i."""
    idx = [k for k, lab in enumerate(ext.ambient.basis.labels[:ext.offset])
           if lab.family == 'u' and len(lab.indices) == 1]
    if not idx:
        raise InvalidParameter(f"{ext.ambient.name} has no u_i idempotents")
    return Element(ext.dim, {k: Fraction(1) for k in idx})


def verify_unit(alg: GradedAlgebra, unit: Element) -> Report:
    """unit.b = b = b.unit for every basis element b."""
    limit = report_limit()
    violations = []
    count = 0
    for k in range(alg.dim):
        b = alg.basis_element(k)
        if alg.multiply(unit, b) != b or alg.multiply(b, unit) != b:
            count += 1
            if len(violations) < limit:
                violations.append({"basis": str(alg.basis.label(k))})
    return Report(name="unit", passed=count == 0, checked=alg.dim,
                  violation_count=count, violations=violations)
