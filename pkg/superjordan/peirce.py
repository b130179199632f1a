"""
Peirce Decomposition
Orthogonal idempotents, simultaneous eigenspaces and the Peirce multiplication rules
"""

from dataclasses import dataclass, field
from fractions import Fraction
from itertools import combinations
from typing import Any, Dict, List, Optional, Sequence, Tuple, Union

try:
    from .errors import DecompositionIncomplete, NonHomogeneousError
    from .graded import Element, GradedAlgebra
    from .linalg import Echelon, Vector, kernel, rank, same_span
    from .base_check import Report, report_limit
except ImportError:
    from errors import DecompositionIncomplete, NonHomogeneousError
    from graded import Element, GradedAlgebra
    from linalg import Echelon, Vector, kernel, rank, same_span
    from base_check import Report, report_limit


HALF = Fraction(1, 2)
Key = Tuple[int, int]


def _key(i: int, j: int) -> Key:
    return (i, j) if i <= j else (j, i)


def verify_orthogonal_idempotents(alg: GradedAlgebra, es: Sequence[Element]) -> Report:
    """e_i^2 = e_i, e_i e_j = 0 for i != j, and sum(e_i) acts as the unit."""
    limit = report_limit()
    violations: List[Dict[str, Any]] = []
    count = 0
    checked = 0

    def record(entry: Dict[str, Any]) -> None:
        nonlocal count
        count += 1
        if len(violations) < limit:
            violations.append(entry)

    for a, e in enumerate(es):
        if e and alg.basis.parity_of(e) != 0:
            record({"kind": "parity", "idempotent": a + 1})
    for a, e in enumerate(es):
        for b, f in enumerate(es):
            checked += 1
            prod = alg.multiply(e, f)
            expected = e if a == b else Element.zero(alg.dim)
            if prod != expected:
                record({
                    "kind": "idempotent" if a == b else "orthogonal",
                    "pair": [a + 1, b + 1],
                    "product": prod.format(alg.basis),
                })

    total = Element.zero(alg.dim)
    for e in es:
        total = total + e
    for k in range(alg.dim):
        checked += 1
        x = alg.basis_element(k)
        if alg.multiply(total, x) != x or alg.multiply(x, total) != x:
            record({"kind": "unit", "basis": str(alg.basis.label(k))})

    return Report(name="orthogonal_idempotents", passed=count == 0, checked=checked,
                  violation_count=count, violations=violations)


@dataclass
class PeirceDecomposition:
    """
    Components J_ii and J_ij (i < j, 1-based keys) with canonical row-reduced bases.
    """
    algebra: GradedAlgebra
    idempotents: List[Element]
    components: Dict[Key, List[Vector]] = field(default_factory=dict)

    @property
    def size(self) -> int:
        return len(self.idempotents)

    def component(self, i: int, j: int) -> List[Vector]:
        return self.components[_key(i, j)]

    def component_elements(self, i: int, j: int) -> List[Element]:
        return [Element(self.algebra.dim, v) for v in self.component(i, j)]

    def dims(self) -> Dict[Key, int]:
        return {key: len(vs) for key, vs in self.components.items()}


def peirce_decompose(alg: GradedAlgebra, es: Sequence[Element]) -> PeirceDecomposition:
    """
    Simultaneous eigenspaces of the left multiplications by the idempotents.

    Raises:
        DecompositionIncomplete: the components do not span the algebra
    """
    for e in es:
        if e and alg.basis.parity_of(e) != 0:
            raise NonHomogeneousError(f"Idempotent {e.format(alg.basis)} is not even")
    d = alg.dim
    ops = [alg.left_columns(e) for e in es]

    def shifted(cols: List[Vector], eigen: Fraction) -> List[Vector]:
        out = []
        for k, col in enumerate(cols):
            v = dict(col)
            v[k] = v.get(k, Fraction(0)) - eigen
            out.append({i: c for i, c in v.items() if c})
        return out

    components: Dict[Key, List[Vector]] = {}
    for a in range(len(es)):
        components[(a + 1, a + 1)] = kernel(shifted(ops[a], Fraction(1)))
    for a, b in combinations(range(len(es)), 2):
        first = shifted(ops[a], HALF)
        second = shifted(ops[b], HALF)
        stacked = []
        for k in range(d):
            v = dict(first[k])
            v.update({d + i: c for i, c in second[k].items()})
            stacked.append(v)
        components[(a + 1, b + 1)] = kernel(stacked)

    everything = [v for vs in components.values() for v in vs]
    total = sum(len(vs) for vs in components.values())
    spanned = rank(everything)
    if spanned != d or total != d:
        raise DecompositionIncomplete(
            f"Peirce components of {alg.name} span {spanned} of {d} dimensions "
            f"(sum of component dimensions {total})"
        )
    return PeirceDecomposition(alg, list(es), components)


def _target(a: Key, b: Key) -> Optional[List[Key]]:
    """Components that J_a J_b must land in; [] means the product must vanish."""
    sa, sb = set(a), set(b)
    if a == b:
        i, j = a
        return [(i, i)] if i == j else [(i, i), (j, j)]
    shared = sa & sb
    if not shared:
        return []
    s = shared.pop()
    p = next(iter(sa - {s}), s)
    q = next(iter(sb - {s}), s)
    return [_key(p, q)]


def check_peirce_relations(d: PeirceDecomposition) -> Report:
    """
    Exact membership tests on all products of component basis vectors:
    J_ij^2 in J_ii + J_jj, J_ij J_jk in J_ik, and J_ij J_kl = 0 for disjoint pairs.
    """
    alg = d.algebra
    limit = report_limit()
    violations: List[Dict[str, Any]] = []
    count = 0
    checked = 0
    families = {"square": 0, "chain": 0, "disjoint": 0}
    spans: Dict[Tuple[Key, ...], Echelon] = {}

    for a, va in d.components.items():
        for b, vb in d.components.items():
            target = tuple(_target(a, b))
            family = "square" if a == b else ("disjoint" if not target else "chain")
            if target not in spans:
                ech = Echelon()
                for key in target:
                    for v in d.components[key]:
                        ech.add(v)
                spans[target] = ech
            ech = spans[target]
            for x in va:
                for y in vb:
                    checked += 1
                    families[family] += 1
                    prod = alg.multiply(Element(alg.dim, x), Element(alg.dim, y))
                    rest = ech.reduce(prod.vector())
                    if rest:
                        count += 1
                        if len(violations) < limit:
                            violations.append({
                                "family": family,
                                "components": [list(a), list(b)],
                                "target": [list(t) for t in target],
                                "escaping": Element(alg.dim, rest).format(alg.basis),
                            })
    return Report(name="peirce_relations", passed=count == 0, checked=checked,
                  violation_count=count, violations=violations, details={"checked_by_family": families})


def peirce_summary(d: PeirceDecomposition, radical: Optional[Sequence[int]] = None) -> List[Dict[str, Any]]:
    """One row per component: dimension split by parity and by algebra/radical part."""
    alg = d.algebra
    radical_vectors = [{k: Fraction(1)} for k in (radical or [])]
    rows = []
    for key in sorted(d.components):
        vs = d.components[key]
        even = sum(1 for v in vs if alg.basis.parity_of(Element(alg.dim, v)) == 0)
        row: Dict[str, Any] = {
            "component": f"{key[0]}{key[1]}" if max(key) < 10 else f"{key[0]},{key[1]}",
            "dim": len(vs),
            "even": even,
            "odd": len(vs) - even,
        }
        if radical is not None:
            meet = len(vs) + len(radical_vectors) - rank(vs + radical_vectors)
            row["radical"] = meet
            row["algebra"] = len(vs) - meet
        row["basis"] = [Element(alg.dim, v).format(alg.basis) for v in vs]
        rows.append(row)
    return rows


def same_subspace(a: Sequence[Union[Element, Vector]], b: Sequence[Union[Element, Vector]]) -> bool:
    """Equality of spans by row-reduced comparison."""
    def vectors(items):
        return [x.vector() if isinstance(x, Element) else dict(x) for x in items]
    return same_span(vectors(a), vectors(b))
