"""
Symbolic Lifts
Parametrized lifts of JP_n into J + M and constraint derivation from the super-Jordan identity
"""

import asyncio
from dataclasses import dataclass
from itertools import permutations
from typing import Any, Dict, List, Optional, Sequence, Set, Tuple

try:
    from .base_check import BaseCheck, Report, worker_state
    from .bimodules import OP_MARK, SplitNullExtension
    from .cases import build_case_extension, parse_case
    from .constraints import ConstraintSystem, reduce_constraints
    from .errors import InvalidParameter
    from .graded import Element, GradedAlgebra, GradedBasis, Label
    from .identities import JordanEvaluator, Quadruple
    from .scalars import AffineForm, Unknown
except ImportError:
    from base_check import BaseCheck, Report, worker_state
    from bimodules import OP_MARK, SplitNullExtension
    from cases import build_case_extension, parse_case
    from constraints import ConstraintSystem, reduce_constraints
    from errors import InvalidParameter
    from graded import Element, GradedAlgebra, GradedBasis, Label
    from identities import JordanEvaluator, Quadruple
    from scalars import AffineForm, Unknown


Lift = Dict[Label, Element]

# radical targets named eta (h-products) or gamma (s-products); the rest are alpha / beta
_ETA_TARGETS = {'g', 'y', 'v' + OP_MARK, 'w' + OP_MARK}
_GAMMA_TARGETS = {'g', 'y'}


@dataclass
class Pattern:
    """How one lift product is written: oriented factors, subscripts and result pair."""
    indices: Tuple[int, ...]
    sign: int                       # stored product = sign * oriented product
    pair: Optional[Tuple[int, int]]  # orientation of two-index targets


def _orient(basis: GradedBasis, label: Label) -> int:
    return basis.resolve(label)[1]


def _pattern(basis: GradedBasis, a: Label, b: Label) -> Pattern:
    """
    Subscripts of the unknowns in the product a.b of two lift basis elements.

    a is u or h, b is h or s; the factors are reoriented so that the shared
    index sits where the usual notation puts it (u_ij.s_jl, h_ij.s_jl, ...).
    """
    fa, A = a.family, a.indices
    fb, B = b.family, b.indices

    def oriented(family: str, first: int, second: int) -> int:
        return _orient(basis, Label(family, (first, second)))

    if fa == 'u' and len(A) == 1:
        i = A[0]
        if len(B) == 1:
            return Pattern((i,), 1, None)
        j = B[1] if B[0] == i else B[0]
        return Pattern((i, i, j), oriented(fb, i, j), (i, j))

    if fa == 'u':
        i, j = A
        if fb == 'h' and len(B) == 1:
            return Pattern((i, j, B[0]), 1, (i, j))
        if fb == 'h':
            if set(B) == {i, j}:
                return Pattern((i, j), 1, None)
            l = B[1] if B[0] == i else B[0]
            return Pattern((i, j, i, l), 1, (j, l))
        l = B[1] if B[0] == j else B[0]
        return Pattern((i, j, j, l), oriented(fb, j, l), (i, l))

    if fa == 'h' and len(A) == 1:
        i = A[0]
        j = B[1] if B[0] == i else B[0]
        return Pattern((i, i, j), oriented(fb, i, j), (i, j))

    if set(A) == set(B):
        return Pattern(tuple(sorted(A)), 1, None)
    shared = (set(A) & set(B)).pop()
    i = A[0] if A[1] == shared else A[1]
    l = B[1] if B[0] == shared else B[0]
    return Pattern((i, shared, shared, l), oriented(fb, shared, l), (i, l))


def _family(a: Label, b: Label, target: Label) -> str:
    if a.family == 'h':
        return 'Lambda'
    if b.family == 'h':
        return 'eta' if target.family in _ETA_TARGETS else 'alpha'
    return 'gamma' if target.family in _GAMMA_TARGETS else 'beta'


def _component(label: Label) -> frozenset:
    return frozenset(label.indices)


def _lift_pairs(ext: SplitNullExtension) -> List[Tuple[int, int]]:
    """Even.odd (u.h, u.s) and odd.odd (h.s) lift pairs with nonzero canonical product."""
    alg = ext.ambient
    labels = alg.basis.labels
    pairs = []
    for a in ext.algebra_indices:
        for b in ext.algebra_indices:
            fa, fb = labels[a].family, labels[b].family
            if (fa == 'u' and fb in ('h', 's')) or (fa == 'h' and fb == 's'):
                if alg.product(a, b):
                    pairs.append((a, b))
    return pairs


def symbolic_lift(case: Any, n: int) -> Tuple[SplitNullExtension, Lift]:
    """
    The extension J + M whose lift products carry unknown radical parts.

    Every product of lift basis elements u.h, u.s and h.s with nonzero
    canonical value c gets one unknown per radical basis element of the
    parity of c lying in the Peirce component of a term of c; e.g.
    u_i.h_i = h_i + eta_i g_i and h_ij.s_ij = 1/2(u_j - u_i) + Lambda^i v_i + Lambda^j v_j.
    The reversed products follow by supercommutativity.

    Returns:
        (symbolic extension, lift: canonical label -> lift element)
    """
    case = parse_case(case)
    ext = build_case_extension(case, n)
    alg = ext.ambient
    basis = alg.basis
    labels = basis.labels
    radical = ext.radical

    table: Dict[Tuple[int, int], Dict[int, Any]] = {key: dict(v) for key, v in alg.table.items()}
    for a, b in _lift_pairs(ext):
        la, lb = labels[a], labels[b]
        canonical = alg.product(a, b)
        parity = (alg.parities[a] + alg.parities[b]) % 2
        components = {_component(labels[k]) for k in canonical}
        pattern = _pattern(basis, la, lb)
        terms = dict(canonical)
        for r in radical:
            target = labels[r]
            if alg.parities[r] != parity or _component(target) not in components:
                continue
            sign = pattern.sign
            if len(target.indices) == 2 and pattern.pair and set(pattern.pair) == set(target.indices):
                # target written in the product's orientation
                sign *= _orient(basis, Label(target.family, pattern.pair))
            unknown = Unknown(_family(la, lb, target), pattern.indices, target)
            terms[r] = terms.get(r, 0) + AffineForm.of(unknown, sign)
        table[(a, b)] = terms
        flip = -1 if (alg.parities[a] and alg.parities[b]) else 1
        table[(b, a)] = {k: v * flip for k, v in terms.items()}

    symbolic = GradedAlgebra(basis, table, name=f"{alg.name}[symbolic]")
    ext = SplitNullExtension(symbolic, ext.base, ext.module)
    lift = {labels[k]: symbolic.basis_element(k) for k in ext.algebra_indices}
    return ext, lift


def lift_unknowns(ext: SplitNullExtension) -> Set[Unknown]:
    found: Set[Unknown] = set()
    for terms in ext.ambient.table.values():
        for v in terms.values():
            if isinstance(v, AffineForm):
                found.update(v.unknowns())
    return found


# Substitutions used in the lemma computations, over the letters i, j, l.
CURATED_TEMPLATES: List[Tuple[str, str, str, str]] = [
    ("u_i", "h_i", "u_i", "u_i"),
    ("u_i", "h_ij", "u_i", "u_i"),
    ("u_i", "s_ij", "u_i", "u_i"),
    ("u_ij", "h_i", "h_i", "u_ij"),
    ("u_ij", "h_il", "h_il", "u_ij"),
    ("u_ij", "s_jl", "s_jl", "u_ij"),
    ("h_i", "s_ij", "u_ij", "u_ji"),
    ("h_ij", "s_ij", "u_ij", "u_ji"),
    ("u_ij", "h_il", "u_ji", "u_ij"),
    ("u_i", "h_ij", "u_il", "u_lj"),
    ("u_ij", "s_jl", "u_ji", "u_ij"),
    ("u_ij", "s_jl", "u_jl", "u_li"),
    ("u_i", "h_i", "u_ij", "s_ij"),
    ("u_ij", "s_jl", "h_i", "s_ij"),
    ("u_ij", "s_jl", "h_i", "h_l"),
    ("u_l", "h_l", "s_lj", "h_ji"),
    ("u_ij", "h_i", "u_ij", "u_ij"),
    ("u_ij", "h_i", "h_j", "u_ji"),
    ("u_ij", "h_il", "u_il", "u_li"),
    ("h_ij", "s_ij", "u_ji", "u_ij"),
    ("u_il", "s_lj", "u_li", "h_jl"),
]


def _instantiate(template: str, values: Dict[str, int]) -> Label:
    family, _, letters = template.partition("_")
    return Label(family, tuple(values[ch] for ch in letters))


def curated_instances(ext: SplitNullExtension, n: Optional[int] = None) -> List[Quadruple]:
    """The named substitutions, expanded over all choices of distinct i, j, l."""
    basis = ext.ambient.basis
    n = n or max(i for lab in ext.base.basis.labels for i in lab.indices)
    seen = set()
    quads: List[Quadruple] = []
    for template in CURATED_TEMPLATES:
        for i, j, l in permutations(range(1, n + 1), 3):
            values = {'i': i, 'j': j, 'l': l}
            q = tuple(basis.resolve(_instantiate(t, values))[0] for t in template)
            if q not in seen:
                seen.add(q)
                quads.append(q)
    return quads


def exhaustive_instances(ext: SplitNullExtension) -> List[Quadruple]:
    """Every quadruple of lift basis elements (radical entries contribute nothing)."""
    idx = ext.algebra_indices
    return [(x, y, z, t) for x in idx for y in idx for z in idx for t in idx]


def _derivation_chunk(chunk: Sequence[Quadruple]) -> List[AffineForm]:
    state = worker_state()
    evaluator = state.get('evaluator')
    if evaluator is None:
        evaluator = JordanEvaluator(state['algebra'])
        state['evaluator'] = evaluator
    found: Dict[AffineForm, None] = {}
    for q in chunk:
        for v in evaluator.residual(*q).values():
            form = v if isinstance(v, AffineForm) else AffineForm(v)
            found.setdefault(form, None)
    return list(found)


class ConstraintDerivation(BaseCheck):
    """
    Evaluates the super-Jordan identity on symbolic quadruples; every residual
    coordinate is one affine equation.
    """

    def __init__(self, ext: SplitNullExtension, instances: Sequence[Quadruple]):
        super().__init__("constraint_derivation")
        self.ext = ext
        self.instances = list(instances)
        self.system: Optional[ConstraintSystem] = None

    async def fetch_data(self) -> List[List[AffineForm]]:
        first_of: Dict[int, List[Quadruple]] = {}
        for q in self.instances:
            first_of.setdefault(q[0], []).append(q)
        chunks = [first_of[x] for x in sorted(first_of)]
        return await self.map_chunks(_derivation_chunk, chunks, {'algebra': self.ext.ambient})

    def process_data(self, data: List[List[AffineForm]]) -> ConstraintSystem:
        system = ConstraintSystem()
        system.declare(lift_unknowns(self.ext))
        seen = set()
        for forms in data:
            for form in forms:
                if form not in seen:
                    seen.add(form)
                    system.add(form)
        return system

    async def respond(self, processed_data: ConstraintSystem) -> Report:
        self.system = processed_data
        return Report(name=self.check_name, passed=True, checked=len(self.instances),
                      details={"equations": len(processed_data.equations)})

    async def collect(self) -> ConstraintSystem:
        """fetch + process without the error-to-report conversion of run()."""
        self.logger.info(f"Deriving constraints from {len(self.instances)} quadruples")
        system = self.process_data(await self.fetch_data())
        await self.respond(system)
        self.logger.info(f"Derived {len(system.equations)} distinct equations")
        return system


def derive_constraints(ext: SplitNullExtension, instances: Sequence[Quadruple]) -> ConstraintSystem:
    """
    Args:
        ext: Symbolic extension from symbolic_lift()
        instances: Quadruples of basis indices of ext.ambient

    Returns:
        Unreduced ConstraintSystem (all lift unknowns declared)

    Raises:
        QuadraticTermError: two unknowns met in a product (malformed lift)
    """
    return asyncio.run(ConstraintDerivation(ext, instances).collect())


def derive_case(case: Any, n: int, mode: str = "exhaustive") -> Tuple[SplitNullExtension, ConstraintSystem]:
    """symbolic_lift + derive_constraints + reduce_constraints for one radical case."""
    if n < 3:
        raise InvalidParameter(f"Lemma derivation needs n >= 3, got {n}")
    ext, _ = symbolic_lift(case, n)
    if mode == "exhaustive":
        instances = exhaustive_instances(ext)
    elif mode == "curated":
        instances = curated_instances(ext, n)
    else:
        raise InvalidParameter(f"Unknown derivation mode {mode!r}")
    return ext, reduce_constraints(derive_constraints(ext, instances))


def unknown(family: str, *indices: int, target: Any) -> Unknown:
    """Unknown(family, indices, target) with the target given as a label or label text."""
    if isinstance(target, str):
        target = Label.parse(target)
    return Unknown(family, tuple(indices), Label(target[0], tuple(target[1])))
