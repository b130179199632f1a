"""
Wedderburn Complements
Twisted instances, the theta-recurrence correction and the general linear complement solver
"""

import logging
from dataclasses import dataclass, field
from fractions import Fraction
from typing import Any, Dict, List, Mapping, Optional, Sequence, Tuple, Union

import numpy as np

try:
    from .base_check import Report, combine_reports
    from .bimodules import SplitNullExtension
    from .constraints import ConstraintSystem, reduce_constraints
    from .errors import (DimensionMismatch, IncoherentXi, InvalidParameter, NoSolution, NonHomogeneousError,
                         NotInSpan, QuadraticTermError)
    from .graded import (Element, GradedAlgebra, GradedBasis, Label, check_isomorphism, complement_algebra,
                         subalgebra_check)
    from .linalg import Echelon, rank
    from .matrix_models import build_jpn
    from .scalars import AffineForm, Unknown
except ImportError:
    from base_check import Report, combine_reports
    from bimodules import SplitNullExtension
    from constraints import ConstraintSystem, reduce_constraints
    from errors import (DimensionMismatch, IncoherentXi, InvalidParameter, NoSolution, NonHomogeneousError,
                        NotInSpan, QuadraticTermError)
    from graded import (Element, GradedAlgebra, GradedBasis, Label, check_isomorphism, complement_algebra,
                        subalgebra_check)
    from linalg import Echelon, rank
    from matrix_models import build_jpn
    from scalars import AffineForm, Unknown


logger = logging.getLogger("wpt")

Lift = Dict[Label, Element]
Twist = Dict[int, Dict[int, Fraction]]

NUMERATOR_RANGE = (-9, 9)
DENOMINATORS = (1, 2, 3)


def _rational(rng: np.random.Generator) -> Fraction:
    num = int(rng.integers(NUMERATOR_RANGE[0], NUMERATOR_RANGE[1] + 1))
    den = int(rng.choice(DENOMINATORS))
    return Fraction(num, den)


def canonical_lift(ext: SplitNullExtension, alg: Optional[GradedAlgebra] = None) -> Lift:
    alg = alg or ext.ambient
    return {alg.basis.label(k): alg.basis_element(k) for k in ext.algebra_indices}


def random_twist_map(ext: SplitNullExtension, seed: int) -> Twist:
    """
    Dense parity-preserving phi: algebra part -> radical with small rationals.

    Seed 0 is the zero map.
    """
    if seed == 0:
        return {}
    rng = np.random.default_rng(seed)
    parities = ext.ambient.parities
    phi: Twist = {}
    for b in ext.algebra_indices:
        terms = {}
        for r in ext.radical:
            if parities[r] == parities[b]:
                value = _rational(rng)
                if value:
                    terms[r] = value
        if terms:
            phi[b] = terms
    return phi


def apply_twist(ext: SplitNullExtension, phi: Twist, name: Optional[str] = None) -> GradedAlgebra:
    """
    Transport the product along T(b) = b + phi(b): x *' y = T^-1(Tx . Ty).

    T fixes the radical, so the quotient by it is unchanged.
    """
    alg = ext.ambient
    d = alg.dim
    offset = ext.offset

    def forward(k: int) -> Element:
        terms = {k: Fraction(1)}
        terms.update(phi.get(k, {}))
        return Element._raw(d, terms)

    def backward(v: Element) -> Element:
        out = v
        for k, c in v.coeffs.items():
            if k < offset and k in phi:
                out = out - Element._raw(d, dict(phi[k])).scale(c)
        return out

    images = [forward(k) for k in range(d)]
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i in range(d):
        for j in range(d):
            prod = backward(alg.multiply(images[i], images[j]))
            if prod:
                table[(i, j)] = prod.vector()
    return GradedAlgebra(alg.basis, table, name=name or f"{alg.name}~")


def shear_twist(ext: SplitNullExtension, seed: int) -> Tuple[GradedAlgebra, Lift]:
    """
    Nontrivial split null extension: the product transported along a random coboundary twist.

    Returns:
        (twisted algebra, naive lift = the old canonical basis)
    """
    phi = random_twist_map(ext, seed)
    twisted = apply_twist(ext, phi, name=f"{ext.ambient.name}~{seed}")
    logger.debug(f"Twisted {ext.ambient.name} with seed {seed}: {sum(len(t) for t in phi.values())} entries")
    return twisted, canonical_lift(ext, twisted)


def xi_pattern_map(ext: SplitNullExtension, seed: int) -> Twist:
    """phi(h_i) = a_i g_i, phi(h_ij) = b_ij g_ij, phi(s_ij) = -b_ij z_ij; even part untouched."""
    basis = ext.ambient.basis
    if 'g' not in {lab.family for lab in basis.labels}:
        raise InvalidParameter("The xi-pattern twist needs the regular radical (g_i, g_ij, z_ij)")
    if seed == 0:
        return {}
    rng = np.random.default_rng(seed)
    phi: Twist = {}
    for k in ext.algebra_indices:
        lab = basis.label(k)
        if lab.family == 'h' and len(lab.indices) == 1:
            phi[k] = {basis.index(Label('g', lab.indices)): _rational(rng)}
    for k in ext.algebra_indices:
        lab = basis.label(k)
        if lab.family == 'h' and len(lab.indices) == 2:
            b = _rational(rng)
            phi[k] = {basis.index(Label('g', lab.indices)): b}
            phi[basis.index(Label('s', lab.indices))] = {basis.index(Label('z', lab.indices)): -b}
    return {k: {r: v for r, v in t.items() if v} for k, t in phi.items() if any(t.values())}


def xi_pattern_twist(ext: SplitNullExtension, seed: int) -> Tuple[GradedAlgebra, Lift]:
    twisted = apply_twist(ext, xi_pattern_map(ext, seed), name=f"{ext.ambient.name}~xi{seed}")
    return twisted, canonical_lift(ext, twisted)


def read_xi(alg: GradedAlgebra, lift: Lift, n: int) -> Dict[Tuple[int, int], Fraction]:
    """xi_ij = coefficient of g_j in u~_ij . h~_ij."""
    xi = {}
    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i == j:
                continue
            h_idx, h_sign = alg.basis.resolve(Label('h', (i, j)))
            h = lift[alg.basis.label(h_idx)].scale(h_sign)
            prod = alg.multiply(lift[Label('u', (i, j))], h)
            xi[(i, j)] = prod[alg.basis.index(Label('g', (j,)))]
    return xi


@dataclass
class CorrectionPlan:
    theta: List[Fraction]
    corrections: Dict[Label, Element] = field(default_factory=dict)
    corrected: Dict[Label, Element] = field(default_factory=dict)


def case1_correction(xi: Mapping[Tuple[int, int], Any], theta1: Any, lift: Lift,
                     basis: GradedBasis) -> CorrectionPlan:
    """
    theta_{i+1} = theta_i + xi_{i,i+1} - xi_{i+1,i}, then
    h^_i = h~_i + theta_i g_i, h^_ij = h~_ij + (theta_j - xi_ij) g_ij, s^_ij = s~_ij + (xi_ij - theta_j) z_ij.

    Raises:
        IncoherentXi: theta_i - theta_j != xi_ji - xi_ij for some pair
    """
    n = max(max(key) for key in xi)
    xi = {key: Fraction(v) for key, v in xi.items()}
    theta = [Fraction(theta1)]
    for i in range(1, n):
        theta.append(theta[-1] + xi[(i, i + 1)] - xi[(i + 1, i)])

    def th(i: int) -> Fraction:
        return theta[i - 1]

    for i in range(1, n + 1):
        for j in range(1, n + 1):
            if i != j and th(i) - th(j) != xi[(j, i)] - xi[(i, j)]:
                raise IncoherentXi(
                    f"theta_{i} - theta_{j} = {th(i) - th(j)} but xi_{j}{i} - xi_{i}{j} = "
                    f"{xi[(j, i)] - xi[(i, j)]}",
                    pair=(i, j),
                )

    dim = next(iter(lift.values())).dim

    def radical(family: str, *indices: int, coef: Fraction) -> Element:
        idx, sign = basis.resolve(Label(family, indices))
        return Element(dim, {idx: coef * sign})

    corrections: Dict[Label, Element] = {}
    for i in range(1, n + 1):
        corrections[Label('h', (i,))] = radical('g', i, coef=th(i))
    for i in range(1, n + 1):
        for j in range(i + 1, n + 1):
            corrections[Label('h', (i, j))] = radical('g', i, j, coef=th(j) - xi[(i, j)])
            corrections[Label('s', (i, j))] = radical('z', i, j, coef=xi[(i, j)] - th(j))

    corrected = {}
    for label, el in lift.items():
        corrected[label] = el + corrections[label] if label in corrections else el
    return CorrectionPlan(theta=theta, corrections=corrections, corrected=corrected)


def _quotient_constants(alg: GradedAlgebra, radical: Sequence[int], lift: Lift) -> Dict[Tuple[int, int], Dict[int, Fraction]]:
    """lambda^{c}_{ab}: products of the lift written over the lift modulo the radical."""
    keep = [k for k in range(alg.dim) if k not in set(radical)]
    labels = list(lift)
    ech = Echelon(track=True)
    for lab in labels:
        independent, _ = ech.add(lift[lab].restrict(keep).vector())
        if not independent:
            raise InvalidParameter(f"Lift of {lab} is dependent modulo the radical")
    constants = {}
    for a, la in enumerate(labels):
        for b, lb in enumerate(labels):
            prod = alg.multiply(lift[la], lift[lb]).restrict(keep).vector()
            coords = ech.express(prod)
            if coords is None:
                raise InvalidParameter(f"{la}*{lb} is not spanned by the lift modulo the radical")
            constants[(a, b)] = coords
    return constants


def solve_complement(alg: GradedAlgebra, radical: Sequence[int], lift: Lift,
                     pinned: Optional[Mapping[Label, Element]] = None) -> Tuple[Lift, Lift]:
    """
    Solve for corrections c(b) in N with (b~ + c(b))(b~' + c(b')) = sum lambda (b~'' + c(b'')).

    The system is linear because N^2 = 0. Free unknowns are set to 0.

    Args:
        alg: Algebra with square-zero ideal spanned by the radical basis indices
        radical: Indices of N's basis
        lift: Canonical label -> coset representative
        pinned: Corrections fixed in advance (label -> element of N)

    Returns:
        (complement basis, corrections), both keyed by label

    Raises:
        NoSolution: the system is inconsistent (certificate holds the equation)
    """
    radical = sorted(radical)
    radical_set = set(radical)
    labels = list(lift)
    constants = _quotient_constants(alg, radical, lift)

    unknowns: Dict[Tuple[int, int], Unknown] = {}
    symbolic: List[Element] = []
    for a, lab in enumerate(labels):
        parity = alg.basis.parity_of(lift[lab])
        if parity is None:
            raise NonHomogeneousError(f"Lift of {lab} is not homogeneous")
        terms: Dict[int, Any] = dict(lift[lab].coeffs)
        for r in radical:
            if alg.parities[r] == parity:
                u = Unknown('c', (a + 1,), alg.basis.label(r))
                unknowns[(a, r)] = u
                terms[r] = terms.get(r, 0) + AffineForm.of(u)
        symbolic.append(Element(alg.dim, terms))

    system = ConstraintSystem()
    system.declare(unknowns.values())
    for a in range(len(labels)):
        for b in range(len(labels)):
            try:
                residual = alg.multiply(symbolic[a], symbolic[b])
            except QuadraticTermError as e:
                raise InvalidParameter(f"The radical is not square-zero: {e}") from e
            for c, lam in constants[(a, b)].items():
                residual = residual - symbolic[c].scale(lam)
            for k, v in residual.coeffs.items():
                if k in radical_set:
                    system.add(v)
                elif v:
                    raise InvalidParameter(
                        f"{labels[a]}*{labels[b]} does not match the quotient on {alg.basis.label(k)}"
                    )

    for lab, value in (pinned or {}).items():
        a = labels.index(lab)
        for r in radical:
            if (a, r) in unknowns:
                system.add(AffineForm.of(unknowns[(a, r)]) - value[r])
            elif value[r]:
                raise InvalidParameter(f"Pinned correction of {lab} has the wrong parity")

    reduced = reduce_constraints(system)
    if reduced.inconsistent:
        raise NoSolution(
            "Complement system is inconsistent",
            certificate={"equation": str(reduced.certificate), "equations": len(system.equations)},
        )
    zero_free = {u: AffineForm(0) for u in reduced.free}

    corrections: Lift = {}
    complement: Lift = {}
    for a, lab in enumerate(labels):
        terms = {}
        for r in radical:
            u = unknowns.get((a, r))
            if u is not None:
                value = reduced.value(u).substitute(zero_free)
                if value:
                    terms[r] = value.constant
        corrections[lab] = Element(alg.dim, terms)
        complement[lab] = lift[lab] + corrections[lab]
    logger.info(f"Solved complement system: {len(system.equations)} equations, "
                f"{len(unknowns)} unknowns, {len(reduced.free)} free")
    return complement, corrections


def complement_unit(complement: Mapping[Label, Element]) -> Element:
    """Sum of the complement's u_i; the unit of a complement is the unit of the whole algebra."""
    units = [el for lab, el in complement.items() if lab.family == 'u' and len(lab.indices) == 1]
    if not units:
        raise InvalidParameter("The complement has no u_i to sum into a unit")
    total = units[0]
    for el in units[1:]:
        total = total + el
    return total


def verify_complement(alg: GradedAlgebra, complement: Union[Mapping[Label, Element], Sequence[Element]],
                      radical: Sequence[int], reference: Optional[GradedAlgebra] = None) -> Report:
    """
    (a) the complement is a subalgebra, (b) J = S + N as a direct sum,
    (c) b~ + c(b) -> b is an isomorphism onto the canonical algebra.
    """
    if isinstance(complement, Mapping):
        labels: Optional[List[Label]] = list(complement)
        elements = list(complement.values())
    else:
        labels = None
        elements = list(complement)

    closure = subalgebra_check(alg, elements)
    closure.name = "closure"

    radical_vectors = [{k: Fraction(1)} for k in radical]
    combined = rank([e.vector() for e in elements] + radical_vectors)
    split_ok = combined == alg.dim and len(elements) + len(radical) == alg.dim
    split = Report(name="direct_sum", passed=split_ok, checked=1, violation_count=0 if split_ok else 1,
                   details={"rank": combined, "complement": len(elements), "radical": len(radical),
                            "dim": alg.dim})
    if not split_ok:
        split.violations.append({"kind": "direct_sum", "rank": combined, "dim": alg.dim})

    iso = _isomorphism_part(alg, elements, labels, reference)
    return combine_reports("complement", [closure, split, iso])


def _isomorphism_part(alg: GradedAlgebra, elements: List[Element], labels: Optional[List[Label]],
                      reference: Optional[GradedAlgebra]) -> Report:
    def failed(reason: str) -> Report:
        return Report(name="isomorphism", passed=False, checked=0, violation_count=1,
                      violations=[{"kind": "isomorphism", "reason": reason}])

    if reference is None:
        source_labels = labels or []
        indices = [i for lab in source_labels for i in lab.indices]
        if not indices:
            return failed("no labels to identify the canonical algebra")
        reference, _ = build_jpn(max(indices))
    if labels is None:
        if len(elements) != reference.dim:
            return failed(f"{len(elements)} elements for a {reference.dim}-dimensional algebra")
        labels = list(reference.basis.labels)
    try:
        sub = complement_algebra(alg, elements, labels, name="complement")
        images = [reference.element(lab) for lab in labels]
        report = check_isomorphism(images, sub, reference)
    except (NotInSpan, DimensionMismatch, NonHomogeneousError, InvalidParameter) as e:
        return failed(str(e))
    return report
