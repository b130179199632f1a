"""
Matrix Models
M_{n|n} with the superinvolution trp, the Jordan superalgebra JP_n and the skew space P_n
"""

import logging
from fractions import Fraction
from typing import Any, Dict, List, Optional, Sequence, Tuple

import numpy as np

try:
    from .errors import DimensionMismatch, InvalidParameter, NonHomogeneousError, NotInSpan
    from .graded import Element, GradedAlgebra, GradedBasis, Label, Parity
    from .linalg import Echelon
    from .base_check import Report, report_limit
    from .bimodules import BimoduleAction
except ImportError:
    from errors import DimensionMismatch, InvalidParameter, NonHomogeneousError, NotInSpan
    from graded import Element, GradedAlgebra, GradedBasis, Label, Parity
    from linalg import Echelon
    from base_check import Report, report_limit
    from bimodules import BimoduleAction


logger = logging.getLogger("matrix_models")


class SuperMatrix:
    """
    2n x 2n matrix of Fractions with the (n|n) block grading.

    Diagonal blocks are even, off-diagonal blocks odd. Row and column numbers
    in unit() are 1-based, so unit(n, n + i, i) is the matrix e^{n1}_ii.
    """

    __slots__ = ("n", "entries")

    def __init__(self, n: int, entries: Optional[np.ndarray] = None):
        if n < 1:
            raise InvalidParameter(f"Matrix size n must be positive, got {n}")
        self.n = n
        if entries is None:
            entries = np.full((2 * n, 2 * n), Fraction(0), dtype=object)
        elif entries.shape != (2 * n, 2 * n):
            raise DimensionMismatch(f"Expected a {2 * n}x{2 * n} array, got {entries.shape}")
        self.entries = entries

    @classmethod
    def unit(cls, n: int, row: int, col: int, coefficient: Any = 1) -> "SuperMatrix":
        m = cls(n)
        m.entries[row - 1, col - 1] = Fraction(coefficient)
        return m

    @classmethod
    def from_rows(cls, rows: Sequence[Sequence[Any]]) -> "SuperMatrix":
        arr = np.array([[Fraction(v) for v in row] for row in rows], dtype=object)
        if arr.shape[0] % 2 or arr.shape[0] != arr.shape[1]:
            raise DimensionMismatch(f"Not an (n|n) matrix: shape {arr.shape}")
        return cls(arr.shape[0] // 2, arr)

    def blocks(self) -> Tuple[np.ndarray, np.ndarray, np.ndarray, np.ndarray]:
        n = self.n
        e = self.entries
        return e[:n, :n], e[:n, n:], e[n:, :n], e[n:, n:]

    def is_zero(self) -> bool:
        return not any(v for v in self.entries.flat)

    def parity(self) -> Optional[Parity]:
        """Parity of a homogeneous matrix (zero counts as even), None otherwise."""
        a, b, c, d = self.blocks()
        odd_part = any(v for v in b.flat) or any(v for v in c.flat)
        even_part = any(v for v in a.flat) or any(v for v in d.flat)
        if odd_part and even_part:
            return None
        return Parity.ODD if odd_part else Parity.EVEN

    def _check(self, other: "SuperMatrix") -> None:
        if not isinstance(other, SuperMatrix) or other.n != self.n:
            raise DimensionMismatch(f"Size mismatch: {self.n} vs {getattr(other, 'n', '?')}")

    def __add__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        return SuperMatrix(self.n, self.entries + other.entries)

    def __sub__(self, other: "SuperMatrix") -> "SuperMatrix":
        self._check(other)
        return SuperMatrix(self.n, self.entries - other.entries)

    def __neg__(self) -> "SuperMatrix":
        return SuperMatrix(self.n, -self.entries)

    def scale(self, factor: Any) -> "SuperMatrix":
        return SuperMatrix(self.n, self.entries * Fraction(factor))

    def __matmul__(self, other: "SuperMatrix") -> "SuperMatrix":
        return assoc_multiply(self, other)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, SuperMatrix):
            return NotImplemented
        return self.n == other.n and bool((self.entries == other.entries).all())

    def __hash__(self) -> int:
        return hash((self.n, tuple(self.entries.flat)))

    def flat(self) -> Dict[int, Fraction]:
        """Sparse vector of entries indexed row-major."""
        return {k: Fraction(v) for k, v in enumerate(self.entries.flat) if v}

    def __repr__(self) -> str:
        nz = ", ".join(f"e_{r + 1},{c + 1}: {v}" for (r, c), v in np.ndenumerate(self.entries) if v)
        return f"SuperMatrix(n={self.n}, {{{nz}}})"


def assoc_multiply(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    x._check(y)
    return SuperMatrix(x.n, x.entries.dot(y.entries))


def trp(x: SuperMatrix) -> SuperMatrix:
    """(a, b; c, d) -> (d^t, -b^t; c^t, a^t)."""
    a, b, c, d = x.blocks()
    return SuperMatrix(x.n, np.block([[d.T, -b.T], [c.T, a.T]]))


def supersymmetric_product(x: SuperMatrix, y: SuperMatrix) -> SuperMatrix:
    """x o y = 1/2 (xy + (-1)^{|x||y|} yx) for homogeneous x, y."""
    px, py = x.parity(), y.parity()
    if px is None or py is None:
        raise NonHomogeneousError("Supersymmetric product needs homogeneous matrices")
    xy = assoc_multiply(x, y)
    yx = assoc_multiply(y, x)
    total = xy - yx if (px and py) else xy + yx
    return total.scale(Fraction(1, 2))


def split_by_involution(x: SuperMatrix) -> Tuple[SuperMatrix, SuperMatrix]:
    """x = sym + skew with trp(sym) = sym (in JP_n) and trp(skew) = -skew (in P_n)."""
    t = trp(x)
    half = Fraction(1, 2)
    return (x + t).scale(half), (x - t).scale(half)


class NamedBasis:
    """
    A labelled basis of matrices (JP_n or P_n) inside M_{n|n}.

    coordinates() writes a matrix over the basis exactly and refuses anything
    outside the span.
    """

    def __init__(self, n: int, entries: Sequence[Tuple[Label, int, SuperMatrix]], name: str):
        self.n = n
        self.name = name
        self.basis = GradedBasis([(lab, p) for lab, p, _ in entries])
        self.matrices: List[SuperMatrix] = [m for _, _, m in entries]
        self._echelon: Optional[Echelon] = None

    @property
    def dim(self) -> int:
        return self.basis.dim

    def matrix(self, label: Any) -> SuperMatrix:
        idx, sign = self.basis.resolve(label)
        return self.matrices[idx].scale(sign)

    def coordinates(self, x: SuperMatrix) -> Element:
        if x.n != self.n:
            raise DimensionMismatch(f"Matrix of size {x.n} against a basis of size {self.n}")
        if self._echelon is None:
            self._echelon = Echelon(track=True)
            for m in self.matrices:
                self._echelon.add(m.flat())
        coords = self._echelon.express(x.flat())
        if coords is None:
            residual = self._echelon.reduce(x.flat())
            raise NotInSpan(f"Matrix is not in the span of {self.name}", residual=residual)
        return Element(self.dim, coords)


def coordinates(x: SuperMatrix, basis: NamedBasis) -> Element:
    return basis.coordinates(x)


def _e(n: int, row: int, col: int, coefficient: int = 1) -> SuperMatrix:
    return SuperMatrix.unit(n, row, col, coefficient)


def jp_named_basis(n: int) -> NamedBasis:
    """u_i, u_ij (i != j), h_i, h_ij (i < j), s_ij (i < j) in that order."""
    idx = range(1, n + 1)
    entries: List[Tuple[Label, int, SuperMatrix]] = []
    for i in idx:
        entries.append((Label('u', (i,)), 0, _e(n, i, i) + _e(n, n + i, n + i)))
    for i in idx:
        for j in idx:
            if i != j:
                entries.append((Label('u', (i, j)), 0, _e(n, i, j) + _e(n, n + j, n + i)))
    for i in idx:
        entries.append((Label('h', (i,)), 1, _e(n, n + i, i)))
    for i in idx:
        for j in idx:
            if i < j:
                entries.append((Label('h', (i, j)), 1, _e(n, n + i, j) + _e(n, n + j, i)))
    for i in idx:
        for j in idx:
            if i < j:
                entries.append((Label('s', (i, j)), 1, _e(n, i, n + j) - _e(n, j, n + i)))
    return NamedBasis(n, entries, f"JP_{n}")


def pn_named_basis(n: int) -> NamedBasis:
    """a_i, a_ij (i != j), b_i, b_ij (i < j), c_ij (i < j) in that order."""
    idx = range(1, n + 1)
    entries: List[Tuple[Label, int, SuperMatrix]] = []
    for i in idx:
        entries.append((Label('a', (i,)), 0, _e(n, i, i) - _e(n, n + i, n + i)))
    for i in idx:
        for j in idx:
            if i != j:
                entries.append((Label('a', (i, j)), 0, _e(n, i, j) - _e(n, n + j, n + i)))
    for i in idx:
        entries.append((Label('b', (i,)), 1, _e(n, i, n + i)))
    for i in idx:
        for j in idx:
            if i < j:
                entries.append((Label('b', (i, j)), 1, _e(n, i, n + j) + _e(n, j, n + i)))
    for i in idx:
        for j in idx:
            if i < j:
                entries.append((Label('c', (i, j)), 1, _e(n, n + i, j) - _e(n, n + j, i)))
    return NamedBasis(n, entries, f"P_{n}")


def build_jpn(n: int) -> Tuple[GradedAlgebra, NamedBasis]:
    """
    JP_n = H(M_{n|n}, trp) with structure constants read off the matrix model.

    Args:
        n: Matrix size, at least 2

    Returns:
        (algebra, named basis with realizations)
    """
    if n < 2:
        raise InvalidParameter(f"JP_n needs n >= 2, got {n}")
    named = jp_named_basis(n)
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i, x in enumerate(named.matrices):
        for j, y in enumerate(named.matrices):
            prod = named.coordinates(supersymmetric_product(x, y))
            if prod:
                table[(i, j)] = prod.vector()
    logger.debug(f"Built JP_{n}: dim {named.dim}, {len(table)} nonzero products")
    return GradedAlgebra(named.basis, table, name=f"JP_{n}"), named


def build_pn_action(n: int, jpn: Optional[Tuple[GradedAlgebra, NamedBasis]] = None) -> BimoduleAction:
    """Action a o m of JP_n on P_n, re-coordinatized over the P_n basis."""
    if n < 3:
        raise InvalidParameter(f"P_n is used for n >= 3, got {n}")
    alg, jp = jpn or build_jpn(n)
    pn = pn_named_basis(n)
    act: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i, a in enumerate(jp.matrices):
        for m, p in enumerate(pn.matrices):
            prod = pn.coordinates(supersymmetric_product(a, p))
            if prod:
                act[(i, m)] = prod.vector()
    return BimoduleAction(alg, pn.basis, act, name=f"P_{n}")


def build_mnn(n: int) -> GradedAlgebra:
    """M_{n|n}^(+) on the unit matrices e_{r,c}, product a o b."""
    if n < 1:
        raise InvalidParameter(f"M_(n|n) needs n >= 1, got {n}")
    size = 2 * n
    units = [(r, c) for r in range(1, size + 1) for c in range(1, size + 1)]
    entries = [(Label('e', (r, c)), int((r > n) != (c > n))) for r, c in units]
    basis = GradedBasis(entries, symmetries={})
    position = {rc: k for k, rc in enumerate(units)}
    mats = [_e(n, r, c) for r, c in units]
    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i, x in enumerate(mats):
        for j, y in enumerate(mats):
            prod = supersymmetric_product(x, y)
            terms = {position[(r + 1, c + 1)]: Fraction(v)
                     for (r, c), v in np.ndenumerate(prod.entries) if v}
            if terms:
                table[(i, j)] = terms
    return GradedAlgebra(basis, table, name=f"M_{n}|{n}+")


def check_superinvolution(n: int) -> Report:
    """trp^2 = id and trp(xy) = (-1)^{|x||y|} trp(y) trp(x) on all unit-matrix pairs."""
    size = 2 * n
    mats = [(f"e_{r},{c}", _e(n, r, c)) for r in range(1, size + 1) for c in range(1, size + 1)]
    limit = report_limit()
    violations: List[Dict[str, Any]] = []
    count = 0
    checked = 0
    for name, x in mats:
        checked += 1
        if trp(trp(x)) != x:
            count += 1
            if len(violations) < limit:
                violations.append({"kind": "involutive", "matrix": name})
    for name_x, x in mats:
        for name_y, y in mats:
            checked += 1
            lhs = trp(assoc_multiply(x, y))
            rhs = assoc_multiply(trp(y), trp(x))
            if x.parity() and y.parity():
                rhs = -rhs
            if lhs != rhs:
                count += 1
                if len(violations) < limit:
                    violations.append({"kind": "anti-multiplicative", "pair": [name_x, name_y]})
    return Report(name="superinvolution", passed=count == 0, checked=checked,
                  violation_count=count, violations=violations)
