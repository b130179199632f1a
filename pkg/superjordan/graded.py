"""
Graded Core
Parity-graded bases, sparse elements and structure-constant superalgebras
"""

from enum import IntEnum
from fractions import Fraction
from typing import Any, Dict, Iterable, List, Mapping, NamedTuple, Optional, Sequence, Tuple, Union

try:
    from .errors import DimensionMismatch, InvalidParameter, NonHomogeneousError, NotAnIdeal, NotInSpan
    from .scalars import AffineForm, Coefficient, coefficient_to_json, scalar_from_json, to_scalar
    from .linalg import Echelon, Vector
    from .base_check import Report, report_limit
except ImportError:
    from errors import DimensionMismatch, InvalidParameter, NonHomogeneousError, NotAnIdeal, NotInSpan
    from scalars import AffineForm, Coefficient, coefficient_to_json, scalar_from_json, to_scalar
    from linalg import Echelon, Vector
    from base_check import Report, report_limit


class Parity(IntEnum):
    EVEN = 0
    ODD = 1

    def __add__(self, other: Any) -> "Parity":
        return Parity((int(self) + int(other)) % 2)

    __radd__ = __add__


class Label(NamedTuple):
    """Structured basis name: family letter(s) plus a subscript tuple, e.g. h_12 or h_{2,11}."""
    family: str
    indices: Tuple[int, ...] = ()

    def __str__(self) -> str:
        if not self.indices:
            return self.family
        if all(i <= 9 for i in self.indices):
            return f"{self.family}_{''.join(str(i) for i in self.indices)}"
        # braced when any index has two digits: u_{10} is (10,), u_10 is (1, 0)
        return f"{self.family}_{{{','.join(str(i) for i in self.indices)}}}"

    @classmethod
    def parse(cls, text: str) -> "Label":
        family, sep, sub = text.rpartition("_")
        if not sep or not family:
            return cls(text, ())
        if sub.startswith("{") and sub.endswith("}"):
            sub = sub[1:-1]
            if not sub:
                return cls(text, ())
        if "," in sub or text.endswith("}"):
            try:
                return cls(family, tuple(int(p) for p in sub.split(",")))
            except ValueError:
                return cls(text, ())
        if sub.isdigit():
            return cls(family, tuple(int(ch) for ch in sub))
        return cls(text, ())


# Families stored only for i < j and the sign picked up by the (j, i) spelling.
FAMILY_SIGNS: Dict[str, int] = {
    'h': 1, 'b': 1, 'g': 1, 'y': 1,
    's': -1, 'c': -1, 'z': -1, 'x': -1,
}


def _base_family(family: str) -> str:
    return family.split("^", 1)[0]


class Element:
    """
    Sparse coefficient vector over a basis of size dim.

    Coefficients are Fractions, or AffineForms in symbolic extensions.
    """

    __slots__ = ("coeffs", "dim")

    def __init__(self, dim: int, coeffs: Optional[Mapping[int, Any]] = None):
        self.dim = dim
        clean: Dict[int, Coefficient] = {}
        for k, v in (coeffs or {}).items():
            if not 0 <= k < dim:
                raise DimensionMismatch(f"Index {k} outside basis of size {dim}")
            v = _normalize(v) if isinstance(v, AffineForm) else to_scalar(v)
            if v:
                clean[k] = v
        self.coeffs = clean

    @classmethod
    def _raw(cls, dim: int, coeffs: Dict[int, Coefficient]) -> "Element":
        el = object.__new__(cls)
        el.dim = dim
        el.coeffs = coeffs
        return el

    @classmethod
    def zero(cls, dim: int) -> "Element":
        return cls._raw(dim, {})

    @classmethod
    def unit(cls, dim: int, index: int, coefficient: Any = 1) -> "Element":
        return cls(dim, {index: coefficient})

    def _check(self, other: "Element") -> None:
        if not isinstance(other, Element) or other.dim != self.dim:
            raise DimensionMismatch(f"Elements over bases of size {self.dim} and "
                                    f"{getattr(other, 'dim', '?')} cannot be combined")

    def __add__(self, other: "Element") -> "Element":
        self._check(other)
        out = dict(self.coeffs)
        for k, v in other.coeffs.items():
            total = _normalize(out.get(k, 0) + v)
            if total:
                out[k] = total
            else:
                out.pop(k, None)
        return Element._raw(self.dim, out)

    def __neg__(self) -> "Element":
        return Element._raw(self.dim, {k: -v for k, v in self.coeffs.items()})

    def __sub__(self, other: "Element") -> "Element":
        return self + (-other)

    def scale(self, factor: Any) -> "Element":
        if not isinstance(factor, AffineForm):
            factor = to_scalar(factor)
        out = {}
        for k, v in self.coeffs.items():
            p = _normalize(v * factor)
            if p:
                out[k] = p
        return Element._raw(self.dim, out)

    def __rmul__(self, factor: Any) -> "Element":
        return self.scale(factor)

    def __eq__(self, other: Any) -> bool:
        if not isinstance(other, Element):
            return NotImplemented
        return self.dim == other.dim and self.coeffs == other.coeffs

    def __hash__(self) -> int:
        return hash((self.dim, frozenset(self.coeffs.items())))

    def __bool__(self) -> bool:
        return bool(self.coeffs)

    def __getitem__(self, index: int) -> Coefficient:
        return self.coeffs.get(index, Fraction(0))

    def support(self) -> List[int]:
        return sorted(self.coeffs)

    def is_symbolic(self) -> bool:
        return any(isinstance(v, AffineForm) for v in self.coeffs.values())

    def vector(self) -> Vector:
        """Plain rational coordinates; symbolic coefficients are rejected."""
        if self.is_symbolic():
            raise InvalidParameter("Element carries unknowns; substitute values first")
        return dict(self.coeffs)

    def substitute(self, values: Mapping) -> "Element":
        out = {}
        for k, v in self.coeffs.items():
            if isinstance(v, AffineForm):
                v = _normalize(v.substitute(values))
            if v:
                out[k] = v
        return Element._raw(self.dim, out)

    def restrict(self, indices: Iterable[int]) -> "Element":
        keep = set(indices)
        return Element._raw(self.dim, {k: v for k, v in self.coeffs.items() if k in keep})

    def format(self, basis: "GradedBasis") -> str:
        if not self.coeffs:
            return "0"
        parts = []
        for k in sorted(self.coeffs):
            v = self.coeffs[k]
            name = str(basis.label(k))
            if isinstance(v, AffineForm):
                parts.append(f"({v})*{name}")
            elif v == 1:
                parts.append(name)
            elif v == -1:
                parts.append(f"-{name}")
            else:
                parts.append(f"{v}*{name}")
        return " + ".join(parts).replace("+ -", "- ")

    def to_json(self, basis: Optional["GradedBasis"] = None) -> List[Dict[str, Any]]:
        terms = []
        for k in sorted(self.coeffs):
            term: Dict[str, Any] = {"k": k, "coef": coefficient_to_json(self.coeffs[k])}
            if basis is not None:
                term["name"] = str(basis.label(k))
            terms.append(term)
        return terms

    def __repr__(self) -> str:
        body = ", ".join(f"{k}: {v}" for k, v in sorted(self.coeffs.items()))
        return f"Element({self.dim}, {{{body}}})"


def _normalize(value: Any) -> Coefficient:
    if isinstance(value, AffineForm) and value.is_constant():
        return value.constant
    return value


class GradedBasis:
    """
    Ordered, parity-labelled basis.

    Labels are unique. Families listed in `symmetries` are stored with
    increasing indices only; element(Label('s', (2, 1))) resolves to -s_12.
    """

    def __init__(self, entries: Sequence[Tuple[Label, Union[Parity, int]]],
                 symmetries: Optional[Mapping[str, int]] = None):
        self.labels: Tuple[Label, ...] = tuple(_as_label(lab) for lab, _ in entries)
        self.parities: Tuple[int, ...] = tuple(int(p) for _, p in entries)
        if any(p not in (0, 1) for p in self.parities):
            raise InvalidParameter("Parities must be 0 or 1")
        self.symmetries = dict(FAMILY_SIGNS if symmetries is None else symmetries)
        self._index = {lab: k for k, lab in enumerate(self.labels)}
        if len(self._index) != len(self.labels):
            raise InvalidParameter("Basis labels must be unique")

    @property
    def dim(self) -> int:
        return len(self.labels)

    def __len__(self) -> int:
        return len(self.labels)

    def __iter__(self):
        return iter(zip(self.labels, self.parities))

    def label(self, index: int) -> Label:
        return self.labels[index]

    def parity(self, index: int) -> Parity:
        return Parity(self.parities[index])

    def indices_of_parity(self, parity: Union[Parity, int]) -> List[int]:
        return [k for k, p in enumerate(self.parities) if p == int(parity)]

    def __contains__(self, label: Any) -> bool:
        try:
            self.resolve(label)
            return True
        except InvalidParameter:
            return False

    def index(self, label: Any) -> int:
        idx, sign = self.resolve(label)
        if sign != 1:
            raise InvalidParameter(f"{label} is stored as -{self.labels[idx]}")
        return idx

    def resolve(self, label: Any) -> Tuple[int, int]:
        """(index, sign) with label == sign * basis[index]."""
        label = _as_label(label)
        idx = self._index.get(label)
        if idx is not None:
            return idx, 1
        if len(label.indices) == 2:
            swapped = Label(label.family, label.indices[::-1])
            sign = self.symmetries.get(_base_family(label.family))
            if sign is not None and swapped in self._index:
                return self._index[swapped], sign
        raise InvalidParameter(f"Unknown basis label {label}")

    def element(self, label: Any) -> Element:
        idx, sign = self.resolve(label)
        return Element._raw(self.dim, {idx: Fraction(sign)})

    def parity_of(self, element: Element) -> Optional[Parity]:
        """Parity of a nonzero homogeneous element, None otherwise."""
        seen = {self.parities[k] for k in element.coeffs}
        if len(seen) != 1:
            return None
        return Parity(seen.pop())

    def is_homogeneous(self, element: Element) -> bool:
        return len({self.parities[k] for k in element.coeffs}) <= 1

    def concat(self, other: "GradedBasis") -> "GradedBasis":
        symmetries = dict(self.symmetries)
        symmetries.update(other.symmetries)
        return GradedBasis(list(self) + list(other), symmetries)


def _as_label(label: Any) -> Label:
    if isinstance(label, Label):
        return label
    if isinstance(label, str):
        return Label.parse(label)
    if isinstance(label, tuple) and len(label) == 2:
        return Label(label[0], tuple(label[1]))
    raise InvalidParameter(f"Not a basis label: {label!r}")


Table = Dict[Tuple[int, int], Dict[int, Coefficient]]


class GradedAlgebra:
    """
    Superalgebra given by a sparse structure tensor c[(i, j)] = {k: coefficient}.

    Omitted pairs multiply to zero. The tensor is validated for index bounds and
    parity closure on construction and never mutated afterwards.
    """

    def __init__(self, basis: GradedBasis, table: Mapping[Tuple[int, int], Mapping[int, Any]],
                 name: str = "algebra"):
        self.basis = basis
        self.name = name
        self.dim = basis.dim
        self.parities = basis.parities
        self.table: Table = {}
        for (i, j), terms in table.items():
            if not (0 <= i < self.dim and 0 <= j < self.dim):
                raise DimensionMismatch(f"Product ({i}, {j}) outside basis of size {self.dim}")
            clean = {}
            for k, v in terms.items():
                if not 0 <= k < self.dim:
                    raise DimensionMismatch(f"Product ({i}, {j}) has term {k} outside the basis")
                v = _normalize(v if isinstance(v, AffineForm) else to_scalar(v))
                if not v:
                    continue
                if self.parities[k] != (self.parities[i] + self.parities[j]) % 2:
                    raise InvalidParameter(
                        f"Product {basis.label(i)}*{basis.label(j)} has a term on "
                        f"{basis.label(k)} of the wrong parity"
                    )
                clean[k] = v
            if clean:
                self.table[(i, j)] = clean

    def is_symbolic(self) -> bool:
        return any(isinstance(v, AffineForm) for terms in self.table.values() for v in terms.values())

    def product(self, i: int, j: int) -> Dict[int, Coefficient]:
        """Product of basis elements i and j (shared dict, do not mutate)."""
        return self.table.get((i, j), _EMPTY)

    def element(self, label: Any) -> Element:
        return self.basis.element(label)

    def basis_element(self, index: int) -> Element:
        return Element._raw(self.dim, {index: Fraction(1)})

    def multiply(self, x: Element, y: Element) -> Element:
        if x.dim != self.dim or y.dim != self.dim:
            raise DimensionMismatch(
                f"Cannot multiply elements of size {x.dim}, {y.dim} in {self.name} (dim {self.dim})"
            )
        out: Dict[int, Coefficient] = {}
        for i, a in x.coeffs.items():
            for j, b in y.coeffs.items():
                terms = self.table.get((i, j))
                if not terms:
                    continue
                ab = a * b
                for k, c in terms.items():
                    total = out.get(k, 0) + ab * c
                    if total:
                        out[k] = total
                    else:
                        out.pop(k, None)
        return Element._raw(self.dim, {k: _normalize(v) for k, v in out.items() if v})

    def left_columns(self, x: Element) -> List[Vector]:
        """Columns of the left multiplication operator L_x (rational only)."""
        return [self.multiply(x, self.basis_element(k)).vector() for k in range(self.dim)]

    def substitute(self, values: Mapping) -> "GradedAlgebra":
        """Numeric algebra obtained by fixing the unknowns of a symbolic one."""
        table = {}
        for key, terms in self.table.items():
            new = {}
            for k, v in terms.items():
                if isinstance(v, AffineForm):
                    v = _normalize(v.substitute(values))
                if v:
                    new[k] = v
            table[key] = new
        return GradedAlgebra(self.basis, table, name=self.name)

    def with_products(self, changes: Mapping[Tuple[int, int], Mapping[int, Any]], name: str = None) -> "GradedAlgebra":
        """Copy with some structure constants replaced (an empty mapping zeroes a product)."""
        table: Dict[Tuple[int, int], Mapping[int, Any]] = dict(self.table)
        table.update(changes)
        return GradedAlgebra(self.basis, table, name=name or self.name)

    def __repr__(self) -> str:
        return f"GradedAlgebra({self.name!r}, dim={self.dim})"


_EMPTY: Dict[int, Coefficient] = {}


def multiply(alg: GradedAlgebra, x: Element, y: Element) -> Element:
    return alg.multiply(x, y)


# JSON structure-constant format

def algebra_to_json(alg: GradedAlgebra, radical: Optional[Sequence[int]] = None) -> Dict[str, Any]:
    payload: Dict[str, Any] = {
        "basis": [{"name": str(lab), "parity": p} for lab, p in alg.basis],
        "products": [
            {
                "i": i,
                "j": j,
                "terms": [{"k": k, "coef": coefficient_to_json(v)} for k, v in sorted(terms.items())],
            }
            for (i, j), terms in sorted(alg.table.items())
        ],
    }
    if radical is not None:
        payload["radical"] = sorted(radical)
    return payload


def algebra_from_json(payload: Any, name: str = "algebra") -> Tuple[GradedAlgebra, Optional[List[int]]]:
    """
    Parse the structure-constant format.

    Returns:
        (algebra, radical index list or None)
    """
    try:
        entries = [(Label.parse(str(b["name"])), int(b["parity"])) for b in payload["basis"]]
        basis = GradedBasis(entries)
        table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
        for prod in payload.get("products", []):
            key = (int(prod["i"]), int(prod["j"]))
            terms = table.setdefault(key, {})
            for term in prod["terms"]:
                k = int(term["k"])
                terms[k] = terms.get(k, Fraction(0)) + scalar_from_json(term["coef"])
        radical = payload.get("radical")
        if radical is not None:
            radical = [int(k) for k in radical]
            if any(not 0 <= k < basis.dim for k in radical):
                raise InvalidParameter("Radical index outside the basis")
    except (KeyError, TypeError, ValueError) as e:
        raise InvalidParameter(f"Malformed structure-constant JSON: {e}") from e
    return GradedAlgebra(basis, table, name=name), radical


# Subspaces, quotients and maps

def _homogeneous_vectors(basis: GradedBasis, elements: Sequence[Element]) -> List[Vector]:
    vectors = []
    for el in elements:
        if el.dim != basis.dim:
            raise DimensionMismatch(f"Element of size {el.dim} over a basis of size {basis.dim}")
        if not basis.is_homogeneous(el):
            raise NonHomogeneousError(f"Element {el.format(basis)} is not homogeneous")
        vectors.append(el.vector())
    return vectors


def subalgebra_check(alg: GradedAlgebra, span: Sequence[Element]) -> Report:
    """Check that all pairwise products of `span` stay inside its linear span."""
    vectors = _homogeneous_vectors(alg.basis, span)
    ech = Echelon()
    for vec in vectors:
        ech.add(vec)

    limit = report_limit()
    violations: List[Dict[str, Any]] = []
    count = 0
    checked = 0
    for a, x in enumerate(span):
        for b, y in enumerate(span):
            checked += 1
            rest = ech.reduce(alg.multiply(x, y).vector())
            if rest:
                count += 1
                if len(violations) < limit:
                    violations.append({
                        "pair": [a, b],
                        "product": alg.multiply(x, y).format(alg.basis),
                        "escaping": Element(alg.dim, rest).format(alg.basis),
                    })
    return Report(
        name="subalgebra",
        passed=count == 0,
        checked=checked,
        violation_count=count,
        violations=violations,
        details={"span_rank": ech.rank, "span_size": len(span)},
    )


class Projection:
    """Linear projection of an algebra onto a quotient basis."""

    def __init__(self, echelon: Echelon, index_map: Dict[int, int], source_dim: int, target_dim: int):
        self.echelon = echelon
        self.index_map = index_map
        self.source_dim = source_dim
        self.target_dim = target_dim

    def __call__(self, element: Element) -> Element:
        if element.dim != self.source_dim:
            raise DimensionMismatch(f"Projection expects size {self.source_dim}, got {element.dim}")
        rest = self.echelon.reduce(element.vector())
        return Element._raw(self.target_dim, {self.index_map[k]: v for k, v in rest.items()})


def quotient_by_ideal(alg: GradedAlgebra, ideal: Sequence[Element],
                      name: Optional[str] = None) -> Tuple[GradedAlgebra, Projection]:
    """
    Quotient algebra on the complement basis of non-pivot columns.

    Raises:
        NotAnIdeal: if some product of a basis element with the ideal escapes it
    """
    ech = Echelon()
    for vec in _homogeneous_vectors(alg.basis, ideal):
        ech.add(vec)

    for row in ech.basis():
        m = Element._raw(alg.dim, row)
        for k in range(alg.dim):
            e = alg.basis_element(k)
            for prod in (alg.multiply(e, m), alg.multiply(m, e)):
                if not ech.contains(prod.vector()):
                    raise NotAnIdeal(
                        f"{alg.basis.label(k)} times {m.format(alg.basis)} leaves the ideal"
                    )

    keep = [k for k in range(alg.dim) if k not in ech.rows]
    index_map = {old: new for new, old in enumerate(keep)}
    basis = GradedBasis([(alg.basis.label(k), alg.basis.parities[k]) for k in keep], alg.basis.symmetries)

    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i in keep:
        for j in keep:
            terms = alg.product(i, j)
            if not terms:
                continue
            rest = ech.reduce(terms)
            if rest:
                table[(index_map[i], index_map[j])] = {index_map[k]: v for k, v in rest.items()}

    quotient = GradedAlgebra(basis, table, name=name or f"{alg.name}/ideal")
    return quotient, Projection(ech, index_map, alg.dim, len(keep))


def check_isomorphism(f: Sequence[Element], a: GradedAlgebra, b: GradedAlgebra) -> Report:
    """
    Check that e_i -> f[i] is a parity-preserving algebra isomorphism a -> b.
    """
    violations: List[Dict[str, Any]] = []
    count = 0
    checked = 0
    limit = report_limit()

    def record(entry: Dict[str, Any]) -> None:
        nonlocal count
        count += 1
        if len(violations) < limit:
            violations.append(entry)

    if len(f) != a.dim:
        raise DimensionMismatch(f"Map gives {len(f)} images for a basis of size {a.dim}")

    ech = Echelon()
    for img in f:
        if img.dim != b.dim:
            raise DimensionMismatch(f"Image of size {img.dim} in an algebra of size {b.dim}")
        ech.add(img.vector())
    bijective = a.dim == b.dim and ech.rank == b.dim
    if not bijective:
        record({"kind": "bijectivity", "rank": ech.rank, "source_dim": a.dim, "target_dim": b.dim})

    for i, img in enumerate(f):
        checked += 1
        if b.basis.parity_of(img) != a.basis.parity(i):
            record({"kind": "parity", "basis": str(a.basis.label(i)), "image": img.format(b.basis)})

    for i in range(a.dim):
        for j in range(a.dim):
            checked += 1
            lhs = Element.zero(b.dim)
            for k, c in a.product(i, j).items():
                lhs = lhs + f[k].scale(c)
            rhs = b.multiply(f[i], f[j])
            if lhs != rhs:
                record({
                    "kind": "multiplicativity",
                    "pair": [str(a.basis.label(i)), str(a.basis.label(j))],
                    "residual": (lhs - rhs).format(b.basis),
                })

    return Report(
        name="isomorphism",
        passed=count == 0,
        checked=checked,
        violation_count=count,
        violations=violations,
        details={"bijective": bijective},
    )


def complement_algebra(alg: GradedAlgebra, elements: Sequence[Element],
                       labels: Optional[Sequence[Label]] = None,
                       name: str = "complement") -> GradedAlgebra:
    """
    The subalgebra spanned by `elements`, written over those elements as basis.

    Raises:
        NonHomogeneousError: an element is zero or mixes parities
        DimensionMismatch: the elements are linearly dependent
        NotInSpan: a product escapes the span
    """
    labels = list(labels) if labels is not None else [Label("b", (k + 1,)) for k in range(len(elements))]
    entries = []
    ech = Echelon(track=True)
    for lab, el in zip(labels, elements):
        parity = alg.basis.parity_of(el)
        if parity is None:
            raise NonHomogeneousError(f"{lab} = {el.format(alg.basis)} has no definite parity")
        independent, _ = ech.add(el.vector())
        if not independent:
            raise DimensionMismatch(f"{lab} is linearly dependent on the previous elements")
        entries.append((lab, parity))

    table: Dict[Tuple[int, int], Dict[int, Fraction]] = {}
    for i, x in enumerate(elements):
        for j, y in enumerate(elements):
            prod = alg.multiply(x, y).vector()
            coords = ech.express(prod)
            if coords is None:
                raise NotInSpan(
                    f"{labels[i]}*{labels[j]} leaves the span",
                    residual=Element(alg.dim, ech.reduce(prod)).format(alg.basis),
                )
            if coords:
                table[(i, j)] = coords
    return GradedAlgebra(GradedBasis(entries, alg.basis.symmetries), table, name=name)
