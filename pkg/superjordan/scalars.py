"""
Exact Scalars and Affine Forms
Rational arithmetic and affine combinations of named unknowns
"""

from fractions import Fraction
from typing import Any, Dict, Iterable, Mapping, NamedTuple, Tuple, Union

try:
    from .errors import InvalidParameter, QuadraticTermError
except ImportError:
    from errors import InvalidParameter, QuadraticTermError


ExactScalar = Fraction
ZERO = Fraction(0)
ONE = Fraction(1)
HALF = Fraction(1, 2)


class Unknown(NamedTuple):
    """
    Structured name of a scalar unknown.

    family is the letter family ('eta', 'alpha', 'beta', 'gamma', 'Lambda',
    'c' for complement corrections), indices the subscript tuple and target
    the label of the radical basis element the unknown multiplies.
    """
    family: str
    indices: Tuple[int, ...]
    target: Tuple = ()

    def __str__(self) -> str:
        sub = ",".join(str(i) for i in self.indices)
        if self.target:
            return f"{self.family}_{{{sub}}}[{_label_text(self.target)}]"
        return f"{self.family}_{{{sub}}}"


def _label_text(target: Any) -> str:
    if isinstance(target, str):
        return target
    try:
        family, indices = target
    except (TypeError, ValueError):
        return str(target)
    if not indices:
        return str(family)
    if all(i <= 9 for i in indices):
        return f"{family}_{''.join(str(i) for i in indices)}"
    return f"{family}_{{{','.join(str(i) for i in indices)}}}"


def to_scalar(value: Any) -> Fraction:
    """Coerce ints, Fractions, 'p/q' strings and JSON rationals to a Fraction."""
    if isinstance(value, Fraction):
        return value
    if isinstance(value, bool):
        raise InvalidParameter(f"Not a rational: {value!r}")
    if isinstance(value, int):
        return Fraction(value)
    if isinstance(value, str):
        try:
            return Fraction(value.strip())
        except ValueError as e:
            raise InvalidParameter(f"Not a rational: {value!r}") from e
    if isinstance(value, Mapping) and "num" in value and "den" in value:
        try:
            den = int(value["den"])
            if den <= 0:
                raise InvalidParameter(f"Denominator must be positive: {value!r}")
            return Fraction(int(value["num"]), den)
        except (TypeError, ValueError) as e:
            raise InvalidParameter(f"Not a rational: {value!r}") from e
    raise InvalidParameter(f"Not an exact rational: {value!r}")


def scalar_to_json(value: Fraction) -> Dict[str, str]:
    value = to_scalar(value)
    return {"num": str(value.numerator), "den": str(value.denominator)}


def scalar_from_json(payload: Any) -> Fraction:
    return to_scalar(payload)


class AffineForm:
    """
    constant + sum(coefficient * unknown) with exact rational coefficients.

    Instances are treated as immutable: every operation returns a new form and
    zero coefficients are never stored, so equal forms compare equal.
    """

    __slots__ = ("constant", "terms")

    def __init__(self, constant: Any = 0, terms: Mapping[Unknown, Any] = None):
        self.constant = to_scalar(constant)
        clean = {}
        if terms:
            for unknown, coef in terms.items():
                coef = to_scalar(coef)
                if coef:
                    clean[unknown] = coef
        self.terms = clean

    @classmethod
    def of(cls, unknown: Unknown, coefficient: Any = 1) -> "AffineForm":
        return cls(0, {unknown: coefficient})

    @classmethod
    def _raw(cls, constant: Fraction, terms: Dict[Unknown, Fraction]) -> "AffineForm":
        form = object.__new__(cls)
        form.constant = constant
        form.terms = terms
        return form

    def is_constant(self) -> bool:
        return not self.terms

    def unknowns(self) -> Iterable[Unknown]:
        return self.terms.keys()

    def coefficient(self, unknown: Unknown) -> Fraction:
        return self.terms.get(unknown, ZERO)

    def __bool__(self) -> bool:
        return bool(self.constant) or bool(self.terms)

    def __eq__(self, other: Any) -> bool:
        if isinstance(other, AffineForm):
            return self.constant == other.constant and self.terms == other.terms
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return not self.terms and self.constant == other
        return NotImplemented

    def __hash__(self) -> int:
        if not self.terms:
            return hash(self.constant)
        return hash((self.constant, frozenset(self.terms.items())))

    def __add__(self, other: Any) -> "AffineForm":
        if isinstance(other, AffineForm):
            terms = dict(self.terms)
            for unknown, coef in other.terms.items():
                total = terms.get(unknown, ZERO) + coef
                if total:
                    terms[unknown] = total
                else:
                    terms.pop(unknown, None)
            return AffineForm._raw(self.constant + other.constant, terms)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return AffineForm._raw(self.constant + other, dict(self.terms))
        return NotImplemented

    __radd__ = __add__

    def __neg__(self) -> "AffineForm":
        return AffineForm._raw(-self.constant, {u: -c for u, c in self.terms.items()})

    def __sub__(self, other: Any) -> "AffineForm":
        if isinstance(other, (AffineForm, int, Fraction)):
            return self + (-other)
        return NotImplemented

    def __rsub__(self, other: Any) -> "AffineForm":
        return (-self) + other

    def __mul__(self, other: Any) -> "AffineForm":
        if isinstance(other, AffineForm):
            if self.terms and other.terms:
                raise QuadraticTermError(f"Product of two non-constant forms: ({self}) * ({other})")
            if other.terms:
                return other._scale(self.constant)
            return self._scale(other.constant)
        if isinstance(other, (int, Fraction)) and not isinstance(other, bool):
            return self._scale(other)
        return NotImplemented

    __rmul__ = __mul__

    def __truediv__(self, other: Any) -> "AffineForm":
        if isinstance(other, AffineForm):
            if other.terms:
                raise QuadraticTermError(f"Division by a non-constant form: {other}")
            other = other.constant
        return self._scale(ONE / to_scalar(other))

    def _scale(self, factor: Any) -> "AffineForm":
        if not factor:
            return AffineForm._raw(ZERO, {})
        return AffineForm._raw(self.constant * factor, {u: c * factor for u, c in self.terms.items()})

    def substitute(self, values: Mapping[Unknown, "AffineForm"]) -> "AffineForm":
        """Replace unknowns found in `values` by the given forms."""
        result = AffineForm._raw(self.constant, {})
        for unknown, coef in self.terms.items():
            replacement = values.get(unknown)
            if replacement is None:
                result = result + AffineForm._raw(ZERO, {unknown: coef})
            else:
                result = result + as_affine(replacement) * coef
        return result

    def sort_key(self) -> Tuple:
        return (self.constant, tuple(sorted(self.terms.items())))

    def to_json(self) -> Dict[str, Any]:
        return {
            "constant": scalar_to_json(self.constant),
            "terms": [
                {"unknown": str(u), "coef": scalar_to_json(c)}
                for u, c in sorted(self.terms.items())
            ],
        }

    def __repr__(self) -> str:
        return f"AffineForm({self})"

    def __str__(self) -> str:
        parts = []
        if self.constant or not self.terms:
            parts.append(str(self.constant))
        for unknown, coef in sorted(self.terms.items()):
            if coef == 1:
                parts.append(str(unknown))
            elif coef == -1:
                parts.append(f"-{unknown}")
            else:
                parts.append(f"{coef}*{unknown}")
        return " + ".join(parts).replace("+ -", "- ")


Coefficient = Union[Fraction, AffineForm]


def as_affine(value: Any) -> AffineForm:
    if isinstance(value, AffineForm):
        return value
    return AffineForm(to_scalar(value))


def affine_add(a: Any, b: Any) -> AffineForm:
    """Exact coefficient-wise sum in canonical form."""
    return as_affine(a) + as_affine(b)


def affine_mul(a: Any, b: Any) -> AffineForm:
    """Guarded product: at least one side must be a pure constant."""
    return as_affine(a) * as_affine(b)


def is_symbolic(value: Any) -> bool:
    return isinstance(value, AffineForm) and not value.is_constant()


def coefficient_to_json(value: Any) -> Any:
    if isinstance(value, AffineForm):
        if value.is_constant():
            return scalar_to_json(value.constant)
        return value.to_json()
    return scalar_to_json(value)
