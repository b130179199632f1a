"""
Exact Sparse Linear Algebra
Row echelon reduction over the rationals on dict-of-Fraction vectors
"""

from fractions import Fraction
from typing import Dict, List, Mapping, Optional, Sequence, Tuple

Vector = Dict[int, Fraction]


def clean(vec: Mapping[int, Fraction]) -> Vector:
    return {k: v for k, v in vec.items() if v}


def axpy(target: Vector, factor: Fraction, source: Mapping[int, Fraction]) -> None:
    """target += factor * source, in place, dropping zeros."""
    for k, v in source.items():
        total = target.get(k, 0) + factor * v
        if total:
            target[k] = total
        else:
            target.pop(k, None)


class Echelon:
    """
    Incrementally built reduced row echelon form.

    Every stored row has a leading 1 in its pivot column and zeros in all other
    pivot columns. With track=True each row also remembers which combination
    of the inserted generators produced it, so vectors in the span can be
    written back in terms of the generators.
    """

    def __init__(self, track: bool = False):
        self.rows: Dict[int, Vector] = {}
        self.track = track
        self.combos: Dict[int, Vector] = {}
        self._generators = 0

    @property
    def rank(self) -> int:
        return len(self.rows)

    def reduce(self, vec: Mapping[int, Fraction], combo: Optional[Vector] = None) -> Vector:
        """Remainder of vec modulo the rows; combo is updated alongside when given."""
        rest = clean(vec)
        for pivot in sorted(k for k in rest if k in self.rows):
            factor = rest.get(pivot)
            if not factor:
                continue
            axpy(rest, -factor, self.rows[pivot])
            if combo is not None:
                axpy(combo, -factor, self.combos[pivot])
        return rest

    def add(self, vec: Mapping[int, Fraction]) -> Tuple[bool, Vector]:
        """
        Insert a generator.

        Returns:
            (independent, relation). When the generator is dependent, relation
            is the generator combination that vanishes (tracking mode only).
        """
        gen = self._generators
        self._generators += 1
        combo: Optional[Vector] = {gen: Fraction(1)} if self.track else None
        rest = self.reduce(vec, combo)
        if not rest:
            return False, (combo or {})
        pivot = min(rest)
        scale = 1 / rest[pivot]
        row = {k: v * scale for k, v in rest.items()}
        if combo is not None:
            combo = {k: v * scale for k, v in combo.items()}
        for other_pivot, other in self.rows.items():
            factor = other.get(pivot)
            if factor:
                axpy(other, -factor, row)
                if combo is not None:
                    axpy(self.combos[other_pivot], -factor, combo)
        self.rows[pivot] = row
        if combo is not None:
            self.combos[pivot] = combo
        return True, {}

    def contains(self, vec: Mapping[int, Fraction]) -> bool:
        return not self.reduce(vec)

    def express(self, vec: Mapping[int, Fraction]) -> Optional[Vector]:
        """Coefficients over the generators, or None if vec is outside the span."""
        if not self.track:
            raise ValueError("express() needs an Echelon built with track=True")
        combo: Vector = {}
        rest = self.reduce(vec, combo)
        if rest:
            return None
        return {k: -v for k, v in combo.items() if v}

    def basis(self) -> List[Vector]:
        """Canonical basis of the span: the reduced rows sorted by pivot."""
        return [dict(sorted(self.rows[p].items())) for p in sorted(self.rows)]


def rank(vectors: Sequence[Mapping[int, Fraction]]) -> int:
    ech = Echelon()
    for vec in vectors:
        ech.add(vec)
    return ech.rank


def rref_basis(vectors: Sequence[Mapping[int, Fraction]]) -> List[Vector]:
    ech = Echelon()
    for vec in vectors:
        ech.add(vec)
    return ech.basis()


def same_span(a: Sequence[Mapping[int, Fraction]], b: Sequence[Mapping[int, Fraction]]) -> bool:
    return rref_basis(a) == rref_basis(b)


def kernel(columns: Sequence[Mapping[int, Fraction]]) -> List[Vector]:
    """
    Null space of the map e_k -> columns[k], as a canonical (reduced) basis.
    """
    ech = Echelon(track=True)
    relations = []
    for col in columns:
        independent, relation = ech.add(col)
        if not independent:
            relations.append(relation)
    return rref_basis(relations)
