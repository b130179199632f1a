"""
Identity Checks
Supercommutativity and the super-Jordan identity over basis pairs and quadruples
"""

import asyncio
from typing import Any, Dict, List, Optional, Sequence, Tuple

try:
    from .base_check import BaseCheck, Report, worker_state
    from .graded import Element, GradedAlgebra, _normalize
    from .errors import NonHomogeneousError
except ImportError:
    from base_check import BaseCheck, Report, worker_state
    from graded import Element, GradedAlgebra, _normalize
    from errors import NonHomogeneousError


Quadruple = Tuple[int, int, int, int]


def _acc(out: Dict[int, Any], k: int, value: Any) -> None:
    total = out.get(k, 0) + value
    if total:
        out[k] = total
    else:
        out.pop(k, None)


def _sign(exponent: int) -> int:
    return -1 if exponent % 2 else 1


def jordan_signs(px: int, py: int, pz: int, pt: int) -> Tuple[int, int, int, int]:
    """
    Signs of the super-Jordan identity

        ((xy)z)t + s1 ((xt)z)y + s2 ((yt)z)x = (xy)(zt) + s3 (xt)(yz) + s4 (xz)(yt)
    """
    return (
        _sign(pt * (pz + py) + pz * py),
        _sign(px * (py + pz + pt) + pt * pz),
        _sign(pt * pz + pt * py),
        _sign(py * pz),
    )


class JordanEvaluator:
    """
    Residual of the super-Jordan identity on basis quadruples.

    Triple products (ab)c are cached, so a full sweep costs one sparse product
    per term. Coefficients may be AffineForms; the guarded multiplication
    raises QuadraticTermError if two unknowns ever meet.
    """

    def __init__(self, alg: GradedAlgebra):
        self.table = alg.table
        self.parities = alg.parities
        self.dim = alg.dim
        self._triples: Dict[Tuple[int, int, int], Dict[int, Any]] = {}

    def pair(self, a: int, b: int) -> Dict[int, Any]:
        return self.table.get((a, b), {})

    def right(self, u: Dict[int, Any], j: int) -> Dict[int, Any]:
        out: Dict[int, Any] = {}
        table = self.table
        for k, a in u.items():
            terms = table.get((k, j))
            if terms:
                for m, c in terms.items():
                    _acc(out, m, a * c)
        return out

    def mul(self, u: Dict[int, Any], v: Dict[int, Any]) -> Dict[int, Any]:
        out: Dict[int, Any] = {}
        table = self.table
        for k, a in u.items():
            for l, b in v.items():
                terms = table.get((k, l))
                if terms:
                    ab = a * b
                    for m, c in terms.items():
                        _acc(out, m, ab * c)
        return out

    def triple(self, a: int, b: int, c: int) -> Dict[int, Any]:
        key = (a, b, c)
        cached = self._triples.get(key)
        if cached is None:
            cached = self.right(self.pair(a, b), c)
            self._triples[key] = cached
        return cached

    def residual(self, x: int, y: int, z: int, t: int) -> Dict[int, Any]:
        p = self.parities
        s1, s2, s3, s4 = jordan_signs(p[x], p[y], p[z], p[t])
        out: Dict[int, Any] = {}
        for sign, terms in (
            (1, self.right(self.triple(x, y, z), t)),
            (s1, self.right(self.triple(x, t, z), y)),
            (s2, self.right(self.triple(y, t, z), x)),
            (-1, self.mul(self.pair(x, y), self.pair(z, t))),
            (-s3, self.mul(self.pair(x, t), self.pair(y, z))),
            (-s4, self.mul(self.pair(x, z), self.pair(y, t))),
        ):
            for k, v in terms.items():
                _acc(out, k, v if sign == 1 else -v)
        return {k: _normalize(v) for k, v in out.items() if v}


def jordan_residual(alg: GradedAlgebra, x: Element, y: Element, z: Element, t: Element) -> Element:
    """Residual of the identity on arbitrary homogeneous elements."""
    parities = []
    for el in (x, y, z, t):
        parity = alg.basis.parity_of(el)
        if parity is None:
            if el:
                raise NonHomogeneousError(f"{el.format(alg.basis)} is not homogeneous")
            return Element.zero(alg.dim)
        parities.append(int(parity))
    s1, s2, s3, s4 = jordan_signs(*parities)
    m = alg.multiply
    lhs = m(m(m(x, y), z), t) + m(m(m(x, t), z), y).scale(s1) + m(m(m(y, t), z), x).scale(s2)
    rhs = m(m(x, y), m(z, t)) + m(m(x, t), m(y, z)).scale(s3) + m(m(x, z), m(y, t)).scale(s4)
    return lhs - rhs


def quadruple_index(q: Quadruple, dim: int) -> int:
    x, y, z, t = q
    return ((x * dim + y) * dim + z) * dim + t


def _jordan_chunk(chunk: Tuple[str, Any]) -> Tuple[int, int, List[Tuple[Quadruple, Dict[int, Any]]]]:
    """Evaluate one chunk; returns (checked, violation count, first violations)."""
    state = worker_state()
    evaluator = state.get('evaluator')
    if evaluator is None:
        evaluator = JordanEvaluator(state['algebra'])
        state['evaluator'] = evaluator
    limit = state['limit']
    kind, payload = chunk
    if kind == 'row':
        dim = evaluator.dim
        quads = ((payload, y, z, t) for y in range(dim) for z in range(dim) for t in range(dim))
    else:
        quads = payload

    checked = 0
    count = 0
    found: List[Tuple[Quadruple, Dict[int, Any]]] = []
    for q in quads:
        checked += 1
        res = evaluator.residual(*q)
        if res:
            count += 1
            if len(found) < limit:
                found.append((tuple(q), res))
    return checked, count, found


def _commutative_chunk(i: int) -> Tuple[int, int, List[Tuple[Tuple[int, int], Dict[int, Any]]]]:
    state = worker_state()
    alg: GradedAlgebra = state['algebra']
    limit = state['limit']
    p = alg.parities
    checked = 0
    count = 0
    found = []
    for j in range(i, alg.dim):
        checked += 1
        sign = _sign(p[i] * p[j])
        diff = dict(alg.product(i, j))
        for k, v in alg.product(j, i).items():
            _acc(diff, k, -v if sign == 1 else v)
        if diff:
            count += 1
            if len(found) < limit:
                found.append(((i, j), diff))
    return checked, count, found


class SupercommutativityCheck(BaseCheck):
    """xy = (-1)^{|x||y|} yx on every basis pair."""

    def __init__(self, alg: GradedAlgebra, check_name: str = "supercommutative"):
        super().__init__(check_name)
        self.alg = alg

    async def fetch_data(self) -> List[Any]:
        state = {'algebra': self.alg, 'limit': self.config['report_limit']}
        return await self.map_chunks(_commutative_chunk, list(range(self.alg.dim)), state)

    def process_data(self, data: List[Any]) -> Dict[str, Any]:
        return _merge(data, self.config['report_limit'])

    async def respond(self, processed_data: Dict[str, Any]) -> Report:
        basis = self.alg.basis
        violations = [
            {
                "pair": [str(basis.label(i)), str(basis.label(j))],
                "indices": [i, j],
                "residual": Element(self.alg.dim, diff).format(basis),
            }
            for (i, j), diff in processed_data['found']
        ]
        return Report(
            name=self.check_name,
            passed=processed_data['count'] == 0,
            checked=processed_data['checked'],
            violation_count=processed_data['count'],
            violations=violations,
        )


class SuperJordanCheck(BaseCheck):
    """
    The super-Jordan identity on every basis quadruple (or on a given list).

    Work is split by the first index of the quadruple; violations are merged
    in quadruple-index order.
    """

    def __init__(self, alg: GradedAlgebra, quadruples: Optional[Sequence[Quadruple]] = None,
                 check_name: str = "super_jordan"):
        super().__init__(check_name)
        self.alg = alg
        self.quadruples = None if quadruples is None else sorted(
            {tuple(q) for q in quadruples}, key=lambda q: quadruple_index(q, alg.dim)
        )

    def _chunks(self) -> List[Tuple[str, Any]]:
        if self.quadruples is None:
            return [('row', x) for x in range(self.alg.dim)]
        size = max(1, len(self.quadruples) // max(1, self.config['workers']) + 1)
        return [('list', self.quadruples[k:k + size]) for k in range(0, len(self.quadruples), size)]

    async def fetch_data(self) -> List[Any]:
        state = {'algebra': self.alg, 'limit': self.config['report_limit']}
        return await self.map_chunks(_jordan_chunk, self._chunks(), state)

    def process_data(self, data: List[Any]) -> Dict[str, Any]:
        return _merge(data, self.config['report_limit'])

    async def respond(self, processed_data: Dict[str, Any]) -> Report:
        basis = self.alg.basis
        violations = []
        for q, res in processed_data['found']:
            residual = Element(self.alg.dim, res)
            violations.append({
                "quadruple": [str(basis.label(k)) for k in q],
                "indices": list(q),
                "index": quadruple_index(q, self.alg.dim),
                "residual": residual.format(basis),
                "residual_terms": residual.to_json(basis),
            })
        return Report(
            name=self.check_name,
            passed=processed_data['count'] == 0,
            checked=processed_data['checked'],
            violation_count=processed_data['count'],
            violations=violations,
        )


def _merge(data: List[Any], limit: int) -> Dict[str, Any]:
    # chunks arrive in index order, so concatenation keeps violations sorted
    checked = sum(c for c, _, _ in data)
    count = sum(n for _, n, _ in data)
    found = [v for _, _, vs in data for v in vs][:limit]
    return {'checked': checked, 'count': count, 'found': found}


def check_supercommutative(alg: GradedAlgebra) -> Report:
    return asyncio.run(SupercommutativityCheck(alg).run())


def check_super_jordan(alg: GradedAlgebra, quadruples: Optional[Sequence[Quadruple]] = None) -> Report:
    """
    Evaluate the super-Jordan identity on all basis quadruples of alg.

    Args:
        alg: Algebra to check (expected to be supercommutative)
        quadruples: Optional explicit list of index quadruples to check instead

    Returns:
        Report listing the first violating quadruples with their residuals
    """
    return asyncio.run(SuperJordanCheck(alg, quadruples).run())
